//! Campaign runners, record formats and plots behind the `monocone` binary.

pub mod campaign;
pub mod error;
pub mod record;
pub mod report;
pub mod svg;

pub use error::{CliError, Result};
