//! Correlation measures and monogamy cones for pure three-qubit states.
//!
//! The crate computes concurrence, entanglement of formation and quantum
//! discord of two-qubit reductions, the generalized geometric measure (GGM)
//! of the full state, and the monogamy scores built from them. The [`cone`]
//! module checks the two bounds that tie the scores to the GGM.

pub mod bipartite;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod multipartite;
pub mod optimize;
pub mod party;
pub mod states;

pub use error::{Error, Result};
pub use party::{Party, PartySet};
pub use states::{Family, PureState3Q, RngStream};
