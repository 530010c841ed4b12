//! Boundaries of the accessible regions in the (monogamy score, GGM) plane.
//!
//! Both regions have their tip at the origin and are bounded by the
//! generalized GHZ family. For the entanglement score the other arm is the
//! GGM axis; for the discord score the region is mirror-symmetric about it.

use crate::error::{Error, Result};
use crate::linalg::binary_entropy;
use crate::multipartite::{delta_c, delta_d, ggm};
use crate::party::Party;
use crate::states::PureState3Q;

/// Closed-form path: tolerance on GGM.
pub const THEOREM1_TOL: f64 = 1e-9;
/// Optimized path: tolerance on the discord score, bits.
pub const THEOREM2_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    Entanglement,
    Discord,
}

/// Membership test for one cone with a fixed tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeBoundary {
    pub kind: ConeKind,
    pub tolerance: f64,
}

/// Outcome of a membership test. `margin > 0` is strictly inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeVerdict {
    pub inside: bool,
    /// GGM units for the entanglement cone, bits for the discord cone.
    pub margin: f64,
    pub node_used: Party,
}

impl ConeBoundary {
    pub fn new(kind: ConeKind, tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance < 0.0 {
            return Err(Error::Domain {
                name: "tolerance",
                value: tolerance,
                range: "[0, inf)",
            });
        }
        Ok(ConeBoundary { kind, tolerance })
    }

    /// Signed distance to the boundary for a point `(score, ggm)`.
    pub fn margin(&self, score: f64, ggm: f64) -> Result<f64> {
        match self.kind {
            ConeKind::Entanglement => Ok(ggm - entanglement_boundary(score.clamp(0.0, 1.0))?),
            ConeKind::Discord => Ok(discord_bound(ggm)? - score.abs()),
        }
    }

    pub fn verdict(&self, score: f64, ggm: f64, node_used: Party) -> Result<ConeVerdict> {
        let margin = self.margin(score, ggm)?;
        Ok(ConeVerdict {
            inside: margin >= -self.tolerance,
            margin,
            node_used,
        })
    }
}

/// Generalized GHZ boundary `E = (1 - sqrt(1 - delta_c)) / 2`.
pub fn entanglement_boundary(delta_c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta_c) {
        return Err(Error::Domain {
            name: "delta_c",
            value: delta_c,
            range: "[0, 1]",
        });
    }
    Ok(0.5 * (1.0 - (1.0 - delta_c).sqrt()))
}

/// Inverse of [`entanglement_boundary`]: `delta_c = 4 E (1 - E)`.
pub fn entanglement_boundary_inverse(ggm: f64) -> Result<f64> {
    check_ggm(ggm)?;
    Ok(4.0 * ggm * (1.0 - ggm))
}

/// Largest admissible `|delta_d|` at a given GGM: `h(E)`.
pub fn discord_bound(ggm: f64) -> Result<f64> {
    check_ggm(ggm)?;
    binary_entropy(ggm)
}

fn check_ggm(ggm: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&ggm) {
        return Err(Error::Domain {
            name: "ggm",
            value: ggm,
            range: "[0, 1/2]",
        });
    }
    Ok(())
}

/// `d delta_d / dE = log2((1 - E) / E)` along the upper discord boundary.
pub fn discord_boundary_derivative(ggm: f64) -> Result<f64> {
    check_ggm(ggm)?;
    Ok(((1.0 - ggm) / ggm).log2())
}

/// Entanglement cone membership. The entanglement score does not depend on
/// the node; the max-Schmidt party is used and reported.
pub fn verify_theorem1(state: &PureState3Q, tol: f64) -> Result<ConeVerdict> {
    let g = ggm(state);
    let node = g.max_schmidt_party;
    ConeBoundary::new(ConeKind::Entanglement, tol)?.verdict(delta_c(state, node)?, g.ggm, node)
}

/// Discord cone membership with the max-Schmidt party as node.
pub fn verify_theorem2(state: &PureState3Q, tol: f64) -> Result<ConeVerdict> {
    let g = ggm(state);
    let node = g.max_schmidt_party;
    ConeBoundary::new(ConeKind::Discord, tol)?.verdict(delta_d(state, node)?, g.ggm, node)
}

/// Slopes of both cones at their tip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeSlopes {
    /// `d delta_c / dE` at the tip, analytic.
    pub entanglement_slope: f64,
    /// Forward difference of the inverse boundary over `FD_STEP`.
    pub entanglement_slope_numeric: f64,
    /// Tangent of the angle between the boundary and the score axis.
    pub tip_tangent: f64,
    /// The discord boundary leaves the tip along the score axis.
    pub discord_slope_unbounded: bool,
}

/// Step used for the numeric slope in [`cone_slopes`].
pub const FD_STEP: f64 = 1e-6;

pub fn cone_slopes() -> ConeSlopes {
    // d/dE [4E(1 - E)] = 4 - 8E, at E = 0
    let entanglement_slope = 4.0;
    let numeric = (entanglement_boundary_inverse(FD_STEP).expect("in range")
        - entanglement_boundary_inverse(0.0).expect("in range"))
        / FD_STEP;
    ConeSlopes {
        entanglement_slope,
        entanglement_slope_numeric: numeric,
        tip_tangent: 1.0 / entanglement_slope,
        // h'(E) = log2((1 - E)/E) passes any bound as E -> 0; at the
        // smallest normal f64 it is about 1022
        discord_slope_unbounded: discord_boundary_derivative(f64::MIN_POSITIVE)
            .is_ok_and(|d| d > 1e3),
    }
}
