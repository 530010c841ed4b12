//! Genuine multipartite entanglement and monogamy scores of pure three-qubit
//! states.

use std::fmt;
use std::str::FromStr;

use crate::bipartite::{
    concurrence, discord_pure_bipartition, eof_two_qubit, measured_conditional_entropy,
    quantum_discord_measuring, quantum_mutual_information, tangle_bipartition, Side,
};
use crate::error::Result;
use crate::linalg::{eig2, von_neumann_entropy, DensityMatrix};
use crate::party::{Party, PartySet};
use crate::states::PureState3Q;

/// Marginal eigenvalues closer than this count as tied for the GGM maximum.
pub const SCHMIDT_TIE_TOL: f64 = 1e-12;

/// Generalized geometric measure and the marginal that determines it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GgmResult {
    pub ggm: f64,
    /// First party (A < B < C) whose marginal has the largest eigenvalue.
    pub max_schmidt_party: Party,
    /// Largest eigenvalue of each single-qubit marginal, in A, B, C order.
    pub eigen_triple: [f64; 3],
    /// Another party's eigenvalue is within [`SCHMIDT_TIE_TOL`] of the maximum.
    pub tie: bool,
}

/// Largest eigenvalue of the node's single-qubit marginal.
pub fn max_marginal_eigenvalue(state: &PureState3Q, party: Party) -> f64 {
    let (p00, p11, p01) = state.marginal_entries(party);
    eig2(p00, p11, p01).0.clamp(0.5, 1.0)
}

/// `1 - max(l_A^2, l_B^2, l_C^2)`, where `l_X^2` is the largest eigenvalue of
/// the marginal of `X`.
pub fn ggm(state: &PureState3Q) -> GgmResult {
    let eigen_triple = Party::ALL.map(|p| max_marginal_eigenvalue(state, p));
    let mut best = Party::A;
    for p in [Party::B, Party::C] {
        if eigen_triple[p.index()] > eigen_triple[best.index()] + SCHMIDT_TIE_TOL {
            best = p;
        }
    }
    let top = eigen_triple[best.index()];
    let tie = Party::ALL
        .iter()
        .filter(|&&p| p != best)
        .any(|&p| (eigen_triple[p.index()] - top).abs() <= SCHMIDT_TIE_TOL);
    GgmResult {
        ggm: (1.0 - eigen_triple.iter().copied().fold(0.0, f64::max)).clamp(0.0, 0.5),
        max_schmidt_party: best,
        eigen_triple,
        tie,
    }
}

/// Bipartite quantity used inside a monogamy score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    ConcurrenceSquared,
    Discord,
}

impl MeasureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::ConcurrenceSquared => "concurrence_squared",
            MeasureKind::Discord => "discord",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "concurrence_squared" | "tangle" => Ok(MeasureKind::ConcurrenceSquared),
            "discord" => Ok(MeasureKind::Discord),
            other => Err(format!("unknown measure `{other}`")),
        }
    }
}

/// `Q(node : rest) - Q(node, partner1) - Q(node, partner2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonogamyScore {
    pub measure: MeasureKind,
    pub node: Party,
    /// Dimensionless for concurrence squared, bits for discord.
    pub value: f64,
}

/// Two-qubit reduction on `{node, partner}` (canonical qubit order) and the
/// side on which `partner` sits.
pub fn pair_reduction(state: &PureState3Q, node: Party, partner: Party) -> Result<(DensityMatrix, Side)> {
    let rho = state.reduced(PartySet::pair(node, partner))?;
    let partner_side = if partner > node { Side::Second } else { Side::First };
    Ok((rho, partner_side))
}

/// Quantum monogamy score for the chosen measure and nodal observer.
///
/// Discord terms measure the non-nodal party of each pair.
pub fn monogamy_score(measure: MeasureKind, state: &PureState3Q, node: Party) -> Result<MonogamyScore> {
    let value = match measure {
        MeasureKind::ConcurrenceSquared => delta_c(state, node)?,
        MeasureKind::Discord => delta_d(state, node)?,
    };
    Ok(MonogamyScore { measure, node, value })
}

/// Entanglement monogamy score: `C^2(node:rest) - C^2(node, .) - C^2(node, .)`.
pub fn delta_c(state: &PureState3Q, node: Party) -> Result<f64> {
    let mut value = tangle_bipartition(state, node);
    for partner in node.others() {
        let (rho, _) = pair_reduction(state, node, partner)?;
        let c = concurrence(&rho)?;
        value -= c * c;
    }
    Ok(value)
}

/// Discord monogamy score via numerically optimized two-qubit discords.
pub fn delta_d(state: &PureState3Q, node: Party) -> Result<f64> {
    let mut value = discord_pure_bipartition(state, node);
    for partner in node.others() {
        let (rho, measured) = pair_reduction(state, node, partner)?;
        value -= quantum_discord_measuring(&rho, measured)?;
    }
    Ok(value)
}

/// 3-tangle of a pure state, taken as the entanglement monogamy score with
/// node A.
pub fn three_tangle(state: &PureState3Q) -> f64 {
    delta_c(state, Party::A).expect("reductions of a normalized state are valid")
}

/// Discord monogamy score from entanglements of formation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KoashiWinterScore {
    /// `S(node) - E(node, .) - E(node, .)`, bits.
    pub value: f64,
    pub node: Party,
    /// False when `node` is not the max-Schmidt party of the state.
    pub node_is_max_schmidt: bool,
}

/// `S(rho_node) - EoF(node, partner1) - EoF(node, partner2)`, a closed-form
/// route to the discord monogamy score for pure states.
pub fn delta_d_koashi_winter(state: &PureState3Q, node: Party) -> Result<KoashiWinterScore> {
    let mut value = discord_pure_bipartition(state, node);
    for partner in node.others() {
        let (rho, _) = pair_reduction(state, node, partner)?;
        value -= eof_two_qubit(&rho)?;
    }
    let g = ggm(state);
    let node_is_max_schmidt = g.max_schmidt_party == node
        || (g.eigen_triple[node.index()] - g.eigen_triple[g.max_schmidt_party.index()]).abs()
            <= SCHMIDT_TIE_TOL;
    Ok(KoashiWinterScore {
        value,
        node,
        node_is_max_schmidt,
    })
}

/// `|D(rho_AB) - (EoF(rho_AC) - [S(rho_AB) - S(rho_B)])|`, with the discord
/// measuring B. Vanishes for pure states up to optimizer error.
pub fn koashi_winter_residual(state: &PureState3Q) -> Result<f64> {
    let ab = state.reduced(PartySet::pair(Party::A, Party::B))?;
    let ac = state.reduced(PartySet::pair(Party::A, Party::C))?;
    let b = state.reduced(PartySet::single(Party::B))?;
    let discord_ab = quantum_discord_measuring(&ab, Side::Second)?;
    let conditional = von_neumann_entropy(&ab) - von_neumann_entropy(&b);
    Ok((discord_ab - (eof_two_qubit(&ac)? - conditional)).abs())
}

/// Terms of the three-party dissension, all in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dissension {
    /// `I(AB) - I(A:B|C)` with unmeasured conditional entropies.
    pub mutual_information: f64,
    /// `J(AB) - J(A:B|C)` with measured conditional entropies.
    pub classical: f64,
    /// `mutual_information - classical`.
    pub value: f64,
}

/// Dissension of a pure three-qubit state, node A.
///
/// The measured entropy `S(A|BC)` conditions on a rank-one measurement of the
/// pure `BC` purification partner, which leaves A pure, so it is zero here.
pub fn dissension(state: &PureState3Q) -> Result<Dissension> {
    let s = |keep: PartySet| -> Result<f64> { Ok(von_neumann_entropy(&state.reduced(keep)?)) };
    let (a, b, c) = (Party::A, Party::B, Party::C);
    let s_a = s(PartySet::single(a))?;
    let s_c = s(PartySet::single(c))?;
    let s_ac = s(PartySet::pair(a, c))?;
    let s_bc = s(PartySet::pair(b, c))?;
    let s_abc = von_neumann_entropy(&state.density());

    let ab = state.reduced(PartySet::pair(a, b))?;
    let ac = state.reduced(PartySet::pair(a, c))?;

    let i_ab = quantum_mutual_information(&ab)?;
    let i_ab_given_c = (s_ac - s_c) - (s_abc - s_bc);
    let mutual_information = i_ab - i_ab_given_c;

    let s_a_given_b = measured_conditional_entropy(&ab, Side::Second)?.value;
    let s_a_given_c = measured_conditional_entropy(&ac, Side::Second)?.value;
    let s_a_given_bc = 0.0;
    let j_ab = s_a - s_a_given_b;
    let j_ab_given_c = s_a_given_c - s_a_given_bc;
    let classical = j_ab - j_ab_given_c;

    Ok(Dissension {
        mutual_information,
        classical,
        value: mutual_information - classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::h2;
    use crate::states::{generalized_ghz_sq, sample_haar, RngStream};

    #[test]
    fn ggm_anchors() {
        let g = ggm(&PureState3Q::ghz());
        assert!((g.ggm - 0.5).abs() < 1e-12);
        assert_eq!(g.max_schmidt_party, Party::A);
        assert!(g.tie);
        assert_eq!(ggm(&PureState3Q::basis(0)).ggm, 0.0);
        let gg = ggm(&generalized_ghz_sq(0.8).unwrap());
        assert!((gg.ggm - 0.2).abs() < 1e-15);
        for e in gg.eigen_triple {
            assert!((e - 0.8).abs() < 1e-15);
        }
    }

    #[test]
    fn ggm_picks_the_purest_marginal() {
        // A is unentangled, B and C form a partially entangled pair
        let mut amps = [num_complex::Complex64::new(0.0, 0.0); 8];
        amps[0] = num_complex::Complex64::new(0.6, 0.0);
        amps[3] = num_complex::Complex64::new(0.8, 0.0);
        let s = PureState3Q::new(amps, crate::states::Family::Explicit).unwrap();
        let g = ggm(&s);
        assert_eq!(g.max_schmidt_party, Party::A);
        assert_eq!(g.ggm, 0.0);
        assert!(!g.tie);
    }

    #[test]
    fn monogamy_scores_of_ghz_family() {
        let ghz = PureState3Q::ghz();
        let dc = monogamy_score(MeasureKind::ConcurrenceSquared, &ghz, Party::A).unwrap();
        assert!((dc.value - 1.0).abs() < 1e-12);
        for a2 in [0.55, 0.7, 0.9] {
            let s = generalized_ghz_sq(a2).unwrap();
            for node in Party::ALL {
                let dc = delta_c(&s, node).unwrap();
                assert!((dc - 4.0 * a2 * (1.0 - a2)).abs() < 1e-12);
                let dd = delta_d(&s, node).unwrap();
                assert!((dd - h2(a2)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn koashi_winter_route() {
        let ghz = PureState3Q::ghz();
        let kw = delta_d_koashi_winter(&ghz, Party::A).unwrap();
        assert!((kw.value - 1.0).abs() < 1e-12);
        assert!(kw.node_is_max_schmidt);
        assert_eq!(delta_d_koashi_winter(&PureState3Q::basis(0), Party::B).unwrap().value, 0.0);
        assert!(koashi_winter_residual(&ghz).unwrap() <= 1e-6);
        assert!(koashi_winter_residual(&PureState3Q::basis(0)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn koashi_winter_matches_optimizer_on_haar_states() {
        for k in 0..20 {
            let s = sample_haar(&mut RngStream::new(11, k));
            for node in Party::ALL {
                let kw = delta_d_koashi_winter(&s, node).unwrap().value;
                let dd = delta_d(&s, node).unwrap();
                assert!((kw - dd).abs() < 1e-4, "state {k} node {node}: {kw} vs {dd}");
            }
            assert!(koashi_winter_residual(&s).unwrap() < 1e-4);
        }
    }

    #[test]
    fn dissension_anchors() {
        assert!((dissension(&PureState3Q::ghz()).unwrap().value + 1.0).abs() < 1e-6);
        assert!(dissension(&PureState3Q::basis(0)).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn product_state_scores_vanish() {
        let s = PureState3Q::basis(5);
        for node in Party::ALL {
            assert_eq!(delta_c(&s, node).unwrap(), 0.0);
            assert!(delta_d(&s, node).unwrap().abs() < 1e-12);
        }
    }
}
