//! Single-state JSON report.

use std::collections::BTreeMap;

use monocone::bipartite::{concurrence, eof_two_qubit, quantum_discord_measuring, tangle_bipartition};
use monocone::cone::{verify_theorem1, verify_theorem2, ConeVerdict, THEOREM1_TOL, THEOREM2_TOL};
use monocone::multipartite::{
    delta_c, delta_d, delta_d_koashi_winter, dissension, ggm, koashi_winter_residual, pair_reduction,
};
use monocone::{Family, Party, PartySet, PureState3Q};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Inputs whose norm is this close to one are renormalized silently.
pub const RENORMALIZE_TOL: f64 = 1e-6;

/// Builds a state from raw amplitudes. Norms further than
/// [`RENORMALIZE_TOL`] from one are rejected as usage errors.
pub fn state_from_amplitudes(amplitudes: [Complex64; 8]) -> Result<PureState3Q> {
    let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(monocone::Error::ZeroVector.into());
    }
    if (norm - 1.0).abs() > RENORMALIZE_TOL {
        return Err(CliError::Usage(format!("amplitudes have norm {norm}, expected 1 within {RENORMALIZE_TOL:e}")));
    }
    Ok(PureState3Q::normalized(amplitudes, Family::Explicit)?)
}

/// Parses `re` or `re+imi`/`re-imi` style complex numbers, e.g. `0.5`, `-0.5i`,
/// `0.1+0.2i`, `1e-3-2e-1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || CliError::Usage(format!("cannot parse complex amplitude `{s}`"));
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // the split point is the last sign that is not part of an exponent
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let im = im.trim_start_matches('+').parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub inside: bool,
    pub margin: f64,
    pub node: String,
    pub tolerance: f64,
}

impl VerdictReport {
    fn new(v: ConeVerdict, tolerance: f64) -> Self {
        VerdictReport {
            inside: v.inside,
            margin: v.margin,
            node: v.node_used.to_string(),
            tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscordEntry {
    pub pair: String,
    pub measured: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GgmReport {
    pub value: f64,
    pub max_schmidt_party: String,
    pub tie: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DissensionReport {
    pub mutual_information: f64,
    pub classical: f64,
    pub value: f64,
}

/// Every measure of one state. Maps are keyed by party or pair label;
/// discord-type quantities are in bits.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub family: String,
    pub amplitudes: Vec<[f64; 2]>,
    pub marginal_eigenvalues: BTreeMap<String, [f64; 2]>,
    pub concurrences: BTreeMap<String, f64>,
    pub entanglements_of_formation: BTreeMap<String, f64>,
    pub discords: Vec<DiscordEntry>,
    /// Squared concurrence across `party : rest`.
    pub tangles: BTreeMap<String, f64>,
    pub delta_c: BTreeMap<String, f64>,
    pub delta_d: BTreeMap<String, f64>,
    pub delta_d_koashi_winter: BTreeMap<String, f64>,
    pub ggm: GgmReport,
    pub dissension: DissensionReport,
    pub koashi_winter_residual: f64,
    pub theorem1: VerdictReport,
    pub theorem2: VerdictReport,
}

fn pair_label(a: Party, b: Party) -> String {
    format!("{a}{b}")
}

const PAIRS: [(Party, Party); 3] = [(Party::A, Party::B), (Party::A, Party::C), (Party::B, Party::C)];

pub fn evaluate(state: &PureState3Q) -> monocone::Result<EvalReport> {
    let per_party = |f: &dyn Fn(Party) -> monocone::Result<f64>| -> monocone::Result<BTreeMap<String, f64>> {
        Party::ALL.iter().map(|&p| Ok((p.to_string(), f(p)?))).collect()
    };

    let mut marginal_eigenvalues = BTreeMap::new();
    for p in Party::ALL {
        let spec = state.reduced(PartySet::single(p))?.spectrum();
        marginal_eigenvalues.insert(p.to_string(), [spec[0], spec[1]]);
    }

    let mut concurrences = BTreeMap::new();
    let mut eofs = BTreeMap::new();
    let mut discords = Vec::new();
    for (a, b) in PAIRS {
        let rho = state.reduced(PartySet::pair(a, b))?;
        concurrences.insert(pair_label(a, b), concurrence(&rho)?);
        eofs.insert(pair_label(a, b), eof_two_qubit(&rho)?);
        for (node, measured) in [(a, b), (b, a)] {
            let (rho, side) = pair_reduction(state, node, measured)?;
            discords.push(DiscordEntry {
                pair: pair_label(a, b),
                measured: measured.to_string(),
                value: quantum_discord_measuring(&rho, side)?,
            });
        }
    }

    let g = ggm(state);
    let d = dissension(state)?;
    Ok(EvalReport {
        family: state.family().to_string(),
        amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        marginal_eigenvalues,
        concurrences,
        entanglements_of_formation: eofs,
        discords,
        tangles: per_party(&|p| Ok(tangle_bipartition(state, p)))?,
        delta_c: per_party(&|p| delta_c(state, p))?,
        delta_d: per_party(&|p| delta_d(state, p))?,
        delta_d_koashi_winter: per_party(&|p| Ok(delta_d_koashi_winter(state, p)?.value))?,
        ggm: GgmReport {
            value: g.ggm,
            max_schmidt_party: g.max_schmidt_party.to_string(),
            tie: g.tie,
        },
        dissension: DissensionReport {
            mutual_information: d.mutual_information,
            classical: d.classical,
            value: d.value,
        },
        koashi_winter_residual: koashi_winter_residual(state)?,
        theorem1: VerdictReport::new(verify_theorem1(state, THEOREM1_TOL)?, THEOREM1_TOL),
        theorem2: VerdictReport::new(verify_theorem2(state, THEOREM2_TOL)?, THEOREM2_TOL),
    })
}
