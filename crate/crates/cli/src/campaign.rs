//! Sampling campaigns, the generalized GHZ scan and the invariant suite.
//!
//! State `k` of a campaign is drawn from stream `k` of the seed, so rows do
//! not depend on how many workers share the work.

use std::io::Write;

use monocone::cone::{discord_bound, ConeBoundary, ConeKind};
use monocone::linalg::binary_entropy;
use monocone::multipartite::{delta_c, delta_d, delta_d_koashi_winter, dissension, ggm, koashi_winter_residual};
use monocone::states::{generalized_ghz_sq, sample_family, RNG_ALGORITHM};
use monocone::{Family, Party, PureState3Q, RngStream};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::record::{format_float, MeasureRecord, NodeChoice, RecordHeader};

/// Smallest entanglement score accepted as non-negative.
pub const DELTA_C_FLOOR: f64 = -1e-10;
/// Largest spread of the entanglement score across the three nodes.
pub const NODE_SPREAD_TOL: f64 = 1e-9;
/// Bits; applies to every identity that goes through the discord optimizer.
pub const IDENTITY_TOL: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct Campaign {
    pub n: u64,
    pub seed: u64,
    pub families: Vec<Family>,
    pub workers: usize,
    pub tol_tangle: f64,
    pub tol_discord: f64,
}

impl Campaign {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(CliError::Usage("--family needs at least one family".into()));
        }
        if self.families.contains(&Family::Explicit) {
            return Err(CliError::Usage("`explicit` is not a sampling family".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        if !(self.tol_tangle >= 0.0 && self.tol_discord >= 0.0) {
            return Err(CliError::Usage("tolerances must be non-negative".into()));
        }
        Ok(())
    }

    /// Family of state `k`; families take turns.
    pub fn family_of(&self, k: u64) -> Family {
        self.families[(k % self.families.len() as u64) as usize]
    }

    pub fn header(&self, measure: &str) -> RecordHeader {
        RecordHeader {
            seed: self.seed,
            rng: RNG_ALGORITHM.to_string(),
            tol_tangle: self.tol_tangle,
            tol_discord: self.tol_discord,
            measure: measure.to_string(),
            families: self.families.clone(),
        }
    }

    fn run<T: Send>(&self, f: impl Fn(u64) -> T + Sync + Send) -> Result<Vec<T>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", self.workers)))?;
        Ok(pool.install(|| (0..self.n).into_par_iter().map(f).collect()))
    }
}

/// Identifies a sampled state well enough to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRef {
    pub state_id: u64,
    pub family: String,
    pub seed: u64,
    pub stream: u64,
}

/// A state that could not be measured.
#[derive(Debug, Clone, Serialize)]
pub struct StateFailure {
    #[serde(flatten)]
    pub state: StateRef,
    pub error: String,
}

/// Replays the state with the given id.
pub fn regenerate(family: Family, seed: u64, stream: u64) -> monocone::Result<PureState3Q> {
    sample_family(family, &mut RngStream::new(seed, stream))
}

/// Measures one state into a record. Both cone margins use the max-Schmidt
/// party as node.
pub fn measure_record(
    state_id: u64,
    family: Family,
    seed: u64,
    state: &PureState3Q,
    tol_tangle: f64,
    tol_discord: f64,
) -> monocone::Result<MeasureRecord> {
    let g = ggm(state);
    let node = g.max_schmidt_party;
    let dc = delta_c(state, node)?;
    let dd = [delta_d(state, Party::A)?, delta_d(state, Party::B)?, delta_d(state, Party::C)?];
    let t1 = ConeBoundary::new(ConeKind::Entanglement, tol_tangle)?.margin(dc, g.ggm)?;
    let t2 = ConeBoundary::new(ConeKind::Discord, tol_discord)?.margin(dd[node.index()], g.ggm)?;
    Ok(MeasureRecord {
        state_id,
        family,
        seed,
        stream: state_id,
        delta_c: dc,
        delta_d_node_a: dd[0],
        delta_d_node_b: dd[1],
        delta_d_node_c: dd[2],
        delta_d_max_schmidt: dd[node.index()],
        ggm: g.ggm,
        max_schmidt_party: node,
        theorem1_margin: t1,
        theorem2_margin: t2,
    })
}

#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub records: Vec<MeasureRecord>,
    pub failures: Vec<StateFailure>,
    /// Records outside either cone beyond its tolerance.
    pub violations: Vec<u64>,
}

pub fn run_sample(c: &Campaign) -> Result<SampleOutcome> {
    c.validate()?;
    let rows = c.run(|k| {
        let family = c.family_of(k);
        regenerate(family, c.seed, k)
            .and_then(|s| measure_record(k, family, c.seed, &s, c.tol_tangle, c.tol_discord))
            .map_err(|e| StateFailure {
                state: StateRef {
                    state_id: k,
                    family: family.to_string(),
                    seed: c.seed,
                    stream: k,
                },
                error: e.to_string(),
            })
    })?;
    let mut out = SampleOutcome {
        records: Vec::with_capacity(rows.len()),
        failures: Vec::new(),
        violations: Vec::new(),
    };
    for row in rows {
        match row {
            Ok(r) => {
                if r.theorem1_margin < -c.tol_tangle || r.theorem2_margin < -c.tol_discord {
                    out.violations.push(r.state_id);
                }
                out.records.push(r);
            }
            Err(f) => out.failures.push(f),
        }
    }
    Ok(out)
}

/// One point of the generalized GHZ scan, computed next to closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha_sq: f64,
    pub delta_c: f64,
    pub delta_d: f64,
    pub ggm: f64,
    pub delta_c_analytic: f64,
    pub delta_d_analytic: f64,
    pub ggm_analytic: f64,
}

impl ScanRow {
    pub const COLUMNS: [&'static str; 10] = [
        "alpha_sq",
        "delta_c",
        "delta_d",
        "ggm",
        "delta_c_analytic",
        "delta_d_analytic",
        "ggm_analytic",
        "residual_delta_c",
        "residual_delta_d",
        "residual_ggm",
    ];

    pub fn residuals(&self) -> [f64; 3] {
        [
            (self.delta_c - self.delta_c_analytic).abs(),
            (self.delta_d - self.delta_d_analytic).abs(),
            (self.ggm - self.ggm_analytic).abs(),
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().into_iter().fold(0.0, f64::max)
    }

    fn fields(&self) -> Vec<String> {
        let r = self.residuals();
        [
            self.alpha_sq,
            self.delta_c,
            self.delta_d,
            self.ggm,
            self.delta_c_analytic,
            self.delta_d_analytic,
            self.ggm_analytic,
            r[0],
            r[1],
            r[2],
        ]
        .iter()
        .map(|&x| format_float(x))
        .collect()
    }
}

/// `points` values of `alpha^2` evenly spaced over `[1/2, 1]`, node A.
pub fn run_scan_gg(points: usize) -> Result<Vec<ScanRow>> {
    if points < 2 {
        return Err(CliError::Usage("--alpha-grid must be at least 2".into()));
    }
    (0..points)
        .map(|i| {
            let a2 = 0.5 + 0.5 * i as f64 / (points - 1) as f64;
            let s = generalized_ghz_sq(a2)?;
            Ok(ScanRow {
                alpha_sq: a2,
                delta_c: delta_c(&s, Party::A)?,
                delta_d: delta_d(&s, Party::A)?,
                ggm: ggm(&s).ggm,
                delta_c_analytic: 4.0 * a2 * (1.0 - a2),
                delta_d_analytic: binary_entropy(a2)?,
                ggm_analytic: 1.0 - a2,
            })
        })
        .collect()
}

pub fn write_scan<W: Write>(mut out: W, rows: &[ScanRow]) -> Result<()> {
    writeln!(out, "# monocone generalized GHZ scan, schema v{}", crate::record::SCHEMA_VERSION)
        .and_then(|_| writeln!(out, "# tool_version: {}", env!("CARGO_PKG_VERSION")))
        .and_then(|_| writeln!(out, "# node: A"))
        .map_err(csv::Error::from)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ScanRow::COLUMNS)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Worst offender of one invariant check.
#[derive(Debug, Clone, Serialize)]
pub struct Offender {
    #[serde(flatten)]
    pub state: StateRef,
    /// Real and imaginary parts of the eight amplitudes, `|abc>` at `4a+2b+c`.
    pub amplitudes: Vec<[f64; 2]>,
    /// Amount by which the check was exceeded.
    pub excess: f64,
}

/// Aggregated result of one invariant over the whole campaign.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub tolerance: f64,
    /// Largest excess seen over all states. A state violates the check when
    /// its excess is above `tolerance`.
    pub max_excess: f64,
    pub violations: u64,
    /// Informational checks never fail the run.
    pub informational: bool,
    pub worst: Option<Offender>,
}

impl Check {
    fn new(name: impl Into<String>, tolerance: f64, informational: bool) -> Self {
        Check {
            name: name.into(),
            tolerance,
            max_excess: f64::NEG_INFINITY,
            violations: 0,
            informational,
            worst: None,
        }
    }

    fn observe(&mut self, excess: f64, state: &StateRef, amplitudes: &PureState3Q) {
        if excess > self.tolerance {
            self.violations += 1;
        }
        if excess > self.max_excess {
            self.max_excess = excess;
            if excess > self.tolerance {
                self.worst = Some(Offender {
                    state: state.clone(),
                    amplitudes: amplitudes.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
                    excess,
                });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub rng: String,
    pub families: Vec<String>,
    pub n_samples: u64,
    pub node: String,
    pub checks: Vec<Check>,
    pub failures: Vec<StateFailure>,
}

impl VerifyReport {
    pub fn violated(&self) -> bool {
        self.checks.iter().any(|c| !c.informational && !c.passed())
    }
}

/// Excess of every check for one state, in the order of `checks_for`.
struct StateChecks {
    excess: [f64; CHECK_COUNT],
}

const CHECK_COUNT: usize = 8;

fn checks_for(c: &Campaign, node: NodeChoice) -> [Check; CHECK_COUNT] {
    [
        Check::new("entanglement cone, max-Schmidt node", c.tol_tangle, false),
        Check::new("discord cone, max-Schmidt node", c.tol_discord, false),
        Check::new("entanglement score non-negative", -DELTA_C_FLOOR, false),
        Check::new("entanglement score node spread", NODE_SPREAD_TOL, false),
        Check::new("discord score vs closed form, all nodes", IDENTITY_TOL, false),
        Check::new("discord vs entanglement of formation, node A", IDENTITY_TOL, false),
        Check::new("dissension plus discord score", IDENTITY_TOL, false),
        Check::new(format!("discord cone, node {node}"), c.tol_discord, true),
    ]
}

fn evaluate_checks(state: &PureState3Q, node: NodeChoice) -> monocone::Result<StateChecks> {
    let g = ggm(state);
    let ms = g.max_schmidt_party;
    let dc = [delta_c(state, Party::A)?, delta_c(state, Party::B)?, delta_c(state, Party::C)?];
    let dd = [delta_d(state, Party::A)?, delta_d(state, Party::B)?, delta_d(state, Party::C)?];
    let t1 = ConeBoundary::new(ConeKind::Entanglement, 0.0)?.margin(dc[ms.index()], g.ggm)?;
    let bound = discord_bound(g.ggm)?;
    let mut kw = 0.0f64;
    for p in Party::ALL {
        kw = kw.max((dd[p.index()] - delta_d_koashi_winter(state, p)?.value).abs());
    }
    let spread = dc.iter().cloned().fold(f64::MIN, f64::max) - dc.iter().cloned().fold(f64::MAX, f64::min);
    let plotted = node.resolve(ms);
    Ok(StateChecks {
        excess: [
            -t1,
            dd[ms.index()].abs() - bound,
            -dc[ms.index()],
            spread,
            kw,
            koashi_winter_residual(state)?,
            (dissension(state)?.value + dd[0]).abs(),
            dd[plotted.index()].abs() - bound,
        ],
    })
}

/// Runs every invariant over `c.n` states.
pub fn run_verify(c: &Campaign, node: NodeChoice) -> Result<VerifyReport> {
    c.validate()?;
    let rows = c.run(|k| {
        let family = c.family_of(k);
        let state_ref = StateRef {
            state_id: k,
            family: family.to_string(),
            seed: c.seed,
            stream: k,
        };
        let result = regenerate(family, c.seed, k).and_then(|s| evaluate_checks(&s, node).map(|e| (s, e)));
        (state_ref, result)
    })?;
    let mut checks = checks_for(c, node);
    let mut failures = Vec::new();
    for (state_ref, result) in rows {
        match result {
            Ok((s, e)) => {
                for (check, &x) in checks.iter_mut().zip(e.excess.iter()) {
                    check.observe(x, &state_ref, &s);
                }
            }
            Err(e) => failures.push(StateFailure {
                state: state_ref,
                error: e.to_string(),
            }),
        }
    }
    Ok(VerifyReport {
        seed: c.seed,
        rng: RNG_ALGORITHM.to_string(),
        families: c.families.iter().map(|f| f.to_string()).collect(),
        n_samples: c.n,
        node: node.to_string(),
        checks: checks.into(),
        failures,
    })
}
