//! Two-qubit correlation measures: concurrence, entanglement of formation,
//! mutual information, measured conditional entropy and discord.
//!
//! Two-qubit operators are indexed `2 * first + second`. Discord is
//! asymmetric: [`quantum_discord`] always measures the second qubit and keeps
//! the first as the observer whose correlations are quantified.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig2, h2, hermitian_eigs, pauli_y, spectrum_entropy, tensor_product, ComplexMatrix,
    DensityMatrix,
};
use crate::optimize::{nelder_mead_2d, SimplexOptions};
use crate::party::Party;
use crate::states::PureState3Q;

/// Eigenvalues of `rho` below this are dropped when forming `sqrt(rho)` for
/// the concurrence, and eigenvalues of `sqrt(rho) rho~ sqrt(rho)` below it are
/// treated as zero. Square roots magnify rounding noise near zero: a `1e-16`
/// residue would otherwise surface as `1e-8` in the concurrence.
pub const CONCURRENCE_EIG_FLOOR: f64 = 1e-14;

/// Discord values in `[-DISCORD_NEGATIVE_TOL, 0)` are clamped to zero; lower
/// values are reported as optimizer failures.
pub const DISCORD_NEGATIVE_TOL: f64 = 1e-9;

/// Which qubit of a two-qubit operator a measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// Rank-one projective qubit measurement along the Bloch direction
/// `(theta, phi)`: outcome 0 projects on `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement1Q {
    pub theta: f64,
    pub phi: f64,
}

impl Measurement1Q {
    /// Maps arbitrary angles to the same projector pair with `theta` in
    /// `[0, pi]` and `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        Measurement1Q {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        }
    }

    /// The two orthonormal outcome vectors.
    pub fn vectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), e * s],
            [Complex64::new(s, 0.0), -e * c],
        ]
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.vectors()
            .map(|v| ComplexMatrix::outer(&v, &v).expect("qubit vectors"))
    }
}

/// One outcome of a local measurement on a two-qubit state.
#[derive(Debug, Clone)]
pub struct MeasuredBranch {
    pub probability: f64,
    /// State of the unmeasured qubit given this outcome; `None` when the
    /// outcome has zero probability.
    pub post_state: Option<DensityMatrix>,
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    Ok(())
}

/// Blocks `R[x][x']` of `rho` indexed by the measured qubit, each a 2x2 over
/// the unmeasured qubit: `R[x][x'][(u, u')] = rho[(u x), (u' x')]`.
fn measured_blocks(rho: &ComplexMatrix, side: Side) -> [[[Complex64; 4]; 2]; 2] {
    let idx = |u: usize, x: usize| match side {
        Side::Second => 2 * u + x,
        Side::First => 2 * x + u,
    };
    let mut blocks = [[[Complex64::new(0.0, 0.0); 4]; 2]; 2];
    for (x, row) in blocks.iter_mut().enumerate() {
        for (xp, block) in row.iter_mut().enumerate() {
            for u in 0..2 {
                for up in 0..2 {
                    block[2 * u + up] = rho[(idx(u, x), idx(up, xp))];
                }
            }
        }
    }
    blocks
}

/// Outcome probabilities and post-measurement states.
pub fn measure(rho: &DensityMatrix, side: Side, m: &Measurement1Q) -> Result<[MeasuredBranch; 2]> {
    require_two_qubit(rho)?;
    let blocks = measured_blocks(rho.matrix(), side);
    let branch = |v: &[Complex64; 2]| {
        let mut unnorm = [Complex64::new(0.0, 0.0); 4];
        for x in 0..2 {
            for xp in 0..2 {
                let w = v[x].conj() * v[xp];
                for (k, z) in unnorm.iter_mut().enumerate() {
                    *z += w * blocks[x][xp][k];
                }
            }
        }
        let p = (unnorm[0].re + unnorm[3].re).max(0.0);
        let post_state = (p > 0.0).then(|| {
            let m = ComplexMatrix::from_row_major(2, unnorm.iter().map(|z| z / p).collect())
                .expect("2x2");
            DensityMatrix::from_trusted(m.hermitian_part())
        });
        MeasuredBranch {
            probability: p,
            post_state,
        }
    };
    let [v0, v1] = m.vectors();
    Ok([branch(&v0), branch(&v1)])
}

/// `(sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(rho)?;
    let yy = tensor_product(&pauli_y(), &pauli_y())?;
    Ok(&(&yy * &rho.matrix().conj()) * &yy)
}

/// Square root of a PSD matrix with eigenvalues below `floor` dropped.
fn floored_sqrt(m: &ComplexMatrix, floor: f64) -> Result<ComplexMatrix> {
    let eig = crate::linalg::hermitian_eigh(m)?;
    if let Some(&smallest) = eig.values.last() {
        if smallest < -crate::linalg::PSD_SQRT_TOL {
            return Err(Error::NotPositive(smallest));
        }
    }
    Ok(eig.reconstruct_with(|x| if x > floor { x.sqrt() } else { 0.0 }))
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are square roots of the eigenvalues of `rho rho~`, taken here
/// from the Hermitian matrix `sqrt(rho) rho~ sqrt(rho)`, which has the same
/// spectrum.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let flipped = spin_flip(rho)?;
    let root = floored_sqrt(rho.matrix(), CONCURRENCE_EIG_FLOOR)?;
    let product = (&(&root * &flipped) * &root).hermitian_part();
    let eigs = hermitian_eigs(&product)?;
    if let Some(&smallest) = eigs.last() {
        if smallest < -1e-8 {
            return Err(Error::NotPositive(smallest));
        }
    }
    let l: Vec<f64> = eigs
        .iter()
        .map(|&x| if x > CONCURRENCE_EIG_FLOOR { x.sqrt() } else { 0.0 })
        .collect();
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Tangle across `node : rest`, `4 det(rho_node)`.
pub fn tangle_bipartition(state: &PureState3Q, node: Party) -> f64 {
    let (p00, p11, p01) = state.marginal_entries(node);
    (4.0 * (p00 * p11 - p01.norm_sqr())).clamp(0.0, 1.0)
}

/// Two-qubit entanglement of formation as a function of concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    h2(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()))
}

/// Entanglement of formation of a two-qubit state, in bits.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Marginal of a two-qubit state on one side.
pub fn marginal(rho: &DensityMatrix, keep: Side) -> Result<DensityMatrix> {
    require_two_qubit(rho)?;
    let pos = match keep {
        Side::First => 0,
        Side::Second => 1,
    };
    Ok(DensityMatrix::from_trusted(crate::linalg::trace_out(
        rho.matrix(),
        2,
        &[pos],
    )))
}

fn entropy(rho: &DensityMatrix) -> f64 {
    spectrum_entropy(&rho.spectrum())
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)`.
pub fn quantum_mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let sa = entropy(&marginal(rho, Side::First)?);
    let sb = entropy(&marginal(rho, Side::Second)?);
    Ok((sa + sb - entropy(rho)).max(0.0))
}

/// Search settings for the measured conditional entropy.
#[derive(Debug, Clone, Copy)]
pub struct DiscordOptions {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub simplex: SimplexOptions,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        DiscordOptions {
            grid_theta: 64,
            grid_phi: 128,
            simplex: SimplexOptions::default(),
        }
    }
}

/// Minimum of the post-measurement entropy and where it was found.
#[derive(Debug, Clone, Copy)]
pub struct ConditionalEntropy {
    /// `min sum_i p_i S(rho_{u|i})`, bits.
    pub value: f64,
    pub measurement: Measurement1Q,
    /// Best value on the seeding grid.
    pub grid_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[inline]
fn eta(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Average entropy of the unmeasured qubit, as a function of the angles.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BranchEntropy {
    blocks: [[[Complex64; 4]; 2]; 2],
    marginal: [Complex64; 4],
}

impl BranchEntropy {
    pub(crate) fn new(rho: &ComplexMatrix, side: Side) -> Self {
        let blocks = measured_blocks(rho, side);
        let mut marginal = [Complex64::new(0.0, 0.0); 4];
        for (k, z) in marginal.iter_mut().enumerate() {
            *z = blocks[0][0][k] + blocks[1][1][k];
        }
        BranchEntropy { blocks, marginal }
    }

    /// `sum_i p_i S(rho_i)` for outcome vector `(c, e s)` and its complement.
    #[inline]
    fn eval_cs(&self, c: f64, s: f64, e: Complex64) -> f64 {
        let w00 = c * c;
        let w11 = s * s;
        let w01 = e * (c * s);
        let b = &self.blocks;
        // outcome-0 block: c^2 R00 + s^2 R11 + c s e R01 + c s e* R10
        let m00 = w00 * b[0][0][0].re + w11 * b[1][1][0].re + 2.0 * (w01 * b[0][1][0]).re;
        let m11 = w00 * b[0][0][3].re + w11 * b[1][1][3].re + 2.0 * (w01 * b[0][1][3]).re;
        let m01 = b[0][0][1] * w00 + b[1][1][1] * w11 + w01 * b[0][1][1] + w01.conj() * b[1][0][1];
        let n00 = self.marginal[0].re - m00;
        let n11 = self.marginal[3].re - m11;
        let n01 = self.marginal[1] - m01;
        branch_term(m00, m11, m01) + branch_term(n00, n11, n01)
    }

    pub(crate) fn eval(&self, theta: f64, phi: f64) -> f64 {
        let (s, c) = (0.5 * theta).sin_cos();
        self.eval_cs(c, s, Complex64::from_polar(1.0, phi))
    }
}

/// `p S(M / p)` for an unnormalized 2x2 block `M` with trace `p`.
#[inline]
fn branch_term(m00: f64, m11: f64, m01: Complex64) -> f64 {
    let p = m00 + m11;
    if p <= 0.0 {
        return 0.0;
    }
    let (hi, lo) = eig2(m00, m11, m01);
    (eta(hi) + eta(lo) - eta(p)).max(0.0)
}

/// `S(rho_{u|x}) = min over projective measurements on `measured` of the
/// average entropy of the other qubit`.
pub fn measured_conditional_entropy(rho: &DensityMatrix, measured: Side) -> Result<ConditionalEntropy> {
    measured_conditional_entropy_with(rho, measured, &DiscordOptions::default())
}

/// [`measured_conditional_entropy`] with explicit search settings: a
/// `grid_theta x grid_phi` scan followed by simplex refinement from the best
/// grid point.
pub fn measured_conditional_entropy_with(
    rho: &DensityMatrix,
    measured: Side,
    opts: &DiscordOptions,
) -> Result<ConditionalEntropy> {
    require_two_qubit(rho)?;
    let objective = BranchEntropy::new(rho.matrix(), measured);

    let n_theta = opts.grid_theta.max(2);
    let n_phi = opts.grid_phi.max(1);
    let d_theta = PI / (n_theta - 1) as f64;
    let d_phi = 2.0 * PI / n_phi as f64;
    let phases: Vec<Complex64> = (0..n_phi)
        .map(|j| Complex64::from_polar(1.0, j as f64 * d_phi))
        .collect();

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n_theta {
        let theta = i as f64 * d_theta;
        let (s, c) = (0.5 * theta).sin_cos();
        // phi is irrelevant at the poles
        let cols = if i == 0 || i == n_theta - 1 { 1 } else { n_phi };
        for (j, &e) in phases.iter().enumerate().take(cols) {
            let f = objective.eval_cs(c, s, e);
            if f < best.0 {
                best = (f, theta, j as f64 * d_phi);
            }
        }
    }
    let grid_evals = (n_theta - 2) * n_phi + 2;

    let refined = nelder_mead_2d(
        |x| objective.eval(x[0], x[1]),
        [best.1, best.2],
        [d_theta, d_phi],
        opts.simplex,
    );
    let (value, theta, phi) = if refined.f < best.0 {
        (refined.f, refined.x[0], refined.x[1])
    } else {
        best
    };
    Ok(ConditionalEntropy {
        value: value.max(0.0),
        measurement: Measurement1Q::new(theta, phi),
        grid_value: best.0,
        evaluations: grid_evals + refined.evaluations,
        converged: refined.converged,
    })
}

/// Average branch entropy for a fixed measurement.
pub fn conditional_entropy_at(rho: &DensityMatrix, measured: Side, m: &Measurement1Q) -> Result<f64> {
    require_two_qubit(rho)?;
    Ok(BranchEntropy::new(rho.matrix(), measured).eval(m.theta, m.phi))
}

/// `J = S(unmeasured) - S(unmeasured | measured)`.
pub fn classical_correlation_measuring(rho: &DensityMatrix, measured: Side) -> Result<f64> {
    let s_kept = entropy(&marginal(rho, measured.other())?);
    let cond = measured_conditional_entropy(rho, measured)?;
    Ok((s_kept - cond.value).max(0.0))
}

/// Classical correlation with the measurement on the second qubit.
pub fn classical_correlation(rho: &DensityMatrix) -> Result<f64> {
    classical_correlation_measuring(rho, Side::Second)
}

/// `D = I - J` with the measurement on `measured`.
pub fn quantum_discord_measuring(rho: &DensityMatrix, measured: Side) -> Result<f64> {
    let i = quantum_mutual_information(rho)?;
    let j = classical_correlation_measuring(rho, measured)?;
    clamp_discord(i - j)
}

/// Discord of a two-qubit state, measuring the second qubit.
pub fn quantum_discord(rho: &DensityMatrix) -> Result<f64> {
    quantum_discord_measuring(rho, Side::Second)
}

pub(crate) fn clamp_discord(d: f64) -> Result<f64> {
    if d < -DISCORD_NEGATIVE_TOL {
        return Err(Error::NegativeDiscord(d));
    }
    Ok(d.max(0.0))
}

/// Discord of a pure three-qubit state across `node : rest`, which equals the
/// entropy of the node's marginal.
pub fn discord_pure_bipartition(state: &PureState3Q, node: Party) -> f64 {
    let (p00, p11, p01) = state.marginal_entries(node);
    let (hi, _) = eig2(p00, p11, p01);
    h2(hi.clamp(0.0, 1.0))
}
