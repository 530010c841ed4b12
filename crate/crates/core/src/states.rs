//! Pure three-qubit states: fixed families and seeded random samplers.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{trace_out, ComplexMatrix, DensityMatrix};
use crate::party::{Party, PartySet};

/// Name of the generator behind [`RngStream`], recorded in output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9, seed_from_u64 + set_stream)";

/// GHZ-class draws with a 3-tangle at or below this are rejected.
pub const GHZ_CLASS_MIN_TANGLE: f64 = 1e-8;

const MAX_RESAMPLES: usize = 10_000;
const NORM_TOL: f64 = 1e-12;

/// Which constructor produced a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Haar,
    GenGhz,
    GhzClass,
    WClass,
    Explicit,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Haar => "haar",
            Family::GenGhz => "gen_ghz",
            Family::GhzClass => "ghz_class",
            Family::WClass => "w_class",
            Family::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "haar" => Ok(Family::Haar),
            "gen_ghz" => Ok(Family::GenGhz),
            "ghz_class" => Ok(Family::GhzClass),
            "w_class" => Ok(Family::WClass),
            "explicit" => Ok(Family::Explicit),
            other => Err(format!("unknown state family `{other}`")),
        }
    }
}

/// Seeded random stream. Equal `(seed, stream)` pairs replay equal draws.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// Normalized pure state of qubits A, B, C; amplitude `k` belongs to `|abc>`
/// with `k = 4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState3Q {
    amplitudes: [Complex64; 8],
    family: Family,
}

impl PureState3Q {
    /// Accepts amplitudes whose norm is within `1e-12` of one.
    pub fn new(amplitudes: [Complex64; 8], family: Family) -> Result<Self> {
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState3Q { amplitudes, family })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(amplitudes: [Complex64; 8], family: Family) -> Result<Self> {
        let norm = norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(PureState3Q {
            amplitudes: amplitudes.map(|z| z / norm),
            family,
        })
    }

    /// Computational basis state `|abc>` for `index = 4a + 2b + c`.
    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        PureState3Q {
            amplitudes,
            family: Family::Explicit,
        }
    }

    /// `(|000> + |111>) / sqrt 2`.
    pub fn ghz() -> Self {
        generalized_ghz(std::f64::consts::FRAC_1_SQRT_2).expect("alpha in range")
    }

    /// `(|001> + |010> + |100>) / sqrt 3`.
    pub fn w() -> Self {
        let w = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        PureState3Q {
            amplitudes: [zero, w, w, zero, w, zero, zero, zero],
            family: Family::Explicit,
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amplitudes
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Rank-one projector `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.amplitudes).expect("state is normalized")
    }

    /// Reduced density matrix on `keep`, built directly from the amplitudes.
    pub fn reduced(&self, keep: PartySet) -> Result<DensityMatrix> {
        let kept = keep.positions(3)?;
        let full = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)?;
        Ok(DensityMatrix::from_trusted(trace_out(&full, 3, &kept)))
    }

    /// Single-qubit marginal `[[p00, p01], [p01*, p11]]` as `(p00, p11, p01)`.
    pub(crate) fn marginal_entries(&self, party: Party) -> (f64, f64, Complex64) {
        let bit = 4 >> party.index();
        let mut p00 = 0.0;
        let mut p11 = 0.0;
        let mut p01 = Complex64::new(0.0, 0.0);
        for k in (0..8).filter(|k| k & bit == 0) {
            let a0 = self.amplitudes[k];
            let a1 = self.amplitudes[k | bit];
            p00 += a0.norm_sqr();
            p11 += a1.norm_sqr();
            p01 += a0 * a1.conj();
        }
        (p00, p11, p01)
    }

    /// Applies a single-qubit unitary `u` (row-major 2x2) to `party`.
    pub fn apply_local(&self, party: Party, u: &[Complex64; 4]) -> PureState3Q {
        let bit = 4 >> party.index();
        let mut out = self.amplitudes;
        for k in (0..8).filter(|k| k & bit == 0) {
            let a0 = self.amplitudes[k];
            let a1 = self.amplitudes[k | bit];
            out[k] = u[0] * a0 + u[1] * a1;
            out[k | bit] = u[2] * a0 + u[3] * a1;
        }
        PureState3Q {
            amplitudes: out,
            family: self.family,
        }
    }
}

fn norm(amplitudes: &[Complex64; 8]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `alpha |000> + sqrt(1 - alpha^2) |111>` for `alpha` in `[1/sqrt 2, 1]`.
pub fn generalized_ghz(alpha: f64) -> Result<PureState3Q> {
    if !(std::f64::consts::FRAC_1_SQRT_2 - 1e-15..=1.0).contains(&alpha) {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            range: "[1/sqrt(2), 1]",
        });
    }
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(alpha, 0.0);
    amplitudes[7] = Complex64::new(beta, 0.0);
    Ok(PureState3Q {
        amplitudes,
        family: Family::GenGhz,
    })
}

/// Generalized GHZ state parametrized by `alpha^2` in `[1/2, 1]`.
pub fn generalized_ghz_sq(alpha_sq: f64) -> Result<PureState3Q> {
    if !(0.5..=1.0).contains(&alpha_sq) {
        return Err(Error::Domain {
            name: "alpha^2",
            value: alpha_sq,
            range: "[1/2, 1]",
        });
    }
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(alpha_sq.sqrt(), 0.0);
    amplitudes[7] = Complex64::new((1.0 - alpha_sq).sqrt(), 0.0);
    Ok(PureState3Q {
        amplitudes,
        family: Family::GenGhz,
    })
}

/// Haar-uniform pure state: i.i.d. complex Gaussians, normalized.
pub fn sample_haar(rng: &mut RngStream) -> PureState3Q {
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    for z in amplitudes.iter_mut() {
        *z = Complex64::new(rng.gaussian(), rng.gaussian());
    }
    PureState3Q::normalized(amplitudes, Family::Haar).expect("gaussian vector is nonzero")
}

/// Nonnegative point uniform on the unit sphere of `R^N`.
fn positive_sphere<const N: usize>(rng: &mut RngStream) -> [f64; N] {
    loop {
        let mut v = [0.0; N];
        for x in v.iter_mut() {
            *x = rng.gaussian().abs();
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.map(|x| x / norm);
        }
    }
}

/// GHZ-class canonical form
/// `l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>`.
pub fn ghz_canonical(lambdas: [f64; 5], phi: f64) -> Result<PureState3Q> {
    let [l0, l1, l2, l3, l4] = lambdas;
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(l0, 0.0);
    amplitudes[4] = Complex64::from_polar(l1, phi);
    amplitudes[5] = Complex64::new(l2, 0.0);
    amplitudes[6] = Complex64::new(l3, 0.0);
    amplitudes[7] = Complex64::new(l4, 0.0);
    PureState3Q::new(amplitudes, Family::GhzClass)
}

/// W-class canonical form `l0|000> + l1|100> + l2|101> + l3|110>`.
pub fn w_canonical(lambdas: [f64; 4]) -> Result<PureState3Q> {
    let [l0, l1, l2, l3] = lambdas;
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(l0, 0.0);
    amplitudes[4] = Complex64::new(l1, 0.0);
    amplitudes[5] = Complex64::new(l2, 0.0);
    amplitudes[6] = Complex64::new(l3, 0.0);
    PureState3Q::new(amplitudes, Family::WClass)
}

/// Random GHZ-class state; draws with vanishing 3-tangle are redrawn.
pub fn sample_ghz_class(rng: &mut RngStream) -> Result<PureState3Q> {
    for _ in 0..MAX_RESAMPLES {
        let lambdas = positive_sphere::<5>(rng);
        let phi = std::f64::consts::PI * rng.uniform();
        let state = ghz_canonical(lambdas, phi)?;
        if crate::multipartite::three_tangle(&state) > GHZ_CLASS_MIN_TANGLE {
            return Ok(state);
        }
    }
    Err(Error::ResampleLimit(MAX_RESAMPLES))
}

/// Random W-class state with coefficients uniform on the positive 3-sphere.
pub fn sample_w_class(rng: &mut RngStream) -> PureState3Q {
    w_canonical(positive_sphere::<4>(rng)).expect("unit coefficients")
}

/// Draws one state of `family`; `GenGhz` uses a uniform `alpha^2` in `[1/2, 1]`.
pub fn sample_family(family: Family, rng: &mut RngStream) -> Result<PureState3Q> {
    match family {
        Family::Haar | Family::Explicit => Ok(sample_haar(rng)),
        Family::GhzClass => sample_ghz_class(rng),
        Family::WClass => Ok(sample_w_class(rng)),
        Family::GenGhz => generalized_ghz_sq(0.5 + 0.5 * rng.uniform()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_marginal_is_maximally_mixed() {
        let ghz = PureState3Q::ghz();
        let a = ghz.reduced(PartySet::single(Party::A)).unwrap();
        let half = ComplexMatrix::identity(2).unwrap().scale(0.5);
        assert!(a.matrix().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn generalized_ghz_marginal() {
        let s = generalized_ghz(0.8f64.sqrt()).unwrap();
        let a = s.reduced(PartySet::single(Party::A)).unwrap();
        let want = ComplexMatrix::from_real_diagonal(&[0.8, 0.2]).unwrap();
        assert!(a.matrix().max_abs_diff(&want) < 1e-15);
        assert_eq!(generalized_ghz(1.0).unwrap().amplitudes()[0], Complex64::new(1.0, 0.0));
        assert!(generalized_ghz(0.5).is_err());
        assert!(generalized_ghz(1.01).is_err());
    }

    #[test]
    fn density_of_basis_and_ghz() {
        let rho = PureState3Q::basis(0).density();
        assert_eq!(rho.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
        assert!(rho.matrix().as_slice()[1..].iter().all(|z| z.norm() == 0.0));

        let ghz = PureState3Q::ghz().density();
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((ghz.matrix()[(i, j)].norm() - 0.5).abs() < 1e-15);
        }
        assert!((ghz.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn same_stream_same_state() {
        let a = sample_haar(&mut RngStream::new(7, 3));
        let b = sample_haar(&mut RngStream::new(7, 3));
        let c = sample_haar(&mut RngStream::new(7, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginal_entries_agree_with_partial_trace() {
        let s = sample_haar(&mut RngStream::new(1, 1));
        for p in Party::ALL {
            let (p00, p11, p01) = s.marginal_entries(p);
            let m = s.reduced(PartySet::single(p)).unwrap();
            assert!((m.matrix()[(0, 0)].re - p00).abs() < 1e-15);
            assert!((m.matrix()[(1, 1)].re - p11).abs() < 1e-15);
            assert!((m.matrix()[(0, 1)] - p01).norm() < 1e-15);
        }
    }

    #[test]
    fn ghz_state_is_ghz_canonical() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = ghz_canonical([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
        for (a, b) in s.amplitudes().iter().zip(PureState3Q::ghz().amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn w_class_corner_is_product() {
        let s = w_canonical([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.amplitudes(), PureState3Q::basis(0).amplitudes());
    }

    #[test]
    fn w_state_is_w_canonical_up_to_local_flip() {
        // X on A maps |001>,|010>,|100> to |101>,|110>,|000>
        let x = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let flipped = PureState3Q::w().apply_local(Party::A, &x);
        let w = 1.0 / 3f64.sqrt();
        let canonical = w_canonical([w, 0.0, w, w]).unwrap();
        for (a, b) in flipped.amplitudes().iter().zip(canonical.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn constructors_reject_bad_input() {
        let zero = [Complex64::new(0.0, 0.0); 8];
        assert_eq!(PureState3Q::normalized(zero, Family::Explicit), Err(Error::ZeroVector));
        let mut two = zero;
        two[0] = Complex64::new(2.0, 0.0);
        assert!(matches!(PureState3Q::new(two, Family::Explicit), Err(Error::NotNormalized(_))));
    }
}
