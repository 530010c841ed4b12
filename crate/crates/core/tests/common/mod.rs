//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use monocone::bipartite::Side;
use monocone::linalg::ComplexMatrix;
use monocone::PureState3Q;
use num_complex::Complex64;

/// 3-tangle from the Cayley hyperdeterminant of the amplitude tensor.
pub fn hyperdeterminant_tangle(state: &PureState3Q) -> f64 {
    let a = |i: usize, j: usize, k: usize| state.amplitudes()[4 * i + 2 * j + k];
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Average post-measurement entropy of the unmeasured qubit, evaluated
/// outcome by outcome from the projected state.
pub fn branch_entropy(rho: &ComplexMatrix, measured: Side, theta: f64, phi: f64) -> f64 {
    let idx = |u: usize, x: usize| match measured {
        Side::Second => 2 * u + x,
        Side::First => 2 * x + u,
    };
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let outcomes = [
        [Complex64::new(c, 0.0), e * s],
        [Complex64::new(s, 0.0), -e * c],
    ];
    let mut total = 0.0;
    for v in outcomes {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (u, row) in m.iter_mut().enumerate() {
            for (up, z) in row.iter_mut().enumerate() {
                for x in 0..2 {
                    for xp in 0..2 {
                        *z += v[x].conj() * rho[(idx(u, x), idx(up, xp))] * v[xp];
                    }
                }
            }
        }
        let p = m[0][0].re + m[1][1].re;
        if p <= 1e-300 {
            continue;
        }
        let det = (m[0][0].re * m[1][1].re - m[0][1].norm_sqr()) / (p * p);
        let disc = (0.25 - det).max(0.0).sqrt();
        total += p * binary_entropy(0.5 + disc);
    }
    total
}

/// Minimum of [`branch_entropy`] over an exhaustive grid, followed by a
/// second exhaustive grid on a window of +-2 cells around the best point.
/// Returns `(coarse_min, zoomed_min)`.
pub fn grid_conditional_entropy(
    rho: &ComplexMatrix,
    measured: Side,
    n_theta: usize,
    n_phi: usize,
) -> (f64, f64) {
    let h_theta = PI / (n_theta - 1) as f64;
    let h_phi = 2.0 * PI / n_phi as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n_theta {
        let theta = i as f64 * h_theta;
        for j in 0..n_phi {
            let phi = j as f64 * h_phi;
            let f = branch_entropy(rho, measured, theta, phi);
            if f < best.0 {
                best = (f, theta, phi);
            }
        }
    }
    let coarse = best.0;

    let lo = (best.1 - 2.0 * h_theta).max(0.0);
    let hi = (best.1 + 2.0 * h_theta).min(PI);
    let near_pole = lo == 0.0 || hi == PI;
    let (phi_lo, phi_span, n_zoom_phi) = if near_pole {
        (0.0, 2.0 * PI, 512)
    } else {
        (best.2 - 2.0 * h_phi, 4.0 * h_phi, 128)
    };
    let n_zoom_theta = 128;
    for i in 0..=n_zoom_theta {
        let theta = lo + (hi - lo) * i as f64 / n_zoom_theta as f64;
        for j in 0..=n_zoom_phi {
            let phi = phi_lo + phi_span * j as f64 / n_zoom_phi as f64;
            let f = branch_entropy(rho, measured, theta, phi);
            if f < best.0 {
                best = (f, theta, phi);
            }
        }
    }
    (coarse, best.0)
}

/// Deterministic xorshift stream for test-side randomness.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// `U = e^{i a} Rz(b) Ry(c) Rz(d)`, row-major.
pub fn qubit_unitary(a: f64, b: f64, c: f64, d: f64) -> [Complex64; 4] {
    let ph = Complex64::from_polar(1.0, a);
    let (s, co) = (0.5 * c).sin_cos();
    let e = |x: f64| Complex64::from_polar(1.0, x);
    [
        ph * e(-0.5 * (b + d)) * co,
        -ph * e(-0.5 * (b - d)) * s,
        ph * e(0.5 * (b - d)) * s,
        ph * e(0.5 * (b + d)) * co,
    ]
}

/// Two-sample Kolmogorov-Smirnov test; returns `(statistic, p_value)` with
/// the asymptotic Kolmogorov distribution.
pub fn ks_two_sample(mut x: Vec<f64>, mut y: Vec<f64>) -> (f64, f64) {
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < n && j < m {
        let v = x[i].min(y[j]);
        while i < n && x[i] <= v {
            i += 1;
        }
        while j < m && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    let mut p = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        p += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
        if term < 1e-12 {
            break;
        }
    }
    (d, p.clamp(0.0, 1.0))
}
