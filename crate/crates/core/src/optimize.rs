//! Two-parameter Nelder-Mead simplex minimizer.

/// Stopping rules for [`nelder_mead_2d`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop once the spread of objective values on the simplex is below this.
    pub f_tol: f64,
    /// ...and the simplex diameter is below this.
    pub x_tol: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            f_tol: 1e-8,
            x_tol: 1e-6,
            max_iterations: 500,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexResult {
    pub x: [f64; 2],
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` starting from a simplex at `start` with edge lengths `step`.
///
/// The returned point is the best vertex ever evaluated, so the result is
/// never worse than `f(start)`.
pub fn nelder_mead_2d<F>(mut f: F, start: [f64; 2], step: [f64; 2], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut([f64; 2]) -> f64,
{
    let mut evaluations = 0;
    let mut eval = |x: [f64; 2]| {
        evaluations += 1;
        f(x)
    };
    let mut pts = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut vals = [eval(pts[0]), eval(pts[1]), eval(pts[2])];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        sort_simplex(&mut pts, &mut vals);
        let spread = vals[2] - vals[0];
        let diameter = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| dist(pts[i], pts[j]))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && diameter <= opts.x_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (pts[0][0] + pts[1][0]),
            0.5 * (pts[0][1] + pts[1][1]),
        ];
        let toward = |coef: f64| {
            [
                centroid[0] + coef * (pts[2][0] - centroid[0]),
                centroid[1] + coef * (pts[2][1] - centroid[1]),
            ]
        };

        let reflected = toward(-REFLECT);
        let fr = eval(reflected);
        if fr < vals[0] {
            let expanded = toward(-EXPAND);
            let fe = eval(expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[2] {
            let c = toward(-CONTRACT);
            (c, eval(c))
        } else {
            let c = toward(CONTRACT);
            (c, eval(c))
        };
        if fc < vals[2].min(fr) {
            pts[2] = contracted;
            vals[2] = fc;
            continue;
        }
        for i in 1..3 {
            pts[i] = [
                pts[0][0] + SHRINK * (pts[i][0] - pts[0][0]),
                pts[0][1] + SHRINK * (pts[i][1] - pts[0][1]),
            ];
            vals[i] = eval(pts[i]);
        }
    }
    sort_simplex(&mut pts, &mut vals);
    SimplexResult {
        x: pts[0],
        f: vals[0],
        iterations,
        evaluations,
        converged,
    }
}

fn sort_simplex(pts: &mut [[f64; 2]; 3], vals: &mut [f64; 3]) {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    *pts = idx.map(|i| pts[i]);
    *vals = idx.map(|i| vals[i]);
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}
