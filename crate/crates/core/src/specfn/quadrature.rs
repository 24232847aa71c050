use nalgebra::{DMatrix, SymmetricEigen};

use super::gamma::{ln_factorial, ln_gamma};
use super::poly::laguerre_with_derivative;
use super::SpecFnError;

#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureKind {
    /// `∫₀^∞ u^ℓ e^{−u} g(u) du`.
    GaussLaguerre { order: usize, ell: f64 },
    /// `∫_{−1}^{1} g(x) dx`.
    GaussLegendre { order: usize },
    /// Composite trapezoid rule on an arbitrary increasing grid.
    Trapezoid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wᵢ g(xᵢ)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Eigen-decomposition of a symmetric tridiagonal Jacobi matrix.
/// Returns `(eigenvalues, squared first components)` sorted by eigenvalue.
fn golub_welsch(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
    }
    for (i, &b) in off.iter().enumerate() {
        j[(i, i + 1)] = b;
        j[(i + 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Gauss–Laguerre nodes and weights for the weight `u^ℓ e^{−u}` on `[0, ∞)`.
///
/// Nodes come from the Golub–Welsch eigenproblem and are then polished by
/// Newton iteration on `L_order^ℓ`; weights use
/// `w = Γ(n+ℓ+1) / (n! x [L_n^ℓ'(x)]²)` in the log domain.
pub fn gauss_laguerre_rule(order: usize, ell: f64) -> Result<QuadratureRule, SpecFnError> {
    if order == 0 {
        return Err(SpecFnError::Domain {
            function: "gauss_laguerre_rule",
            detail: "order must be at least 1".into(),
        });
    }
    if !(ell >= 0.0) || !ell.is_finite() {
        return Err(SpecFnError::Domain {
            function: "gauss_laguerre_rule",
            detail: format!("weight exponent must be finite and nonnegative, got {ell}"),
        });
    }
    let diag: Vec<f64> = (0..order).map(|i| 2.0 * i as f64 + ell + 1.0).collect();
    let off: Vec<f64> = (1..order)
        .map(|i| (i as f64 * (i as f64 + ell)).sqrt())
        .collect();
    let (mut nodes, _) = golub_welsch(&diag, &off);

    let ln_num = ln_gamma(order as f64 + ell + 1.0) - ln_factorial(order);
    let mut weights = Vec::with_capacity(order);
    for x in nodes.iter_mut() {
        let mut converged = false;
        for _ in 0..12 {
            let (l, dl) = laguerre_with_derivative(order, ell, *x);
            let dx = l / dl;
            *x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
                converged = true;
                break;
            }
        }
        let (l, dl) = laguerre_with_derivative(order, ell, *x);
        if !converged && (l / dl).abs() > 1e-10 * x.abs() {
            return Err(SpecFnError::Convergence {
                what: "gauss_laguerre_rule",
                detail: format!("Newton polish stalled near node {x} (order {order}, ell {ell})"),
            });
        }
        weights.push((ln_num - x.ln() - 2.0 * dl.abs().ln()).exp());
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLaguerre { order, ell },
        nodes,
        weights,
    })
}

/// Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre_rule(order: usize) -> Result<QuadratureRule, SpecFnError> {
    if order == 0 {
        return Err(SpecFnError::Domain {
            function: "gauss_legendre_rule",
            detail: "order must be at least 1".into(),
        });
    }
    let diag = vec![0.0; order];
    let off: Vec<f64> = (1..order)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let (mut nodes, _) = golub_welsch(&diag, &off);
    let mut weights = Vec::with_capacity(order);
    for x in nodes.iter_mut() {
        // Newton on P_n using the three-term recurrence.
        for _ in 0..8 {
            let (p, d) = legendre_with_derivative(order, *x);
            let dx = p / d;
            *x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, *x);
        weights.push(2.0 / ((1.0 - *x * *x) * d * d));
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLegendre { order },
        nodes,
        weights,
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite trapezoid weights on an increasing grid.
pub fn trapezoid_rule(grid: &[f64]) -> Result<QuadratureRule, SpecFnError> {
    if grid.len() < 2 {
        return Err(SpecFnError::Domain {
            function: "trapezoid_rule",
            detail: "grid needs at least two points".into(),
        });
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(SpecFnError::Domain {
            function: "trapezoid_rule",
            detail: "grid must be strictly increasing".into(),
        });
    }
    let n = grid.len();
    let mut weights = vec![0.0; n];
    for i in 0..n - 1 {
        let h = 0.5 * (grid[i + 1] - grid[i]);
        weights[i] += h;
        weights[i + 1] += h;
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::Trapezoid,
        nodes: grid.to_vec(),
        weights,
    })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut error = ((res_k - res_g) * h).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment {
        a,
        b,
        value,
        error,
        resabs,
    }
}

const MAX_SEGMENTS: usize = 2000;

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// The segment with the largest error estimate is bisected until the total
/// estimate falls below `max(abs_tol, rel_tol·|I|)`. Requests tighter than
/// the rounding floor of the Kronrod sums are clamped to that floor.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral, SpecFnError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(SpecFnError::Domain {
            function: "integrate_adaptive",
            detail: format!("limits must be finite, got [{a}, {b}]"),
        });
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut segs = vec![gk15(&mut f, a, b)];
    let mut evaluations = 15;
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        let resabs: f64 = segs.iter().map(|s| s.resabs).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(SpecFnError::Convergence {
                what: "adaptive quadrature",
                detail: format!("non-finite integrand on [{a}, {b}]"),
            });
        }
        let target = abs_tol
            .max(rel_tol * value.abs())
            .max(100.0 * f64::EPSILON * resabs);
        if error <= target {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(SpecFnError::Convergence {
                what: "adaptive quadrature",
                detail: format!(
                    "error estimate {error:e} above target {target:e} after {MAX_SEGMENTS} segments on [{a}, {b}]"
                ),
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a.min(s.b) || mid >= s.a.max(s.b) {
            return Err(SpecFnError::Convergence {
                what: "adaptive quadrature",
                detail: format!("segment near {mid} cannot be bisected further"),
            });
        }
        segs.push(gk15(&mut f, s.a, mid));
        segs.push(gk15(&mut f, mid, s.b));
        evaluations += 30;
    }
}
