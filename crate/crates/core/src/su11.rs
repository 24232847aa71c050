//! The su(1,1) ladder acting on the radial quantum number at fixed `ℓ`.
//!
//! Basis functions are
//! `φ_n^ℓ(u) = √(n!/Γ(n+ℓ+1)) u^{ℓ/2} e^{−ϖu/2} L_n^ℓ(u)`, with Bargmann
//! index `k = (ℓ+1)/2`. In this normalization
//! `K₋φ_n = √(n(n+ℓ)) φ_{n−1}` and `K₊φ_n = √((n+1)(n+ℓ+1)) φ_{n+1}` hold with
//! positive coefficients, so no alternating sign is attached to `φ_n`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Ratio;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::spectra::radial_profile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su11Error {
    #[error("grid too coarse: spectral tail {tail:e} exceeds {limit:e}")]
    GridTooCoarse { tail: f64, limit: f64 },
    #[error("sample count {got} does not match grid size {want}")]
    Length { got: usize, want: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Rational = Ratio<i128>;

/// Bargmann index `k = (ℓ+1)/2`.
pub fn bargmann_k(ell: u32) -> Rational {
    Rational::new(ell as i128 + 1, 2)
}

/// `ℓ = 2k − 1`; `None` unless `k` is a positive half-integer.
pub fn ell_from_k(k: Rational) -> Option<u32> {
    let two_k = k * 2;
    if !two_k.is_integer() || *two_k.numer() < 1 {
        return None;
    }
    u32::try_from(two_k.to_integer() - 1).ok()
}

/// Casimir value `¼(ℓ+1)(ℓ−1) = k(k−1)`.
pub fn casimir(ell: u32) -> f64 {
    let l = ell as f64;
    0.25 * (l + 1.0) * (l - 1.0)
}

pub fn casimir_exact(ell: u32) -> Rational {
    let k = bargmann_k(ell);
    k * (k - 1)
}

/// Finite superposition `Σ cₙ φ_n^ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub ell: u32,
    pub coefficients: BTreeMap<usize, Complex64>,
}

impl RadialState {
    pub fn zero(ell: u32) -> Self {
        RadialState {
            ell,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn basis(ell: u32, n: usize) -> Self {
        let mut s = Self::zero(ell);
        s.coefficients.insert(n, Complex64::new(1.0, 0.0));
        s
    }

    pub fn k(&self) -> Rational {
        bargmann_k(self.ell)
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients.get(&n).copied().unwrap_or_default()
    }

    fn add(&mut self, n: usize, c: Complex64) {
        *self.coefficients.entry(n).or_default() += c;
    }

    /// `Σ|cₙ|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        RadialState {
            ell: self.ell,
            coefficients: self.coefficients.iter().map(|(&n, &c)| (n, c * z)).collect(),
        }
    }

    /// Largest coefficient difference.
    pub fn max_diff(&self, other: &RadialState) -> f64 {
        let keys: std::collections::BTreeSet<usize> = self
            .coefficients
            .keys()
            .chain(other.coefficients.keys())
            .copied()
            .collect();
        keys.into_iter()
            .map(|n| (self.coefficient(n) - other.coefficient(n)).norm())
            .fold(0.0, f64::max)
    }
}

fn ell_f(ell: u32) -> f64 {
    ell as f64
}

/// `K₋`: `cₙ → √(n(n+ℓ)) cₙ` at `n−1`.
pub fn k_minus(s: &RadialState) -> RadialState {
    let mut out = RadialState::zero(s.ell);
    for (&n, &c) in &s.coefficients {
        if n > 0 {
            let nf = n as f64;
            out.add(n - 1, c * (nf * (nf + ell_f(s.ell))).sqrt());
        }
    }
    out
}

/// `K₊`: `cₙ → √((n+1)(n+ℓ+1)) cₙ` at `n+1`.
pub fn k_plus(s: &RadialState) -> RadialState {
    let mut out = RadialState::zero(s.ell);
    for (&n, &c) in &s.coefficients {
        let nf = n as f64;
        out.add(n + 1, c * ((nf + 1.0) * (nf + ell_f(s.ell) + 1.0)).sqrt());
    }
    out
}

/// `K₀`: `cₙ → (n + k) cₙ`.
pub fn k_zero(s: &RadialState) -> RadialState {
    let k = bargmann_k(s.ell);
    let kf = *k.numer() as f64 / *k.denom() as f64;
    RadialState {
        ell: s.ell,
        coefficients: s
            .coefficients
            .iter()
            .map(|(&n, &c)| (n, c * (n as f64 + kf)))
            .collect(),
    }
}

/// Exact linear combination `Σ qᵢ √sᵢ` with square-free radicands.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

/// Splits `n = a²·b` with `b` square-free and returns `(a, b)`.
fn square_free(mut n: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut p = 2;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            outside *= p;
        }
        p += 1;
    }
    (outside, n)
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.push(1, q);
        s
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (a, b) = square_free(n);
        let mut s = Self::zero();
        s.push(b, Rational::from_integer(a as i128));
        s
    }

    fn push(&mut self, radicand: u64, q: Rational) {
        let e = self.terms.entry(radicand).or_insert_with(|| Rational::from_integer(0));
        *e += q;
        if *e == Rational::from_integer(0) {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.clone();
        for (&r, &q) in &other.terms {
            out.push(r, q);
        }
        out
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.scale(Rational::from_integer(-1)))
    }

    pub fn scale(&self, q: Rational) -> Surd {
        let mut out = Surd::zero();
        for (&r, &c) in &self.terms {
            out.push(r, c * q);
        }
        out
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&r1, &q1) in &self.terms {
            for (&r2, &q2) in &other.terms {
                let (a, b) = square_free(r1 * r2);
                out.push(b, q1 * q2 * Rational::from_integer(a as i128));
            }
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&r, q)| (*q.numer() as f64 / *q.denom() as f64) * (r as f64).sqrt())
            .sum()
    }
}

/// Radial state with exact surd coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactState {
    pub ell: u32,
    pub coefficients: BTreeMap<usize, Surd>,
}

impl ExactState {
    pub fn zero(ell: u32) -> Self {
        ExactState {
            ell,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn basis(ell: u32, n: usize) -> Self {
        let mut s = Self::zero(ell);
        s.coefficients.insert(n, Surd::rational(Rational::from_integer(1)));
        s
    }

    fn push(&mut self, n: usize, c: Surd) {
        let e = self.coefficients.entry(n).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.coefficients.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &ExactState) -> ExactState {
        let mut out = self.clone();
        for (&n, c) in &other.coefficients {
            out.push(n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExactState) -> ExactState {
        self.add(&other.scale(Rational::from_integer(-1)))
    }

    pub fn scale(&self, q: Rational) -> ExactState {
        let mut out = ExactState::zero(self.ell);
        for (&n, c) in &self.coefficients {
            out.push(n, c.scale(q));
        }
        out
    }
}

pub fn k_minus_exact(s: &ExactState) -> ExactState {
    let mut out = ExactState::zero(s.ell);
    for (&n, c) in &s.coefficients {
        if n > 0 {
            let factor = Surd::sqrt(n as u64 * (n as u64 + s.ell as u64));
            out.push(n - 1, c.mul(&factor));
        }
    }
    out
}

pub fn k_plus_exact(s: &ExactState) -> ExactState {
    let mut out = ExactState::zero(s.ell);
    for (&n, c) in &s.coefficients {
        let factor = Surd::sqrt((n as u64 + 1) * (n as u64 + s.ell as u64 + 1));
        out.push(n + 1, c.mul(&factor));
    }
    out
}

pub fn k_zero_exact(s: &ExactState) -> ExactState {
    let k = bargmann_k(s.ell);
    let mut out = ExactState::zero(s.ell);
    for (&n, c) in &s.coefficients {
        out.push(n, c.scale(k + Rational::from_integer(n as i128)));
    }
    out
}

/// `K₀² − ½(K₊K₋ + K₋K₊)` applied exactly.
pub fn casimir_apply_exact(s: &ExactState) -> ExactState {
    let k0k0 = k_zero_exact(&k_zero_exact(s));
    let pm = k_plus_exact(&k_minus_exact(s));
    let mp = k_minus_exact(&k_plus_exact(s));
    k0k0.sub(&pm.add(&mp).scale(Rational::new(1, 2)))
}

/// Outcome of the exact algebra check on one basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraCheck {
    pub ell: u32,
    pub n: usize,
    /// `[K₋, K₊] = 2K₀`.
    pub lowering_raising: bool,
    /// `[K₀, K₊] = K₊`.
    pub zero_raising: bool,
    /// `[K₀, K₋] = −K₋`.
    pub zero_lowering: bool,
    /// Casimir equals `k(k−1)` times the state.
    pub casimir: bool,
}

impl AlgebraCheck {
    pub fn all(&self) -> bool {
        self.lowering_raising && self.zero_raising && self.zero_lowering && self.casimir
    }
}

/// Checks the su(1,1) relations exactly on the basis state `φ_n^ℓ`.
pub fn check_algebra(ell: u32, n: usize) -> AlgebraCheck {
    let s = ExactState::basis(ell, n);
    let km = k_minus_exact;
    let kp = k_plus_exact;
    let k0 = k_zero_exact;
    let two = Rational::from_integer(2);
    let lr = km(&kp(&s)).sub(&kp(&km(&s))).sub(&k0(&s).scale(two));
    let zr = k0(&kp(&s)).sub(&kp(&k0(&s))).sub(&kp(&s));
    let zl = k0(&km(&s)).sub(&km(&k0(&s))).add(&km(&s));
    let cas = casimir_apply_exact(&s).sub(&s.scale(casimir_exact(ell)));
    AlgebraCheck {
        ell,
        n,
        lowering_raising: lr.is_zero(),
        zero_raising: zr.is_zero(),
        zero_lowering: zl.is_zero(),
        casimir: cas.is_zero(),
    }
}

/// Symmetric uniform grid in `s = √u`, extended to negative `s` so that
/// basis functions become smooth and effectively periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub s: Vec<f64>,
}

impl RadialGrid {
    /// `points` nodes on `[−s_max, s_max)`; `points` must be even.
    pub fn new(points: usize, s_max: f64) -> Result<Self, Su11Error> {
        if points < 16 || points % 2 != 0 || !(s_max > 0.0) {
            return Err(Su11Error::Invalid(format!(
                "need an even number of points >= 16 and s_max > 0, got {points}, {s_max}"
            )));
        }
        let h = 2.0 * s_max / points as f64;
        Ok(RadialGrid {
            s: (0..points).map(|k| -s_max + k as f64 * h).collect(),
        })
    }

    pub fn spacing(&self) -> f64 {
        self.s[1] - self.s[0]
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// `φ_n^ℓ` at `u = s²`, continued to `s < 0` as `sign(s)^ℓ φ_n^ℓ(s²)`.
pub fn basis_function(varpi: Complex64, ell: u32, n: usize, s: f64) -> Complex64 {
    let u = s * s;
    let real = radial_profile(n, ell as usize, u);
    let parity = if s < 0.0 && ell % 2 == 1 { -1.0 } else { 1.0 };
    // radial_profile carries e^{−u/2}; the chirp supplies the rest of e^{−ϖu/2}.
    let chirp = Complex64::from_polar(1.0, -0.5 * varpi.im * u);
    let damp = (-(varpi.re - 1.0) * 0.5 * u).exp();
    chirp * (parity * damp * real)
}

pub fn basis_samples(varpi: Complex64, ell: u32, n: usize, grid: &RadialGrid) -> Vec<Complex64> {
    grid.s.iter().map(|&s| basis_function(varpi, ell, n, s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// Applies the differential form of `K±` to samples of a function of `u` on
/// a [`RadialGrid`]:
/// `K₋ = −u d/du + ℓ/2 + n − ϖu/2`, `K₊ = u d/du + ℓ/2 + n − (2−ϖ)u/2 + 1`,
/// where `n` is the index of the basis function being acted on.
///
/// `u d/du = (s/2) d/ds` is evaluated by FFT differentiation in `s`.
pub fn k_differential_apply(
    varpi: Complex64,
    ell: u32,
    which: Ladder,
    samples: &[Complex64],
    grid: &RadialGrid,
    n: usize,
) -> Result<Vec<Complex64>, Su11Error> {
    let m = grid.len();
    if samples.len() != m {
        return Err(Su11Error::Length {
            got: samples.len(),
            want: m,
        });
    }
    let mut planner = FftPlanner::<f64>::new();
    let mut spectrum = samples.to_vec();
    planner.plan_fft_forward(m).process(&mut spectrum);
    let peak = spectrum.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tail = spectrum[3 * m / 8..5 * m / 8]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    const LIMIT: f64 = 1e-9;
    if peak > 0.0 && tail > LIMIT * peak {
        return Err(Su11Error::GridTooCoarse {
            tail: tail / peak,
            limit: LIMIT,
        });
    }
    let scale = 2.0 * std::f64::consts::PI / (m as f64 * grid.spacing());
    for (k, c) in spectrum.iter_mut().enumerate() {
        let kk = if k < m / 2 {
            k as f64
        } else if k == m / 2 {
            0.0
        } else {
            k as f64 - m as f64
        };
        *c *= Complex64::new(0.0, kk * scale / m as f64);
    }
    planner.plan_fft_inverse(m).process(&mut spectrum);
    let half_ell = 0.5 * ell as f64;
    let nf = n as f64;
    Ok(grid
        .s
        .iter()
        .zip(samples)
        .zip(&spectrum)
        .map(|((&s, &v), &dv)| {
            let u = s * s;
            let u_du = 0.5 * s * dv;
            match which {
                Ladder::Lower => -u_du + (half_ell + nf - 0.5 * varpi * u) * v,
                Ladder::Raise => {
                    u_du + (half_ell + nf - 0.5 * (2.0 - varpi) * u + 1.0) * v
                }
            }
        })
        .collect())
}
