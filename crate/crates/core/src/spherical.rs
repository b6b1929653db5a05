//! Spherical functions: SL(2,R) and SL(3,R) by integration over K, and the
//! SU(2)/SO(2) Legendre functions.
//!
//! Spectral parameters are given in the basis of fundamental weights
//! `ω_i` with `2⟨ω_i, α_j⟩/⟨α_j, α_j⟩ = δ_ij`, so that ρ = (1, ..., 1).
//! For SL(2) with `a_Y = diag(e^Y, e^{-Y})` this gives `ρ(log a_Y) = Y`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::liegroup::{exp_diag, iwasawa_log_diagonal, so2_nodes, sl2_iwasawa_h1, HaarSampler};

/// Minimum Monte Carlo sample count for SL(3).
pub const MIN_SL3_SAMPLES: usize = 10_000;
/// Largest Legendre degree accepted by the Laplace-integral route.
pub const MAX_COMPACT_DEGREE: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphericalError {
    #[error("spectral parameter has rank {got}, expected {expected}")]
    Rank { expected: usize, got: usize },
    #[error("{what} = {value} outside the allowed range {range}")]
    OutOfRange { what: &'static str, value: f64, range: String },
    #[error("quadrature did not converge: error estimate {error:e} with {nodes} nodes")]
    NonConvergent { nodes: usize, error: f64 },
    #[error("imaginary part {0:e} of a real integral exceeds tolerance")]
    ImaginaryPart(f64),
    #[error("derivative order {0} not supported (0..=3)")]
    DerivativeOrder(usize),
    #[error("{got} Monte Carlo samples requested, need at least {min}")]
    TooFewSamples { got: usize, min: usize },
}

/// `λ = ξ + iη` in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParameter {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
}

impl SpectralParameter {
    pub fn new(xi: Vec<f64>, eta: Vec<f64>) -> Result<Self, SphericalError> {
        if xi.len() != eta.len() {
            return Err(SphericalError::Rank { expected: xi.len(), got: eta.len() });
        }
        Ok(SpectralParameter { xi, eta })
    }

    pub fn rank1(xi: f64, eta: f64) -> Self {
        SpectralParameter { xi: vec![xi], eta: vec![eta] }
    }

    pub fn real(xi: Vec<f64>) -> Self {
        let eta = vec![0.0; xi.len()];
        SpectralParameter { xi, eta }
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    /// Coordinates of `λ_t = tξ + iη`.
    pub fn scaled(&self, t: f64) -> Vec<Complex64> {
        self.xi.iter().zip(&self.eta).map(|(&x, &e)| Complex64::new(t * x, e)).collect()
    }

    fn expect_rank(&self, rank: usize) -> Result<(), SphericalError> {
        if self.rank() != rank || self.eta.len() != rank {
            return Err(SphericalError::Rank { expected: rank, got: self.rank() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalValue {
    pub value: Complex64,
    pub quadrature_nodes: usize,
    pub estimated_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Accept when `|I_N - I_{N/2}| <= tol · max(1, |I_N|)`.
    pub tol: f64,
    pub max_nodes: usize,
    /// Largest admissible `|Y|`.
    pub t_max: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { tol: 1e-10, max_nodes: 1 << 22, t_max: 5.0 }
    }
}

/// `ln(sinh u / u)` and its first three derivatives, for `u >= 0`.
fn log_sinhc(u: f64) -> [f64; 4] {
    if u < 0.1 {
        let u2 = u * u;
        return [
            u2 / 6.0 - u2 * u2 / 180.0 + u2 * u2 * u2 / 2835.0,
            u / 3.0 - u * u2 / 45.0 + 2.0 * u * u2 * u2 / 945.0 - u * u2 * u2 * u2 / 4725.0,
            1.0 / 3.0 - u2 / 15.0 + 2.0 * u2 * u2 / 189.0 - u2 * u2 * u2 / 675.0,
            -2.0 * u / 15.0 + 8.0 * u * u2 / 189.0 - 2.0 * u * u2 * u2 / 225.0,
        ];
    }
    let e = (-2.0 * u).exp();
    let coth = (1.0 + e) / (1.0 - e);
    let csch2 = 4.0 * e / ((1.0 - e) * (1.0 - e));
    [
        u - std::f64::consts::LN_2 - u.ln() + (-e).ln_1p(),
        coth - 1.0 / u,
        -csch2 + 1.0 / (u * u),
        2.0 * csch2 * coth - 2.0 / (u * u * u),
    ]
}

/// Trapezoid sum of `(1/π) ∫_0^π f(ψ) dψ` with `N` nodes on the circle,
/// returning the `N` and `N/2` rules from the same nodes.
fn symmetric_trapezoid(n: usize, f: impl Fn(f64) -> Complex64) -> (Complex64, Complex64) {
    let half = n / 2;
    let mut full = Complex64::new(0.0, 0.0);
    let mut coarse = Complex64::new(0.0, 0.0);
    for k in 0..=half {
        let v = f(2.0 * PI * k as f64 / n as f64);
        let w = if k == 0 || k == half { 1.0 } else { 2.0 };
        full += v * w;
        if k % 2 == 0 {
            coarse += v * w;
        }
    }
    (full / n as f64, coarse / half as f64)
}

fn initial_nodes(bandwidth: f64, y: f64) -> usize {
    let need = 2.0 * (bandwidth + 4.0 * bandwidth.cbrt() + 16.0 + 8.0 * y);
    (need.ceil() as usize).next_power_of_two().max(64)
}

/// `d^s/dY^s` of `φ_λ(a_Y)` for SL(2), after the substitution
/// `H = Y cos ψ` that turns the K-integral into
/// `(1/π) ∫_0^π e^{iλY cos ψ} w_Y(ψ) dψ`, `w_Y = sqrt(uv / (sinh u sinh v))`,
/// `u = Y(1 - cos ψ)`, `v = Y(1 + cos ψ)`.
fn sl2_abel(lambda: Complex64, y: f64, order: usize, cfg: &QuadratureConfig) -> Result<SphericalValue, SphericalError> {
    if order > 3 {
        return Err(SphericalError::DerivativeOrder(order));
    }
    let i_lambda = Complex64::i() * lambda;
    let integrand = |psi: f64| -> Complex64 {
        let (s, c) = (0.5 * psi).sin_cos();
        let one_minus = 2.0 * s * s;
        let one_plus = 2.0 * c * c;
        let cos_psi = psi.cos();
        let lu = log_sinhc(y * one_minus);
        let lv = log_sinhc(y * one_plus);
        let e0 = i_lambda * (y * cos_psi) - 0.5 * (lu[0] + lv[0]);
        let base = e0.exp();
        if order == 0 {
            return base;
        }
        let e1 = i_lambda * cos_psi - 0.5 * (one_minus * lu[1] + one_plus * lv[1]);
        let e2 = -0.5 * (one_minus.powi(2) * lu[2] + one_plus.powi(2) * lv[2]);
        let e3 = -0.5 * (one_minus.powi(3) * lu[3] + one_plus.powi(3) * lv[3]);
        let bell = match order {
            1 => e1,
            2 => e1 * e1 + e2,
            _ => e1 * e1 * e1 + 3.0 * e1 * e2 + e3,
        };
        base * bell
    };
    let mut n = initial_nodes(lambda.norm() * y, y);
    loop {
        let (fine, coarse) = symmetric_trapezoid(n, &integrand);
        let err = (fine - coarse).norm();
        if err <= cfg.tol * fine.norm().max(1.0) {
            return Ok(SphericalValue { value: fine, quadrature_nodes: n, estimated_error: err });
        }
        if n * 2 > cfg.max_nodes {
            return Err(SphericalError::NonConvergent { nodes: n, error: err });
        }
        n *= 2;
    }
}

fn check_y(y: f64, cfg: &QuadratureConfig) -> Result<(), SphericalError> {
    if !(y.abs() <= cfg.t_max) {
        return Err(SphericalError::OutOfRange {
            what: "Y",
            value: y,
            range: format!("[-{0}, {0}]", cfg.t_max),
        });
    }
    Ok(())
}

/// `φ_λ(a_Y) = ∫_K e^{(iλ-ρ)(H(a_Y k))} dk` for SL(2,R).
pub fn spherical_sl2(lambda: &SpectralParameter, y: f64) -> Result<SphericalValue, SphericalError> {
    spherical_sl2_with(&QuadratureConfig::default(), lambda, y)
}

pub fn spherical_sl2_with(
    cfg: &QuadratureConfig,
    lambda: &SpectralParameter,
    y: f64,
) -> Result<SphericalValue, SphericalError> {
    lambda.expect_rank(1)?;
    check_y(y, cfg)?;
    sl2_abel(lambda.scaled(1.0)[0], y.abs(), 0, cfg)
}

/// The same integral evaluated directly on K = SO(2) with `count` nodes,
/// through the closed-form Iwasawa projection. Slow at large `|λ|`; used as
/// an oracle.
pub fn spherical_sl2_direct(lambda: Complex64, y: f64, count: usize) -> Complex64 {
    let exponent = Complex64::i() * lambda - 1.0;
    so2_nodes(count)
        .iter()
        .map(|&(theta, w)| (exponent * sl2_iwasawa_h1(y, theta)).exp() * w)
        .sum()
}

/// `d^s/dY^s ψ_{λ_t}(Y)` with `λ_t = tξ + iη`, `ψ(Y) = φ(exp Y)`.
pub fn deriv_spherical_sl2(
    lambda: &SpectralParameter,
    t_scale: f64,
    y: f64,
    order: usize,
) -> Result<SphericalValue, SphericalError> {
    deriv_spherical_sl2_with(&QuadratureConfig::default(), lambda, t_scale, y, order)
}

pub fn deriv_spherical_sl2_with(
    cfg: &QuadratureConfig,
    lambda: &SpectralParameter,
    t_scale: f64,
    y: f64,
    order: usize,
) -> Result<SphericalValue, SphericalError> {
    lambda.expect_rank(1)?;
    if !(y > 0.0 && y <= cfg.t_max) {
        return Err(SphericalError::OutOfRange { what: "Y", value: y, range: format!("(0, {}]", cfg.t_max) });
    }
    sl2_abel(lambda.scaled(t_scale)[0], y, order, cfg)
}

/// Monte Carlo `φ_λ(exp diag(a1, a2, -a1-a2))` for SL(3,R) over Haar SO(3).
/// The error field is the standard error of the mean.
pub fn spherical_sl3(
    lambda: &SpectralParameter,
    a_log: [f64; 2],
    samples: usize,
    seed: u64,
) -> Result<SphericalValue, SphericalError> {
    lambda.expect_rank(2)?;
    if samples < MIN_SL3_SAMPLES {
        return Err(SphericalError::TooFewSamples { got: samples, min: MIN_SL3_SAMPLES });
    }
    let a = exp_diag(&[a_log[0], a_log[1], -a_log[0] - a_log[1]]);
    let lam = lambda.scaled(1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for k in HaarSampler::new(3, seed).take(samples) {
        let v = sl3_integrand(&lam, &a, &k);
        sum += v;
        sum_sq += v.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean.norm_sqr()).max(0.0) * n / (n - 1.0);
    Ok(SphericalValue { value: mean, quadrature_nodes: samples, estimated_error: (var / n).sqrt() })
}

/// `e^{(iλ-ρ)(H(a k))}` for SL(3), λ in fundamental-weight coordinates.
pub fn sl3_integrand(lambda: &[Complex64], a: &DMatrix<f64>, k: &DMatrix<f64>) -> Complex64 {
    let h = iwasawa_log_diagonal(&(a * k));
    let lam_h = lambda[0] * h[0] + lambda[1] * (h[0] + h[1]);
    let rho_h = 2.0 * h[0] + h[1];
    (Complex64::i() * lam_h - rho_h).exp()
}

/// `P_n(x)` by the three-term recurrence.
pub fn legendre(n: u64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Spherical function of SU(2)/SO(2) of degree `n` at angle θ, from the
/// Laplace integral `(1/π) ∫_0^π (cos θ + i sin θ cos φ)^n dφ`. The
/// trapezoid rule with more than `n` nodes is exact for this integrand.
pub fn spherical_compact_su2(n: u64, theta: f64) -> Result<f64, SphericalError> {
    if n > MAX_COMPACT_DEGREE {
        return Err(SphericalError::OutOfRange {
            what: "n",
            value: n as f64,
            range: format!("[0, {MAX_COMPACT_DEGREE}]"),
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (s, c) = theta.sin_cos();
    let nodes = (2 * (n as usize + 1)).next_power_of_two();
    let (value, _) = symmetric_trapezoid(nodes, |phi| Complex64::new(c, s * phi.cos()).powu(n as u32));
    if value.im.abs() > 1e-10 {
        return Err(SphericalError::ImaginaryPart(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sinhc_branches_agree() {
        for &u in &[0.0999999, 0.1000001] {
            let a = log_sinhc(u);
            let b = log_sinhc(u * (1.0 + 1e-9));
            for i in 0..4 {
                assert!((a[i] - b[i]).abs() < 1e-9, "{i} {u}");
            }
        }
        let u: f64 = 3.0;
        assert!((log_sinhc(u)[0] - (u.sinh() / u).ln()).abs() < 1e-14);
        assert!((log_sinhc(u)[1] - (1.0 / u.tanh() - 1.0 / u)).abs() < 1e-14);
    }

    #[test]
    fn identity_value() {
        for &(xi, eta) in &[(0.0, 0.0), (3.0, 0.0), (1.0, 0.7)] {
            let v = spherical_sl2(&SpectralParameter::rank1(xi, eta), 0.0).unwrap();
            assert!((v.value - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn matches_direct_integral() {
        for &(xi, eta, y) in &[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0), (3.5, 0.0, 2.0), (2.0, 0.3, 0.5), (0.0, 1.5, 3.0)] {
            let v = spherical_sl2(&SpectralParameter::rank1(xi, eta), y).unwrap();
            let d = spherical_sl2_direct(Complex64::new(xi, eta), y, 1 << 16);
            assert!((v.value - d).norm() < 1e-10, "{xi} {eta} {y}: {} vs {}", v.value, d);
        }
    }

    #[test]
    fn derivative_order_zero_is_value() {
        let lam = SpectralParameter::rank1(1.3, 0.0);
        let v = spherical_sl2(&lam, 1.1).unwrap().value;
        let d = deriv_spherical_sl2(&lam, 1.0, 1.1, 0).unwrap().value;
        assert!((v - d).norm() < 1e-14);
        assert!(deriv_spherical_sl2(&lam, 1.0, 1.1, 4).is_err());
    }

    #[test]
    fn laplace_matches_recurrence() {
        assert_eq!(spherical_compact_su2(0, 0.4).unwrap(), 1.0);
        assert!((spherical_compact_su2(1, PI / 3.0).unwrap() - 0.5).abs() < 1e-15);
        let v = spherical_compact_su2(40, 1.0).unwrap();
        assert!((v - legendre(40, 1.0f64.cos())).abs() < 1e-9);
        assert!(spherical_compact_su2(MAX_COMPACT_DEGREE + 1, 1.0).is_err());
    }

    #[test]
    fn legendre_basics() {
        assert_eq!(legendre(0, 0.3), 1.0);
        assert_eq!(legendre(1, 0.3), 0.3);
        let x: f64 = 0.7;
        let p5 = (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0;
        assert!((legendre(5, x) - p5).abs() < 1e-14);
    }

    #[test]
    fn sl3_rank_checks() {
        assert!(spherical_sl3(&SpectralParameter::rank1(0.0, 0.0), [0.0, 0.0], 20_000, 1).is_err());
        assert!(spherical_sl3(&SpectralParameter::real(vec![0.0, 0.0]), [0.0, 0.0], 10, 1).is_err());
        let v = spherical_sl3(&SpectralParameter::real(vec![1.0, 2.0]), [0.0, 0.0], 10_000, 1).unwrap();
        assert!((v.value - 1.0).norm() < 1e-12);
    }
}
