//! Stationary-phase leading terms, decay-rate fits, empirical Hölder
//! quotients, the exponential-sum separation mean and the wall blow-up sweep.
//!
//! Rank-one conventions: the invariant form is half the trace form, so
//! `⟨α, α⟩ = 4`, `⟨α, ξρ⟩ = 2ξ`, `α(log a_Y) = 2Y`, and K = SO(2) has
//! length 2π.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::liegroup::sl2_iwasawa_h1;
use crate::spherical::legendre;

pub const DEFAULT_GROWTH_THRESHOLD: f64 = 2.0;
pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("sample {index} has non-positive magnitude {value}")]
    NonPositiveMagnitude { index: usize, value: f64 },
    #[error("sample abscissae must be positive and strictly increasing (index {0})")]
    NotIncreasing(usize),
    #[error("Hölder exponent {0} outside (0, 1]")]
    InvalidAlpha(f64),
    #[error("empty grid")]
    EmptyGrid,
    #[error("grid is not uniform near index {0}")]
    NonUniformGrid(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("Y = {0} is on or outside the chamber wall")]
    ChamberWall(f64),
    #[error("spectral parameter must be non-zero")]
    ZeroSpectral,
    #[error("scale t = {0} must be at least 1")]
    InvalidScale(f64),
    #[error("angle {0} outside {1}")]
    AngleOutOfRange(f64, &'static str),
    #[error("no wall-approach angle satisfies θ >= n^-2 for n = {0}")]
    NoAdmissibleAngle(u64),
}

/// Least-squares line through `(log t, log magnitude)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub samples: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn decay_fit(samples: &[(f64, f64)]) -> Result<DecayFit, AsymptoticsError> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(AsymptoticsError::TooFewSamples { min: MIN_FIT_SAMPLES, got: samples.len() });
    }
    for (i, &(t, m)) in samples.iter().enumerate() {
        if !(m > 0.0) {
            return Err(AsymptoticsError::NonPositiveMagnitude { index: i, value: m });
        }
        if !(t > 0.0) || (i > 0 && t <= samples[i - 1].0) {
            return Err(AsymptoticsError::NotIncreasing(i));
        }
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) } else { 1.0 };
    Ok(DecayFit { samples: samples.to_vec(), slope, intercept, r_squared })
}

/// Largest value of `f` on `points` equally spaced abscissae of
/// `[start, start + period)`, with the abscissa where it occurs.
pub fn peak_envelope<E>(
    start: f64,
    period: f64,
    points: usize,
    mut f: impl FnMut(f64) -> Result<f64, E>,
) -> Result<(f64, f64), E> {
    let mut best = (start, f64::NEG_INFINITY);
    for j in 0..points {
        let t = start + period * j as f64 / points as f64;
        let v = f(t)?;
        if v > best.1 {
            best = (t, v);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylBranch {
    /// identity / the `+` branch
    Plus,
    /// the reflection / the `-` branch
    Minus,
}

impl WeylBranch {
    fn sign(self) -> f64 {
        match self {
            WeylBranch::Plus => 1.0,
            WeylBranch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylContribution {
    pub branch: WeylBranch,
    /// `e^{it(wλ)(Y)}`
    pub phase_point_value: Complex64,
    /// `c_w`, independent of `t`
    pub amplitude: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeadingTerm {
    pub contributions: Vec<WeylContribution>,
    pub decay_power: f64,
    pub t: f64,
    pub total: Complex64,
}

impl LeadingTerm {
    fn assemble(contributions: Vec<WeylContribution>, decay_power: f64, t: f64) -> Self {
        let weight = t.powf(-decay_power);
        let total = contributions.iter().map(|c| c.phase_point_value * c.amplitude).sum::<Complex64>() * weight;
        LeadingTerm { contributions, decay_power, t, total }
    }

    pub fn amplitude_bound(&self) -> f64 {
        self.contributions.iter().map(|c| c.amplitude.norm()).sum::<f64>() * self.t.powf(-self.decay_power)
    }
}

/// Amplitude `k_θ ↦ e^{-ρ(H(a_Y k_θ))}` of the SL(2) spherical integral.
pub fn sl2_spherical_amplitude(y: f64) -> impl Fn(f64) -> f64 {
    move |theta| (-sl2_iwasawa_h1(y, theta)).exp()
}

/// Leading stationary-phase term of `∫_K e^{itξ ρ(H(a_Y k))} g(k) dk` for
/// SL(2,R), summed over the two Weyl points θ = 0 and θ = π/2 and their
/// M-translates.
pub fn leading_term_sl2(
    xi: f64,
    y: f64,
    t: f64,
    g: impl Fn(f64) -> f64,
) -> Result<LeadingTerm, AsymptoticsError> {
    if !(y > 0.0) {
        return Err(AsymptoticsError::ChamberWall(y));
    }
    if xi == 0.0 || !xi.is_finite() {
        return Err(AsymptoticsError::ZeroSpectral);
    }
    if !(t >= 1.0) {
        return Err(AsymptoticsError::InvalidScale(t));
    }
    let pairing = 2.0 * xi;
    let contributions = [(WeylBranch::Plus, 0.0), (WeylBranch::Minus, PI / 2.0)]
        .into_iter()
        .map(|(branch, theta)| {
            let root_at_y = branch.sign() * 2.0 * y;
            let sigma = -(pairing * root_at_y).signum();
            let det = (pairing / (4.0 * PI) * (1.0 - (-2.0 * root_at_y).exp())).abs();
            let fibre = (g(theta) + g(theta + PI)) / (2.0 * PI);
            let amplitude = Complex64::from_polar(det.powf(-0.5) * fibre, PI * sigma / 4.0);
            let phase_point_value = Complex64::from_polar(1.0, t * branch.sign() * xi * y);
            WeylContribution { branch, phase_point_value, amplitude }
        })
        .collect();
    Ok(LeadingTerm::assemble(contributions, 0.5, t))
}

/// `det(-L)^{-1/2}` at the critical point `w` of the compact rank-one phase,
/// `e^{∓iπ/4} ⟨α,μ⟩^{-1/2} e^{±iY/2} |sin Y|^{-1/2}` for `w = ±`.
pub fn hessian_det_compact_rank1(pairing: u32, y: f64, branch: WeylBranch) -> Result<Complex64, AsymptoticsError> {
    if !(y > 0.0 && y < PI) {
        return Err(AsymptoticsError::AngleOutOfRange(y, "(0, π)"));
    }
    if pairing == 0 {
        return Err(AsymptoticsError::ZeroSpectral);
    }
    let s = branch.sign();
    let modulus = (pairing as f64).powf(-0.5) * y.sin().abs().powf(-0.5);
    Ok(Complex64::from_polar(modulus, -s * PI / 4.0 + s * y / 2.0))
}

/// Leading term of the SU(2)/SO(2) spherical function of degree `n` at θ.
/// Highest weight `nμ_1` with `⟨α, μ_1⟩ = 4`; `(2π)^{1/2}` from the Gaussian
/// integral and `1/π = 1/Vol(K/K_μ)`.
pub fn leading_term_su2(n: u64, theta: f64) -> Result<LeadingTerm, AsymptoticsError> {
    if n == 0 {
        return Err(AsymptoticsError::ZeroSpectral);
    }
    let scale = (2.0 * PI).sqrt() / PI;
    let contributions = [WeylBranch::Plus, WeylBranch::Minus]
        .into_iter()
        .map(|branch| {
            Ok(WeylContribution {
                branch,
                phase_point_value: Complex64::from_polar(1.0, branch.sign() * n as f64 * theta),
                amplitude: hessian_det_compact_rank1(4, theta, branch)? * scale,
            })
        })
        .collect::<Result<Vec<_>, AsymptoticsError>>()?;
    Ok(LeadingTerm::assemble(contributions, 0.5, n as f64))
}

/// Grid angles on `[0, 2π)` where the numerical θ-derivative of
/// `θ ↦ ξ ρ(H(a_Y k_θ))` is below `tol` in magnitude.
pub fn stationary_points_check_sl2(xi: f64, y: f64, tol: f64, grid: usize) -> Result<Vec<f64>, AsymptoticsError> {
    if !(y > 0.0) {
        return Err(AsymptoticsError::ChamberWall(y));
    }
    if xi == 0.0 {
        return Err(AsymptoticsError::ZeroSpectral);
    }
    const STEP: f64 = 1e-6;
    Ok((0..grid)
        .map(|k| 2.0 * PI * k as f64 / grid as f64)
        .filter(|&th| {
            let d = xi * (sl2_iwasawa_h1(y, th + STEP) - sl2_iwasawa_h1(y, th - STEP)) / (2.0 * STEP);
            d.abs() < tol
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Growing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    pub alpha: f64,
    pub derivative_order: usize,
    pub family_params: Vec<f64>,
    pub sup_quotients: Vec<f64>,
    pub verdict: Verdict,
    /// last / first sup quotient
    pub growth_ratio: f64,
}

/// Sup of `|f(x) - f(y)| / |x - y|^α` over pairs at separations `h·2^k`.
pub fn dyadic_sup_quotient(values: &[Complex64], h: f64, alpha: f64) -> f64 {
    let mut best = 0.0f64;
    let mut k = 1usize;
    while k < values.len() {
        let denom = (k as f64 * h).powf(alpha);
        let diff = values.iter().zip(&values[k..]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        best = best.max(diff / denom);
        k *= 2;
    }
    best
}

/// Empirical Hölder quotients of a family `f_t` of `r`-th derivatives
/// sampled on a common uniform grid, restricted to `region`.
pub fn holder_estimate(
    grid: &[f64],
    family: &[(f64, Vec<Complex64>)],
    derivative_order: usize,
    alpha: f64,
    region: (f64, f64),
    threshold: f64,
) -> Result<HolderReport, AsymptoticsError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(AsymptoticsError::InvalidAlpha(alpha));
    }
    let idx: Vec<usize> = (0..grid.len()).filter(|&i| grid[i] >= region.0 && grid[i] <= region.1).collect();
    if idx.len() < 2 || family.is_empty() {
        return Err(AsymptoticsError::EmptyGrid);
    }
    let (lo, hi) = (idx[0], idx[idx.len() - 1]);
    let h = grid[lo + 1] - grid[lo];
    for i in lo..hi {
        let d = grid[i + 1] - grid[i];
        if !(h > 0.0) || (d - h).abs() > 1e-6 * h {
            return Err(AsymptoticsError::NonUniformGrid(i));
        }
    }
    let mut sup_quotients = Vec::with_capacity(family.len());
    for (t, values) in family {
        if values.len() != grid.len() {
            return Err(AsymptoticsError::LengthMismatch(format!(
                "member t={t} has {} values for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        sup_quotients.push(dyadic_sup_quotient(&values[lo..=hi], h, alpha));
    }
    let first = sup_quotients[0];
    let last = *sup_quotients.last().expect("non-empty family");
    let growth_ratio = if first == 0.0 {
        if last == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        last / first
    };
    Ok(HolderReport {
        alpha,
        derivative_order,
        family_params: family.iter().map(|f| f.0).collect(),
        sup_quotients,
        verdict: if growth_ratio > threshold { Verdict::Growing } else { Verdict::Bounded },
        growth_ratio,
    })
}

/// Cesàro mean `(1/N) Σ_{t=m}^{m+N-1} |Σ_j f_j(x) e^{itu_j(x)} - f_j(y) e^{itu_j(y)}|²`.
pub fn exp_sum_separation(
    f_x: &[Complex64],
    f_y: &[Complex64],
    u_x: &[f64],
    u_y: &[f64],
    m: i64,
    n: usize,
) -> Result<f64, AsymptoticsError> {
    let len = f_x.len();
    if f_y.len() != len || u_x.len() != len || u_y.len() != len {
        return Err(AsymptoticsError::LengthMismatch(format!(
            "f_x {}, f_y {}, u_x {}, u_y {}",
            len,
            f_y.len(),
            u_x.len(),
            u_y.len()
        )));
    }
    if n == 0 {
        return Err(AsymptoticsError::TooFewSamples { min: 1, got: 0 });
    }
    let mut acc = 0.0;
    for step in 0..n {
        let t = (m + step as i64) as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..len {
            s += f_x[j] * Complex64::from_polar(1.0, t * u_x[j]) - f_y[j] * Complex64::from_polar(1.0, t * u_y[j]);
        }
        acc += s.norm_sqr();
    }
    Ok(acc / n as f64)
}

/// `|P_n(1) - P_n(cos θ)| / θ^α`
pub fn wall_quotient(n: u64, theta: f64, alpha: f64) -> f64 {
    (1.0 - legendre(n, theta.cos())).abs() / theta.powf(alpha)
}

/// Geometric sweep `θ_k = 0.5 · 2^{-(k+1)/2}` towards the chamber wall.
pub fn wall_approach_angles(count: usize) -> Vec<f64> {
    (0..count).map(|k| 0.5 * 2f64.powf(-((k + 1) as f64) / 2.0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularReport {
    pub alpha: f64,
    pub n_list: Vec<u64>,
    /// per n: max of the wall quotient over admissible θ
    pub sup_quotients: Vec<f64>,
    pub argmax_theta: Vec<f64>,
    pub growth_ratio: f64,
}

/// Max over `θ ∈ thetas, θ ≥ n^{-2}` of the wall quotient, for each `n`.
pub fn singular_blowup_check(thetas: &[f64], n_list: &[u64], alpha: f64) -> Result<SingularReport, AsymptoticsError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(AsymptoticsError::InvalidAlpha(alpha));
    }
    if let Some(&bad) = thetas.iter().find(|&&t| !(t > 0.0 && t < 0.5)) {
        return Err(AsymptoticsError::AngleOutOfRange(bad, "(0, 0.5)"));
    }
    let mut sup_quotients = Vec::new();
    let mut argmax_theta = Vec::new();
    for &n in n_list {
        let floor = if n == 0 { 0.0 } else { (n as f64).powi(-2) };
        let best = thetas
            .iter()
            .filter(|&&t| t >= floor)
            .map(|&t| (wall_quotient(n, t, alpha), t))
            .fold(None, |acc: Option<(f64, f64)>, cur| match acc {
                Some(a) if a.0 >= cur.0 => Some(a),
                _ => Some(cur),
            })
            .ok_or(AsymptoticsError::NoAdmissibleAngle(n))?;
        sup_quotients.push(best.0);
        argmax_theta.push(best.1);
    }
    let growth_ratio = match (sup_quotients.first(), sup_quotients.last()) {
        (Some(&f), Some(&l)) if f > 0.0 => l / f,
        _ => f64::NAN,
    };
    Ok(SingularReport { alpha, n_list: n_list.to_vec(), sup_quotients, argmax_theta, growth_ratio })
}
