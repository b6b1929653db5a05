//! Regression values recorded once from an independent oracle and asserted
//! with 20% slack.
//!
//! Oracle: a separate NumPy script evaluating the SL(2) K-integral directly in
//! the angle variable (2^20 trapezoid nodes, closed-form Iwasawa projection)
//! and SciPy's `eval_legendre`, against independently coded leading terms.
//! Each value is `max_t E(t) · t^{3/2}` over `t ∈ {50, 100, ..., 1600}`, where
//! `E(t)` is the largest remainder over one oscillation period starting at t.

/// SL(2,R), ξ = 1, Y = 1, window `[t, t + π)` sampled at 33 points.
/// Per-scale values: 0.1423, 0.1488, 0.1533, 0.1529, 0.1535, 0.1534.
pub const SL2_REMAINDER_WEIGHTED_MAX: f64 = 0.153_474_332_580_553_85;

/// SU(2)/SO(2), θ = 1, degrees `n..n+3`.
/// Per-scale values: 0.2212, 0.1994, 0.2264, 0.2255, 0.2272, 0.2240.
pub const LEGENDRE_REMAINDER_WEIGHTED_MAX: f64 = 0.227_182_282_556_625_8;

pub const FIXTURE_SLACK: f64 = 1.2;
