//! Numerical layer for SL(n, R): Iwasawa and KAK factorisations, regularity,
//! and integration on K.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

/// Largest condition number accepted by the factorisations.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieGroupError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension must be at least 1")]
    Empty,
    #[error("matrix has non-positive determinant {0}; even dimension cannot be rescaled into SL(n)")]
    BadDeterminant(f64),
    #[error("numerically singular matrix (condition number {0:e})")]
    Singular(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("matrix text: {0}")]
    Parse(String),
}

/// An element of SL(n, R), rescaled to unit determinant on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialLinearElement {
    entries: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaFactors {
    pub k: DMatrix<f64>,
    /// Diagonal logarithms of the A factor; sums to zero.
    pub h: DVector<f64>,
    pub nu: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KakFactors {
    pub k1: DMatrix<f64>,
    /// Log singular values, non-increasing.
    pub a_log: DVector<f64>,
    pub k2: DMatrix<f64>,
}

impl SpecialLinearElement {
    pub fn new(m: DMatrix<f64>) -> Result<Self, LieGroupError> {
        if m.nrows() != m.ncols() {
            return Err(LieGroupError::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let n = m.nrows();
        if n == 0 {
            return Err(LieGroupError::Empty);
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(LieGroupError::NonFinite);
        }
        let det = m.determinant();
        if det == 0.0 || (det < 0.0 && n % 2 == 0) {
            return Err(LieGroupError::BadDeterminant(det));
        }
        let scale = det.signum() * det.abs().powf(1.0 / n as f64);
        Ok(SpecialLinearElement { entries: m / scale })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LieGroupError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LieGroupError::NotSquare { rows: n, cols: rows.first().map_or(0, Vec::len) });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Plain text: first line `n`, then `n` rows of whitespace-separated reals.
    pub fn parse(text: &str) -> Result<Self, LieGroupError> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| LieGroupError::Parse("missing dimension".into()))?
            .parse()
            .map_err(|_| LieGroupError::Parse("dimension is not an integer".into()))?;
        let values: Vec<f64> = tokens
            .map(|t| t.parse::<f64>().map_err(|_| LieGroupError::Parse(format!("bad number `{t}`"))))
            .collect::<Result<_, _>>()?;
        if values.len() != n * n {
            return Err(LieGroupError::Parse(format!("expected {} entries, found {}", n * n, values.len())));
        }
        Self::new(DMatrix::from_row_slice(n, n, &values))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn condition_number(&self) -> f64 {
        let sv = self.entries.singular_values();
        let max = sv.max();
        let min = sv.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    fn check_conditioning(&self) -> Result<(), LieGroupError> {
        let c = self.condition_number();
        if !(c <= MAX_CONDITION) {
            return Err(LieGroupError::Singular(c));
        }
        Ok(())
    }
}

/// `exp(diag(h))`
pub fn exp_diag(h: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(h.len(), h.iter().map(|x| x.exp())))
}

/// Rotation by `theta` in the plane of the first two coordinates.
pub fn rotation2(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Gram-Schmidt with one re-orthogonalisation pass. Returns Q and R with
/// positive diagonal.
fn gram_schmidt(g: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = g.nrows();
    let mut q = DMatrix::<f64>::zeros(n, n);
    let mut r = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut v = g.column(j).into_owned();
        for _ in 0..2 {
            for i in 0..j {
                let proj = q.column(i).dot(&v);
                r[(i, j)] += proj;
                v.axpy(-proj, &q.column(i), 1.0);
            }
        }
        let norm = v.norm();
        r[(j, j)] = norm;
        q.set_column(j, &(v / norm));
    }
    (q, r)
}

/// `g = k · exp(diag h) · ν`
pub fn iwasawa(g: &SpecialLinearElement) -> Result<IwasawaFactors, LieGroupError> {
    g.check_conditioning()?;
    let n = g.dim();
    let (q, r) = gram_schmidt(&g.entries);
    let h = DVector::from_iterator(n, (0..n).map(|i| r[(i, i)].ln()));
    let nu = DMatrix::from_fn(n, n, |i, j| if j >= i { r[(i, j)] / r[(i, i)] } else { 0.0 });
    Ok(IwasawaFactors { k: q, h, nu })
}

/// Logs of the diagonal of R in `m = QR`, without conditioning checks.
pub fn iwasawa_log_diagonal(m: &DMatrix<f64>) -> DVector<f64> {
    let (_, r) = gram_schmidt(m);
    DVector::from_iterator(m.nrows(), (0..m.nrows()).map(|i| r[(i, i)].ln()))
}

/// The `a`-component `H(g)` of the Iwasawa decomposition.
pub fn iwasawa_projection(g: &SpecialLinearElement) -> Result<DVector<f64>, LieGroupError> {
    iwasawa(g).map(|f| f.h)
}

/// Closed form of `H(a_Y k_θ)` in SL(2): first diagonal entry.
pub fn sl2_iwasawa_h1(y: f64, theta: f64) -> f64 {
    0.5 * ((2.0 * y).cosh() + (2.0 * y).sinh() * (2.0 * theta).cos()).ln()
}

/// `g = k1 · exp(diag a_log) · k2⁻¹` via the singular value decomposition.
pub fn kak(g: &SpecialLinearElement) -> Result<KakFactors, LieGroupError> {
    g.check_conditioning()?;
    let n = g.dim();
    let svd = g.entries.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut k1 = DMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    let mut k2 = DMatrix::from_fn(n, n, |i, j| v_t[(order[j], i)]);
    let a_log = DVector::from_iterator(n, order.iter().map(|&j| svd.singular_values[j].ln()));
    // det g > 0 forces det k1 = det k2; flip a paired column if both are -1
    if k1.determinant() < 0.0 {
        let last = n - 1;
        k1.column_mut(last).neg_mut();
        k2.column_mut(last).neg_mut();
    }
    Ok(KakFactors { k1, a_log, k2 })
}

/// All consecutive gaps of the Cartan projection exceed `tol`.
pub fn is_regular(g: &SpecialLinearElement, tol: f64) -> Result<bool, LieGroupError> {
    let a = kak(g)?.a_log;
    Ok(a.iter().zip(a.iter().skip(1)).all(|(x, y)| x - y > tol))
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.k * exp_diag(self.h.as_slice()) * &self.nu
    }
}

impl KakFactors {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.k1 * exp_diag(self.a_log.as_slice()) * self.k2.transpose()
    }
}

/// Uniform trapezoid nodes on `[0, 2π)` with weights summing to one.
pub fn so2_nodes(count: usize) -> Vec<(f64, f64)> {
    let w = 1.0 / count as f64;
    (0..count).map(|k| (2.0 * PI * k as f64 / count as f64, w)).collect()
}

/// Haar-distributed elements of SO(n): QR of a Gaussian matrix with the
/// sign of R's diagonal fixed, then det corrected to +1.
pub struct HaarSampler {
    n: usize,
    rng: ChaCha8Rng,
}

impl HaarSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        assert!(n >= 2, "SO(n) sampling needs n >= 2");
        HaarSampler { n, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self) -> DMatrix<f64> {
        let n = self.n;
        let z = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut self.rng));
        let (mut q, _) = gram_schmidt(&z);
        if q.determinant() < 0.0 {
            q.column_mut(0).neg_mut();
        }
        q
    }
}

impl Iterator for HaarSampler {
    type Item = DMatrix<f64>;
    fn next(&mut self) -> Option<Self::Item> {
        Some(self.sample())
    }
}

pub fn haar_so_n_sample(n: usize, seed: u64, count: usize) -> Vec<DMatrix<f64>> {
    HaarSampler::new(n, seed).take(count).collect()
}

/// Gaussian matrix rescaled into SL(n); rows are flipped to fix the sign.
pub fn random_sl(n: usize, rng: &mut impl rand::Rng) -> SpecialLinearElement {
    loop {
        let mut m = DMatrix::from_fn(n, n, |_, _| -> f64 { StandardNormal.sample(rng) });
        if m.determinant() < 0.0 {
            m.row_mut(0).neg_mut();
        }
        if let Ok(g) = SpecialLinearElement::new(m) {
            if g.condition_number() < 1e6 {
                return g;
            }
        }
    }
}

pub fn frobenius_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth_err(k: &DMatrix<f64>) -> f64 {
        (k.transpose() * k - DMatrix::identity(k.nrows(), k.nrows())).norm()
    }

    #[test]
    fn rotation_has_trivial_iwasawa() {
        let g = SpecialLinearElement::new(rotation2(0.7)).unwrap();
        let f = iwasawa(&g).unwrap();
        assert!(f.h.norm() < 1e-14);
        assert!((f.nu.clone() - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_iwasawa() {
        let h = [0.3, -0.1, -0.2];
        let g = SpecialLinearElement::new(exp_diag(&h)).unwrap();
        let f = iwasawa(&g).unwrap();
        for i in 0..3 {
            assert!((f.h[i] - h[i]).abs() < 1e-12);
        }
        assert!((f.k.clone() - DMatrix::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn lower_unipotent_by_hand() {
        let x = 1.7f64;
        let g = SpecialLinearElement::from_rows(&[vec![1.0, 0.0], vec![x, 1.0]]).unwrap();
        let h = iwasawa_projection(&g).unwrap();
        let expect = 0.5 * (1.0 + x * x).ln();
        assert!((h[0] - expect).abs() < 1e-14);
        assert!((h[1] + expect).abs() < 1e-14);
    }

    #[test]
    fn sl2_closed_form_matches_qr() {
        for &(y, th) in &[(0.0, 0.3), (1.0, 0.0), (1.3, 0.9), (2.5, 2.0)] {
            let g = SpecialLinearElement::new(exp_diag(&[y, -y]) * rotation2(th)).unwrap();
            let h = iwasawa_projection(&g).unwrap();
            assert!((h[0] - sl2_iwasawa_h1(y, th)).abs() < 1e-12);
        }
        assert!((sl2_iwasawa_h1(1.25, 0.0) - 1.25).abs() < 1e-14);
    }

    #[test]
    fn kak_examples() {
        let e = std::f64::consts::E;
        let g = SpecialLinearElement::new(DMatrix::from_diagonal(&DVector::from_vec(vec![e, 1.0, 1.0 / e]))).unwrap();
        let f = kak(&g).unwrap();
        assert!((f.a_log[0] - 1.0).abs() < 1e-13 && f.a_log[1].abs() < 1e-13 && (f.a_log[2] + 1.0).abs() < 1e-13);
        assert!(is_regular(&g, 1e-6).unwrap());
        let id = SpecialLinearElement::new(DMatrix::identity(3, 3)).unwrap();
        assert!(kak(&id).unwrap().a_log.norm() < 1e-14);
        assert!(!is_regular(&id, 1e-6).unwrap());
        let wall = SpecialLinearElement::new(DMatrix::from_diagonal(&DVector::from_vec(vec![e, e, e.powi(-2)]))).unwrap();
        assert!(!is_regular(&wall, 1e-6).unwrap());
        let f = kak(&wall).unwrap();
        assert!(f.k1.determinant() > 0.0 && f.k2.determinant() > 0.0);
    }

    #[test]
    fn rescales_determinant() {
        let g = SpecialLinearElement::from_rows(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!((g.matrix().determinant() - 1.0).abs() < 1e-12);
        assert!(SpecialLinearElement::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
        let odd = SpecialLinearElement::new(-DMatrix::<f64>::identity(3, 3)).unwrap();
        assert!((odd.matrix().determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_input_rejected() {
        let g = SpecialLinearElement::new(exp_diag(&[15.0, -15.0])).unwrap();
        assert!(matches!(iwasawa(&g), Err(LieGroupError::Singular(_))));
    }

    #[test]
    fn parse_matrix_text() {
        let g = SpecialLinearElement::parse("2\n1 0\n0.5 1\n").unwrap();
        assert_eq!(g.dim(), 2);
        assert!(SpecialLinearElement::parse("2\n1 0 0\n").is_err());
    }

    #[test]
    fn so2_nodes_quadrature() {
        let four = so2_nodes(4);
        let expect = [0.0, PI / 2.0, PI, 1.5 * PI];
        for ((a, w), e) in four.iter().zip(expect) {
            assert!((a - e).abs() < 1e-15);
            assert_eq!(*w, 0.25);
        }
        let nodes = so2_nodes(64);
        assert!((nodes.iter().map(|n| n.1).sum::<f64>() - 1.0).abs() < 1e-15);
        let c: f64 = nodes.iter().map(|(a, w)| w * a.cos()).sum();
        let (re, im) = nodes.iter().fold((0.0, 0.0), |(r, i), (a, w)| (r + w * (2.0 * a).cos(), i + w * (2.0 * a).sin()));
        assert!(c.abs() < 1e-15 && re.abs() < 1e-15 && im.abs() < 1e-15);
    }

    #[test]
    fn haar_samples() {
        let a = haar_so_n_sample(3, 7, 50);
        let b = haar_so_n_sample(3, 7, 50);
        assert_eq!(a, b);
        for k in &a {
            assert!(orth_err(k) < 1e-12);
            assert!((k.determinant() - 1.0).abs() < 1e-12);
        }
        let count = 100_000;
        let mean: f64 = HaarSampler::new(3, 42).take(count).map(|k| k[(0, 0)]).sum::<f64>() / count as f64;
        assert!(mean.abs() <= 0.02, "{mean}");
    }
}
