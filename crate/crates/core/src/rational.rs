//! Exact rationals and small dense linear algebra over them.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number used throughout the root-system layer.
pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let bad = || RationalParseError::Malformed(s.to_string());
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.parse::<i128>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p = p.trim().parse::<i128>().map_err(|_| bad())?;
            let q = q.trim().parse::<i128>().map_err(|_| bad())?;
            if q == 0 {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Rational]) -> i128 {
    v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

/// Solves `a x = b` by Gaussian elimination with exact pivoting.
/// Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(*bi);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let delta = f * m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Determinant by fraction-free elimination on a rational copy.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let delta = f * m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// True when every leading principal minor is positive.
pub fn is_positive_definite(a: &[Vec<Rational>]) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = a[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}
