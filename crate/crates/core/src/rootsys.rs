//! Restricted root systems with multiplicities, Weyl groups, `n(λ)` and κ.
//!
//! All vectors live in the simple-root basis. Gram matrices are integral,
//! normalised so that the shortest root of the family has squared length 2.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{common_denominator, rat, solve, Rational};

/// Default cap on the rank for which the Weyl group is enumerated.
pub const DEFAULT_WEYL_RANK_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthClass {
    All,
    Medium,
    Short,
    Long,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown root family `{0}`")]
    UnknownFamily(String),
    #[error("unknown length class `{0}`")]
    UnknownClass(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("length class `{class}` does not exist in family {family}")]
    ClassNotInFamily { family: Family, class: LengthClass },
    #[error("multiplicity assignment is missing length class `{0}`")]
    MissingClass(LengthClass),
    #[error("invalid multiplicity {value} for class `{class}`")]
    InvalidMultiplicity { class: LengthClass, value: i64 },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Weyl group enumeration refused: rank {rank} exceeds bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
}

impl Family {
    pub fn classes(self) -> &'static [LengthClass] {
        use LengthClass::*;
        match self {
            Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 => &[All],
            Family::B | Family::C | Family::F4 | Family::G2 => &[Short, Long],
            Family::BC => &[Medium, Short, Long],
        }
    }

    /// Rank forced by an exceptional family, if any.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::D => 2,
            f => f.fixed_rank().unwrap_or(1),
        }
    }

    pub fn validate_rank(self, rank: usize) -> Result<(), RootSystemError> {
        let ok = match self.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= self.min_rank(),
        };
        if ok {
            Ok(())
        } else {
            Err(RootSystemError::InvalidRank { family: self, rank })
        }
    }

    fn classify(self, norm2: i64) -> LengthClass {
        use LengthClass::*;
        match self {
            Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 => All,
            Family::BC => match norm2 {
                2 => Short,
                4 => Medium,
                _ => Long,
            },
            _ => {
                if norm2 == 2 {
                    Short
                } else {
                    Long
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "BC" => Family::BC,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            "G2" => Family::G2,
            other => return Err(RootSystemError::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthClass::All => "all",
            LengthClass::Medium => "medium",
            LengthClass::Short => "short",
            LengthClass::Long => "long",
        })
    }
}

impl FromStr for LengthClass {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "all" => LengthClass::All,
            "medium" => LengthClass::Medium,
            "short" => LengthClass::Short,
            "long" => LengthClass::Long,
            other => return Err(RootSystemError::UnknownClass(other.to_string())),
        })
    }
}

/// Multiplicity per root-length class.
pub type MultAssignment = BTreeMap<LengthClass, u32>;

/// Parses `short:2,long:1` (commas or whitespace as separators).
pub fn parse_mult_assignment(text: &str) -> Result<MultAssignment, RootSystemError> {
    let mut out = MultAssignment::new();
    for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once(':')
            .ok_or_else(|| RootSystemError::UnknownClass(item.to_string()))?;
        let class: LengthClass = k.parse()?;
        let value: i64 = v
            .trim()
            .parse()
            .map_err(|_| RootSystemError::UnknownClass(item.to_string()))?;
        if value <= 0 || value > u32::MAX as i64 {
            return Err(RootSystemError::InvalidMultiplicity { class, value });
        }
        out.insert(class, value as u32);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub coeffs: Vec<i64>,
    pub multiplicity: u32,
    pub class: LengthClass,
}

/// A vector of `a*` written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector {
    pub coords: Vec<Rational>,
}

impl Covector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Covector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Covector { coords: vec![Rational::zero(); rank] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Covector { coords: v.iter().map(|&x| rat(x as i128)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: Rational) -> Self {
        Covector { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Covector) -> Self {
        Covector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Covector) -> Self {
        Covector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        Covector { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Weyl group element acting on simple-root coordinates. The matrix is
/// integral because all Cartan integers are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    /// `w = s_{word[0]} s_{word[1]} ...`
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        WeylElement { matrix, word: Vec::new() }
    }

    pub fn apply(&self, v: &Covector) -> Covector {
        Covector {
            coords: self
                .matrix
                .iter()
                .map(|row| row.iter().zip(&v.coords).map(|(&a, b)| rat(a as i128) * b).sum())
                .collect(),
        }
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { matrix, word }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
    pub reduced: bool,
    /// `gram · coeffs` for each positive root, so `<α, λ> = pairing · λ`.
    pairings: Vec<Vec<i64>>,
}

fn chain_gram(rank: usize, diag: i64, off: i64) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        g[i][i] = diag;
        if i + 1 < rank {
            g[i][i + 1] = off;
            g[i + 1][i] = off;
        }
    }
    g
}

fn simply_laced_gram(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; rank]; rank];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// Integral Gram matrix of the simple roots.
pub fn family_gram(family: Family, rank: usize) -> Result<Vec<Vec<i64>>, RootSystemError> {
    family.validate_rank(rank)?;
    let l = rank;
    Ok(match family {
        Family::A => chain_gram(l, 2, -1),
        Family::B | Family::BC => {
            // e_i - e_{i+1} and e_l, doubled so that e_l has squared length 2
            let mut g = chain_gram(l, 4, -2);
            g[l - 1][l - 1] = 2;
            g
        }
        Family::C => {
            let mut g = chain_gram(l, 2, -1);
            g[l - 1][l - 1] = 4;
            if l >= 2 {
                g[l - 2][l - 1] = -2;
                g[l - 1][l - 2] = -2;
            }
            g
        }
        Family::D => {
            let mut g = chain_gram(l, 2, -1);
            // last root is e_{l-1} + e_l
            g[l - 2][l - 1] = 0;
            g[l - 1][l - 2] = 0;
            if l >= 3 {
                g[l - 3][l - 1] = -1;
                g[l - 1][l - 3] = -1;
            }
            g
        }
        Family::G2 => vec![vec![2, -3], vec![-3, 6]],
        Family::F4 => vec![
            vec![4, -2, 0, 0],
            vec![-2, 4, -2, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ],
        Family::E6 | Family::E7 | Family::E8 => {
            // Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 attached to 4
            let edges: Vec<(usize, usize)> = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
                .into_iter()
                .filter(|&(a, b)| a < l && b < l)
                .collect();
            simply_laced_gram(l, &edges)
        }
    })
}

fn mat_vec(g: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    g.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All positive roots by closure under simple reflections, sorted.
fn enumerate_positive_roots(family: Family, gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = gram.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0i64; l];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        let gb = mat_vec(gram, &beta);
        for i in 0..l {
            let cartan = 2 * gb[i] / gram[i][i];
            if cartan == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[i] -= cartan;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    if family == Family::BC {
        let doubles: Vec<Vec<i64>> = roots
            .iter()
            .filter(|r| dot(r, &mat_vec(gram, r)) == 2)
            .map(|r| r.iter().map(|c| 2 * c).collect())
            .collect();
        roots.extend(doubles);
    }
    roots.sort();
    roots
}

/// Builds the positive system of `family` at `rank` with the given multiplicities.
pub fn build_root_system(
    family: Family,
    rank: usize,
    mult: &MultAssignment,
) -> Result<RootSystem, RootSystemError> {
    let gram = family_gram(family, rank)?;
    let classes = family.classes();
    for (&class, &value) in mult {
        if !classes.contains(&class) {
            return Err(RootSystemError::ClassNotInFamily { family, class });
        }
        if value == 0 {
            return Err(RootSystemError::InvalidMultiplicity { class, value: 0 });
        }
    }
    let mut positive_roots = Vec::new();
    for coeffs in enumerate_positive_roots(family, &gram) {
        let norm2 = dot(&coeffs, &mat_vec(&gram, &coeffs));
        let class = family.classify(norm2);
        let multiplicity = *mult.get(&class).ok_or(RootSystemError::MissingClass(class))?;
        positive_roots.push(PositiveRoot { coeffs, multiplicity, class });
    }
    let pairings = positive_roots.iter().map(|r| mat_vec(&gram, &r.coeffs)).collect();
    Ok(RootSystem { family, rank, gram, positive_roots, reduced: family != Family::BC, pairings })
}

impl RootSystem {
    pub fn gram_rational(&self) -> Vec<Vec<Rational>> {
        self.gram.iter().map(|row| row.iter().map(|&x| rat(x as i128)).collect()).collect()
    }

    fn check_dim(&self, v: &Covector) -> Result<(), RootSystemError> {
        if v.len() != self.rank {
            return Err(RootSystemError::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// `⟨λ, μ⟩ = λᵀ G μ`
    pub fn inner(&self, lambda: &Covector, mu: &Covector) -> Result<Rational, RootSystemError> {
        self.check_dim(lambda)?;
        self.check_dim(mu)?;
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if lambda.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if self.gram[i][j] != 0 {
                    acc += lambda.coords[i] * rat(self.gram[i][j] as i128) * mu.coords[j];
                }
            }
        }
        Ok(acc)
    }

    /// `(⟨λ, α_i⟩)_i` over the simple roots.
    pub fn simple_pairings(&self, lambda: &Covector) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| rat(self.gram[i][j] as i128) * lambda.coords[j]).sum())
            .collect()
    }

    /// Multiplicity-weighted count of positive roots not orthogonal to `λ`.
    pub fn n_of(&self, lambda: &Covector) -> Result<u64, RootSystemError> {
        self.check_dim(lambda)?;
        let den = common_denominator(&lambda.coords);
        let ints: Vec<i128> = lambda.coords.iter().map(|c| c.numer() * (den / c.denom())).collect();
        Ok(self
            .positive_roots
            .iter()
            .zip(&self.pairings)
            .filter(|(_, p)| p.iter().zip(&ints).map(|(&a, b)| a as i128 * b).sum::<i128>() != 0)
            .map(|(r, _)| u64::from(r.multiplicity))
            .sum())
    }

    /// Weighted count of positive roots involving simple root `i`.
    pub fn simple_direction_count(&self, i: usize) -> u64 {
        self.positive_roots
            .iter()
            .filter(|r| r.coeffs[i] >= 1)
            .map(|r| u64::from(r.multiplicity))
            .sum()
    }

    /// `κ = ½ min_i Σ_{n_i(α) ≥ 1} m(α)`
    pub fn kappa(&self) -> Rational {
        let min = (0..self.rank).map(|i| self.simple_direction_count(i)).min().unwrap_or(0);
        Rational::new(min as i128, 2)
    }

    /// `ρ = ½ Σ m(α) α`
    pub fn rho(&self) -> Covector {
        let mut sum = vec![0i128; self.rank];
        for r in &self.positive_roots {
            for (s, &c) in sum.iter_mut().zip(&r.coeffs) {
                *s += c as i128 * r.multiplicity as i128;
            }
        }
        Covector { coords: sum.into_iter().map(|s| Rational::new(s, 2)).collect() }
    }

    /// Reflection of `λ` in the hyperplane orthogonal to `root`.
    pub fn reflect_in(&self, root: &[i64], lambda: &Covector) -> Result<Covector, RootSystemError> {
        self.check_dim(lambda)?;
        let alpha = Covector::from_ints(root);
        let num = self.inner(lambda, &alpha)?;
        let den = self.inner(&alpha, &alpha)?;
        Ok(lambda.sub(&alpha.scale(rat(2) * num / den)))
    }

    pub fn reflect(&self, alpha: &PositiveRoot, lambda: &Covector) -> Result<Covector, RootSystemError> {
        self.reflect_in(&alpha.coeffs, lambda)
    }

    fn simple_reflection(&self, i: usize) -> WeylElement {
        let l = self.rank;
        let mut m = WeylElement::identity(l).matrix;
        for (k, entry) in m[i].iter_mut().enumerate() {
            *entry -= 2 * self.gram[i][k] / self.gram[i][i];
        }
        WeylElement { matrix: m, word: vec![i] }
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        (0..self.rank).map(|i| self.simple_reflection(i)).collect()
    }

    pub fn weyl_group(&self) -> Result<Vec<WeylElement>, RootSystemError> {
        self.weyl_group_bounded(DEFAULT_WEYL_RANK_BOUND)
    }

    /// Breadth-first enumeration; each word is of minimal length.
    pub fn weyl_group_bounded(&self, bound: usize) -> Result<Vec<WeylElement>, RootSystemError> {
        if self.rank > bound {
            return Err(RootSystemError::RankTooLarge { rank: self.rank, bound });
        }
        let gens = self.simple_reflections();
        let id = WeylElement::identity(self.rank);
        let mut index: HashSet<Vec<Vec<i64>>> = HashSet::new();
        index.insert(id.matrix.clone());
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            let w = out[head].clone();
            head += 1;
            for s in &gens {
                let next = s.compose(&w);
                if index.insert(next.matrix.clone()) {
                    out.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Fundamental weights: `⟨μ_i, α_j⟩ / ⟨α_j, α_j⟩ = δ_ij`, or `2 δ_ij`
    /// when `2α_j` is itself a root.
    pub fn fundamental_weights(&self) -> Vec<Covector> {
        let g = self.gram_rational();
        (0..self.rank)
            .map(|i| {
                let twice: Vec<i64> = (0..self.rank).map(|k| if k == i { 2 } else { 0 }).collect();
                let ratio = if self.positive_roots.iter().any(|r| r.coeffs == twice) { 2 } else { 1 };
                let mut rhs = vec![Rational::zero(); self.rank];
                rhs[i] = rat(ratio * self.gram[i][i] as i128);
                Covector::new(solve(&g, &rhs).expect("Gram matrix is positive definite"))
            })
            .collect()
    }

    /// Dominant element of the orbit of `λ` and a Weyl element carrying `λ` to it.
    pub fn dominant_representative(
        &self,
        lambda: &Covector,
    ) -> Result<(Covector, WeylElement), RootSystemError> {
        self.check_dim(lambda)?;
        let mut current = lambda.clone();
        let mut w = WeylElement::identity(self.rank);
        let gens = self.simple_reflections();
        loop {
            let pairs = self.simple_pairings(&current);
            match pairs.iter().position(|p| p.is_negative()) {
                None => return Ok((current, w)),
                Some(i) => {
                    current = gens[i].apply(&current);
                    w = gens[i].compose(&w);
                }
            }
        }
    }

    /// Membership of `η` in the convex hull of the Weyl orbit of ρ.
    pub fn in_bounded_region(&self, eta: &Covector) -> Result<bool, RootSystemError> {
        let (dominant, _) = self.dominant_representative(eta)?;
        Ok(self.rho().sub(&dominant).coords.iter().all(|c| !c.is_negative()))
    }

    /// Every root, positive and negative, as coefficient vectors.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.positive_roots.iter().map(|r| r.coeffs.clone()).collect();
        out.extend(self.positive_roots.iter().map(|r| r.coeffs.iter().map(|c| -c).collect()));
        out
    }

    /// Multiplicity of an arbitrary root (positive or negative).
    pub fn multiplicity_of(&self, coeffs: &[i64]) -> Option<u32> {
        let pos: Vec<i64> = if coeffs.iter().any(|&c| c < 0) {
            coeffs.iter().map(|c| -c).collect()
        } else {
            coeffs.to_vec()
        };
        self.positive_roots.iter().find(|r| r.coeffs == pos).map(|r| r.multiplicity)
    }
}
