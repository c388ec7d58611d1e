//! Integer lattices, lattice maps and exact linear algebra.

mod cparam;
pub(crate) mod normal_form;
pub(crate) mod rational;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use cparam::{pair, CParam};
pub use rational::{Rational, Subspace};

use crate::error::{Error, Result};
use normal_form::{hermite, smith_divisors, transpose};

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// gcd of the entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides by the content. The zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }

    /// Entries as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(a: [i64; N]) -> Self {
        Self::from_i64(&a)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(a: Vec<i64>) -> Self {
        Self::from_i64(&a)
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for IntVector {
    type Output = IntVector;
    fn add(self, rhs: IntVector) -> IntVector {
        &self + &rhs
    }
}

impl Sub for IntVector {
    type Output = IntVector;
    fn sub(self, rhs: IntVector) -> IntVector {
        &self - &rhs
    }
}

impl Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        -&self
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Formats a list of vectors as `[[1, 0], [0, 1]]`.
pub fn format_vectors(vs: &[IntVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// A homomorphism `Z^domain -> Z^codomain`, stored as a `codomain x domain`
/// integer matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    rows: Vec<Vec<BigInt>>,
    domain: usize,
}

impl LatticeMap {
    pub fn new(rows: Vec<Vec<BigInt>>, domain: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != domain) {
            return Err(Error::RankMismatch {
                expected: domain,
                found: bad.len(),
            });
        }
        Ok(Self { rows, domain })
    }

    pub fn from_vectors(rows: &[IntVector], domain: usize) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.entries().to_vec()).collect(), domain)
    }

    /// Builds a map from `i64` rows. Panics on ragged input; the domain rank is
    /// taken from the first row, so use [`LatticeMap::zero`] for empty matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let domain = rows.first().map_or(0, |r| r.len());
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            domain,
        )
        .expect("rectangular matrix")
    }

    pub fn zero(codomain: usize, domain: usize) -> Self {
        Self {
            rows: vec![vec![BigInt::zero(); domain]; codomain],
            domain,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: normal_form::identity(n),
            domain: n,
        }
    }

    /// The map whose columns are the given images of the standard basis.
    pub fn from_columns(columns: &[IntVector], codomain: usize) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != codomain) {
            return Err(Error::RankMismatch {
                expected: codomain,
                found: bad.len(),
            });
        }
        let rows = (0..codomain)
            .map(|i| columns.iter().map(|c| c.entries()[i].clone()).collect())
            .collect();
        Ok(Self {
            rows,
            domain: columns.len(),
        })
    }

    pub fn domain_rank(&self) -> usize {
        self.domain
    }

    pub fn codomain_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.rows[i].clone())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        debug_assert_eq!(v.len(), self.domain);
        IntVector(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn try_apply(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.domain {
            return Err(Error::RankMismatch {
                expected: self.domain,
                found: v.len(),
            });
        }
        Ok(self.apply(v))
    }

    pub fn apply_rational(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| b * a).sum())
            .collect()
    }

    /// The dual map `Z^codomain -> Z^domain`.
    pub fn transpose(&self) -> LatticeMap {
        LatticeMap {
            rows: transpose(&self.rows, self.domain),
            domain: self.rows.len(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap> {
        if first.codomain_rank() != self.domain {
            return Err(Error::RankMismatch {
                expected: self.domain,
                found: first.codomain_rank(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..first.domain)
                    .map(|j| r.iter().zip(&first.rows).map(|(a, fr)| a * &fr[j]).sum())
                    .collect()
            })
            .collect();
        Ok(LatticeMap {
            rows,
            domain: first.domain,
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.domain
    }

    pub fn determinant(&self) -> Option<BigInt> {
        self.is_square()
            .then(|| normal_form::determinant(&self.rows))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    /// Inverse of a unimodular map.
    pub fn inverse(&self) -> Option<LatticeMap> {
        if !self.is_unimodular() {
            return None;
        }
        // U * A = H with H = I for unimodular A
        let e = hermite(&self.rows, self.domain);
        Some(LatticeMap {
            rows: e.transform,
            domain: self.domain,
        })
    }

    pub fn rank(&self) -> usize {
        hermite(&self.rows, self.domain).rank()
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<IntVector> = self.rows.iter().map(|r| IntVector(r.clone())).collect();
        write!(f, "{}", format_vectors(&rows))
    }
}

fn to_rows(vectors: &[IntVector]) -> Vec<Vec<BigInt>> {
    vectors.iter().map(|v| v.entries().to_vec()).collect()
}

/// Hermite normal form basis of the lattice spanned by `vectors` in `Z^rank`.
pub fn hnf(vectors: &[IntVector], rank: usize) -> Vec<IntVector> {
    let e = hermite(&to_rows(vectors), rank);
    e.echelon
        .into_iter()
        .take(e.pivots.len())
        .map(IntVector)
        .collect()
}

/// Whether `v` lies in the lattice spanned by `basis`.
pub fn lattice_contains(basis: &[IntVector], v: &IntVector) -> bool {
    let rank = v.len();
    let mut with = basis.to_vec();
    with.push(v.clone());
    hnf(&with, rank) == hnf(basis, rank)
}

/// Rows `u` of the unimodular transform with `u * columns = 0`, where the
/// columns of the `rows.len() x ncols` matrix are given row-wise. They form a
/// basis of the saturated lattice of integer relations among the rows.
fn relation_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<IntVector> {
    let e = hermite(rows, ncols);
    let r = e.rank();
    e.transform.into_iter().skip(r).map(IntVector).collect()
}

/// HNF basis of `{v : map(v) = 0}`. The result is saturated.
pub fn kernel_saturated(map: &LatticeMap) -> Vec<IntVector> {
    let at = transpose(map.rows(), map.domain_rank());
    let rel = relation_rows(&at, map.codomain_rank());
    hnf(&rel, map.domain_rank())
}

/// HNF basis of the saturation `(Q-span) ∩ Z^rank` of `vectors`.
pub fn saturate(vectors: &[IntVector], rank: usize) -> Vec<IntVector> {
    let m = LatticeMap::from_vectors(vectors, rank).expect("vectors of the ambient rank");
    let annihilator = kernel_saturated(&m);
    let back = LatticeMap::from_vectors(&annihilator, rank).expect("ambient rank");
    kernel_saturated(&back)
}

pub fn is_saturated(vectors: &[IntVector], rank: usize) -> bool {
    hnf(vectors, rank) == saturate(vectors, rank)
}

/// Free quotient `Z^ambient / L` of a saturated sublattice `L`, returned as the
/// quotient rank and a surjective projection whose kernel is exactly `L`.
pub fn quotient_lattice(ambient: usize, basis: &[IntVector]) -> Result<(usize, LatticeMap)> {
    if let Some(bad) = basis.iter().find(|b| b.len() != ambient) {
        return Err(Error::RankMismatch {
            expected: ambient,
            found: bad.len(),
        });
    }
    if !is_saturated(basis, ambient) {
        return Err(Error::NotSaturated);
    }
    let bt = transpose(&to_rows(basis), ambient);
    let functionals = relation_rows(&bt, basis.len());
    let canonical = hnf(&functionals, ambient);
    let q = canonical.len();
    Ok((q, LatticeMap::from_vectors(&canonical, ambient)?))
}

/// Nonzero elementary divisors of the matrix with the given rows.
pub fn elementary_divisors(vectors: &[IntVector], rank: usize) -> Vec<BigInt> {
    smith_divisors(&to_rows(vectors), rank)
}

/// Index of the lattice spanned by `vectors` inside its saturation.
pub fn saturation_index(vectors: &[IntVector], rank: usize) -> BigInt {
    elementary_divisors(vectors, rank)
        .into_iter()
        .fold(BigInt::one(), |acc, d| acc * d)
}

/// Expresses `v` in the given lattice basis, if it lies in its rational span
/// with integer coefficients.
pub fn integer_coordinates(basis: &[IntVector], v: &IntVector) -> Option<Vec<BigInt>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(IntVector::to_rational).collect();
    let x = rational::solve_columns(&cols, &v.to_rational())?;
    x.into_iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect()
}

/// Rational coordinates of `v` in a linearly independent family.
pub fn rational_coordinates(basis: &[IntVector], v: &[Rational]) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(IntVector::to_rational).collect();
    rational::solve_columns(&cols, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> IntVector {
        IntVector::from_i64(xs)
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_saturated(&LatticeMap::from_i64(&[&[1, -1]]));
        assert_eq!(k, vec![iv(&[1, 1])]);
        assert!(kernel_saturated(&LatticeMap::from_i64(&[&[2]])).is_empty());
        let m = LatticeMap::from_i64(&[&[1, 2, 3]]);
        let k = kernel_saturated(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
        assert_eq!(saturation_index(&k, 3), BigInt::one());
        assert!(lattice_contains(&k, &iv(&[-2, 1, 0])));
        assert!(lattice_contains(&k, &iv(&[-3, 0, 1])));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&[iv(&[2, 0])], 2), vec![iv(&[1, 0])]);
        assert_eq!(saturate(&[iv(&[2, 2])], 2), vec![iv(&[1, 1])]);
        let full = saturate(&[iv(&[1, 1]), iv(&[1, -1])], 2);
        assert_eq!(full, vec![iv(&[1, 0]), iv(&[0, 1])]);
        assert_eq!(
            saturation_index(&[iv(&[1, 1]), iv(&[1, -1])], 2),
            BigInt::from(2)
        );
        assert!(saturate(&[], 3).is_empty());
    }

    #[test]
    fn quotient_examples() {
        let (q, p) = quotient_lattice(2, &[iv(&[1, 0])]).unwrap();
        assert_eq!(q, 1);
        assert_eq!(p, LatticeMap::from_i64(&[&[0, 1]]));
        let (q, p) = quotient_lattice(2, &[iv(&[1, 1])]).unwrap();
        assert_eq!(q, 1);
        assert!(p.apply(&iv(&[1, 1])).is_zero());
        assert_eq!(elementary_divisors(&[p.row(0)], 2), vec![BigInt::one()]);
        let (q, _) = quotient_lattice(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0])]).unwrap();
        assert_eq!(q, 1);
        assert_eq!(
            quotient_lattice(2, &[iv(&[2, 0])]),
            Err(Error::NotSaturated)
        );
        let (q, p) = quotient_lattice(2, &[]).unwrap();
        assert_eq!(q, 2);
        assert!(p.is_unimodular());
    }

    #[test]
    fn map_algebra() {
        let a = LatticeMap::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap(), LatticeMap::identity(2));
        assert_eq!(inv.compose(&a).unwrap(), LatticeMap::identity(2));
        assert!(LatticeMap::from_i64(&[&[2]]).inverse().is_none());
        let t = LatticeMap::from_i64(&[&[1, 2, 3]]).transpose();
        assert_eq!(t.apply(&iv(&[2])), iv(&[2, 4, 6]));
    }
}
