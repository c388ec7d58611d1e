//! Exact linear algebra over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntVector;

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(input: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = input.to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub(crate) fn rank(input: &[Vec<Rational>], ncols: usize) -> usize {
    rref(input, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for every row}`.
pub(crate) fn nullspace(input: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(input, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(pivots.iter()) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `sum_i x_i * columns[i] = target`, if possible.
pub(crate) fn solve_columns(
    columns: &[Vec<Rational>],
    target: &[Rational],
) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = columns.len();
    // augmented system, one row per coordinate
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &p) in r.iter().zip(pivots.iter()) {
        x[p] = row[k].clone();
    }
    Some(x)
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. The zero vector maps to the zero vector.
pub(crate) fn primitive_integer(v: &[Rational]) -> IntVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    IntVector::new(ints).primitive()
}

/// A rational linear subspace, stored as a reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let (basis, _) = rref(vectors, ambient);
        Self { ambient, basis }
    }

    pub fn span_integers(ambient: usize, vectors: &[IntVector]) -> Self {
        let rows: Vec<Vec<Rational>> = vectors.iter().map(IntVector::to_rational).collect();
        Self::span(ambient, &rows)
    }

    /// `{x : row . x = 0 for all rows}`.
    pub fn annihilator(ambient: usize, rows: &[Vec<Rational>]) -> Self {
        Self::span(ambient, &nullspace(rows, ambient))
    }

    pub fn whole(ambient: usize) -> Self {
        let rows: Vec<Vec<Rational>> = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { rat(1) } else { rat(0) })
                    .collect()
            })
            .collect();
        Self::span(ambient, &rows)
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis rows scaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<IntVector> {
        self.basis.iter().map(|v| primitive_integer(v)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, self.ambient) == self.basis.len()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut constraints = nullspace(&self.basis, self.ambient);
        constraints.extend(nullspace(&other.basis, self.ambient));
        Subspace::annihilator(self.ambient, &constraints)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.integer_basis().iter().map(|v| v.to_string()).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

pub(crate) fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn format_rational_short(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
