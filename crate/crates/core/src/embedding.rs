//! Affine toric supervarieties `Y_{A,B}` as closures of monomial maps.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{format_vectors, kernel_saturated, CParam, IntVector, LatticeMap};
use crate::semigroup::ideal::decompose_in;
use crate::semigroup::{is_admissible, minimalize, AffineSemigroup};

/// Default coefficient-sum cap for witness decompositions.
pub const DEFAULT_WITNESS_CAP: u32 = 32;

/// The data `(A, B, c)`: even monomials `A`, odd monomials `B = A' ⊔ B''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialData {
    rank: usize,
    a: Vec<IntVector>,
    b: Vec<IntVector>,
    c: CParam,
    /// For each element of `B` not in `A`, its exponents over `A` (supported on `A''`).
    witnesses: Vec<Option<Vec<u32>>>,
}

/// Splits `A` into the monomials pairing nontrivially with `c` and the rest.
pub fn split_by_c(a: &[IntVector], c: &CParam) -> Result<(Vec<IntVector>, Vec<IntVector>)> {
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for m in a {
        if c.annihilates(m) {
            even.push(m.clone());
        } else {
            if m.len() != c.rank() {
                return Err(Error::RankMismatch {
                    expected: c.rank(),
                    found: m.len(),
                });
            }
            odd.push(m.clone());
        }
    }
    Ok((odd, even))
}

impl MonomialData {
    /// Checks the invariants and searches witness decompositions with the given cap.
    pub fn new(
        rank: usize,
        a: Vec<IntVector>,
        b: Vec<IntVector>,
        c: CParam,
        cap: u32,
    ) -> Result<Self> {
        if c.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: c.rank(),
            });
        }
        if let Some(bad) = a.iter().chain(&b).find(|v| v.len() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: bad.len(),
            });
        }
        if b.is_empty() {
            return Err(Error::Invalid("B must be nonempty".into()));
        }
        let (a_odd, _) = split_by_c(&a, &c)?;
        if let Some(m) = a_odd.iter().find(|m| !b.contains(m)) {
            return Err(Error::Invalid(format!(
                "{m} pairs nontrivially with c but is missing from B"
            )));
        }
        // restrict the search to A'' by zeroing the other generators
        let masked: Vec<IntVector> = a
            .iter()
            .map(|m| {
                if c.annihilates(m) {
                    m.clone()
                } else {
                    IntVector::zero(rank)
                }
            })
            .collect();
        let witnesses = b
            .iter()
            .map(|n| {
                if a.contains(n) {
                    return Ok(None);
                }
                decompose_in(&masked, n, cap).map(Some).ok_or_else(|| {
                    Error::WitnessNotFound(format!(
                        "{n} is not a sum of at most {cap} elements of A''"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            rank,
            a,
            b,
            c,
            witnesses,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a(&self) -> &[IntVector] {
        &self.a
    }

    pub fn b(&self) -> &[IntVector] {
        &self.b
    }

    pub fn c(&self) -> &CParam {
        &self.c
    }

    pub fn witness(&self, j: usize) -> Option<&[u32]> {
        self.witnesses[j].as_deref()
    }
}

/// `Z^{r+s} -> M ⊕ Z` sending `e_i` to `(m_i | 0)` and `e'_j` to `(n_j | 1)`.
pub fn phi_lattice_map(data: &MonomialData) -> LatticeMap {
    let lift = |v: &IntVector, last: i64| {
        let mut e = v.entries().to_vec();
        e.push(BigInt::from(last));
        IntVector::new(e)
    };
    let columns: Vec<IntVector> = data
        .a
        .iter()
        .map(|m| lift(m, 0))
        .chain(data.b.iter().map(|n| lift(n, 1)))
        .collect();
    LatticeMap::from_columns(&columns, data.rank + 1).expect("uniform column length")
}

/// Hermite basis of the relation lattice `L = ker phi`.
pub fn kernel_l(data: &MonomialData) -> Vec<IntVector> {
    kernel_saturated(&phi_lattice_map(data))
}

/// `x^{l+} xi_{j+} - x^{l-} xi_{j-}` with at most one odd variable per side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperBinomial {
    pub plus: Vec<BigInt>,
    pub minus: Vec<BigInt>,
    pub odd_plus: Option<usize>,
    pub odd_minus: Option<usize>,
}

impl SuperBinomial {
    /// The binomial of a relation vector `(l | l')`, if `l'` has at most one
    /// `+1` and one `-1`.
    pub fn from_relation(v: &IntVector, r: usize) -> Option<Self> {
        let e = v.entries();
        let (even, odd) = e.split_at(r);
        let pos = |x: &BigInt| {
            if x.is_positive() {
                x.clone()
            } else {
                BigInt::zero()
            }
        };
        let neg = |x: &BigInt| if x.is_negative() { -x } else { BigInt::zero() };
        let mut odd_plus = None;
        let mut odd_minus = None;
        for (j, x) in odd.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let slot = if *x == BigInt::one() {
                &mut odd_plus
            } else if *x == -BigInt::one() {
                &mut odd_minus
            } else {
                return None;
            };
            if slot.is_some() {
                return None;
            }
            *slot = Some(j);
        }
        Some(Self {
            plus: even.iter().map(pos).collect(),
            minus: even.iter().map(neg).collect(),
            odd_plus,
            odd_minus,
        })
    }
}

fn format_side(exps: &[BigInt], odd: Option<usize>) -> String {
    let mut terms: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| {
            if e.is_one() {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect();
    if let Some(j) = odd {
        terms.push(format!("xi{}", j + 1));
    }
    if terms.is_empty() {
        "1".to_string()
    } else {
        terms.join(" ")
    }
}

impl fmt::Display for SuperBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {}",
            format_side(&self.plus, self.odd_plus),
            format_side(&self.minus, self.odd_minus)
        )
    }
}

/// A generator of the ideal of `Y_{A,B}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Binomial(SuperBinomial),
    /// A product of two odd variables.
    OddProduct(usize, usize),
    /// Stands for all products `xi_i xi_j`.
    OddProducts,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Binomial(b) => b.fmt(f),
            Relation::OddProduct(i, j) => write!(f, "xi{} xi{}", i + 1, j + 1),
            Relation::OddProducts => write!(f, "xi_i xi_j"),
        }
    }
}

/// Every vector of `L` in `[-bound, bound]^{r+s}`, up to sign, read off the
/// Hermite basis row by row so each pivot coordinate bounds its coefficient.
fn lattice_points_in_box(basis: &[IntVector], bound: &BigInt) -> Vec<IntVector> {
    let n = basis.first().map_or(0, IntVector::len);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| {
            b.entries()
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero row")
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, IntVector::zero(n))];
    while let Some((k, partial)) = stack.pop() {
        if k == basis.len() {
            if !partial.is_zero() && partial.max_abs() <= *bound {
                out.push(partial);
            }
            continue;
        }
        let p = pivots[k];
        let h = basis[k].entries()[p].abs();
        let base = &partial.entries()[p];
        // coefficients with |base + lambda h| <= bound
        let lo = ceil_div(&(-bound - base), &h);
        let hi = floor_div(&(bound - base), &h);
        let mut lambda = lo;
        while lambda <= hi {
            stack.push((k + 1, &partial + &basis[k].scaled(&lambda)));
            lambda += 1;
        }
    }
    out
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -floor_div(&-a, b)
}

fn sign_normalized(v: IntVector) -> Option<IntVector> {
    let first = v.entries().iter().find(|x| !x.is_zero())?;
    Some(if first.is_negative() { -v } else { v })
}

/// Binomials of all relation vectors of sup-norm at most `bound` with at
/// most one odd variable per side, followed by the odd-product marker.
pub fn binomials_in_box(data: &MonomialData, bound: u32) -> Result<Vec<Relation>> {
    if bound == 0 {
        return Err(Error::Invalid("box bound must be at least 1".into()));
    }
    let basis = kernel_l(data);
    let mut vectors: Vec<IntVector> = lattice_points_in_box(&basis, &BigInt::from(bound))
        .into_iter()
        .filter_map(sign_normalized)
        .collect();
    vectors.sort_by(|x, y| {
        let w = |v: &IntVector| v.entries().iter().map(|e| e.abs()).sum::<BigInt>();
        (w(x), x).cmp(&(w(y), y))
    });
    vectors.dedup();
    let r = data.a.len();
    let mut out: Vec<Relation> = vectors
        .iter()
        .filter_map(|v| SuperBinomial::from_relation(v, r))
        .map(Relation::Binomial)
        .collect();
    out.push(Relation::OddProducts);
    Ok(out)
}

/// Substitutes `x_i -> t^{m_i}`, `xi_j -> t^{n_j} xi` and compares both sides.
pub fn verify_vanishing(data: &MonomialData, b: &SuperBinomial) -> bool {
    let r = data.a.len();
    let s = data.b.len();
    if b.plus.len() != r || b.minus.len() != r {
        return false;
    }
    if b.odd_plus.is_some_and(|j| j >= s) || b.odd_minus.is_some_and(|j| j >= s) {
        return false;
    }
    if b.odd_plus.is_some() != b.odd_minus.is_some() {
        return false;
    }
    let side = |exps: &[BigInt], odd: Option<usize>| {
        let even = exps
            .iter()
            .zip(&data.a)
            .fold(IntVector::zero(data.rank), |acc, (e, m)| {
                &acc + &m.scaled(e)
            });
        match odd {
            Some(j) => &even + &data.b[j],
            None => even,
        }
    };
    side(&b.plus, b.odd_plus) == side(&b.minus, b.odd_minus)
}

pub fn verify_relation(data: &MonomialData, rel: &Relation) -> bool {
    match rel {
        Relation::Binomial(b) => verify_vanishing(data, b),
        Relation::OddProduct(i, j) => *i < data.b.len() && *j < data.b.len(),
        Relation::OddProducts => true,
    }
}

/// Presents `Spec(C[S] ⊕ xi J)` as `Y_{A,B}`: `A` is the Hilbert basis of `S`
/// and `B` adds to `A'` the decoration elements outside the ideal `(A')`.
pub fn presentation_from_semigroup(
    s: &Arc<AffineSemigroup>,
    decoration: &[IntVector],
    c: &CParam,
    cap: u32,
) -> Result<MonomialData> {
    let check = is_admissible(decoration, s, c)?;
    if !check.admissible {
        return Err(Error::NotAdmissible(format!(
            "{} does not generate an ideal containing J_c",
            format_vectors(decoration)
        )));
    }
    let a = s.hilbert_basis().to_vec();
    let (a_odd, _) = split_by_c(&a, c)?;
    let mut b_even: Vec<IntVector> = minimalize(decoration, s)?
        .gens()
        .iter()
        .filter(|m| !a_odd.iter().any(|g| s.le(g, m)))
        .cloned()
        .collect();
    b_even.sort();
    let mut b = a_odd;
    b.extend(b_even);
    MonomialData::new(s.rank(), a, b, c.clone(), cap)
}
