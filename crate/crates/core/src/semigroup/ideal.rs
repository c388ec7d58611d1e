//! Monomial ideals of a saturated affine semigroup.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::AffineSemigroup;
use crate::error::{Error, Result};
use crate::lattice::{format_vectors, CParam, IntVector};
use crate::polyhedral::Cone;

pub const DEFAULT_K_MAX: u32 = 64;

/// A monomial ideal of `S`, stored by its minimal generators in unit-canonical
/// form. The zero ideal has no generators.
#[derive(Clone, Debug)]
pub struct SIdeal {
    semigroup: Arc<AffineSemigroup>,
    gens: Vec<IntVector>,
}

impl PartialEq for SIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
            && (Arc::ptr_eq(&self.semigroup, &other.semigroup) || self.semigroup == other.semigroup)
    }
}

impl Eq for SIdeal {}

impl SIdeal {
    pub fn zero(semigroup: &Arc<AffineSemigroup>) -> Self {
        Self {
            semigroup: semigroup.clone(),
            gens: Vec::new(),
        }
    }

    /// The whole semigroup, generated by the identity.
    pub fn unit(semigroup: &Arc<AffineSemigroup>) -> Self {
        Self {
            semigroup: semigroup.clone(),
            gens: vec![IntVector::zero(semigroup.rank())],
        }
    }

    pub fn gens(&self) -> &[IntVector] {
        &self.gens
    }

    pub fn semigroup(&self) -> &Arc<AffineSemigroup> {
        &self.semigroup
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| self.semigroup.is_unit(g))
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn contains(&self, m: &IntVector) -> bool {
        self.semigroup.contains(m) && self.gens.iter().any(|g| self.semigroup.le(g, m))
    }

    pub fn contains_ideal(&self, other: &SIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Sum of two ideals of the same semigroup.
    pub fn sum(&self, other: &SIdeal) -> Result<SIdeal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        minimalize(&gens, &self.semigroup)
    }
}

impl fmt::Display for SIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_vectors(&self.gens))
    }
}

/// Minimal generators of the ideal generated by `gens`, canonical modulo units.
pub fn minimalize(gens: &[IntVector], s: &Arc<AffineSemigroup>) -> Result<SIdeal> {
    let mut canonical = BTreeSet::new();
    for g in gens {
        if g.len() != s.rank() {
            return Err(Error::RankMismatch {
                expected: s.rank(),
                found: g.len(),
            });
        }
        if !s.contains(g) {
            return Err(Error::NotInSemigroup(g.to_string()));
        }
        canonical.insert(s.canonicalize(g));
    }
    let all: Vec<IntVector> = canonical.into_iter().collect();
    let minimal = all
        .iter()
        .filter(|g| !all.iter().any(|h| h != *g && s.le(h, g)))
        .cloned()
        .collect();
    Ok(SIdeal {
        semigroup: s.clone(),
        gens: minimal,
    })
}

/// Minimal generators of `J_c`, the ideal spanned by `m` with `<m, c> != 0`.
pub fn jc_generators(s: &Arc<AffineSemigroup>, c: &CParam) -> Result<SIdeal> {
    if c.rank() != s.rank() {
        return Err(Error::RankMismatch {
            expected: s.rank(),
            found: c.rank(),
        });
    }
    let gens: Vec<IntVector> = s
        .hilbert_basis()
        .iter()
        .filter(|h| !c.annihilates(h))
        .cloned()
        .collect();
    minimalize(&gens, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// Every element of `S - ker c` is divisible by some element of the set.
    pub admissible: bool,
    /// No element divides a different element.
    pub minimal: bool,
}

pub fn is_admissible(
    b: &[IntVector],
    s: &Arc<AffineSemigroup>,
    c: &CParam,
) -> Result<Admissibility> {
    for x in b {
        if x.len() != s.rank() {
            return Err(Error::RankMismatch {
                expected: s.rank(),
                found: x.len(),
            });
        }
        if !s.contains(x) {
            return Err(Error::NotInSemigroup(x.to_string()));
        }
    }
    let jc = jc_generators(s, c)?;
    let admissible = jc.gens().iter().all(|g| b.iter().any(|x| s.le(x, g)));
    let minimal = b.iter().enumerate().all(|(i, x)| {
        b.iter()
            .enumerate()
            .all(|(j, y)| i == j || x == y || !s.le(x, y))
    }) && b.iter().collect::<BTreeSet<_>>().len() == b.len();
    Ok(Admissibility {
        admissible,
        minimal,
    })
}

/// For each Hilbert basis element `h` (in order), the least `k >= 1` with
/// `k h` in `J`. `None` when some `h` has no multiple in `J`, which makes
/// `S \ J` infinite. Errors when a required `k` exceeds `k_max`.
pub fn finiteness_witness(j: &SIdeal, k_max: u32) -> Result<Option<Vec<u32>>> {
    let s = j.semigroup();
    let rays = s.sigma().generators();
    let mut out = Vec::new();
    for h in s.hilbert_basis() {
        let mut best: Option<BigInt> = None;
        for g in j.gens() {
            let mut k = BigInt::from(1);
            let mut ok = true;
            for r in &rays {
                let hr = h.dot(r);
                let gr = g.dot(r);
                if hr.is_zero() {
                    if !gr.is_zero() {
                        ok = false;
                        break;
                    }
                } else if hr.is_positive() {
                    let need = gr.div_ceil(&hr);
                    if need > k {
                        k = need;
                    }
                } else {
                    // only reachable through lineality generators, where both vanish
                    ok = false;
                    break;
                }
            }
            if ok && best.as_ref().map_or(true, |b| k < *b) {
                best = Some(k);
            }
        }
        match best {
            None => return Ok(None),
            Some(k) => match k.to_u32() {
                Some(k) if k <= k_max => out.push(k),
                _ => return Err(Error::Inconclusive(k_max)),
            },
        }
    }
    Ok(Some(out))
}

/// Whether `S \ J` is finite.
pub fn complement_is_finite(j: &SIdeal, k_max: u32) -> Result<bool> {
    Ok(finiteness_witness(j, k_max)?.is_some())
}

/// Elements of `S \ J` whose Hilbert coefficient sum is at most `bound`.
/// Because `S \ J` is closed under divisors, a breadth-first walk from `0`
/// that never leaves the complement reaches all of them.
pub fn enumerate_complement(j: &SIdeal, bound: u32) -> Vec<IntVector> {
    let s = j.semigroup();
    let origin = IntVector::zero(s.rank());
    if j.contains(&origin) {
        return Vec::new();
    }
    let mut seen: BTreeSet<IntVector> = BTreeSet::new();
    seen.insert(origin.clone());
    let mut frontier = vec![origin];
    for _ in 0..bound {
        let mut next = Vec::new();
        for x in &frontier {
            for h in s.hilbert_basis() {
                let y = x + h;
                if !j.contains(&y) && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// The whole complement `S \ J`, or an error if it is infinite.
pub fn finite_complement(j: &SIdeal, k_max: u32) -> Result<Vec<IntVector>> {
    let witness = finiteness_witness(j, k_max)?.ok_or(Error::InfiniteComplement)?;
    let bound: u32 = witness.iter().map(|k| k - 1).sum();
    Ok(enumerate_complement(j, bound))
}

/// All monomial ideals `J` with `J_c ⊆ J ⊆ S`, as down-sets of the finite
/// complement of `J_c`.
pub fn enumerate_intermediate_ideals(
    s: &Arc<AffineSemigroup>,
    c: &CParam,
    k_max: u32,
) -> Result<Vec<SIdeal>> {
    let jc = jc_generators(s, c)?;
    if jc.is_zero() {
        return Err(Error::InfiniteComplement);
    }
    let mut complement = finite_complement(&jc, k_max)?;
    let w = s.sigma().interior_point();
    complement.sort_by(|a, b| a.dot(&w).cmp(&b.dot(&w)).then_with(|| a.cmp(b)));
    let below: Vec<Vec<usize>> = complement
        .iter()
        .map(|x| {
            (0..complement.len())
                .filter(|&i| complement[i] != *x && s.le(&complement[i], x))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut keep = vec![false; complement.len()];
    collect_down_sets(0, &below, &mut keep, &mut |kept| {
        let mut gens = jc.gens().to_vec();
        gens.extend(
            complement
                .iter()
                .zip(kept)
                .filter(|(_, &k)| !k)
                .map(|(x, _)| x.clone()),
        );
        out.push(minimalize(&gens, s));
    });
    let mut ideals = out.into_iter().collect::<Result<Vec<_>>>()?;
    ideals.sort_by(|a, b| a.gens().cmp(b.gens()));
    Ok(ideals)
}

fn collect_down_sets(
    i: usize,
    below: &[Vec<usize>],
    keep: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[bool]),
) {
    if i == below.len() {
        emit(keep);
        return;
    }
    collect_down_sets(i + 1, below, keep, emit);
    if below[i].iter().all(|&p| keep[p]) {
        keep[i] = true;
        collect_down_sets(i + 1, below, keep, emit);
        keep[i] = false;
    }
}

/// Coefficients expressing `m` as an `N`-combination of `gens` with
/// coefficient sum at most `cap`, found breadth-first.
pub(crate) fn decompose_in(gens: &[IntVector], m: &IntVector, cap: u32) -> Option<Vec<u32>> {
    let n = m.len();
    let zero = IntVector::zero(n);
    if *m == zero {
        return Some(vec![0; gens.len()]);
    }
    // a strictly positive grading prunes overshooting partial sums
    let grading = Cone::from_rays(gens, n).ok().and_then(|c| {
        c.is_strongly_convex()
            .then(|| c.facets().iter().fold(IntVector::zero(n), |a, f| &a + f))
    });
    let limit = grading.as_ref().map(|w| m.dot(w));
    let mut parent: BTreeMap<IntVector, Vec<u32>> = BTreeMap::new();
    parent.insert(zero.clone(), vec![0; gens.len()]);
    let mut frontier = vec![zero];
    for _ in 0..cap {
        let mut next = Vec::new();
        for x in &frontier {
            let coeffs = parent[x].clone();
            for (i, g) in gens.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let y = x + g;
                if let (Some(w), Some(l)) = (&grading, &limit) {
                    if y.dot(w) > *l {
                        continue;
                    }
                }
                if parent.contains_key(&y) {
                    continue;
                }
                let mut c = coeffs.clone();
                c[i] += 1;
                if y == *m {
                    return Some(c);
                }
                parent.insert(y.clone(), c);
                next.push(y);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}
