//! Saturated affine semigroups `S_sigma = dual(sigma) ∩ M` and their monomial ideals.

pub(crate) mod ideal;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use ideal::{
    complement_is_finite, enumerate_complement, enumerate_intermediate_ideals, finite_complement,
    finiteness_witness, is_admissible, jc_generators, minimalize, Admissibility, SIdeal,
    DEFAULT_K_MAX,
};

use crate::error::{Error, Result};
use crate::lattice::normal_form::hermite;
use crate::lattice::rational::{solve_columns, Rational};
use crate::lattice::{integer_coordinates, quotient_lattice, saturate, IntVector, LatticeMap};
use crate::polyhedral::Cone;

/// `S_sigma = dual(sigma) ∩ M` for a cone `sigma` in `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    sigma: Cone,
    dual: Cone,
    hilbert: Vec<IntVector>,
    pointed: Vec<IntVector>,
}

impl AffineSemigroup {
    pub fn new(sigma: &Cone) -> Self {
        let dual = sigma.dual_cone();
        let pointed = pointed_hilbert_basis(&dual);
        let mut hilbert = pointed.clone();
        for u in dual.lineality() {
            hilbert.push(u.clone());
            hilbert.push(-u);
        }
        hilbert.sort();
        Self {
            sigma: sigma.clone(),
            dual,
            hilbert,
            pointed,
        }
    }

    /// The semigroup `N^n`.
    pub fn orthant(n: usize) -> Self {
        let rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Self::new(&Cone::from_rays(&rays, n).expect("consistent rank"))
    }

    /// The saturated semigroup generated by `generators`, viewed as
    /// `dual(sigma) ∩ M` for `sigma = dual(cone(generators))`.
    pub fn generated_by(generators: &[IntVector], rank: usize) -> Result<Self> {
        let cone = Cone::from_rays(generators, rank)?;
        Ok(Self::new(&cone.dual_cone()))
    }

    pub fn rank(&self) -> usize {
        self.sigma.ambient_rank()
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn dual(&self) -> &Cone {
        &self.dual
    }

    /// Minimal generators; the unit lattice contributes `±` each basis vector.
    pub fn hilbert_basis(&self) -> &[IntVector] {
        &self.hilbert
    }

    /// Hilbert basis elements outside the unit group, in canonical form.
    pub fn pointed_generators(&self) -> &[IntVector] {
        &self.pointed
    }

    /// Hermite basis of the unit group `sigma^perp ∩ M`.
    pub fn units(&self) -> &[IntVector] {
        self.dual.lineality()
    }

    pub fn is_pointed(&self) -> bool {
        self.units().is_empty()
    }

    pub fn contains(&self, m: &IntVector) -> bool {
        self.dual.contains_point(m)
    }

    pub fn is_unit(&self, m: &IntVector) -> bool {
        m.len() == self.rank() && self.sigma.is_perp(m)
    }

    /// `a <=_S b`, without membership checks.
    pub fn le(&self, a: &IntVector, b: &IntVector) -> bool {
        self.dual.contains_point(&(b - a))
    }

    /// `a <=_S b`: whether `b - a` lies in `S`.
    pub fn divides(&self, a: &IntVector, b: &IntVector) -> Result<bool> {
        for x in [a, b] {
            if x.len() != self.rank() {
                return Err(Error::RankMismatch {
                    expected: self.rank(),
                    found: x.len(),
                });
            }
            if !self.contains(x) {
                return Err(Error::NotInSemigroup(x.to_string()));
            }
        }
        Ok(self.le(a, b))
    }

    /// Canonical representative of `m + (sigma^perp ∩ M)`: pivot coordinates of
    /// the Hermite unit basis are reduced into `[0, pivot)`.
    pub fn canonicalize(&self, m: &IntVector) -> IntVector {
        reduce_mod_units(self.units(), m)
    }

    /// An expression of `m` as an `N`-combination of the Hilbert basis, if the
    /// coefficient sum is at most `cap`.
    pub fn decompose(&self, m: &IntVector, cap: u32) -> Option<Vec<u32>> {
        ideal::decompose_in(&self.hilbert, m, cap)
    }
}

impl fmt::Display for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S<{}>",
            self.hilbert
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Splits a cone into simplicial cones using only its rays.
fn triangulate(rays: &[IntVector], n: usize) -> Vec<Vec<IntVector>> {
    let cone = Cone::from_rays(rays, n).expect("consistent rank");
    let rays = cone.rays();
    if rays.len() == cone.dim() {
        return vec![rays.to_vec()];
    }
    let apex = &rays[0];
    let mut out = Vec::new();
    for f in cone.facets() {
        if f.dot(apex).is_zero() {
            continue;
        }
        let sub: Vec<IntVector> = rays
            .iter()
            .filter(|r| f.dot(r).is_zero())
            .cloned()
            .collect();
        for mut simplex in triangulate(&sub, n) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the
/// linearly independent vectors `rays`, inside their saturated span.
fn parallelepiped_points(rays: &[IntVector], n: usize) -> Vec<IntVector> {
    let k = rays.len();
    let basis = saturate(rays, n);
    let coords: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| integer_coordinates(&basis, r).expect("ray lies in its saturated span"))
        .collect();
    let h = hermite(&coords, k);
    let diag: Vec<BigInt> = (0..k).map(|i| h.echelon[i][i].clone()).collect();
    let cols: Vec<Vec<Rational>> = coords
        .iter()
        .map(|c| {
            c.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut y = vec![BigInt::zero(); k];
    loop {
        let target: Vec<Rational> = y
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let lambda = solve_columns(&cols, &target).expect("full rank");
        let mut point = vec![Rational::zero(); n];
        for (l, r) in lambda.iter().zip(rays) {
            let frac = l - l.floor();
            for (p, x) in point.iter_mut().zip(r.entries()) {
                *p += &frac * x;
            }
        }
        let v = IntVector::new(point.into_iter().map(|q| q.to_integer()).collect());
        if !v.is_zero() {
            out.push(v);
        }
        // odometer over 0 <= y_j < d_j
        let mut j = 0;
        loop {
            if j == k {
                return out;
            }
            y[j] += 1;
            if y[j] < diag[j] {
                break;
            }
            y[j] = BigInt::zero();
            j += 1;
        }
    }
}

/// Hilbert basis of `dual ∩ M` modulo units, lifted to canonical representatives.
fn pointed_hilbert_basis(dual: &Cone) -> Vec<IntVector> {
    let n = dual.ambient_rank();
    let units = dual.lineality();
    let (q, proj) = quotient_lattice(n, units).expect("lineality basis is saturated");
    let images: Vec<IntVector> = dual.rays().iter().map(|r| proj.apply(r)).collect();
    let cone = Cone::from_rays(&images, q).expect("quotient rank");
    if cone.is_zero() {
        return Vec::new();
    }
    let mut candidates: BTreeSet<IntVector> = cone.rays().iter().cloned().collect();
    for simplex in triangulate(cone.rays(), q) {
        candidates.extend(parallelepiped_points(&simplex, q));
    }
    let candidates: Vec<IntVector> = candidates.into_iter().collect();
    let irreducible: Vec<IntVector> = candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|g| g != *x && cone.contains_point(&(*x - g)))
        })
        .cloned()
        .collect();
    let section = section_of(&proj, n);
    let mut out: Vec<IntVector> = irreducible
        .iter()
        .map(|h| {
            let lift = h
                .entries()
                .iter()
                .zip(&section)
                .fold(IntVector::zero(n), |acc, (c, s)| &acc + &s.scaled(c));
            reduce_mod_units(units, &lift)
        })
        .collect();
    out.sort();
    out
}

/// Vectors `s_j` with `proj(s_j) = e_j` for a surjective projection.
fn section_of(proj: &LatticeMap, n: usize) -> Vec<IntVector> {
    let q = proj.codomain_rank();
    let pt = proj.transpose();
    let e = hermite(pt.rows(), q);
    debug_assert!((0..q).all(|i| e.echelon[i][i] == BigInt::from(1)));
    e.transform
        .into_iter()
        .take(q)
        .map(IntVector::new)
        .inspect(|s| debug_assert_eq!(s.len(), n))
        .collect()
}

/// Reduces `m` modulo a Hermite basis so that every pivot coordinate lies in
/// `[0, pivot)`.
fn reduce_mod_units(units: &[IntVector], m: &IntVector) -> IntVector {
    let mut v = m.clone();
    for b in units {
        let (p, d) = b
            .entries()
            .iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .expect("basis vectors are nonzero");
        debug_assert!(d.is_positive());
        let q = v.entries()[p].div_floor(d);
        if !q.is_zero() {
            v = &v - &b.scaled(&q);
        }
    }
    v
}
