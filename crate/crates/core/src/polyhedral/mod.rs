//! Rational polyhedral cones with both ray and facet descriptions.

mod dd;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::rational::{dot, Rational};
use crate::lattice::{elementary_divisors, format_vectors, saturate, IntVector};

/// A rational polyhedral cone in `N_R = R^n`.
///
/// The V-description is `cone(rays) + span(lineality)`; the H-description is
/// `{u : <f, u> >= 0 for f in facets, <e, u> = 0 for e in equalities}`. Both are
/// canonical, so structural equality is equality of point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    facets: Vec<IntVector>,
    equalities: Vec<IntVector>,
}

/// A face together with a cut vector `m` in the dual cone whose hyperplane
/// meets the cone exactly in the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub face: Cone,
    pub cut_vector: IntVector,
}

fn check_rank(vs: &[IntVector], n: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::RankMismatch {
            expected: n,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn with_negatives(base: &[IntVector], linear: &[IntVector]) -> Vec<IntVector> {
    let mut out = base.to_vec();
    for l in linear {
        out.push(l.clone());
        out.push(-l);
    }
    out
}

impl Cone {
    /// The cone generated by `generators` in `Z^n`.
    pub fn from_rays(generators: &[IntVector], n: usize) -> Result<Self> {
        check_rank(generators, n)?;
        let (equalities, facets) = dd::extreme_rays(generators, n);
        let (lineality, rays) = dd::extreme_rays(&with_negatives(&facets, &equalities), n);
        Ok(Self {
            ambient: n,
            rays,
            lineality,
            facets,
            equalities,
        })
    }

    pub fn from_rays_i64(rays: &[&[i64]], n: usize) -> Result<Self> {
        let v: Vec<IntVector> = rays.iter().map(|r| IntVector::from_i64(r)).collect();
        Self::from_rays(&v, n)
    }

    /// The cone `{u : <a, u> >= 0 for a in inequalities}`.
    pub fn from_facets(inequalities: &[IntVector], n: usize) -> Result<Self> {
        check_rank(inequalities, n)?;
        let (lineality, rays) = dd::extreme_rays(inequalities, n);
        let (equalities, facets) = dd::extreme_rays(&with_negatives(&rays, &lineality), n);
        Ok(Self {
            ambient: n,
            rays,
            lineality,
            facets,
            equalities,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_rays(&[], n).expect("consistent rank")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Extreme rays, modulo the lineality space.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Facet normals in `M`, modulo `equalities`.
    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    /// Hermite basis of `sigma^perp ∩ M`.
    pub fn equalities(&self) -> &[IntVector] {
        &self.equalities
    }

    /// Rays together with both signs of every lineality vector.
    pub fn generators(&self) -> Vec<IntVector> {
        with_negatives(&self.rays, &self.lineality)
    }

    /// Facet normals together with both signs of every equality.
    pub fn inequalities(&self) -> Vec<IntVector> {
        with_negatives(&self.facets, &self.equalities)
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equalities.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Rays extend to a basis of `N`.
    pub fn is_smooth_cone(&self) -> bool {
        if !self.is_strongly_convex() {
            return false;
        }
        let d = elementary_divisors(&self.rays, self.ambient);
        d.len() == self.rays.len() && d.iter().all(One::is_one)
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex()
            && elementary_divisors(&self.rays, self.ambient).len() == self.rays.len()
    }

    pub fn dual_cone(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lineality: self.equalities.clone(),
            facets: self.rays.clone(),
            equalities: self.lineality.clone(),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::RankMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let ok = self
            .facets
            .iter()
            .all(|f| !dot(&f.to_rational(), v).is_negative())
            && self
                .equalities
                .iter()
                .all(|e| dot(&e.to_rational(), v).is_zero());
        Ok(ok)
    }

    pub fn contains_point(&self, v: &IntVector) -> bool {
        v.len() == self.ambient
            && self.facets.iter().all(|f| !f.dot(v).is_negative())
            && self.equalities.iter().all(|e| e.dot(v).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_point(g))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if other.ambient != self.ambient {
            return Err(Error::RankMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut ineq = self.inequalities();
        ineq.extend(other.inequalities());
        Cone::from_facets(&ineq, self.ambient)
    }

    /// Hermite basis of `N_sigma`, the saturated lattice spanned by the cone.
    pub fn span_lattice(&self) -> Vec<IntVector> {
        saturate(&self.generators(), self.ambient)
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> IntVector {
        self.rays
            .iter()
            .fold(IntVector::zero(self.ambient), |acc, r| &acc + r)
    }

    /// The face cut out by the facets listed in `active` (indices into `facets`).
    fn face_from_active(&self, active: &BTreeSet<usize>) -> Cone {
        let gens: Vec<IntVector> = self
            .rays
            .iter()
            .filter(|r| active.iter().all(|&i| self.facets[i].dot(r).is_zero()))
            .cloned()
            .collect();
        Cone::from_rays(&with_negatives(&gens, &self.lineality), self.ambient)
            .expect("rank preserved")
    }

    fn cut_from_active(&self, active: &BTreeSet<usize>) -> IntVector {
        active
            .iter()
            .fold(IntVector::zero(self.ambient), |acc, &i| {
                &acc + &self.facets[i]
            })
    }

    /// Indices of facets vanishing on every generator of `tau`.
    fn facets_vanishing_on(&self, tau: &Cone) -> BTreeSet<usize> {
        let gens = tau.generators();
        (0..self.facets.len())
            .filter(|&i| gens.iter().all(|g| self.facets[i].dot(g).is_zero()))
            .collect()
    }

    /// All faces, from the cone itself down to the minimal face, each with a cut
    /// vector (the sum of the facet normals vanishing on the face). Sorted by
    /// dimension, then by rays.
    pub fn faces(&self) -> Vec<FaceDescriptor> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![BTreeSet::new()];
        let mut out = Vec::new();
        while let Some(active) = stack.pop() {
            let face = self.face_from_active(&active);
            // close the active set so that each face is recorded once
            let closed = self.facets_vanishing_on(&face);
            if !found.insert(closed.clone()) {
                continue;
            }
            for i in 0..self.facets.len() {
                if !closed.contains(&i) {
                    let mut next = closed.clone();
                    next.insert(i);
                    stack.push(next);
                }
            }
            out.push(FaceDescriptor {
                cut_vector: self.cut_from_active(&closed),
                face,
            });
        }
        out.sort_by(|a, b| {
            a.face
                .dim()
                .cmp(&b.face.dim())
                .then_with(|| a.face.cmp(&b.face))
        });
        out
    }

    /// Whether `tau` is a face of `self`.
    pub fn has_face(&self, tau: &Cone) -> bool {
        if tau.ambient != self.ambient || !self.contains_cone(tau) {
            return false;
        }
        self.face_from_active(&self.facets_vanishing_on(tau)) == *tau
    }

    /// The cut vector `m_{sigma,tau}`: zero on `tau`, positive on every other ray.
    pub fn cut_vector(&self, tau: &Cone) -> Result<IntVector> {
        if !self.has_face(tau) {
            return Err(Error::NotAFace {
                face: tau.to_string(),
                cone: self.to_string(),
            });
        }
        Ok(self.cut_from_active(&self.facets_vanishing_on(tau)))
    }

    /// Whether `<m, u> = 0` on the whole cone.
    pub fn is_perp(&self, m: &IntVector) -> bool {
        self.generators().iter().all(|g| m.dot(g).is_zero())
    }

    pub fn max_ray_entry(&self) -> BigInt {
        self.generators()
            .iter()
            .map(IntVector::max_abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{}", format_vectors(&self.generators()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::rat;

    fn iv(xs: &[i64]) -> IntVector {
        IntVector::from_i64(xs)
    }

    fn cone(rays: &[&[i64]], n: usize) -> Cone {
        Cone::from_rays_i64(rays, n).unwrap()
    }

    #[test]
    fn dual_examples() {
        let o = cone(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(o.dual_cone(), o);
        let s = cone(&[&[1, 0], &[1, 2]], 2);
        assert_eq!(s.dual_cone(), cone(&[&[0, 1], &[2, -1]], 2));
        let z = Cone::zero(2);
        let all = z.dual_cone();
        assert_eq!(all.lineality().len(), 2);
        assert_eq!(all, cone(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], 2));
        assert_eq!(all.dual_cone(), z);
    }

    #[test]
    fn facets_of_zero_cone_span_m() {
        let z = Cone::zero(2);
        assert!(z.rays().is_empty());
        assert_eq!(z.inequalities().len(), 4);
    }

    #[test]
    fn faces_of_orthant() {
        let o = cone(&[&[1, 0], &[0, 1]], 2);
        let faces = o.faces();
        assert_eq!(faces.len(), 4);
        let r1 = cone(&[&[1, 0]], 2);
        assert_eq!(o.cut_vector(&r1).unwrap(), iv(&[0, 1]));
        assert_eq!(o.cut_vector(&o).unwrap(), iv(&[0, 0]));
        assert_eq!(o.cut_vector(&Cone::zero(2)).unwrap(), iv(&[1, 1]));
        assert!(o.cut_vector(&cone(&[&[1, 1]], 2)).is_err());
    }

    #[test]
    fn faces_of_ray_and_zero() {
        let r = cone(&[&[1, 1]], 2);
        let faces = r.faces();
        assert_eq!(faces.len(), 2);
        let zero_face = &faces[0];
        assert!(zero_face.face.is_zero());
        assert!(zero_face.cut_vector.dot(&iv(&[1, 1])) > BigInt::zero());
        assert_eq!(Cone::zero(2).faces().len(), 1);
    }

    #[test]
    fn intersections() {
        let o = cone(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(o.intersect(&o).unwrap(), o);
        let other = cone(&[&[0, 1], &[-1, 0]], 2);
        assert_eq!(o.intersect(&other).unwrap(), cone(&[&[0, 1]], 2));
        let a = cone(&[&[1, 0], &[1, 2]], 2);
        let b = cone(&[&[0, 1], &[2, 1]], 2);
        assert_eq!(a.intersect(&b).unwrap(), cone(&[&[1, 2], &[2, 1]], 2));
    }

    #[test]
    fn convexity_and_smoothness() {
        assert!(cone(&[&[1, 0], &[0, 1]], 2).is_strongly_convex());
        assert!(!cone(&[&[1, 0], &[-1, 0]], 2).is_strongly_convex());
        assert!(!cone(&[&[1, 0], &[-1, 1], &[0, -1]], 2).is_strongly_convex());
        assert!(cone(&[&[1, 0], &[0, 1]], 2).is_smooth_cone());
        assert!(!cone(&[&[1, 0], &[1, 2]], 2).is_smooth_cone());
        assert!(cone(&[&[1, 1]], 2).is_smooth_cone());
    }

    #[test]
    fn membership() {
        let o = cone(&[&[1, 0], &[0, 1]], 2);
        assert!(o.contains(&[rat(1), rat(1)]).unwrap());
        assert!(!o.contains(&[rat(-1), rat(0)]).unwrap());
        let s = cone(&[&[1, 0], &[1, 2]], 2);
        assert!(s.contains(&[rat(1), rat(1)]).unwrap());
        assert!(o.contains(&[rat(1)]).is_err());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(&[&[1, 0], &[2, 1], &[0, 1], &[3, 3]], 2);
        assert_eq!(c.rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn lower_dimensional_cone_in_three_space() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0]], 3);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.equalities(), &[iv(&[0, 0, 1])]);
        assert_eq!(c.faces().len(), 4);
        assert_eq!(c.dual_cone().dual_cone(), c);
    }
}
