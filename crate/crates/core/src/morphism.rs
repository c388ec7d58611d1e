//! Morphisms of decorated fans and fiber products.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::decorated_fan::DecoratedFan;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::rational::format_rational_short;
use crate::lattice::{
    integer_coordinates, kernel_saturated, rational_coordinates, CParam, IntVector, LatticeMap,
    Rational,
};
use crate::polyhedral::Cone;
use crate::semigroup::{jc_generators, minimalize, AffineSemigroup};
use crate::supertorus::{validate_supertorus_morphism, SupertorusMorphism};

/// A validated morphism `(phi, a)` between decorated fans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedFanMorphism {
    src: DecoratedFan,
    dst: DecoratedFan,
    phi_bar: LatticeMap,
    a: Rational,
    /// Smallest target cone containing the image of each source cone.
    cone_map: Vec<usize>,
}

impl DecoratedFanMorphism {
    pub fn src(&self) -> &DecoratedFan {
        &self.src
    }

    pub fn dst(&self) -> &DecoratedFan {
        &self.dst
    }

    pub fn phi_bar(&self) -> &LatticeMap {
        &self.phi_bar
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn target_cone(&self, i: usize) -> usize {
        self.cone_map[i]
    }

    pub fn identity(x: &DecoratedFan) -> Self {
        Self {
            src: x.clone(),
            dst: x.clone(),
            phi_bar: LatticeMap::identity(x.rank()),
            a: Rational::one(),
            cone_map: (0..x.fan().len()).collect(),
        }
    }
}

fn image_cone(phi: &LatticeMap, cone: &Cone) -> Result<Cone> {
    let images: Vec<IntVector> = cone.generators().iter().map(|g| phi.apply(g)).collect();
    Cone::from_rays(&images, phi.codomain_rank())
}

/// Maps each cone of `fan` to the smallest cone of `target` containing its image.
fn cone_targets(fan: &Fan, phi: &LatticeMap, target: &Fan) -> Result<Vec<usize>> {
    (0..fan.len())
        .map(|i| {
            let image = image_cone(phi, fan.cone(i))?;
            target
                .smallest_containing(&image)
                .ok_or_else(|| Error::FanIncompatible(fan.id(i).to_string()))
        })
        .collect()
}

/// Checks the c-equation, fan compatibility and, when `a != 0`, that every
/// pulled-back target decoration element is divisible by a source one.
pub fn validate_morphism(
    src: &DecoratedFan,
    dst: &DecoratedFan,
    phi_bar: &LatticeMap,
    a: &Rational,
) -> Result<DecoratedFanMorphism> {
    validate_supertorus_morphism(src.torus(), dst.torus(), phi_bar, a)?;
    let cone_map = cone_targets(src.fan(), phi_bar, dst.fan())?;
    if !a.is_zero() {
        let dual = phi_bar.transpose();
        for (i, &t) in cone_map.iter().enumerate() {
            let s = src.semigroup(i);
            for b in dst.decoration_at(t) {
                let pulled = dual.apply(b);
                if !src.decoration_at(i).iter().any(|x| s.le(x, &pulled)) {
                    return Err(Error::DecorationIncompatible {
                        cone: src.fan().id(i).to_string(),
                        pullback: pulled.to_string(),
                    });
                }
            }
        }
    }
    Ok(DecoratedFanMorphism {
        src: src.clone(),
        dst: dst.clone(),
        phi_bar: phi_bar.clone(),
        a: a.clone(),
        cone_map,
    })
}

/// `g ∘ f`, revalidated.
pub fn compose(g: &DecoratedFanMorphism, f: &DecoratedFanMorphism) -> Result<DecoratedFanMorphism> {
    if f.dst != g.src {
        return Err(Error::ChainMismatch);
    }
    validate_morphism(
        &f.src,
        &g.dst,
        &g.phi_bar.compose(&f.phi_bar)?,
        &(&f.a * &g.a),
    )
}

/// Whether `(phi^-1, a^-1)` is a morphism back.
pub fn is_isomorphism(f: &DecoratedFanMorphism) -> bool {
    if f.a.is_zero() {
        return false;
    }
    match f.phi_bar.inverse() {
        Some(inv) => validate_morphism(&f.dst, &f.src, &inv, &f.a.recip()).is_ok(),
        None => false,
    }
}

/// Whether a supertorus morphism extends to the affine charts
/// `Spec(C[S] ⊕ xi J) -> Spec(C[S'] ⊕ xi J')`.
pub fn affine_extension_check(
    t: &SupertorusMorphism,
    s: &Arc<AffineSemigroup>,
    j: &[IntVector],
    s_target: &Arc<AffineSemigroup>,
    j_target: &[IntVector],
) -> bool {
    let dual = t.phi_bar().transpose();
    if !s_target
        .hilbert_basis()
        .iter()
        .all(|h| s.contains(&dual.apply(h)))
    {
        return false;
    }
    t.a().is_zero()
        || j_target.iter().all(|b| {
            let pulled = dual.apply(b);
            j.iter().any(|x| s.le(x, &pulled))
        })
}

/// The fiber product of `first: X' -> Y` and `second: X'' -> Y` together
/// with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProduct {
    pub object: DecoratedFan,
    pub proj_first: DecoratedFanMorphism,
    pub proj_second: DecoratedFanMorphism,
    /// Columns embed `N` into `N' × N''`.
    pub inclusion: LatticeMap,
}

fn split_rows(m: &LatticeMap, at: usize) -> (LatticeMap, LatticeMap) {
    let rows = m.rows();
    let d = m.domain_rank();
    (
        LatticeMap::new(rows[..at].to_vec(), d).expect("rows of equal length"),
        LatticeMap::new(rows[at..].to_vec(), d).expect("rows of equal length"),
    )
}

fn stacked_parameter(
    n: usize,
    basis: &[IntVector],
    first: &CParam,
    w1: &Rational,
    second: &CParam,
    w2: &Rational,
) -> Result<CParam> {
    let symbols: BTreeSet<&str> = first.symbols().chain(second.symbols()).collect();
    let mut comps = Vec::new();
    for sym in symbols {
        let part = |c: &CParam, w: &Rational| -> Vec<Rational> {
            match c.component(sym) {
                Some(v) => v.iter().map(|x| x * w).collect(),
                None => vec![Rational::zero(); c.rank()],
            }
        };
        let mut full = part(first, w1);
        full.extend(part(second, w2));
        let coords = rational_coordinates(basis, &full).ok_or_else(|| {
            Error::Internal(format!(
                "component `{sym}` of c does not lie in the fiber lattice"
            ))
        })?;
        comps.push((sym.to_string(), coords));
    }
    CParam::new(n, comps)
}

pub fn fiber_product(
    first: &DecoratedFanMorphism,
    second: &DecoratedFanMorphism,
) -> Result<FiberProduct> {
    if first.dst != second.dst {
        return Err(Error::ChainMismatch);
    }
    if first.a.is_zero() && second.a.is_zero() {
        return Err(Error::FiberProductUnsupported);
    }
    let x1 = &first.src;
    let x2 = &second.src;
    let y = &first.dst;
    let (n1, n2) = (x1.rank(), x2.rank());
    // (phi', -phi'') on N' × N''
    let rows: Vec<Vec<_>> = (0..y.rank())
        .map(|k| {
            let mut r = first.phi_bar.rows()[k].clone();
            r.extend(second.phi_bar.rows()[k].iter().map(|x| -x));
            r
        })
        .collect();
    let difference = LatticeMap::new(rows, n1 + n2)?;
    let basis = kernel_saturated(&difference);
    let n = basis.len();
    let inclusion = LatticeMap::from_columns(&basis, n1 + n2)?;
    let (psi1, psi2) = split_rows(&inclusion, n1);

    let a1 = &first.a;
    let a2 = &second.a;
    let c = stacked_parameter(n, &basis, x1.c(), &(a2 * a2), x2.c(), &(a1 * a1))?;

    let mut cones: Vec<Cone> = Vec::new();
    for i in 0..x1.fan().len() {
        for j in 0..x2.fan().len() {
            let (t1, t2) = (first.cone_map[i], second.cone_map[j]);
            let common =
                (0..y.fan().len()).any(|l| y.fan().is_face(t1, l) && y.fan().is_face(t2, l));
            if !common {
                continue;
            }
            let mut ineqs: Vec<IntVector> = Vec::new();
            ineqs.extend(
                x1.fan()
                    .cone(i)
                    .inequalities()
                    .iter()
                    .map(|f| psi1.transpose().apply(f)),
            );
            ineqs.extend(
                x2.fan()
                    .cone(j)
                    .inequalities()
                    .iter()
                    .map(|f| psi2.transpose().apply(f)),
            );
            let cone = Cone::from_facets(&ineqs, n)?;
            if !cones.contains(&cone) {
                cones.push(cone);
            }
        }
    }
    cones.sort_by_key(|c| (c.dim(), c.clone()));

    let mut named = Vec::new();
    let mut decorations = BTreeMap::new();
    let mut used_ids = BTreeSet::new();
    for cone in &cones {
        let s1 = x1
            .fan()
            .smallest_containing(&image_cone(&psi1, cone)?)
            .ok_or_else(|| Error::Internal("projection leaves the first fan".into()))?;
        let s2 = x2
            .fan()
            .smallest_containing(&image_cone(&psi2, cone)?)
            .ok_or_else(|| Error::Internal("projection leaves the second fan".into()))?;
        let mut id = format!("{}.{}", x1.fan().id(s1), x2.fan().id(s2));
        while !used_ids.insert(id.clone()) {
            id.push('\'');
        }
        let semigroup = Arc::new(AffineSemigroup::new(cone));
        let mut gens = jc_generators(&semigroup, &c)?.gens().to_vec();
        // B' survives exactly when the other scalar is nonzero, and vice versa
        if !a2.is_zero() {
            gens.extend(
                x1.decoration_at(s1)
                    .iter()
                    .map(|b| psi1.transpose().apply(b)),
            );
        }
        if !a1.is_zero() {
            gens.extend(
                x2.decoration_at(s2)
                    .iter()
                    .map(|b| psi2.transpose().apply(b)),
            );
        }
        let decoration = minimalize(&gens, &semigroup)?.gens().to_vec();
        decorations.insert(id.clone(), decoration);
        named.push((id, cone.clone()));
    }
    let fan = Fan::new(n, named)?;
    let torus = crate::supertorus::SupertorusDatum::new(n, c)?;
    let object = DecoratedFan::new(torus, fan, decorations)?;
    let report = object.validate_decorations();
    if !report.is_valid() {
        return Err(Error::Internal(format!(
            "fiber product decorations: {report}"
        )));
    }
    let proj_first = validate_morphism(&object, x1, &psi1, a2)?;
    let proj_second = validate_morphism(&object, x2, &psi2, a1)?;
    Ok(FiberProduct {
        object,
        proj_first,
        proj_second,
        inclusion,
    })
}

/// The morphism `Z -> X` induced by `g': Z -> X'` and `g'': Z -> X''` with
/// `f' g' = f'' g''`.
pub fn mediating_morphism(
    fp: &FiberProduct,
    g1: &DecoratedFanMorphism,
    g2: &DecoratedFanMorphism,
) -> Result<DecoratedFanMorphism> {
    let f1 = &fp.proj_first;
    let f2 = &fp.proj_second;
    if g1.src != g2.src || g1.dst != f1.dst || g2.dst != f2.dst {
        return Err(Error::ChainMismatch);
    }
    let z = &g1.src;
    let basis: Vec<IntVector> = (0..fp.inclusion.domain_rank())
        .map(|k| fp.inclusion.column(k))
        .collect();
    let columns = (0..z.rank())
        .map(|k| {
            let mut v = g1.phi_bar.column(k).into_entries();
            v.extend(g2.phi_bar.column(k).into_entries());
            let v = IntVector::new(v);
            integer_coordinates(&basis, &v)
                .map(IntVector::new)
                .ok_or_else(|| Error::Invalid(format!("{v} does not lie in the fiber lattice")))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = LatticeMap::from_columns(&columns, basis.len())?;
    // proj' carries a'' and proj'' carries a'
    let a = if !f2.a.is_zero() {
        &g2.a / &f2.a
    } else {
        &g1.a / &f1.a
    };
    let h = validate_morphism(z, &fp.object, &phi, &a)?;
    let back1 = compose(f1, &h)?;
    let back2 = compose(f2, &h)?;
    if back1.phi_bar != g1.phi_bar
        || back1.a != g1.a
        || back2.phi_bar != g2.phi_bar
        || back2.a != g2.a
    {
        return Err(Error::Invalid(format!(
            "no mediating morphism with scalar {}",
            format_rational_short(&a)
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::rat;
    use crate::supertorus::SupertorusDatum;

    fn iv(xs: &[i64]) -> IntVector {
        IntVector::from_i64(xs)
    }

    fn a1(c: i64, b: i64) -> DecoratedFan {
        let t = SupertorusDatum::new(1, CParam::from_integers(&[c])).unwrap();
        let nat = Cone::from_rays_i64(&[&[1]], 1).unwrap();
        DecoratedFan::affine(t, &nat, vec![iv(&[b])]).unwrap()
    }

    fn p1(plus: i64, minus: i64) -> DecoratedFan {
        let fan = Fan::new(
            1,
            vec![
                ("0".into(), Cone::zero(1)),
                ("p".into(), Cone::from_rays_i64(&[&[1]], 1).unwrap()),
                ("m".into(), Cone::from_rays_i64(&[&[-1]], 1).unwrap()),
            ],
        )
        .unwrap();
        DecoratedFan::from_maximal(
            SupertorusDatum::new(1, CParam::from_integers(&[1])).unwrap(),
            fan,
            BTreeMap::from([
                ("p".into(), vec![iv(&[plus])]),
                ("m".into(), vec![iv(&[minus])]),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn non_isomorphic_charts() {
        let id = LatticeMap::identity(1);
        let f = validate_morphism(&a1(1, 0), &a1(1, 1), &id, &rat(1)).unwrap();
        assert!(!is_isomorphism(&f));
        assert!(matches!(
            validate_morphism(&a1(1, 1), &a1(1, 0), &id, &rat(1)),
            Err(Error::DecorationIncompatible { .. })
        ));
        assert!(validate_morphism(&a1(1, 1), &a1(1, 0), &id, &rat(0)).is_err());
        assert!(validate_morphism(&a1(1, 1), &a1(0, 0), &LatticeMap::zero(1, 1), &rat(0)).is_ok());
        assert!(is_isomorphism(&DecoratedFanMorphism::identity(&p1(1, -1))));
    }

    #[test]
    fn mirror_of_p1() {
        let neg = LatticeMap::from_i64(&[&[-1]]);
        let x = p1(1, 0);
        let t = SupertorusDatum::new(1, CParam::from_integers(&[-1])).unwrap();
        let y = DecoratedFan::from_maximal(
            t,
            x.fan().clone(),
            BTreeMap::from([("p".into(), vec![iv(&[0])]), ("m".into(), vec![iv(&[-1])])]),
        )
        .unwrap();
        let f = validate_morphism(&x, &y, &neg, &rat(1)).unwrap();
        assert!(is_isomorphism(&f));
    }

    #[test]
    fn composition_and_fans() {
        let x = p1(1, -1);
        let f = DecoratedFanMorphism::identity(&x);
        assert_eq!(compose(&f, &f).unwrap(), f);
        let squash = LatticeMap::from_i64(&[&[1, 0]]);
        let plane = DecoratedFan::affine(
            SupertorusDatum::new(2, CParam::from_integers(&[1, 0])).unwrap(),
            &Cone::from_rays_i64(&[&[1, 0], &[0, 1]], 2).unwrap(),
            vec![iv(&[0, 0])],
        )
        .unwrap();
        let g = validate_morphism(&plane, &x, &squash, &rat(1)).unwrap();
        assert_eq!(compose(&f, &g).unwrap(), g);
        assert!(matches!(compose(&g, &f), Err(Error::ChainMismatch)));
        let line = DecoratedFan::affine(
            SupertorusDatum::new(2, CParam::from_integers(&[1, 0])).unwrap(),
            &Cone::from_rays_i64(&[&[1, 0], &[-1, 1]], 2).unwrap(),
            vec![iv(&[0, 0])],
        )
        .unwrap();
        assert!(matches!(
            validate_morphism(&line, &a1(1, 0), &squash, &rat(1)),
            Err(Error::FanIncompatible(_))
        ));
    }

    #[test]
    fn extension_check() {
        let t = SupertorusDatum::new(1, CParam::from_integers(&[1])).unwrap();
        let id = validate_supertorus_morphism(&t, &t, &LatticeMap::identity(1), &rat(1)).unwrap();
        let nat = Arc::new(AffineSemigroup::orthant(1));
        let all = Arc::new(AffineSemigroup::new(&Cone::zero(1)));
        assert!(affine_extension_check(
            &id,
            &all,
            &[iv(&[0])],
            &nat,
            &[iv(&[1])]
        ));
        assert!(!affine_extension_check(
            &id,
            &nat,
            &[iv(&[1])],
            &nat,
            &[iv(&[0])]
        ));
        let zero = validate_supertorus_morphism(
            &t,
            &SupertorusDatum::new(1, CParam::from_integers(&[1])).unwrap(),
            &LatticeMap::identity(1),
            &rat(-1),
        )
        .unwrap();
        assert!(!affine_extension_check(
            &zero,
            &nat,
            &[iv(&[1])],
            &nat,
            &[iv(&[0])]
        ));
    }

    #[test]
    fn diagonal_fiber_product() {
        let y = a1(1, 1);
        let id = LatticeMap::identity(1);
        let f1 = validate_morphism(&a1(1, 1), &y, &id, &rat(1)).unwrap();
        let f2 = validate_morphism(&a1(1, 0), &y, &id, &rat(1)).unwrap();
        let fp = fiber_product(&f1, &f2).unwrap();
        assert_eq!(fp.object.rank(), 1);
        assert_eq!(fp.object.c(), &CParam::from_integers(&[1]));
        let top = fp.object.fan().maximal_cones();
        assert_eq!(top.len(), 1);
        assert_eq!(fp.object.decoration_at(top[0]), &[iv(&[0])]);
        let l1 = compose(&f1, &fp.proj_first).unwrap();
        let l2 = compose(&f2, &fp.proj_second).unwrap();
        assert_eq!((l1.phi_bar(), l1.a()), (l2.phi_bar(), l2.a()));
    }

    #[test]
    fn fiber_product_of_identities() {
        let x = p1(1, -1);
        let id = DecoratedFanMorphism::identity(&x);
        let fp = fiber_product(&id, &id).unwrap();
        assert!(is_isomorphism(&fp.proj_first));
        let h = mediating_morphism(&fp, &id, &id).unwrap();
        assert!(is_isomorphism(&h));
        let zero = validate_morphism(&x, &x, &LatticeMap::identity(1), &rat(0));
        assert!(zero.is_err());
        let even =
            DecoratedFan::affine(SupertorusDatum::even(1), &Cone::zero(1), vec![iv(&[0])]).unwrap();
        let z = validate_morphism(&even, &even, &LatticeMap::identity(1), &rat(0)).unwrap();
        assert_eq!(fiber_product(&z, &z), Err(Error::FiberProductUnsupported));
    }
}
