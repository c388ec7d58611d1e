//! Property tests for the structural invariants. Large random objects come
//! from the shared generators in `common`, seeded by proptest.

mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use superfan::decorated_fan::OrbitBranch;
use superfan::embedding::{
    binomials_in_box, kernel_l, presentation_from_semigroup, split_by_c, verify_relation,
    DEFAULT_WITNESS_CAP,
};
use superfan::io::{parse_fan, print_fan};
use superfan::lattice::{hnf, kernel_saturated, quotient_lattice, saturate};
use superfan::morphism::{compose, fiber_product, validate_morphism};
use superfan::semigroup::{finite_complement, jc_generators, minimalize};
use superfan::supertorus::{decompose, trailing_rows_vanish, transformed_parameter};
use superfan::{
    AffineSemigroup, CParam, Cone, DecoratedFan, DecoratedFanMorphism, Fan, IntVector, LatticeMap,
    Rational, Subspace, SupertorusDatum,
};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn to_map(rows: &[Vec<i64>]) -> LatticeMap {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    LatticeMap::from_i64(&refs)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn kernel_is_a_saturated_basis(rows in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let map = to_map(&rows);
        let n = map.domain_rank();
        let basis = kernel_saturated(&map);
        prop_assert_eq!(basis.len(), n - map.rank());
        for v in &basis {
            prop_assert!(map.apply(v).is_zero());
        }
        if !basis.is_empty() {
            let m = LatticeMap::from_vectors(&basis, n).unwrap();
            prop_assert_eq!(m.rank(), basis.len());
            prop_assert_eq!(hnf(&saturate(&basis, n), n), hnf(&basis, n));
        }
    }

    #[test]
    fn saturate_is_idempotent(rows in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let n = rows[0].len();
        let vs: Vec<IntVector> = rows.iter().map(|r| iv(r)).collect();
        let once = saturate(&vs, n);
        prop_assert_eq!(hnf(&saturate(&once, n), n), hnf(&once, n));
    }

    #[test]
    fn quotient_kills_the_sublattice(rows in (1usize..=2, 2usize..=4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let n = rows[0].len();
        let vs: Vec<IntVector> = rows.iter().map(|r| iv(r)).filter(|v| !v.is_zero()).collect();
        let basis = saturate(&vs, n);
        let (rank, proj) = quotient_lattice(n, &basis).unwrap();
        prop_assert_eq!(rank, n - basis.len());
        prop_assert_eq!(proj.rank(), rank);
        for b in &basis {
            prop_assert!(proj.apply(b).is_zero());
        }
    }

    #[test]
    fn pairing_is_bilinear(m1 in prop::collection::vec(-5i64..=5, 3), m2 in prop::collection::vec(-5i64..=5, 3),
                           k in -4i64..=4, c in prop::collection::vec(-3i64..=3, 3)) {
        let c = CParam::from_integers(&c);
        let sum: Vec<i64> = m1.iter().zip(&m2).map(|(a, b)| k * a + b).collect();
        let p1 = c.pair(&iv(&m1)).unwrap();
        let p2 = c.pair(&iv(&m2)).unwrap();
        let ps = c.pair(&iv(&sum)).unwrap();
        let kr = Rational::from_integer(BigInt::from(k));
        for i in 0..ps.len() {
            prop_assert_eq!(&ps[i], &(&kr * &p1[i] + &p2[i]));
        }
    }

    #[test]
    fn biduality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let sigma = random_pointed_cone(&mut r, n, 4);
        let back = sigma.dual_cone().dual_cone();
        prop_assert!(back.contains_cone(&sigma) && sigma.contains_cone(&back));
    }

    #[test]
    fn cut_vectors_cut_out_faces(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let sigma = random_pointed_cone(&mut r, n, 4);
        for fd in sigma.faces() {
            for u in sigma.rays() {
                let p = fd.cut_vector.dot(u);
                if fd.face.contains_point(u) {
                    prop_assert!(p.is_zero());
                } else {
                    prop_assert!(p > BigInt::zero());
                }
            }
        }
    }

    #[test]
    fn faces_meet_in_faces(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let sigma = random_pointed_cone(&mut r, n, 4);
        let faces = sigma.faces();
        for a in &faces {
            for b in &faces {
                let meet = a.face.intersect(&b.face).unwrap();
                prop_assert!(sigma.has_face(&meet));
            }
        }
    }

    #[test]
    fn intersection_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let (_, a) = random_cone(&mut r, n, 3);
        let (_, b) = random_cone(&mut r, n, 3);
        let (_, c) = random_cone(&mut r, n, 3);
        let same = |x: &Cone, y: &Cone| x.contains_cone(y) && y.contains_cone(x);
        prop_assert!(same(&a.intersect(&b).unwrap(), &b.intersect(&a).unwrap()));
        prop_assert!(same(&a.intersect(&a).unwrap(), &a));
        let left = a.intersect(&b).unwrap().intersect(&c).unwrap();
        let right = a.intersect(&b.intersect(&c).unwrap()).unwrap();
        prop_assert!(same(&left, &right));
    }

    #[test]
    fn hilbert_elements_lie_in_the_semigroup(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let (gens, sigma) = random_cone(&mut r, n, 4);
        let s = AffineSemigroup::new(&sigma);
        for h in s.hilbert_basis() {
            prop_assert!(s.contains(h));
            prop_assert!(in_dual(&gens, &to_i64(h)));
        }
    }

    #[test]
    fn jc_contains_every_odd_pairing_point(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let (gens, sigma) = random_cone(&mut r, n, 3);
        let s = Arc::new(AffineSemigroup::new(&sigma));
        let c = random_c(&mut r, n);
        let jc = jc_generators(&s, &c).unwrap();
        for m in box_points(n, 4) {
            if in_dual(&gens, &m) && !c.annihilates(&iv(&m)) {
                prop_assert!(jc.contains(&iv(&m)), "{:?} missing from J_c", m);
            }
        }
    }

    #[test]
    fn minimalize_is_idempotent_and_order_free(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let (gens, sigma) = random_cone(&mut r, n, 3);
        let s = Arc::new(AffineSemigroup::new(&sigma));
        let mut pts: Vec<IntVector> = box_points(n, 3)
            .into_iter()
            .filter(|m| in_dual(&gens, m) && r.gen_bool(0.3))
            .map(|m| iv(&m))
            .collect();
        let once = minimalize(&pts, &s).unwrap();
        let twice = minimalize(once.gens(), &s).unwrap();
        prop_assert_eq!(once.gens(), twice.gens());
        pts.reverse();
        let reversed = minimalize(&pts, &s).unwrap();
        prop_assert_eq!(reversed.gens(), once.gens());
    }

    #[test]
    fn divisibility_is_a_preorder(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let (gens, sigma) = random_cone(&mut r, n, 3);
        let s = AffineSemigroup::new(&sigma);
        let pts: Vec<IntVector> = box_points(n, 2).into_iter().filter(|m| in_dual(&gens, m)).map(|m| iv(&m)).collect();
        for a in &pts {
            prop_assert!(s.divides(a, a).unwrap());
            for b in &pts {
                let ab = s.divides(a, b).unwrap();
                let ba = s.divides(b, a).unwrap();
                if ab && ba {
                    prop_assert_eq!(s.canonicalize(a), s.canonicalize(b));
                }
                for c in &pts {
                    if ab && s.divides(b, c).unwrap() {
                        prop_assert!(s.divides(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn supertorus_decomposition(rank in 1usize..=4, comps in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3)) {
        let comps: Vec<Vec<i64>> = comps.into_iter().map(|v| v[..rank].to_vec()).collect();
        let refs: Vec<&[i64]> = comps.iter().map(Vec::as_slice).collect();
        let t = SupertorusDatum::new(rank, CParam::from_integer_components(rank, &refs).unwrap()).unwrap();
        let (g, r) = decompose(&t);
        prop_assert!(g.is_unimodular());
        let gc = transformed_parameter(&t, &g).unwrap();
        prop_assert!(trailing_rows_vanish(&gc, r));
        let rows = gc.coordinate_rows();
        prop_assert_eq!(Subspace::span(gc.len(), &rows[..r]).dim(), r);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn localization_matches_stored_faces(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        let fan = x.fan();
        for s in 0..fan.len() {
            for &t in fan.faces_of(s) {
                let local = x.localize_index(s, t).unwrap();
                prop_assert_eq!(local, x.canonical_decoration(t).unwrap());
            }
        }
    }

    #[test]
    fn branch_dichotomy(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        for i in 0..x.fan().len() {
            let id = x.fan().id(i).to_string();
            let meets_perp = x.decoration_at(i).iter().any(|b| x.fan().cone(i).is_perp(b));
            let report = x.orbit_stabilizer(&id).unwrap();
            prop_assert_eq!(report.branch == OrbitBranch::EvenStabilizerSuperOrbit, meets_perp);
            prop_assert_eq!(report.stabilizer.is_even(), meets_perp);
        }
    }

    #[test]
    fn smooth_implies_split(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        prop_assert!(!x.is_smooth() || x.is_split());
    }

    #[test]
    fn ds_basis_is_the_complement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        for i in x.fan().maximal_cones() {
            let id = x.fan().id(i).to_string();
            let ds = x.ds_invariant(&id, 12).unwrap();
            let j = x.ideal(i).unwrap();
            if let Some(basis) = &ds.basis {
                prop_assert_eq!(basis.len(), finite_complement(&j, 12).unwrap().len());
                for m in basis {
                    prop_assert!(!j.contains(m));
                }
            }
        }
    }

    #[test]
    fn admissible_parameters_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        let space = x.admissible_c_space().unwrap();
        let n = x.rank();
        for b in space.integer_basis() {
            let c0 = CParam::from_integers(&to_i64(&b));
            prop_assert!(x.with_c(c0).unwrap().is_valid());
        }
        let outside = random_vector(&mut r, n, 3);
        let rv: Vec<Rational> = outside.iter().map(|&v| Rational::from_integer(v.into())).collect();
        if !space.contains(&rv) {
            let bad = x.with_c(CParam::from_integers(&outside));
            prop_assert!(bad.map(|y| !y.is_valid()).unwrap_or(true));
        }
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        let text = print_fan(&x);
        let back = parse_fan(&text).unwrap().into_decorated().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(print_fan(&back), text);
    }

    #[test]
    fn presentation_relations_vanish(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let sigma = random_pointed_cone(&mut r, n, 2);
        let s = Arc::new(AffineSemigroup::new(&sigma));
        let c = random_c(&mut r, n);
        let jc = jc_generators(&s, &c).unwrap();
        let data = presentation_from_semigroup(&s, jc.gens(), &c, DEFAULT_WITNESS_CAP).unwrap();
        // splitting the Hilbert basis again recovers the odd part inside B
        let (a_odd, _) = split_by_c(data.a(), data.c()).unwrap();
        for m in &a_odd {
            prop_assert!(data.b().contains(m));
        }
        let na = data.a().len();
        for l in kernel_l(&data) {
            let odd: BigInt = l.entries()[na..].iter().sum();
            prop_assert!(odd.is_zero());
        }
        if data.a().len() + data.b().len() <= 7 {
            for rel in binomials_in_box(&data, 1).unwrap() {
                prop_assert!(verify_relation(&data, &rel), "{} does not vanish", rel);
            }
        }
    }
}

fn orthant_fan(n: usize) -> Fan {
    let gens: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    Fan::affine(&Cone::from_rays(&gens, n).unwrap()).unwrap()
}

/// An orthant chart with a random parameter and a random admissible decoration.
fn random_orthant(r: &mut StdRng, n: usize, c: CParam) -> DecoratedFan {
    let fan = orthant_fan(n);
    let top = fan.maximal_cones()[0];
    let s = Arc::new(AffineSemigroup::new(fan.cone(top)));
    let options = decoration_options(&s, &c);
    let pick = options[r.gen_range(0..options.len())].clone();
    let torus = SupertorusDatum::new(n, c).unwrap();
    DecoratedFan::affine(torus, fan.cone(top), pick).unwrap()
}

fn scalar(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn jc_pulls_back(seed in any::<u64>(), rows in small_matrix(2, 2)) {
        let mut r = rng(seed);
        let phi = LatticeMap::from_i64(&[
            &[rows[0][0].abs(), rows[0][1].abs()],
            &[rows[1][0].abs(), rows[1][1].abs()],
        ]);
        let c = random_c(&mut r, 2);
        let src = random_orthant(&mut r, 2, c.clone());
        let c_dst = c.mapped(&phi).unwrap();
        prop_assume!(!c_dst.is_zero());
        let fan = orthant_fan(2);
        let top = fan.maximal_cones()[0];
        let s_top = Arc::new(AffineSemigroup::new(fan.cone(top)));
        let jc_top = jc_generators(&s_top, &c_dst).unwrap().gens().to_vec();
        let dst = DecoratedFan::affine(SupertorusDatum::new(2, c_dst).unwrap(), fan.cone(top), jc_top).unwrap();
        // J_c' decorations pull back into J_c, so the morphism always validates
        let f = validate_morphism(&src, &dst, &phi, &Rational::one()).unwrap();
        let dual = phi.transpose();
        for i in 0..src.fan().len() {
            let j = f.target_cone(i);
            let jc_src = jc_generators(src.semigroup(i), src.c()).unwrap();
            let jc_dst = jc_generators(dst.semigroup(j), dst.c()).unwrap();
            for g in jc_dst.gens() {
                prop_assert!(jc_src.contains(&dual.apply(g)));
            }
        }
    }

    #[test]
    fn composition_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_decorated_fan(&mut r, 3);
        let id = DecoratedFanMorphism::identity(&x);
        let n = x.rank();
        let mut flips = Vec::new();
        for _ in 0..3 {
            let a = if r.gen_bool(0.5) { 1 } else { -1 };
            flips.push(validate_morphism(&x, &x, &LatticeMap::identity(n), &scalar(a)).unwrap());
        }
        let (f, g, h) = (&flips[0], &flips[1], &flips[2]);
        prop_assert_eq!(&compose(&id, f).unwrap(), f);
        prop_assert_eq!(&compose(f, &id).unwrap(), f);
        let gf = compose(g, f).unwrap();
        prop_assert_eq!(gf.a(), &(g.a() * f.a()));
        prop_assert_eq!(compose(h, &gf).unwrap(), compose(&compose(h, g).unwrap(), f).unwrap());
    }

    #[test]
    fn fiber_square_commutes(k1 in 1i64..=3, k2 in 1i64..=3, a1 in -2i64..=2, a2 in -2i64..=2, q in 1i64..=3) {
        prop_assume!(a1 != 0 || a2 != 0);
        let ray = Cone::from_rays_i64(&[&[1]], 1).unwrap();
        let line = |c: Rational| {
            let torus = SupertorusDatum::new(1, CParam::new(1, vec![("l1".to_string(), vec![c])]).unwrap()).unwrap();
            let s = Arc::new(AffineSemigroup::new(&ray));
            let options = decoration_options(&s, torus.c());
            DecoratedFan::affine(torus, &ray, options[0].clone()).unwrap()
        };
        let y = line(scalar(q));
        // phi(c') = a^2 c
        let x1 = line(scalar(a1 * a1 * q) / scalar(k1));
        let x2 = line(scalar(a2 * a2 * q) / scalar(k2));
        let f1 = validate_morphism(&x1, &y, &LatticeMap::from_i64(&[&[k1]]), &scalar(a1));
        let f2 = validate_morphism(&x2, &y, &LatticeMap::from_i64(&[&[k2]]), &scalar(a2));
        let (Ok(f1), Ok(f2)) = (f1, f2) else {
            return Ok(());
        };
        let fp = fiber_product(&f1, &f2).unwrap();
        let left = compose(&f1, &fp.proj_first).unwrap();
        let right = compose(&f2, &fp.proj_second).unwrap();
        prop_assert_eq!(left.phi_bar(), right.phi_bar());
        prop_assert_eq!(left.a(), right.a());
    }
}
