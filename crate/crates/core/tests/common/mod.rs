//! Random cones, fans and decorations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use superfan::semigroup::{enumerate_intermediate_ideals, finite_complement, jc_generators};
use superfan::{AffineSemigroup, CParam, Cone, DecoratedFan, Fan, IntVector, SupertorusDatum};

pub fn iv(xs: &[i64]) -> IntVector {
    IntVector::from_i64(xs)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// A cone on 1 to `n + 1` random generators, not necessarily strongly convex.
pub fn random_cone<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (Vec<Vec<i64>>, Cone) {
    let k = rng.gen_range(1..=n + 1);
    let gens: Vec<Vec<i64>> = (0..k).map(|_| random_vector(rng, n, bound)).collect();
    let vs: Vec<IntVector> = gens.iter().map(|g| iv(g)).collect();
    let cone = Cone::from_rays(&vs, n).expect("uniform rank");
    (gens, cone)
}

pub fn random_pointed_cone<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Cone {
    loop {
        let (_, cone) = random_cone(rng, n, bound);
        if cone.is_strongly_convex() {
            return cone;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A complete fan in the plane on 3 to 5 random primitive rays.
pub fn random_complete_plane_fan<R: Rng>(rng: &mut R, bound: i64) -> Fan {
    loop {
        let k = rng.gen_range(3..=5);
        let mut rays: Vec<(f64, Vec<i64>)> = Vec::new();
        for _ in 0..k {
            let v = random_vector(rng, 2, bound);
            let g = gcd(v[0], v[1]);
            let v = vec![v[0] / g, v[1] / g];
            if rays.iter().all(|(_, w)| *w != v) {
                rays.push(((v[1] as f64).atan2(v[0] as f64), v));
            }
        }
        rays.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
        let m = rays.len();
        if m < 3 {
            continue;
        }
        // consecutive rays must span strictly convex sectors
        let convex = (0..m).all(|i| {
            let (a, b) = (&rays[i].1, &rays[(i + 1) % m].1);
            a[0] * b[1] - a[1] * b[0] > 0
        });
        if !convex {
            continue;
        }
        let mut cones = vec![("0".to_string(), Cone::zero(2))];
        for (i, (_, r)) in rays.iter().enumerate() {
            cones.push((format!("r{i}"), Cone::from_rays(&[iv(r)], 2).unwrap()));
        }
        for i in 0..m {
            let (a, b) = (&rays[i].1, &rays[(i + 1) % m].1);
            cones.push((
                format!("s{i}"),
                Cone::from_rays(&[iv(a), iv(b)], 2).unwrap(),
            ));
        }
        return Fan::new(2, cones).expect("sectors form a fan");
    }
}

pub fn p1_fan() -> Fan {
    Fan::new(
        1,
        vec![
            ("0".into(), Cone::zero(1)),
            ("pos".into(), Cone::from_rays_i64(&[&[1]], 1).unwrap()),
            ("neg".into(), Cone::from_rays_i64(&[&[-1]], 1).unwrap()),
        ],
    )
    .unwrap()
}

pub fn random_fan<R: Rng>(rng: &mut R, bound: i64) -> Fan {
    match rng.gen_range(0..6) {
        0 => p1_fan(),
        1 | 2 => random_complete_plane_fan(rng, bound),
        _ => {
            let n = rng.gen_range(1..=3);
            Fan::affine(&random_pointed_cone(rng, n, bound)).unwrap()
        }
    }
}

pub fn random_c<R: Rng>(rng: &mut R, n: usize) -> CParam {
    let comps: Vec<Vec<i64>> = if rng.gen_bool(0.2) && n > 1 {
        vec![random_vector(rng, n, 2), random_vector(rng, n, 2)]
    } else {
        vec![random_vector(rng, n, 2)]
    };
    let refs: Vec<&[i64]> = comps.iter().map(Vec::as_slice).collect();
    CParam::from_integer_components(n, &refs).unwrap()
}

/// Decoration choices for one cone: the intermediate ideals when the
/// complement of `J_c` is finite and small, else the generators of `J_c`.
pub fn decoration_options(s: &Arc<AffineSemigroup>, c: &CParam) -> Vec<Vec<IntVector>> {
    let jc = jc_generators(s, c).unwrap();
    if jc.gens().is_empty() {
        // J_c = 0 and decorations are nonempty; the unit ideal always works
        return vec![vec![IntVector::zero(s.rank())]];
    }
    let small = matches!(finite_complement(&jc, 12), Ok(ref comp) if comp.len() <= 6);
    if small {
        if let Ok(ideals) = enumerate_intermediate_ideals(s, c, 12) {
            return ideals.iter().map(|j| j.gens().to_vec()).collect();
        }
    }
    vec![jc.gens().to_vec()]
}

/// A random valid decorated fan; random per-cone choices that do not glue
/// fall back to `J_c` everywhere.
pub fn random_decorated_fan<R: Rng>(rng: &mut R, bound: i64) -> DecoratedFan {
    let fan = random_fan(rng, bound);
    let c = random_c(rng, fan.rank());
    let torus = SupertorusDatum::new(fan.rank(), c.clone()).unwrap();
    let maximal = fan.maximal_cones();
    let mut random_choice = BTreeMap::new();
    let mut jc_choice = BTreeMap::new();
    for &i in &maximal {
        let s = Arc::new(AffineSemigroup::new(fan.cone(i)));
        let options = decoration_options(&s, &c);
        let pick = options[rng.gen_range(0..options.len())].clone();
        random_choice.insert(fan.id(i).to_string(), pick);
        jc_choice.insert(
            fan.id(i).to_string(),
            jc_generators(&s, &c).unwrap().gens().to_vec(),
        );
    }
    if let Ok(x) = DecoratedFan::from_maximal(torus.clone(), fan.clone(), random_choice) {
        if x.is_valid() {
            return x;
        }
    }
    DecoratedFan::validated(torus, fan, jc_choice).expect("J_c decorations glue")
}

/// Lattice points of `[-b, b]^n`.
pub fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_i64(v: &IntVector) -> Vec<i64> {
    v.to_i64().expect("small entries")
}

/// `m` lies in `sigma^∨` iff it pairs nonnegatively with every generator of `sigma`.
pub fn in_dual(sigma_gens: &[Vec<i64>], m: &[i64]) -> bool {
    sigma_gens.iter().all(|g| dot(g, m) >= 0)
}
