//! Double description: extreme rays and lineality of `{x : a.x >= 0 for all a}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::normal_form::hermite;
use crate::lattice::rational::{primitive_integer, solve_columns, Rational};
use crate::lattice::{saturate, IntVector};

fn combine(alpha: &BigInt, x: &IntVector, beta: &BigInt, y: &IntVector) -> IntVector {
    let v = IntVector::new(
        x.entries()
            .iter()
            .zip(y.entries())
            .map(|(a, b)| alpha * a - beta * b)
            .collect(),
    );
    v.primitive()
}

fn rank_of(rows: &[&IntVector], n: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    hermite(&rows, n).rank()
}

/// Returns `(lineality, rays)` of the cone cut out by `constraints` in `Z^n`.
/// The lineality basis is saturated and in Hermite form; rays are primitive,
/// projected orthogonally off the lineality space, deduplicated and sorted.
pub(crate) fn extreme_rays(
    constraints: &[IntVector],
    n: usize,
) -> (Vec<IntVector>, Vec<IntVector>) {
    let mut lin: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut seen: Vec<&IntVector> = Vec::new();

    for a in constraints.iter().filter(|a| !a.is_zero()) {
        seen.push(a);
        if let Some(pos) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lin.remove(pos);
            let mut s0 = a.dot(&l0);
            if s0.is_negative() {
                l0 = -&l0;
                s0 = -s0;
            }
            lin = lin
                .iter()
                .map(|l| combine(&s0, l, &a.dot(l), &l0))
                .collect();
            rays = rays
                .iter()
                .map(|r| combine(&s0, r, &a.dot(r), &l0))
                .collect();
            rays.push(l0);
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            continue;
        }
        // face dimension test: active constraints on a 2-face have rank n - lin - 2
        let target = n - lin.len();
        let mut next = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                next.push(r.clone());
            }
        }
        for (i, p) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !values[j].is_negative() {
                    continue;
                }
                let active: Vec<&IntVector> = seen[..seen.len() - 1]
                    .iter()
                    .copied()
                    .filter(|c| c.dot(p).is_zero() && c.dot(q).is_zero())
                    .collect();
                if target < 2 || rank_of(&active, n) != target - 2 {
                    continue;
                }
                next.push(combine(&values[i], q, &values[j], p));
            }
        }
        rays = next;
    }

    let lineality = saturate(&lin, n);
    let mut out: Vec<IntVector> = rays
        .iter()
        .map(|r| project_off(r, &lineality))
        .filter(|r| !r.is_zero())
        .collect();
    out.sort();
    out.dedup();
    (lineality, out)
}

/// Primitive integer direction of the orthogonal projection of `v` onto the
/// complement of `span(basis)`.
pub(crate) fn project_off(v: &IntVector, basis: &[IntVector]) -> IntVector {
    if basis.is_empty() {
        return v.primitive();
    }
    // solve (W W^T) y = W v, then v - W^T y
    let gram_cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            basis
                .iter()
                .map(|c| Rational::from_integer(b.dot(c)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = basis
        .iter()
        .map(|b| Rational::from_integer(b.dot(v)))
        .collect();
    let y = solve_columns(&gram_cols, &rhs).expect("Gram matrix of a basis is invertible");
    let mut w = v.to_rational();
    for (coef, b) in y.iter().zip(basis) {
        for (wi, bi) in w.iter_mut().zip(b.entries()) {
            *wi -= coef * bi;
        }
    }
    primitive_integer(&w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> IntVector {
        IntVector::from_i64(xs)
    }

    #[test]
    fn orthant() {
        let (lin, rays) = extreme_rays(&[iv(&[1, 0]), iv(&[0, 1])], 2);
        assert!(lin.is_empty());
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn no_constraints_is_everything() {
        let (lin, rays) = extreme_rays(&[], 3);
        assert_eq!(lin.len(), 3);
        assert!(rays.is_empty());
    }

    #[test]
    fn half_plane() {
        let (lin, rays) = extreme_rays(&[iv(&[1, 1])], 2);
        assert_eq!(lin.len(), 1);
        assert_eq!(rays, vec![iv(&[1, 1])]);
    }

    #[test]
    fn square_pyramid() {
        // cone over a square: four facets, four rays
        let cons = [
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        let (lin, rays) = extreme_rays(&cons, 3);
        assert!(lin.is_empty());
        assert_eq!(
            rays,
            vec![
                iv(&[-1, -1, 1]),
                iv(&[-1, 1, 1]),
                iv(&[1, -1, 1]),
                iv(&[1, 1, 1])
            ]
        );
    }
}
