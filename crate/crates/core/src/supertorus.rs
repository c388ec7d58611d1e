//! Supertori `T_{N,c}` and their morphisms `(phi, a)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::normal_form::hermite;
use crate::lattice::rational::format_rational_short;
use crate::lattice::{CParam, LatticeMap, Rational};

/// A supertorus with even part `T_N`, `N = Z^rank`, and odd square `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupertorusDatum {
    rank: usize,
    c: CParam,
}

impl SupertorusDatum {
    pub fn new(rank: usize, c: CParam) -> Result<Self> {
        if c.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: c.rank(),
            });
        }
        Ok(Self { rank, c })
    }

    /// The purely even torus `T_N`.
    pub fn even(rank: usize) -> Self {
        Self {
            rank,
            c: CParam::zero(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c(&self) -> &CParam {
        &self.c
    }

    pub fn is_even(&self) -> bool {
        self.c.is_zero()
    }
}

impl fmt::Display for SupertorusDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lattice = match self.rank {
            0 => "0".to_string(),
            1 => "Z".to_string(),
            r => format!("Z^{r}"),
        };
        if self.c.is_zero() {
            write!(f, "T_{{{lattice}}}")
        } else {
            write!(f, "T_{{{lattice},{}}}", self.c)
        }
    }
}

/// A supergroup morphism `T_{N,c} -> T_{N',c'}` given by a lattice map and
/// the odd scalar `a`, subject to `phi(c) = a^2 c'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupertorusMorphism {
    src: SupertorusDatum,
    dst: SupertorusDatum,
    phi_bar: LatticeMap,
    a: Rational,
}

impl SupertorusMorphism {
    pub fn src(&self) -> &SupertorusDatum {
        &self.src
    }

    pub fn dst(&self) -> &SupertorusDatum {
        &self.dst
    }

    pub fn phi_bar(&self) -> &LatticeMap {
        &self.phi_bar
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn identity(t: &SupertorusDatum) -> Self {
        Self {
            src: t.clone(),
            dst: t.clone(),
            phi_bar: LatticeMap::identity(t.rank),
            a: Rational::one(),
        }
    }
}

/// Checks dimensions and the equation `phi(c) = a^2 c'`. Components of `c`
/// and `c'` are matched by transcendental symbol.
pub fn validate_supertorus_morphism(
    src: &SupertorusDatum,
    dst: &SupertorusDatum,
    phi_bar: &LatticeMap,
    a: &Rational,
) -> Result<SupertorusMorphism> {
    if phi_bar.domain_rank() != src.rank {
        return Err(Error::RankMismatch {
            expected: src.rank,
            found: phi_bar.domain_rank(),
        });
    }
    if phi_bar.codomain_rank() != dst.rank {
        return Err(Error::RankMismatch {
            expected: dst.rank,
            found: phi_bar.codomain_rank(),
        });
    }
    let lhs = src.c.mapped(phi_bar)?;
    let rhs = dst.c.scaled(&(a * a));
    if lhs != rhs {
        return Err(Error::CEquation(format!(
            "phi(c) = {lhs} but a^2 c' = {rhs} (a = {})",
            format_rational_short(a)
        )));
    }
    Ok(SupertorusMorphism {
        src: src.clone(),
        dst: dst.clone(),
        phi_bar: phi_bar.clone(),
        a: a.clone(),
    })
}

/// `g ∘ f`.
pub fn compose(g: &SupertorusMorphism, f: &SupertorusMorphism) -> Result<SupertorusMorphism> {
    if f.dst != g.src {
        return Err(Error::ChainMismatch);
    }
    validate_supertorus_morphism(
        &f.src,
        &g.dst,
        &g.phi_bar.compose(&f.phi_bar)?,
        &(&f.a * &g.a),
    )
}

/// A unimodular `g` and `r` such that `g c` has nonzero coordinates only in
/// the first `r` rows, where `r` is the rational rank of the coordinate
/// matrix of `c`.
pub fn decompose(t: &SupertorusDatum) -> (LatticeMap, usize) {
    let rows = t.c.coordinate_rows();
    let k = t.c.len();
    // clear denominators column by column; this does not change row relations
    let scales: Vec<BigInt> = (0..k)
        .map(|j| {
            rows.iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(r[j].denom()))
        })
        .collect();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(&scales)
                .map(|(x, s)| (x * Rational::from_integer(s.clone())).to_integer())
                .collect()
        })
        .collect();
    let e = hermite(&int_rows, k);
    let r = e.rank();
    let g = LatticeMap::new(e.transform, t.rank).expect("square transform");
    (g, r)
}

pub fn is_indecomposable(t: &SupertorusDatum) -> bool {
    t.rank > 0 && decompose(t).1 == t.rank
}

/// The image `g c` of a decomposition, for inspection.
pub fn transformed_parameter(t: &SupertorusDatum, g: &LatticeMap) -> Result<CParam> {
    t.c.mapped(g)
}

/// Whether all coordinates of `c` beyond the first `r` vanish.
pub fn trailing_rows_vanish(c: &CParam, r: usize) -> bool {
    c.coordinate_rows()
        .iter()
        .skip(r)
        .all(|row| row.iter().all(Zero::is_zero))
}
