//! The odd-square parameter `c` in its formal-transcendental model.
//!
//! `c = sum_t c^(t) * lambda_t` where the `lambda_t` are formal symbols that
//! are linearly independent over the rationals and every `c^(t)` is a
//! rational vector. A pairing `<m, c>` then vanishes exactly when every
//! rational coordinate `<m, c^(t)>` does.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::rational::{format_rational_short, Rational};
use super::{IntVector, LatticeMap};
use crate::error::{Error, Result};

/// Symbol-indexed rational components. Zero components are dropped so that
/// structural equality coincides with equality of parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CParam {
    rank: usize,
    components: BTreeMap<String, Vec<Rational>>,
}

impl CParam {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            components: BTreeMap::new(),
        }
    }

    pub fn new<S: Into<String>>(
        rank: usize,
        components: impl IntoIterator<Item = (S, Vec<Rational>)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (symbol, vector) in components {
            let symbol = symbol.into();
            if vector.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: vector.len(),
                });
            }
            if out.contains_key(&symbol) {
                return Err(Error::Invalid(format!(
                    "duplicate transcendental `{symbol}`"
                )));
            }
            if vector.iter().any(|x| !x.is_zero()) {
                out.insert(symbol, vector);
            }
        }
        Ok(Self {
            rank,
            components: out,
        })
    }

    /// Single-symbol parameter with integer coordinates, over the symbol `l1`.
    pub fn from_integers(coords: &[i64]) -> Self {
        let v = coords
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect();
        Self::new(coords.len(), [("l1", v)]).expect("consistent rank")
    }

    /// Parameter with one symbol `l{t+1}` per integer vector.
    pub fn from_integer_components(rank: usize, comps: &[&[i64]]) -> Result<Self> {
        Self::new(
            rank,
            comps.iter().enumerate().map(|(t, v)| {
                (
                    format!("l{}", t + 1),
                    v.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect(),
                )
            }),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.components.keys().map(String::as_str)
    }

    pub fn components(&self) -> impl Iterator<Item = (&str, &[Rational])> {
        self.components
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn component(&self, symbol: &str) -> Option<&[Rational]> {
        self.components.get(symbol).map(Vec::as_slice)
    }

    /// Number of nonzero transcendental components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `<m, c^(t)>` for every component, in symbol order.
    pub fn pair(&self, m: &IntVector) -> Result<Vec<Rational>> {
        if m.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: m.len(),
            });
        }
        Ok(self
            .components
            .values()
            .map(|v| {
                m.entries()
                    .iter()
                    .zip(v)
                    .map(|(a, b)| b * a)
                    .sum::<Rational>()
            })
            .collect())
    }

    /// Whether `<m, c> = 0`. Panics on rank mismatch.
    pub fn annihilates(&self, m: &IntVector) -> bool {
        self.pair(m)
            .expect("rank checked by caller")
            .iter()
            .all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self::new(
            self.rank,
            self.components
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|x| x * factor).collect())),
        )
        .expect("rank preserved")
    }

    /// Image of `c` under a lattice map, extended rationally.
    pub fn mapped(&self, map: &LatticeMap) -> Result<Self> {
        if map.domain_rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: map.domain_rank(),
                found: self.rank,
            });
        }
        Self::new(
            map.codomain_rank(),
            self.components
                .iter()
                .map(|(k, v)| (k.clone(), map.apply_rational(v))),
        )
    }

    /// The `rank x k` coordinate matrix, one column per component.
    pub fn coordinate_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rank)
            .map(|i| self.components.values().map(|v| v[i].clone()).collect())
            .collect()
    }

    /// Rebuilds a parameter of a new rank by transforming each component.
    pub fn try_map_components(
        &self,
        rank: usize,
        mut f: impl FnMut(&[Rational]) -> Option<Vec<Rational>>,
    ) -> Option<Self> {
        let mut comps = Vec::new();
        for (k, v) in &self.components {
            comps.push((k.clone(), f(v)?));
        }
        Self::new(rank, comps).ok()
    }

    /// Componentwise sum, unifying symbols by name.
    pub fn add(&self, other: &CParam) -> Result<Self> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut merged = self.components.clone();
        for (k, v) in &other.components {
            let entry = merged
                .entry(k.clone())
                .or_insert_with(|| vec![Rational::zero(); self.rank]);
            for (a, b) in entry.iter_mut().zip(v) {
                *a += b;
            }
        }
        Self::new(self.rank, merged)
    }
}

/// `<m, c^(t)>` for each transcendental component of `c`.
pub fn pair(m: &IntVector, c: &CParam) -> Result<Vec<Rational>> {
    c.pair(m)
}

impl fmt::Display for CParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let render = |v: &[Rational]| -> String {
            if v.len() == 1 {
                format_rational_short(&v[0])
            } else {
                let parts: Vec<String> = v.iter().map(format_rational_short).collect();
                format!("({})", parts.join(","))
            }
        };
        if self.components.len() == 1 {
            let v = self.components.values().next().expect("one component");
            return write!(f, "{}", render(v));
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(k, v)| format!("{k}:{}", render(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
