//! Decorated fans `(N, c, Sigma, B)` and their invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::rational::Rational;
use crate::lattice::{
    format_vectors, integer_coordinates, quotient_lattice, rational_coordinates, CParam, IntVector,
    LatticeMap, Subspace,
};
use crate::polyhedral::Cone;
use crate::semigroup::{
    enumerate_intermediate_ideals, finite_complement, finiteness_witness, jc_generators,
    minimalize, AffineSemigroup, SIdeal,
};
use crate::supertorus::SupertorusDatum;

/// A fan with one decoration (a finite subset of `M`) per cone.
#[derive(Clone, Debug)]
pub struct DecoratedFan {
    torus: SupertorusDatum,
    fan: Fan,
    decorations: Vec<Vec<IntVector>>,
    semigroups: Vec<Arc<AffineSemigroup>>,
}

impl PartialEq for DecoratedFan {
    fn eq(&self, other: &Self) -> bool {
        self.torus == other.torus && self.fan == other.fan && self.decorations == other.decorations
    }
}

impl Eq for DecoratedFan {}

/// Which condition of the admissibility definition a violation concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// A decoration element outside `S_sigma`.
    Membership,
    /// (i): `J_c` is contained in the ideal generated by the decoration.
    Admissible,
    /// (ii): decorations of a cone and its face generate the same ideal of `S_tau`.
    Compatible,
    /// (iii): no decoration element divides another.
    Minimal,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Membership => "membership",
            Clause::Admissible => "(i)",
            Clause::Compatible => "(ii)",
            Clause::Minimal => "(iii)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub cone: String,
    pub face: Option<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.face {
            Some(face) => write!(
                f,
                "clause {} at face `{face}` of cone `{}`: {}",
                self.clause, self.cone, self.detail
            ),
            None => write!(
                f,
                "clause {} at cone `{}`: {}",
                self.clause, self.cone, self.detail
            ),
        }
    }
}

/// Every violated clause, in cone order. Empty means the decorations are
/// c-admissible.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecorationReport {
    pub violations: Vec<Violation>,
}

impl DecorationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DecorationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "decorations: ok");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// The DS invariant `A_0 / J` of the chart of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSInvariant {
    pub semigroup_generators: Vec<IntVector>,
    pub ideal_generators: Vec<IntVector>,
    pub finite: bool,
    /// Monomial basis of the quotient, when finite.
    pub basis: Option<Vec<IntVector>>,
}

impl DSInvariant {
    pub fn dimension(&self) -> Option<usize> {
        self.basis.as_ref().map(Vec::len)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitBranch {
    EvenStabilizerSuperOrbit,
    SuperStabilizerEvenOrbit,
}

impl fmt::Display for OrbitBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitBranch::EvenStabilizerSuperOrbit => "even_stabilizer_super_orbit",
            OrbitBranch::SuperStabilizerEvenOrbit => "super_stabilizer_even_orbit",
        })
    }
}

/// Stabilizer and orbit of a point in the orbit of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub branch: OrbitBranch,
    /// Supertorus over `N_sigma`, in the coordinates of `stabilizer_lattice`.
    pub stabilizer: SupertorusDatum,
    /// Hermite basis of `N_sigma` inside `N`.
    pub stabilizer_lattice: Vec<IntVector>,
    /// Supertorus over `N(sigma) = N / N_sigma`.
    pub orbit: SupertorusDatum,
    pub projection: LatticeMap,
}

impl OrbitReport {
    /// Label such as `T_{Z×0,1}`, naming `N_sigma` by its position in `N`.
    pub fn stabilizer_label(&self) -> String {
        let n = self.projection.domain_rank();
        let lattice = sublattice_label(&self.stabilizer_lattice, n);
        if self.stabilizer.c().is_zero() {
            format!("T_{{{lattice}}}")
        } else {
            format!("T_{{{lattice},{}}}", self.stabilizer.c())
        }
    }

    pub fn orbit_label(&self) -> String {
        self.orbit.to_string()
    }
}

fn sublattice_label(basis: &[IntVector], n: usize) -> String {
    let units: Option<Vec<usize>> = basis
        .iter()
        .map(|b| (0..n).find(|&i| *b == IntVector::unit(n, i)))
        .collect();
    match units {
        Some(idx) if idx.len() == n && n > 1 => format!("Z^{n}"),
        Some(idx) if idx.is_empty() && n > 1 => format!("0^{n}"),
        Some(idx) => (0..n)
            .map(|i| if idx.contains(&i) { "Z" } else { "0" })
            .collect::<Vec<_>>()
            .join("×"),
        None => format!("span{}", format_vectors(basis)),
    }
}

/// The closure of an orbit: an ordinary toric variety or a toric supervariety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitClosure {
    Even(Fan),
    Super(DecoratedFan),
}

fn check_c(rank: usize, torus: &SupertorusDatum) -> Result<()> {
    if torus.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: torus.rank(),
        });
    }
    Ok(())
}

impl DecoratedFan {
    /// Assembles a decorated fan with a decoration on every cone. The fan must
    /// already be valid; admissibility is checked separately by
    /// [`DecoratedFan::validate_decorations`].
    pub fn new(
        torus: SupertorusDatum,
        fan: Fan,
        decorations: BTreeMap<String, Vec<IntVector>>,
    ) -> Result<Self> {
        check_c(fan.rank(), &torus)?;
        for id in decorations.keys() {
            fan.index_of(id)?;
        }
        let mut decs = Vec::with_capacity(fan.len());
        for id in fan.ids() {
            let mut d = decorations.get(id).cloned().unwrap_or_default();
            if d.is_empty() {
                return Err(Error::EmptyDecoration(id.clone()));
            }
            if let Some(bad) = d.iter().find(|v| v.len() != fan.rank()) {
                return Err(Error::RankMismatch {
                    expected: fan.rank(),
                    found: bad.len(),
                });
            }
            d.sort();
            d.dedup();
            decs.push(d);
        }
        let semigroups = fan
            .cones()
            .iter()
            .map(|c| Arc::new(AffineSemigroup::new(c)))
            .collect();
        Ok(Self {
            torus,
            fan,
            decorations: decs,
            semigroups,
        })
    }

    /// Like [`DecoratedFan::new`], but cones without a decoration receive the
    /// localization of a decorated cone containing them. Conflicting
    /// localizations are an error.
    pub fn from_maximal(
        torus: SupertorusDatum,
        fan: Fan,
        decorations: BTreeMap<String, Vec<IntVector>>,
    ) -> Result<Self> {
        check_c(fan.rank(), &torus)?;
        let semigroups: Vec<Arc<AffineSemigroup>> = fan
            .cones()
            .iter()
            .map(|c| Arc::new(AffineSemigroup::new(c)))
            .collect();
        let mut full = decorations.clone();
        for (t, id) in fan.ids().iter().enumerate() {
            if decorations.contains_key(id) {
                continue;
            }
            let mut found: Option<Vec<IntVector>> = None;
            for s in fan.star(t) {
                let Some(dec) = decorations.get(fan.id(s)) else {
                    continue;
                };
                let local = minimalize(dec, &semigroups[t])
                    .map_err(|e| Error::InvalidDecorations(format!("cone `{}`: {e}", fan.id(s))))?
                    .gens()
                    .to_vec();
                match &found {
                    Some(prev) if *prev != local => {
                        return Err(Error::InvalidDecorations(format!(
                            "localizations to `{id}` disagree: {} vs {}",
                            format_vectors(prev),
                            format_vectors(&local)
                        )))
                    }
                    _ => found = Some(local),
                }
            }
            match found {
                Some(d) => {
                    full.insert(id.clone(), d);
                }
                None => return Err(Error::EmptyDecoration(id.clone())),
            }
        }
        let mut out = Self::new(torus, fan, full)?;
        out.semigroups = semigroups;
        Ok(out)
    }

    /// [`DecoratedFan::from_maximal`] followed by a full admissibility check.
    pub fn validated(
        torus: SupertorusDatum,
        fan: Fan,
        decorations: BTreeMap<String, Vec<IntVector>>,
    ) -> Result<Self> {
        let x = Self::from_maximal(torus, fan, decorations)?;
        let report = x.validate_decorations();
        if !report.is_valid() {
            return Err(Error::InvalidDecorations(report.to_string()));
        }
        Ok(x)
    }

    /// The affine decorated fan of a single cone, decorated by `decoration`
    /// on the cone (named `sigma`) and by localizations on its faces.
    pub fn affine(torus: SupertorusDatum, cone: &Cone, decoration: Vec<IntVector>) -> Result<Self> {
        let fan = Fan::affine(cone)?;
        Self::from_maximal(
            torus,
            fan,
            BTreeMap::from([("sigma".to_string(), decoration)]),
        )
    }

    /// `P^{n|1}`: the fan of `P^n` with the chart decorations `{0}` on
    /// `cone(e_1..e_n)` and `{-e_i}` on the chart omitting `e_i`.
    pub fn projective_space(n: usize, c: CParam) -> Result<Self> {
        let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        rays.push(-rays.iter().fold(IntVector::zero(n), |a, r| &a + r));
        let mut cones = Vec::new();
        let mut decorations = BTreeMap::new();
        // cones are spans of proper subsets of the n+1 rays
        for mask in 0u32..(1 << (n + 1)) - 1 {
            let members: Vec<usize> = (0..=n).filter(|&i| mask & (1 << i) != 0).collect();
            let gens: Vec<IntVector> = members.iter().map(|&i| rays[i].clone()).collect();
            let id = if members.is_empty() {
                "0".to_string()
            } else {
                members
                    .iter()
                    .map(|i| format!("r{i}"))
                    .collect::<Vec<_>>()
                    .join("_")
            };
            if members.len() == n {
                let omitted = (0..=n)
                    .find(|i| !members.contains(i))
                    .expect("proper subset");
                let dec = if omitted == n {
                    IntVector::zero(n)
                } else {
                    -IntVector::unit(n, omitted)
                };
                decorations.insert(id.clone(), vec![dec]);
            }
            cones.push((id, Cone::from_rays(&gens, n)?));
        }
        let fan = Fan::new(n, cones)?;
        Self::from_maximal(SupertorusDatum::new(n, c)?, fan, decorations)
    }

    pub fn torus(&self) -> &SupertorusDatum {
        &self.torus
    }

    pub fn c(&self) -> &CParam {
        self.torus.c()
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn decoration(&self, id: &str) -> Result<&[IntVector]> {
        Ok(&self.decorations[self.fan.index_of(id)?])
    }

    pub fn decoration_at(&self, i: usize) -> &[IntVector] {
        &self.decorations[i]
    }

    pub fn semigroup(&self, i: usize) -> &Arc<AffineSemigroup> {
        &self.semigroups[i]
    }

    /// The ideal `J^sigma` generated by the decoration of cone `i`.
    pub fn ideal(&self, i: usize) -> Result<SIdeal> {
        minimalize(&self.decorations[i], &self.semigroups[i])
    }

    /// The same fan and decorations over a different parameter.
    pub fn with_c(&self, c: CParam) -> Result<Self> {
        let torus = SupertorusDatum::new(self.rank(), c)?;
        Ok(Self {
            torus,
            ..self.clone()
        })
    }

    pub fn validate_decorations(&self) -> DecorationReport {
        let mut violations = Vec::new();
        let mut members_ok = vec![true; self.fan.len()];
        #[allow(clippy::needless_range_loop)]
        for i in 0..self.fan.len() {
            let s = &self.semigroups[i];
            let id = self.fan.id(i).to_string();
            let dec = &self.decorations[i];
            for b in dec {
                if !s.contains(b) {
                    members_ok[i] = false;
                    violations.push(Violation {
                        clause: Clause::Membership,
                        cone: id.clone(),
                        face: None,
                        detail: format!("{b} is not in S_sigma"),
                    });
                }
            }
            if !members_ok[i] {
                continue;
            }
            let jc = jc_generators(s, self.c()).expect("ranks agree");
            for g in jc.gens() {
                if !dec.iter().any(|b| s.le(b, g)) {
                    violations.push(Violation {
                        clause: Clause::Admissible,
                        cone: id.clone(),
                        face: None,
                        detail: format!("{g} lies in J_c but no decoration element divides it"),
                    });
                }
            }
            for a in dec {
                for b in dec {
                    if a != b && s.le(a, b) {
                        violations.push(Violation {
                            clause: Clause::Minimal,
                            cone: id.clone(),
                            face: None,
                            detail: format!("{a} divides {b}"),
                        });
                    }
                }
            }
        }
        for s in 0..self.fan.len() {
            for &t in self.fan.faces_of(s) {
                if t == s || !members_ok[s] || !members_ok[t] {
                    continue;
                }
                let st = &self.semigroups[t];
                let upper = &self.decorations[s];
                let lower = &self.decorations[t];
                let mut push = |detail: String| {
                    violations.push(Violation {
                        clause: Clause::Compatible,
                        cone: self.fan.id(s).to_string(),
                        face: Some(self.fan.id(t).to_string()),
                        detail,
                    })
                };
                for a in lower {
                    if !upper.iter().any(|b| st.le(b, a)) {
                        push(format!(
                            "{a} is not divisible in S_tau by the cone's decoration"
                        ));
                    }
                }
                for b in upper {
                    if !lower.iter().any(|a| st.le(a, b)) {
                        push(format!(
                            "{b} is not divisible in S_tau by the face's decoration"
                        ));
                    }
                }
            }
        }
        DecorationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate_decorations().is_valid()
    }

    /// Minimal generators in `S_tau` of the ideal generated by `B_sigma`.
    pub fn localize_decoration(&self, sigma: &str, tau: &str) -> Result<Vec<IntVector>> {
        let s = self.fan.index_of(sigma)?;
        let t = self.fan.index_of(tau)?;
        self.localize_index(s, t)
    }

    pub fn localize_index(&self, s: usize, t: usize) -> Result<Vec<IntVector>> {
        if !self.fan.is_face(t, s) {
            return Err(Error::NotAFace {
                face: self.fan.id(t).to_string(),
                cone: self.fan.id(s).to_string(),
            });
        }
        Ok(minimalize(&self.decorations[s], &self.semigroups[t])?
            .gens()
            .to_vec())
    }

    /// Canonical form of the stored decoration of cone `i`.
    pub fn canonical_decoration(&self, i: usize) -> Result<Vec<IntVector>> {
        Ok(self.ideal(i)?.gens().to_vec())
    }

    pub fn is_split(&self) -> bool {
        self.decorations.iter().all(|d| d.len() == 1)
    }

    pub fn is_smooth(&self) -> bool {
        self.is_split() && self.fan.is_smooth()
    }

    pub fn ds_invariant(&self, sigma: &str, k_max: u32) -> Result<DSInvariant> {
        let i = self.fan.index_of(sigma)?;
        let ideal = self.ideal(i)?;
        let finite = finiteness_witness(&ideal, k_max)?.is_some();
        let basis = if finite {
            Some(finite_complement(&ideal, k_max)?)
        } else {
            None
        };
        Ok(DSInvariant {
            semigroup_generators: self.semigroups[i].hilbert_basis().to_vec(),
            ideal_generators: ideal.gens().to_vec(),
            finite,
            basis,
        })
    }

    /// The characters of the fiber of the fermionic sheaf at a point of the
    /// orbit of `sigma`, as elements of `M / (sigma^perp ∩ M)` in the dual
    /// coordinates of the Hermite basis of `N_sigma`.
    pub fn fiber_of_j(&self, sigma: &str) -> Result<Vec<IntVector>> {
        let i = self.fan.index_of(sigma)?;
        let basis = self.fan.cone(i).span_lattice();
        let mut out: Vec<IntVector> = self.decorations[i]
            .iter()
            .map(|b| IntVector::new(basis.iter().map(|n| b.dot(n)).collect()))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn orbit_stabilizer(&self, sigma: &str) -> Result<OrbitReport> {
        let i = self.fan.index_of(sigma)?;
        let cone = self.fan.cone(i);
        let n = self.rank();
        let n_sigma = cone.span_lattice();
        let d = n_sigma.len();
        let (q, projection) = quotient_lattice(n, &n_sigma)?;
        let meets_perp = self.decorations[i].iter().any(|b| cone.is_perp(b));
        let (branch, stabilizer, orbit) = if meets_perp {
            (
                OrbitBranch::EvenStabilizerSuperOrbit,
                SupertorusDatum::even(d),
                SupertorusDatum::new(q, self.c().mapped(&projection)?)?,
            )
        } else {
            let c = self
                .c()
                .try_map_components(d, |v| rational_coordinates(&n_sigma, v))
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "c does not lie in the span of N_sigma for cone `{sigma}`"
                    ))
                })?;
            (
                OrbitBranch::SuperStabilizerEvenOrbit,
                SupertorusDatum::new(d, c)?,
                SupertorusDatum::even(q),
            )
        };
        Ok(OrbitReport {
            branch,
            stabilizer,
            stabilizer_lattice: n_sigma,
            orbit,
            projection,
        })
    }

    pub fn orbit_closure(&self, sigma: &str) -> Result<OrbitClosure> {
        let report = self.orbit_stabilizer(sigma)?;
        let i = self.fan.index_of(sigma)?;
        let cone = self.fan.cone(i);
        let p = &report.projection;
        let q = p.codomain_rank();
        let star = self.fan.star(i);
        let mut cones = Vec::new();
        for &j in &star {
            let images: Vec<IntVector> = self
                .fan
                .cone(j)
                .generators()
                .iter()
                .map(|g| p.apply(g))
                .collect();
            cones.push((self.fan.id(j).to_string(), Cone::from_rays(&images, q)?));
        }
        let fan = Fan::new(q, cones)?;
        if report.branch == OrbitBranch::SuperStabilizerEvenOrbit {
            return Ok(OrbitClosure::Even(fan));
        }
        let dual_basis: Vec<IntVector> = (0..q).map(|k| p.row(k)).collect();
        let mut decorations = BTreeMap::new();
        for &j in &star {
            let kept: Vec<IntVector> = self.decorations[j]
                .iter()
                .filter(|b| cone.is_perp(b))
                .map(|b| {
                    let y = integer_coordinates(&dual_basis, b).ok_or_else(|| {
                        Error::Internal(format!("{b} is not a character of N(sigma)"))
                    })?;
                    Ok(IntVector::new(y))
                })
                .collect::<Result<_>>()?;
            if kept.is_empty() {
                return Err(Error::InvalidDecorations(format!(
                    "decoration of `{}` does not meet the orthogonal complement of `{sigma}`",
                    self.fan.id(j)
                )));
            }
            decorations.insert(self.fan.id(j).to_string(), kept);
        }
        let x = DecoratedFan::new(report.orbit.clone(), fan, decorations)?;
        let canonical: BTreeMap<String, Vec<IntVector>> = (0..x.fan.len())
            .map(|k| Ok((x.fan.id(k).to_string(), x.canonical_decoration(k)?)))
            .collect::<Result<_>>()?;
        Ok(OrbitClosure::Super(DecoratedFan::new(
            report.orbit,
            x.fan,
            canonical,
        )?))
    }

    /// Rational subspace of parameters `c_0` for which the decorations satisfy
    /// condition (i) on every cone.
    pub fn admissible_c_space(&self) -> Result<Subspace> {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..self.fan.len() {
            let ideal = self.ideal(i)?;
            for h in self.semigroups[i].hilbert_basis() {
                if !ideal.contains(h) {
                    rows.push(h.to_rational());
                }
            }
        }
        Ok(Subspace::annihilator(self.rank(), &rows))
    }

    /// Degree of the fermionic line bundle on `P^1`: `O(-(b_+ - b_-))` where
    /// `b_+` and `b_-` decorate `cone(1)` and `cone(-1)`.
    pub fn degree(&self) -> Result<BigInt> {
        let not_applicable =
            || Error::NotApplicable("degree is defined only for complete fans of rank 1".into());
        if self.rank() != 1 {
            return Err(not_applicable());
        }
        let plus = Cone::from_rays_i64(&[&[1]], 1)?;
        let minus = Cone::from_rays_i64(&[&[-1]], 1)?;
        let p = self.fan.find_cone(&plus).ok_or_else(not_applicable)?;
        let m = self.fan.find_cone(&minus).ok_or_else(not_applicable)?;
        let single = |i: usize| -> Result<BigInt> {
            match self.decorations[i].as_slice() {
                [b] => Ok(b.entries()[0].clone()),
                _ => Err(Error::NotApplicable("decorations are not split".into())),
            }
        };
        Ok(-(single(p)? - single(m)?))
    }
}

/// Every c-admissible decoration of `fan` obtained by choosing an
/// intermediate ideal on each maximal cone, keeping the consistent choices.
pub fn enumerate_decorations(
    torus: &SupertorusDatum,
    fan: &Fan,
    split_only: bool,
    k_max: u32,
) -> Result<Vec<DecoratedFan>> {
    let maximal = fan.maximal_cones();
    let mut options: Vec<Vec<Vec<IntVector>>> = Vec::new();
    for &i in &maximal {
        let s = Arc::new(AffineSemigroup::new(fan.cone(i)));
        let ideals = enumerate_intermediate_ideals(&s, torus.c(), k_max)?;
        options.push(ideals.iter().map(|j| j.gens().to_vec()).collect());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; maximal.len()];
    loop {
        let decorations: BTreeMap<String, Vec<IntVector>> = maximal
            .iter()
            .zip(&choice)
            .enumerate()
            .map(|(k, (&i, &c))| (fan.id(i).to_string(), options[k][c].clone()))
            .collect();
        if let Ok(x) = DecoratedFan::from_maximal(torus.clone(), fan.clone(), decorations) {
            if x.is_valid() && (!split_only || x.is_split()) {
                out.push(x);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
