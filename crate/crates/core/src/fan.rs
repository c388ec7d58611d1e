//! Fans: finite collections of strongly convex cones closed under faces.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polyhedral::Cone;

/// A fan in `N_R = R^rank` with named cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    ids: Vec<String>,
    cones: Vec<Cone>,
    /// `faces[i]` lists every `j` such that cone `j` is a face of cone `i`.
    faces: Vec<Vec<usize>>,
}

/// Outcome of the fan axiom checks. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanReport {
    pub violations: Vec<String>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "fan: ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "fan: {v}")?;
        }
        Ok(())
    }
}

/// Checks strong convexity, face closure and that pairwise intersections are
/// faces of both cones.
pub fn validate_fan(rank: usize, cones: &[(String, Cone)]) -> FanReport {
    let mut violations = Vec::new();
    let mut seen_ids: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, (id, cone)) in cones.iter().enumerate() {
        if let Some(j) = seen_ids.insert(id.as_str(), i) {
            violations.push(format!("duplicate cone id `{id}` (entries {j} and {i})"));
        }
        if cone.ambient_rank() != rank {
            violations.push(format!(
                "cone `{id}` has rank {} but the lattice has rank {rank}",
                cone.ambient_rank()
            ));
        }
    }
    if !violations.is_empty() {
        return FanReport { violations };
    }
    for (i, (id, cone)) in cones.iter().enumerate() {
        if let Some((other, _)) = cones[..i].iter().find(|(_, c)| c == cone) {
            violations.push(format!("cones `{other}` and `{id}` coincide"));
        }
        if !cone.is_strongly_convex() {
            violations.push(format!("cone `{id}` is not strongly convex"));
            continue;
        }
        for face in cone.faces() {
            if !cones.iter().any(|(_, c)| *c == face.face) {
                violations.push(format!("face {} of cone `{id}` is missing", face.face));
            }
        }
    }
    for i in 0..cones.len() {
        for j in (i + 1)..cones.len() {
            let (a_id, a) = &cones[i];
            let (b_id, b) = &cones[j];
            if !a.is_strongly_convex() || !b.is_strongly_convex() {
                continue;
            }
            let meet = a.intersect(b).expect("ranks checked");
            if !a.has_face(&meet) || !b.has_face(&meet) {
                violations.push(format!(
                    "intersection of `{a_id}` and `{b_id}` is not a face of both"
                ));
            }
        }
    }
    FanReport { violations }
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<(String, Cone)>) -> Result<Self> {
        let report = validate_fan(rank, &cones);
        if !report.is_valid() {
            return Err(Error::InvalidFan(report.violations.join("; ")));
        }
        let (ids, cones): (Vec<String>, Vec<Cone>) = cones.into_iter().unzip();
        let faces = cones
            .iter()
            .map(|c| {
                (0..cones.len())
                    .filter(|&j| c.has_face(&cones[j]))
                    .collect()
            })
            .collect();
        Ok(Self {
            rank,
            ids,
            cones,
            faces,
        })
    }

    /// The fan of all faces of one cone, named `sigma` for the cone itself
    /// and `tau<k>` for its proper faces.
    pub fn affine(cone: &Cone) -> Result<Self> {
        let faces = cone.faces();
        let last = faces.len() - 1;
        let cones = faces
            .into_iter()
            .enumerate()
            .map(|(k, f)| {
                let id = if k == last {
                    "sigma".to_string()
                } else {
                    format!("tau{k}")
                };
                (id, f.face)
            })
            .collect();
        Self::new(cone.ambient_rank(), cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownCone(id.to_string()))
    }

    pub fn find_cone(&self, cone: &Cone) -> Option<usize> {
        self.cones.iter().position(|c| c == cone)
    }

    /// Indices of the faces of cone `i`, including `i`.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        self.faces[sigma].contains(&tau)
    }

    /// Indices of cones having cone `i` as a face, including `i`.
    pub fn star(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.is_face(i, j)).collect()
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.is_face(i, j)))
            .collect()
    }

    /// Index of the smallest cone containing `cone`, if any.
    pub fn smallest_containing(&self, cone: &Cone) -> Option<usize> {
        (0..self.len())
            .filter(|&i| self.cones[i].contains_cone(cone))
            .min_by_key(|&i| (self.cones[i].dim(), self.faces[i].len()))
    }

    /// Whether every cone is smooth.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(Cone::is_smooth_cone)
    }
}
