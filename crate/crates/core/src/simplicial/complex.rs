use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A simplex as its sorted list of vertex ids. Orientation is the sorted order.
pub type Simplex = Vec<u32>;

/// A finite simplicial complex, stored degree by degree.
///
/// Simplices within a degree are kept in lexicographic order, and that order
/// is the chain basis used by every chain complex built from this complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ComplexJson", try_from = "ComplexJson")]
pub struct SimplicialComplex {
    vertices: BTreeSet<u32>,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

/// The JSON shape `{"vertices":[ids],"simplices":[[ids]...]}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    #[serde(default)]
    pub vertices: Vec<u32>,
    pub simplices: Vec<Vec<u32>>,
}

fn faces_into(s: &[u32], out: &mut BTreeSet<Simplex>) {
    if s.is_empty() || !out.insert(s.to_vec()) {
        return;
    }
    if s.len() == 1 {
        return;
    }
    for skip in 0..s.len() {
        let f: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        faces_into(&f, out);
    }
}

fn canonical(s: &[u32]) -> Result<Simplex> {
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) || v.is_empty() {
        return Err(Error::DegenerateSimplex(s.to_vec()));
    }
    Ok(v)
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given simplices. Vertex lists may be in any
    /// order; repeated vertices inside a simplex are rejected.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut all = BTreeSet::new();
        for s in simplices {
            faces_into(&canonical(s.as_ref())?, &mut all);
        }
        Ok(Self::from_closed_set(all))
    }

    /// Builds from a set already known to be downward closed and sorted.
    pub fn from_closed_set(set: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        let mut vertices = BTreeSet::new();
        for s in set {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            if d == 0 {
                vertices.insert(s[0]);
            }
            by_dim[d].push(s);
        }
        let index = by_dim
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, by_dim, index }
    }

    /// Loads the canonical JSON form: faces are implied, listed vertices may
    /// be isolated, duplicates are rejected, every simplex must use listed
    /// vertices when a vertex list is given.
    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let listed: BTreeSet<u32> = j.vertices.iter().copied().collect();
        if listed.len() != j.vertices.len() {
            return Err(Error::DuplicateSimplex(vec![]));
        }
        let mut seen = BTreeSet::new();
        for s in &j.simplices {
            let c = canonical(s)?;
            if !seen.insert(c.clone()) {
                return Err(Error::DuplicateSimplex(c));
            }
            if !j.vertices.is_empty() {
                if let Some(v) = c.iter().find(|v| !listed.contains(v)) {
                    return Err(Error::NotInAmbient(format!("vertex {v} of simplex {c:?}")));
                }
            }
        }
        Self::from_simplices(seen.into_iter().chain(listed.into_iter().map(|v| vec![v])))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.iter().copied().collect(),
            simplices: self.maximal_simplices(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn simplex_set(&self) -> BTreeSet<Simplex> {
        self.iter().cloned().collect()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for d in (0..self.by_dim.len()).rev() {
            for s in &self.by_dim[d] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if d > 0 {
                for s in &self.by_dim[d] {
                    for skip in 0..s.len() {
                        let f = &self.by_dim[d - 1][self.face_index(s, skip)];
                        covered.insert(f);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Index (in degree `dim s - 1`) of the face of `s` omitting position `skip`.
    pub fn face_index(&self, s: &[u32], skip: usize) -> usize {
        let f: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        self.index_of(&f).expect("complex is downward closed")
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut set = self.simplex_set();
        set.extend(other.iter().cloned());
        Self::from_closed_set(set)
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        Self::from_closed_set(small.iter().filter(|s| big.contains(s)).cloned().collect())
    }

    /// Subcomplex of `self` made of simplices whose vertices all satisfy `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        Self::from_closed_set(self.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(c: SimplicialComplex) -> Self {
        c.to_json()
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;
    fn try_from(j: ComplexJson) -> Result<Self> {
        Self::from_json(&j)
    }
}

/// Union and intersection of two subcomplexes of a shared ambient complex.
pub fn subcomplex_ops(
    ambient: &SimplicialComplex,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    for (name, x) in [("left", a), ("right", b)] {
        if let Some(s) = x.iter().find(|s| !ambient.contains(s)) {
            return Err(Error::NotInAmbient(format!("{name} operand simplex {s:?}")));
        }
    }
    Ok((a.union(b), a.intersection(b)))
}
