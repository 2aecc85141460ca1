use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::BoxUnion;
use crate::linalg::IntMatrix;
use crate::simplicial::{homology, induced_homology_map, HomologySummary, Simplex, SimplicialComplex, SimplicialMap};
use crate::{Error, Result};

/// Nerve of the translates `(sheet, i, c)` with `‖c‖_∞ ≤ radius`.
///
/// Boxes satisfy Helly's property, so the nerve is the clique complex of
/// the overlap graph. With one sheet this is the window of `W` itself;
/// more sheets model a regular cover glued by per-orbit twists.
///
/// Only the `dim`-skeleton is built: the union is a noncompact
/// `dim`-manifold, so its homology vanishes from degree `dim` on, and the
/// chain groups up to `dim` already determine `H_0..H_{dim-1}`.
#[derive(Clone, Debug)]
pub struct WindowNerve {
    pub radius: u64,
    pub dim: usize,
    pub vertices: Vec<(usize, usize, Vec<i64>)>,
    index: HashMap<(usize, usize, Vec<i64>), u32>,
    pub complex: SimplicialComplex,
}

impl WindowNerve {
    /// Homology of the window's union; see the note on skeleta above.
    pub fn homology(&self) -> HomologySummary {
        let mut h = homology(&self.complex);
        h.truncate(self.dim.saturating_sub(1));
        h
    }

    pub fn vertex(&self, sheet: usize, i: usize, c: &[i64]) -> Option<u32> {
        self.index.get(&(sheet, i, c.to_vec())).copied()
    }

    /// Inclusion into a window of larger radius over the same sheets.
    pub fn inclusion_into(&self, larger: &WindowNerve) -> Result<SimplicialMap> {
        self.vertex_map_into(larger, |(s, i, c)| (*s, *i, c.clone()))
    }

    /// The simplicial map induced by a relabelling of vertices.
    pub fn vertex_map_into(
        &self,
        target: &WindowNerve,
        f: impl Fn(&(usize, usize, Vec<i64>)) -> (usize, usize, Vec<i64>),
    ) -> Result<SimplicialMap> {
        let mut vm = std::collections::BTreeMap::new();
        for (v, key) in self.vertices.iter().enumerate() {
            let img = f(key);
            let w = target.index.get(&img).ok_or_else(|| Error::Internal(format!("vertex {img:?} outside the target window")))?;
            vm.insert(v as u32, *w);
        }
        SimplicialMap::new(self.complex.clone(), target.complex.clone(), vm)
    }

    /// Connected component label per vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.complex.simplices(1) {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
            parent[a] = b;
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

pub(crate) fn build_window(
    bu: &BoxUnion,
    radius: u64,
    sheets: usize,
    twist: &dyn Fn(usize, usize, usize, &[i64]) -> usize,
) -> WindowNerve {
    let r = bu.rank();
    let w = radius as i64;
    let mut coords: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        coords = coords.into_iter().flat_map(|c| (-w..=w).map(move |x| [c.clone(), vec![x]].concat())).collect();
    }
    let mut vertices = Vec::new();
    for c in &coords {
        for i in 0..bu.boxes.len() {
            for s in 0..sheets {
                vertices.push((s, i, c.clone()));
            }
        }
    }
    let index: HashMap<(usize, usize, Vec<i64>), u32> =
        vertices.iter().enumerate().map(|(k, v)| (v.clone(), k as u32)).collect();
    let rel: Vec<Vec<(usize, Vec<i64>)>> = (0..bu.boxes.len()).map(|i| bu.relative_neighbours(i)).collect();
    let adj: Vec<BTreeSet<u32>> = vertices
        .iter()
        .map(|(s, i, c)| {
            rel[*i]
                .iter()
                .filter_map(|(j, d)| {
                    let cc: Vec<i64> = c.iter().zip(d).map(|(a, b)| a + b).collect();
                    index.get(&(twist(*s, *i, *j, d), *j, cc)).copied()
                })
                .collect()
        })
        .collect();
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    let top = bu.dim.max(1) + 1;
    fn grow(clique: &mut Vec<u32>, cands: &BTreeSet<u32>, adj: &[BTreeSet<u32>], top: usize, out: &mut BTreeSet<Simplex>) {
        out.insert(clique.clone());
        if clique.len() == top {
            return;
        }
        for &v in cands {
            let next: BTreeSet<u32> = cands.iter().filter(|&&u| u > v && adj[v as usize].contains(&u)).copied().collect();
            clique.push(v);
            grow(clique, &next, adj, top, out);
            clique.pop();
        }
    }
    for v in 0..vertices.len() as u32 {
        let cands: BTreeSet<u32> = adj[v as usize].iter().filter(|&&u| u > v).copied().collect();
        grow(&mut vec![v], &cands, &adj, top, &mut simplices);
    }
    let complex = SimplicialComplex::from_closed_set(simplices);
    WindowNerve { radius, dim: bu.dim, vertices, index, complex }
}

pub fn window_nerve(bu: &BoxUnion, radius: u64) -> WindowNerve {
    build_window(bu, radius, 1, &|_, _, _, _| 0)
}

/// Homology of the window's union, via its nerve (boxes are convex).
pub fn window_nerve_homology(bu: &BoxUnion, radius: u64) -> HomologySummary {
    window_nerve(bu, radius).homology()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStatus {
    pub degree: usize,
    /// Radius `w` such that the inclusions `w → 2w → 4w` are isomorphisms
    /// in this degree.
    pub stabilized_at: Option<u64>,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub radii: Vec<u64>,
    /// Reduced homology of each window.
    pub summaries: Vec<HomologySummary>,
    pub degrees: Vec<DegreeStatus>,
    pub conclusive: bool,
}

impl StabilizationReport {
    /// Whether the stabilized reduced homology vanishes in all tracked
    /// degrees `≥ from`; `None` if one of them did not stabilize.
    pub fn vanishes_from(&self, from: usize) -> Option<bool> {
        let tracked: Vec<&DegreeStatus> = self.degrees.iter().filter(|s| s.degree >= from).collect();
        if tracked.iter().any(|s| s.stabilized_at.is_none()) {
            return None;
        }
        Some(tracked.iter().all(|s| s.betti == 0 && s.torsion.is_empty()))
    }

    /// Top tracked degree with nonzero stabilized reduced homology (0 when
    /// everything vanishes); `None` when inconclusive.
    pub fn top(&self) -> Option<usize> {
        if !self.conclusive {
            return None;
        }
        Some(
            self.degrees
                .iter()
                .filter(|s| s.betti > 0 || !s.torsion.is_empty())
                .map(|s| s.degree)
                .max()
                .unwrap_or(0),
        )
    }
}

fn is_iso(a: &WindowNerve, b: &WindowNerve, ha: &HomologySummary, hb: &HomologySummary, d: usize) -> Result<bool> {
    if d == 0 {
        let incl = a.inclusion_into(b)?;
        let (ca, cb) = (a.components(), b.components());
        let na: BTreeSet<usize> = ca.iter().copied().collect();
        let nb: BTreeSet<usize> = cb.iter().copied().collect();
        let images: BTreeSet<usize> = na
            .iter()
            .map(|&root| cb[incl.vertex_map[&(root as u32)] as usize])
            .collect();
        return Ok(na.len() == nb.len() && images.len() == nb.len());
    }
    if ha.vanishes_in(d) && hb.vanishes_in(d) {
        return Ok(true);
    }
    if ha.betti(d) != hb.betti(d) || ha.torsion(d) != hb.torsion(d) {
        return Ok(false);
    }
    let m = induced_homology_map(&a.inclusion_into(b)?, d)?;
    let t = m.source_torsion.len();
    let free: Vec<Vec<BigInt>> = m.rows()[t..].iter().map(|r| r[t..].to_vec()).collect();
    Ok(IntMatrix::from_rows(&free, free.len()).determinant().abs() == BigInt::from(1))
}

/// Doubling radii from 1 up to `w_max`; a degree is stabilized at `w` once
/// `H_d(w) → H_d(2w) → H_d(4w)` are both isomorphisms.
pub(crate) fn stabilize(
    build: &dyn Fn(u64) -> WindowNerve,
    degrees: &[usize],
    w_max: u64,
) -> Result<StabilizationReport> {
    if w_max < 2 {
        return Err(Error::Hypothesis("w_max must be at least 2".into()));
    }
    let mut radii = Vec::new();
    let mut windows: Vec<WindowNerve> = Vec::new();
    let mut summaries: Vec<HomologySummary> = Vec::new();
    let mut full: Vec<HomologySummary> = Vec::new();
    let mut isos: Vec<Vec<bool>> = Vec::new();
    let mut status: Vec<DegreeStatus> =
        degrees.iter().map(|&d| DegreeStatus { degree: d, stabilized_at: None, betti: 0, torsion: vec![] }).collect();
    let mut w = 1;
    while w <= w_max {
        let nerve = build(w);
        let h = nerve.homology();
        if let Some(prev) = windows.last() {
            let hp = full.last().unwrap();
            isos.push(degrees.iter().map(|&d| is_iso(prev, &nerve, hp, &h, d)).collect::<Result<_>>()?);
        }
        radii.push(w);
        summaries.push(h.reduced());
        full.push(h);
        windows.push(nerve);
        let k = isos.len();
        if k >= 2 {
            for (j, s) in status.iter_mut().enumerate() {
                if s.stabilized_at.is_none() && isos[k - 2][j] && isos[k - 1][j] {
                    let h = &summaries[k - 2];
                    s.stabilized_at = Some(radii[k - 2]);
                    s.betti = h.betti(s.degree);
                    s.torsion = h.torsion(s.degree).to_vec();
                }
            }
        }
        if status.iter().all(|s| s.stabilized_at.is_some()) {
            break;
        }
        w *= 2;
    }
    let conclusive = status.iter().all(|s| s.stabilized_at.is_some());
    Ok(StabilizationReport { radii, summaries, degrees: status, conclusive })
}

pub fn stabilization_check(bu: &BoxUnion, degrees: &[usize], w_max: u64) -> Result<StabilizationReport> {
    stabilize(&|w| window_nerve(bu, w), degrees, w_max)
}
