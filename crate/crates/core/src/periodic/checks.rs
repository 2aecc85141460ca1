use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::window::{stabilize, window_nerve};
use super::{BoxUnion, OpenBox, StabilizationReport};
use crate::groups::LatticeSubgroup;
use crate::simplicial::{ChainComplex, HomologySummary, SparseMatrix};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Some window sequence did not stabilize by `w_max`.
    Inconclusive,
    /// The conclusion fails but so does the hypothesis.
    Vacuous,
}

/// Whether the orbit sets `Λ·B_i` form a good cover of `W`. Each is
/// `Λ`-invariant, so this certifies that the lattice preserves every
/// element of a good cover.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCoverVerdict {
    /// `None` when some intersection did not stabilize.
    pub holds: Option<bool>,
    /// Box indices whose orbit intersection is not acyclic.
    pub failing: Option<Vec<usize>>,
}

fn lattice_rows(bu: &BoxUnion) -> Vec<Vec<i64>> {
    bu.to_json().lattice
}

fn all_degrees(bu: &BoxUnion) -> Vec<usize> {
    (0..bu.dim.max(1)).collect()
}

/// Representatives of `∩_{i∈S} Λ·B_i`, all inside `B_{S[0]}`.
fn orbit_intersection(bu: &BoxUnion, s: &[usize]) -> Vec<OpenBox> {
    let mut pieces: BTreeSet<OpenBox> = BTreeSet::from([bu.boxes[s[0]].clone()]);
    for &j in &s[1..] {
        let mut next = BTreeSet::new();
        for p in &pieces {
            for c in bu.translates_meeting(p, j) {
                next.extend(p.intersection(&bu.translate(j, &c)));
            }
        }
        pieces = next;
    }
    pieces.into_iter().collect()
}

pub fn orbit_cover_check(bu: &BoxUnion, w_max: u64) -> Result<OrbitCoverVerdict> {
    let rows = lattice_rows(bu);
    let degrees = all_degrees(bu);
    let mut unknown = false;
    let mut stack: Vec<Vec<usize>> = (0..bu.boxes.len()).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        let pieces = orbit_intersection(bu, &s);
        if pieces.is_empty() {
            continue;
        }
        let part = BoxUnion::new(bu.dim, &rows, pieces)?;
        if !orbit_connected(&part)? {
            return Ok(OrbitCoverVerdict { holds: Some(false), failing: Some(s) });
        }
        let report = stabilize(&|w| window_nerve(&part, w), &degrees, w_max)?;
        match report.vanishes_from(0) {
            Some(false) => return Ok(OrbitCoverVerdict { holds: Some(false), failing: Some(s) }),
            None => unknown = true,
            Some(true) => {}
        }
        let last = *s.last().expect("nonempty subset");
        for j in last + 1..bu.boxes.len() {
            stack.push([s.clone(), vec![j]].concat());
        }
    }
    Ok(OrbitCoverVerdict { holds: if unknown { None } else { Some(true) }, failing: None })
}

/// Whether `Λ·(∪ boxes)` is connected: the overlap graph modulo `Λ` must be
/// connected and the offsets picked up around its cycles must generate `Λ`.
pub(crate) fn orbit_connected(bu: &BoxUnion) -> Result<bool> {
    let r = bu.rank();
    let mut potential: Vec<Option<Vec<i64>>> = vec![None; bu.boxes.len()];
    potential[0] = Some(vec![0; r]);
    let mut queue = vec![0];
    let mut voltages: Vec<Vec<i64>> = Vec::new();
    while let Some(i) = queue.pop() {
        let pi = potential[i].clone().expect("visited");
        for (j, d) in bu.relative_neighbours(i) {
            let reach: Vec<i64> = pi.iter().zip(&d).map(|(a, b)| a + b).collect();
            match &potential[j] {
                None => {
                    potential[j] = Some(reach);
                    queue.push(j);
                }
                Some(pj) => voltages.push(reach.iter().zip(pj).map(|(a, b)| a - b).collect()),
            }
        }
    }
    if potential.iter().any(Option::is_none) {
        return Ok(false);
    }
    if r == 0 {
        return Ok(true);
    }
    let generated = LatticeSubgroup::new(r, &voltages)?;
    Ok(generated.contains(&LatticeSubgroup::full(r)))
}

/// Exact test of `W = ℝ^dim`. Every point is a lattice translate of a point
/// in the fundamental parallelepiped, so it suffices to test one point per
/// cell of the arrangement cut out by the box faces near it.
pub fn full_coverage(bu: &BoxUnion) -> bool {
    if bu.rank() < bu.dim {
        return false;
    }
    let mut lo = vec![BigRational::zero(); bu.dim];
    let mut hi = vec![BigRational::zero(); bu.dim];
    for k in 0..bu.rank() {
        let mut e = vec![0; bu.rank()];
        e[k] = 1;
        for (x, v) in bu.lattice_vector(&e).into_iter().enumerate() {
            if v < BigRational::zero() {
                lo[x] += v;
            } else {
                hi[x] += v;
            }
        }
    }
    let one = BigRational::one();
    let frame = OpenBox {
        lo: lo.iter().map(|x| x - &one).collect(),
        hi: hi.iter().map(|x| x + &one).collect(),
    };
    let translates: Vec<OpenBox> = (0..bu.boxes.len())
        .flat_map(|j| bu.translates_meeting(&frame, j).into_iter().map(move |c| (j, c)))
        .map(|(j, c)| bu.translate(j, &c))
        .collect();
    let two = BigRational::from_integer(2.into());
    let samples: Vec<Vec<BigRational>> = (0..bu.dim)
        .map(|k| {
            let mut cuts: BTreeSet<BigRational> = translates
                .iter()
                .flat_map(|b| [b.lo[k].clone(), b.hi[k].clone()])
                .filter(|x| *x > lo[k] && *x < hi[k])
                .collect();
            cuts.insert(lo[k].clone());
            cuts.insert(hi[k].clone());
            let cuts: Vec<BigRational> = cuts.into_iter().collect();
            let mut out = cuts.clone();
            out.extend(cuts.windows(2).map(|w| (&w[0] + &w[1]) / &two));
            out
        })
        .collect();
    let mut point = Vec::with_capacity(bu.dim);
    fn covered(k: usize, point: &mut Vec<BigRational>, samples: &[Vec<BigRational>], boxes: &[OpenBox]) -> bool {
        if k == samples.len() {
            return boxes.iter().any(|b| b.contains_point(point));
        }
        samples[k].iter().all(|x| {
            point.push(x.clone());
            let ok = covered(k + 1, point, samples, boxes);
            point.pop();
            ok
        })
    }
    covered(0, &mut point, &samples, &translates)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalVanishingVerdict {
    pub dim: usize,
    pub rank: usize,
    /// Degrees `≥ dim − rank` must vanish.
    pub from: usize,
    pub stabilization: StabilizationReport,
    pub hypothesis: OrbitCoverVerdict,
    /// Evaluated only when `rank = dim`.
    pub full_coverage: Option<bool>,
    pub conclusion: Option<bool>,
    pub outcome: Outcome,
}

fn judge(conclusion: Option<bool>, hypothesis: Option<bool>) -> Outcome {
    match (conclusion, hypothesis) {
        (Some(true), _) => Outcome::Pass,
        (None, _) => Outcome::Inconclusive,
        (Some(false), Some(true)) => Outcome::Fail,
        (Some(false), Some(false)) => Outcome::Vacuous,
        (Some(false), None) => Outcome::Inconclusive,
    }
}

/// Stabilized `H̃_d(W) = 0` for `d ≥ dim − rank`, and `W = ℝ^dim` when the
/// lattice has full rank.
pub fn local_vanishing_check(bu: &BoxUnion, w_max: u64) -> Result<LocalVanishingVerdict> {
    let (dim, rank) = (bu.dim, bu.rank());
    let from = dim - rank;
    let stabilization = stabilize(&|w| window_nerve(bu, w), &all_degrees(bu), w_max)?;
    let hypothesis = orbit_cover_check(bu, w_max)?;
    let full = (rank == dim).then(|| full_coverage(bu));
    let conclusion = stabilization.vanishes_from(from).map(|v| v && full.unwrap_or(true));
    let outcome = judge(conclusion, hypothesis.holds);
    Ok(LocalVanishingVerdict { dim, rank, from, stabilization, hypothesis, full_coverage: full, conclusion, outcome })
}

type QVertex = (Vec<i64>, usize);

/// Simplices of the nerve modulo the lattice. Vertices are ordered by
/// `(c, i)`, which translations preserve, and each orbit is represented by
/// the simplex whose least vertex has `c = 0`.
pub(crate) fn quotient_complex(bu: &BoxUnion) -> ChainComplex {
    let zero = vec![0; bu.rank()];
    let nbrs: Vec<HashSet<QVertex>> =
        (0..bu.boxes.len()).map(|i| bu.relative_neighbours(i).into_iter().map(|(j, d)| (d, j)).collect()).collect();
    let adjacent = |u: &QVertex, v: &QVertex| {
        let d: Vec<i64> = v.0.iter().zip(&u.0).map(|(a, b)| a - b).collect();
        nbrs[u.1].contains(&(d, v.1))
    };
    let mut layers: Vec<BTreeMap<Vec<QVertex>, usize>> = Vec::new();
    fn grow(
        clique: &mut Vec<QVertex>,
        cands: &[QVertex],
        adjacent: &dyn Fn(&QVertex, &QVertex) -> bool,
        layers: &mut Vec<BTreeMap<Vec<QVertex>, usize>>,
    ) {
        let d = clique.len() - 1;
        if layers.len() <= d {
            layers.push(BTreeMap::new());
        }
        let n = layers[d].len();
        layers[d].insert(clique.clone(), n);
        for (k, v) in cands.iter().enumerate() {
            let next: Vec<QVertex> = cands[k + 1..].iter().filter(|u| adjacent(v, u)).cloned().collect();
            clique.push(v.clone());
            grow(clique, &next, adjacent, layers);
            clique.pop();
        }
    }
    for i in 0..bu.boxes.len() {
        let base = (zero.clone(), i);
        let mut cands: Vec<QVertex> = nbrs[i].iter().filter(|v| **v > base).cloned().collect();
        cands.sort();
        grow(&mut vec![base], &cands, &adjacent, &mut layers);
    }
    let ranks: Vec<usize> = layers.iter().map(BTreeMap::len).collect();
    let boundaries = (0..layers.len())
        .map(|d| {
            if d == 0 {
                return SparseMatrix::zero(0, ranks[0]);
            }
            let mut cols = vec![Vec::new(); ranks[d]];
            for (s, &col) in &layers[d] {
                for q in 0..s.len() {
                    let mut face: Vec<QVertex> = s.iter().enumerate().filter(|(k, _)| *k != q).map(|(_, v)| v.clone()).collect();
                    let shift = face[0].0.clone();
                    for v in &mut face {
                        for (a, b) in v.0.iter_mut().zip(&shift) {
                            *a -= b;
                        }
                    }
                    cols[col].push((layers[d - 1][&face], if q % 2 == 0 { 1 } else { -1 }));
                }
            }
            SparseMatrix { nrows: ranks[d - 1], cols }
        })
        .collect();
    ChainComplex::new(ranks, boundaries)
}

/// Homology of `W/Λ`, computed on the quotient of the nerve.
pub fn quotient_homology(bu: &BoxUnion) -> Result<HomologySummary> {
    let cc = quotient_complex(bu);
    cc.check()?;
    cc.homology()
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientCornerVerdict {
    pub rank: usize,
    /// Top stabilized degree of nonzero reduced homology of `W`, or 0.
    pub top: Option<usize>,
    pub quotient: HomologySummary,
    pub nonzero: Option<bool>,
    pub hypothesis: OrbitCoverVerdict,
    pub outcome: Outcome,
}

/// `H_{r+k}(W/Λ) ≠ 0` for `k` the top stabilized degree of `H̃(W)`.
pub fn quotient_corner_check(bu: &BoxUnion, w_max: u64) -> Result<QuotientCornerVerdict> {
    let rank = bu.rank();
    let report = stabilize(&|w| window_nerve(bu, w), &all_degrees(bu), w_max)?;
    let top = report.top();
    let quotient = quotient_homology(bu)?;
    let nonzero = top.map(|k| !quotient.vanishes_in(rank + k));
    let hypothesis = orbit_cover_check(bu, w_max)?;
    let outcome = judge(nonzero, hypothesis.holds);
    Ok(QuotientCornerVerdict { rank, top, quotient, nonzero, hypothesis, outcome })
}
