use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::checks::{full_coverage, orbit_cover_check, Outcome};
use super::window::{build_window, stabilize, WindowNerve};
use super::{BoxUnion, StabilizationReport};
use crate::groups::LatticeSubgroup;
use crate::simplicial::{induced_homology_map, InducedMap, SimplicialMap};
use crate::{Error, Result};

/// Sheet change along the overlap of `B_from` with `B_to + offset`; without
/// an offset it applies to every overlap of the two orbits.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TwistJson {
    pub from: usize,
    pub to: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<i64>>,
    pub shift: Vec<i64>,
}

/// Deck group `G = ℤ^s / Λ'` and the twists gluing `|G|` copies of the
/// nerve into a regular cover. Missing twists are zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FiniteCoverSpec {
    pub sublattice: Vec<Vec<i64>>,
    #[serde(default)]
    pub twists: Vec<TwistJson>,
}

impl FiniteCoverSpec {
    pub fn trivial() -> Self {
        FiniteCoverSpec { sublattice: vec![vec![1]], twists: vec![] }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The regular cover of the periodic nerve described by a [`FiniteCoverSpec`].
#[derive(Clone, Debug)]
pub struct FiniteCover {
    pub base: BoxUnion,
    hnf: Vec<Vec<i64>>,
    elements: Vec<Vec<i64>>,
    position: HashMap<Vec<i64>, usize>,
    twists: HashMap<(usize, usize, Vec<i64>), usize>,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

impl FiniteCover {
    pub fn new(base: &BoxUnion, spec: &FiniteCoverSpec) -> Result<Self> {
        let bad = |m: String| Error::InvalidCoverSpec(m);
        let s = spec.sublattice.first().map_or(0, Vec::len);
        if s == 0 {
            return Err(bad("empty sublattice".into()));
        }
        let lat = LatticeSubgroup::new(s, &spec.sublattice)?;
        if lat.rank() != s {
            return Err(bad("sublattice must have full rank".into()));
        }
        let hnf: Vec<Vec<i64>> = lat
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).map_err(|_| bad("entries too large".into()))).collect())
            .collect::<Result<_>>()?;
        let mut elements: Vec<Vec<i64>> = vec![vec![]];
        for (k, row) in hnf.iter().enumerate() {
            let p = row[k].abs();
            elements = elements.into_iter().flat_map(|e| (0..p).map(move |x| [e.clone(), vec![x]].concat())).collect();
        }
        if elements.len() > 64 {
            return Err(bad(format!("deck group of order {} is too large", elements.len())));
        }
        let position = elements.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        let mut cover = FiniteCover { base: base.clone(), hnf, elements, position, twists: HashMap::new() };
        let mut explicit: BTreeMap<(usize, usize, Option<Vec<i64>>), usize> = BTreeMap::new();
        for t in &spec.twists {
            if t.from >= base.boxes.len() || t.to >= base.boxes.len() || t.shift.len() != s {
                return Err(bad(format!("twist {}→{} is out of range", t.from, t.to)));
            }
            if t.offset.as_ref().is_some_and(|o| o.len() != base.rank()) {
                return Err(bad("twist offset has the wrong length".into()));
            }
            explicit.insert((t.from, t.to, t.offset.clone()), cover.reduce(&t.shift));
        }
        let mut edges = 0;
        for i in 0..base.boxes.len() {
            for (j, d) in base.relative_neighbours(i) {
                let g = explicit
                    .get(&(i, j, Some(d.clone())))
                    .or_else(|| explicit.get(&(i, j, None)))
                    .copied()
                    .or_else(|| {
                        let back: Vec<i64> = d.iter().map(|x| -x).collect();
                        explicit.get(&(j, i, Some(back))).or_else(|| explicit.get(&(j, i, None))).map(|&g| cover.neg(g))
                    })
                    .unwrap_or(0);
                cover.twists.insert((i, j, d), g);
                edges += 1;
            }
        }
        for (i, j, o) in explicit.keys() {
            let used = match o {
                Some(d) => cover.twists.contains_key(&(*i, *j, d.clone())),
                None => cover.twists.keys().any(|(a, b, _)| a == i && b == j),
            };
            if !used {
                return Err(bad(format!("twist {i}→{j} names no overlap")));
            }
        }
        debug_assert_eq!(edges, cover.twists.len());
        cover.check_cocycle()?;
        Ok(cover)
    }

    /// Canonical coset representative.
    fn reduce(&self, x: &[i64]) -> usize {
        let mut x = x.to_vec();
        for (k, row) in self.hnf.iter().enumerate() {
            let q = floor_div(x[k], row[k]);
            for (a, b) in x.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
        self.position[&x]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        let s: Vec<i64> = self.elements[g].iter().zip(&self.elements[h]).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, g: usize) -> usize {
        self.reduce(&self.elements[g].iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// Sheet offset along the edge from `(i, c)` to `(j, c + d)`.
    pub fn twist(&self, i: usize, j: usize, d: &[i64]) -> usize {
        self.twists[&(i, j, d.to_vec())]
    }

    fn check_cocycle(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCoverSpec(m));
        for ((i, j, d), &g) in &self.twists {
            let back: Vec<i64> = d.iter().map(|x| -x).collect();
            if self.add(g, self.twists[&(*j, *i, back)]) != 0 {
                return bad(format!("twists {i}→{j} and back do not cancel"));
            }
        }
        for ((i, j, d), &g) in &self.twists {
            for ((j2, k, e), &h) in &self.twists {
                if j2 != j || (k == i && e.iter().zip(d).all(|(a, b)| a + b == 0)) {
                    continue;
                }
                let de: Vec<i64> = d.iter().zip(e).map(|(a, b)| a + b).collect();
                let b = &self.base;
                let triple = b
                    .translate(*i, &vec![0; d.len()])
                    .intersection(&b.translate(*j, d))
                    .and_then(|x| x.intersection(&b.translate(*k, &de)));
                if triple.is_some() && self.add(g, h) != self.twists[&(*i, *k, de.clone())] {
                    return bad(format!("twists around {i}, {j}, {k} are not a cocycle"));
                }
            }
        }
        Ok(())
    }

    /// Window of the cover: vertices `(g, i, c)`; `(g, i, c)` meets
    /// `(g + t, j, c + d)` exactly when the base translates meet and `t` is
    /// the twist of that overlap.
    pub fn window(&self, radius: u64) -> WindowNerve {
        build_window(&self.base, radius, self.order(), &|g, i, j, d| self.add(g, self.twist(i, j, d)))
    }

    /// Twists after moving sheet `g` of box `i` to `g + shifts[i]`.
    pub fn relabelled_spec(&self, shifts: &[Vec<i64>]) -> FiniteCoverSpec {
        let mut twists: Vec<TwistJson> = self
            .twists
            .iter()
            .map(|((i, j, d), &g)| TwistJson {
                from: *i,
                to: *j,
                offset: Some(d.clone()),
                shift: self.elements[g].iter().zip(&shifts[*j]).zip(&shifts[*i]).map(|((t, a), b)| t + a - b).collect(),
            })
            .collect();
        twists.sort_by(|a, b| (a.from, a.to, &a.offset).cmp(&(b.from, b.to, &b.offset)));
        FiniteCoverSpec { sublattice: self.hnf.clone(), twists }
    }
}

fn unit(r: usize, k: usize, sign: i64) -> Vec<i64> {
    let mut e = vec![0; r];
    e[k] = sign;
    e
}

fn shifted(c: &[i64], e: &[i64]) -> Vec<i64> {
    c.iter().zip(e).map(|(a, b)| a + b).collect()
}

/// Lifted translation by `e` composed with the deck transformation `a`.
fn lift_map(cover: &FiniteCover, from: &WindowNerve, to: &WindowNerve, e: &[i64], a: usize) -> Result<SimplicialMap> {
    from.vertex_map_into(to, |(g, i, c)| (cover.add(*g, a), *i, shifted(c, e)))
}

fn same_class_map(x: &InducedMap, y: &InducedMap) -> bool {
    let (rx, ry) = (x.rows(), y.rows());
    let t = x.target_torsion.len();
    rx.iter().zip(&ry).enumerate().all(|(k, (a, b))| {
        a.iter().zip(b).all(|(u, v)| if k < t { (u - v) % &x.target_torsion[k] == BigInt::from(0) } else { u == v })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverLiftVerdict {
    pub order: usize,
    pub rank: usize,
    pub dim: usize,
    /// (a) lifted translations are simplicial, commute, and invert.
    pub action: bool,
    /// (b) they commute with every deck transformation.
    pub commutes: bool,
    /// (c) each lifted generator induces the inclusion map on homology.
    pub trivial_on_homology: bool,
    /// (d) stabilized `H̃_{≥ dim − rank}` of the cover vanishes (degree 0
    /// excluded).
    pub vanishing: Option<bool>,
    /// Full-rank case: the cover is `|G|` acyclic components over `W = ℝ^dim`.
    pub disjoint_copies: Option<bool>,
    pub stabilization: StabilizationReport,
    pub base_hypothesis: Option<bool>,
    pub outcome: Outcome,
}

impl CoverLiftVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

pub fn cover_lift_check(bu: &BoxUnion, spec: &FiniteCoverSpec, w_max: u64) -> Result<CoverLiftVerdict> {
    let cover = FiniteCover::new(bu, spec)?;
    let (r, dim) = (bu.rank(), bu.dim);
    let degrees: Vec<usize> = (0..dim.max(1)).collect();
    let stabilization = stabilize(&|w| cover.window(w), &degrees, w_max)?;
    let w = stabilization.degrees.iter().filter_map(|s| s.stabilized_at).max().unwrap_or(1).max(2);
    let (small, mid, big) = (cover.window(w), cover.window(2 * w), cover.window(4 * w));

    let mut action = true;
    for k in 0..r {
        let e = unit(r, k, 1);
        action &= lift_map(&cover, &small, &mid, &e, 0).is_ok();
        // inverse: e then −e is the inclusion
        let back: Vec<(usize, usize, Vec<i64>)> =
            small.vertices.iter().map(|(g, i, c)| (*g, *i, shifted(&shifted(c, &e), &unit(r, k, -1)))).collect();
        action &= back == small.vertices;
        for l in 0..r {
            let f = unit(r, l, 1);
            let ef = lift_map(&cover, &small, &big, &shifted(&e, &f), 0);
            let fe = lift_map(&cover, &small, &big, &shifted(&f, &e), 0);
            action &= matches!((ef, fe), (Ok(x), Ok(y)) if x.vertex_map == y.vertex_map);
        }
    }

    let mut commutes = true;
    let zero = vec![0; r];
    for a in 0..cover.order() {
        commutes &= lift_map(&cover, &small, &small, &zero, a).is_ok();
        for k in 0..r {
            let e = unit(r, k, 1);
            let deck_then_lift = lift_map(&cover, &small, &mid, &e, a)?;
            let lift_then_deck: Vec<(usize, usize, Vec<i64>)> = small
                .vertices
                .iter()
                .map(|(g, i, c)| (cover.add(*g, a), *i, shifted(c, &e)))
                .collect();
            commutes &= small
                .vertices
                .iter()
                .enumerate()
                .all(|(v, _)| mid.vertices[deck_then_lift.vertex_map[&(v as u32)] as usize] == lift_then_deck[v]);
        }
    }

    let mut trivial_on_homology = true;
    let incl = small.inclusion_into(&mid)?;
    let hm = mid.homology();
    let lifts: Vec<SimplicialMap> = (0..r).map(|k| lift_map(&cover, &small, &mid, &unit(r, k, 1), 0)).collect::<Result<_>>()?;
    // on H_0 it is enough that each vertex and its image share a component
    let comps = mid.components();
    for f in &lifts {
        trivial_on_homology &= f.vertex_map.iter().all(|(v, w)| comps[incl.vertex_map[v] as usize] == comps[*w as usize]);
    }
    for &d in degrees.iter().filter(|&&d| d > 0 && !hm.vanishes_in(d)) {
        let base_map = induced_homology_map(&incl, d)?;
        for f in &lifts {
            trivial_on_homology &= same_class_map(&induced_homology_map(f, d)?, &base_map);
        }
    }

    // in full rank the cover is expected to be disconnected
    let vanishing = stabilization.vanishes_from((dim - r).max(1));
    let disjoint_copies = (r == dim).then(|| {
        let comps = stabilization.degrees.iter().find(|s| s.degree == 0).map(|s| s.betti + 1);
        full_coverage(bu)
            && comps == Some(cover.order())
            && stabilization.degrees.iter().all(|s| s.stabilized_at.is_some() && (s.degree == 0 || s.betti == 0))
            && stabilization.degrees.iter().all(|s| s.torsion.is_empty())
    });
    let base_hypothesis = orbit_cover_check(bu, w_max)?.holds;
    let structural = action && commutes && trivial_on_homology;
    let conclusion = vanishing.map(|v| v && disjoint_copies.unwrap_or(true));
    let outcome = if !structural {
        Outcome::Fail
    } else {
        match (conclusion, base_hypothesis) {
            (Some(true), _) => Outcome::Pass,
            (None, _) | (Some(false), None) => Outcome::Inconclusive,
            (Some(false), Some(true)) => Outcome::Fail,
            (Some(false), Some(false)) => Outcome::Vacuous,
        }
    };
    Ok(CoverLiftVerdict {
        order: cover.order(),
        rank: r,
        dim,
        action,
        commutes,
        trivial_on_homology,
        vanishing,
        disjoint_copies,
        stabilization,
        base_hypothesis,
        outcome,
    })
}
