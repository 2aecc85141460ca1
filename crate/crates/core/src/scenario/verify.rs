use serde::Serialize;
use serde_json::{json, Value};

use super::{scale_ladder, Constants, Payload, Scenario};
use crate::clumps::{
    growing_ranks_check, introduction_filling, maximal_chains, maximal_clumps, unfolding_vanishing_check, PatchSystem,
};
use crate::cover::{assembly_bound_check, fattening_homology, goodness_check, nerve, Cover};
use crate::euclid::{
    almost_abelian_vanishing_check, semisimple_vanish_check, splitting_check, Arrangement, Isometry, IsometryJson,
    RationalJson,
};
use crate::groups::{subadditivity_check, LatticeSubgroup, UnitriangularGroup};
use crate::periodic::{
    cover_lift_check, local_vanishing_check, quotient_corner_check, stabilization_check, BoxUnion, FiniteCoverSpec,
    Outcome,
};
use crate::simplicial::homology;
use crate::{Error, Result};

/// One row of the traceability table: a lemma id, the scenario kind it
/// reads, the statement it checks and the operation that checks it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Lemma {
    pub id: &'static str,
    pub kind: &'static str,
    pub statement: &'static str,
    pub operation: &'static str,
}

const TABLE: [Lemma; 20] = [
    Lemma {
        id: "nerve-theorem",
        kind: "cover",
        statement: "H(ΔX) = H(∪X_i); for a good cover both equal the homology of the nerve",
        operation: "fattening_homology",
    },
    Lemma {
        id: "goodness",
        kind: "cover",
        statement: "every nonempty intersection of cover pieces is acyclic",
        operation: "goodness_check",
    },
    Lemma {
        id: "assembly-bound",
        kind: "cover",
        statement: "H_{≥n}(∪X_i) = 0 when H̃_{≥n−k}(X_α) = 0 on k-chains and the reduced nerve vanishes from n",
        operation: "assembly_bound_check",
    },
    Lemma {
        id: "intersection-formula",
        kind: "patch-system",
        statement: "Y_N ∩ Y_M = Y_⟨N,M⟩",
        operation: "intersection_formula_check",
    },
    Lemma {
        id: "minimal-join",
        kind: "patch-system",
        statement: "the join of two minimal groups is minimal",
        operation: "is_minimal",
    },
    Lemma {
        id: "maximal-clumps",
        kind: "patch-system",
        statement: "maximal clumps are closed under intersection, cover the infinite patches and reverse inclusion",
        operation: "maximal_clumps",
    },
    Lemma {
        id: "growing-ranks",
        kind: "patch-system",
        statement: "along a strictly decreasing chain of maximal clumps, rank N_k ≥ k + rank N_0",
        operation: "growing_ranks_check",
    },
    Lemma {
        id: "unfolding-vanishing",
        kind: "patch-system",
        statement: "H_{≥n−1−r} of the unfolding vanishes and H(L) → H(unfolding) is zero there",
        operation: "unfolding_vanishing_check",
    },
    Lemma {
        id: "introduction-filling",
        kind: "patch-system",
        statement: "the equatorial 2-cycle z = (a − c) + (c + b) bounds and dies in the unfolding",
        operation: "introduction_filling",
    },
    Lemma {
        id: "engulfing",
        kind: "patch-system",
        statement: "enlargements contain their patches and shrink along faces of the nerve",
        operation: "engulfing_check",
    },
    Lemma {
        id: "small-central-element",
        kind: "composite",
        statement: "a nontrivial central word of length at most 3^class in the generators",
        operation: "small_central_element",
    },
    Lemma {
        id: "subadditivity",
        kind: "composite",
        statement: "|γ_1⋯γ_r x − x| ≤ Σ |γ_i x − x|",
        operation: "subadditivity_check",
    },
    Lemma {
        id: "minset-splitting",
        kind: "composite",
        statement: "Min(A) = C × ℝ^r, B preserves Min(A), and Min(A) ∩ Min(B) splits with matching projection",
        operation: "splitting_check",
    },
    Lemma {
        id: "almost-abelian-vanishing",
        kind: "arrangement",
        statement: "H_{≥n−1−r}(nerve at level 1) → H_{≥n−1−r}(nerve at level 2^{n−2−r}) is zero",
        operation: "almost_abelian_vanishing_check",
    },
    Lemma {
        id: "semisimple-vanishing",
        kind: "arrangement",
        statement: "the level-k union of minsets of groups containing N has H_{≥n−1−r} = 0",
        operation: "semisimple_vanish_check",
    },
    Lemma {
        id: "window-stabilization",
        kind: "box-union",
        statement: "window homology of a periodic box union stabilizes under doubling",
        operation: "stabilization_check",
    },
    Lemma {
        id: "local-vanishing",
        kind: "box-union",
        statement: "a lattice of rank r preserving a good cover forces H̃_{≥dim−r}(W) = 0, and W = ℝ^dim in full rank",
        operation: "local_vanishing_check",
    },
    Lemma {
        id: "quotient-corner",
        kind: "box-union",
        statement: "H_{r+k}(W/Λ) ≠ 0 for k the top degree of H̃(W)",
        operation: "quotient_corner_check",
    },
    Lemma {
        id: "cover-lift",
        kind: "box-union",
        statement: "translations lift to a finite regular cover, commute with deck transformations and keep the vanishing",
        operation: "cover_lift_check",
    },
    Lemma {
        id: "scale-ladder",
        kind: "any",
        statement: "ε′ = base·3ⁿ·ε, ε″ = 3ⁿ·base·ε′, and thin-part scenarios keep ε below μ/(base^{2^{n−3}+2}·3ⁿ)",
        operation: "scale_ladder",
    },
];

pub fn lemmas() -> &'static [Lemma] {
    &TABLE
}

pub fn lemma(id: &str) -> Result<&'static Lemma> {
    TABLE.iter().find(|l| l.id == id).ok_or_else(|| Error::Unknown { kind: "lemma", name: id.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// The hypotheses fail; nothing is claimed.
    Vacuous,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Vacuous => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl From<Outcome> for Status {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Pass => Status::Pass,
            Outcome::Fail => Status::Fail,
            Outcome::Inconclusive => Status::Inconclusive,
            Outcome::Vacuous => Status::Vacuous,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub lemma: String,
    pub status: Status,
    pub summary: String,
    pub certificate: Value,
}

fn cert<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificates serialize")
}

fn wrong_kind(l: &Lemma, s: &Scenario) -> Error {
    Error::Parse(format!("lemma {} needs a {} scenario, got {}", l.id, l.kind, s.payload.kind()))
}

fn isometries(js: &[IsometryJson]) -> Result<Vec<Isometry>> {
    js.iter().map(Isometry::from_json).collect()
}

fn need<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::Parse(format!("scenario is missing {what}")))
}

/// Runs the check behind `id` on a scenario. Errors mean invalid input.
pub fn verify(id: &str, s: &Scenario, w_max: Option<u64>) -> Result<Verdict> {
    let l = lemma(id)?;
    let w_max = w_max.or(s.params.w_max).unwrap_or(16);
    let (status, summary, certificate) = match (&s.payload, l.id) {
        (_, "scale-ladder") => {
            let c = Constants::from_json(need(s.constants.as_ref(), "constants")?)?;
            let r = scale_ladder(&c)?;
            (Status::of(r.ok), format!("ε′ = {:?}, ε″ = {:?}", r.epsilon_prime, r.epsilon_double_prime), cert(&r))
        }
        (Payload::Cover { cover }, _) => verify_cover(l.id, &Cover::from_json(cover)?, s)?,
        (Payload::PatchSystem { system }, _) => verify_patches(l.id, &PatchSystem::from_json(system)?, s)?,
        (Payload::Arrangement { arrangement, common }, _) => {
            verify_arrangement(l.id, &Arrangement::from_json(arrangement)?, common.as_deref(), s)?
        }
        (Payload::BoxUnion { box_union, cover_spec }, _) => {
            verify_boxes(l.id, &BoxUnion::from_json(box_union)?, cover_spec.as_ref(), s, w_max)?
        }
        (Payload::Composite { parts }, "small-central-element") => {
            let u = need(parts.unitriangular.as_ref(), "a unitriangular group")?;
            let g = UnitriangularGroup::from_json(u.size, &u.generators)?;
            let w = g.small_central_element()?;
            let bound = 3usize.pow(g.class_bound() as u32);
            let central = g.commutes_with_generators(&w.element);
            let nontrivial = w.element != crate::linalg::IntMatrix::identity(g.size);
            let ok = central && nontrivial && w.len() <= bound && w.evaluate(&g) == w.element;
            let c = json!({"word": w.render(), "length": w.len(), "bound": bound, "central": central, "nontrivial": nontrivial});
            (Status::of(ok), format!("word of length {} (bound {bound})", w.len()), c)
        }
        (Payload::Composite { parts }, "subadditivity") => {
            let isos = isometries(need(parts.isometries.as_deref(), "isometries")?)?;
            let x = need(parts.point.as_deref(), "a point")?.iter().map(RationalJson::parse).collect::<Result<Vec<_>>>()?;
            let v = subadditivity_check(&isos, &x)?;
            (Status::of(v.holds), format!("holds: {}, equality: {}", v.holds, v.equality), cert(&v))
        }
        (Payload::Composite { parts }, "minset-splitting") => {
            let sp = need(parts.splitting.as_ref(), "a splitting pair")?;
            let v = splitting_check(sp.dim, &isometries(&sp.a)?, &isometries(&sp.b)?)?;
            let ok = v.product_holds && v.b_preserves_min_a && v.intersection_splits && v.projection_matches;
            (Status::of(ok), format!("r = {}", v.r), cert(&v))
        }
        _ => return Err(wrong_kind(l, s)),
    };
    Ok(Verdict { lemma: l.id.into(), status, summary, certificate })
}

type Outcome3 = (Status, String, Value);

fn verify_cover(id: &str, c: &Cover, s: &Scenario) -> Result<Outcome3> {
    Ok(match id {
        "nerve-theorem" => {
            let fat = fattening_homology(c)?;
            let union = homology(&c.union());
            let nv = homology(&nerve(c).complex);
            let good = goodness_check(c).good;
            let ok = fat == union && (!good || nv == union);
            let summary = format!("H(ΔX) = {fat}, H(∪X) = {union}, H(nerve) = {nv}, good cover: {good}");
            (Status::of(ok), summary, json!({"fattening": fat, "union": union, "nerve": nv, "good": good}))
        }
        "goodness" => {
            let g = goodness_check(c);
            let bad = g.entries.iter().find(|e| !e.reduced.betti.is_empty()).map(|e| e.simplex.clone());
            (Status::of(g.good), format!("{} intersections checked", g.entries.len()), json!({"good": g.good, "first_bad": bad}))
        }
        "assembly-bound" => {
            let v = assembly_bound_check(c, s.params.n.unwrap_or(2));
            let status = if v.counterexample.is_some() {
                Status::Fail
            } else if !v.hypotheses_hold || !v.nerve_vanishes {
                Status::Vacuous
            } else {
                Status::of(v.conclusion_holds)
            };
            (status, format!("n = {}, conclusion holds: {}", v.n, v.conclusion_holds), cert(&v))
        }
        _ => return Err(Error::Parse(format!("lemma {id} does not take a cover"))),
    })
}

fn lattice_of(ambient: usize, rows: &[Vec<i64>]) -> Result<LatticeSubgroup> {
    LatticeSubgroup::new(ambient, rows)
}

fn verify_patches(id: &str, ps: &PatchSystem, s: &Scenario) -> Result<Outcome3> {
    let d = ps.ambient_rank();
    Ok(match id {
        "intersection-formula" => {
            let pairs: Vec<(LatticeSubgroup, LatticeSubgroup)> = match &s.params.groups {
                Some(g) if g.len() == 2 => vec![(lattice_of(d, &g[0])?, lattice_of(d, &g[1])?)],
                Some(_) => return Err(Error::Parse("intersection-formula takes exactly two groups".into())),
                None => {
                    let joins = ps.label_joins();
                    joins.iter().flat_map(|a| joins.iter().map(move |b| (a.clone(), b.clone()))).collect()
                }
            };
            for (a, b) in &pairs {
                let v = ps.intersection_formula_check(a, b)?;
                if !v.holds {
                    return Ok((Status::Fail, "sides differ".into(), json!({"n": a, "m": b, "simplex": v.certificate})));
                }
            }
            (Status::Pass, format!("{} pairs checked", pairs.len()), json!({"pairs": pairs.len()}))
        }
        "minimal-join" => {
            let mut candidates = ps.label_joins();
            candidates.extend(maximal_clumps(ps).into_iter().map(|m| m.group));
            candidates.sort();
            candidates.dedup();
            let minimal: Vec<&LatticeSubgroup> =
                candidates.iter().filter(|g| ps.is_minimal(g).unwrap_or(false)).collect();
            for a in &minimal {
                for b in &minimal {
                    let j = a.join(b)?;
                    if !ps.is_minimal(&j)? {
                        return Ok((Status::Fail, "join is not minimal".into(), json!({"n": a, "m": b, "join": j})));
                    }
                }
            }
            (Status::Pass, format!("{} minimal groups", minimal.len()), json!({"minimal": minimal}))
        }
        "maximal-clumps" => {
            let clumps = maximal_clumps(ps);
            let mut problems: Vec<String> = Vec::new();
            for (a, x) in clumps.iter().enumerate() {
                for (b, y) in clumps.iter().enumerate() {
                    let meet = x.support.intersection(&y.support);
                    if !meet.is_empty() && !clumps.iter().any(|z| z.support == meet) {
                        problems.push(format!("clumps {a} and {b} meet outside the list"));
                    }
                    if a != b && y.support.is_subcomplex_of(&x.support) {
                        if !y.group.contains(&x.group) {
                            problems.push(format!("clump {b} ⊆ {a} but N_{a} ⊄ N_{b}"));
                        }
                        if y.support != x.support && y.rank <= x.rank {
                            problems.push(format!("clump {b} ⊊ {a} without a rank increase"));
                        }
                    }
                }
            }
            for (i, (p, g)) in ps.cover.pieces.iter().zip(&ps.groups).enumerate() {
                if !g.is_trivial() && !clumps.iter().any(|c| p.is_subcomplex_of(&c.support)) {
                    problems.push(format!("patch {i} with infinite label lies in no maximal clump"));
                }
            }
            let ranks: Vec<usize> = clumps.iter().map(|c| c.rank).collect();
            (Status::of(problems.is_empty()), format!("{} maximal clumps, ranks {ranks:?}", clumps.len()), json!({"ranks": ranks, "problems": problems}))
        }
        "growing-ranks" => {
            let clumps = maximal_clumps(ps);
            let chains: Vec<Vec<usize>> = match &s.params.chain {
                Some(c) => {
                    if let Some(&bad) = c.iter().find(|&&i| i >= clumps.len()) {
                        return Err(Error::Parse(format!("no maximal clump {bad}")));
                    }
                    vec![c.clone()]
                }
                None => maximal_chains(&clumps),
            };
            for chain in &chains {
                let refs: Vec<_> = chain.iter().map(|&i| &clumps[i]).collect();
                let v = growing_ranks_check(&refs)?;
                if !v.holds {
                    return Ok((Status::Fail, format!("chain {chain:?} fails"), cert(&v)));
                }
            }
            (Status::Pass, format!("{} chains checked", chains.len()), json!({"chains": chains}))
        }
        "unfolding-vanishing" => {
            let v = unfolding_vanishing_check(ps, need(s.params.n, "params.n")?, need(s.params.r, "params.r")?)?;
            let status = if !v.hypotheses_hold { Status::Vacuous } else { Status::of(v.passed()) };
            (status, format!("degree ≥ {}: vanishes {}, composite zero {}", v.degree, v.vanishes, v.composite_zero), cert(&v))
        }
        "introduction-filling" => {
            let f = introduction_filling(ps)?;
            let ok = f.verified && f.zero_in_unfolded;
            (Status::of(ok), format!("∂(filling) = z: {}, zero in unfolding: {}", f.verified, f.zero_in_unfolded), cert(&f))
        }
        "engulfing" => {
            let bad = ps.engulfing_check();
            (Status::of(bad.is_none()), "enlargement containments".into(), json!({"offending": bad}))
        }
        _ => return Err(Error::Parse(format!("lemma {id} does not take a patch system"))),
    })
}

fn verify_arrangement(id: &str, arr: &Arrangement, common: Option<&[IsometryJson]>, s: &Scenario) -> Result<Outcome3> {
    let n = need(s.params.n, "params.n")?;
    Ok(match id {
        "almost-abelian-vanishing" => {
            let v = almost_abelian_vanishing_check(arr, n, need(s.params.r, "params.r")?)?;
            let status = if !v.rank_hypothesis { Status::Vacuous } else { Status::of(v.passed()) };
            (status, format!("top level {}, zero: {}", v.top_level, v.zero), cert(&v))
        }
        "semisimple-vanishing" => {
            let common = isometries(need(common, "common generators")?)?;
            let v = semisimple_vanish_check(arr, &common, s.params.k.unwrap_or(1), n)?;
            let status = if !v.hypothesis { Status::Vacuous } else { Status::of(v.passed()) };
            (status, format!("level {}, vanishes: {}", v.k, v.vanishes), cert(&v))
        }
        _ => return Err(Error::Parse(format!("lemma {id} does not take an arrangement"))),
    })
}

fn verify_boxes(id: &str, bu: &BoxUnion, spec: Option<&FiniteCoverSpec>, s: &Scenario, w_max: u64) -> Result<Outcome3> {
    Ok(match id {
        "window-stabilization" => {
            let degrees = s.params.degrees.clone().unwrap_or_else(|| (0..bu.dim.max(1)).collect());
            let r = stabilization_check(bu, &degrees, w_max)?;
            let status = if r.conclusive { Status::Pass } else { Status::Inconclusive };
            (status, format!("radii {:?}", r.radii), cert(&r))
        }
        "local-vanishing" => {
            let v = local_vanishing_check(bu, w_max)?;
            (v.outcome.into(), format!("H̃_{{≥{}}} = 0: {:?}, full coverage: {:?}", v.from, v.conclusion, v.full_coverage), cert(&v))
        }
        "quotient-corner" => {
            let v = quotient_corner_check(bu, w_max)?;
            (v.outcome.into(), format!("k = {:?}, quotient {}", v.top, v.quotient), cert(&v))
        }
        "cover-lift" => {
            let trivial = FiniteCoverSpec::trivial();
            let v = cover_lift_check(bu, spec.unwrap_or(&trivial), w_max)?;
            (v.outcome.into(), format!("|G| = {}, vanishing: {:?}", v.order, v.vanishing), cert(&v))
        }
        _ => return Err(Error::Parse(format!("lemma {id} does not take a box union"))),
    })
}
