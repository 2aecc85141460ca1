use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{nerve, reduced_nerve, Cover};
use crate::simplicial::{homology, HomologySummary, Simplex};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoodnessEntry {
    pub simplex: Simplex,
    pub reduced: HomologySummary,
}

/// Reduced homology of every `X_α`; the cover is good when all vanish.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub entries: Vec<GoodnessEntry>,
    pub good: bool,
}

pub fn goodness_check(c: &Cover) -> GoodnessReport {
    let n = nerve(c);
    let entries: Vec<GoodnessEntry> = n
        .intersections
        .par_iter()
        .map(|(s, x)| GoodnessEntry { simplex: s.clone(), reduced: homology(x).reduced() })
        .collect();
    let good = entries.iter().all(|e| e.reduced.betti.is_empty());
    GoodnessReport { entries, good }
}

/// Outcome of the implication
/// "`H̃_{≥n−k}(X_{α_k}) = 0` on every k-chain of the reduced nerve and
/// `H_{≥n}` of the reduced nerve vanishes ⟹ `H_{≥n}(∪X_i) = 0`".
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssemblyVerdict {
    pub n: usize,
    pub hypotheses_hold: bool,
    /// First chain whose coefficient violates the local hypothesis.
    pub failed_chain: Option<Vec<Simplex>>,
    pub nerve_vanishes: bool,
    pub conclusion_holds: bool,
    pub union_homology: HomologySummary,
    pub reduced_nerve_homology: HomologySummary,
    /// Present only if hypotheses hold and the conclusion fails.
    pub counterexample: Option<String>,
}

impl AssemblyVerdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn assembly_bound_check(c: &Cover, n: usize) -> AssemblyVerdict {
    let nv = nerve(c);
    let r = reduced_nerve(c, &nv);
    let local: Vec<(usize, &Simplex)> = (0..r.complex.dim().map_or(0, |d| d + 1))
        .flat_map(|k| r.complex.simplices(k).iter().map(move |s| (k, s)))
        .collect();
    let failed = local.par_iter().find_first(|(k, chain)| {
        let x = &nv.intersections[r.last_of(chain)];
        !homology(x).reduced().vanishes_from(n.saturating_sub(*k))
    });
    let failed_chain = failed.map(|(_, chain)| chain.iter().map(|&v| r.simplex_of(v).clone()).collect());
    let reduced_nerve_homology = homology(&r.complex);
    let nerve_vanishes = reduced_nerve_homology.vanishes_from(n);
    let union_homology = homology(&c.union());
    let conclusion_holds = union_homology.vanishes_from(n);
    let hypotheses_hold = failed_chain.is_none() && nerve_vanishes;
    let counterexample = (hypotheses_hold && !conclusion_holds)
        .then(|| format!("H_(>={n}) of the union is {union_homology}"));
    AssemblyVerdict {
        n,
        hypotheses_hold,
        failed_chain,
        nerve_vanishes,
        conclusion_holds,
        union_homology,
        reduced_nerve_homology,
        counterexample,
    }
}
