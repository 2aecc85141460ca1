use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::PatchSystem;
use crate::groups::LatticeSubgroup;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct MaximalClump {
    pub support: SimplicialComplex,
    /// The largest minimal group defining the support.
    pub group: LatticeSubgroup,
    pub rank: usize,
    /// Nerve simplices `σ` with `N_α ⊆ G_σ`.
    pub simplices: Vec<Simplex>,
    /// `Y_α^z`; equal to the support when the system has no enlargements.
    pub big_support: SimplicialComplex,
}

/// Maximal clumps, sorted by decreasing support size.
///
/// A minimal group `N` spanning `W` satisfies `N ⊆ G_σ` exactly when
/// `W ⊆ span G_σ`. So the clumps of infinite minimal groups are the unions
/// `∪_{W ⊆ span G_σ} X_σ` for `W` in the intersection closure of the spans,
/// and the largest minimal group for `W` is `W ∩ ⋂_{W ⊆ span G_σ} G_σ`.
/// Candidates with equal support are joined, then the filter keeps clumps
/// whose group virtually contains an infinite patch label.
pub fn maximal_clumps(ps: &PatchSystem) -> Vec<MaximalClump> {
    let mut spans: BTreeSet<LatticeSubgroup> =
        ps.simplex_groups().filter(|(_, g)| !g.is_trivial()).map(|(_, g)| g.saturation()).collect();
    loop {
        let list: Vec<&LatticeSubgroup> = spans.iter().collect();
        let mut new = BTreeSet::new();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let c = a.intersection(b).expect("same ambient");
                if !c.is_trivial() && !spans.contains(&c) {
                    new.insert(c);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        spans.extend(new);
    }
    let candidates: Vec<(LatticeSubgroup, SimplicialComplex)> = spans
        .par_iter()
        .filter_map(|w| {
            let over: Vec<&LatticeSubgroup> =
                ps.simplex_groups().filter(|(_, g)| w.virtually_within(g)).map(|(_, g)| g).collect();
            let mut n = w.clone();
            for g in over {
                n = n.intersection(g).expect("same ambient");
            }
            let y = ps.clump(&n).support;
            (!y.is_empty()).then_some((n, y))
        })
        .collect();
    let mut by_support: BTreeMap<Vec<Simplex>, (LatticeSubgroup, SimplicialComplex)> = BTreeMap::new();
    for (n, y) in candidates {
        let key = y.maximal_simplices();
        match by_support.get_mut(&key) {
            Some((m, _)) => *m = m.join(&n).expect("same ambient"),
            None => {
                by_support.insert(key, (n, y));
            }
        }
    }
    let infinite_labels: Vec<&LatticeSubgroup> = ps.groups.iter().filter(|g| !g.is_trivial()).collect();
    let mut out: Vec<MaximalClump> = by_support
        .into_values()
        .filter(|(n, _)| infinite_labels.iter().any(|g| g.virtually_within(n)))
        .map(|(group, support)| {
            let simplices = ps.simplices_over(&group);
            let big_support = match ps.enlargements {
                Some(_) => ps.big_clump(&group),
                None => support.clone(),
            };
            MaximalClump { rank: group.rank(), support, group, simplices, big_support }
        })
        .collect();
    out.sort_by(|a, b| b.support.len().cmp(&a.support.len()).then_with(|| a.support.maximal_simplices().cmp(&b.support.maximal_simplices())));
    out
}

/// All maximal chains `Y_{α_0} ⊋ … ⊋ Y_{α_k}` of clumps, as index lists.
pub fn maximal_chains(clumps: &[MaximalClump]) -> Vec<Vec<usize>> {
    let below = |a: usize, b: usize| {
        clumps[b].support.len() < clumps[a].support.len() && clumps[b].support.is_subcomplex_of(&clumps[a].support)
    };
    fn extend(chain: &mut Vec<usize>, n: usize, below: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().unwrap();
        let next: Vec<usize> = (0..n).filter(|&b| below(last, b)).collect();
        if next.is_empty() {
            out.push(chain.clone());
        }
        for b in next {
            chain.push(b);
            extend(chain, n, below, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    for top in (0..clumps.len()).filter(|&a| !(0..clumps.len()).any(|b| below(b, a))) {
        extend(&mut vec![top], clumps.len(), &below, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowingRanksVerdict {
    pub ranks: Vec<usize>,
    pub holds: bool,
}

/// Along a strictly decreasing chain, `rank N_{α_k} ≥ k + rank N_{α_0}`.
pub fn growing_ranks_check(chain: &[&MaximalClump]) -> Result<GrowingRanksVerdict> {
    for (k, w) in chain.windows(2).enumerate() {
        let strict = w[1].support.len() < w[0].support.len() && w[1].support.is_subcomplex_of(&w[0].support);
        if !strict {
            return Err(Error::NotStrictlyDecreasing(k + 1));
        }
    }
    let ranks: Vec<usize> = chain.iter().map(|c| c.rank).collect();
    let holds = ranks.iter().enumerate().all(|(k, &r)| r >= k + ranks[0]);
    Ok(GrowingRanksVerdict { ranks, holds })
}
