use serde::{Deserialize, Serialize};

use super::affine::{span_rank, AffineSubspace};
use super::isometry::{Isometry, IsometryJson};
use super::minset::{minset_of_group, translation_on};
use crate::simplicial::{homology, induced_homology_map, HomologySummary, InducedMap, Simplex, SimplicialComplex, SimplicialMap};
use crate::{Error, Result};

/// Commuting isometry groups `A_i` (by generators) and the exponent base of
/// the ladder `A_i^k = ⟨g^{base^k}⟩`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub dim: usize,
    pub groups: Vec<Vec<Isometry>>,
    pub base: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub dim: usize,
    pub base: u64,
    pub groups: Vec<Vec<IsometryJson>>,
}

impl Arrangement {
    pub fn new(dim: usize, groups: Vec<Vec<Isometry>>, base: u64) -> Result<Self> {
        if base == 0 {
            return Err(Error::NonPositive("ladder base".into()));
        }
        if let Some(g) = groups.iter().flatten().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
        }
        Ok(Arrangement { dim, groups, base })
    }

    pub fn from_json(j: &ArrangementJson) -> Result<Self> {
        let groups = j
            .groups
            .iter()
            .map(|g| g.iter().map(Isometry::from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Self::new(j.dim, groups, j.base)
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            dim: self.dim,
            base: self.base,
            groups: self.groups.iter().map(|g| g.iter().map(Isometry::to_json).collect()).collect(),
        }
    }

    /// Generators of `A_i^k`.
    pub fn level_generators(&self, i: usize, k: u32) -> Vec<Isometry> {
        let e = self.base.pow(k);
        self.groups[i].iter().map(|g| g.power(e)).collect()
    }

    /// Generators of `A_σ^k`, the group generated by `A_i^k` for `i ∈ σ`.
    pub fn simplex_generators(&self, sigma: &[u32], k: u32) -> Vec<Isometry> {
        sigma.iter().flat_map(|&i| self.level_generators(i as usize, k)).collect()
    }

    /// Rank of an abelian group of isometries with finite-order linear
    /// parts: dimension of the span of its translation vectors on its minset.
    pub fn rank_of(&self, gens: &[Isometry]) -> Result<usize> {
        let m = minset_of_group(self.dim, gens)?;
        let ts: Vec<_> = gens.iter().map(|g| translation_on(g, &m)).collect();
        Ok(span_rank(&ts, self.dim))
    }
}

/// Nerve of a family of affine subspaces (exact intersection test).
pub fn nerve_of_subspaces(spaces: &[AffineSubspace]) -> SimplicialComplex {
    let mut all: Vec<Simplex> = Vec::new();
    let mut level: Vec<(Simplex, AffineSubspace)> =
        spaces.iter().enumerate().map(|(i, s)| (vec![i as u32], s.clone())).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for (alpha, x) in &level {
            for j in *alpha.last().unwrap() as usize + 1..spaces.len() {
                if let Some(y) = x.intersection(&spaces[j]) {
                    let mut beta = alpha.clone();
                    beta.push(j as u32);
                    next.push((beta, y));
                }
            }
        }
        all.extend(level.into_iter().map(|(a, _)| a));
        level = next;
    }
    SimplicialComplex::from_simplices(&all).expect("index sets are valid simplices")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Level {
    pub k: u32,
    pub minsets: Vec<AffineSubspace>,
    pub nerve: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct Ladder {
    pub levels: Vec<Level>,
    /// `Min(A_i^k) ⊆ Min(A_i^{k+1})` for every `i` and consecutive levels.
    pub nested: bool,
    /// Inclusions `nerve_k → nerve_{k+1}`.
    pub inclusions: Vec<SimplicialMap>,
}

pub fn ladder(arr: &Arrangement, top: u32) -> Result<Ladder> {
    let levels = (0..=top)
        .map(|k| {
            let minsets = (0..arr.groups.len())
                .map(|i| minset_of_group(arr.dim, &arr.level_generators(i, k)))
                .collect::<Result<Vec<_>>>()?;
            let nerve = nerve_of_subspaces(&minsets);
            Ok(Level { k, minsets, nerve })
        })
        .collect::<Result<Vec<_>>>()?;
    let nested = levels
        .windows(2)
        .all(|w| w[0].minsets.iter().zip(&w[1].minsets).all(|(a, b)| b.contains_subspace(a)));
    let inclusions = levels
        .windows(2)
        .map(|w| SimplicialMap::inclusion(&w[0].nerve, &w[1].nerve))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ladder { levels, nested, inclusions })
}

/// Outcome of the almost-abelian vanishing check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub n: usize,
    pub r: usize,
    pub top_level: u32,
    pub rank_hypothesis: bool,
    /// Simplex whose level-1 group has rank below `r`, if any.
    pub rank_failure: Option<(Simplex, usize)>,
    pub source_homology: HomologySummary,
    pub target_homology: HomologySummary,
    pub maps: Vec<InducedMap>,
    pub zero: bool,
}

impl VanishingVerdict {
    pub fn passed(&self) -> bool {
        !self.rank_hypothesis || self.zero
    }
}

/// The map `H_d(nerve of M) → H_d(nerve of M^K)`, `K = 2^{n−2−r}`, is zero
/// for every `d ≥ n−1−r`, provided every level-1 simplex group has rank
/// at least `r`.
pub fn almost_abelian_vanishing_check(arr: &Arrangement, n: usize, r: usize) -> Result<VanishingVerdict> {
    let top_level = 1u32 << n.saturating_sub(2 + r);
    let lad = ladder(arr, top_level.max(1))?;
    let mut rank_failure = None;
    for sigma in lad.levels[1].nerve.iter() {
        let rank = arr.rank_of(&arr.simplex_generators(sigma, 1))?;
        if rank < r {
            rank_failure = Some((sigma.clone(), rank));
            break;
        }
    }
    let source = &lad.levels[0].nerve;
    let target = &lad.levels[top_level as usize].nerve;
    let f = SimplicialMap::inclusion(source, target)?;
    let from = n.saturating_sub(1 + r);
    let upto = source.dim().map_or(0, |d| d + 1).max(from + 1);
    let maps = (from..upto).map(|d| induced_homology_map(&f, d)).collect::<Result<Vec<_>>>()?;
    let zero = maps.iter().all(|m| m.is_zero);
    Ok(VanishingVerdict {
        n,
        r,
        top_level,
        rank_hypothesis: rank_failure.is_none(),
        rank_failure,
        source_homology: homology(source),
        target_homology: homology(target),
        maps,
        zero,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemisimpleVerdict {
    pub k: u32,
    pub n: usize,
    pub r: usize,
    /// Every level-k minset contains the translation directions of `N` and
    /// each group's translations span exactly those directions.
    pub hypothesis: bool,
    pub homology: HomologySummary,
    pub factorization: bool,
    pub vanishes: bool,
}

impl SemisimpleVerdict {
    pub fn passed(&self) -> bool {
        !self.hypothesis || (self.vanishes && self.factorization)
    }
}

/// Homology of `Y^k = ∪_i Min(A_i^k)` (through the nerve of the minsets,
/// a good cover by affine subspaces) vanishes from degree `n−1−r`, where
/// every group shares the rank-`r` translation directions of `N`.
pub fn semisimple_vanish_check(arr: &Arrangement, common: &[Isometry], k: u32, n: usize) -> Result<SemisimpleVerdict> {
    let min_n = minset_of_group(arr.dim, common)?;
    let dirs: Vec<_> = common.iter().map(|g| translation_on(g, &min_n)).collect();
    let r = span_rank(&dirs, arr.dim);
    let (span, _) = crate::linalg::rref(&dirs, arr.dim);
    let mut hypothesis = true;
    let mut minsets = Vec::new();
    for i in 0..arr.groups.len() {
        let gens = arr.level_generators(i, k);
        let m = minset_of_group(arr.dim, &gens)?;
        let ts: Vec<_> = gens.iter().map(|g| translation_on(g, &m)).collect();
        let (own, _) = crate::linalg::rref(&ts, arr.dim);
        hypothesis &= own == span;
        minsets.push(m);
    }
    let factorization = minsets.iter().all(|m| span.iter().all(|v| m.contains_direction(v)));
    let nerve = nerve_of_subspaces(&minsets);
    let h = homology(&nerve);
    let vanishes = h.vanishes_from(n.saturating_sub(1 + r));
    Ok(SemisimpleVerdict { k, n, r, hypothesis, homology: h, factorization, vanishes })
}
