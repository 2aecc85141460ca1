use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{maximal_clumps, MaximalClump, PatchSystem};
use crate::cover::{fattening, fattening_to_reduced, nerve, reduced_fattening, reduced_nerve, Cover, Nerve, ReducedNerve, TotalComplex};
use crate::simplicial::{homology, ChainComplex, HomologyBasis, HomologySummary, InducedMap, SimplicialComplex, SparseMatrix};
use crate::{Error, Result};

/// The unfolding space `^uL` of `L = ∪ Y_α`.
///
/// The base is the complex of strictly decreasing chains of maximal clumps
/// (the reduced nerve of `{Y_α}`, which is closed under intersections). A
/// chain ending in `Y_γ` carries `Y_γ^z`. `ΔL` maps in through `Δ̄L`, which
/// has the same base with coefficients `Y_γ`.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub clumps: Vec<MaximalClump>,
    pub union: SimplicialComplex,
    pub cover: Cover,
    pub nerve: Nerve,
    pub reduced: ReducedNerve,
    /// Clump index for each vertex of the reduced nerve.
    pub clump_of_vertex: HashMap<u32, usize>,
    pub delta: TotalComplex,
    pub folded: TotalComplex,
    pub unfolded: TotalComplex,
    /// Pairs `(α, β, γ)` with `Y_α ∩ Y_β = Y_γ` but `Y_α^z ∩ Y_β^z ⊋ Y_γ^z`.
    pub enlargement_gaps: Vec<(usize, usize, usize)>,
}

impl Unfolding {
    /// Chain map `ΔL → ^uL` in total degree `d`.
    pub fn map(&self, d: usize) -> SparseMatrix {
        let m = fattening_to_reduced(&self.nerve, &self.reduced, &self.delta, &self.folded, d);
        let cols = self
            .folded
            .cells
            .get(d)
            .map(|level| {
                level
                    .iter()
                    .map(|(p, i, t)| vec![(self.unfolded.cell_index(*p, *i, t).expect("Y ⊆ Y^z"), 1)])
                    .collect()
            })
            .unwrap_or_default();
        let incl = SparseMatrix { nrows: self.unfolded.cells.get(d).map_or(0, Vec::len), cols };
        incl.compose(&m)
    }

    /// Image in `C_d(^uL)` of a cycle of `L`.
    pub fn push_cycle(&self, d: usize, z: &[BigInt]) -> Vec<BigInt> {
        let lifted = self.delta.lift_cycle(&self.union, d, z);
        self.map(d).apply(&lifted)
    }

    /// `H_d(L) → H_d(^uL)`.
    pub fn induced(&self, d: usize) -> Result<InducedMap> {
        let src = HomologyBasis::new(&ChainComplex::of_complex(&self.union), d);
        let tgt = HomologyBasis::new(&self.unfolded.chain, d);
        let lifted: Vec<Vec<BigInt>> =
            src.generators().iter().map(|g| self.delta.lift_cycle(&self.union, d, g)).collect();
        let m = self.map(d);
        let matrix: Vec<Vec<BigInt>> = lifted.iter().map(|x| tgt.class_of(&m.apply(x))).collect::<Result<_>>()?;
        Ok(InducedMap {
            degree: d,
            is_zero: matrix.iter().flatten().all(Zero::is_zero),
            matrix,
            source_torsion: src.torsion.clone(),
            target_torsion: tgt.torsion.clone(),
            source_rank: src.free_rank,
            target_rank: tgt.free_rank,
            out_of_range: false,
        })
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        self.unfolded.homology()
    }
}

pub fn unfolding_complex(ps: &PatchSystem) -> Result<Unfolding> {
    let clumps = maximal_clumps(ps);
    if clumps.is_empty() {
        return Err(Error::Hypothesis("no maximal clumps: every label is finite".into()));
    }
    let pieces: Vec<SimplicialComplex> = clumps.iter().map(|c| c.support.clone()).collect();
    let union = pieces.iter().fold(SimplicialComplex::empty(), |a, p| a.union(p));
    let cover = Cover::new(union.clone(), pieces, None, true)?;
    let nerve = nerve(&cover);
    let reduced = reduced_nerve(&cover, &nerve);
    let index_of_support = |x: &SimplicialComplex| clumps.iter().position(|c| c.support == *x);
    let mut clump_of_vertex = HashMap::new();
    for &v in reduced.complex.vertices() {
        let x = &nerve.intersections[reduced.simplex_of(v)];
        let g = index_of_support(x)
            .ok_or_else(|| Error::Internal("maximal clumps are not closed under intersection".into()))?;
        clump_of_vertex.insert(v, g);
    }
    let mut enlargement_gaps = Vec::new();
    for a in 0..clumps.len() {
        for b in a + 1..clumps.len() {
            if let Some(x) = nerve.intersections.get(&vec![a as u32, b as u32]) {
                let g = index_of_support(x)
                    .ok_or_else(|| Error::Internal("maximal clumps are not closed under intersection".into()))?;
                if clumps[a].big_support.intersection(&clumps[b].big_support) != clumps[g].big_support {
                    enlargement_gaps.push((a, b, g));
                }
            }
        }
    }
    let delta = fattening(&nerve);
    let folded = reduced_fattening(&nerve, &reduced);
    let verts: Vec<u32> = reduced.complex.vertices().iter().copied().collect();
    let pos: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let bigs = verts.iter().map(|v| clumps[clump_of_vertex[v]].big_support.clone()).collect();
    let unfolded = TotalComplex::build(&reduced.complex, bigs, |chain| pos[chain.last().unwrap()]);
    unfolded.chain.check()?;
    Ok(Unfolding { clumps, union, cover, nerve, reduced, clump_of_vertex, delta, folded, unfolded, enlargement_gaps })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnfoldingVerdict {
    pub n: usize,
    pub r: usize,
    /// `n − 1 − r`, the first degree that must vanish.
    pub degree: usize,
    pub hypotheses_hold: bool,
    /// Clump indices of the first chain whose enlargement fails
    /// `H̃_{≥ n−1−(k+r)} = 0`.
    pub failed_chain: Option<Vec<usize>>,
    /// `H_{≥ n−1−r}` of the chain complex of clumps vanishes.
    pub base_vanishes: bool,
    pub unfolded_homology: HomologySummary,
    pub union_homology: HomologySummary,
    pub vanishes: bool,
    pub composite_zero: bool,
    pub enlargement_gaps: usize,
}

impl UnfoldingVerdict {
    /// Fails only when the hypotheses hold and a conclusion does not.
    pub fn passed(&self) -> bool {
        !self.hypotheses_hold || (self.vanishes && self.composite_zero)
    }
}

pub fn unfolding_vanishing_check(ps: &PatchSystem, n: usize, r: usize) -> Result<UnfoldingVerdict> {
    let u = unfolding_complex(ps)?;
    let degree = n.saturating_sub(1 + r);
    let mut failed_chain = None;
    'outer: for k in 0..u.reduced.complex.dim().map_or(0, |d| d + 1) {
        for chain in u.reduced.complex.simplices(k) {
            let last = u.clump_of_vertex[chain.last().unwrap()];
            let h = homology(&u.clumps[last].big_support).reduced();
            if !h.vanishes_from(n.saturating_sub(1 + k + r)) {
                failed_chain = Some(chain.iter().map(|v| u.clump_of_vertex[v]).collect());
                break 'outer;
            }
        }
    }
    let base_vanishes = homology(&u.reduced.complex).vanishes_from(degree);
    let unfolded_homology = u.homology()?;
    let union_homology = homology(&u.union);
    let vanishes = unfolded_homology.vanishes_from(degree);
    let top = union_homology.top().unwrap_or(0);
    let mut composite_zero = true;
    for d in degree..=top {
        if !union_homology.vanishes_in(d) && !u.induced(d)?.is_zero {
            composite_zero = false;
        }
    }
    Ok(UnfoldingVerdict {
        n,
        r,
        degree,
        hypotheses_hold: failed_chain.is_none() && base_vanishes,
        failed_chain,
        base_vanishes,
        unfolded_homology,
        union_homology,
        vanishes,
        composite_zero,
        enlargement_gaps: u.enlargement_gaps.len(),
    })
}
