use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Cover, Nerve, ReducedNerve};
use crate::simplicial::{ChainComplex, HomologySummary, Simplex, SimplicialComplex, SparseMatrix};
use crate::Result;

/// Total complex of a diagram of subcomplexes over a base complex.
///
/// Each base simplex `σ` carries a coefficient complex `K(σ)` with
/// `K(σ) ⊆ K(d_iσ)`. Cells are pairs `σ ⊗ s` with `s ∈ K(σ)`, in degree
/// `dim σ + dim s`, and
/// `D(σ ⊗ s) = Σ_i (-1)^i d_iσ ⊗ s + (-1)^{dim σ} σ ⊗ ∂s`.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub base: SimplicialComplex,
    pub coefficients: Vec<SimplicialComplex>,
    /// Coefficient index per base simplex, keyed by (dim, index in base).
    pub coeff_of: HashMap<(usize, usize), usize>,
    /// Cells per total degree: (base dim, base index, coefficient simplex).
    pub cells: Vec<Vec<(usize, usize, Simplex)>>,
    index: Vec<HashMap<(usize, usize, Simplex), usize>>,
    pub chain: ChainComplex,
}

impl TotalComplex {
    pub fn build(
        base: &SimplicialComplex,
        coefficients: Vec<SimplicialComplex>,
        coeff: impl Fn(&Simplex) -> usize,
    ) -> Self {
        let mut coeff_of = HashMap::new();
        let mut top = 0;
        for p in 0..base.dim().map_or(0, |d| d + 1) {
            for (i, s) in base.simplices(p).iter().enumerate() {
                let k = coeff(s);
                if let Some(d) = coefficients[k].dim() {
                    top = top.max(p + d + 1);
                }
                coeff_of.insert((p, i), k);
            }
        }
        let mut cells: Vec<Vec<(usize, usize, Simplex)>> = vec![Vec::new(); top];
        for p in 0..base.dim().map_or(0, |d| d + 1) {
            for i in 0..base.count(p) {
                let k = &coefficients[coeff_of[&(p, i)]];
                for q in 0..k.dim().map_or(0, |d| d + 1) {
                    for s in k.simplices(q) {
                        cells[p + q].push((p, i, s.clone()));
                    }
                }
            }
        }
        let index: Vec<HashMap<(usize, usize, Simplex), usize>> = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(j, c)| (c.clone(), j)).collect())
            .collect();
        let boundaries = (0..top)
            .map(|n| {
                if n == 0 {
                    return SparseMatrix::zero(0, cells[0].len());
                }
                let cols = cells[n]
                    .iter()
                    .map(|(p, i, s)| {
                        let mut col = Vec::new();
                        let sigma = &base.simplices(*p)[*i];
                        if *p > 0 {
                            for skip in 0..sigma.len() {
                                let f = base.face_index(sigma, skip);
                                let sign = if skip % 2 == 0 { 1 } else { -1 };
                                col.push((index[n - 1][&(*p - 1, f, s.clone())], sign));
                            }
                        }
                        if s.len() > 1 {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            for skip in 0..s.len() {
                                let face: Simplex =
                                    s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                                let fs = if skip % 2 == 0 { sign } else { -sign };
                                col.push((index[n - 1][&(*p, *i, face)], fs));
                            }
                        }
                        col
                    })
                    .collect();
                SparseMatrix { nrows: cells[n - 1].len(), cols }
            })
            .collect();
        let ranks = cells.iter().map(Vec::len).collect();
        let chain = ChainComplex::new(ranks, boundaries);
        TotalComplex { base: base.clone(), coefficients, coeff_of, cells, index, chain }
    }

    pub fn cell_index(&self, base_dim: usize, base_index: usize, s: &[u32]) -> Option<usize> {
        let n = base_dim + s.len() - 1;
        self.index.get(n)?.get(&(base_dim, base_index, s.to_vec())).copied()
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        self.chain.homology()
    }

    /// The collapse `σ ⊗ s ↦ s` for 0-dimensional `σ` (and 0 otherwise),
    /// as a chain map into `C_n(target)`.
    pub fn collapse_map(&self, target: &SimplicialComplex, n: usize) -> SparseMatrix {
        let cols = self
            .cells
            .get(n)
            .map(|level| {
                level
                    .iter()
                    .map(|(p, _, s)| {
                        if *p == 0 {
                            vec![(target.index_of(s).expect("coefficients lie in the target"), 1)]
                        } else {
                            vec![]
                        }
                    })
                    .collect()
            })
            .unwrap_or_default();
        SparseMatrix { nrows: target.count(n), cols }
    }
}

/// `ΔX`: the total complex over the nerve with coefficients `X_α`.
pub fn fattening(n: &Nerve) -> TotalComplex {
    let pos: HashMap<&Simplex, usize> = n.intersections.keys().enumerate().map(|(i, s)| (s, i)).collect();
    let coefficients = n.intersections.values().cloned().collect();
    TotalComplex::build(&n.complex, coefficients, |s| pos[s])
}

/// `Δ̄X`: the total complex over the reduced nerve, where a chain
/// `α₀ ⊂ … ⊂ α_k` carries `X_{α_k}`.
pub fn reduced_fattening(n: &Nerve, r: &ReducedNerve) -> TotalComplex {
    let vertices: Vec<u32> = r.complex.vertices().iter().copied().collect();
    let pos: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let coefficients = vertices.iter().map(|&v| n.intersections[r.simplex_of(v)].clone()).collect();
    TotalComplex::build(&r.complex, coefficients, |chain| pos[chain.last().unwrap()])
}

pub fn fattening_homology(c: &Cover) -> Result<HomologySummary> {
    fattening(&super::nerve(c)).homology()
}

impl TotalComplex {
    /// Lifts a cycle `z ∈ C_d(target)` through the collapse map of a
    /// nerve-type total complex (coefficient of `σ` is the intersection of
    /// the vertex coefficients). Uses the cone contraction of the Čech
    /// direction: each fibre simplex `t` is coned from the smallest piece
    /// containing it. The result is a cycle `x` with `collapse(x) = z`.
    pub fn lift_cycle(&self, target: &SimplicialComplex, d: usize, z: &[BigInt]) -> Vec<BigInt> {
        let nverts = self.base.count(0);
        let cone_vertex = |t: &Simplex| -> Option<u32> {
            (0..nverts)
                .find(|&i| self.coefficients[self.coeff_of[&(0, i)]].contains(t))
                .map(|i| self.base.simplices(0)[i][0])
        };
        let mut out = vec![BigInt::zero(); self.cells.get(d).map_or(0, Vec::len)];
        // current layer: (base simplex, fibre simplex) -> coefficient
        let mut layer: BTreeMap<(Simplex, Simplex), BigInt> = BTreeMap::new();
        for (k, x) in z.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let t = &target.simplices(d)[k];
            let j = cone_vertex(t).expect("cycle lies in the union of the pieces");
            *layer.entry((vec![j], t.clone())).or_default() += x;
        }
        let mut p = 0;
        while !layer.is_empty() {
            for ((sigma, t), x) in &layer {
                let i = self.base.index_of(sigma).expect("base simplex");
                out[self.cell_index(p, i, t).expect("cell of the total complex")] += x;
            }
            if p == d {
                break;
            }
            // x_{p+1} = (-1)^{p+1} h(∂_fibre x_p)
            let mut next: BTreeMap<(Simplex, Simplex), BigInt> = BTreeMap::new();
            let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
            for ((sigma, t), x) in &layer {
                if t.len() < 2 {
                    continue;
                }
                for skip in 0..t.len() {
                    let face: Simplex = t.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    let j = cone_vertex(&face).expect("faces lie in the pieces");
                    if sigma.contains(&j) {
                        continue;
                    }
                    let mut up = vec![j];
                    up.extend(sigma);
                    let c = if skip % 2 == 0 { sign } else { -sign };
                    *next.entry((up, face)).or_default() += x * c;
                }
            }
            next.retain(|_, x| !x.is_zero());
            layer = next;
            p += 1;
        }
        out
    }
}

/// The chain map `ΔX → Δ̄X` in total degree `d`: subdivide the base, then
/// retract onto the reduced nerve. Coefficients are unchanged since a
/// simplex and its saturation have the same intersection.
pub fn fattening_to_reduced(n: &Nerve, r: &ReducedNerve, full: &TotalComplex, red: &TotalComplex, d: usize) -> SparseMatrix {
    let base_maps: Vec<SparseMatrix> = (0..=d)
        .map(|p| r.retraction.chain_map(p).compose(&r.subdivision.chain_map(&n.complex, p)))
        .collect();
    let cols = full
        .cells
        .get(d)
        .map(|level| {
            level
                .iter()
                .map(|(p, i, t)| {
                    base_maps[*p].cols[*i]
                        .iter()
                        .map(|&(k, c)| (red.cell_index(*p, k, t).expect("coefficient preserved"), c))
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default();
    let mut m = SparseMatrix { nrows: red.cells.get(d).map_or(0, Vec::len), cols };
    m.normalize();
    m
}
