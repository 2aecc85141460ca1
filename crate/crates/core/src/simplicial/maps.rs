use std::collections::BTreeMap;

use super::{induced_map, ChainComplex, HomologyBasis, InducedMap, SimplicialComplex, SparseMatrix};
use crate::{Error, Result};

/// A vertex map that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: BTreeMap<u32, u32>,
}

/// Sign of the permutation sorting `v`, or `None` when `v` repeats a value.
pub(crate) fn sort_sign(v: &mut [u32]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        let f = SimplicialMap { source, target, vertex_map };
        for s in f.source.iter() {
            let img = f.image(s)?;
            if !f.target.contains(&img) {
                return Err(Error::NotSimplicial(s.clone()));
            }
        }
        Ok(f)
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(source: &SimplicialComplex, target: &SimplicialComplex) -> Result<Self> {
        let vm = source.vertices().iter().map(|&v| (v, v)).collect();
        Self::new(source.clone(), target.clone(), vm)
    }

    pub fn identity(c: &SimplicialComplex) -> Self {
        let vm = c.vertices().iter().map(|&v| (v, v)).collect();
        SimplicialMap { source: c.clone(), target: c.clone(), vertex_map: vm }
    }

    /// Image simplex (sorted, duplicates collapsed).
    pub fn image(&self, s: &[u32]) -> Result<Vec<u32>> {
        let mut img = s
            .iter()
            .map(|v| {
                self.vertex_map
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::NotInAmbient(format!("vertex {v} has no image")))
            })
            .collect::<Result<Vec<u32>>>()?;
        img.sort_unstable();
        img.dedup();
        Ok(img)
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        let vm = self
            .vertex_map
            .iter()
            .map(|(&v, w)| after.vertex_map.get(w).map(|&x| (v, x)).ok_or(Error::NotSimplicial(vec![v])))
            .collect::<Result<_>>()?;
        SimplicialMap::new(self.source.clone(), after.target.clone(), vm)
    }

    /// The chain map in degree `d`; degenerate images map to zero.
    pub fn chain_map(&self, d: usize) -> SparseMatrix {
        let cols = self
            .source
            .simplices(d)
            .iter()
            .map(|s| {
                let mut img: Vec<u32> = s.iter().map(|v| self.vertex_map[v]).collect();
                match sort_sign(&mut img) {
                    Some(sign) => vec![(self.target.index_of(&img).expect("validated map"), sign)],
                    None => vec![],
                }
            })
            .collect();
        SparseMatrix { nrows: self.target.count(d), cols }
    }
}

/// `H_d(f)` in the bases computed by [`HomologyBasis`].
pub fn induced_homology_map(f: &SimplicialMap, d: usize) -> Result<InducedMap> {
    let src = ChainComplex::of_complex(&f.source);
    let tgt = ChainComplex::of_complex(&f.target);
    let out_of_range = d >= src.len().max(tgt.len());
    let mut m = induced_map(&HomologyBasis::new(&src, d), &HomologyBasis::new(&tgt, d), &f.chain_map(d))?;
    m.out_of_range = out_of_range;
    Ok(m)
}


