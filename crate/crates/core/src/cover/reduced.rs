use std::collections::BTreeMap;

use super::{saturate, Cover, Nerve};
use crate::simplicial::{barycentric_subdivision, Simplex, SimplicialComplex, SimplicialMap, Subdivision};

/// The reduced nerve as a subcomplex of the barycentric subdivision of the
/// nerve, together with the retraction `p` onto it.
///
/// Vertices are the subdivision's vertex ids of saturated simplices. Distinct
/// saturated simplices always have distinct intersections, so every chain of
/// them is strictly decreasing in `X`.
#[derive(Clone, Debug)]
pub struct ReducedNerve {
    pub subdivision: Subdivision,
    pub complex: SimplicialComplex,
    pub retraction: SimplicialMap,
}

impl ReducedNerve {
    /// Nerve simplex represented by a vertex of the subdivision.
    pub fn simplex_of(&self, v: u32) -> &Simplex {
        &self.subdivision.vertex_simplices[v as usize]
    }

    /// The nerve simplex carrying the coefficients of a chain: its last
    /// (largest) element.
    pub fn last_of(&self, chain: &[u32]) -> &Simplex {
        self.simplex_of(*chain.last().expect("nonempty chain"))
    }
}

pub fn reduced_nerve(c: &Cover, n: &Nerve) -> ReducedNerve {
    let subdivision = barycentric_subdivision(&n.complex);
    let mut vertex_map = BTreeMap::new();
    for (id, alpha) in subdivision.vertex_simplices.iter().enumerate() {
        let sat = saturate(c, n, alpha).expect("nerve simplex");
        vertex_map.insert(id as u32, subdivision.vertex_of[&sat]);
    }
    let saturated: Vec<bool> = (0..subdivision.vertex_simplices.len() as u32).map(|v| vertex_map[&v] == v).collect();
    let complex = subdivision.complex.full_subcomplex(|v| saturated[v as usize]);
    let retraction = SimplicialMap::new(subdivision.complex.clone(), complex.clone(), vertex_map)
        .expect("saturation is monotone, so chains map to chains");
    ReducedNerve { subdivision, complex, retraction }
}
