use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{SimplicialComplex, Simplex, SparseMatrix};

/// Barycentric subdivision of a complex.
///
/// Vertex `i` of the result is the barycenter of `vertex_simplices[i]`;
/// simplices are numbered by dimension first and lexicographically within a
/// dimension, so every chain `σ₀ ⊂ … ⊂ σ_k` is listed in increasing vertex
/// order.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub vertex_simplices: Vec<Simplex>,
    pub vertex_of: BTreeMap<Simplex, u32>,
}

fn chains_from(
    c: &SimplicialComplex,
    vertex_of: &BTreeMap<Simplex, u32>,
    s: &Simplex,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Simplex>,
) {
    prefix.push(vertex_of[s]);
    if s.len() == 1 {
        let mut chain = prefix.clone();
        chain.sort_unstable();
        out.push(chain);
    } else {
        for skip in 0..s.len() {
            let f = &c.simplices(s.len() - 2)[c.face_index(s, skip)];
            chains_from(c, vertex_of, f, prefix, out);
        }
    }
    prefix.pop();
}

pub fn barycentric_subdivision(c: &SimplicialComplex) -> Subdivision {
    let vertex_simplices: Vec<Simplex> = c.iter().cloned().collect();
    let vertex_of: BTreeMap<Simplex, u32> =
        vertex_simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
    let mut chains = Vec::new();
    for s in c.maximal_simplices() {
        chains_from(c, &vertex_of, &s, &mut Vec::new(), &mut chains);
    }
    let complex = SimplicialComplex::from_simplices(&chains).expect("chains are nondegenerate");
    Subdivision { complex, vertex_simplices, vertex_of }
}

impl Subdivision {
    /// The subdivision chain map `C_d(c) → C_d(sd c)` given by
    /// `sd(v) = b_v` and `sd(σ) = (-1)^d · sd(∂σ) * b_σ`, where `* b` appends
    /// the barycenter as last vertex.
    pub fn chain_map(&self, c: &SimplicialComplex, d: usize) -> SparseMatrix {
        let cols = c
            .simplices(d)
            .iter()
            .map(|s| {
                self.sd(c, s)
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(t, v)| {
                        let v: i64 = (&v).try_into().expect("subdivision coefficients are ±1");
                        (self.complex.index_of(&t).expect("chain of faces"), v)
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: self.complex.count(d), cols }
    }

    fn sd(&self, c: &SimplicialComplex, s: &[u32]) -> BTreeMap<Simplex, BigInt> {
        let b = self.vertex_of[s];
        let mut out = BTreeMap::new();
        if s.len() == 1 {
            out.insert(vec![b], BigInt::from(1));
            return out;
        }
        let d = s.len() - 1;
        let sign: i64 = if d % 2 == 0 { 1 } else { -1 };
        for skip in 0..s.len() {
            let face_sign: i64 = if skip % 2 == 0 { 1 } else { -1 };
            let f = &c.simplices(d - 1)[c.face_index(s, skip)];
            for (mut t, v) in self.sd(c, f) {
                t.push(b);
                *out.entry(t).or_insert_with(BigInt::zero) += v * sign * face_sign;
            }
        }
        out
    }
}
