use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{unfolding_complex, PatchFlags, PatchSystem};
use crate::cover::Cover;
use crate::groups::LatticeSubgroup;
use crate::simplicial::{solve_boundary, ChainComplex, HomologyBasis, SimplicialComplex};
use crate::{Error, Result};

const TOP: u32 = 0;
const BOTTOM: u32 = 1;
const CENTER: u32 = 6;
const EQUATOR: [u32; 4] = [2, 3, 4, 5];

fn tets(apex: u32) -> Vec<Vec<u32>> {
    (0..4)
        .map(|i| {
            let mut t = vec![apex, EQUATOR[i], EQUATOR[(i + 1) % 4], CENTER];
            t.sort_unstable();
            t
        })
        .collect()
}

/// A filled octahedron cut into eight tetrahedra around its center. The four
/// upper tetrahedra are patches labelled `⟨(1,0)⟩`, the four lower ones are
/// labelled `⟨(0,1)⟩`, so mixed overlaps carry `ℤ²`. Enlargements are the
/// identity.
pub fn introduction_model() -> PatchSystem {
    let mut pieces = Vec::new();
    let mut names = Vec::new();
    let mut groups = Vec::new();
    for (apex, name, row) in [(TOP, "U", vec![1, 0]), (BOTTOM, "V", vec![0, 1])] {
        for (i, t) in tets(apex).into_iter().enumerate() {
            pieces.push(SimplicialComplex::from_simplices(&[t]).expect("tetrahedron"));
            names.push(format!("{name}{i}"));
            groups.push(LatticeSubgroup::new(2, &[row.clone()]).expect("rank-2 label"));
        }
    }
    let ambient = pieces.iter().fold(SimplicialComplex::empty(), |a, p| a.union(p));
    let cover = Cover::new(ambient, pieces.clone(), Some(names), true).expect("distinct tetrahedra");
    let flags = vec![PatchFlags { parabolic: true, ..Default::default() }; 8];
    PatchSystem::new(cover, groups, flags, Some(pieces)).expect("valid system")
}

/// The cycle `z = a + b` on the octahedron boundary, its splitting along the
/// equator, and a filling assembled as `z = (a − c) + (c + b)`.
#[derive(Clone, Debug, Serialize)]
pub struct FillingCertificate {
    /// Chains are coefficient vectors over the triangles (or, for the
    /// filling, tetrahedra) of `L`, in the order of `L`'s simplex lists.
    pub cycle: Vec<BigInt>,
    pub upper: Vec<BigInt>,
    pub lower: Vec<BigInt>,
    /// `c` in `U ∩ V` with `∂c = ∂a`.
    pub bridge: Vec<BigInt>,
    pub filling: Vec<BigInt>,
    /// `∂(filling) = z`, checked by exact chain arithmetic.
    pub verified: bool,
    /// Coordinates of the image of `[z]` in `H₂(^uL)`.
    pub unfolded_class: Vec<BigInt>,
    pub zero_in_unfolded: bool,
}

/// Re-indexes a `d`-chain of `from` as a chain of `to`.
fn transport(from: &SimplicialComplex, to: &SimplicialComplex, d: usize, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); to.count(d)];
    for (k, v) in x.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let s = &from.simplices(d)[k];
        let j = to.index_of(s).ok_or_else(|| Error::NotInAmbient(format!("{s:?}")))?;
        out[j] += v;
    }
    Ok(out)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn introduction_filling(ps: &PatchSystem) -> Result<FillingCertificate> {
    let gamma = &ps.groups[0];
    let rho = &ps.groups[4];
    let u = ps.clump(gamma).support;
    let v = ps.clump(rho).support;
    let w = ps.clump(&gamma.join(rho)?).support;
    let l = u.union(&v);
    let sphere_simplices: Vec<Vec<u32>> = l.simplices(2).iter().filter(|t| !t.contains(&CENTER)).cloned().collect();
    let sphere = SimplicialComplex::from_simplices(&sphere_simplices)?;
    let hs = HomologyBasis::new(&ChainComplex::of_complex(&sphere), 2);
    if hs.len() != 1 {
        return Err(Error::Internal("octahedron boundary is not a 2-sphere".into()));
    }
    let cycle = transport(&sphere, &l, 2, &hs.generator(0))?;
    let upper: Vec<BigInt> = cycle
        .iter()
        .zip(l.simplices(2))
        .map(|(x, t)| if t.contains(&TOP) { x.clone() } else { BigInt::zero() })
        .collect();
    let lower = sub(&cycle, &upper);
    let cl = ChainComplex::of_complex(&l);
    let da = cl.boundary(2).apply(&upper);
    let cw = ChainComplex::of_complex(&w);
    let bridge_w = solve_boundary(&cw, 1, &transport(&l, &w, 1, &da)?)
        .ok_or_else(|| Error::Hypothesis("∂a does not bound in U ∩ V".into()))?;
    let bridge = transport(&w, &l, 2, &bridge_w)?;
    let mut filling = vec![BigInt::zero(); l.count(3)];
    for (piece, chain) in [(&u, sub(&upper, &bridge)), (&v, add(&bridge, &lower))] {
        let cp = ChainComplex::of_complex(piece);
        let f = solve_boundary(&cp, 2, &transport(&l, piece, 2, &chain)?)
            .ok_or_else(|| Error::Hypothesis("a piece of z does not bound in its clump".into()))?;
        filling = add(&filling, &transport(piece, &l, 3, &f)?);
    }
    let verified = cl.boundary(3).apply(&filling) == cycle;
    let unfolding = unfolding_complex(ps)?;
    let pushed = unfolding.push_cycle(2, &transport(&l, &unfolding.union, 2, &cycle)?);
    let unfolded_class = HomologyBasis::new(&unfolding.unfolded.chain, 2).class_of(&pushed)?;
    let zero_in_unfolded = unfolded_class.iter().all(Zero::is_zero);
    Ok(FillingCertificate { cycle, upper, lower, bridge, filling, verified, unfolded_class, zero_in_unfolded })
}
