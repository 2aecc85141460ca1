use std::collections::BTreeMap;

use super::Cover;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::{Error, Result};

/// The nerve of a cover, with `X_α` recorded for every simplex `α`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub complex: SimplicialComplex,
    pub intersections: BTreeMap<Simplex, SimplicialComplex>,
}

impl Nerve {
    pub fn intersection(&self, alpha: &[u32]) -> Result<&SimplicialComplex> {
        self.intersections.get(alpha).ok_or_else(|| Error::NotANerveSimplex(alpha.to_vec()))
    }
}

/// Level-by-level enumeration: `α ∪ {j}` (with `j > max α`) is tried only
/// when `α` is already a nerve simplex.
pub fn nerve(c: &Cover) -> Nerve {
    let mut intersections = BTreeMap::new();
    let mut level: Vec<(Simplex, SimplicialComplex)> =
        c.pieces.iter().enumerate().map(|(i, p)| (vec![i as u32], p.clone())).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for (alpha, x) in &level {
            let last = *alpha.last().unwrap() as usize;
            for j in last + 1..c.len() {
                let y = x.intersection(&c.pieces[j]);
                if !y.is_empty() {
                    let mut beta = alpha.clone();
                    beta.push(j as u32);
                    next.push((beta, y));
                }
            }
        }
        intersections.extend(level);
        level = next;
    }
    let complex = SimplicialComplex::from_closed_set(intersections.keys().cloned().collect());
    Nerve { complex, intersections }
}

/// `ᾱ = {i | X_i ⊇ X_α}`.
pub fn saturate(c: &Cover, n: &Nerve, alpha: &[u32]) -> Result<Simplex> {
    let x = n.intersection(alpha)?;
    Ok((0..c.len() as u32).filter(|&i| x.is_subcomplex_of(&c.pieces[i as usize])).collect())
}
