//! Covers by subcomplexes, their nerves and reduced nerves, the fattening
//! total complex and the assembly checks built on them.

mod assembly;
mod nerve;
mod reduced;
mod total;

pub use assembly::{assembly_bound_check, goodness_check, AssemblyVerdict, GoodnessEntry, GoodnessReport};
pub use nerve::{nerve, saturate, Nerve};
pub use reduced::{reduced_nerve, ReducedNerve};
pub use total::{fattening, fattening_homology, fattening_to_reduced, reduced_fattening, TotalComplex};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::simplicial::{ComplexJson, SimplicialComplex};
use crate::{Error, Result};

/// An indexed family of nonempty, pairwise distinct subcomplexes of an
/// ambient complex. Pieces are indexed `0..len()`; `names` keeps the keys
/// used on input.
#[derive(Clone, Debug)]
pub struct Cover {
    pub ambient: SimplicialComplex,
    pub pieces: Vec<SimplicialComplex>,
    pub names: Vec<String>,
    pub covering: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverJson {
    pub ambient: ComplexJson,
    pub pieces: BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default)]
    pub covering: bool,
}

/// Sorts keys numerically when they all parse as integers.
pub(crate) fn ordered_keys<V>(m: &BTreeMap<String, V>) -> Vec<&String> {
    let mut keys: Vec<&String> = m.keys().collect();
    if keys.iter().all(|k| k.parse::<i64>().is_ok()) {
        keys.sort_by_key(|k| k.parse::<i64>().unwrap());
    }
    keys
}

impl Cover {
    pub fn new(
        ambient: SimplicialComplex,
        pieces: Vec<SimplicialComplex>,
        names: Option<Vec<String>>,
        covering: bool,
    ) -> Result<Self> {
        let names = names.unwrap_or_else(|| (0..pieces.len()).map(|i| i.to_string()).collect());
        for (i, p) in pieces.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::DegenerateCover(format!("piece {} is empty", names[i])));
            }
            if !p.is_subcomplex_of(&ambient) {
                return Err(Error::NotInAmbient(format!("piece {}", names[i])));
            }
            if let Some(j) = (0..i).find(|&j| pieces[j] == *p) {
                return Err(Error::DegenerateCover(format!("pieces {} and {} are equal", names[j], names[i])));
            }
        }
        let c = Cover { ambient, pieces, names, covering };
        if covering && c.union().len() != c.ambient.len() {
            return Err(Error::NotCovering);
        }
        Ok(c)
    }

    pub fn from_json(j: &CoverJson) -> Result<Self> {
        let ambient = SimplicialComplex::from_json(&j.ambient)?;
        let keys = ordered_keys(&j.pieces);
        let pieces = keys
            .iter()
            .map(|k| SimplicialComplex::from_simplices(&j.pieces[*k]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, pieces, Some(keys.into_iter().cloned().collect()), j.covering)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> CoverJson {
        CoverJson {
            ambient: self.ambient.to_json(),
            pieces: self
                .names
                .iter()
                .zip(&self.pieces)
                .map(|(n, p)| (n.clone(), p.maximal_simplices()))
                .collect(),
            covering: self.covering,
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The space the cover describes: `∪ X_i`.
    pub fn union(&self) -> SimplicialComplex {
        let set = self.pieces.iter().flat_map(|p| p.iter().cloned()).collect();
        SimplicialComplex::from_closed_set(set)
    }

    /// `X_α = ∩_{i∈α} X_i` (the union for the empty index set).
    pub fn intersection(&self, alpha: &[u32]) -> SimplicialComplex {
        let Some((&first, rest)) = alpha.split_first() else { return self.union() };
        let mut acc = self.pieces[first as usize].clone();
        for &i in rest {
            acc = acc.intersection(&self.pieces[i as usize]);
        }
        acc
    }

    /// Adds a piece (used for monotonicity checks).
    pub fn with_piece(&self, piece: SimplicialComplex) -> Result<Cover> {
        let mut pieces = self.pieces.clone();
        pieces.push(piece);
        let mut names = self.names.clone();
        names.push(format!("{}", self.len()));
        Cover::new(self.ambient.union(pieces.last().unwrap()), pieces, Some(names), false)
    }
}
