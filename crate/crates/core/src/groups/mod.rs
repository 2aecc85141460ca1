//! Abelian lattice subgroups of `ℤ^d`, unitriangular integer matrix groups,
//! and the displacement subadditivity check for products of isometries.

mod lattice;
mod subadditivity;
mod unitriangular;

pub use lattice::{GroupJson, LatticeSubgroup};
pub use subadditivity::{sqrt_decompose, subadditivity_check, SubadditivityVerdict};
pub use unitriangular::{commutator, ut_inverse, ut_log, GroupWord, UnitriangularGroup};

use crate::Result;

/// A parsed group label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Lattice(LatticeSubgroup),
    Unitriangular(UnitriangularGroup),
}

impl Group {
    pub fn from_json(j: &GroupJson) -> Result<Self> {
        match j {
            GroupJson::Lattice { ambient, rows } => Ok(Group::Lattice(LatticeSubgroup::new(*ambient, rows)?)),
            GroupJson::Unitriangular { size, generators } => {
                Ok(Group::Unitriangular(UnitriangularGroup::from_json(*size, generators)?))
            }
        }
    }
}
