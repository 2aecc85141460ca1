//! Exact Euclidean isometries with rational orthogonal linear parts, their
//! minsets, the splitting of commuting minsets, and arrangements of minsets
//! under the power ladder.

mod affine;
mod isometry;
mod ladder;
mod minset;

pub use affine::AffineSubspace;
pub use isometry::{qvec, Isometry, IsometryJson, RationalJson};
pub use ladder::{
    almost_abelian_vanishing_check, ladder, nerve_of_subspaces, semisimple_vanish_check, Arrangement,
    ArrangementJson, Ladder, Level, SemisimpleVerdict, VanishingVerdict,
};
pub use minset::{
    closest_point_projection, minset, minset_of_group, preserves, splitting_check, translation_on, Minset,
    SplittingReport,
};
