//! Scenario files, the lemma table and its dispatcher, scale constants and
//! seeded corpus generation.

mod constants;
mod verify;

pub use constants::{scale_ladder, Constants, ConstantsJson, ScaleLadder};
pub use verify::{lemma, lemmas, verify, Lemma, Status, Verdict};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clumps::PatchSystemJson;
use crate::cover::CoverJson;
use crate::euclid::{ArrangementJson, IsometryJson, RationalJson};
use crate::models;
use crate::periodic::{BoxUnionJson, FiniteCoverSpec};
use crate::{Error, Result};

/// Name of the random generator behind every seeded family. Changing the
/// generator changes this name.
pub const GENERATOR: &str = "chacha8-v1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnitriangularJson {
    pub size: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SplittingJson {
    pub dim: usize,
    pub a: Vec<IsometryJson>,
    pub b: Vec<IsometryJson>,
}

/// Inputs for the group and isometry checks, which have no complex.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct CompositeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitriangular: Option<UnitriangularJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometries: Option<Vec<IsometryJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<RationalJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Cover {
        cover: CoverJson,
    },
    PatchSystem {
        system: PatchSystemJson,
    },
    Arrangement {
        arrangement: ArrangementJson,
        /// Generators of the common group for the semisimple check.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        common: Option<Vec<IsometryJson>>,
    },
    BoxUnion {
        box_union: BoxUnionJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover_spec: Option<FiniteCoverSpec>,
    },
    Composite {
        parts: CompositeJson,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Cover { .. } => "cover",
            Payload::PatchSystem { .. } => "patch-system",
            Payload::Arrangement { .. } => "arrangement",
            Payload::BoxUnion { .. } => "box-union",
            Payload::Composite { .. } => "composite",
        }
    }
}

/// Parameters read by the checks; each check documents which it uses.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    /// Two lattices (as generator rows) for the intersection formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<Vec<i64>>>>,
    /// Indices into the maximal clump list, outermost first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsJson>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl Scenario {
    pub fn new(payload: Payload) -> Self {
        Scenario { payload, constants: None, params: Params::default(), seed: 0, family: None }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }
}

pub const FAMILIES: [&str; 5] =
    ["random-box-cover", "lattice-patch-system", "commuting-arrangement", "periodic-boxes", "introduction-model"];

/// Knobs for [`generate`]; unset fields take per-family defaults.
#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    pub pieces: Option<usize>,
    pub dim: Option<usize>,
    pub rank: Option<usize>,
    pub n: Option<usize>,
    pub order: Option<i64>,
}

/// A scenario from a named family. The output depends only on the family,
/// the parameters and the seed.
pub fn generate(family: &str, p: &FamilyParams, seed: u64) -> Result<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (payload, params) = match family {
        "random-box-cover" => {
            let dims: Vec<u32> = vec![3; p.dim.unwrap_or(2)];
            let cover = models::random_box_cover(&mut rng, &dims, p.pieces.unwrap_or(5))?;
            let params = Params { n: Some(p.n.unwrap_or(2)), ..Default::default() };
            (Payload::Cover { cover: cover.to_json() }, params)
        }
        "lattice-patch-system" => {
            let dims: Vec<u32> = vec![3; p.dim.unwrap_or(2)];
            let ps = models::random_patch_system(
                &mut rng,
                &dims,
                p.pieces.unwrap_or(3),
                p.rank.unwrap_or(2),
                models::Enlargement::Whole,
            )?;
            let params = Params { n: Some(p.n.unwrap_or(4)), r: Some(1), ..Default::default() };
            (Payload::PatchSystem { system: ps.to_json() }, params)
        }
        "commuting-arrangement" => {
            let d = p.dim.unwrap_or(3).max(2);
            let arr = models::random_arrangement(&mut rng, d, p.pieces.unwrap_or(3), 4);
            let params = Params { n: Some(p.n.unwrap_or(d + 1)), r: Some(p.rank.unwrap_or(1)), ..Default::default() };
            (Payload::Arrangement { arrangement: arr.to_json(), common: None }, params)
        }
        "periodic-boxes" => {
            let dim = p.dim.unwrap_or(2);
            let r = p.rank.unwrap_or(1);
            if r == 0 || r > dim {
                return Err(Error::Hypothesis(format!("periodic boxes need 1 ≤ r ≤ dim, got r = {r}")));
            }
            let bu = if r == dim { models::periodic_tiling(dim) } else { models::random_periodic_boxes(&mut rng, dim, r)? };
            let spec = models::random_cover_spec(&mut rng, &bu, vec![vec![p.order.unwrap_or(2)]]);
            let params = Params { w_max: Some(16), ..Default::default() };
            (Payload::BoxUnion { box_union: bu.to_json(), cover_spec: Some(spec) }, params)
        }
        "introduction-model" => {
            let ps = crate::clumps::introduction_model();
            let params = Params { n: Some(p.n.unwrap_or(4)), r: Some(1), ..Default::default() };
            (Payload::PatchSystem { system: ps.to_json() }, params)
        }
        other => return Err(Error::Unknown { kind: "family", name: other.into() }),
    };
    Ok(Scenario { payload, constants: None, params, seed, family: Some(family.into()) })
}
