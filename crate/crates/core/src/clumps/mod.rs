//! Group-labelled patch systems, clumps, maximal clumps and the unfolding
//! complex assembled from their enlargements.

mod introduction;
mod maximal;
mod unfolding;

pub use introduction::{introduction_model, introduction_filling, FillingCertificate};
pub use maximal::{growing_ranks_check, maximal_chains, maximal_clumps, GrowingRanksVerdict, MaximalClump};
pub use unfolding::{unfolding_complex, unfolding_vanishing_check, Unfolding, UnfoldingVerdict};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cover::{nerve, ordered_keys, Cover, CoverJson, Nerve};
use crate::groups::{GroupJson, LatticeSubgroup};
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchFlags {
    #[serde(default)]
    pub parabolic: bool,
    #[serde(default)]
    pub semisimple: bool,
    /// Rank of the modelled (possibly nonabelian) group, when it differs
    /// from the lattice rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatchSystemJson {
    #[serde(flatten)]
    pub cover: CoverJson,
    pub groups: BTreeMap<String, GroupJson>,
    #[serde(default)]
    pub flags: BTreeMap<String, PatchFlags>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlargements: Option<BTreeMap<String, Vec<Vec<u32>>>>,
}

/// Patches `X_i` of a complex labelled by subgroups `G_i ⊆ ℤ^d`, with
/// optional enlargements `X_i ⊆ X_i^z`.
#[derive(Clone, Debug)]
pub struct PatchSystem {
    pub cover: Cover,
    pub groups: Vec<LatticeSubgroup>,
    pub flags: Vec<PatchFlags>,
    pub enlargements: Option<Vec<SimplicialComplex>>,
    nerve: Nerve,
    simplex_groups: BTreeMap<Simplex, LatticeSubgroup>,
}

/// Outcome of comparing `Y_N ∩ Y_M` with `Y_{⟨N,M⟩}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionVerdict {
    pub holds: bool,
    /// A simplex lying in exactly one side.
    pub certificate: Option<Simplex>,
}

#[derive(Clone, Debug)]
pub struct Clump {
    pub group: LatticeSubgroup,
    pub support: SimplicialComplex,
    /// Nerve simplices `σ` with `N ⊆ G_σ`.
    pub simplices: Vec<Simplex>,
}

impl PatchSystem {
    pub fn new(
        cover: Cover,
        groups: Vec<LatticeSubgroup>,
        flags: Vec<PatchFlags>,
        enlargements: Option<Vec<SimplicialComplex>>,
    ) -> Result<Self> {
        if groups.len() != cover.len() || flags.len() != cover.len() {
            return Err(Error::DimensionMismatch { expected: cover.len(), got: groups.len().min(flags.len()) });
        }
        if let Some(g) = groups.iter().find(|g| g.ambient() != groups[0].ambient()) {
            return Err(Error::AmbientMismatch { left: groups[0].ambient(), right: g.ambient() });
        }
        if let Some(z) = &enlargements {
            if z.len() != cover.len() {
                return Err(Error::DimensionMismatch { expected: cover.len(), got: z.len() });
            }
            for (i, (x, xz)) in cover.pieces.iter().zip(z).enumerate() {
                if !xz.is_subcomplex_of(&cover.ambient) {
                    return Err(Error::NotInAmbient(format!("enlargement of patch {}", cover.names[i])));
                }
                if !x.is_subcomplex_of(xz) {
                    return Err(Error::BadEnlargement(format!("patch {} is not inside its enlargement", cover.names[i])));
                }
            }
        }
        let nerve = nerve(&cover);
        let mut simplex_groups = BTreeMap::new();
        for sigma in nerve.intersections.keys() {
            let mut g = groups[sigma[0] as usize].clone();
            for &i in &sigma[1..] {
                g = g.join(&groups[i as usize])?;
            }
            simplex_groups.insert(sigma.clone(), g);
        }
        Ok(PatchSystem { cover, groups, flags, enlargements, nerve, simplex_groups })
    }

    pub fn from_json(j: &PatchSystemJson) -> Result<Self> {
        let cover = Cover::from_json(&j.cover)?;
        let keys: Vec<String> = ordered_keys(&j.cover.pieces).into_iter().cloned().collect();
        let lookup = |what: &str, k: &String| Error::Parse(format!("missing {what} for patch {k}"));
        let groups = keys
            .iter()
            .map(|k| match j.groups.get(k).ok_or_else(|| lookup("group", k))? {
                GroupJson::Lattice { ambient, rows } => LatticeSubgroup::new(*ambient, rows),
                GroupJson::Unitriangular { .. } => {
                    Err(Error::Parse(format!("patch {k}: labels must be lattices; annotate ranks in flags")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let flags = keys.iter().map(|k| j.flags.get(k).cloned().unwrap_or_default()).collect();
        let enlargements = match &j.enlargements {
            None => None,
            Some(m) => Some(
                keys.iter()
                    .map(|k| SimplicialComplex::from_simplices(m.get(k).ok_or_else(|| lookup("enlargement", k))?))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Self::new(cover, groups, flags, enlargements)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> PatchSystemJson {
        let names = &self.cover.names;
        PatchSystemJson {
            cover: self.cover.to_json(),
            groups: names
                .iter()
                .zip(&self.groups)
                .map(|(n, g)| {
                    let rows = g.basis().iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small label")).collect()).collect();
                    (n.clone(), GroupJson::Lattice { ambient: g.ambient(), rows })
                })
                .collect(),
            flags: names.iter().cloned().zip(self.flags.iter().cloned()).collect(),
            enlargements: self
                .enlargements
                .as_ref()
                .map(|z| names.iter().zip(z).map(|(n, x)| (n.clone(), x.maximal_simplices())).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.cover.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cover.is_empty()
    }

    pub fn ambient_rank(&self) -> usize {
        self.groups.first().map_or(0, LatticeSubgroup::ambient)
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    /// Rank used for growing-rank bookkeeping: the annotation if present.
    pub fn patch_rank(&self, i: usize) -> usize {
        self.flags[i].rank.unwrap_or_else(|| self.groups[i].rank())
    }

    /// `G_σ = ⟨G_i | i ∈ σ⟩`.
    pub fn group_of_simplex(&self, sigma: &[u32]) -> Result<&LatticeSubgroup> {
        self.simplex_groups.get(sigma).ok_or_else(|| Error::NotANerveSimplex(sigma.to_vec()))
    }

    pub fn simplex_groups(&self) -> impl Iterator<Item = (&Simplex, &LatticeSubgroup)> {
        self.simplex_groups.iter()
    }

    /// `X_σ^z = ∩_{i∈σ} X_i^z` (falls back to `X_σ` without enlargements).
    pub fn enlarged_intersection(&self, sigma: &[u32]) -> SimplicialComplex {
        match &self.enlargements {
            None => self.cover.intersection(sigma),
            Some(z) => {
                let mut acc = z[sigma[0] as usize].clone();
                for &i in &sigma[1..] {
                    acc = acc.intersection(&z[i as usize]);
                }
                acc
            }
        }
    }

    /// Nerve simplices whose group contains `n`.
    pub fn simplices_over(&self, n: &LatticeSubgroup) -> Vec<Simplex> {
        self.simplex_groups.iter().filter(|(_, g)| g.contains(n)).map(|(s, _)| s.clone()).collect()
    }

    /// `Y_N = ∪_{N ⊆ G_σ} X_σ`.
    pub fn clump(&self, n: &LatticeSubgroup) -> Clump {
        let simplices = self.simplices_over(n);
        let set: BTreeSet<Simplex> =
            simplices.iter().flat_map(|s| self.nerve.intersections[s].iter().cloned()).collect();
        Clump { group: n.clone(), support: SimplicialComplex::from_closed_set(set), simplices }
    }

    /// `Y_N^z = ∪_{N ⊆ G_σ} X_σ^z`.
    pub fn big_clump(&self, n: &LatticeSubgroup) -> SimplicialComplex {
        let set: BTreeSet<Simplex> =
            self.simplices_over(n).iter().flat_map(|s| self.enlarged_intersection(s).iter().cloned().collect::<Vec<_>>()).collect();
        SimplicialComplex::from_closed_set(set)
    }

    pub fn intersection_formula_check(&self, n: &LatticeSubgroup, m: &LatticeSubgroup) -> Result<IntersectionVerdict> {
        let lhs = self.clump(n).support.intersection(&self.clump(m).support);
        let rhs = self.clump(&n.join(m)?).support;
        let certificate = lhs
            .iter()
            .find(|s| !rhs.contains(s))
            .or_else(|| rhs.iter().find(|s| !lhs.contains(s)))
            .cloned();
        Ok(IntersectionVerdict { holds: certificate.is_none(), certificate })
    }

    /// For every nerve simplex, `N ⊆ G_σ` or `N ∩ G_σ` has infinite index in `N`.
    pub fn is_minimal(&self, n: &LatticeSubgroup) -> Result<bool> {
        for g in self.simplex_groups.values() {
            if g.contains(n) {
                continue;
            }
            if n.intersection(g)?.finite_index_in(n)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `X^z_ρ ⊇ X^z_σ` for `ρ ⊆ σ` and `X_σ ⊆ X^z_σ` on every nerve
    /// simplex. Returns the first offending pair.
    pub fn engulfing_check(&self) -> Option<(Simplex, Simplex)> {
        let zs: BTreeMap<&Simplex, SimplicialComplex> =
            self.simplex_groups.keys().map(|s| (s, self.enlarged_intersection(s))).collect();
        for (sigma, z) in &zs {
            if !self.nerve.intersections[*sigma].is_subcomplex_of(z) {
                return Some(((*sigma).clone(), (*sigma).clone()));
            }
            for (rho, zr) in &zs {
                if rho.len() < sigma.len() && rho.iter().all(|v| sigma.contains(v)) && !z.is_subcomplex_of(zr) {
                    return Some(((*rho).clone(), (*sigma).clone()));
                }
            }
        }
        None
    }

    /// Subgroups generated by labels of subsets of patches (deduplicated),
    /// including the trivial group.
    pub fn label_joins(&self) -> Vec<LatticeSubgroup> {
        let mut out: BTreeSet<LatticeSubgroup> = BTreeSet::new();
        out.insert(LatticeSubgroup::trivial(self.ambient_rank()));
        for g in &self.groups {
            let new: Vec<LatticeSubgroup> = out.iter().map(|h| h.join(g).expect("same ambient")).collect();
            out.extend(new);
        }
        out.into_iter().collect()
    }
}
