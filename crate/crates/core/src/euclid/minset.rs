use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::affine::{span_rank, AffineSubspace};
use super::isometry::{add, sub, Isometry};
use crate::linalg::{least_squares, QMatrix, QVector};
use crate::{Error, Result};

/// The set where a displacement function attains its minimum, with the
/// minimal squared displacement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minset {
    pub subspace: AffineSubspace,
    pub displacement_sq: BigRational,
}

/// `Min(φ)`: least squares for `|(A − I)x + b|²`.
pub fn minset(phi: &Isometry) -> Minset {
    let d = phi.dim();
    let m: QMatrix = (0..d)
        .map(|i| (0..d).map(|j| if i == j { &phi.a[i][j] - BigRational::from_integer(1.into()) } else { phi.a[i][j].clone() }).collect())
        .collect();
    let minus_b: QVector = phi.b.iter().map(|x| -x.clone()).collect();
    let ls = least_squares(&m, d, &minus_b);
    let displacement_sq = phi.displacement_sq(&ls.particular);
    Minset { subspace: AffineSubspace::new(ls.particular, ls.directions), displacement_sq }
}

fn check_commuting(gens: &[Isometry]) -> Result<()> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::NonCommuting);
            }
        }
    }
    Ok(())
}

/// `Min(A) = ∩ Min(g)` over the generators of a commuting group (`ℝ^d` for
/// the trivial group).
pub fn minset_of_group(d: usize, gens: &[Isometry]) -> Result<AffineSubspace> {
    check_commuting(gens)?;
    let mut acc = AffineSubspace::whole(d);
    for g in gens {
        acc = acc
            .intersection(&minset(g).subspace)
            .ok_or_else(|| Error::Internal("commuting isometries with disjoint minsets".into()))?;
    }
    Ok(acc)
}

/// Translation vector of `g` on an invariant affine subspace on which it
/// acts by translation (`g(p) − p` at the base point).
pub fn translation_on(g: &Isometry, s: &AffineSubspace) -> QVector {
    sub(&g.apply(&s.base), &s.base)
}

/// Whether `g` maps `s` onto itself.
pub fn preserves(g: &Isometry, s: &AffineSubspace) -> bool {
    s.contains(&g.apply(&s.base))
        && s.directions.iter().all(|v| s.contains_direction(&crate::linalg::mat_vec(&g.a, v)))
}

/// Outcome of the splitting `Min(A) = C × ℝʳ`, `Min(A) ∩ Min(B) = D × ℝʳ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplittingReport {
    pub r: usize,
    pub min_a: AffineSubspace,
    pub min_b: AffineSubspace,
    pub c: AffineSubspace,
    pub translations: QMatrix,
    pub d: Option<AffineSubspace>,
    pub product_holds: bool,
    pub b_preserves_min_a: bool,
    pub intersection_splits: bool,
    pub projection_matches: bool,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.product_holds && self.b_preserves_min_a && self.intersection_splits && self.projection_matches
    }
}

/// Minset of the action induced on `c` by `g` (which preserves `c × ℝʳ`),
/// `x ↦ π_c(g x)` restricted to `c`.
fn induced_minset(g: &Isometry, c: &AffineSubspace) -> Option<AffineSubspace> {
    let k = c.dim();
    let f = |x: &QVector| sub(&c.project(&g.apply(x)), x);
    let m0 = f(&c.base);
    let cols: Vec<QVector> = c.directions.iter().map(|e| sub(&f(&add(&c.base, e)), &m0)).collect();
    let d = c.ambient_dim();
    let m: QMatrix = (0..d).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
    let rhs: QVector = m0.iter().map(|x| -x.clone()).collect();
    let ls = least_squares(&m, k, &rhs);
    let point_of = |s: &QVector| {
        let mut p = c.base.clone();
        for (e, si) in c.directions.iter().zip(s) {
            for (x, y) in p.iter_mut().zip(e) {
                *x += si * y;
            }
        }
        p
    };
    let origin_dir = vec![BigRational::from_integer(0.into()); k];
    let dirs: QMatrix = ls.directions.iter().map(|s| sub(&point_of(s), &point_of(&origin_dir))).collect();
    Some(AffineSubspace::new(point_of(&ls.particular), dirs))
}

pub fn splitting_check(d: usize, a: &[Isometry], b: &[Isometry]) -> Result<SplittingReport> {
    for x in a {
        for y in b {
            if !x.commutes_with(y) {
                return Err(Error::NonCommuting);
            }
        }
    }
    let min_a = minset_of_group(d, a)?;
    let min_b = minset_of_group(d, b)?;
    let translations: QMatrix = a.iter().map(|g| translation_on(g, &min_a)).collect();
    let r = span_rank(&translations, d);
    let c = AffineSubspace::new(min_a.base.clone(), min_a.directions_orthogonal_to(&translations));
    let (span, _) = crate::linalg::rref(&translations, d);
    let product_holds = span.iter().all(|v| min_a.contains_direction(v))
        && c.dim() + r == min_a.dim()
        && c.with_directions(&span) == min_a
        && a.iter().all(|g| preserves(g, &min_a));
    let b_preserves_min_a = b.iter().all(|g| preserves(g, &min_a));
    let mut dd = Some(c.clone());
    for g in b {
        let m = induced_minset(g, &c);
        dd = match (dd, m) {
            (Some(x), Some(y)) => x.intersection(&y),
            _ => None,
        };
    }
    let inter = min_a.intersection(&min_b);
    let intersection_splits = match (&inter, &dd) {
        (Some(i), Some(dd)) => *i == dd.with_directions(&span),
        _ => false,
    };
    let projection_matches = inter.as_ref().map_or(false, |i| min_a.project_subspace(&min_b) == *i);
    Ok(SplittingReport {
        r,
        min_a,
        min_b,
        c,
        translations,
        d: dd,
        product_holds,
        b_preserves_min_a,
        intersection_splits,
        projection_matches,
    })
}

/// Orthogonal projection onto an affine subspace.
pub fn closest_point_projection(c: &AffineSubspace, x: &[BigRational]) -> QVector {
    c.project(x)
}
