//! Standard triangulations and random cover families used by scenarios,
//! tests and the command line generator.

use rand::Rng;

use crate::cover::Cover;
use crate::euclid::Isometry;
use crate::linalg::q_int;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::Result;

/// Freudenthal (Kuhn) triangulation of the lattice box `[0, n_1] × … × [0, n_m]`.
///
/// Every sub-box with integer corners is triangulated by the full subcomplex
/// on its lattice points, so boxes and their intersections are contractible.
#[derive(Clone, Debug)]
pub struct Grid {
    pub dims: Vec<u32>,
    pub complex: SimplicialComplex,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

impl Grid {
    /// Every side length must be at least 1.
    pub fn new(dims: &[u32]) -> Self {
        assert!(dims.iter().all(|&d| d > 0), "grid sides must be positive");
        let mut g = Grid { dims: dims.to_vec(), complex: SimplicialComplex::empty() };
        let perms = permutations(dims.len());
        let mut simplices: Vec<Simplex> = Vec::new();
        let far: Vec<u32> = dims.iter().map(|d| d - 1).collect();
        for corner in g.points(&vec![0; dims.len()], &far) {
            for p in &perms {
                let mut x = corner.clone();
                let mut s = vec![g.vertex(&x)];
                for &axis in p {
                    x[axis] += 1;
                    s.push(g.vertex(&x));
                }
                simplices.push(s);
            }
        }
        g.complex = SimplicialComplex::from_simplices(&simplices).expect("grid simplices are valid");
        g
    }

    pub fn vertex(&self, x: &[u32]) -> u32 {
        let mut id = 0;
        for (k, &c) in x.iter().enumerate().rev() {
            id = id * (self.dims[k] + 1) + c;
        }
        id
    }

    pub fn coords(&self, mut v: u32) -> Vec<u32> {
        self.dims
            .iter()
            .map(|&d| {
                let c = v % (d + 1);
                v /= d + 1;
                c
            })
            .collect()
    }

    /// Lattice points of the box `[lo, hi]`.
    pub fn points(&self, lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for k in 0..lo.len() {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    (lo[k]..=hi[k]).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The triangulated sub-box `[lo, hi]`.
    pub fn sub_box(&self, lo: &[u32], hi: &[u32]) -> SimplicialComplex {
        self.complex.full_subcomplex(|v| {
            let c = self.coords(v);
            (0..c.len()).all(|k| lo[k] <= c[k] && c[k] <= hi[k])
        })
    }

    fn random_box(&self, rng: &mut impl Rng) -> (Vec<u32>, Vec<u32>) {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for &d in &self.dims {
            let a = rng.gen_range(0..=d);
            let b = rng.gen_range(0..=d);
            lo.push(a.min(b));
            hi.push(a.max(b));
        }
        (lo, hi)
    }
}

/// A random cover of a union of boxes in a triangulated grid. Each piece is
/// a union of `1..=max_boxes` random sub-boxes; duplicates are redrawn.
pub fn random_box_union_cover(
    rng: &mut impl Rng,
    dims: &[u32],
    pieces: usize,
    max_boxes: usize,
) -> Result<Cover> {
    let g = Grid::new(dims);
    let mut out: Vec<SimplicialComplex> = Vec::new();
    while out.len() < pieces {
        let k = rng.gen_range(1..=max_boxes.max(1));
        let mut p = SimplicialComplex::empty();
        for _ in 0..k {
            let (lo, hi) = g.random_box(rng);
            p = p.union(&g.sub_box(&lo, &hi));
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    let ambient = out.iter().fold(SimplicialComplex::empty(), |a, p| a.union(p));
    Cover::new(ambient, out, None, true)
}

/// A random good cover: every piece is a single box.
pub fn random_box_cover(rng: &mut impl Rng, dims: &[u32], pieces: usize) -> Result<Cover> {
    random_box_union_cover(rng, dims, pieces, 1)
}

pub fn sphere2() -> SimplicialComplex {
    SimplicialComplex::from_simplices([[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
}

/// Seven-vertex torus.
pub fn torus7() -> SimplicialComplex {
    let tris: Vec<Vec<u32>> = (0..7u32)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    SimplicialComplex::from_simplices(&tris).unwrap()
}

/// Six-vertex projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_simplices([
        [0u32, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ])
    .unwrap()
}

const TRIPLES: [(i64, i64, i64); 5] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (0, 1, 1), (-1, 0, 1)];

/// A random rational rotation of `ℝ^d`: a product of plane rotations by
/// Pythagorean-triple angles.
pub fn random_rotation(rng: &mut impl Rng, d: usize) -> Isometry {
    let mut acc = Isometry::identity(d);
    if d < 2 {
        return acc;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let (p, q, r) = TRIPLES[rng.gen_range(0..TRIPLES.len())];
        let q = if rng.gen_bool(0.5) { q } else { -q };
        acc = acc.compose(&Isometry::plane_rotation(d, i, j, p, q, r).expect("Pythagorean rotation"));
    }
    acc
}

/// A random rotation followed by a translation with entries in `[-3, 3]`.
pub fn random_isometry(rng: &mut impl Rng, d: usize) -> Isometry {
    let rot = random_rotation(rng, d);
    let t = Isometry::translation((0..d).map(|_| q_int(rng.gen_range(-3..=3))).collect());
    t.compose(&rot)
}

/// Quarter-turn power `e` about `center` in the plane of coordinates 0, 1,
/// followed by translation `shift` on the remaining coordinates.
fn planar_screw(d: usize, e: u32, center: (i64, i64), shift: &[i64]) -> Isometry {
    let quarter = Isometry::plane_rotation(d, 0, 1, 0, 1, 1).expect("quarter turn");
    let mut c = vec![q_int(0); d];
    c[0] = q_int(center.0);
    c[1] = q_int(center.1);
    let to = Isometry::translation(c.clone());
    let back = Isometry::translation(c.iter().map(|x| -x.clone()).collect());
    let rot = to.compose(&quarter.power(e as u64)).compose(&back);
    let mut t = vec![q_int(0); d];
    for (k, s) in shift.iter().enumerate() {
        t[2 + k] = q_int(*s);
    }
    Isometry::translation(t).compose(&rot)
}

/// A random arrangement in `ℝ^d` (d ≥ 2): each group has one or two
/// commuting generators, each a quarter-turn power about the group's own
/// center in the first coordinate plane combined with a translation on the
/// other coordinates. Linear parts have order dividing 4, so with `base = 4`
/// every level `k ≥ 1` consists of translations.
pub fn random_arrangement(rng: &mut impl Rng, d: usize, groups: usize, base: u64) -> crate::euclid::Arrangement {
    let gs = (0..groups)
        .map(|_| {
            let center = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let e = rng.gen_range(0..4);
            (0..rng.gen_range(1..=2))
                .map(|_| {
                    let shift: Vec<i64> = (2..d).map(|_| rng.gen_range(-1..=1)).collect();
                    planar_screw(d, e, center, &shift)
                })
                .collect()
        })
        .collect();
    crate::euclid::Arrangement::new(d, gs, base).expect("consistent dimensions")
}

/// How the enlargements of a random patch system are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enlargement {
    None,
    Identity,
    /// Each patch grows by one extra random box.
    RandomBox,
    /// Every patch is enlarged to the whole grid, so all big clumps are cones.
    Whole,
}

/// A random patch system over a box-union cover of a grid. Labels are drawn
/// from small sublattices of `ℤ^rank` (coordinate lines and planes, their
/// multiples, a diagonal, and occasionally the trivial group).
pub fn random_patch_system(
    rng: &mut impl Rng,
    dims: &[u32],
    patches: usize,
    rank: usize,
    enlargement: Enlargement,
) -> Result<crate::clumps::PatchSystem> {
    use crate::clumps::{PatchFlags, PatchSystem};
    use crate::groups::LatticeSubgroup;
    let cover = random_box_union_cover(rng, dims, patches, 2)?;
    let groups = (0..patches)
        .map(|_| {
            let unit = |i: usize, k: i64| (0..rank).map(|j| if j == i { k } else { 0 }).collect::<Vec<i64>>();
            let rows: Vec<Vec<i64>> = match rng.gen_range(0..10) {
                0 => vec![],
                1 => vec![vec![1; rank]],
                2..=6 => vec![unit(rng.gen_range(0..rank), rng.gen_range(1..=2))],
                _ => {
                    let a = rng.gen_range(0..rank);
                    let b = (a + rng.gen_range(1..rank.max(2))) % rank;
                    vec![unit(a, 1), unit(b, rng.gen_range(1..=2))]
                }
            };
            LatticeSubgroup::new(rank, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let flags = groups
        .iter()
        .map(|g| PatchFlags { parabolic: !g.is_trivial(), semisimple: false, rank: None })
        .collect();
    let g = Grid::new(dims);
    let enlargements = match enlargement {
        Enlargement::None => None,
        Enlargement::Identity => Some(cover.pieces.clone()),
        Enlargement::RandomBox => Some(
            cover
                .pieces
                .iter()
                .map(|p| {
                    let (lo, hi) = g.random_box(rng);
                    p.union(&g.sub_box(&lo, &hi))
                })
                .collect(),
        ),
        Enlargement::Whole => Some(vec![g.complex.clone(); patches]),
    };
    let ambient = match &enlargements {
        Some(z) => z.iter().fold(cover.ambient.clone(), |a, p| a.union(p)),
        None => cover.ambient.clone(),
    };
    let cover = Cover::new(ambient, cover.pieces, None, false)?;
    PatchSystem::new(cover, groups, flags, enlargements)
}

fn open_box(lo: &[(i64, i64)], hi: &[(i64, i64)]) -> crate::periodic::OpenBox {
    use crate::linalg::q;
    crate::periodic::OpenBox::new(lo.iter().map(|&(n, d)| q(n, d)).collect(), hi.iter().map(|&(n, d)| q(n, d)).collect())
        .expect("nonempty box")
}

fn int_box(lo: &[i64], hi: &[i64]) -> crate::periodic::OpenBox {
    crate::periodic::OpenBox::from_ints(lo, hi).expect("nonempty box")
}

fn units(dim: usize, r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|k| (0..dim).map(|j| i64::from(j == k)).collect()).collect()
}

/// A single unit box with no translations.
pub fn single_box(dim: usize) -> crate::periodic::BoxUnion {
    crate::periodic::BoxUnion::new(dim, &[], vec![int_box(&vec![0; dim], &vec![1; dim])]).expect("valid")
}

/// `(0, 6/5)^dim` translated by `ℤ^dim`: overlapping boxes covering everything.
pub fn periodic_tiling(dim: usize) -> crate::periodic::BoxUnion {
    let b = open_box(&vec![(0, 1); dim], &vec![(6, 5); dim]);
    crate::periodic::BoxUnion::new(dim, &units(dim, dim), vec![b]).expect("valid")
}

/// `count` disjoint tubes along the first axis of `ℝ^dim`, each the orbit of
/// a box longer than the period.
pub fn periodic_tubes(dim: usize, count: usize) -> crate::periodic::BoxUnion {
    let boxes = (0..count as i64)
        .map(|k| {
            let mut lo = vec![(0, 1); dim];
            let mut hi = vec![(1, 1); dim];
            hi[0] = (3, 2);
            if dim > 1 {
                lo[1] = (3 * k, 1);
                hi[1] = (3 * k + 1, 1);
            }
            open_box(&lo, &hi)
        })
        .collect();
    crate::periodic::BoxUnion::new(dim, &units(dim, 1), boxes).expect("valid")
}

/// Parallel slabs `ℝ² × (3k, 3k+1)` in `ℝ³`.
pub fn periodic_slabs(count: usize) -> crate::periodic::BoxUnion {
    let boxes = (0..count as i64).map(|k| open_box(&[(0, 1), (0, 1), (3 * k, 1)], &[(3, 2), (3, 2), (3 * k + 1, 1)])).collect();
    crate::periodic::BoxUnion::new(3, &units(3, 2), boxes).expect("valid")
}

/// A square annulus of four boxes in the `xy`-plane, extended periodically
/// along `z`. Its homology is that of a circle.
pub fn annular_tube() -> crate::periodic::BoxUnion {
    let z = ((0, 1), (3, 2));
    let boxes = vec![
        open_box(&[(0, 1), (0, 1), z.0], &[(3, 1), (1, 1), z.1]),
        open_box(&[(2, 1), (0, 1), z.0], &[(3, 1), (3, 1), z.1]),
        open_box(&[(0, 1), (2, 1), z.0], &[(3, 1), (3, 1), z.1]),
        open_box(&[(0, 1), (0, 1), z.0], &[(1, 1), (3, 1), z.1]),
    ];
    crate::periodic::BoxUnion::new(3, &[vec![0, 0, 1]], boxes).expect("valid")
}

/// Two rails joined by a rung every second unit: an infinite ladder whose
/// windows gain a hole per period.
pub fn periodic_ladder() -> crate::periodic::BoxUnion {
    let boxes = vec![int_box(&[0, 0], &[3, 1]), int_box(&[0, 2], &[3, 3]), int_box(&[0, 0], &[1, 3])];
    crate::periodic::BoxUnion::new(2, &[vec![2, 0]], boxes).expect("valid")
}

/// A diagonal staircase: `(0, 3/2)²` translated by `ℤ·(1,1)`.
pub fn periodic_staircase() -> crate::periodic::BoxUnion {
    crate::periodic::BoxUnion::new(2, &[vec![1, 1]], vec![open_box(&[(0, 1), (0, 1)], &[(3, 2), (3, 2)])]).expect("valid")
}

/// Two overlapping horizontal tubes in the plane.
pub fn two_box_pattern() -> crate::periodic::BoxUnion {
    let boxes = vec![open_box(&[(0, 1), (0, 1)], &[(3, 2), (1, 1)]), open_box(&[(1, 2), (1, 2)], &[(2, 1), (2, 1)])];
    crate::periodic::BoxUnion::new(2, &units(2, 1), boxes).expect("valid")
}

/// Random periodic boxes whose orbits are convex: the lattice is spanned by
/// multiples of the first `rank` axes and every box is longer than the
/// period along them, so the orbit cover is good.
pub fn random_periodic_boxes(rng: &mut impl Rng, dim: usize, rank: usize) -> Result<crate::periodic::BoxUnion> {
    use crate::linalg::q;
    let periods: Vec<i64> = (0..rank).map(|_| rng.gen_range(1..=2)).collect();
    let lattice: Vec<Vec<i64>> = units(dim, rank).into_iter().zip(&periods).map(|(r, &p)| r.iter().map(|x| x * p).collect()).collect();
    let count = rng.gen_range(1..=3);
    let mut boxes: Vec<crate::periodic::OpenBox> = Vec::new();
    while boxes.len() < count {
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for k in 0..dim {
            if k < rank {
                let start = q(rng.gen_range(0..4), 4);
                let len = q(4 * periods[k] + rng.gen_range(1..=3), 4);
                hi.push(&start + len);
                lo.push(start);
            } else {
                let start = rng.gen_range(0..4);
                lo.push(q_int(start));
                hi.push(q_int(start + rng.gen_range(1..=2)));
            }
        }
        let b = crate::periodic::OpenBox::new(lo, hi)?;
        if !boxes.contains(&b) {
            boxes.push(b);
        }
    }
    crate::periodic::BoxUnion::new(dim, &lattice, boxes)
}

/// Twists `s_j − s_i` for random sheet labels `s_i`: every overlap of the
/// orbits of `B_i` and `B_j` changes sheet by the same amount.
pub fn random_cover_spec(
    rng: &mut impl Rng,
    bu: &crate::periodic::BoxUnion,
    sublattice: Vec<Vec<i64>>,
) -> crate::periodic::FiniteCoverSpec {
    use crate::periodic::TwistJson;
    let s = sublattice.len();
    let boxes = bu.boxes.len();
    let labels: Vec<Vec<i64>> = (0..boxes).map(|_| (0..s).map(|_| rng.gen_range(0..6)).collect()).collect();
    let mut twists = Vec::new();
    for i in 0..boxes {
        let near: std::collections::BTreeSet<usize> = bu.relative_neighbours(i).into_iter().map(|(j, _)| j).collect();
        for j in (i + 1..boxes).filter(|j| near.contains(j)) {
            twists.push(TwistJson {
                from: i,
                to: j,
                offset: None,
                shift: labels[j].iter().zip(&labels[i]).map(|(a, b)| a - b).collect(),
            });
        }
    }
    crate::periodic::FiniteCoverSpec { sublattice, twists }
}
