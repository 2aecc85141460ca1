mod common;

use nerveforge_core::clumps::*;
use nerveforge_core::cover::Cover;
use nerveforge_core::groups::LatticeSubgroup;
use nerveforge_core::models::{random_patch_system, Enlargement};
use nerveforge_core::simplicial::{homology, SimplicialComplex};
use nerveforge_core::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice(rows: &[&[i64]]) -> LatticeSubgroup {
    LatticeSubgroup::new(2, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn corpus(count: usize, seed: u64, max_patches: usize, enlargement: Enlargement) -> Vec<PatchSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let dims: &[u32] = if i % 2 == 0 { &[3, 3] } else { &[2, 2, 1] };
            random_patch_system(&mut rng, dims, 2 + i % (max_patches - 1), 2, enlargement).unwrap()
        })
        .collect()
}

/// Every sublattice of ℤ² with small Hermite normal form, built directly.
fn small_lattices() -> Vec<LatticeSubgroup> {
    let mut out = Vec::new();
    for x in 0..=2i64 {
        for y in -2..=2i64 {
            if x > 0 || y > 0 {
                out.push(lattice(&[&[x, y]]));
            }
        }
    }
    for a in 1..=2 {
        for c in 1..=2 {
            for b in 0..c {
                out.push(lattice(&[&[a, b], &[0, c]]));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn simple_system(pieces: Vec<SimplicialComplex>, labels: Vec<LatticeSubgroup>) -> PatchSystem {
    let ambient = pieces.iter().fold(SimplicialComplex::empty(), |a, p| a.union(p));
    let n = pieces.len();
    PatchSystem::new(Cover::new(ambient, pieces, None, true).unwrap(), labels, vec![PatchFlags::default(); n], None)
        .unwrap()
}

#[test]
fn group_of_simplex_joins_and_is_monotone() {
    let ps = introduction_model();
    assert_eq!(ps.group_of_simplex(&[0]).unwrap(), &ps.groups[0]);
    assert_eq!(ps.group_of_simplex(&[0, 4]).unwrap(), &LatticeSubgroup::full(2));
    assert!(matches!(ps.group_of_simplex(&[9]), Err(Error::NotANerveSimplex(_))));
    for ps in corpus(20, 11, 5, Enlargement::None) {
        let all: Vec<_> = ps.simplex_groups().collect();
        for (s, g) in &all {
            for (t, h) in &all {
                if s.iter().all(|v| t.contains(v)) {
                    assert!(h.contains(g), "G_{s:?} ⊄ G_{t:?}");
                }
            }
        }
    }
}

#[test]
fn introduction_clumps_are_the_two_halves_and_their_overlap() {
    let ps = introduction_model();
    let upper = SimplicialComplex::from_simplices(&ps.cover.pieces[..4].iter().flat_map(|p| p.maximal_simplices()).collect::<Vec<_>>())
        .unwrap();
    let lower = SimplicialComplex::from_simplices(&ps.cover.pieces[4..].iter().flat_map(|p| p.maximal_simplices()).collect::<Vec<_>>())
        .unwrap();
    let gamma = lattice(&[&[1, 0]]);
    let rho = lattice(&[&[0, 1]]);
    assert_eq!(ps.clump(&gamma).support, upper);
    assert_eq!(ps.clump(&rho).support, lower);
    let mid = ps.clump(&LatticeSubgroup::full(2)).support;
    assert_eq!(mid, upper.intersection(&lower));
    // the equatorial square through the center
    assert_eq!(mid.count(2), 4);
    assert!(homology(&mid).is_acyclic());
    assert_eq!(ps.clump(&LatticeSubgroup::trivial(2)).support, ps.cover.union());
    assert_eq!(ps.clump(&lattice(&[&[1, 1]])).support, mid);
}

#[test]
fn intersection_formula_on_all_label_joins() {
    for ps in corpus(24, 5, 4, Enlargement::None) {
        let joins = ps.label_joins();
        for n in &joins {
            for m in &joins {
                let v = ps.intersection_formula_check(n, m).unwrap();
                assert!(v.holds, "certificate {:?}", v.certificate);
            }
        }
    }
}

#[test]
fn intersection_formula_idempotence_and_disjoint_supports() {
    let ps = introduction_model();
    let g = lattice(&[&[1, 0]]);
    assert!(ps.intersection_formula_check(&g, &g).unwrap().holds);
    let a = SimplicialComplex::from_simplices(&[vec![0, 1]]).unwrap();
    let b = SimplicialComplex::from_simplices(&[vec![2, 3]]).unwrap();
    let ps = simple_system(vec![a, b], vec![lattice(&[&[1, 0]]), lattice(&[&[0, 1]])]);
    let v = ps.intersection_formula_check(&lattice(&[&[1, 0]]), &lattice(&[&[0, 1]])).unwrap();
    assert!(v.holds);
    assert!(ps.clump(&LatticeSubgroup::full(2)).support.is_empty());
}

#[test]
fn minimality_examples() {
    let a = SimplicialComplex::from_simplices(&[vec![0, 1]]).unwrap();
    let b = SimplicialComplex::from_simplices(&[vec![1, 2]]).unwrap();
    let ps = simple_system(vec![a, b], vec![lattice(&[&[2, 0]]), lattice(&[&[0, 1]])]);
    assert!(ps.is_minimal(&LatticeSubgroup::trivial(2)).unwrap());
    // ⟨(1,0)⟩ meets ⟨(2,0)⟩ in index 2 without lying inside it
    let n = lattice(&[&[1, 0]]);
    let g = lattice(&[&[2, 0]]);
    assert_eq!(n.intersection(&g).unwrap().finite_index_in(&n).unwrap(), Some(BigInt::from(2)));
    assert!(!ps.is_minimal(&n).unwrap());
    assert!(ps.is_minimal(&g).unwrap());
}

#[test]
fn joins_of_minimal_groups_are_minimal() {
    let lats = small_lattices();
    for ps in corpus(12, 21, 4, Enlargement::None) {
        let minimal: Vec<&LatticeSubgroup> = lats.iter().filter(|n| ps.is_minimal(n).unwrap()).collect();
        for n in &minimal {
            for m in &minimal {
                assert!(ps.is_minimal(&n.join(m).unwrap()).unwrap(), "{n:?} ∨ {m:?}");
            }
        }
    }
}

#[test]
fn introduction_maximal_clumps() {
    let ps = introduction_model();
    let clumps = maximal_clumps(&ps);
    assert_eq!(clumps.len(), 3);
    let groups: Vec<&LatticeSubgroup> = clumps.iter().map(|c| &c.group).collect();
    assert!(groups.contains(&&lattice(&[&[1, 0]])));
    assert!(groups.contains(&&lattice(&[&[0, 1]])));
    assert_eq!(clumps[2].group, LatticeSubgroup::full(2));
    assert_eq!(clumps.iter().map(|c| c.rank).collect::<Vec<_>>(), vec![1, 1, 2]);
    for c in &clumps {
        assert!(ps.is_minimal(&c.group).unwrap());
    }
}

#[test]
fn single_patch_has_one_maximal_clump() {
    let a = SimplicialComplex::from_simplices(&[vec![0, 1, 2]]).unwrap();
    let ps = simple_system(vec![a.clone()], vec![lattice(&[&[1, 1]])]);
    let c = maximal_clumps(&ps);
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].support, a);
    // a finite label gives none
    let ps = simple_system(vec![a], vec![LatticeSubgroup::trivial(2)]);
    assert!(maximal_clumps(&ps).is_empty());
}

#[test]
fn maximal_clump_postconditions_on_corpus() {
    let lats = small_lattices();
    for ps in corpus(24, 33, 4, Enlargement::RandomBox) {
        let clumps = maximal_clumps(&ps);
        for c in &clumps {
            assert!(ps.is_minimal(&c.group).unwrap());
            assert_eq!(ps.clump(&c.group).support, c.support);
            assert!(c.support.is_subcomplex_of(&c.big_support));
        }
        // closed under (nonempty) intersection
        for a in &clumps {
            for b in &clumps {
                let x = a.support.intersection(&b.support);
                if !x.is_empty() {
                    assert!(clumps.iter().any(|c| c.support == x));
                }
            }
        }
        // order reversal, with an index drop on strict containment
        for a in &clumps {
            for b in &clumps {
                if b.support.is_subcomplex_of(&a.support) {
                    assert!(b.group.contains(&a.group));
                    if a.support != b.support {
                        assert_eq!(a.group.finite_index_in(&b.group).unwrap(), None);
                    }
                }
            }
        }
        // ∪ X_i = ∪ Y_α ∪ (∪_{G_i finite} X_i)
        let mut rebuilt = clumps.iter().fold(SimplicialComplex::empty(), |u, c| u.union(&c.support));
        for (x, g) in ps.cover.pieces.iter().zip(&ps.groups) {
            if g.is_trivial() {
                rebuilt = rebuilt.union(x);
            } else {
                assert!(clumps.iter().any(|c| x.is_subcomplex_of(&c.support)));
            }
        }
        assert_eq!(rebuilt, ps.cover.union());
        // brute force: every infinite minimal group virtually containing a
        // label defines a listed clump and lies in its group
        for n in &lats {
            if !ps.is_minimal(n).unwrap() || !ps.groups.iter().any(|g| !g.is_trivial() && g.virtually_within(n)) {
                continue;
            }
            let y = ps.clump(n).support;
            if y.is_empty() {
                continue;
            }
            let c = clumps.iter().find(|c| c.support == y).expect("clump listed");
            assert!(c.group.contains(n));
        }
    }
}

#[test]
fn growing_ranks() {
    let ps = introduction_model();
    let clumps = maximal_clumps(&ps);
    let v = growing_ranks_check(&[&clumps[0], &clumps[2]]).unwrap();
    assert_eq!(v.ranks, vec![1, 2]);
    assert!(v.holds);
    assert!(growing_ranks_check(&[&clumps[1]]).unwrap().holds);
    assert!(matches!(growing_ranks_check(&[&clumps[2], &clumps[0]]), Err(Error::NotStrictlyDecreasing(1))));
    for ps in corpus(30, 44, 5, Enlargement::None) {
        let clumps = maximal_clumps(&ps);
        for chain in maximal_chains(&clumps) {
            let refs: Vec<&MaximalClump> = chain.iter().map(|&i| &clumps[i]).collect();
            assert!(growing_ranks_check(&refs).unwrap().holds);
        }
    }
}

#[test]
fn identity_enlargement_unfolds_to_the_union() {
    for ps in corpus(10, 55, 4, Enlargement::Identity) {
        let Ok(u) = unfolding_complex(&ps) else { continue };
        let h = homology(&u.union);
        assert_eq!(u.homology().unwrap(), h);
        for d in 0..=h.top().unwrap_or(0) {
            let m = u.induced(d).unwrap();
            let rows = m.rows();
            assert_eq!(rows.len(), rows.first().map_or(0, Vec::len));
            if m.source_torsion.is_empty() {
                let det = nerveforge_core::linalg::IntMatrix::from_rows(&rows, rows.len()).determinant();
                assert_eq!(det.abs(), BigInt::from(1), "degree {d} map is not invertible");
            }
        }
    }
}

#[test]
fn cone_enlargements_reduce_to_the_clump_poset() {
    for ps in corpus(10, 66, 4, Enlargement::Whole) {
        let Ok(u) = unfolding_complex(&ps) else { continue };
        let h = u.homology().unwrap();
        let base = homology(&u.reduced.complex);
        for d in 1..=h.top().unwrap_or(0).max(base.top().unwrap_or(0)) {
            assert_eq!(h.betti(d), base.betti(d));
            assert_eq!(h.torsion(d), base.torsion(d));
        }
        assert_eq!(u.enlargement_gaps.len(), 0);
    }
}

#[test]
fn introduction_cycle_bounds_and_dies_in_the_unfolding() {
    let ps = introduction_model();
    let cert = introduction_filling(&ps).unwrap();
    assert!(cert.verified);
    assert!(cert.zero_in_unfolded);
    assert_eq!(cert.cycle.iter().filter(|x| x.abs() == BigInt::from(1)).count(), 8);
    let v = unfolding_vanishing_check(&ps, 4, 1).unwrap();
    assert!(v.hypotheses_hold);
    assert_eq!(v.degree, 2);
    assert!(v.vanishes && v.composite_zero && v.passed());
}

#[test]
fn unfolding_vanishing_on_generated_systems() {
    let mut checked = 0;
    for ps in corpus(30, 77, 4, Enlargement::RandomBox) {
        for n in 2..=4 {
            let Ok(v) = unfolding_vanishing_check(&ps, n, 1) else { continue };
            assert!(v.passed(), "{v:?}");
            checked += v.hypotheses_hold as usize;
        }
    }
    assert!(checked > 0);
}

#[test]
fn engulfing_and_json_round_trip() {
    for ps in corpus(10, 88, 4, Enlargement::RandomBox) {
        assert_eq!(ps.engulfing_check(), None);
        let text = serde_json::to_string(&ps.to_json()).unwrap();
        let back = PatchSystem::parse(&text).unwrap();
        assert_eq!(back.groups, ps.groups);
        assert_eq!(back.cover.pieces, ps.cover.pieces);
        assert_eq!(back.enlargements, ps.enlargements);
    }
    let bad = r#"{"ambient":{"simplices":[[0,1]]},"pieces":{"0":[[0,1]]},
        "groups":{"0":{"kind":"lattice","ambient":1,"rows":[[1]]}},"enlargements":{"0":[[0]]}}"#;
    assert!(matches!(PatchSystem::parse(bad), Err(Error::BadEnlargement(_))));
}
