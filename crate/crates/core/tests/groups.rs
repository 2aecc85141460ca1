use std::collections::VecDeque;

use nerveforge_core::euclid::{qvec, Isometry};
use nerveforge_core::groups::*;
use nerveforge_core::linalg::{q_int, IntMatrix};
use nerveforge_core::models::random_isometry;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lat(d: usize, rows: &[&[i64]]) -> LatticeSubgroup {
    LatticeSubgroup::new(d, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[test]
fn canonical_forms() {
    assert_eq!(lat(2, &[&[2, 0], &[0, 2]]).basis(), big(&[&[2, 0], &[0, 2]]));
    let g = lat(2, &[&[1, 1], &[1, -1]]);
    assert_eq!(g.basis(), big(&[&[1, 1], &[0, 2]]));
    assert_eq!(g.rank(), 2);
    assert_eq!(lat(3, &[]).rank(), 0);
}

#[test]
fn joins_and_indices() {
    let a = lat(2, &[&[2, 0]]);
    assert_eq!(a.join(&LatticeSubgroup::trivial(2)).unwrap(), a);
    let j = a.join(&lat(2, &[&[0, 3]])).unwrap();
    assert_eq!(j.rank(), 2);
    assert_eq!(j.finite_index_in(&LatticeSubgroup::full(2)).unwrap(), Some(BigInt::from(6)));
    assert_eq!(lat(2, &[&[2, 0], &[0, 2]]).finite_index_in(&LatticeSubgroup::full(2)).unwrap(), Some(BigInt::from(4)));
    assert_eq!(lat(2, &[&[1, 0]]).finite_index_in(&LatticeSubgroup::full(2)).unwrap(), None);
    assert!(LatticeSubgroup::full(2).finite_index_in(&a).is_err());
    assert!(a.join(&LatticeSubgroup::full(3)).is_err());
}

/// Counts cosets of `sub` in `sup` by breadth-first search over the
/// generators of `sup`, giving up past `limit`.
fn coset_count(sub: &LatticeSubgroup, sup: &LatticeSubgroup, limit: usize) -> Option<usize> {
    let d = sup.ambient();
    let mut reps: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); d]];
    let mut queue = VecDeque::from([reps[0].clone()]);
    while let Some(v) = queue.pop_front() {
        for g in sup.basis() {
            for s in [1i64, -1] {
                let w: Vec<BigInt> = v.iter().zip(g).map(|(a, b)| a + b * s).collect();
                let known = reps.iter().any(|r| {
                    let diff: Vec<BigInt> = w.iter().zip(r).map(|(a, b)| a - b).collect();
                    sub.contains_vector(&diff)
                });
                if !known {
                    if reps.len() == limit {
                        return None;
                    }
                    reps.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
    }
    Some(reps.len())
}

fn random_lattice(rng: &mut ChaCha8Rng, d: usize, rows: usize, range: i64) -> LatticeSubgroup {
    let rows: Vec<Vec<i64>> = (0..rows).map(|_| (0..d).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    LatticeSubgroup::new(d, &rows).unwrap()
}

#[test]
fn index_matches_coset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 60 {
        let sup = random_lattice(&mut rng, 2 + checked % 2, 3, 3);
        if sup.rank() == 0 {
            continue;
        }
        // sub = (random integer matrix) · sup basis
        let r = sup.rank();
        let coeffs: Vec<Vec<i64>> = (0..r).map(|_| (0..r).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = IntMatrix::from_rows(&coeffs, r).mul(&IntMatrix::from_rows(&sup.basis().to_vec(), sup.ambient()));
        let sub = LatticeSubgroup::from_matrix(sup.ambient(), &m);
        let Some(index) = sub.finite_index_in(&sup).unwrap() else { continue };
        if index > BigInt::from(50) {
            continue;
        }
        let count = coset_count(&sub, &sup, 60).unwrap();
        assert_eq!(BigInt::from(count), index);
        checked += 1;
    }
}

#[test]
fn join_laws_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let (ra, rb) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let a = random_lattice(&mut rng, 3, ra, 4);
        let b = random_lattice(&mut rng, 3, rb, 4);
        let c = random_lattice(&mut rng, 3, 1, 4);
        let ab = a.join(&b).unwrap();
        assert_eq!(ab, b.join(&a).unwrap());
        assert_eq!(a.join(&a).unwrap(), a);
        assert!(ab.contains(&a) && ab.contains(&b));
        assert_eq!(ab.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        let i = a.intersection(&b).unwrap();
        assert!(a.contains(&i) && b.contains(&i));
        assert_eq!(i.rank() + ab.rank(), a.rank() + b.rank());
        // rank dichotomy behind the growing-ranks argument
        match i.finite_index_in(&a).unwrap() {
            Some(_) => assert_eq!(i.rank(), a.rank()),
            None => assert!(i.rank() < a.rank()),
        }
    }
}

#[test]
fn intersection_contains_common_vectors() {
    let a = lat(2, &[&[2, 0], &[0, 3]]);
    let b = lat(2, &[&[3, 0], &[0, 2]]);
    assert_eq!(a.intersection(&b).unwrap(), lat(2, &[&[6, 0], &[0, 6]]));
}

fn ut(size: usize, entries: &[(usize, usize)]) -> UnitriangularGroup {
    let gens = entries.iter().map(|&(i, j)| UnitriangularGroup::elementary(size, i, j)).collect();
    UnitriangularGroup::new(size, gens).unwrap()
}

#[test]
fn hirsch_ranks() {
    assert_eq!(ut(3, &[(0, 1)]).hirsch_rank(), 1);
    assert_eq!(ut(3, &[(0, 1), (1, 2)]).hirsch_rank(), 3);
    assert_eq!(ut(4, &[(0, 1), (1, 2), (2, 3)]).hirsch_rank(), 6);
    assert_eq!(ut(4, &[(0, 3)]).hirsch_rank(), 1);
}

#[test]
fn rejects_bad_matrices() {
    let m = IntMatrix::from_i64(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
    assert!(UnitriangularGroup::new(3, vec![m]).is_err());
    assert!(UnitriangularGroup::new(5, vec![]).is_err());
    assert!(ut(3, &[]).small_central_element().is_err());
}

#[test]
fn heisenberg_central_element() {
    let g = ut(3, &[(0, 1), (1, 2)]);
    let w = g.small_central_element().unwrap();
    assert_eq!(w.len(), 4);
    assert_eq!(w.element, UnitriangularGroup::elementary(3, 0, 2));
    assert_eq!(w.evaluate(&g), w.element);
    assert!(g.commutes_with_generators(&w.element));
    let w = ut(3, &[(0, 2)]).small_central_element().unwrap();
    assert_eq!(w.len(), 1);
}

#[test]
fn random_unitriangular_descent() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let id = IntMatrix::identity(4);
    for _ in 0..100 {
        let gens: Vec<IntMatrix> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let mut m = IntMatrix::identity(4);
                for i in 0..4 {
                    for j in i + 1..4 {
                        m.set(i, j, BigInt::from(rng.gen_range(-3..=3)));
                    }
                }
                m
            })
            .collect();
        let g = UnitriangularGroup::new(4, gens).unwrap();
        let Ok(w) = g.small_central_element() else {
            assert!(g.generators.iter().all(|x| *x == id));
            continue;
        };
        assert!(w.len() <= 27);
        assert_ne!(w.element, id);
        assert_eq!(w.evaluate(&g), w.element);
        for x in &g.generators {
            assert_eq!(x.mul(&w.element), w.element.mul(x));
        }
        assert!(g.hirsch_rank() <= 6);
    }
}

#[test]
fn subadditivity_examples() {
    let t1 = Isometry::translation(qvec(&[3, 0]));
    let t2 = Isometry::translation(qvec(&[0, 4]));
    let v = subadditivity_check(&[t1.clone(), t2], &qvec(&[0, 0])).unwrap();
    assert_eq!((v.lhs_sq.clone(), v.holds, v.equality), (q_int(25), true, false));
    let v = subadditivity_check(&[t1], &qvec(&[0, 0])).unwrap();
    assert!(v.holds && v.equality);
    // collinear translations give equality with irrational lengths: √2 + √2 = √8
    let d = Isometry::translation(qvec(&[1, 1]));
    let v = subadditivity_check(&[d.clone(), d], &qvec(&[5, -2])).unwrap();
    assert!(v.holds && v.equality);
}

#[test]
fn subadditivity_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..500 {
        let isos: Vec<Isometry> = (0..3).map(|_| random_isometry(&mut rng, 3)).collect();
        let x = qvec(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
        assert!(subadditivity_check(&isos, &x).unwrap().holds);
    }
}

proptest! {
    #[test]
    fn hnf_is_canonical_under_regeneration(
        rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 1..4),
        mix in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6),
    ) {
        let a = LatticeSubgroup::new(3, &rows).unwrap();
        let mut moved = rows.clone();
        for (i, j, k) in mix {
            let (i, j) = (i % moved.len(), j % moved.len());
            if i != j {
                let src = moved[j].clone();
                for (x, y) in moved[i].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
        }
        moved.reverse();
        prop_assert_eq!(LatticeSubgroup::new(3, &moved).unwrap(), a);
    }

    #[test]
    fn hirsch_rank_is_monotone(extra in proptest::collection::vec(-2i64..=2, 6)) {
        let base = ut(4, &[(0, 1), (2, 3)]);
        let mut m = IntMatrix::identity(4);
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m.set(i, j, BigInt::from(extra[k]));
                k += 1;
            }
        }
        let mut gens = base.generators.clone();
        gens.push(m);
        let bigger = UnitriangularGroup::new(4, gens).unwrap();
        prop_assert!(bigger.hirsch_rank() >= base.hirsch_rank());
        prop_assert!(bigger.hirsch_rank() <= 6);
    }
}
