mod common;

use std::collections::BTreeSet;

use common::*;
use nerveforge_core::simplicial::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn sphere_betti() {
    assert_eq!(homology(&sphere2()).betti, vec![1, 0, 1]);
}

#[test]
fn torus_matches_rational_oracle() {
    let h = homology(&torus7());
    assert_eq!(h.betti, vec![1, 2, 1]);
    assert!(h.torsion.iter().all(Vec::is_empty));
    assert_eq!(field_betti(&torus7(), 0), vec![1, 2, 1]);
    assert_eq!(field_betti(&torus7(), 2), vec![1, 2, 1]);
}

#[test]
fn projective_plane_torsion() {
    let c = rp2();
    let h = homology(&c);
    assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (1, 0, 0));
    assert_eq!(h.torsion(1), &[BigInt::from(2)]);
    // universal coefficients: Z/2 torsion in H_1 shows up in H_1 and H_2 mod 2
    assert_eq!(field_betti(&c, 0), vec![1]);
    assert_eq!(field_betti(&c, 2), vec![1, 1, 1]);
    assert_eq!(field_betti(&c, 3), vec![1]);
}

#[test]
fn malformed_complex_reports_degree() {
    let mut cc = ChainComplex::of_complex(&sphere2());
    cc.boundaries[2].cols[0][0].1 *= 2;
    assert_eq!(cc.homology(), Err(nerveforge_core::Error::MalformedComplex { degree: 2 }));
}

#[test]
fn identity_map_is_identity() {
    for c in [torus7(), rp2(), sphere2()] {
        let id = SimplicialMap::identity(&c);
        for d in 0..3 {
            let m = induced_homology_map(&id, d).unwrap();
            let n = m.matrix.len();
            for (j, col) in m.matrix.iter().enumerate() {
                for (i, x) in col.iter().enumerate() {
                    assert_eq!(*x, BigInt::from((i == j) as i64));
                }
            }
            assert_eq!(m.is_zero, n == 0);
        }
    }
}

#[test]
fn equator_dies_in_disk() {
    let disk = complex(&[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3]]);
    let f = SimplicialMap::inclusion(&circle(0, 1, 2), &disk).unwrap();
    let m = induced_homology_map(&f, 1).unwrap();
    assert!(m.is_zero);
    assert_eq!(m.matrix.len(), 1);
}

#[test]
fn boundary_circle_of_annulus() {
    let a = annulus();
    let inner = circle(0, 1, 2);
    let f = SimplicialMap::inclusion(&inner, &a).unwrap();
    let m = induced_homology_map(&f, 1).unwrap();
    assert_eq!(m.matrix.len(), 1);
    assert_eq!(m.matrix[0].len(), 1);
    let e = m.matrix[0][0].clone();
    assert!(e == BigInt::from(1) || e == BigInt::from(-1));

    // oracle: the inner cycle differs from ± the outer cycle by the boundary
    // of some 2-chain with coefficients in {-1, 0, 1}
    let cc = ChainComplex::of_complex(&a);
    let edge = |u: u32, v: u32| a.index_of(&[u.min(v), u.max(v)]).unwrap();
    let cycle = |vs: [u32; 3]| {
        let mut c = vec![BigInt::zero(); a.count(1)];
        for k in 0..3 {
            let (u, v) = (vs[k], vs[(k + 1) % 3]);
            c[edge(u, v)] += if u < v { 1 } else { -1 };
        }
        c
    };
    let inner_c = cycle([0, 1, 2]);
    let outer_c = cycle([3, 4, 5]);
    let b2 = cc.boundary(2);
    let found = (0..3i64.pow(6)).any(|code| {
        let x: Vec<BigInt> = (0..6).map(|i| BigInt::from((code / 3i64.pow(i)) % 3 - 1)).collect();
        let bx = b2.apply(&x);
        [1i64, -1].iter().any(|s| {
            bx.iter().zip(&inner_c).zip(&outer_c).all(|((b, i), o)| *b == i - o * s)
        })
    });
    assert!(found);
    // retraction onto the inner circle undoes the inclusion
    let r = SimplicialMap::new(
        a.clone(),
        inner.clone(),
        [(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)].into_iter().collect(),
    )
    .unwrap();
    let back = induced_homology_map(&f.compose(&r).unwrap(), 1).unwrap();
    assert_eq!(back.matrix, vec![vec![BigInt::from(1)]]);
}

#[test]
fn out_of_range_degree_is_flagged() {
    let m = induced_homology_map(&SimplicialMap::identity(&circle(0, 1, 2)), 5).unwrap();
    assert!(m.out_of_range && m.is_zero);
}

#[test]
fn subdivision_counts() {
    let sd = barycentric_subdivision(&complex(&[&[0, 1]]));
    assert_eq!((sd.complex.count(0), sd.complex.count(1)), (3, 2));
    let sd = barycentric_subdivision(&complex(&[&[0, 1, 2]]));
    assert_eq!((sd.complex.count(0), sd.complex.count(2)), (7, 6));
}

#[test]
fn subdivision_chain_map_is_quasi_isomorphism() {
    for c in [torus7(), rp2(), annulus()] {
        let sd = barycentric_subdivision(&c);
        assert_eq!(homology(&sd.complex), homology(&c));
        let src = ChainComplex::of_complex(&c);
        let tgt = ChainComplex::of_complex(&sd.complex);
        // chain map commutes with boundaries
        for d in 1..=2 {
            let lhs = tgt.boundary(d).compose(&sd.chain_map(&c, d));
            let rhs = sd.chain_map(&c, d - 1).compose(&src.boundary(d));
            assert_eq!(lhs, rhs);
        }
        for d in 0..=2 {
            let m = induced_map(&HomologyBasis::new(&src, d), &HomologyBasis::new(&tgt, d), &sd.chain_map(&c, d))
                .unwrap();
            // square, and invertible: determinant ±1 on the free part
            let h = HomologyBasis::new(&src, d);
            assert_eq!(m.matrix.len(), h.len());
            if h.free_rank > 0 && h.torsion.is_empty() {
                let det = nerveforge_core::linalg::IntMatrix::from_rows(&m.rows(), h.len()).determinant();
                assert!(det == BigInt::from(1) || det == BigInt::from(-1));
            }
        }
    }
}

#[test]
fn boundary_solving() {
    let disk = complex(&[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3]]);
    let cc = ChainComplex::of_complex(&disk);
    let c = |u: u32, v: u32| disk.index_of(&[u, v]).unwrap();
    let mut z = vec![BigInt::zero(); disk.count(1)];
    z[c(0, 1)] += 1;
    z[c(1, 2)] += 1;
    z[c(0, 2)] -= 1;
    let x = solve_boundary(&cc, 1, &z).unwrap();
    assert_eq!(cc.boundary(2).apply(&x), z);
    let mut not_cycle = vec![BigInt::zero(); disk.count(1)];
    not_cycle[c(0, 1)] += 1;
    assert!(solve_boundary(&cc, 1, &not_cycle).is_none());
}

fn random_complex(max_vertex: u32) -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0..max_vertex, 1..4), 1..14)
        .prop_map(|ss| SimplicialComplex::from_simplices(ss.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap())
}

fn sub_of(c: &SimplicialComplex, mask: u64) -> SimplicialComplex {
    let keep: Vec<Simplex> = c
        .maximal_simplices()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
        .map(|(_, s)| s)
        .collect();
    SimplicialComplex::from_simplices(&keep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn betti_agrees_with_rational_oracle(c in random_complex(8)) {
        prop_assert_eq!(homology(&c).betti.iter().copied().rev().skip_while(|&b| b == 0).collect::<Vec<_>>(),
            field_betti(&c, 0).into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn subdivision_preserves_homology(c in random_complex(6)) {
        prop_assert_eq!(homology(&barycentric_subdivision(&c).complex), homology(&c));
    }

    #[test]
    fn inclusion_exclusion(c in random_complex(7), m1 in any::<u64>(), m2 in any::<u64>()) {
        let (a, b) = (sub_of(&c, m1), sub_of(&c, m2));
        let (u, i) = subcomplex_ops(&c, &a, &b).unwrap();
        prop_assert_eq!(u.len() + i.len(), a.len() + b.len());
        let direct: BTreeSet<Simplex> = a.simplex_set().intersection(&b.simplex_set()).cloned().collect();
        prop_assert_eq!(i.simplex_set(), direct);
    }

    #[test]
    fn functoriality_of_inclusions(c in random_complex(7), m1 in any::<u64>(), m2 in any::<u64>(), d in 0usize..3) {
        let b = sub_of(&c, m1 | m2);
        let a = sub_of(&c, m1);
        let a = a.intersection(&b);
        let f = SimplicialMap::inclusion(&a, &b).unwrap();
        let g = SimplicialMap::inclusion(&b, &c).unwrap();
        let fg = induced_homology_map(&f.compose(&g).unwrap(), d).unwrap();
        let mf = induced_homology_map(&f, d).unwrap();
        let mg = induced_homology_map(&g, d).unwrap();
        // product of matrices, reduced modulo target torsion orders
        let cols: Vec<Vec<BigInt>> = mf.matrix.iter().map(|col| {
            (0..fg.target_torsion.len() + fg.target_rank).map(|i| {
                let v: BigInt = col.iter().zip(&mg.matrix).map(|(x, gcol)| x * &gcol[i]).sum();
                match fg.target_torsion.get(i) {
                    Some(t) => ((v % t) + t) % t,
                    None => v,
                }
            }).collect()
        }).collect();
        prop_assert_eq!(cols, fg.matrix);
    }
}
