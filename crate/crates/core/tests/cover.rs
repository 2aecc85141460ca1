mod common;

use common::*;
use nerveforge_core::cover::*;
use nerveforge_core::models::{random_box_cover, random_box_union_cover, Grid};
use nerveforge_core::simplicial::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cover_of(pieces: Vec<SimplicialComplex>) -> Cover {
    let ambient = pieces.iter().fold(SimplicialComplex::empty(), |a, p| a.union(p));
    Cover::new(ambient, pieces, None, true).unwrap()
}

fn path(vs: &[u32]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(vs.windows(2)).unwrap()
}

/// Random covers of both kinds with a fixed seed stream.
fn corpus(count: usize, seed: u64) -> Vec<Cover> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let dims: &[u32] = if i % 3 == 0 { &[2, 2, 1] } else { &[4, 3] };
            let pieces = 2 + i % 4;
            if i % 2 == 0 {
                random_box_cover(&mut rng, dims, pieces).unwrap()
            } else {
                random_box_union_cover(&mut rng, dims, pieces, 2).unwrap()
            }
        })
        .collect()
}

#[test]
fn disjoint_pieces_give_isolated_vertices() {
    let c = cover_of(vec![complex(&[&[0, 1]]), complex(&[&[2, 3]])]);
    let n = nerve(&c);
    assert_eq!((n.complex.count(0), n.complex.count(1)), (2, 0));
}

#[test]
fn three_arcs_on_a_circle() {
    let c = cover_of(vec![path(&[0, 1, 2]), path(&[2, 3, 4]), path(&[4, 5, 0])]);
    let n = nerve(&c);
    assert_eq!(n.complex.maximal_simplices(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert_eq!(homology(&n.complex).betti, vec![1, 1]);
    assert_eq!(fattening_homology(&c).unwrap(), homology(&c.union()));
}

#[test]
fn common_vertex_gives_full_simplex() {
    let c = cover_of(vec![complex(&[&[0, 1]]), complex(&[&[0, 2]]), complex(&[&[0, 3]])]);
    assert_eq!(nerve(&c).complex.maximal_simplices(), vec![vec![0, 1, 2]]);
}

#[test]
fn nested_pieces_reduce_to_an_edge() {
    let x1 = complex(&[&[0, 1]]);
    let x2 = complex(&[&[0, 1], &[1, 2]]);
    let c = cover_of(vec![x1, x2]);
    let n = nerve(&c);
    assert_eq!(saturate(&c, &n, &[0]).unwrap(), vec![0, 1]);
    assert_eq!(saturate(&c, &n, &[1]).unwrap(), vec![1]);
    let r = reduced_nerve(&c, &n);
    // vertices {2} ⊂ {1,2} (0-based {1} ⊂ {0,1}) joined by one edge
    let verts: Vec<&Simplex> = r.complex.vertices().iter().map(|&v| r.simplex_of(v)).collect();
    assert_eq!(verts, vec![&vec![1], &vec![0, 1]]);
    assert_eq!(r.complex.count(1), 1);
}

#[test]
fn reduced_nerve_of_reduced_cover_is_everything() {
    let c = cover_of(vec![path(&[0, 1, 2]), path(&[2, 3, 4]), path(&[4, 5, 0])]);
    let n = nerve(&c);
    let r = reduced_nerve(&c, &n);
    assert_eq!(r.complex, r.subdivision.complex);
    assert!(r.retraction.vertex_map.iter().all(|(a, b)| a == b));
}

#[test]
fn one_piece_cover() {
    let p = torus7();
    let c = cover_of(vec![p.clone()]);
    assert_eq!(fattening_homology(&c).unwrap(), homology(&p));
}

#[test]
fn cones_are_good_and_annuli_are_not() {
    let c = cover_of(vec![complex(&[&[0, 1, 2]]), complex(&[&[1, 2, 3]]), complex(&[&[2, 3, 4]])]);
    assert!(goodness_check(&c).good);
    // two arcs whose union is a circle meet in two points
    let c = cover_of(vec![path(&[0, 1, 2]), path(&[2, 3, 0])]);
    let report = goodness_check(&c);
    assert!(!report.good);
    let bad = report.entries.iter().find(|e| e.simplex == vec![0, 1]).unwrap();
    assert_eq!(bad.reduced.betti(0), 1);
    // an annular overlap: two boxes in a grid union whose intersection is a ring
    let g = Grid::new(&[4, 4]);
    let ring = g.sub_box(&[0, 0], &[4, 1]).union(&g.sub_box(&[0, 3], &[4, 4]))
        .union(&g.sub_box(&[0, 0], &[1, 4])).union(&g.sub_box(&[3, 0], &[4, 4]));
    let c = cover_of(vec![ring.clone(), g.complex.clone()]);
    let report = goodness_check(&c);
    let e = report.entries.iter().find(|e| e.simplex == vec![0, 1]).unwrap();
    assert_eq!(e.reduced.betti(1), 1);
    assert!(!report.good);
}

#[test]
fn degenerate_covers_are_rejected() {
    let p = complex(&[&[0, 1]]);
    assert!(matches!(
        Cover::new(p.clone(), vec![p.clone(), p.clone()], None, false),
        Err(nerveforge_core::Error::DegenerateCover(_))
    ));
    assert!(matches!(
        Cover::new(p.clone(), vec![p.clone(), SimplicialComplex::empty()], None, false),
        Err(nerveforge_core::Error::DegenerateCover(_))
    ));
    let big = complex(&[&[0, 1, 2]]);
    assert!(matches!(Cover::new(big, vec![p], None, true), Err(nerveforge_core::Error::NotCovering)));
}

#[test]
fn json_round_trip() {
    let text = r#"{"ambient":{"vertices":[0,1,2],"simplices":[[0,1],[1,2]]},
                   "pieces":{"10":[[1,2]],"2":[[0,1]]},"covering":true}"#;
    let c = Cover::parse(text).unwrap();
    assert_eq!(c.names, vec!["2", "10"]);
    let again = Cover::from_json(&c.to_json()).unwrap();
    assert_eq!(again.pieces, c.pieces);
}

#[test]
fn saturation_is_a_closure_on_the_corpus() {
    for c in corpus(40, 7) {
        let n = nerve(&c);
        for alpha in n.complex.iter() {
            let sat = saturate(&c, &n, alpha).unwrap();
            assert!(alpha.iter().all(|i| sat.contains(i)));
            assert_eq!(&c.intersection(&sat), n.intersection(alpha).unwrap());
            assert_eq!(saturate(&c, &n, &sat).unwrap(), sat);
        }
        let r = reduced_nerve(&c, &n);
        let pp = r.retraction.compose(&SimplicialMap::new(r.complex.clone(), r.subdivision.complex.clone(),
            r.complex.vertices().iter().map(|&v| (v, v)).collect()).unwrap()).unwrap();
        let ppp = pp.compose(&r.retraction).unwrap();
        assert_eq!(ppp.vertex_map, r.retraction.vertex_map);
    }
}

#[test]
fn fattening_computes_the_union_on_the_corpus() {
    for c in corpus(60, 11) {
        let n = nerve(&c);
        let union = homology(&c.union());
        assert_eq!(fattening(&n).homology().unwrap(), union);
        let r = reduced_nerve(&c, &n);
        assert_eq!(reduced_fattening(&n, &r).homology().unwrap(), union);
        assert_eq!(homology(&r.complex), homology(&n.complex));
        if goodness_check(&c).good {
            assert_eq!(homology(&n.complex), union);
        }
    }
}

#[test]
fn collapse_is_a_chain_map() {
    for c in corpus(10, 3) {
        let n = nerve(&c);
        let t = fattening(&n);
        let x = c.union();
        let cx = ChainComplex::of_complex(&x);
        for d in 1..t.chain.len() {
            let lhs = cx.boundary(d).compose(&t.collapse_map(&x, d));
            let rhs = t.collapse_map(&x, d - 1).compose(&t.chain.boundary(d));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn assembly_never_violated() {
    let mut hyp = 0;
    for (i, c) in corpus(500, 2024).iter().enumerate() {
        let v = assembly_bound_check(c, 1 + i % 3);
        assert!(v.passed(), "certificate: {:?}", v.counterexample);
        hyp += v.hypotheses_hold as usize;
    }
    assert!(hyp > 50, "corpus should exercise the hypotheses, got {hyp}");
}

#[test]
fn good_cover_with_contractible_nerve() {
    let g = Grid::new(&[3, 3]);
    let c = cover_of(vec![g.sub_box(&[0, 0], &[2, 2]), g.sub_box(&[1, 1], &[3, 3]), g.sub_box(&[0, 1], &[3, 2])]);
    for n in 1..4 {
        let v = assembly_bound_check(&c, n);
        assert!(v.hypotheses_hold && v.conclusion_holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn adding_a_piece_keeps_nerve_simplices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_box_union_cover(&mut rng, &[3, 3], 3, 2).unwrap();
        let g = Grid::new(&[3, 3]);
        let extra = g.sub_box(&[1, 0], &[2, 3]);
        prop_assume!(!c.pieces.contains(&extra));
        let bigger = c.with_piece(extra).unwrap();
        let small = nerve(&c).complex;
        let large = nerve(&bigger).complex;
        prop_assert!(small.is_subcomplex_of(&large));
    }
}
