use georep::code::{
    coordinate_load, degree, find_two_basis, min_representation_dim, two_basis_oracle, LinearCode,
};
use georep::gf2::{self, BitMat, BitVec};
use georep::graph::{cut_space, cycle_space, graph_from_two_basis, MultiGraph};
use proptest::prelude::*;

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVec::from_bools(&b))
}

fn matrix() -> impl Strategy<Value = BitMat> {
    (0usize..=6, 1usize..=9).prop_flat_map(|(r, c)| {
        proptest::collection::vec(bitvec(c), r).prop_map(move |rows| BitMat::from_rows(c, rows).unwrap())
    })
}

fn code() -> impl Strategy<Value = LinearCode> {
    (1usize..=4, 1usize..=8).prop_flat_map(|(d, n)| {
        proptest::collection::vec(bitvec(n), d).prop_map(move |rows| LinearCode::from_rows(n, &rows).unwrap())
    })
}

fn multigraph() -> impl Strategy<Value = MultiGraph> {
    (1usize..=8).prop_flat_map(|nv| {
        proptest::collection::vec((0..nv, 0..nv), 0..=16).prop_map(move |edges| {
            let mut g = MultiGraph::with_vertices(nv);
            for (a, b) in edges {
                g.add_edge(a, b);
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix()) {
        let null = gf2::nullspace(&m);
        prop_assert_eq!(gf2::rank(&m) + null.len(), m.num_cols());
        for x in &null {
            prop_assert!(m.mul_vec(x).is_zero());
        }
        prop_assert_eq!(gf2::rank_of(&null), null.len());
    }

    #[test]
    fn puncture_is_linear(a in bitvec(8), b in bitvec(8), keep in proptest::sample::subsequence((1..=8).collect::<Vec<usize>>(), 0..=8)) {
        let ab = gf2::xor(&a, &b).unwrap();
        let p = gf2::puncture(&[a, b, ab], &keep).unwrap();
        prop_assert_eq!(gf2::xor(&p[0], &p[1]).unwrap(), p[2].clone());
    }

    #[test]
    fn express_round_trip(c in code(), pick in bitvec(4)) {
        let basis = c.basis();
        let mut v = BitVec::zeros(c.len());
        for (k, b) in basis.iter().enumerate() {
            if pick.get(k + 1) {
                v.xor_assign(b);
            }
        }
        let ind = gf2::express(&v, basis).unwrap().expect("in the span");
        prop_assert_eq!(gf2::combine(&ind, basis, c.len()), v);
    }

    #[test]
    fn two_basis_search_matches_oracle(c in code()) {
        let fast = find_two_basis(&c);
        let slow = two_basis_oracle(&c).unwrap();
        prop_assert_eq!(fast.found, slow.found);
        if let Some(w) = &fast.basis {
            prop_assert!(gf2::span_equal(w, c.basis()).unwrap());
            prop_assert!(coordinate_load(w, c.len()).iter().all(|&l| l <= 2));
        }
    }

    #[test]
    fn degree_is_subadditive(c in code(), x in bitvec(4), y in bitvec(4)) {
        let word = |s: &BitVec| gf2::combine(&BitVec::from_support(c.dim(), s.support().filter(|&i| i <= c.dim())), c.basis(), c.len());
        let (a, b) = (word(&x), word(&y));
        let ab = gf2::xor(&a, &b).unwrap();
        prop_assert!(degree(&ab, &c).unwrap() <= degree(&a, &c).unwrap() + degree(&b, &c).unwrap());
    }

    #[test]
    fn cut_space_round_trip(g in multigraph()) {
        let (cut, stars) = cut_space(&g).unwrap();
        prop_assert!(coordinate_load(&stars, cut.len()).iter().all(|&l| l <= 2));
        prop_assert_eq!(min_representation_dim(&cut), 3);
        let report = find_two_basis(&cut);
        let w = report.basis.expect("cut spaces have a 2-basis");
        let h = graph_from_two_basis(&w, cut.len()).unwrap();
        let (back, _) = cut_space(&h).unwrap();
        prop_assert!(gf2::span_equal(back.basis(), cut.basis()).unwrap());
    }

    #[test]
    fn cycles_and_cuts_are_orthogonal(g in multigraph()) {
        let (cut, _) = cut_space(&g).unwrap();
        let cyc = cycle_space(&g);
        prop_assert_eq!(cut.dim() + cyc.dim(), g.num_edges());
        for z in cyc.basis() {
            for k in cut.basis() {
                prop_assert!(!z.dot(k));
            }
        }
    }
}

#[test]
fn non_planar_cycle_spaces_have_no_two_basis() {
    for g in [MultiGraph::complete(5), MultiGraph::complete_bipartite(3, 3)] {
        let c = cycle_space(&g);
        assert!(!find_two_basis(&c).found);
    }
    // the exhaustive check is only cheap for K3,3 (dimension 4)
    let c = cycle_space(&MultiGraph::complete_bipartite(3, 3));
    assert!(!two_basis_oracle(&c).unwrap().found);
}
