mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homcount::complex::{
    examples, greedy_ordering, homology, presentation_from_complex, smith_normal_form,
    IntegerMatrix, SimplicialComplex,
};
use homcount::counting::{count_homs, dp_count_homs_with, Gauge};
use homcount::group::FiniteGroup;
use homcount::WorkBounds;

fn named_complexes() -> Vec<SimplicialComplex> {
    vec![
        examples::disk(),
        examples::sphere(),
        examples::projective_plane(),
        examples::torus7(),
        examples::genus2(),
        examples::cycle(5),
        examples::path(4),
    ]
}

/// Random unimodular matrix as a product of elementary row operations.
fn unimodular(rng: &mut impl rand::Rng, n: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m.set(0, 0, BigInt::from(-1));
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k: i64 = rng.gen_range(-2..=2);
        let mut e = IntegerMatrix::identity(n);
        e.set(i, j, BigInt::from(k));
        m = e.mul(&m);
    }
    m
}

fn check_chain(d: &[BigInt]) {
    for w in d.windows(2) {
        assert!(!w[0].is_negative() && !w[1].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zeros must come last: {d:?}");
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
    }
}

fn rank_and_product(d: &[BigInt]) -> (usize, BigInt) {
    let nz: Vec<&BigInt> = d.iter().filter(|x| !x.is_zero()).collect();
    (nz.len(), nz.into_iter().fold(BigInt::one(), |a, b| a * b))
}

#[test]
fn snf_is_invariant_under_unimodular_change_of_basis() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for size in 1..=8 {
        for _ in 0..100 {
            let rows: Vec<Vec<i64>> = (0..size)
                .map(|_| (0..size).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            let m = IntegerMatrix::from_rows(&rows);
            let d = smith_normal_form(&m);
            check_chain(&d);
            let (p, q) = (unimodular(&mut rng, size), unimodular(&mut rng, size));
            let d2 = smith_normal_form(&p.mul(&m).mul(&q));
            assert_eq!(d, d2);
            assert_eq!(rank_and_product(&d), rank_and_product(&d2));
        }
    }
}

#[test]
fn snf_of_known_matrices() {
    let d = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    let d = smith_normal_form(&IntegerMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
    assert!(d.iter().all(Zero::is_zero));
}

#[test]
fn degree_zero_rank_counts_components() {
    let two = SimplicialComplex::from_maximal(6, &[vec![0, 1, 2], vec![3, 4], vec![4, 5]]).unwrap();
    assert_eq!(two.component_count(), 2);
    assert_eq!(homology(&two)[0].rank, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for cx in named_complexes().into_iter().chain((0..20).map(|_| common::random_complex(&mut rng, 40))) {
        assert_eq!(homology(&cx)[0].rank, cx.component_count());
    }
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for cx in named_complexes().into_iter().chain((0..20).map(|_| common::random_complex(&mut rng, 40))) {
        let alt: i64 = homology(&cx)
            .iter()
            .enumerate()
            .map(|(k, h)| if k % 2 == 0 { h.rank as i64 } else { -(h.rank as i64) })
            .sum();
        assert_eq!(cx.euler_characteristic(), alt);
    }
}

#[test]
fn surface_homology() {
    let t = homology(&examples::torus7());
    assert_eq!((t[0].rank, t[1].rank, t[2].rank), (1, 2, 1));
    let g2 = homology(&examples::genus2());
    assert_eq!(g2[1].rank, 4);
    let rp2 = homology(&examples::projective_plane());
    assert_eq!(rp2[1].rank, 0);
    assert_eq!(rp2[1].torsion, vec![BigInt::from(2)]);
    assert!(rp2[2].is_trivial());
}

/// Homomorphisms out of the edge-path group times `|G|^(v-1)` is the number of
/// 1-cocycles.
#[test]
fn presentation_counts_match_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let b = WorkBounds::default();
    let complexes: Vec<_> = named_complexes()
        .into_iter()
        .chain((0..8).map(|_| common::random_complex(&mut rng, 30)))
        .collect();
    for cx in &complexes {
        let p = presentation_from_complex(cx, 0).unwrap();
        let ord = greedy_ordering(cx);
        // without the gauge the state count grows like |G|^(boundary edges)
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let homs = count_homs(&p, &g, &b).unwrap();
            let r = dp_count_homs_with(cx, &ord, &g, &b, Gauge::None, None).unwrap();
            let scale = BigUint::from(g.order()).pow(cx.vertex_count() as u32 - 1);
            assert_eq!(r.cocycles.unwrap(), homs * scale);
        }
    }
}

#[test]
fn parse_round_trip() {
    let cx = examples::torus7();
    let ord = greedy_ordering(&cx);
    let (back, ord2) = SimplicialComplex::parse(&cx.to_text(Some(&ord))).unwrap();
    assert_eq!(back.simplices(), cx.simplices());
    assert_eq!(ord2.unwrap().sequence(), ord.sequence());
}

#[test]
fn face_closure_is_computed_on_load() {
    let cx = SimplicialComplex::from_maximal(4, &[vec![0, 1, 2, 3]]).unwrap();
    assert_eq!((cx.count(0), cx.count(1), cx.count(2), cx.count(3)), (4, 6, 4, 1));
    assert_eq!(cx.euler_characteristic(), 1);
    let cyclic = FiniteGroup::cyclic(3);
    let p = presentation_from_complex(&cx, 0).unwrap();
    assert_eq!(count_homs(&p, &cyclic, &WorkBounds::default()).unwrap(), BigUint::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_divisibility_chain(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 1..=6), 1..=6)) {
        let w = rows.iter().map(Vec::len).min().unwrap();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..w].to_vec()).collect();
        let d = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        prop_assert_eq!(d.len(), rows.len().min(w));
        check_chain(&d);
    }

    #[test]
    fn random_complexes_have_consistent_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = common::random_complex(&mut rng, 40);
        let h = homology(&cx);
        prop_assert_eq!(h[0].rank, 1);
        prop_assert!(h[0].torsion.is_empty());
    }
}
