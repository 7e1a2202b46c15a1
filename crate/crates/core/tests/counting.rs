mod common;

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homcount::complex::{
    examples, greedy_ordering, greedy_region_ordering, presentation_from_complex, Presentation,
    SimplexOrdering, SimplicialComplex,
};
use homcount::counting::{
    count_homs, count_quotients, count_surjections, dp_count_homs, dp_count_homs_with,
    poincare_presentation, quotient_counts_via_inversion, Gauge, HomSource,
};
use homcount::group::{automorphisms, FiniteGroup};
use homcount::{Error, WorkBounds};

fn b() -> WorkBounds {
    WorkBounds::default()
}

/// A uniformly chosen next simplex among those whose faces are all present.
fn random_ordering<R: Rng>(rng: &mut R, cx: &SimplicialComplex) -> SimplexOrdering {
    let mut added = vec![false; cx.len()];
    let mut seq = Vec::with_capacity(cx.len());
    while seq.len() < cx.len() {
        let ready: Vec<usize> = (0..cx.len())
            .filter(|&s| !added[s] && cx.faces(s).iter().all(|&f| added[f]))
            .collect();
        let s = *ready.choose(rng).unwrap();
        added[s] = true;
        seq.push(s);
    }
    SimplexOrdering::new(cx, seq).unwrap()
}

#[test]
fn orderings_do_not_change_the_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut complexes = vec![examples::torus7(), examples::projective_plane(), examples::sphere()];
    complexes.extend((0..6).map(|_| common::random_complex(&mut rng, 40)));
    for cx in &complexes {
        for g in common::small_groups() {
            let want = dp_count_homs(cx, &greedy_ordering(cx), &g, &b()).unwrap();
            assert_eq!(dp_count_homs(cx, &SimplexOrdering::by_dimension(cx), &g, &b()).unwrap(), want);
            assert_eq!(dp_count_homs(cx, &greedy_region_ordering(cx), &g, &b()).unwrap(), want);
            for _ in 0..3 {
                let ord = random_ordering(&mut rng, cx);
                assert_eq!(dp_count_homs(cx, &ord, &g, &b()).unwrap(), want);
            }
        }
    }
}

#[test]
fn gauges_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10 {
        let cx = common::random_complex(&mut rng, 30);
        let ord = greedy_ordering(&cx);
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)] {
            let tree = dp_count_homs_with(&cx, &ord, &g, &b(), Gauge::SpanningTree, None).unwrap();
            let free = dp_count_homs_with(&cx, &ord, &g, &b(), Gauge::None, None).unwrap();
            assert_eq!(tree.homs, free.homs);
            let z1 = free.cocycles.unwrap();
            let scale = BigUint::from(g.order()).pow(cx.vertex_count() as u32 - 1);
            assert!((&z1 % &scale).is_zero());
        }
    }
}

#[test]
fn observer_sees_positive_counts() {
    let cx = examples::torus7();
    let ord = greedy_ordering(&cx);
    let g = FiniteGroup::symmetric(3);
    let mut steps = 0;
    let mut obs = |s: &homcount::counting::CocycleDpState| {
        steps += 1;
        assert!(s.states.iter().all(|(_, c)| !c.is_zero()));
    };
    dp_count_homs_with(&cx, &ord, &g, &b(), Gauge::SpanningTree, Some(&mut obs)).unwrap();
    assert_eq!(steps, cx.len());
}

#[test]
fn state_bound_is_enforced() {
    let cx = examples::genus2();
    let tight = WorkBounds { max_states: 4, ..b() };
    let r = dp_count_homs(&cx, &greedy_ordering(&cx), &FiniteGroup::symmetric(3), &tight);
    assert!(matches!(r, Err(Error::BoundExceeded { .. })));
}

#[test]
fn disconnected_complexes_are_refused() {
    let cx = SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(dp_count_homs(&cx, &greedy_ordering(&cx), &FiniteGroup::cyclic(2), &b()).is_err());
}

#[test]
fn surjections_are_aut_multiples() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..8 {
        let cx = common::random_complex(&mut rng, 30);
        let p = presentation_from_complex(&cx, 0).unwrap();
        for g in common::small_groups() {
            let c = count_quotients(&p, &g, &b()).unwrap();
            let aut = automorphisms(&g, &b()).unwrap().len();
            assert_eq!(c.surjections, &c.quotients * BigUint::from(aut));
            assert!(c.homs >= c.surjections);
            assert_eq!(c.surjections, count_surjections(&p, &g, &b()).unwrap());
        }
    }
}

#[test]
fn free_group_counts() {
    // F_2 → S3: every pair; 36 total, and 18 generating pairs give 3 quotients
    let p = Presentation::parse("gens 2\n").unwrap();
    let s3 = FiniteGroup::symmetric(3);
    let c = count_quotients(&p, &s3, &b()).unwrap();
    assert_eq!(c.homs, BigUint::from(36u32));
    assert_eq!(c.surjections, BigUint::from(18u32));
    assert_eq!(c.quotients, BigUint::from(3u32));
}

#[test]
fn inversion_matches_direct_counts() {
    let torus = examples::torus7();
    let ord = greedy_ordering(&torus);
    let p = presentation_from_complex(&torus, 0).unwrap();
    for g in common::small_groups() {
        let direct = count_quotients(&p, &g, &b()).unwrap();
        let t = quotient_counts_via_inversion(HomSource::Complex(&torus, &ord), &g, &b()).unwrap();
        assert!(t.consistent);
        assert_eq!(t.total_homs, direct.homs);
        let full = t.rows.last().unwrap();
        assert_eq!(full.order, g.order());
        assert_eq!(full.quotients, direct.quotients);
        assert_eq!(t.rows[0].order, 1);
        assert_eq!(t.rows[0].homs, BigUint::from(1u32));
    }
}

/// Perfect fundamental group with only `G` and 1 as quotients among the
/// subgroups of `G`: the homomorphism count is `|Aut(G)|·#Q + 1`.
#[test]
fn poincare_sphere_is_parsimonious_up_to_one() {
    let p = poincare_presentation();
    assert!(p.abelianization().is_trivial());
    let a5 = FiniteGroup::alternating(5);
    let t = quotient_counts_via_inversion(HomSource::Presentation(&p), &a5, &b()).unwrap();
    assert!(t.only_trivial_and_full());
    let full = t.rows.last().unwrap();
    let homs = count_homs(&p, &a5, &b()).unwrap();
    assert_eq!(homs, BigUint::from(full.aut_order) * &full.quotients + 1u32);
}

#[test]
fn enumeration_bound_is_enforced() {
    let p = Presentation::parse("gens 4\n").unwrap();
    let tight = WorkBounds { max_enumeration: 1000, ..b() };
    let r = count_homs(&p, &FiniteGroup::alternating(5), &tight);
    assert!(matches!(r, Err(Error::BoundExceeded { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sweep_equals_enumeration(seed in any::<u64>(), gi in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = common::random_complex(&mut rng, 40);
        let g = &common::small_groups()[gi];
        let p = presentation_from_complex(&cx, 0).unwrap();
        let ord = random_ordering(&mut rng, &cx);
        prop_assert_eq!(dp_count_homs(&cx, &ord, g, &b()).unwrap(), count_homs(&p, g, &b()).unwrap());
    }
}
