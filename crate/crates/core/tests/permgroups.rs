use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homcount::group::FiniteGroup;
use homcount::perm::{
    alt_generation_check, classify_giant, goursat_decompose, rubik_membership, rubik_order,
    rubik_standard_generators, GSetAction, Giant, Permutation, PermutationGroup,
};
use homcount::WorkBounds;

fn b() -> WorkBounds {
    WorkBounds::default()
}

fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

fn closure_size(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.images().to_vec());
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.images().to_vec()) {
                stack.push(q);
            }
        }
    }
    seen.len()
}

#[test]
fn chain_order_matches_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut trials = 0;
    for _ in 0..150 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=3);
        let mut gens: Vec<Permutation> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        // sparse generators give proper subgroups more often
        if rng.gen_bool(0.5) {
            gens = gens.iter().map(|g| g.pow(rng.gen_range(1..4))).collect();
        }
        let chain = PermutationGroup::new(n, &gens, &b()).unwrap();
        assert_eq!(chain.order(), BigUint::from(closure_size(n, &gens)));
        trials += 1;
    }
    for n in [9, 10] {
        for _ in 0..2 {
            let gens = vec![random_perm(&mut rng, n), random_perm(&mut rng, n)];
            let chain = PermutationGroup::new(n, &gens, &b()).unwrap();
            assert_eq!(chain.order(), BigUint::from(closure_size(n, &gens)));
            trials += 1;
        }
    }
    assert!(trials >= 100);
}

#[test]
fn chain_membership_agrees_with_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..30 {
        let n = 6;
        let gens = vec![random_perm(&mut rng, n).pow(2), random_perm(&mut rng, n).pow(3)];
        let chain = PermutationGroup::new(n, &gens, &b()).unwrap();
        let mut members: HashSet<Vec<u32>> = HashSet::new();
        let mut stack = vec![Permutation::identity(n)];
        members.insert(stack[0].images().to_vec());
        while let Some(p) = stack.pop() {
            for g in &gens {
                let q = p.then(g);
                if members.insert(q.images().to_vec()) {
                    stack.push(q);
                }
            }
        }
        for _ in 0..50 {
            let p = random_perm(&mut rng, n);
            assert_eq!(chain.contains(&p), members.contains(p.images()));
        }
    }
}

#[test]
fn giants_by_order() {
    for n in 5..=8 {
        let cycle: Vec<usize> = (0..n).collect();
        let sym = vec![
            Permutation::from_cycles(n, &[cycle.clone()]).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ];
        assert_eq!(classify_giant(&PermutationGroup::new(n, &sym, &b()).unwrap()).unwrap(), Giant::Symmetric);
        let alt: Vec<Permutation> = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        assert_eq!(classify_giant(&PermutationGroup::new(n, &alt, &b()).unwrap()).unwrap(), Giant::Alternating);
        let small = vec![Permutation::from_cycles(n, &[cycle]).unwrap()];
        assert_eq!(classify_giant(&PermutationGroup::new(n, &small, &b()).unwrap()).unwrap(), Giant::Other);
    }
    let tiny = PermutationGroup::new(4, &[Permutation::identity(4)], &b()).unwrap();
    assert!(classify_giant(&tiny).is_err());
}

#[test]
fn overlapping_alternating_groups_generate() {
    let r = alt_generation_check(&[0, 1, 2, 3, 4, 5, 6], &[vec![0, 1, 2, 3], vec![3, 4, 5], vec![5, 6, 0]]).unwrap();
    assert!(r.intersection_graph_connected && r.generates);
    assert_eq!(r.generated_order, BigUint::from(2520u32));
    let r = alt_generation_check(&[0, 1, 2, 3, 4, 5], &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    assert!(!r.intersection_graph_connected && !r.generates);
    assert!(alt_generation_check(&[0, 1, 2], &[vec![0, 1]]).is_err());
}

/// Random element of `Γ ≀ Sym(n)` with `fixed` fixed points permuted arbitrarily.
fn random_equivariant<R: Rng>(rng: &mut R, gamma: &FiniteGroup, fixed: usize, n: usize) -> Permutation {
    let m = gamma.order();
    let sigma = random_perm(rng, fixed);
    let pi = random_perm(rng, n);
    let h: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    let mut images = vec![0u32; fixed + n * m];
    for x in 0..fixed {
        images[x] = sigma.apply(x) as u32;
    }
    for j in 0..n {
        for g in 0..m {
            images[fixed + j * m + g] = (fixed + pi.apply(j) * m + gamma.mul(g, h[j])) as u32;
        }
    }
    Permutation::from_images(images).unwrap()
}

#[test]
fn rubik_membership_is_a_subgroup_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut both = 0;
    for gamma in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        let gamma = Arc::new(gamma);
        let act = GSetAction::regular(gamma.clone(), 3, 5);
        for _ in 0..2000 {
            let p = random_equivariant(&mut rng, &gamma, 3, 5);
            let q = random_equivariant(&mut rng, &gamma, 3, 5);
            assert!(act.is_equivariant(&p));
            let (mp, mq) = (rubik_membership(&p, &act).unwrap(), rubik_membership(&q, &act).unwrap());
            if mp && mq {
                both += 1;
                assert!(rubik_membership(&p.then(&q), &act).unwrap());
                assert!(rubik_membership(&p.inverse(), &act).unwrap());
            }
            // membership is a kernel: multiplying by a member changes nothing
            if mq {
                assert_eq!(rubik_membership(&p.then(&q), &act).unwrap(), mp);
            }
        }
    }
    assert!(both >= 20, "only {both} member pairs");
}

#[test]
fn rubik_closure_over_generated_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let gamma = Arc::new(FiniteGroup::symmetric(3));
    let act = GSetAction::regular(gamma.clone(), 0, 7);
    let gens = rubik_standard_generators(7, &gamma);
    let word = |rng: &mut ChaCha8Rng| {
        (0..12).fold(Permutation::identity(act.points()), |p, _| p.then(&gens[rng.gen_range(0..gens.len())]))
    };
    for _ in 0..1000 {
        let (p, q) = (word(&mut rng), word(&mut rng));
        assert!(rubik_membership(&p, &act).unwrap());
        assert!(rubik_membership(&p.then(&q), &act).unwrap());
        assert!(rubik_membership(&q.inverse(), &act).unwrap());
    }
}

#[test]
fn rubik_membership_does_not_depend_on_the_section() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let gamma = Arc::new(FiniteGroup::symmetric(3));
    let act = GSetAction::regular(gamma.clone(), 2, 4);
    let reps: Vec<usize> = (0..act.orbit_count())
        .map(|o| *act.orbit_points(o).choose(&mut rng).unwrap())
        .collect();
    let moved = act.clone().with_section(&reps).unwrap();
    for _ in 0..500 {
        let p = random_equivariant(&mut rng, &gamma, 2, 4);
        assert_eq!(rubik_membership(&p, &act).unwrap(), rubik_membership(&p, &moved).unwrap());
    }
}

#[test]
fn rubik_order_formula() {
    assert_eq!(rubik_order(7, &FiniteGroup::cyclic(2)).unwrap(), BigUint::from(161280u32));
    // small case against the chain
    let gamma = Arc::new(FiniteGroup::cyclic(3));
    let act = GSetAction::regular(gamma.clone(), 0, 4);
    let gens = rubik_standard_generators(4, &gamma);
    let chain = PermutationGroup::new(act.points(), &gens, &b()).unwrap();
    assert_eq!(chain.order(), rubik_order(4, &gamma).unwrap());
}

#[test]
fn goursat_reconstructs_subdirect_products() {
    let s3 = FiniteGroup::symmetric(3);
    let z2 = FiniteGroup::cyclic(2);
    // graph of the sign map S3 → Z2
    let sign = |x: usize| if s3.permutations().unwrap()[x].is_even() { 0 } else { 1 };
    let gens: Vec<(usize, usize)> = s3.elements().map(|x| (x, sign(x))).collect();
    let d = goursat_decompose(&gens, &s3, &z2).unwrap();
    assert!(d.reconstructs);
    assert_eq!(d.h_order, 6);
    assert_eq!(d.n1.order(), 3);
    assert_eq!(d.n2.order(), 1);

    // the diagonal in S3 × S3 and the full product
    let diag: Vec<(usize, usize)> = s3.elements().map(|x| (x, x)).collect();
    let d = goursat_decompose(&diag, &s3, &s3).unwrap();
    assert!(d.reconstructs && d.h_order == 6 && d.n1.order() == 1);
    let full: Vec<(usize, usize)> = s3.elements().flat_map(|x| [(x, 0), (0, x)]).collect();
    let d = goursat_decompose(&full, &s3, &s3).unwrap();
    assert!(d.reconstructs && d.h_order == 36);

    // not subdirect
    assert!(goursat_decompose(&[(1, 0)], &s3, &z2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn goursat_on_random_generating_pairs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::alternating(4)];
        let g1 = &groups[rng.gen_range(0..3)];
        let g2 = &groups[rng.gen_range(0..3)];
        let pairs: Vec<(usize, usize)> = (0..3)
            .map(|_| (rng.gen_range(0..g1.order()), rng.gen_range(0..g2.order())))
            .collect();
        let product = FiniteGroup::direct_product(g1, g2);
        let h = product.closure(&pairs.iter().map(|&(a, c)| a * g2.order() + c).collect::<Vec<_>>());
        let onto1 = h.iter().map(|x| x / g2.order()).collect::<HashSet<_>>().len() == g1.order();
        let onto2 = h.iter().map(|x| x % g2.order()).collect::<HashSet<_>>().len() == g2.order();
        match goursat_decompose(&pairs, g1, g2) {
            Ok(d) => {
                prop_assert!(onto1 && onto2);
                prop_assert!(d.reconstructs);
                prop_assert_eq!(d.h_order, h.len());
                // |H| = |G1|·|N2| = |G2|·|N1|
                prop_assert_eq!(d.h_order, g1.order() * d.n2.order());
                prop_assert_eq!(d.h_order, g2.order() * d.n1.order());
            }
            Err(_) => prop_assert!(!(onto1 && onto2)),
        }
    }
}
