mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homcount::group::{automorphisms, FiniteGroup};
use homcount::surfaces::{
    count_reps, enumerate_reps, heegaard_count, orbit_report, relator_value, schur_invariant,
    schur_of_lifts, standard_generators, HeegaardGluing, MCGWord, RepFilter, SurfaceTuple,
};
use homcount::WorkBounds;

fn b() -> WorkBounds {
    WorkBounds::default()
}

fn random_word<R: Rng>(rng: &mut R, genus: usize, len: usize) -> MCGWord {
    let gens = standard_generators(genus);
    let text: Vec<String> = (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())].name().to_string();
            if rng.gen_bool(0.5) {
                g + "'"
            } else {
                g
            }
        })
        .collect();
    MCGWord::parse(genus, &text.join(" ")).unwrap()
}

#[test]
fn empty_word_counts_every_tuple_of_b() {
    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::alternating(4),
        FiniteGroup::cyclic(7),
        FiniteGroup::symmetric(4),
        FiniteGroup::alternating(5),
    ];
    for g in &groups {
        for genus in 1..=3 {
            let h = HeegaardGluing::new(MCGWord::identity(genus));
            let c = heegaard_count(&h, g, &b()).unwrap();
            assert_eq!(c.homs, BigUint::from(g.order()).pow(genus as u32), "{} genus {genus}", g.name());
        }
    }
}

#[test]
fn words_and_inverses_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let reps = enumerate_reps(2, &FiniteGroup::symmetric(3), RepFilter::All, None, &b()).unwrap();
    let s3 = FiniteGroup::symmetric(3);
    for _ in 0..50 {
        let w = random_word(&mut rng, 2, 8);
        let inv = w.inverse();
        let f = &reps[rng.gen_range(0..reps.len())];
        assert_eq!(&inv.apply(&s3, &w.apply(&s3, f).unwrap()).unwrap(), f);
        let m = w.homology_matrix();
        let mi = inv.homology_matrix();
        let n = m.len();
        for i in 0..n {
            for j in 0..n {
                let e: i64 = (0..n).map(|k| m[i][k] * mi[k][j]).sum();
                assert_eq!(e, (i == j) as i64);
            }
        }
    }
    assert!(MCGWord::identity(2).is_torelli());
    assert!(!MCGWord::parse(2, "a1").unwrap().is_torelli());
}

/// The homology matrices preserve the intersection form.
#[test]
fn homology_action_is_symplectic() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for genus in 1..=3 {
        let n = 2 * genus;
        let mut j = vec![vec![0i64; n]; n];
        for i in 0..genus {
            j[2 * i][2 * i + 1] = 1;
            j[2 * i + 1][2 * i] = -1;
        }
        for _ in 0..20 {
            let m = random_word(&mut rng, genus, 6).homology_matrix();
            // Mᵀ J M = J
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0;
                    for k in 0..n {
                        for l in 0..n {
                            s += m[k][r] * j[k][l] * m[l][c];
                        }
                    }
                    assert_eq!(s, j[r][c]);
                }
            }
        }
    }
}

#[test]
fn mapping_classes_commute_with_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let a5 = FiniteGroup::alternating(5);
    let auts = automorphisms(&a5, &b()).unwrap();
    let reps = enumerate_reps(2, &a5, RepFilter::All, None, &b()).unwrap();
    let gens = standard_generators(2);
    for _ in 0..1000 {
        let f = &reps[rng.gen_range(0..reps.len())];
        let a = &auts[rng.gen_range(0..auts.len())];
        for g in &gens {
            let mut left = f.map(|x| a.apply(x)).elems().to_vec();
            g.apply(&a5, &mut left, false);
            let mut right = f.elems().to_vec();
            g.apply(&a5, &mut right, false);
            let right: Vec<usize> = right.iter().map(|&x| a.apply(x)).collect();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn mapping_classes_preserve_relation_surjectivity_and_schur_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let (a5, ext) = common::a5_with_extension();
    let reps = enumerate_reps(2, &a5, RepFilter::All, None, &b()).unwrap();
    for _ in 0..300 {
        let f = &reps[rng.gen_range(0..reps.len())];
        let w = random_word(&mut rng, 2, 5);
        let g = w.apply(&a5, f).unwrap();
        assert_eq!(relator_value(&a5, g.elems()), 0);
        assert_eq!(g.is_surjective(&a5), f.is_surjective(&a5));
        assert_eq!(schur_invariant(&g, &a5, &ext).unwrap(), schur_invariant(f, &a5, &ext).unwrap());
    }
}

#[test]
fn schur_is_lift_independent_and_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let (a5, ext) = common::a5_with_extension();
    let reps = enumerate_reps(1, &a5, RepFilter::All, None, &b()).unwrap();
    assert_eq!(reps.len(), 300);
    for f in reps.iter().take(60) {
        let z = schur_invariant(f, &a5, &ext).unwrap();
        assert!(ext.center().contains(&z));
        for _ in 0..100 {
            let lifted: Vec<usize> = f
                .elems()
                .iter()
                .map(|&x| ext.lifts(x)[rng.gen_range(0..2)])
                .collect();
            assert_eq!(schur_of_lifts(&ext, &lifted).unwrap(), z);
        }
    }
    assert_eq!(schur_invariant(&SurfaceTuple::trivial(2), &a5, &ext).unwrap(), 0);
    for _ in 0..100 {
        let f = &reps[rng.gen_range(0..reps.len())];
        let g = &reps[rng.gen_range(0..reps.len())];
        let sum = schur_invariant(&f.concat(g), &a5, &ext).unwrap();
        let want = ext.cover().mul(
            schur_invariant(f, &a5, &ext).unwrap(),
            schur_invariant(g, &a5, &ext).unwrap(),
        );
        assert_eq!(sum, want);
    }
}

#[test]
fn schur_needs_a_perfect_group() {
    let (_, ext) = common::a5_with_extension();
    let s3 = FiniteGroup::symmetric(3);
    assert!(schur_invariant(&SurfaceTuple::trivial(1), &s3, &ext).is_err());
}

#[test]
fn filtered_counts() {
    let (a5, ext) = common::a5_with_extension();
    let all = count_reps(1, &a5, RepFilter::All, None, &b()).unwrap();
    let surj = count_reps(1, &a5, RepFilter::Surjective, None, &b()).unwrap();
    let zero = count_reps(1, &a5, RepFilter::SchurZero, Some(&ext), &b()).unwrap();
    // commuting pairs never generate a nonabelian group
    assert_eq!(all, BigUint::from(300u32));
    assert_eq!(surj, BigUint::from(0u32));
    assert_eq!(zero, BigUint::from(0u32));
    let surj2 = count_reps(2, &a5, RepFilter::Surjective, None, &b()).unwrap();
    let zero2 = count_reps(2, &a5, RepFilter::SchurZero, Some(&ext), &b()).unwrap();
    assert!(zero2 < surj2);
    assert!(zero2 > BigUint::from(0u32));
}

#[test]
fn torus_orbits_in_s3() {
    let s3 = FiniteGroup::symmetric(3);
    let seeds = enumerate_reps(1, &s3, RepFilter::All, None, &b()).unwrap();
    let r = orbit_report(&seeds, &standard_generators(1), &s3, None, &b()).unwrap();
    assert_eq!(r.schur_violations, 0);
    assert!(r.orbits.iter().all(|o| o.surjectivity_constant));
    // the trivial pair, Z3² minus 0, and one orbit per involution, which
    // conjugation permutes
    let mut sizes: Vec<(usize, bool)> = r.orbits.iter().map(|o| (o.size, o.aut_closed)).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![(1, true), (3, false), (3, false), (3, false), (8, true)]);
}

#[test]
fn heegaard_gluings_round_trip() {
    let h = HeegaardGluing::parse("genus 2\nword a1 b2' c1\nword b1^2\n").unwrap();
    let back = HeegaardGluing::parse(&h.to_text()).unwrap();
    assert_eq!(back.word, h.word);
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(heegaard_count(&h, &s3, &b()).unwrap(), heegaard_count(&back, &s3, &b()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twists_preserve_the_relation(seed in any::<u64>(), genus in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = FiniteGroup::symmetric(4);
        // random tuple with arbitrary relator value; the rules preserve the value
        let elems: Vec<usize> = (0..2 * genus).map(|_| rng.gen_range(0..g.order())).collect();
        let before = relator_value(&g, &elems);
        let w = random_word(&mut rng, genus, 10);
        let mut t = elems.clone();
        w.apply_in_place(&g, &mut t);
        prop_assert_eq!(relator_value(&g, &t), before);
        w.inverse().apply_in_place(&g, &mut t);
        prop_assert_eq!(t, elems);
    }

    #[test]
    fn heegaard_homs_bound_surjections(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, 2, 6);
        let h = HeegaardGluing::new(w);
        let g = FiniteGroup::symmetric(3);
        let c = heegaard_count(&h, &g, &b()).unwrap();
        prop_assert!(c.homs >= c.surjections);
        prop_assert_eq!(c.surjections, c.quotients * BigUint::from(6u32));
    }
}
