use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homcount::circuits::{
    count_csat, count_rsat, extend_to_rubik, run_pipeline, verify_parsimony, BooleanCircuit, Gate,
    ReversibleCircuit, RsatAlphabet, RsatInstance, ZAlphabet,
};
use homcount::group::FiniteGroup;
use homcount::perm::{rubik_membership, Permutation};
use homcount::WorkBounds;

fn b() -> WorkBounds {
    WorkBounds::default()
}

fn random_gate<R: Rng>(rng: &mut R, q: usize, wires: Vec<usize>) -> Gate {
    use rand::seq::SliceRandom;
    let size = q.pow(wires.len() as u32);
    let mut table: Vec<u32> = (0..size as u32).collect();
    table.shuffle(rng);
    Gate::new(q, wires, table).unwrap()
}

fn random_circuit<R: Rng>(rng: &mut R, q: usize, width: usize, len: usize) -> ReversibleCircuit {
    let mut c = ReversibleCircuit::new(q, width);
    for _ in 0..len {
        let gate = if width >= 2 && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..width - 1);
            random_gate(rng, q, vec![i, i + 1])
        } else {
            let w = rng.gen_range(0..width);
            random_gate(rng, q, vec![w])
        };
        c.push(gate).unwrap();
    }
    c
}

fn all_words(q: usize, width: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..q.pow(width as u32)).map(move |mut code| {
        (0..width)
            .map(|_| {
                let s = (code % q) as u32;
                code /= q;
                s
            })
            .collect()
    })
}

#[test]
fn inverse_circuits_undo_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for q in 2..=4 {
        for width in 1..=4 {
            let c = random_circuit(&mut rng, q, width, 8);
            let inv = c.inverse();
            for x in all_words(q, width) {
                assert_eq!(inv.eval(&c.eval(&x).unwrap()).unwrap(), x);
            }
        }
    }
}

#[test]
fn gate_inverse_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for q in 2..=5 {
        let g = random_gate(&mut rng, q, vec![0, 1]);
        let h = g.inverse();
        for (x, &y) in g.table().iter().enumerate() {
            assert_eq!(h.table()[y as usize] as usize, x);
        }
    }
    assert!(Gate::new(2, vec![0], vec![0, 0]).is_err());
    assert!(Gate::new(2, vec![0, 0], vec![0, 1, 2, 3]).is_err());
}

#[test]
fn planarize_keeps_the_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..20 {
        let mut c = ReversibleCircuit::new(3, 4);
        for _ in 0..5 {
            let a = rng.gen_range(0..4);
            let b = (a + rng.gen_range(1..4)) % 4;
            c.push(random_gate(&mut rng, 3, vec![a, b])).unwrap();
        }
        let p = c.planarize();
        assert!(p.is_planar());
        for x in all_words(3, 4) {
            assert_eq!(p.eval(&x).unwrap(), c.eval(&x).unwrap());
        }
    }
}

#[test]
fn rsat_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let alph = RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap();
    let inst = RsatInstance::new(alph, random_circuit(&mut rng, 4, 3, 6)).unwrap();
    let back = RsatInstance::parse(&inst.to_text()).unwrap();
    assert_eq!(back, inst);
    assert_eq!(count_rsat(&back, &b()).unwrap(), count_rsat(&inst, &b()).unwrap());
}

#[test]
fn boolean_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..30 {
        let c = BooleanCircuit::random(&mut rng, 3, 5);
        let back = BooleanCircuit::parse(&c.to_string()).unwrap();
        for x in 0..8 {
            assert_eq!(back.eval(x), c.eval(x));
        }
    }
}

#[test]
fn csat_counts_by_truth_table() {
    let and = BooleanCircuit::parse("in 2\nAND 0 1 -> y\nout y\n").unwrap();
    assert_eq!(count_csat(&and, &b()).unwrap(), BigUint::from(1u32));
    let or = BooleanCircuit::parse("in 3\nOR 0 1 -> a\nOR a 2 -> y\nout y\n").unwrap();
    assert_eq!(count_csat(&or, &b()).unwrap(), BigUint::from(7u32));
}

fn zombie_alphabets() -> Vec<Arc<ZAlphabet>> {
    [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)]
        .into_iter()
        .map(|g| Arc::new(ZAlphabet::minimal(Arc::new(g)).unwrap()))
        .collect()
}

#[test]
fn minimal_zombie_alphabet_meets_the_size_constraints() {
    for z in zombie_alphabets() {
        let m = z.group().order();
        let (i, f, w) = (z.init().len(), z.finals().len(), z.warning().len());
        assert!(i >= 2 * m && f >= 2 * m);
        assert_ne!(z.init(), z.finals());
        let union = i + f;
        assert!(z.size() >= 2 * union + 3 * m + 1);
        assert_eq!(w, union + 2 * m);
        let zz = z.zombie();
        assert!(z.warning().iter().all(|x| *x != zz && !z.init().contains(x) && !z.finals().contains(x)));
        let (z1, z2) = z.warning_marks();
        assert_ne!(z.action().orbit_of(z1), z.action().orbit_of(z2));
    }
}

#[test]
fn zombie_gates_are_equivariant_rubik_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for z in zombie_alphabets() {
        let q = z.symbol_alphabet().size();
        let sq = z.square();
        let post = z.post_gate().unwrap();
        assert!(sq.is_equivariant(&post) && rubik_membership(&post, sq).unwrap());
        for _ in 0..4 {
            let gamma = random_gate(&mut rng, q, vec![0, 1]);
            let p = z.main_gate(&gamma).unwrap();
            assert!(sq.is_equivariant(&p));
            assert!(rubik_membership(&p, sq).unwrap());
        }
    }
}

/// On data states of width 2 the main gate keeps zombies in place and keeps
/// aligned pairs aligned and misaligned pairs misaligned.
#[test]
fn main_gates_preserve_zombies_and_alignment() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for z in zombie_alphabets() {
        let q = z.symbol_alphabet().size();
        let a = z.size();
        let data: Vec<usize> = (0..a).filter(|&x| x == z.zombie() || z.split(x).is_some()).collect();
        for _ in 0..3 {
            let gamma = random_gate(&mut rng, q, vec![0, 1]);
            let p = z.main_gate(&gamma).unwrap();
            for &x in &data {
                for &y in &data {
                    let img = p.apply(x * a + y);
                    let (u, v) = (img / a, img % a);
                    assert_eq!((u == z.zombie(), v == z.zombie()), (x == z.zombie(), y == z.zombie()));
                    if let (Some((_, g1)), Some((_, g2))) = (z.split(x), z.split(y)) {
                        let (_, h1) = z.split(u).unwrap();
                        let (_, h2) = z.split(v).unwrap();
                        assert_eq!(g1 == g2, h1 == h2);
                    }
                }
            }
        }
    }
}

#[test]
fn rubik_extension_of_a_partial_map() {
    let z = &zombie_alphabets()[0];
    let sq = z.square();
    let mut partial = vec![None; sq.points()];
    let zz = z.zombie() * z.size() + z.zombie();
    partial[zz] = Some(zz as u32);
    let p: Permutation = extend_to_rubik(&partial, sq).unwrap();
    assert_eq!(p.apply(zz), zz);
    assert!(sq.is_equivariant(&p) && rubik_membership(&p, sq).unwrap());
}

#[test]
fn zombie_pipeline_counts() {
    let target = RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap();
    let z = zombie_alphabets().remove(0);
    for text in ["in 1\nNOT 0 -> y\nout y\n", "in 2\nAND 0 1 -> y\nout y\n", "in 2\nOR 0 1 -> y\nout y\n"] {
        let c = BooleanCircuit::parse(text).unwrap();
        let run = run_pipeline(&c, &target, Some(&z)).unwrap();
        run.zsat.as_ref().unwrap().verify().unwrap();
        let rep = verify_parsimony(&run, &b()).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.zsat.unwrap(), rep.stages[0].count.clone() * 2u32 + 1u32);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_circuits_keep_their_count(seed in any::<u64>(), inputs in 1usize..=3, gates in 0usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = BooleanCircuit::random(&mut rng, inputs, gates);
        let targets = [
            RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap(),
            RsatAlphabet::new(5, vec![0, 1], vec![1, 2]).unwrap(),
        ];
        for t in &targets {
            let run = run_pipeline(&c, t, None).unwrap();
            let rep = verify_parsimony(&run, &b()).unwrap();
            prop_assert!(rep.pass, "{}: {:?}", c, rep.failures);
        }
    }
}
