#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use homcount::complex::SimplicialComplex;
use homcount::group::{FiniteGroup, StemExtension};
use homcount::io::{parse_extension, parse_group, read_input};
use homcount::WorkBounds;

/// A connected complex on 4..=6 vertices: a spanning path, a few random
/// triangles and a few random extra edges, with at most `max_simplices` simplices.
pub fn random_complex<R: Rng>(rng: &mut R, max_simplices: usize) -> SimplicialComplex {
    loop {
        let n = rng.gen_range(4..=6);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut maximal: Vec<Vec<usize>> = order.windows(2).map(|w| vec![w[0], w[1]]).collect();
        for _ in 0..rng.gen_range(1..=6) {
            let mut t: Vec<usize> = (0..n).collect();
            t.shuffle(rng);
            maximal.push(t[..3].to_vec());
        }
        for _ in 0..rng.gen_range(0..=2) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            maximal.push(vec![a, b]);
        }
        let cx = SimplicialComplex::from_maximal(n, &maximal).unwrap();
        if cx.len() <= max_simplices && cx.is_connected() {
            return cx;
        }
    }
}

/// `Σ_g |C(g)|`.
pub fn commuting_pairs(g: &FiniteGroup) -> u64 {
    let mut n = 0;
    for x in g.elements() {
        for y in g.elements() {
            n += (g.mul(x, y) == g.mul(y, x)) as u64;
        }
    }
    n
}

pub fn small_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::symmetric(3),
        FiniteGroup::alternating(4),
    ]
}

/// A5 and the binary icosahedral extension, both read from the bundled files.
pub fn a5_with_extension() -> (FiniteGroup, StemExtension) {
    let a5 = parse_group(&read_input("a5.grp").unwrap()).unwrap();
    let ext = parse_extension(
        &read_input("sl25-ext.ext").unwrap(),
        &a5,
        &WorkBounds::default(),
        read_input,
    )
    .unwrap();
    (a5, ext)
}
