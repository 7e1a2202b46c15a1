use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

use super::Permutation;

struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: HashMap<usize, Permutation>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base_point, Permutation::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            transversal,
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal
            .insert(self.base_point, Permutation::identity(degree));
        let mut queue = vec![self.base_point];
        while let Some(x) = queue.pop() {
            for g in &self.gens {
                let y = g.apply(x);
                if !self.transversal.contains_key(&y) {
                    let u = self.transversal[&x].then(g);
                    self.transversal.insert(y, u);
                    queue.push(y);
                }
            }
        }
    }
}

struct Chain {
    levels: Vec<Level>,
}

impl Chain {
    /// Strips `g` through levels `from..`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it went all the way).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.base_point);
            match level.transversal.get(&x) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.transversal.len())
    }
}

/// A permutation group given by generators. The stabilizer chain is built on first
/// use and then shared read-only.
pub struct PermutationGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Chain>,
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens.len())
            .finish()
    }
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        PermutationGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, gens: &[Permutation], bounds: &WorkBounds) -> Result<Self> {
        if degree > bounds.max_degree {
            return Err(Error::bound("permutation degree", degree, bounds.max_degree as u64));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() > degree) {
            return Err(Error::pre(format!(
                "generator of degree {} on a domain of size {degree}",
                g.degree()
            )));
        }
        Ok(PermutationGroup {
            degree,
            gens: gens.iter().map(|g| g.extended(degree)).collect(),
            chain: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Exact order from the stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() > self.degree {
            return false;
        }
        let (residue, _) = self.chain().sift(p.extended(self.degree), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base_point).collect()
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| schreier_sims(self.degree, &self.gens))
    }
}

/// Deterministic Schreier–Sims: every Schreier generator of every level is sifted,
/// and a nontrivial residue is added at the level where it dropped out before the
/// scan restarts from there.
fn schreier_sims(degree: usize, gens: &[Permutation]) -> Chain {
    let mut chain = Chain { levels: Vec::new() };
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return chain;
    }
    for g in &gens {
        if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
            let moved = (0..degree).find(|&x| g.apply(x) != x).unwrap();
            chain.levels.push(Level::new(moved, degree));
        }
    }
    for g in &gens {
        for level in chain.levels.iter_mut() {
            level.gens.push(g.clone());
            if g.apply(level.base_point) != level.base_point {
                break;
            }
        }
    }
    for level in chain.levels.iter_mut() {
        level.rebuild_orbit(degree);
    }

    let mut i = chain.levels.len();
    while i > 0 {
        let level_index = i - 1;
        match first_failing_schreier(&chain, level_index) {
            None => i -= 1,
            Some((residue, dropped)) => {
                if dropped == chain.levels.len() {
                    let moved = (0..degree).find(|&x| residue.apply(x) != x).unwrap();
                    chain.levels.push(Level::new(moved, degree));
                }
                for level in &mut chain.levels[level_index + 1..=dropped] {
                    level.gens.push(residue.clone());
                    level.rebuild_orbit(degree);
                }
                i = dropped + 1;
            }
        }
    }
    chain
}

fn first_failing_schreier(chain: &Chain, i: usize) -> Option<(Permutation, usize)> {
    let level = &chain.levels[i];
    let mut points: Vec<&usize> = level.transversal.keys().collect();
    points.sort_unstable();
    for &x in points {
        let ux = &level.transversal[&x];
        for s in &level.gens {
            let y = s.apply(x);
            let t = ux.then(s).then(&level.transversal[&y].inverse());
            if t.is_identity() {
                continue;
            }
            let (residue, dropped) = chain.sift(t, i + 1);
            if !residue.is_identity() {
                return Some((residue, dropped));
            }
        }
    }
    None
}
