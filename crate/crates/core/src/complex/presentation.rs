use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::homology::HomologyGroup;
use super::snf::{smith_normal_form, IntegerMatrix};
use super::SimplicialComplex;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// `⟨x₁ … x_r | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.gen >= generators) {
                return Err(Error::pre(format!(
                    "relator {i} uses generator {} of {generators}",
                    l.gen + 1
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// `gens r`, then one relator per line written with `x3` for the third
    /// generator and `X3` for its inverse. `1` denotes the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators = None;
        let mut relators = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens") {
                generators = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line_no, "expected `gens <count>`"))?,
                );
                continue;
            }
            let r = generators.ok_or_else(|| Error::parse(line_no, "relator before `gens` header"))?;
            relators.push(parse_word(line, r).map_err(|m| Error::parse(line_no, m))?);
        }
        let r = generators.ok_or_else(|| Error::parse(0, "missing `gens` header"))?;
        Self::new(r, relators)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generators);
        for r in &self.relators {
            out.push_str(&word_to_string(r));
            out.push('\n');
        }
        out
    }

    /// `H₁` of the presented group: the cokernel of the exponent-sum matrix.
    pub fn abelianization(&self) -> HomologyGroup {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                let delta = if l.inverse { -BigInt::one() } else { BigInt::one() };
                let v = m.get(i, l.gen) + delta;
                m.set(i, l.gen, v);
            }
        }
        let d = smith_normal_form(&m);
        let nonzero = d.iter().filter(|x| !x.is_zero()).count();
        HomologyGroup {
            rank: self.generators - nonzero,
            torsion: d.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect(),
        }
    }
}

fn parse_word(text: &str, generators: usize) -> std::result::Result<Vec<Letter>, String> {
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < bytes.len() {
        let inverse = match bytes[i] {
            'x' => false,
            'X' => true,
            c => return Err(format!("unexpected `{c}` in relator `{text}`")),
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = bytes[start..i].iter().collect();
        let k: usize = digits
            .parse()
            .map_err(|_| format!("missing generator number in `{text}`"))?;
        if k == 0 || k > generators {
            return Err(format!("generator x{k} out of range 1..={generators}"));
        }
        word.push(Letter::new(k - 1, inverse));
    }
    Ok(word)
}

pub(crate) fn word_to_string(word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|l| format!("{}{}", if l.inverse { 'X' } else { 'x' }, l.gen + 1))
        .collect()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// One generator per edge outside a breadth-first spanning tree rooted at
/// `basepoint`, one relator `g(u,v)·g(v,w)·g(u,w)⁻¹` per triangle `u < v < w`.
pub fn presentation_from_complex(complex: &SimplicialComplex, basepoint: usize) -> Result<Presentation> {
    let n = complex.vertex_count();
    if n == 0 {
        return Err(Error::pre("complex has no vertices"));
    }
    if basepoint >= n {
        return Err(Error::pre(format!("basepoint {basepoint} out of range")));
    }
    let edges = complex.of_dim(1);
    let mut adj = vec![Vec::new(); n];
    for (k, &e) in edges.iter().enumerate() {
        let s = complex.simplex(e);
        adj[s[0] as usize].push((s[1] as usize, k));
        adj[s[1] as usize].push((s[0] as usize, k));
    }
    let mut tree = vec![false; edges.len()];
    let mut seen = vec![false; n];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(u) = queue.pop_front() {
        for &(w, k) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                tree[k] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::pre("complex is disconnected"));
    }
    let mut gen_of = vec![None; edges.len()];
    let mut r = 0;
    for k in 0..edges.len() {
        if !tree[k] {
            gen_of[k] = Some(r);
            r += 1;
        }
    }
    let edge_letter = |u: u32, v: u32, inverse: bool| {
        let e = complex.index_of(&[u, v]).unwrap();
        let k = edges.binary_search(&e).unwrap();
        gen_of[k].map(|g| Letter::new(g, inverse))
    };
    let relators = complex
        .of_dim(2)
        .iter()
        .map(|&t| {
            let s = complex.simplex(t);
            [
                edge_letter(s[0], s[1], false),
                edge_letter(s[1], s[2], false),
                edge_letter(s[0], s[2], true),
            ]
            .into_iter()
            .flatten()
            .collect()
        })
        .collect();
    Presentation::new(r, relators)
}

#[cfg(test)]
mod tests {
    use super::super::examples;
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = Presentation::parse("gens 2\nx1x1x1X2X2X2X2X2\nx1 x1 x1 X2 X1 X2 X1\n").unwrap();
        assert_eq!(p.generators(), 2);
        assert_eq!(p.relators()[0].len(), 8);
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        assert!(Presentation::parse("gens 1\nx2\n").is_err());
        assert!(Presentation::parse("x1\n").is_err());
        assert!(Presentation::parse("gens 1\ny1\n").is_err());
    }

    #[test]
    fn abelianizations() {
        let poincare = Presentation::parse("gens 2\nx1x1x1X2X2X2X2X2\nx1x1x1X2X1X2X1\n").unwrap();
        assert!(poincare.abelianization().is_trivial());
        let torus = presentation_from_complex(&examples::torus7(), 0).unwrap();
        assert_eq!(torus.abelianization().rank, 2);
        let rp2 = presentation_from_complex(&examples::projective_plane(), 0).unwrap();
        assert_eq!(rp2.abelianization().to_string(), "Z/2");
    }

    #[test]
    fn generator_count_is_cycle_rank() {
        let t = examples::torus7();
        let p = presentation_from_complex(&t, 0).unwrap();
        assert_eq!(p.generators(), 21 - 6);
        assert_eq!(p.relators().len(), 14);
        let disconnected = SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(presentation_from_complex(&disconnected, 0).is_err());
    }
}
