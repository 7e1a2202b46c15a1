use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::WorkBounds;
use crate::counting::HomCount;
use crate::error::{Error, Result};
use crate::group::{automorphisms, FiniteGroup};

use super::MCGWord;

/// Two genus-`g` handlebodies glued along their boundary by a mapping-class word.
/// The first handlebody kills `a₁, …, a_g`; the second kills the images of the
/// `aᵢ` under the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardGluing {
    pub word: MCGWord,
}

impl HeegaardGluing {
    pub fn new(word: MCGWord) -> Self {
        HeegaardGluing { word }
    }

    pub fn genus(&self) -> usize {
        self.word.genus()
    }

    /// `genus g` followed by any number of `word ...` lines, concatenated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut genus = None;
        let mut letters = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "genus" => {
                    let g: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(idx + 1, "expected `genus <g>`"))?;
                    if g == 0 {
                        return Err(Error::parse(idx + 1, "genus must be at least 1"));
                    }
                    genus = Some(g);
                }
                "word" => {
                    if genus.is_none() {
                        return Err(Error::parse(idx + 1, "`word` before `genus`"));
                    }
                    letters.push(' ');
                    letters.push_str(rest);
                }
                other => return Err(Error::parse(idx + 1, format!("unknown keyword {other}"))),
            }
        }
        let genus = genus.ok_or_else(|| Error::parse(0, "missing `genus` line"))?;
        Ok(HeegaardGluing {
            word: MCGWord::parse(genus, &letters)?,
        })
    }

    pub fn to_text(&self) -> String {
        format!("genus {}\nword {}\n", self.genus(), self.word)
    }
}

/// `#H(M, G)` for the glued manifold `M`, with surjections and `#Q`.
///
/// A homomorphism `π₁(M) → G` is a tuple with every `aᵢ ↦ 1` whose image under
/// the word also sends every `aᵢ` to 1. The `bᵢ` range freely over `G^g`.
pub fn heegaard_count(h: &HeegaardGluing, group: &FiniteGroup, bounds: &WorkBounds) -> Result<HomCount> {
    let g = h.genus();
    let n = group.order();
    let work = (n as u64).checked_pow(g as u32);
    if work.is_none_or(|w| w > bounds.max_enumeration) {
        return Err(Error::bound(
            "Heegaard enumeration",
            format!("{n}^{g}"),
            bounds.max_enumeration,
        ));
    }
    let auts = automorphisms(group, bounds)?;
    let (homs, surj) = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut bs = vec![0; g];
            bs[0] = first;
            let mut t = vec![0; 2 * g];
            let (mut homs, mut surj) = (0u64, 0u64);
            loop {
                for (i, &b) in bs.iter().enumerate() {
                    t[2 * i] = 0;
                    t[2 * i + 1] = b;
                }
                h.word.apply_in_place(group, &mut t);
                if (0..g).all(|i| t[2 * i] == 0) {
                    homs += 1;
                    if group.generates(&bs) {
                        surj += 1;
                    }
                }
                let mut i = g - 1;
                loop {
                    if i == 0 {
                        return (homs, surj);
                    }
                    bs[i] += 1;
                    if bs[i] < n {
                        break;
                    }
                    bs[i] = 0;
                    i -= 1;
                }
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let a = auts.len() as u64;
    if surj % a != 0 {
        return Err(Error::Verification(format!(
            "{surj} surjections are not divisible by |Aut(G)| = {a}"
        )));
    }
    Ok(HomCount {
        homs: BigUint::from(homs),
        surjections: BigUint::from(surj),
        quotients: BigUint::from(surj / a),
    })
}
