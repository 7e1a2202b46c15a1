use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// Twist curves on `Σ_g`, indexed from 1. `A(i)` and `B(i)` are the meridian and
/// longitude of handle `i`; `C(i)` joins handles `i` and `i + 1` and is
/// homologous to `aᵢ − aᵢ₊₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistCurve {
    A(usize),
    B(usize),
    C(usize),
}

/// A twist acting on tuples by substitution. Every rule preserves
/// `∏[aᵢ, bᵢ]` exactly in the free group, not only modulo the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCGGenerator {
    name: String,
    curve: TwistCurve,
}

/// `a1..ag`, `b1..bg`, `c1..c(g-1)`.
pub fn standard_generators(genus: usize) -> Vec<MCGGenerator> {
    let mut out = Vec::new();
    for i in 1..=genus {
        out.push(MCGGenerator::new(TwistCurve::A(i)));
    }
    for i in 1..=genus {
        out.push(MCGGenerator::new(TwistCurve::B(i)));
    }
    for i in 1..genus {
        out.push(MCGGenerator::new(TwistCurve::C(i)));
    }
    out
}

impl MCGGenerator {
    pub fn new(curve: TwistCurve) -> Self {
        let name = match curve {
            TwistCurve::A(i) => format!("a{i}"),
            TwistCurve::B(i) => format!("b{i}"),
            TwistCurve::C(i) => format!("c{i}"),
        };
        MCGGenerator { name, curve }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn curve(&self) -> TwistCurve {
        self.curve
    }

    /// Smallest genus on which the curve exists.
    pub fn min_genus(&self) -> usize {
        match self.curve {
            TwistCurve::A(i) | TwistCurve::B(i) => i,
            TwistCurve::C(i) => i + 1,
        }
    }

    /// Rewrites the tuple in place.
    ///
    /// * `aᵢ`: `bᵢ ↦ bᵢaᵢ`
    /// * `bᵢ`: `aᵢ ↦ aᵢbᵢ⁻¹`
    /// * `cᵢ`: with `γ = aᵢ₊₁⁻¹bᵢaᵢbᵢ⁻¹`, `bᵢ ↦ γbᵢ`, `aᵢ₊₁ ↦ γaᵢ₊₁γ⁻¹`, `bᵢ₊₁ ↦ bᵢ₊₁γ⁻¹`
    ///
    /// `γ` takes the same value before and after the `cᵢ` rule, so the inverse
    /// uses `γ⁻¹` in its place.
    pub fn apply(&self, g: &FiniteGroup, t: &mut [Elem], inverse: bool) {
        match self.curve {
            TwistCurve::A(i) => {
                let (a, b) = (2 * (i - 1), 2 * (i - 1) + 1);
                let s = if inverse { g.inv(t[a]) } else { t[a] };
                t[b] = g.mul(t[b], s);
            }
            TwistCurve::B(i) => {
                let (a, b) = (2 * (i - 1), 2 * (i - 1) + 1);
                let s = if inverse { t[b] } else { g.inv(t[b]) };
                t[a] = g.mul(t[a], s);
            }
            TwistCurve::C(i) => {
                let (a, b, c, d) = (2 * (i - 1), 2 * (i - 1) + 1, 2 * i, 2 * i + 1);
                let gamma = g.mul(
                    g.mul(g.inv(t[c]), t[b]),
                    g.mul(t[a], g.inv(t[b])),
                );
                let s = if inverse { g.inv(gamma) } else { gamma };
                let si = g.inv(s);
                t[b] = g.mul(s, t[b]);
                t[c] = g.mul(g.mul(s, t[c]), si);
                t[d] = g.mul(t[d], si);
            }
        }
    }

    /// Action on `H₁(Σ_g; Z)` in the basis `a₁, b₁, …`; column `j` is the image
    /// of basis vector `j` under the substitution.
    pub fn homology_matrix(&self, genus: usize, inverse: bool) -> Vec<Vec<i64>> {
        let n = 2 * genus;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let e: i64 = if inverse { -1 } else { 1 };
        match self.curve {
            TwistCurve::A(i) => {
                let (a, b) = (2 * (i - 1), 2 * (i - 1) + 1);
                m[a][b] += e;
            }
            TwistCurve::B(i) => {
                let (a, b) = (2 * (i - 1), 2 * (i - 1) + 1);
                m[b][a] -= e;
            }
            TwistCurve::C(i) => {
                let (a, b, c, d) = (2 * (i - 1), 2 * (i - 1) + 1, 2 * i, 2 * i + 1);
                m[a][b] += e;
                m[c][b] -= e;
                m[a][d] -= e;
                m[c][d] += e;
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    /// Index into the generator list of the word's genus.
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the standard generators of one genus, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCGWord {
    genus: usize,
    generators: Vec<MCGGenerator>,
    letters: Vec<Letter>,
}

impl MCGWord {
    pub fn identity(genus: usize) -> Self {
        MCGWord {
            genus,
            generators: standard_generators(genus),
            letters: Vec::new(),
        }
    }

    /// Space-separated generator names, each optionally followed by `'` for the
    /// inverse; `name^k` repeats a letter (negative `k` inverts).
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        let mut w = Self::identity(genus);
        for tok in text.split_whitespace() {
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => {
                    let p: i64 = p
                        .parse()
                        .map_err(|_| Error::pre(format!("bad exponent in {tok}")))?;
                    (b, p)
                }
                None => (tok, 1),
            };
            let (name, inv) = match base.strip_suffix('\'') {
                Some(n) => (n, true),
                None => (base, false),
            };
            let generator = w
                .generators
                .iter()
                .position(|g| g.name() == name)
                .ok_or_else(|| {
                    Error::pre(format!("no mapping-class generator {name} at genus {genus}"))
                })?;
            let inverse = inv ^ (power < 0);
            for _ in 0..power.unsigned_abs() {
                w.letters.push(Letter { generator, inverse });
            }
        }
        Ok(w)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generators(&self) -> &[MCGGenerator] {
        &self.generators
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn inverse(&self) -> MCGWord {
        MCGWord {
            genus: self.genus,
            generators: self.generators.clone(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    pub fn apply_in_place(&self, g: &FiniteGroup, t: &mut [Elem]) {
        for l in &self.letters {
            self.generators[l.generator].apply(g, t, l.inverse);
        }
    }

    /// `mcg_apply`: the image of `f` under the word.
    pub fn apply(&self, g: &FiniteGroup, f: &super::SurfaceTuple) -> Result<super::SurfaceTuple> {
        if f.genus() != self.genus {
            return Err(Error::pre(format!(
                "word of genus {} applied to a tuple of genus {}",
                self.genus,
                f.genus()
            )));
        }
        let mut t = f.elems().to_vec();
        self.apply_in_place(g, &mut t);
        super::SurfaceTuple::new(g, t)
    }

    /// Product of the letters' homology matrices.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        let n = 2 * self.genus;
        let mut acc: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        for l in &self.letters {
            let m = self.generators[l.generator].homology_matrix(self.genus, l.inverse);
            acc = (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| acc[i][k] * m[k][j]).sum()).collect())
                .collect();
        }
        acc
    }

    /// Whether the word acts trivially on `H₁(Σ_g)`.
    pub fn is_torelli(&self) -> bool {
        self.homology_matrix()
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == (i == j) as i64))
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let n = self.generators[l.generator].name();
                if l.inverse {
                    format!("{n}'")
                } else {
                    n.to_string()
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
