use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::snf::{smith_normal_form, IntegerMatrix};
use super::{SimplicialComplex, MAX_DIMENSION};

/// `Z^rank ⊕ Z/t₁ ⊕ Z/t₂ ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `∂_k : C_k → C_{k−1}` with rows indexed by `(k−1)`-simplices.
pub(crate) fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> IntegerMatrix {
    let cols = complex.of_dim(k);
    if k == 0 {
        return IntegerMatrix::zeros(0, cols.len());
    }
    let rows = complex.of_dim(k - 1);
    let row_of = |s: usize| rows.binary_search(&s).unwrap();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (c, &s) in cols.iter().enumerate() {
        for (i, &f) in complex.faces(s).iter().enumerate() {
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            m.set(row_of(f), c, sign);
        }
    }
    m
}

/// `H_0 … H_3` from Smith normal forms of the boundary matrices.
pub fn homology(complex: &SimplicialComplex) -> Vec<HomologyGroup> {
    // diagonals[k] is the SNF of ∂_k, for k = 0..=MAX_DIMENSION + 1
    let diagonals: Vec<Vec<BigInt>> = (0..=MAX_DIMENSION + 1)
        .map(|k| {
            if k > MAX_DIMENSION {
                Vec::new()
            } else {
                smith_normal_form(&boundary_matrix(complex, k))
            }
        })
        .collect();
    let rank = |d: &Vec<BigInt>| d.iter().filter(|x| !x.is_zero()).count();
    (0..=MAX_DIMENSION)
        .map(|k| {
            let chains = complex.count(k);
            let cycles = chains - rank(&diagonals[k]);
            let boundaries = rank(&diagonals[k + 1]);
            HomologyGroup {
                rank: cycles - boundaries,
                torsion: diagonals[k + 1]
                    .iter()
                    .filter(|x| !x.is_zero() && !x.is_one())
                    .cloned()
                    .collect(),
            }
        })
        .collect()
}
