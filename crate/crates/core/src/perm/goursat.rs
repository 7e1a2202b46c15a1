use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// A subdirect product `H ≤ G1 × G2` written as the graph of an isomorphism
/// `G1/N1 → G2/N2`.
#[derive(Clone, Debug)]
pub struct GoursatDecomposition {
    pub h_order: usize,
    pub n1: Subgroup,
    pub n2: Subgroup,
    /// Coset of each element of `G1` (cosets numbered by smallest member).
    pub coset1: Vec<usize>,
    pub coset2: Vec<usize>,
    /// `iso[c1] = c2`.
    pub iso: Vec<usize>,
    /// `{(g1, g2) : iso(g1N1) = g2N2}` equals `H`.
    pub reconstructs: bool,
}

/// `H` is given by generating pairs. Fails unless `H` projects onto both factors.
pub fn goursat_decompose(
    h_gens: &[(Elem, Elem)],
    g1: &FiniteGroup,
    g2: &FiniteGroup,
) -> Result<GoursatDecomposition> {
    let m = g2.order();
    for &(a, b) in h_gens {
        if a >= g1.order() || b >= m {
            return Err(Error::pre(format!("pair ({a}, {b}) is outside G1 × G2")));
        }
    }
    let product = FiniteGroup::direct_product(g1, g2);
    let ids: Vec<Elem> = h_gens.iter().map(|&(a, b)| a * m + b).collect();
    let h = product.closure(&ids);
    let pairs: Vec<(Elem, Elem)> = h.iter().map(|&x| (x / m, x % m)).collect();

    let left: BTreeSet<Elem> = pairs.iter().map(|p| p.0).collect();
    let right: BTreeSet<Elem> = pairs.iter().map(|p| p.1).collect();
    if left.len() != g1.order() {
        return Err(Error::pre("H does not project onto the first factor"));
    }
    if right.len() != g2.order() {
        return Err(Error::pre("H does not project onto the second factor"));
    }

    let n1 = Subgroup::from_sorted(pairs.iter().filter(|p| p.1 == 0).map(|p| p.0).collect());
    let mut n2_members: Vec<Elem> = pairs.iter().filter(|p| p.0 == 0).map(|p| p.1).collect();
    n2_members.sort_unstable();
    let n2 = Subgroup::from_sorted(n2_members);
    let (q1, coset1) = g1.quotient(&n1)?;
    let (q2, coset2) = g2.quotient(&n2)?;
    if q1.order() != q2.order() {
        return Err(Error::Verification("quotient orders differ".into()));
    }

    let mut iso = vec![usize::MAX; q1.order()];
    for &(a, b) in &pairs {
        let (c1, c2) = (coset1[a], coset2[b]);
        if iso[c1] == usize::MAX {
            iso[c1] = c2;
        } else if iso[c1] != c2 {
            return Err(Error::Verification("coset map is not well defined".into()));
        }
    }
    for x in 0..q1.order() {
        for y in 0..q1.order() {
            if iso[q1.mul(x, y)] != q2.mul(iso[x], iso[y]) {
                return Err(Error::Verification("coset map is not a homomorphism".into()));
            }
        }
    }

    let rebuilt: BTreeSet<(Elem, Elem)> = (0..g1.order())
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| iso[coset1[a]] == coset2[b])
        .collect();
    let original: BTreeSet<(Elem, Elem)> = pairs.iter().copied().collect();
    Ok(GoursatDecomposition {
        h_order: h.len(),
        n1,
        n2,
        coset1,
        coset2,
        iso,
        reconstructs: rebuilt == original,
    })
}
