use num_bigint::BigUint;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

use super::{Permutation, PermutationGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Giant {
    Alternating,
    Symmetric,
    Other,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Recognises `Alt(n)` and `Sym(n)` by order. Exact for `n ≥ 5`, where `Alt(n)` is
/// the only subgroup of index 2.
pub fn classify_giant(group: &PermutationGroup) -> Result<Giant> {
    let n = group.degree();
    if n < 5 {
        return Err(Error::pre(format!(
            "giant recognition needs at least 5 points, got {n}"
        )));
    }
    let order = group.order();
    let full = factorial(n);
    if order == full {
        Ok(Giant::Symmetric)
    } else if order * 2u32 == full && group.generators().iter().all(Permutation::is_even) {
        Ok(Giant::Alternating)
    } else {
        Ok(Giant::Other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltGenerationReport {
    /// `⟨Alt(Tᵢ)⟩ = Alt(S)`.
    pub generates: bool,
    /// The sets form a connected graph under nonempty pairwise intersection.
    pub intersection_graph_connected: bool,
    pub generated_order: BigUint,
}

/// Whether the alternating groups on the given subsets generate `Alt(S)`.
pub fn alt_generation_check(points: &[usize], subsets: &[Vec<usize>]) -> Result<AltGenerationReport> {
    let mut s: Vec<usize> = points.to_vec();
    s.sort_unstable();
    s.dedup();
    let index = |x: usize| s.binary_search(&x).ok();
    let mut covered = vec![false; s.len()];
    let mut local: Vec<Vec<usize>> = Vec::new();
    for t in subsets {
        let mut t: Vec<usize> = t.clone();
        t.sort_unstable();
        t.dedup();
        if t.len() < 3 {
            return Err(Error::pre(format!("subset {t:?} has fewer than 3 points")));
        }
        let mut l = Vec::new();
        for &x in &t {
            let i = index(x).ok_or_else(|| Error::pre(format!("point {x} is outside S")))?;
            covered[i] = true;
            l.push(i);
        }
        local.push(l);
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::pre("the subsets do not cover S"));
    }

    let n = s.len();
    let mut gens = Vec::new();
    for t in &local {
        for &k in &t[2..] {
            gens.push(Permutation::from_cycles(n, &[vec![t[0], t[1], k]])?);
        }
    }
    let group = PermutationGroup::new(n, &gens, &WorkBounds::default())?;
    let order = group.order();
    let generates = order.clone() * 2u32 == factorial(n);

    // union-find over subset indices
    let m = local.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..m {
        for j in i + 1..m {
            if local[i].iter().any(|x| local[j].contains(x)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    let connected = (0..m).all(|i| find(&mut parent, i) == root);
    Ok(AltGenerationReport {
        generates,
        intersection_graph_connected: connected,
        generated_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, cycles: &[&str]) -> PermutationGroup {
        let gens: Vec<Permutation> = cycles
            .iter()
            .map(|c| Permutation::parse_cycles(c, Some(n)).unwrap())
            .collect();
        PermutationGroup::new(n, &gens, &WorkBounds::default()).unwrap()
    }

    #[test]
    fn giants_on_five_points() {
        assert_eq!(classify_giant(&pg(5, &["(1 2 3)", "(1 2 3 4 5)"])).unwrap(), Giant::Alternating);
        assert_eq!(classify_giant(&pg(5, &["(1 2)", "(1 2 3 4 5)"])).unwrap(), Giant::Symmetric);
        assert_eq!(classify_giant(&pg(5, &["(1 2)"])).unwrap(), Giant::Other);
        assert!(classify_giant(&pg(4, &["(1 2)", "(1 2 3 4)"])).is_err());
    }

    #[test]
    fn alternating_generation() {
        let s: Vec<usize> = (1..=5).collect();
        let r = alt_generation_check(&s, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(r.generates && r.intersection_graph_connected);
        assert_eq!(r.generated_order, BigUint::from(60u32));
        assert!(alt_generation_check(&s, &[s.clone()]).unwrap().generates);

        let s6: Vec<usize> = (1..=6).collect();
        let r = alt_generation_check(&s6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(!r.generates && !r.intersection_graph_connected);
        assert!(alt_generation_check(&s, &[vec![1, 2], vec![2, 3, 4, 5]]).is_err());
    }
}
