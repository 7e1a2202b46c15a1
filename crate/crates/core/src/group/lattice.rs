use std::collections::HashSet;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

use super::{Elem, FiniteGroup};

/// A subgroup stored as its sorted member ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Subgroup {
    /// Wraps an already sorted, closed id list. Closure is not rechecked here; use
    /// [`Subgroup::generated`] or [`Subgroup::check_in`] when the input is untrusted.
    pub fn from_sorted(members: Vec<Elem>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn generated(group: &FiniteGroup, gens: &[Elem]) -> Self {
        Subgroup {
            members: group.closure(gens),
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            members: group.elements().collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&x| other.contains(x))
    }

    /// Contains the identity and is closed under products and inverses.
    pub fn check_in(&self, group: &FiniteGroup) -> Result<()> {
        if self.members.first() != Some(&0) {
            return Err(Error::Verification("subgroup misses the identity".into()));
        }
        for &a in &self.members {
            if !self.contains(group.inv(a)) {
                return Err(Error::Verification(format!("not closed under inverse at {a}")));
            }
            for &b in &self.members {
                if !self.contains(group.mul(a, b)) {
                    return Err(Error::Verification(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|g| self.members.iter().all(|&n| self.contains(group.conjugate(g, n))))
    }
}

/// Every subgroup of a finite group, ordered by (order, members), with the inclusion
/// relation as a dense boolean matrix.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    contained: Vec<bool>,
}

impl SubgroupLattice {
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// `subgroups[i] ≤ subgroups[j]`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.contained[i * self.subgroups.len() + j]
    }

    /// Indices of the subgroups strictly below `j`.
    pub fn below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.subgroups.len()).filter(move |&i| i != j && self.contains(i, j))
    }

    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s == sub)
    }
}

/// All subgroups, found by repeatedly joining cyclic subgroups onto known ones until
/// nothing new appears. Every subgroup is a join of cyclic subgroups, so this is
/// complete.
pub fn subgroup_lattice(group: &FiniteGroup, bounds: &WorkBounds) -> Result<SubgroupLattice> {
    let n = group.order();
    if n > bounds.max_group_order {
        return Err(Error::bound("subgroup lattice group order", n, bounds.max_group_order as u64));
    }
    let words = n.div_ceil(64);
    let to_bits = |members: &[Elem]| {
        let mut bits = vec![0u64; words];
        for &m in members {
            bits[m / 64] |= 1 << (m % 64);
        }
        bits
    };

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut all: Vec<Vec<Elem>> = Vec::new();
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    for x in group.elements() {
        let c = group.closure(&[x]);
        if seen.insert(to_bits(&c)) {
            cyclic_gens.push(x);
            all.push(c);
        }
    }

    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for &x in &cyclic_gens {
                if all[i].binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = Vec::with_capacity(all[i].len() + 1);
                gens.extend_from_slice(&all[i]);
                gens.push(x);
                let c = group.closure(&gens);
                if seen.insert(to_bits(&c)) {
                    next.push(all.len());
                    all.push(c);
                }
            }
        }
        frontier = next;
    }

    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let subgroups: Vec<Subgroup> = all.into_iter().map(Subgroup::from_sorted).collect();
    let m = subgroups.len();
    let bits: Vec<Vec<u64>> = subgroups.iter().map(|s| to_bits(s.members())).collect();
    let mut contained = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            contained[i * m + j] = subgroups[i].order() <= subgroups[j].order()
                && bits[i].iter().zip(&bits[j]).all(|(a, b)| a & !b == 0);
        }
    }
    Ok(SubgroupLattice {
        subgroups,
        contained,
    })
}
