use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

use super::{Elem, FiniteGroup};

/// An automorphism stored as the image of every element id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    map: Vec<Elem>,
}

impl Automorphism {
    pub fn identity(group: &FiniteGroup) -> Self {
        Automorphism {
            map: group.elements().collect(),
        }
    }

    /// Checks bijectivity and multiplicativity on every pair.
    pub fn new(group: &FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        let n = group.order();
        if map.len() != n {
            return Err(Error::Verification("automorphism has wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &y in &map {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::Verification("automorphism is not a bijection".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if map[group.mul(a, b)] != group.mul(map[a], map[b]) {
                    return Err(Error::Verification(format!(
                        "automorphism is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Automorphism { map })
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Automorphism { map }
    }
}

/// A small generating set: each step adds the element whose inclusion produces the
/// largest generated subgroup (ties to the lowest id).
pub fn greedy_generating_set(group: &FiniteGroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = 1;
    while current < group.order() {
        let mut best = (current, 0);
        let mut trial = gens.clone();
        trial.push(0);
        for x in 1..group.order() {
            *trial.last_mut().unwrap() = x;
            let size = group.generated_order(&trial, group.order());
            if size > best.0 {
                best = (size, x);
                if size == group.order() {
                    break;
                }
            }
        }
        gens.push(best.1);
        current = best.0;
    }
    gens
}

/// The homomorphism `⟨gens⟩ → target` sending `gens[i] ↦ images[i]`, if one exists.
/// Entries outside `⟨gens⟩` are `usize::MAX`.
pub fn extend_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    assert_eq!(gens.len(), images.len());
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut stack = vec![0usize];
    // Checking φ(x·g) = φ(x)·h on every reached x and every generator g makes φ
    // multiplicative on the generated subgroup.
    while let Some(x) = stack.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let img = target.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = img;
                stack.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Backtracking over images of a greedy generating set of `source`, keeping only
/// partial assignments that extend to injective homomorphisms on the prefix.
fn injective_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    bounds: &WorkBounds,
    first_only: bool,
) -> Result<Vec<Vec<Elem>>> {
    let gens = greedy_generating_set(source);
    let src_orders: Vec<usize> = gens.iter().map(|&g| source.element_order(g)).collect();
    let tgt_orders: Vec<usize> = target.elements().map(|x| target.element_order(x)).collect();
    let candidates: Vec<Vec<Elem>> = src_orders
        .iter()
        .map(|&o| target.elements().filter(|&x| tgt_orders[x] == o).collect())
        .collect();

    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    let mut work = 0u64;
    search(
        source,
        target,
        &gens,
        &candidates,
        &mut images,
        &mut found,
        &mut work,
        bounds.max_enumeration,
        first_only,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
    found: &mut Vec<Vec<Elem>>,
    work: &mut u64,
    limit: u64,
    first_only: bool,
) -> Result<bool> {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_homomorphism(source, target, gens, images)
            .expect("prefix check already covers the full generating set");
        found.push(map);
        return Ok(first_only);
    }
    for &h in &candidates[depth] {
        *work += 1;
        if *work > limit {
            return Err(Error::bound("automorphism search", *work, limit));
        }
        images.push(h);
        let ok = extend_homomorphism(source, target, &gens[..=depth], images).is_some_and(|m| {
            let mut seen = vec![false; target.order()];
            m.iter()
                .filter(|&&y| y != usize::MAX)
                .all(|&y| !std::mem::replace(&mut seen[y], true))
        });
        if ok
            && search(
                source, target, gens, candidates, images, found, work, limit, first_only,
            )?
        {
            return Ok(true);
        }
        images.pop();
    }
    Ok(false)
}

/// The full automorphism group as element-id permutations, identity first.
pub fn automorphisms(group: &FiniteGroup, bounds: &WorkBounds) -> Result<Vec<Automorphism>> {
    if group.order() > bounds.max_group_order {
        return Err(Error::bound(
            "automorphism group order",
            group.order(),
            bounds.max_group_order as u64,
        ));
    }
    let mut maps = injective_homs(group, group, bounds, false)?;
    maps.sort();
    Ok(maps.into_iter().map(|map| Automorphism { map }).collect())
}

/// An isomorphism `a → b` as an id map, if the groups are isomorphic.
pub fn find_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    bounds: &WorkBounds,
) -> Result<Option<Vec<Elem>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.fingerprint() != b.fingerprint() {
        return Ok(None);
    }
    Ok(injective_homs(a, b, bounds, true)?.pop())
}
