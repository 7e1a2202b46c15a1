use num_bigint::BigUint;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};
use crate::group::{greedy_generating_set, Elem, FiniteGroup};

use super::{classify_giant, GSetAction, Giant, OrbitKind, Permutation, PermutationGroup};

/// An equivariant permutation split along the section: free orbit `j` (numbered
/// among free orbits) goes to orbit `orbit_perm(j)` with right component
/// `components[j]`, so `p(g·rep_j) = g·components[j]·rep_{orbit_perm(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RubikDecomposition {
    pub orbit_perm: Permutation,
    pub components: Vec<Elem>,
    /// Induced permutation of the fixed points, in the order of `fixed_points()`.
    pub fixed_perm: Permutation,
}

pub fn rubik_decompose(p: &Permutation, act: &GSetAction) -> Result<RubikDecomposition> {
    if p.degree() != act.points() {
        return Err(Error::pre(format!(
            "permutation of degree {} on a G-set with {} points",
            p.degree(),
            act.points()
        )));
    }
    if let Some(o) = (0..act.orbit_count()).find(|&o| act.orbit_kind(o) == OrbitKind::Other) {
        return Err(Error::pre(format!(
            "orbit {o} is neither fixed nor free"
        )));
    }
    if !act.is_equivariant(p) {
        return Err(Error::pre("permutation does not commute with the group action"));
    }
    let free = act.free_orbits();
    let mut position = vec![usize::MAX; act.orbit_count()];
    for (i, &o) in free.iter().enumerate() {
        position[o] = i;
    }
    let mut images = Vec::with_capacity(free.len());
    let mut components = Vec::with_capacity(free.len());
    for &o in &free {
        let x = p.apply(act.rep(o));
        images.push(position[act.orbit_of(x)] as u32);
        components.push(act.offset(x));
    }
    let fixed = act.fixed_points();
    let fixed_images = fixed
        .iter()
        .map(|&x| fixed.iter().position(|&y| y == p.apply(x)).unwrap() as u32)
        .collect();
    Ok(RubikDecomposition {
        orbit_perm: Permutation::from_images(images)?,
        components,
        fixed_perm: Permutation::from_images(fixed_images)?,
    })
}

/// Membership in the commutator subgroup of the G-set symmetric group: the free
/// orbits are permuted evenly, the fixed points are permuted evenly, and the
/// components multiply to the identity in the abelianization.
pub fn rubik_membership(p: &Permutation, act: &GSetAction) -> Result<bool> {
    let d = rubik_decompose(p, act)?;
    if !d.orbit_perm.is_even() || !d.fixed_perm.is_even() {
        return Ok(false);
    }
    let ab = act.group().abelianization();
    let sigma = d
        .components
        .iter()
        .fold(0, |acc, &h| ab.quotient.mul(acc, ab.project(h)));
    Ok(sigma == 0)
}

/// `|Γ|ⁿ / |Γ_ab| · n!/2`.
pub fn rubik_order(n: usize, gamma: &FiniteGroup) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::pre(format!("Rubik group needs at least 2 orbits, got {n}")));
    }
    let ab = gamma.abelianization().quotient.order();
    let mut order = BigUint::from(gamma.order()).pow(n as u32) / BigUint::from(ab);
    for k in 3..=n as u64 {
        order *= k;
    }
    Ok(order)
}

/// `p(j, g) = (pi[j], g·h[j])` on the regular layout of
/// [`GSetAction::regular`] with no fixed points.
pub fn wreath_element(gamma: &FiniteGroup, pi: &[usize], h: &[Elem]) -> Permutation {
    let m = gamma.order();
    let n = pi.len();
    let mut images = vec![0u32; n * m];
    for j in 0..n {
        for g in 0..m {
            images[j * m + g] = (pi[j] * m + gamma.mul(g, h[j])) as u32;
        }
    }
    Permutation::from_images(images).expect("wreath element is a bijection")
}

/// `(g, g⁻¹, 1, …)` for each generator `g` of `Γ`, plus trivially lifted
/// generators of `Alt(n)`.
pub fn rubik_standard_generators(n: usize, gamma: &FiniteGroup) -> Vec<Permutation> {
    let id: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    if n >= 2 {
        for g in greedy_generating_set(gamma) {
            let mut h = vec![0; n];
            h[0] = g;
            h[1] = gamma.inv(g);
            gens.push(wreath_element(gamma, &id, &h));
        }
    }
    let ones = vec![0; n];
    if n >= 3 {
        let mut pi = id.clone();
        pi[0] = 1;
        pi[1] = 2;
        pi[2] = 0;
        gens.push(wreath_element(gamma, &pi, &ones));
    }
    if n >= 4 {
        // an n-cycle is even for odd n; otherwise cycle the last n-1 orbits
        let start = if n % 2 == 1 { 0 } else { 1 };
        let mut pi = id.clone();
        for j in start..n {
            pi[j] = if j + 1 == n { start } else { j + 1 };
        }
        gens.push(wreath_element(gamma, &pi, &ones));
    }
    gens
}

#[derive(Clone, Debug)]
pub struct RubikSurjectivityReport {
    pub orbits: usize,
    pub orbit_action: Giant,
    /// (i) the induced action on orbits contains `Alt(n)`.
    pub alternating_on_orbits: bool,
    /// (ii) ordered pairs of points in distinct orbits form a single orbit.
    pub pair_transitive: bool,
    pub generated_order: BigUint,
    pub rubik_order: BigUint,
    /// (iii) the generators produce all of `Rub(n, Γ)`.
    pub surjective: bool,
    /// `Alt(n−2)` cannot be a quotient of `Γ` because `|Γ| < (n−2)!/2`.
    pub alt_quotient_excluded_by_order: bool,
    /// (i) ∧ (ii) ∧ hypothesis ⇒ (iii).
    pub consistent: bool,
}

pub fn rubik_surjectivity_check(
    gens: &[Permutation],
    act: &GSetAction,
    bounds: &WorkBounds,
) -> Result<RubikSurjectivityReport> {
    if !act.fixed_points().is_empty() {
        return Err(Error::pre("surjectivity check needs an action with free orbits only"));
    }
    let n = act.orbit_count();
    if n < 7 {
        return Err(Error::pre(format!("surjectivity check needs at least 7 orbits, got {n}")));
    }
    let mut orbit_gens = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if !rubik_membership(g, act)? {
            return Err(Error::pre(format!("generator {i} is not in the Rubik group")));
        }
        orbit_gens.push(rubik_decompose(g, act)?.orbit_perm);
    }

    let orbit_group = PermutationGroup::new(n, &orbit_gens, bounds)?;
    let orbit_action = classify_giant(&orbit_group)?;
    let alternating_on_orbits = orbit_action != Giant::Other;

    let m = act.points();
    let total = n * (n - 1) * act.group().order().pow(2);
    let start = (act.rep(0), act.rep(1));
    let mut seen = vec![false; m * m];
    seen[start.0 * m + start.1] = true;
    let mut stack = vec![start];
    let mut reached = 1usize;
    while let Some((x, y)) = stack.pop() {
        for g in gens {
            let (u, v) = (g.apply(x), g.apply(y));
            if !seen[u * m + v] {
                seen[u * m + v] = true;
                reached += 1;
                stack.push((u, v));
            }
        }
    }
    let pair_transitive = reached == total;

    let generated_order = PermutationGroup::new(m, gens, bounds)?.order();
    let expected = rubik_order(n, act.group())?;
    let surjective = generated_order == expected;
    let alt_small: BigUint = (3..=(n - 2) as u64).product();
    let excluded = BigUint::from(act.group().order()) < alt_small;
    Ok(RubikSurjectivityReport {
        orbits: n,
        orbit_action,
        alternating_on_orbits,
        pair_transitive,
        generated_order,
        rubik_order: expected,
        surjective,
        alt_quotient_excluded_by_order: excluded,
        consistent: !(alternating_on_orbits && pair_transitive && excluded) || surjective,
    })
}
