//! Representations of closed surface groups, their Schur invariants, the action
//! of mapping-class generators, and homomorphism counts of Heegaard-glued
//! 3-manifolds.
//!
//! A representation of `π₁(Σ_g) = ⟨a₁, b₁, …, a_g, b_g | ∏[aᵢ, bᵢ]⟩` is stored as
//! the tuple of images `(a₁, b₁, …, a_g, b_g)`.

mod heegaard;
mod mcg;
mod orbit;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, StemExtension};

pub use heegaard::{heegaard_count, HeegaardGluing};
pub use mcg::{standard_generators, Letter, MCGGenerator, MCGWord, TwistCurve};
pub use orbit::{orbit_report, ClassSummary, OrbitReport, OrbitRow};

/// A point of `R̂_g(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceTuple {
    elems: Vec<Elem>,
}

/// `∏ [aᵢ, bᵢ]` over consecutive pairs of `elems`.
pub fn relator_value(group: &FiniteGroup, elems: &[Elem]) -> Elem {
    elems
        .chunks_exact(2)
        .fold(group.identity(), |acc, p| group.mul(acc, group.commutator(p[0], p[1])))
}

impl SurfaceTuple {
    pub fn new(group: &FiniteGroup, elems: Vec<Elem>) -> Result<Self> {
        if elems.len() % 2 != 0 {
            return Err(Error::pre("a surface tuple has even length"));
        }
        if let Some(&x) = elems.iter().find(|&&x| x >= group.order()) {
            return Err(Error::pre(format!("element {x} is not in {}", group.name())));
        }
        let r = relator_value(group, &elems);
        if r != group.identity() {
            return Err(Error::pre(format!(
                "surface relation fails: the product of commutators is {}",
                group.element_label(r)
            )));
        }
        Ok(SurfaceTuple { elems })
    }

    pub(crate) fn new_unchecked(elems: Vec<Elem>) -> Self {
        SurfaceTuple { elems }
    }

    pub fn trivial(genus: usize) -> Self {
        SurfaceTuple {
            elems: vec![0; 2 * genus],
        }
    }

    pub fn genus(&self) -> usize {
        self.elems.len() / 2
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    /// Image of `aᵢ`, with `i` counted from 1.
    pub fn a(&self, i: usize) -> Elem {
        self.elems[2 * (i - 1)]
    }

    pub fn b(&self, i: usize) -> Elem {
        self.elems[2 * (i - 1) + 1]
    }

    /// The representation of the connected sum `Σ_{g₁} # Σ_{g₂}`.
    pub fn concat(&self, other: &SurfaceTuple) -> SurfaceTuple {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        SurfaceTuple { elems }
    }

    pub fn is_surjective(&self, group: &FiniteGroup) -> bool {
        group.generates(&self.elems)
    }

    /// Applies a group automorphism slot by slot.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> SurfaceTuple {
        SurfaceTuple {
            elems: self.elems.iter().map(|&x| f(x)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepFilter {
    All,
    Surjective,
    SchurZero,
}

impl std::str::FromStr for RepFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RepFilter::All),
            "surjective" => Ok(RepFilter::Surjective),
            "schur-zero" => Ok(RepFilter::SchurZero),
            other => Err(Error::pre(format!(
                "unknown filter {other} (expected all, surjective or schur-zero)"
            ))),
        }
    }
}

/// Lists `(a, b)` by the value of `[a, b]`.
fn commutator_fibers(group: &FiniteGroup) -> Vec<Vec<(Elem, Elem)>> {
    let mut fibers = vec![Vec::new(); group.order()];
    for a in group.elements() {
        for b in group.elements() {
            fibers[group.commutator(a, b)].push((a, b));
        }
    }
    fibers
}

/// Calls `visit` on every tuple of `R̂_g(G)` passing `filter`. The first `g − 1`
/// pairs run over `G^{2g−2}` and the last pair is read off a table of commutator
/// fibers. Parallel over the first slot; `visit` sees tuples in no fixed order.
pub fn for_each_rep<F>(
    genus: usize,
    group: &FiniteGroup,
    filter: RepFilter,
    ext: Option<&StemExtension>,
    bounds: &WorkBounds,
    visit: F,
) -> Result<()>
where
    F: Fn(&[Elem]) + Sync,
{
    if genus == 0 {
        return Err(Error::pre("genus must be at least 1"));
    }
    let n = group.order() as u64;
    let work = n.checked_pow(2 * genus as u32 - 1);
    if work.is_none_or(|w| w > bounds.max_enumeration) {
        return Err(Error::bound(
            "surface representation enumeration",
            format!("{}^{}", n, 2 * genus - 1),
            bounds.max_enumeration,
        ));
    }
    if filter == RepFilter::SchurZero {
        check_schur_inputs(group, ext)?;
    }
    let fibers = commutator_fibers(group);
    let accept = |t: &[Elem]| match filter {
        RepFilter::All => true,
        RepFilter::Surjective => group.generates(t),
        RepFilter::SchurZero => {
            group.generates(t) && schur_value(ext.unwrap(), t).is_some_and(|z| z == 0)
        }
    };
    let free = 2 * (genus - 1);
    let run = |prefix: &mut Vec<Elem>| {
        // prefix holds the free slots; the last pair closes the relation
        let p = relator_value(group, &prefix[..free]);
        let target = group.inv(p);
        for &(a, b) in &fibers[target] {
            prefix.truncate(free);
            prefix.push(a);
            prefix.push(b);
            if accept(prefix) {
                visit(prefix);
            }
        }
        prefix.truncate(free);
    };
    if free == 0 {
        run(&mut Vec::new());
        return Ok(());
    }
    (0..group.order()).into_par_iter().for_each(|first| {
        let mut slots = vec![0; free];
        slots[0] = first;
        loop {
            let mut t = slots.clone();
            run(&mut t);
            let mut i = free - 1;
            loop {
                if i == 0 {
                    return;
                }
                slots[i] += 1;
                if slots[i] < group.order() {
                    break;
                }
                slots[i] = 0;
                i -= 1;
            }
        }
    });
    Ok(())
}

/// All tuples passing `filter`, sorted.
pub fn enumerate_reps(
    genus: usize,
    group: &FiniteGroup,
    filter: RepFilter,
    ext: Option<&StemExtension>,
    bounds: &WorkBounds,
) -> Result<Vec<SurfaceTuple>> {
    let out = std::sync::Mutex::new(Vec::new());
    let held = std::sync::atomic::AtomicU64::new(0);
    for_each_rep(genus, group, filter, ext, bounds, |t| {
        if held.fetch_add(1, std::sync::atomic::Ordering::Relaxed) < bounds.max_orbit_points {
            out.lock().unwrap().push(SurfaceTuple::new_unchecked(t.to_vec()));
        }
    })?;
    let total = held.into_inner();
    if total > bounds.max_orbit_points {
        return Err(Error::bound(
            "stored surface representations",
            total,
            bounds.max_orbit_points,
        ));
    }
    let mut v = out.into_inner().unwrap();
    v.sort_unstable();
    Ok(v)
}

/// Size of the filtered representation set without storing it.
pub fn count_reps(
    genus: usize,
    group: &FiniteGroup,
    filter: RepFilter,
    ext: Option<&StemExtension>,
    bounds: &WorkBounds,
) -> Result<BigUint> {
    let n = std::sync::atomic::AtomicU64::new(0);
    for_each_rep(genus, group, filter, ext, bounds, |_| {
        n.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    })?;
    Ok(n.into_inner().into())
}

fn check_schur_inputs(group: &FiniteGroup, ext: Option<&StemExtension>) -> Result<()> {
    let ext = ext.ok_or_else(|| Error::pre("Schur invariants need a stem extension"))?;
    if ext.base_order() != group.order() {
        return Err(Error::pre(format!(
            "the stem extension covers a group of order {}, not {}",
            ext.base_order(),
            group.order()
        )));
    }
    if !group.is_perfect() {
        return Err(Error::pre(format!("{} is not perfect", group.name())));
    }
    Ok(())
}

/// Product of commutators of the smallest lifts; `None` if it is not central,
/// which happens exactly when the tuple violates the relation.
fn schur_value(ext: &StemExtension, elems: &[Elem]) -> Option<Elem> {
    let lifted: Vec<Elem> = elems.iter().map(|&x| ext.lift(x)).collect();
    let z = relator_value(ext.cover(), &lifted);
    ext.center().binary_search(&z).ok().map(|_| z)
}

/// `sch(f)`, as the id of a central element of the cover.
pub fn schur_invariant(f: &SurfaceTuple, group: &FiniteGroup, ext: &StemExtension) -> Result<Elem> {
    check_schur_inputs(group, Some(ext))?;
    let lifted: Vec<Elem> = f.elems.iter().map(|&x| ext.lift(x)).collect();
    schur_of_lifts(ext, &lifted)
}

/// `∏ [ãᵢ, b̃ᵢ]` for caller-chosen lifts.
pub fn schur_of_lifts(ext: &StemExtension, lifted: &[Elem]) -> Result<Elem> {
    if lifted.len() % 2 != 0 {
        return Err(Error::pre("a surface tuple has even length"));
    }
    let z = relator_value(ext.cover(), lifted);
    if ext.center().binary_search(&z).is_err() {
        return Err(Error::pre(
            "surface relation fails: the lifted product of commutators is not central",
        ));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b() -> WorkBounds {
        WorkBounds::default()
    }

    pub(crate) fn a5_ext() -> (FiniteGroup, StemExtension) {
        let a5 = FiniteGroup::alternating(5);
        let sl = FiniteGroup::special_linear_2(5).unwrap();
        let center = sl.center();
        let ext = StemExtension::from_central_quotient(sl, &a5, center, &b()).unwrap();
        (a5, ext)
    }

    #[test]
    fn torus_reps_are_commuting_pairs() {
        let s3 = FiniteGroup::symmetric(3);
        let reps = enumerate_reps(1, &s3, RepFilter::All, None, &b()).unwrap();
        assert_eq!(reps.len(), 18);
        assert!(reps.contains(&SurfaceTuple::trivial(1)));
        assert!(reps.iter().all(|t| s3.mul(t.a(1), t.b(1)) == s3.mul(t.b(1), t.a(1))));
    }

    #[test]
    fn genus_two_matches_fiber_convolution() {
        let a5 = FiniteGroup::alternating(5);
        let fibers = commutator_fibers(&a5);
        let want: usize = a5.elements().map(|c| fibers[c].len() * fibers[a5.inv(c)].len()).sum();
        let got = count_reps(2, &a5, RepFilter::All, None, &b()).unwrap();
        assert_eq!(got, BigUint::from(want));
    }

    #[test]
    fn schur_zero_count_small_genus() {
        let (a5, ext) = a5_ext();
        // genus 1: no pair of commuting elements generates A5
        let n = count_reps(1, &a5, RepFilter::SchurZero, Some(&ext), &b()).unwrap();
        assert_eq!(n, BigUint::from(0u32));
    }

    #[test]
    fn schur_basics() {
        let (a5, ext) = a5_ext();
        let t = SurfaceTuple::trivial(2);
        assert_eq!(schur_invariant(&t, &a5, &ext).unwrap(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut e = vec![0; 6];
            for i in [1, 3, 5] {
                e[i] = rng.gen_range(0..60);
            }
            let f = SurfaceTuple::new(&a5, e).unwrap();
            assert_eq!(schur_invariant(&f, &a5, &ext).unwrap(), 0);
        }
        let s3 = FiniteGroup::symmetric(3);
        assert!(check_schur_inputs(&s3, Some(&ext)).is_err());
    }

    #[test]
    fn nonzero_schur_class_exists_at_genus_two() {
        let (a5, ext) = a5_ext();
        let reps = enumerate_reps(2, &a5, RepFilter::Surjective, None, &b()).unwrap();
        let nonzero = reps
            .iter()
            .filter(|f| schur_invariant(f, &a5, &ext).unwrap() != 0)
            .count();
        let zero = count_reps(2, &a5, RepFilter::SchurZero, Some(&ext), &b()).unwrap();
        assert!(nonzero > 0);
        assert_eq!(BigUint::from(reps.len() - nonzero), zero);
    }

    #[test]
    fn relation_checked() {
        let s3 = FiniteGroup::symmetric(3);
        let (x, y) = (1, 2);
        assert!(s3.mul(x, y) != s3.mul(y, x));
        assert!(SurfaceTuple::new(&s3, vec![x, y]).is_err());
        assert!(SurfaceTuple::new(&s3, vec![x]).is_err());
    }

    #[test]
    fn bound_refusal() {
        let a5 = FiniteGroup::alternating(5);
        let tight = WorkBounds {
            max_enumeration: 1000,
            ..b()
        };
        assert!(matches!(
            count_reps(2, &a5, RepFilter::All, None, &tight),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
