use crate::error::{Error, Result};

use crate::bounds::WorkBounds;

use super::{extend_homomorphism, find_isomorphism, Elem, FiniteGroup, Subgroup};

/// A central extension `1 → Z → cover → base → 1` with `Z` inside the commutator
/// subgroup of the cover. For perfect `base` with `Z ≅ H₂(base)` this computes
/// Schur invariants of surface representations.
#[derive(Clone, Debug)]
pub struct StemExtension {
    cover: FiniteGroup,
    base_order: usize,
    projection: Vec<Elem>,
    center: Vec<Elem>,
    lifts: Vec<Vec<Elem>>,
}

impl StemExtension {
    pub fn new(
        cover: FiniteGroup,
        base: &FiniteGroup,
        projection: Vec<Elem>,
        center: Vec<Elem>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::Verification(format!("stem extension: {msg}")));
        if projection.len() != cover.order() {
            return bad(format!(
                "projection lists {} images for a cover of order {}",
                projection.len(),
                cover.order()
            ));
        }
        if projection.iter().any(|&p| p >= base.order()) {
            return bad("projection image out of range".into());
        }
        for a in cover.elements() {
            for b in cover.elements() {
                if projection[cover.mul(a, b)] != base.mul(projection[a], projection[b]) {
                    return bad(format!("projection is not a homomorphism at ({a}, {b})"));
                }
            }
        }
        let mut lifts = vec![Vec::new(); base.order()];
        for x in cover.elements() {
            lifts[projection[x]].push(x);
        }
        if lifts.iter().any(Vec::is_empty) {
            return bad("projection is not surjective".into());
        }
        let mut center = center;
        center.sort_unstable();
        center.dedup();
        let kernel: Vec<Elem> = lifts[0].clone();
        if kernel != center {
            return bad(format!(
                "kernel has {} elements but {} central ids were given",
                kernel.len(),
                center.len()
            ));
        }
        for &z in &center {
            if cover.elements().any(|g| cover.mul(z, g) != cover.mul(g, z)) {
                return bad(format!("element {z} is not central"));
            }
        }
        let derived = cover.commutator_subgroup();
        if let Some(&z) = center.iter().find(|&&z| !derived.contains(z)) {
            return bad(format!("central element {z} is not a product of commutators"));
        }
        Ok(StemExtension {
            cover,
            base_order: base.order(),
            projection,
            center,
            lifts,
        })
    }

    /// Builds the projection from images of generators of the cover; the kernel
    /// becomes the central subgroup.
    pub fn from_generator_images(
        cover: FiniteGroup,
        base: &FiniteGroup,
        gens: &[Elem],
        images: &[Elem],
    ) -> Result<Self> {
        let map = extend_homomorphism(&cover, base, gens, images)
            .ok_or_else(|| Error::Verification("generator images do not define a homomorphism".into()))?;
        if map.contains(&usize::MAX) {
            return Err(Error::pre("generators do not generate the cover"));
        }
        let center = cover.elements().filter(|&x| map[x] == 0).collect();
        Self::new(cover, base, map, center)
    }

    /// Uses the quotient of `cover` by the central subgroup `center`, identified
    /// with `base` through any isomorphism.
    pub fn from_central_quotient(
        cover: FiniteGroup,
        base: &FiniteGroup,
        center: Vec<Elem>,
        bounds: &WorkBounds,
    ) -> Result<Self> {
        let mut members = center.clone();
        members.sort_unstable();
        members.dedup();
        let (quotient, coset) = cover.quotient(&Subgroup::from_sorted(members))?;
        let iso = find_isomorphism(&quotient, base, bounds)?
            .ok_or_else(|| Error::pre(format!("{} modulo the center is not {}", cover.name(), base.name())))?;
        let projection = coset.iter().map(|&c| iso[c]).collect();
        Self::new(cover, base, projection, center)
    }

    pub fn cover(&self) -> &FiniteGroup {
        &self.cover
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn projection(&self) -> &[Elem] {
        &self.projection
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x]
    }

    /// Sorted ids of the central kernel.
    pub fn center(&self) -> &[Elem] {
        &self.center
    }

    /// The smallest-id preimage of `g`.
    pub fn lift(&self, g: Elem) -> Elem {
        self.lifts[g][0]
    }

    /// All `|Z|` preimages of `g`.
    pub fn lifts(&self, g: Elem) -> &[Elem] {
        &self.lifts[g]
    }
}
