use num_bigint::BigUint;
use num_traits::Zero;

use crate::bounds::WorkBounds;
use crate::complex::{Presentation, SimplexOrdering, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{automorphisms, find_isomorphism, subgroup_lattice, FiniteGroup, GroupFingerprint};

use super::{count_homs, dp_count_homs};

/// Where homomorphism counts come from.
#[derive(Clone, Copy, Debug)]
pub enum HomSource<'a> {
    Presentation(&'a Presentation),
    Complex(&'a SimplicialComplex, &'a SimplexOrdering),
}

impl HomSource<'_> {
    fn count(&self, g: &FiniteGroup, bounds: &WorkBounds) -> Result<BigUint> {
        match self {
            HomSource::Presentation(p) => count_homs(p, g, bounds),
            HomSource::Complex(cx, ord) => dp_count_homs(cx, ord, g, bounds),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InversionRow {
    /// Index into the subgroup lattice.
    pub subgroup: usize,
    pub order: usize,
    /// `#H(·, J)`.
    pub homs: BigUint,
    /// Homomorphisms onto `J`.
    pub surjections: BigUint,
    pub aut_order: usize,
    /// `#Q(·, J)`.
    pub quotients: BigUint,
}

#[derive(Clone, Debug)]
pub struct InversionTable {
    pub rows: Vec<InversionRow>,
    pub total_homs: BigUint,
    /// `Σ_J |Aut(J)|·#Q(·,J) = #H(·,G)`.
    pub consistent: bool,
    /// Distinct isomorphism types whose counts were computed directly.
    pub computed_types: usize,
}

impl InversionTable {
    /// `#Q(·, J)` is zero for every `J` other than the trivial group and `G` itself.
    pub fn only_trivial_and_full(&self) -> bool {
        let last = self.rows.len() - 1;
        self.rows[1..last].iter().all(|r| r.quotients.is_zero())
    }
}

/// `S(J) = #H(·,J) − Σ_{K<J} S(K)` over all subgroups, and `#Q(·,J) = S(J)/|Aut(J)|`.
/// Counts are shared between isomorphic subgroups.
pub fn quotient_counts_via_inversion(
    source: HomSource<'_>,
    g: &FiniteGroup,
    bounds: &WorkBounds,
) -> Result<InversionTable> {
    let lattice = subgroup_lattice(g, bounds)?;
    let mut cache: Vec<(GroupFingerprint, FiniteGroup, BigUint, usize)> = Vec::new();
    let mut rows: Vec<InversionRow> = Vec::with_capacity(lattice.len());
    for (j, sub) in lattice.subgroups().iter().enumerate() {
        let (jg, _) = g.subgroup_as_group(sub);
        let fp = jg.fingerprint();
        let mut hit = None;
        for (cfp, cg, homs, aut) in &cache {
            if *cfp == fp && find_isomorphism(&jg, cg, bounds)?.is_some() {
                hit = Some((homs.clone(), *aut));
                break;
            }
        }
        let (homs, aut_order) = match hit {
            Some(h) => h,
            None => {
                let homs = source.count(&jg, bounds)?;
                let aut = automorphisms(&jg, bounds)?.len();
                cache.push((fp, jg, homs.clone(), aut));
                (homs, aut)
            }
        };
        let below: BigUint = lattice.below(j).map(|k| rows[k].surjections.clone()).sum();
        if below > homs {
            return Err(Error::Verification(format!(
                "subgroup {j}: sub-lattice surjections {below} exceed homomorphisms {homs}"
            )));
        }
        let surjections = &homs - below;
        if !(&surjections % aut_order).is_zero() {
            return Err(Error::Verification(format!(
                "subgroup {j}: {surjections} surjections not divisible by |Aut| = {aut_order}"
            )));
        }
        rows.push(InversionRow {
            subgroup: j,
            order: sub.order(),
            quotients: &surjections / aut_order,
            homs,
            surjections,
            aut_order,
        });
    }
    let total_homs = rows.last().unwrap().homs.clone();
    let sum: BigUint = rows.iter().map(|r| &r.quotients * r.aut_order).sum();
    Ok(InversionTable {
        consistent: sum == total_homs,
        total_homs,
        rows,
        computed_types: cache.len(),
    })
}
