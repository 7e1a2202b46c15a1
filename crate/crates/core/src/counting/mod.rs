//! Counting homomorphisms into a finite group: enumeration over a presentation,
//! a boundary sweep over an ordered complex, and Möbius inversion over the
//! subgroup lattice.

mod dp;
mod enumerate;
mod inversion;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::WorkBounds;
use crate::complex::Presentation;
use crate::error::{Error, Result};
use crate::group::{automorphisms, FiniteGroup};

pub use dp::{dp_count_homs, dp_count_homs_with, CocycleDpState, DpReport, Gauge};
pub use enumerate::{enumerated_generators, for_each_hom};
pub use inversion::{quotient_counts_via_inversion, HomSource, InversionRow, InversionTable};

use enumerate::{tally_homs, Tally};

/// `#H`, the surjections, and `#Q = surjections / |Aut(G)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCount {
    #[serde(serialize_with = "ser_big")]
    pub homs: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub surjections: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub quotients: BigUint,
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Exact number of homomorphisms from the presented group to `g`.
pub fn count_homs(p: &Presentation, g: &FiniteGroup, bounds: &WorkBounds) -> Result<BigUint> {
    let t = tally_homs(
        p,
        g,
        bounds,
        &Tally {
            surjections: false,
            canonical: None,
        },
    )?;
    Ok(t.homs.into())
}

/// Homomorphisms whose images generate `g`.
pub fn count_surjections(p: &Presentation, g: &FiniteGroup, bounds: &WorkBounds) -> Result<BigUint> {
    let t = tally_homs(
        p,
        g,
        bounds,
        &Tally {
            surjections: true,
            canonical: None,
        },
    )?;
    Ok(t.surjections.into())
}

/// Full tally. `#Q` is computed twice, as surjections divided by `|Aut(G)|` and as
/// the number of surjections that are lexicographically least among their
/// `Aut(G)`-images; the two must agree.
pub fn count_quotients(p: &Presentation, g: &FiniteGroup, bounds: &WorkBounds) -> Result<HomCount> {
    let auts = automorphisms(g, bounds)?;
    let t = tally_homs(
        p,
        g,
        bounds,
        &Tally {
            surjections: true,
            canonical: Some(&auts),
        },
    )?;
    let a = auts.len() as u64;
    if t.surjections % a != 0 {
        return Err(Error::Verification(format!(
            "{} surjections are not divisible by |Aut(G)| = {a}",
            t.surjections
        )));
    }
    if t.surjections / a != t.canonical {
        return Err(Error::Verification(format!(
            "surjections / |Aut(G)| = {} but {} canonical representatives were found",
            t.surjections / a,
            t.canonical
        )));
    }
    Ok(HomCount {
        homs: t.homs.into(),
        surjections: t.surjections.into(),
        quotients: t.canonical.into(),
    })
}

/// `⟨s, t | s³t⁻⁵, s³(st)⁻²⟩`, the fundamental group of the Poincaré homology sphere.
pub fn poincare_presentation() -> Presentation {
    Presentation::parse("gens 2\nx1x1x1X2X2X2X2X2\nx1x1x1X2X1X2X1\n").unwrap()
}
