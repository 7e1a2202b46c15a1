//! Boolean and reversible circuits and the count-preserving chain
//! CSAT → RSAT₁ → RSAT₂ → RSAT₃ → RSAT₄, plus zombie circuits over group-set
//! alphabets whose counts satisfy `#ZSAT = |Γ|·#RSAT + 1`.

mod boolean;
mod reversible;
mod rsat;
mod zombie;

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

pub use boolean::{count_csat, BoolGate, BoolOp, BooleanCircuit};
pub use reversible::{Gate, ReversibleCircuit};
pub use rsat::{
    count_rsat, dilate_to_reversible, pack_alphabet, packed_alphabet, packing_degree, pair_bits,
    paired_alphabet, regroup_embed, uncompute_wrap, Rsat1Instance, Rsat2Instance, RsatAlphabet,
    RsatInstance,
};
pub use zombie::{
    compile_zsat, count_zsat, extend_to_rubik, orbit_instance_from_paired, ZAlphabet, ZsatInstance,
};

use crate::bounds::WorkBounds;
use crate::error::Result;

/// Every stage of one run of the reduction chain.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub csat: BooleanCircuit,
    pub rsat1: Rsat1Instance,
    pub rsat2: Rsat2Instance,
    /// RSAT₂ regrouped over `Z/2 × Z/2` with `I = F = {0, 1}`.
    pub paired: RsatInstance,
    pub packing_degree: usize,
    pub rsat3: RsatInstance,
    pub rsat4: RsatInstance,
    pub zsat: Option<ZsatInstance>,
}

/// Runs the chain into `target`. With a zombie alphabet, the paired instance is
/// also relabelled onto the orbit alphabet and compiled to a zombie circuit.
pub fn run_pipeline(
    c: &BooleanCircuit,
    target: &RsatAlphabet,
    zombie: Option<&Arc<ZAlphabet>>,
) -> Result<PipelineRun> {
    let rsat1 = dilate_to_reversible(c);
    let rsat2 = uncompute_wrap(&rsat1)?;
    let paired = pair_bits(&rsat2)?;
    let k = packing_degree(target)?;
    let mid = packed_alphabet(target, k)?;
    let rsat3 = regroup_embed(&paired, &mid)?;
    let rsat4 = pack_alphabet(&rsat3, target)?;
    let zsat = match zombie {
        Some(z) => Some(compile_zsat(&orbit_instance_from_paired(&paired, z)?, z)?),
        None => None,
    };
    Ok(PipelineRun {
        csat: c.clone(),
        rsat1,
        rsat2,
        paired,
        packing_degree: k,
        rsat3,
        rsat4,
        zsat,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StageCount {
    pub stage: &'static str,
    #[serde(serialize_with = "crate::counting::ser_big")]
    pub count: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParsimonyReport {
    pub stages: Vec<StageCount>,
    pub group_order: Option<usize>,
    #[serde(serialize_with = "ser_opt_big")]
    pub zsat: Option<BigUint>,
    #[serde(serialize_with = "ser_opt_big")]
    pub zsat_expected: Option<BigUint>,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

/// Brute-force counts at every stage. The chain must give one count throughout
/// and the zombie circuit must count `|Γ|·#RSAT₄ + 1`; mismatches are listed in
/// `failures`.
pub fn verify_parsimony(run: &PipelineRun, bounds: &WorkBounds) -> Result<ParsimonyReport> {
    let stages = vec![
        StageCount { stage: "csat", count: count_csat(&run.csat, bounds)? },
        StageCount { stage: "rsat1", count: run.rsat1.count(bounds)? },
        StageCount { stage: "rsat2", count: run.rsat2.count(bounds)? },
        StageCount { stage: "rsat2-paired", count: count_rsat(&run.paired, bounds)? },
        StageCount { stage: "rsat3", count: count_rsat(&run.rsat3, bounds)? },
        StageCount { stage: "rsat4", count: count_rsat(&run.rsat4, bounds)? },
    ];
    let mut failures = Vec::new();
    let base = stages[0].count.clone();
    for s in &stages[1..] {
        if s.count != base {
            failures.push(format!("{} counts {} but csat counts {}", s.stage, s.count, base));
        }
    }
    let (group_order, zsat, zsat_expected) = match &run.zsat {
        Some(z) => {
            let order = z.alphabet.group().order();
            let got = count_zsat(z, bounds)?;
            let want = &stages[5].count * BigUint::from(order) + 1u32;
            if got != want {
                failures.push(format!("zsat counts {got}, expected {want}"));
            }
            (Some(order), Some(got), Some(want))
        }
        None => (None, None, None),
    };
    Ok(ParsimonyReport {
        pass: failures.is_empty(),
        stages,
        group_order,
        zsat,
        zsat_expected,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn and_through_everything() {
        let c = BooleanCircuit::parse("in 2\nAND 0 1 -> y").unwrap();
        let target = RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap();
        let z = Arc::new(ZAlphabet::minimal(Arc::new(FiniteGroup::cyclic(2))).unwrap());
        let run = run_pipeline(&c, &target, Some(&z)).unwrap();
        let r = verify_parsimony(&run, &WorkBounds::default()).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        let counts: Vec<u64> = r.stages.iter().map(|s| s.count.clone().try_into().unwrap()).collect();
        assert_eq!(counts, vec![1; 6]);
        assert_eq!(r.zsat, Some(BigUint::from(3u32)));
    }

    #[test]
    fn constant_false_leaves_only_the_zombie() {
        let c = BooleanCircuit::parse("in 1\nNOT 0 -> n\nAND 0 n -> y").unwrap();
        let target = RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap();
        let z = Arc::new(ZAlphabet::minimal(Arc::new(FiniteGroup::cyclic(2))).unwrap());
        let run = run_pipeline(&c, &target, Some(&z)).unwrap();
        let r = verify_parsimony(&run, &WorkBounds::default()).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert!(r.stages.iter().all(|s| s.count == BigUint::from(0u32)));
        assert_eq!(r.zsat, Some(BigUint::from(1u32)));
    }
}
