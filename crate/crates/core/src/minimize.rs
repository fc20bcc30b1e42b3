//! Bisimulation-quotient construction per equivalence kind, with a
//! self-verification harness.
//!
//! Quotient adequacy is checked empirically rather than assumed: the
//! quotient is glued to the original model by disjoint union, the same
//! equivalence is recomputed there, and every point must land in the same
//! class as its projection. A sampled formula-agreement check over the
//! kind's characterizing logic backs that up.

use crate::equiv::{partition_for, EquivalenceKind};
use crate::error::Result;
use crate::gen::{random_formula, LogicFragment};
use crate::logic::evaluate;
use crate::model::{PointId, QdModel};
use crate::partition::Partition;
use rand::SeedableRng;

#[derive(Debug, Clone)]
pub struct MinimizationResult {
    pub quotient: QdModel,
    /// Projection from each original point to its quotient point.
    pub projection: Vec<PointId>,
    pub kind: EquivalenceKind,
    pub class_count: usize,
}

/// Compute the partition for `kind` and quotient the model by it.
pub fn minimize(model: &QdModel, kind: EquivalenceKind) -> Result<MinimizationResult> {
    let partition = partition_for(model, kind);
    minimize_with(model, kind, &partition)
}

pub fn minimize_with(
    model: &QdModel,
    kind: EquivalenceKind,
    partition: &Partition,
) -> Result<MinimizationResult> {
    let (quotient, projection) = model.quotient(partition)?;
    Ok(MinimizationResult {
        class_count: quotient.len(),
        quotient,
        projection,
        kind,
    })
}

/// Outcome of [`verify_quotient`]; failures carry human-readable
/// counterexample reports.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The logic fragment characterizing each equivalence kind.
pub fn characterizing_fragment(kind: EquivalenceKind) -> LogicFragment {
    match kind {
        EquivalenceKind::Ap => LogicFragment::Boolean,
        EquivalenceKind::Cm => LogicFragment::Near,
        EquivalenceKind::Cmc => LogicFragment::NearConverse,
        EquivalenceKind::Path => LogicFragment::Reach,
        EquivalenceKind::CoPa => LogicFragment::ZoneReach,
    }
}

/// Check a minimization result: recompute the equivalence on the disjoint
/// union of model and quotient and demand that every point is related to
/// its projection; then sample `formula_samples` random formulas of the
/// kind's characterizing logic and demand point/projection agreement on
/// each.
pub fn verify_quotient(
    model: &QdModel,
    result: &MinimizationResult,
    formula_samples: usize,
    seed: u64,
) -> VerifyReport {
    let mut failures = Vec::new();
    let (union, inj_model, inj_quot) = model.disjoint_union(&result.quotient);

    if result.projection.len() != model.len() {
        failures.push("projection does not cover the model".to_string());
        return VerifyReport { failures };
    }

    let partition = partition_for(&union, result.kind);
    for x in 0..model.len() {
        let image = result.projection[x];
        if image >= result.quotient.len() {
            failures.push(format!(
                "projection of {} points outside the quotient",
                model.name(x)
            ));
            continue;
        }
        if !partition.same_class(inj_model[x], inj_quot[image]) {
            failures.push(format!(
                "{} is not {}-equivalent to its projection {}",
                model.name(x),
                result.kind,
                result.quotient.name(image)
            ));
        }
    }

    let atoms: Vec<String> = union.prop_names().map(|s| s.to_string()).collect();
    let fragment = characterizing_fragment(result.kind);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..formula_samples {
        let f = random_formula(&mut rng, fragment, &atoms, 3);
        let sat = evaluate(&union, &f);
        for x in 0..model.len() {
            let image = result.projection[x];
            if image >= result.quotient.len() {
                continue;
            }
            if sat.contains(inj_model[x]) != sat.contains(inj_quot[image]) {
                failures.push(format!(
                    "formula #{i} {f} distinguishes {} from its projection",
                    model.name(x)
                ));
                break;
            }
        }
        if failures.len() > 8 {
            break; // enough counterexamples to report
        }
    }
    VerifyReport { failures }
}
