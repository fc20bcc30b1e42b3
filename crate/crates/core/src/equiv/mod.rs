//! Deciders for the spatial equivalences.
//!
//! Each bisimilarity is computed by signature-based partition refinement
//! starting from label equality; [`crate::oracle`] holds independent
//! pair-gfp and subset-enumeration implementations that the test suites
//! check these against. The family, from finest to coarsest:
//! CMC/C refines CM and CoPa, CoPa refines Path, Path refines AP; CMC also
//! implies trace equivalence, and homeomorphic points are CM-bisimilar.

mod cm;
mod cmc;
mod copa;
mod distinguish;
mod homeo;
mod path;
mod refine;
mod trace;

pub use cm::cm_bisimilarity;
pub use cmc::{c_bisimilarity, c_bisimilarity_history};
pub use copa::{copa_bisimilarity, is_copa_bisimulation};
pub use distinguish::{distinguish, DistinguishingWitness};
pub use homeo::{find_homeomorphism, find_homeomorphism_limited, is_homeomorphism};
pub use path::path_bisimilarity;
pub use trace::{trace_distinguish, trace_equivalent, trace_equivalent_limited, TraceWitness};

use crate::model::QdModel;
use crate::partition::Partition;

/// Re-export of the exhaustive INL-bisimilarity decider; exponential in the
/// carrier size and only suitable for tiny models.
pub use crate::oracle::inl_subset_enum_gfp as inl_bisimilarity_oracle;

/// The equivalences that support minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivalenceKind {
    Ap,
    Cm,
    Cmc,
    Path,
    CoPa,
}

impl EquivalenceKind {
    pub const ALL: [EquivalenceKind; 5] = [
        EquivalenceKind::Ap,
        EquivalenceKind::Cm,
        EquivalenceKind::Cmc,
        EquivalenceKind::Path,
        EquivalenceKind::CoPa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquivalenceKind::Ap => "ap",
            EquivalenceKind::Cm => "cm",
            EquivalenceKind::Cmc => "cmc",
            EquivalenceKind::Path => "path",
            EquivalenceKind::CoPa => "copa",
        }
    }
}

impl std::str::FromStr for EquivalenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ap" => Ok(EquivalenceKind::Ap),
            "cm" => Ok(EquivalenceKind::Cm),
            "cmc" | "c" => Ok(EquivalenceKind::Cmc),
            "path" => Ok(EquivalenceKind::Path),
            "copa" => Ok(EquivalenceKind::CoPa),
            other => Err(format!(
                "unknown equivalence kind {other:?} (expected ap, cm, cmc, path or copa)"
            )),
        }
    }
}

impl std::fmt::Display for EquivalenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Partition of the model's points by two points satisfying exactly the
/// same atomic propositions.
pub fn ap_equivalence(model: &QdModel) -> Partition {
    Partition::from_class_of(&(0..model.len()).map(|x| model.label_id(x)).collect::<Vec<_>>())
}

/// The partition for any supported equivalence kind.
pub fn partition_for(model: &QdModel, kind: EquivalenceKind) -> Partition {
    match kind {
        EquivalenceKind::Ap => ap_equivalence(model),
        EquivalenceKind::Cm => cm_bisimilarity(model),
        EquivalenceKind::Cmc => c_bisimilarity(model),
        EquivalenceKind::Path => path_bisimilarity(model),
        EquivalenceKind::CoPa => copa_bisimilarity(model),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::QdModel;

    #[test]
    fn ap_classes_are_label_fibers() {
        let m = QdModel::new(
            &[
                ("a", vec!["r"]),
                ("b", vec!["r", "g"]),
                ("c", vec!["r"]),
                ("d", vec![]),
            ],
            &[],
        )
        .unwrap();
        let p = ap_equivalence(&m);
        assert_eq!(p.class_count(), 3);
        assert!(p.same_class(0, 2));
        assert!(!p.same_class(0, 1));
        assert!(!p.same_class(0, 3));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("copa".parse::<EquivalenceKind>(), Ok(EquivalenceKind::CoPa));
        assert_eq!("C".parse::<EquivalenceKind>(), Ok(EquivalenceKind::Cmc));
        assert!("xx".parse::<EquivalenceKind>().is_err());
    }
}
