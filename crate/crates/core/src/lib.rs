//! Finite quasi-discrete closure models and the equivalences that live on them.
//!
//! A model is a finite set of points, a binary relation over them, and a
//! valuation of atomic propositions. The relation induces a closure operator
//! in two directions (follow edges forward, or backward), and everything else
//! is built on top of that: spatial modal logics with reachability operators,
//! a family of bisimilarities ordered by how much of the space structure they
//! observe, model minimization by quotienting, and ingestion of digital
//! images as adjacency models where points are pixels.
//!
//! The main entry points:
//!
//! * [`QdModel`] — the model type, with closure/interior/reachability operators.
//! * [`logic`] — formula AST, parser, and set-based evaluator.
//! * [`equiv`] — deciders for AP-, CM-, CMC/C-, Path- and CoPa-bisimilarity,
//!   trace equivalence, homeomorphism search, and distinguishing formulas.
//! * [`minimize`] — bisimulation quotients with a self-verification harness.
//! * [`io`] — model/partition files, Netpbm images, palettes, DOT export.
//! * [`oracle`] — slow reference implementations used to cross-check the
//!   production algorithms (subset enumeration, walk enumeration, pair-gfps).

pub mod equiv;
pub mod error;
pub mod gen;
pub mod io;
pub mod logic;
pub mod minimize;
pub mod model;
pub mod oracle;
pub mod partition;
pub mod set;

pub use equiv::{
    ap_equivalence, c_bisimilarity, cm_bisimilarity, copa_bisimilarity, distinguish,
    find_homeomorphism, is_copa_bisimulation, path_bisimilarity, trace_equivalent,
    DistinguishingWitness, EquivalenceKind,
};
pub use error::Error;
pub use logic::{check, evaluate, parse_formula, Formula};
pub use minimize::{minimize, verify_quotient, MinimizationResult};
pub use model::{Dir, PointId, QdModel, Walk};
pub use partition::{PairRelation, Partition};
pub use set::PointSet;

/// Satisfying set of a formula: a set of points of the model it was
/// evaluated on. The width of the set is the tag tying it to that model.
pub type SatSet = PointSet;
