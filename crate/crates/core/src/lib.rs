//! Collaborative belief aggregation among autonomous agents ranked by the
//! quality of their attributes.
//!
//! Agents are ordered by componentwise dominance of their attribute vectors
//! ([`lattice`]). Along a total order consistent with that dominance, each
//! agent combines its own boolean belief with those of a group of interest
//! ([`rules`], [`propagation`]). The propagated belief of the group is a
//! boolean function of the raw beliefs whose ordered decision diagram
//! collapses to linear size ([`obdd`]). [`reliability`] scores the outcome
//! against ground truth, [`benchgen`] generates seeded synthetic scenarios and
//! [`harness`] sweeps rules over them.

pub mod benchgen;
pub mod error;
pub mod fixture;
pub mod harness;
pub mod lattice;
pub mod model;
pub mod obdd;
pub mod propagation;
pub mod reliability;
pub mod rules;

pub use error::{Error, Result};
pub use lattice::{
    build_partial_order, compare, linear_extensions, DominanceRelation, PartialOrder, TotalOrder,
};
pub use model::{
    AttributeVector, AutonomousSystem, BeliefMatrix, BeliefRole, GroundTruth, Predicate, Scenario,
};
pub use propagation::{propagate_all, propagate_chain, PropagationTrace};
pub use reliability::{classify, collaborative_reliability, tally, ErrorStatus, ErrorTally};
pub use rules::RuleSpec;
