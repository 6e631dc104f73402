//! Brute-force machinery at desk scale: enumeration up to isomorphism,
//! bounded move-graph search, invariance fuzzing and census tables.

mod census;
mod enumerate;
mod fuzz;
mod search;

pub use census::{invariant_digest, tabulate, Census, CensusRow};
pub use enumerate::{enumerate_phrases, random_phrase};
pub use fuzz::{fuzz_invariance, random_trial_phrase, FuzzCaps, FuzzReport, FuzzViolation};
pub use search::{
    certify, decide_equivalence, decide_equivalence_with, reachable, reachable_with, replay_trace,
    Certificate, Exhausted, InvariantName, Reachable, Relation, SearchBounds, SearchVerdict,
};
