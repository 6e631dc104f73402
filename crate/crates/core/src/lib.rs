//! Gauss phrases: parsing, homotopy moves, the linking-matrix, `T`, `S_o`
//! and `S` invariants, realization of admissible invariant values, and
//! bounded exploration of the moves.

pub mod error;
pub mod explorer;
pub mod format;
pub mod invariants;
pub mod moves;
pub mod par;
pub mod phrase;
pub mod realize;
pub mod report;
pub mod z2;

pub use error::{Error, Result};
pub use format::{format_phrase, parse_phrase, parse_phrase_as, Format};
pub use moves::{apply_move, enumerate_sites, Gap, MoveKind, MoveSet, MoveSite};
pub use par::Exec;
pub use phrase::{
    canonical_form, is_isomorphic, letter_kind, GaussPhrase, Letter, LetterKind, Position, Word,
};
pub use z2::{Orbit, Z2Mat, Z2Vec};
