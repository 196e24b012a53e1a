//! Gauss diagrams of virtual links under Reidemeister and CF moves.
//!
//! The crate covers the data model and text format ([`diagram`], [`format`]),
//! primitive and composite moves with replayable traces ([`moves`], [`trace`]),
//! the CF-invariants ([`invariants`]), reduction to normal forms
//! ([`normalform`]), equivalence decisions ([`classify`]) and a brute-force
//! search oracle ([`oracle`]).

pub mod classify;
pub mod diagram;
pub mod error;
pub mod format;
pub mod invariants;
pub mod moves;
pub mod normalform;
pub mod oracle;
pub mod par;
pub mod random;
pub mod trace;

pub use diagram::{
    build_standard, canonical_form, connected_sum, Chord, ChordId, EndKind, Endpoint, GaussDiagram,
    LinkClass, Parity, Sign,
};
pub use error::{Error, Result};
pub use format::{parse_gauss_code, serialize};
pub use moves::{apply_move, enumerate_moves, Move};
pub use trace::MoveTrace;
