//! List-colouring laboratory for the extremal complete multipartite graphs
//! `K_{4,2*(k-1)}` and `K_{3*(k/2+1),1*(k/2-1)}`.
//!
//! The crate decides `L`-colourability with checkable certificates, builds the
//! known families of bad list assignments, recognizes their structure, and runs
//! exhaustive or seeded-sampled censuses over list assignments.
//!
//! Module map:
//!
//! * [`graph`]: complete multipartite shells, edge deletions, symmetry groups.
//! * [`lists`]: list assignments, per-part statistics, necessary badness filters
//!   and canonical forms.
//! * [`solver`]: backtracking and contraction/Hall-matching decision procedures.
//! * [`constructions`]: generators for the bad families and the `ind3` sufficient
//!   condition for `f`-choosability.
//! * [`census`]: incidence-pattern enumeration, structure recognizers, sampling
//!   and choosability sweeps.
//! * [`format`]: the line-oriented instance grammar and the structured report text.

pub mod census;
pub mod constructions;
mod error;
pub mod format;
pub mod graph;
pub mod lists;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Graph, Perm, SymmetryGroup};
pub use lists::{CanonicalForm, ColorSet, ListAssignment, PartStats};
pub use solver::{Certificate, Coloring, NonColorability};
