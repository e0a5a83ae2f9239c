//! Local rainbow colourings of `K_n`, Erdős–Gyárfás `(p, q)`-colourings and
//! the tools around them: explicit constructions, exhaustive verifiers with
//! checkable certificates, refutation attacks, exact small-scale search and
//! a growth classification of patterns.

pub mod attacks;
pub mod certificate;
pub mod classify;
pub mod colouring;
pub mod combinatorics;
pub mod constructions;
pub mod copies;
pub mod egy;
pub mod error;
pub mod formats;
pub mod pattern;
pub mod search;
pub mod verification;

pub use certificate::{Certificate, Verdict};
pub use colouring::{BinaryLabelling, Colour, HypergraphColouring, LocalColouringCollection, OrderFamily};
pub use error::{Error, Result};
pub use pattern::PatternGraph;
