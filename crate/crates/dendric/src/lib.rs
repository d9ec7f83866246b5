//! Factor languages of shift spaces at finite horizon: extension graphs,
//! complexity and special-word statistics, dendricity scans, return words,
//! codes, and language transformations.
//!
//! Everything here works on a [`language::FactorLanguage`]: the exact set
//! of factors of a shift space up to a declared horizon. All verdicts are
//! horizon-qualified certificates; nothing is claimed about the infinite
//! shift beyond the scanned window.

pub mod cli;
pub mod codes;
pub mod complexity;
pub mod dendricity;
pub mod error;
pub mod extension;
pub mod language;
pub mod transforms;
pub mod words;

pub use error::{Error, Result};
