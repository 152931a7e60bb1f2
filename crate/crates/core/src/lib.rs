//! Random Schreier graphs of finite transitive group actions.
//!
//! The crate builds Sch(G ↻ Ω, A) for a uniformly random generator multiset
//! A, computes directed diameters exactly or as certified bounds, and runs
//! exact and Monte Carlo checks of the growth and covering bounds that
//! control those diameters.

pub mod action;
pub mod cli;
pub mod diameter;
pub mod error;
pub mod experiment;
pub mod lemma;
pub mod par;
pub mod random;
pub mod schreier;

pub use error::{Error, Result};
