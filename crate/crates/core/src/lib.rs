//! Exact computations with dg associative algebras, coalgebras, Lie algebras
//! and their complete ("absolute") counterparts: canonical filtrations and
//! completions, bar and cobar constructions, linear and topological duals,
//! contramodules and universal enveloping towers.
//!
//! All scalars are exact rationals. Infinite objects are represented by their
//! truncations at a user-chosen weight `N`.

pub mod absolute;
pub mod assoc;
pub mod barcobar;
pub mod cli;
pub mod contra;
pub mod duality;
pub mod error;
pub mod exactlin;
pub mod lie;
pub mod par;

pub use error::{Error, Result};
