//! Alexander-type invariants of long and closed virtual knots given by Gauss codes.
//!
//! Pipeline: [`diagram`] parses a code, [`alexander`] builds the presentation
//! with Z^2 operators and its matrix over Z[u^±1, v^±1], and [`invariants`]
//! extracts polynomials, determinants and coloring counts. [`moves`] rewrites
//! codes by Reidemeister moves for invariance testing.

pub mod alexander;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod matrix;
pub mod moves;
pub mod ring;
pub mod snf;

pub use error::{Error, Result};
