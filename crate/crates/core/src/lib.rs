//! Exact symbolic engine for Landau-Ginzburg mirrors of quadrics `Q_N`.
//!
//! The crate builds the four mirror presentations (canonical, Givental,
//! Przyjalkowski, Lusztig/quiver), the quantum cohomology side, and checks the
//! identities relating them with exact rational arithmetic.

pub mod arith;
pub mod cohomology;
pub mod critical;
pub mod dmodule;
pub mod flat_sections;
pub mod lg_zoo;
pub mod lie_matrix;
pub mod quiver;

pub use arith::{LaurentPolynomial, RationalFunction, Symbol};
