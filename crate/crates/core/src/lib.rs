//! Cellular free resolutions of monomial ideals with linear quotients.
//!
//! Given an ideal with linear quotients and a regular decomposition
//! function, [`build_resolution`] writes down the explicit minimal graded
//! free resolution and [`build_x`] the regular CW complex supporting it.
//! [`taylor_betti`] is an independent Betti number oracle.

pub mod cell_complex;
pub mod error;
pub mod families;
pub mod homology;
pub mod linear_quotients;
pub mod monomial;
pub mod resolution;
pub mod verify;

pub use cell_complex::{build_lambda, build_x, CellComplex, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{taylor_betti, BettiTable};
pub use linear_quotients::{AdmissibleOrder, SearchOptions};
pub use monomial::{Monomial, MonomialIdeal, VarSet};
pub use resolution::{build_resolution, FreeComplex};
