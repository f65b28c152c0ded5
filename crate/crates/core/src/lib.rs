//! Exact computational toolkit for twisted Floer homology of circle bundles,
//! Koszul syzygy algebra, grading arithmetic, Alexander polynomials and the
//! knot-surgery invariant calculus used to tell rim-surgered surfaces apart.

pub mod chain_complex;
pub mod circle_bundle;
pub mod error;
pub mod fraction_rank;
pub mod grading;
pub mod knot_floer;
pub mod laurent;
pub mod matrix;
pub mod novikov;
pub mod rational;
pub mod skein;
pub mod smith;
pub mod surgery;

pub use error::{Error, Result};
pub use laurent::{CoefficientRing, LaurentPolynomial};
pub use matrix::PolyMatrix;
pub use novikov::{novikov_quotient, Direction, NovikovSeries};
