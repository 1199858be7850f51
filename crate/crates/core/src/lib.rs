//! Exact graded algebra for characteristic classes, genera and their
//! deformations: symmetric and quasisymmetric functions, multiple zeta
//! values, Tor via the bar construction, and genus computations on small
//! manifold models.

pub mod acceptance;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod genus;
pub mod linalg;
pub mod mzv;
pub mod poly;
pub mod rational;
pub mod qsym;
pub mod series;
pub mod tor;
pub mod symm;

pub use error::{Error, Result};
pub use poly::{GradedPolynomial, Grading, Monomial, Var};
pub use rational::Rational;
pub use series::{TruncatedSeries, UniSeries};
