//! Exact computations with the transverse Hopf algebras `H_n`: the algebra
//! from its presentation, the bicrossed product model built from formal jets,
//! the Hopf cyclic machinery and finite weight blocks of its cohomology.

pub mod error;
pub mod chern;
pub mod cohomology;
pub mod cyclic;
pub mod faa;
pub mod hopf;
pub mod jet;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod report;
pub mod symbolic;

pub use error::{Error, Result};
pub use linalg::Rational;
