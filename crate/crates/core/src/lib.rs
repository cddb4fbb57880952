//! Exact computation of the degree-`(k+1)` piece of the ideal of the `k`-th
//! secant variety of a Veronese embedding, by prolongation restricted to
//! weight spaces.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod multiindex;
pub mod polyring;
pub mod prolong;
pub mod quintics;
pub mod symmetry;
pub mod trace;

pub use error::{Error, Result};
pub use multiindex::{MultiIndex, Permutation, SMonomial};
pub use polyring::{Rat, SPolynomial, TPolynomial};
