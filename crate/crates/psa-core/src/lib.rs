//! Exact computer algebra for the Lie pseudoalgebras W(d) and S(d,χ) over
//! H = U(d): Hopf arithmetic, the dual X, pseudobrackets, annihilation
//! algebras, tensor modules, singular vectors and the pseudo de Rham complex.

pub mod annih;
pub mod classify;
pub mod config;
pub mod derham;
pub mod dualx;
pub mod error;
pub mod freemod;
pub mod hopf;
pub mod liecore;
pub mod linalg;
pub mod matrix;
pub mod modules;
pub mod pseudoalg;
pub mod rational;
pub mod suites;
pub mod twosided;

pub use error::{Error, Result};
pub use rational::Q;
