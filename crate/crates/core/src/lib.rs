//! Exact computation of Hochschild, Gerstenhaber-Schack and Baues-Wirsching
//! cohomology for finite diagrams of finite-dimensional algebras.

pub mod alg;
pub mod bw;
pub mod error;
pub mod exactla;
pub mod fincat;
pub mod gs;
pub mod hochschild;
pub mod simp;

pub use error::{Error, Result};
