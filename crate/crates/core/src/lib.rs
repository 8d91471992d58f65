//! Exact linear algebra over finite fields for commutator varieties.
//!
//! Builds the matrix families behind `[A,B] = I` in characteristic p and
//! `[x,y] = ζI` in `GL_n`, checks their structural properties exactly, and
//! counts points of the associated varieties over `F_q` to estimate their
//! dimensions.

pub mod canon;
pub mod census;
pub mod cli;
pub mod error;
pub mod gf;
pub mod mat;
pub mod poly;
pub mod typea;
pub mod weyl;

pub use error::{Error, Result};
pub use gf::{Fe, Field};
pub use mat::Mat;
pub use poly::Poly;
