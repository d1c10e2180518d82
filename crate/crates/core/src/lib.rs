//! Bi-monotone independence, computed three ways.
//!
//! The crate models the two-faced process `(λ* + λ, ρ* + ρ)` on monotone Fock
//! space and the moments it produces, through three independent routes:
//!
//! - [`partitions`]: enumeration and counting of bi-monotone ordered two-faced
//!   pair partitions (the combinatorial side).
//! - [`fock`]: an exact symbolic model of monotone Fock space over a rational
//!   grid, with left/right creation and annihilation operators.
//! - [`products`]: the bi-monotone product of finite-dimensional pointed
//!   representations, applied lazily on sparse tensor vectors.
//!
//! [`clt`] ties them together through the central limit theorem, and
//! [`spectrum`] turns a moment sequence into a Gaussian quadrature rule.
//!
//! All exact arithmetic is done with arbitrary-precision rationals.

pub mod clt;
pub mod fock;
pub mod numbers;
pub mod partitions;
pub mod products;
pub mod spectrum;

pub use numbers::{Complex64, ExactComplex, Rational};
pub use partitions::{Face, Pattern};
