//! Exact computations around the centers of the quantum groups `U_q(sl_{n+1})`.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootdata`]: type `A_n` roots, weights, the Weyl group `S_{n+1}` and the
//!   lattice `ZΦ ∩ 2Λ`.
//! - [`torusring`]: the torus algebra `U⁰ = K(q)[K_1^{±1}, …, K_n^{±1}]` with
//!   Weyl action, `γ` twists, evaluation at weights and specialization of `q`.
//! - [`invariants`]: fundamental multiplicative invariants of `S_{n+1}` and
//!   their `γ_ρ`-twisted forms `σ_m`.
//! - [`charspec`]: central characters of the `σ_m` on simple modules `L(λ)`
//!   and the search for weights separating two parameters `q`, `p`.
//! - [`ncalgebra`]: a PBW rewriting engine for `U_q(sl_2)` and the natural
//!   representation of `U_q(sl_{n+1})`.

pub mod charspec;
pub mod error;
pub mod invariants;
pub mod ncalgebra;
pub mod rational;
pub mod rootdata;
pub mod torusring;

pub use charspec::{Distinction, SeparationWitness};
pub use error::{Error, Result};
pub use invariants::{InvariantElement, XLaurent};
pub use ncalgebra::{Gen, NCElement, Word};
pub use rational::Rational;
pub use rootdata::{DominantWeight, LatticeBasis, LatticeVector, RootSystem, WeylElement};
pub use torusring::{KMonomial, LaurentPoly, QScalar, Specialization, TorusElement};
