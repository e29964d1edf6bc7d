//! Exact symbolic engine for the Batalin-Vilkovisky algebra on the free loop
//! space cohomology `H^{*+d}(LBG; K)` of a classifying space with polynomial
//! cohomology.
//!
//! The crate builds, from a presentation of `H^*(BG)` (generators, degrees,
//! top Steenrod squares mod 2), the loop algebra `H^*(LX)` with its cup
//! product and `Delta` operator, the dual loop coproduct and its shifted
//! product `m`, the Gerstenhaber bracket, Hochschild cohomology models of free
//! graded-commutative algebras, and an exhaustive bounded-degree search for
//! graded-algebra / Gerstenhaber / BV isomorphisms between the two sides.
//!
//! All arithmetic is exact: `F_p` residues or arbitrary-precision rationals.

pub mod algebra;
pub mod element;
pub mod error;
pub mod hochschild;
pub mod iso;
pub mod linalg;
pub mod literal;
pub mod loop_model;
pub mod monomial;
pub mod par;
pub mod scalar;
pub mod string_bv;
pub mod verify;

pub use algebra::{AlgebraSpec, Generator};
pub use element::Element;
pub use error::AlgebraError;
pub use monomial::Monomial;
pub use scalar::{signature, Scalar};
