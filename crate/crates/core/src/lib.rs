//! Exact computations behind fiber-sum constructions of exotic 4-manifolds:
//! finitely presented groups, surface mapping classes, characteristic
//! numbers, bundled construction data and a small script language tying
//! them together.

pub mod constructions;
pub mod dsl;
pub mod group;
pub mod lexer;
pub mod manifold;
pub mod matrix;
pub mod scalar;
pub mod smith;
pub mod surfaces;

use num_bigint::BigInt;

pub use scalar::Scalar;

pub type IntMatrix = matrix::Matrix<i64>;
pub type WideMatrix = matrix::Matrix<i128>;
pub type BigMatrix = matrix::Matrix<BigInt>;
pub type IntSmithForm = smith::SmithForm<i64>;
pub type BigSmithForm = smith::SmithForm<BigInt>;
pub type IntLattice = manifold::IntersectionLattice<i64>;
pub type IntClass = surfaces::HomologyClass<i64>;
