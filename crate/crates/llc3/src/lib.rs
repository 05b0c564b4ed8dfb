//! Exact verification of the finite computations behind a conductor-three
//! supercuspidal construction: character tables of a 24-element matrix group
//! over F_4, point counts and equivariant Lefschetz traces on two elliptic
//! curves over F_2, norm and ramification data in an equal-characteristic
//! local field tower, Gauss/epsilon sum evaluations, and skew-polynomial
//! identities in a division-algebra model.
//!
//! Everything is computed with exact arithmetic: rationals in the cyclotomic
//! field Q(zeta_24) on one side, and binary fields F_{2^m} plus truncated
//! Laurent series on the other.  No floats anywhere.

pub mod chars;
pub mod cyclo;
pub mod dalg;
pub mod ellpt;
pub mod eps;
pub mod gf2;
pub mod lfield;
pub mod qgroup;
pub mod report;
