//! Exact computation of the algebraic isometry data of Carnot groups.
//!
//! A stratified nilpotent (Carnot) Lie algebra is described by rational
//! structure constants together with a grading of the basis into strata
//! `V_1, ..., V_s` with `V_{j+1} = [V_1, V_j]`. Starting from that data this
//! crate computes, in exact rational arithmetic:
//!
//! * the derivation algebra, its strata-preserving part `Der_0(g)` and the
//!   isometric part `g_0` with respect to a scalar product on `V_1`
//!   ([`derivations`]);
//! * the Tanaka prolongation tower `g_k` of `g` with respect to `g_0`,
//!   with its graded bracket ([`prolongation`]);
//! * the group law in exponential coordinates of the first kind, dilations,
//!   left-/right-invariant polynomial vector fields, and the classification
//!   of isometric automorphisms ([`group_law`]);
//! * the Killing algebra `K` as polynomial vector fields, its filtration
//!   `K_{-1} ⊇ K_0 ⊇ K_1 ⊇ ...`, and the identification with the
//!   prolongation tower ([`killing`]);
//! * maximal inscribed ellipsoids of polytope norm balls, reducing polytope
//!   norms on `V_1` to scalar products ([`john`], the one floating-point
//!   module).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `carnot-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod corpus;
pub mod derivations;
pub mod group_law;
pub mod hall;
pub mod john;
pub mod killing;
pub mod matrix;
pub mod poly;
pub mod prolongation;
pub mod subspace;
pub mod vector_field;

pub use algebra::{AlgebraError, StratifiedAlgebra, ValidationReport};
pub use derivations::GradedMap;





/// Exact scalar used throughout: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rat`].
pub type Int = num_bigint::BigInt;

/// Shorthand for a small rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Shorthand for an integer rational.
pub fn rint(p: i64) -> Rat {
    Rat::from_integer(Int::from(p))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> alloc::string::String {
    use num_traits::One;
    if r.denom().is_one() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}
