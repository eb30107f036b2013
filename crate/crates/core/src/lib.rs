//! Exact equivariant intersection theory on toric varieties.
//!
//! The crate computes, with exact rational arithmetic only:
//!
//! - lattice and cone geometry in `N = Z^n` ([`lattice`]),
//! - truncated multivariate power series and linear-form germs ([`series`]),
//! - complement maps induced by inner products ([`complement`]),
//! - the cycle-level action of equivariant Cartier divisors and the
//!   square-free normal form in the simplicial cycle ring ([`cycle`]),
//! - equivariant Todd coefficients `r(σ)` of rational cones ([`todd`]),
//! - exponential sums/integrals of lattice polytopes and the local
//!   Euler–Maclaurin identity built from `r` ([`polytope`]).
//!
//! Everything is `no_std` + `alloc`; the `std` feature only forwards to the
//! dependencies.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod complement;
pub mod cycle;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod series;
pub mod todd;

pub use complement::{ComplementMap, CosetFunctional, InnerProduct};
pub use cycle::{
    act, divisor_to_cycle, jpsi_generators, shift_cycle, stanley_reisner_generators, DPoly,
    EquivariantCycle, EquivariantDivisor, SquarefreeReducer,
};
pub use error::{Error, Result};
pub use lattice::{primitive, Cone, Fan, IntVec, QuotientLattice};
pub use polytope::{FaceRecord, GermKind, LatticeCount, LatticePolytope};
pub use series::{LinearForm, MeromorphicGerm, PolySeries};
pub use todd::ToddEngine;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Default truncation order for series computations.
pub const DEFAULT_ORDER: u32 = 6;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
