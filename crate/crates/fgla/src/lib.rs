//! Exact-arithmetic finiteness tests for effective prolongations of
//! fundamental graded Lie algebras (FGLAs).
//!
//! An FGLA is a negatively graded nilpotent Lie algebra generated by its
//! degree `-1` part; every such algebra is a quotient of the free Lie
//! algebra `f(V)` by a graded ideal `K`.  Given a structure algebra
//! `Λ ⊆ gl(V)`, the maximal effective Λ-prolongation of `f(V)/K` is either
//! finite or infinite dimensional, and which one holds is decided by a rank
//! condition on explicit matrices of linear forms over the algebraic
//! closure of the ground field.
//!
//! The crate is organised around that decision procedure:
//!
//! * [`freelie`] — Lyndon-basis model of the free Lie algebra, graded
//!   ideals, and the subspace `W(K)`;
//! * [`exactla`] — dense exact-rational linear algebra, matrix subspaces,
//!   trace-form annihilators, and the reduced algebras `a0`/`g0`;
//! * [`grobner`] — sparse polynomials over `ℚ`, Buchberger's algorithm in
//!   degrevlex order, minor ideals, and the origin-only test;
//! * [`criteria`] — construction of the criterion matrices and the
//!   finiteness verdict itself;
//! * [`prolong`] — an independent degreewise prolongation oracle used to
//!   cross-validate verdicts and to report dimension tables.
//!
//! All arithmetic on the decision path is exact (arbitrary-precision
//! rationals); nothing here uses floating point.  The crate is `no_std`
//! (with `alloc`); IO, problem files and the CLI live in the companion
//! `fgla-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod exactla;
pub mod freelie;
pub mod grobner;
pub mod prolong;
pub mod rat;

pub use rat::Rat;
