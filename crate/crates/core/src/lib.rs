//! Exact Fourier analysis on finite (not necessarily Abelian) groups with
//! matrix-valued coefficients, plus an approximate quadrature model of the
//! non-unimodular ax+b group.
//!
//! The library realizes the convolution *-algebra of functions
//! `G -> M_k(C)` on a Cayley-table group, its left regular representation on
//! `C^k (x) l2(G)`, the Plancherel weight (evaluation at the identity under
//! counting Haar measure) with its GNS construction, the operator-valued
//! Fourier transform and its inversion `sum_t a^(t) (x) lambda_t`, positive
//! definite functions with explicit Naimark dilations `f(t) = S* u_t S`, and
//! a dual-group cross-check against classical DFT formulas on Abelian
//! groups. A separate quadrature module exercises the modular function,
//! modular conjugation, analytic flow, and windowed integral nets where they
//! are genuinely non-trivial.
//!
//! Conventions used throughout: the identity is element 0; Haar measure is
//! counting measure; inner products are linear in the second variable;
//! residual norms are Frobenius norms with scale-relative tolerances.
//! Every domain type is immutable after construction and safe to share
//! across threads; all operations are pure functions of their inputs.

pub mod abelian;
pub mod axb;
pub mod catalog;
pub mod conv;
pub mod error;
pub mod fourier;
pub mod group;
pub mod json;
pub mod linalg;
pub mod posdef;

pub use conv::{BlockOperator, OpValFn};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec};
pub use linalg::CMatrix;
