//! Exact solver for linear second-order difference and q-difference
//! equations by discrete asymptotic iteration.
//!
//! The engine iterates the coefficient pair (lambda_n, s_n) of an equation
//! `D^2 y = lambda_0 * D y + s_0 * y` (with `D` the forward difference or the
//! q-derivative), detects the terminating condition `delta_n == 0` by an
//! exact zero test, extracts polynomial solutions from the induced linear
//! system, verifies them by back-substitution, and constructs second
//! solutions on integer grids. All of this happens in exact arithmetic over
//! Q or Q(q); floating point appears only in optional infinite-product
//! cross-checks.

pub mod exactfield;
pub mod diffops;
pub mod daim;
pub mod qaim;
pub mod eqdsl;
pub mod presets;
pub mod report;
pub mod cli;

pub use exactfield::{CoefficientField, Field, Matrix, Poly, QExt, Rat, RatFun};
