//! Exact arithmetic kernel: big rationals, dense univariate polynomials over
//! an abstract field, normalized rational functions, and nullspace extraction.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod qext;
pub mod rational;
pub mod ratfun;

pub use field::Field;
pub use matrix::{nullspace, Matrix};
pub use poly::Poly;
pub use qext::QExt;
pub use rational::Rat;
pub use ratfun::{PoleError, RatFun};

/// Which coefficient field a computation runs over.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientField {
    /// The rationals; `q`, if it appears, must be bound to a numeric value.
    Q { q: Option<Rat> },
    /// Rational functions in a symbolic q.
    QOfQ,
}

impl CoefficientField {
    pub fn symbolic_q() -> Self {
        CoefficientField::QOfQ
    }

    pub fn numeric_q(q: Rat) -> Self {
        CoefficientField::Q { q: Some(q) }
    }

    pub fn plain() -> Self {
        CoefficientField::Q { q: None }
    }
}
