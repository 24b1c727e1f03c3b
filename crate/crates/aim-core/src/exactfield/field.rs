//! The abstract coefficient field.
//!
//! Everything downstream (polynomials, rational functions, the iteration
//! engines) is generic over [`Field`]. Two instantiations are used in
//! practice: [`Rat`](super::Rat) for computations over the rationals, and
//! [`QExt`](super::QExt) for computations over the rational functions in q.

use std::fmt;

use super::poly::{self, Poly};

/// An exact field element. All operations are total except `inv`/`div`,
/// which panic on a zero divisor; fallible callers check `is_zero` first.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics if `self` is zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power with negative exponents allowed (via `inv`).
    fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Render as `(negative, magnitude)` where the magnitude string is safe
    /// to splice into a product (it parses as a single `*`/`/` chain or is
    /// parenthesized). Used by the polynomial printers.
    fn coeff_atom(&self) -> (bool, String);

    /// Monic polynomial gcd over this field. The default is the plain
    /// Euclidean algorithm; scalars where coefficients can swell (Q, Q(q))
    /// override it with primitive remainder sequences and content stripping.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        poly::euclid_gcd(a, b)
    }
}
