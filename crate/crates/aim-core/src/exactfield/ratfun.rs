//! Normalized rational functions over an abstract field.
//!
//! Canonical form: numerator and denominator coprime, denominator monic and
//! nonzero. With that normalization equality is plain structural equality,
//! and a rational function is zero iff its numerator is the zero polynomial.

use std::fmt;

use super::field::Field;
use super::poly::Poly;

/// Evaluation failed because the point is a pole.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleError {
    pub point: String,
}

impl fmt::Display for PoleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pole at {}", self.point)
    }
}

impl std::error::Error for PoleError {}

#[derive(Clone, PartialEq)]
pub struct RatFun<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFun<K> {
    /// Builds `num/den` in canonical form. Panics if `den` is zero.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        if den.is_one() {
            return RatFun { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        RatFun::constant(K::from_i64(n))
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator as a polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<K>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // gcd-aware addition: any common factor of the combined numerator
        // and denominator divides g = gcd(den1, den2)
        let g = if self.den.is_one() || rhs.den.is_one() {
            Poly::one()
        } else {
            self.den.gcd(&rhs.den)
        };
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return RatFun::zero();
            }
            return RatFun {
                num,
                den: self.den.mul(&rhs.den),
            };
        }
        let d1r = self.den.exact_div(&g);
        let d2r = rhs.den.exact_div(&g);
        let num = self.num.mul(&d2r).add(&rhs.num.mul(&d1r));
        if num.is_zero() {
            return RatFun::zero();
        }
        let g2 = num.gcd(&g);
        if g2.is_one() {
            RatFun {
                num,
                den: self.den.mul(&d2r),
            }
        } else {
            RatFun {
                num: num.exact_div(&g2),
                den: self.den.exact_div(&g2).mul(&d2r),
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = if rhs.den.is_one() {
            Poly::one()
        } else {
            self.num.gcd(&rhs.den)
        };
        let g2 = if self.den.is_one() {
            Poly::one()
        } else {
            rhs.num.gcd(&self.den)
        };
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_one() { rhs.den.clone() } else { rhs.den.exact_div(&g1) };
        let n2 = if g2.is_one() { rhs.num.clone() } else { rhs.num.exact_div(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2) };
        RatFun::new(n1.mul(&n2), d1.mul(&d2))
    }

    /// The multiplicative inverse; panics on zero.
    pub fn reciprocal(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        // numerator and denominator are already coprime; re-normalize monic
        let scale = self.num.leading_coeff().unwrap().inv();
        RatFun {
            num: self.den.scale(&scale),
            den: self.num.scale(&scale),
        }
    }

    /// Panics if `rhs` is zero; use [`RatFun::checked_div`] for user input.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self.mul(&rhs.reciprocal())
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self.div(rhs))
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }

    /// Integer power; negative exponents invert (panics on zero base).
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return RatFun::one();
        }
        let base = if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero rational function");
            self.reciprocal()
        } else {
            self.clone()
        };
        let mut acc = RatFun::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Exact evaluation. Poles are detected by the (coprime) denominator
    /// vanishing, so removable singularities have already been cancelled.
    pub fn eval(&self, t: &K) -> Result<K, PoleError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(PoleError {
                point: t.to_string(),
            });
        }
        Ok(self.num.eval(t).div(&d))
    }

    /// Evaluation at an integer point.
    pub fn eval_i64(&self, i: i64) -> Result<K, PoleError> {
        self.eval(&K::from_i64(i))
    }

    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with_var(f, var);
        }
        write!(f, "(")?;
        self.num.fmt_with_var(f, var)?;
        write!(f, ")/(")?;
        self.den.fmt_with_var(f, var)?;
        write!(f, ")")
    }
}

impl<K: Field> fmt::Display for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "x")
    }
}

impl<K: Field> fmt::Debug for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! ratfun_binop {
    ($trait:ident, $method:ident) => {
        impl<K: Field> std::ops::$trait for &RatFun<K> {
            type Output = RatFun<K>;
            fn $method(self, rhs: &RatFun<K>) -> RatFun<K> {
                RatFun::$method(self, rhs)
            }
        }
    };
}

ratfun_binop!(Add, add);
ratfun_binop!(Sub, sub);
ratfun_binop!(Mul, mul);
ratfun_binop!(Div, div);

impl<K: Field> std::ops::Neg for &RatFun<K> {
    type Output = RatFun<K>;
    fn neg(self) -> RatFun<K> {
        RatFun::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    type P = Poly<Rat>;
    type R = RatFun<Rat>;

    fn over(n: &[i64], d: &[i64]) -> R {
        R::new(P::from_i64_coeffs(n), P::from_i64_coeffs(d))
    }

    #[test]
    fn common_denominator_addition() {
        // 1/x + 1/(x+1) = (2x+1)/(x(x+1))
        let a = over(&[1], &[0, 1]);
        let b = over(&[1], &[1, 1]);
        assert_eq!(&a + &b, over(&[1, 2], &[0, 1, 1]));
    }

    #[test]
    fn self_division_is_one() {
        let f = over(&[1, 2, 3], &[5, 0, 7]);
        assert!((&f / &f).is_one());
    }

    #[test]
    fn normalization_cancels_common_factors() {
        // (x^2 - 1)/(x - 1) = x + 1
        let f = over(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f, R::from_poly(P::from_i64_coeffs(&[1, 1])));
        assert!(f.is_polynomial());
    }

    #[test]
    fn denominator_is_monic() {
        // 1/(2x + 2) -> (1/2)/(x + 1)
        let f = over(&[1], &[2, 2]);
        assert_eq!(f.den(), &P::from_i64_coeffs(&[1, 1]));
        assert_eq!(f.num(), &P::constant(Rat::ratio(1, 2)));
    }

    #[test]
    fn eval_simple_and_removable() {
        let inv_x = over(&[1], &[0, 1]);
        assert_eq!(inv_x.eval(&Rat::from_int(2)).unwrap(), Rat::ratio(1, 2));
        // removable singularity is gone after normalization
        let f = over(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.eval(&Rat::from_int(1)).unwrap(), Rat::from_int(2));
        let err = inv_x.eval(&Rat::from_int(0)).unwrap_err();
        assert_eq!(err.point, "0");
    }

    #[test]
    fn checked_div_by_zero() {
        let f = over(&[1], &[0, 1]);
        assert!(f.checked_div(&R::zero()).is_none());
    }

    #[test]
    fn display_roundtrip_shapes() {
        let f = over(&[1, 2], &[0, 1, 1]);
        assert_eq!(f.to_string(), "(2*x + 1)/(x^2 + x)");
        assert_eq!(R::zero().to_string(), "0");
    }
}
