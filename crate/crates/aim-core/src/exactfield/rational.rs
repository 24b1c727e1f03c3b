//! Arbitrary-precision rationals: the field Q.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::poly::Poly;

/// An exact rational number. Always stored reduced with a positive
/// denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: BigInt, denom: BigInt) -> Rat {
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact integer value if the denominator is 1 and it fits an i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero rational");
        Rat(self.0.recip())
    }

    fn coeff_atom(&self) -> (bool, String) {
        let mag = self.abs();
        let text = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        (self.is_negative(), text)
    }

    /// Subresultant pseudo-remainder sequence over the integers: strip the
    /// rational content once, then divide each pseudo-remainder by the
    /// predicted factor g*h^delta. Avoids the coefficient swell of the
    /// naive monic Euclidean algorithm.
    fn poly_gcd(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let mut a = primitive_part(a);
        let mut b = primitive_part(b);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = Rat::one();
        let mut h = Rat::one();
        loop {
            let delta = (a.degree().unwrap() - b.degree().unwrap()) as i64;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                a = b;
                break;
            }
            let divisor = g.mul(&h.pow(delta));
            let next = r.scale(&divisor.inv());
            a = b;
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta).mul(&h.pow(1 - delta))
            };
            b = next;
        }
        primitive_part(&a).monic()
    }
}

/// `gcd(numerators) / lcm(denominators)`, positive; zero for the zero poly.
pub(crate) fn rational_content(p: &Poly<Rat>) -> Rat {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        Rat::zero()
    } else {
        Rat::new(num_gcd, den_lcm)
    }
}

/// Scales to integer, primitive, positive-leading coefficients.
pub(crate) fn primitive_part(p: &Poly<Rat>) -> Poly<Rat> {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut c = rational_content(p);
    if p.leading_coeff().unwrap().is_negative() {
        c = c.neg();
    }
    p.scale(&c.inv())
}

/// Parses "p", "-p" or "p/q".
impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(num_s).map_err(|_| format!("invalid integer `{num_s}`"))?;
        let denom = BigInt::from_str(den_s).map_err(|_| format!("invalid integer `{den_s}`"))?;
        if denom.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rat::new(numer, denom))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

// Operator sugar; the std::ops traits are deliberately not imported into
// this module's scope so that `a.add(&b)` always means `Field::add`.
macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Field::$method(self, rhs)
            }
        }
        impl std::ops::$trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Field::$method(&self, &rhs)
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl std::ops::Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Field::neg(&self)
    }
}

impl std::ops::Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Field::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_representation() {
        let r = Rat::ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rat::ratio(0, 7), Rat::zero());
        assert_eq!(Rat::ratio(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["0", "-3", "5/7", "-22/7", "100000000000000000000000000001/13"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rat::ratio(1, 2);
        let b = Rat::ratio(1, 3);
        assert_eq!(&a + &b, Rat::ratio(5, 6));
        assert_eq!(&a - &b, Rat::ratio(1, 6));
        assert_eq!(&a * &b, Rat::ratio(1, 6));
        assert_eq!(&a / &b, Rat::ratio(3, 2));
        assert_eq!(a.pow(-2), Rat::from_int(4));
    }

    #[test]
    #[should_panic(expected = "inverse of zero")]
    fn zero_has_no_inverse() {
        let _ = Rat::zero().inv();
    }
}
