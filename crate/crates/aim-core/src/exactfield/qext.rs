//! The field Q(q): rational functions in the symbol q over the rationals.
//!
//! `QExt` is the *scalar* type used when q is kept symbolic. The iteration
//! engines then work with `RatFun<QExt>` in x, realizing the field tower
//! Q -> Q(q) -> Q(q)(x) by generic instantiation.

use std::fmt;

use super::field::Field;
use super::poly::Poly;
use super::rational::Rat;
use super::ratfun::RatFun;

#[derive(Clone, PartialEq)]
pub struct QExt(RatFun<Rat>);

impl QExt {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Self {
        QExt(RatFun::new(num, den))
    }

    /// The symbol q itself.
    pub fn q() -> Self {
        QExt(RatFun::x())
    }

    /// q^k, with negative k giving 1/q^|k|.
    pub fn q_pow(k: i64) -> Self {
        QExt::q().pow(k)
    }

    pub fn from_rat(c: Rat) -> Self {
        QExt(RatFun::constant(c))
    }

    pub fn num(&self) -> &Poly<Rat> {
        self.0.num()
    }

    pub fn den(&self) -> &Poly<Rat> {
        self.0.den()
    }

    /// Exact value at a numeric q. Errors if q is a pole.
    pub fn eval_at(&self, q: &Rat) -> Result<Rat, super::ratfun::PoleError> {
        self.0.eval(q)
    }

    /// True when the element is a polynomial in q.
    pub fn is_poly(&self) -> bool {
        self.0.is_polynomial()
    }
}

impl Field for QExt {
    fn zero() -> Self {
        QExt(RatFun::zero())
    }

    fn one() -> Self {
        QExt(RatFun::one())
    }

    fn from_i64(n: i64) -> Self {
        QExt(RatFun::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        QExt(self.0.add(&rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        QExt(self.0.sub(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        QExt(self.0.mul(&rhs.0))
    }

    fn neg(&self) -> Self {
        QExt(self.0.neg())
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero element of Q(q)");
        QExt(RatFun::new(self.0.den().clone(), self.0.num().clone()))
    }

    /// Subresultant pseudo-remainder sequence over Q[q][x]: clear the
    /// q-denominators and strip the content once, then divide each
    /// pseudo-remainder by the predicted factor g*h^delta instead of
    /// computing per-step contents.
    fn poly_gcd(a: &Poly<QExt>, b: &Poly<QExt>) -> Poly<QExt> {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let mut a = strip_q_content(a);
        let mut b = strip_q_content(b);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = QExt::one();
        let mut h = QExt::one();
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
        strip_q_content(&a).monic()
    }

    fn coeff_atom(&self) -> (bool, String) {
        fn poly_atom(p: &Poly<Rat>) -> (bool, String) {
            // a single monomial c*q^k can be rendered bare inside a product
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if nonzero == 1 {
                let k = p.degree().unwrap();
                let (neg, c) = p.coeff(k).coeff_atom();
                let text = match (k, c.as_str()) {
                    (0, _) => c,
                    (1, "1") => "q".into(),
                    (1, _) => format!("{c}*q"),
                    (_, "1") => format!("q^{k}"),
                    (_, _) => format!("{c}*q^{k}"),
                };
                (neg, text)
            } else {
                (false, format!("({})", PolyInQ(p)))
            }
        }
        if self.0.is_polynomial() {
            poly_atom(self.0.num())
        } else {
            let (neg, n) = poly_atom(self.0.num());
            let (_, d) = poly_atom(self.0.den());
            (neg, format!("{n}/{d}"))
        }
    }
}

/// Rescales an x-polynomial over Q(q) so every coefficient is a primitive
/// polynomial in q with no common q-factor across coefficients. The result
/// differs from the input by a unit of Q(q), which gcds ignore.
fn strip_q_content(p: &Poly<QExt>) -> Poly<QExt> {
    use super::rational::rational_content;
    use num_integer::Integer;

    if p.is_zero() {
        return Poly::zero();
    }
    // common denominator in q
    let mut den_lcm: Poly<Rat> = Poly::one();
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        let g = den_lcm.gcd(c.den());
        den_lcm = den_lcm.mul(&c.den().exact_div(&g));
    }
    let cleared: Vec<Poly<Rat>> = p
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                Poly::zero()
            } else {
                c.num().mul(&den_lcm.exact_div(c.den()))
            }
        })
        .collect();
    // common q-polynomial factor
    let mut content: Poly<Rat> = Poly::zero();
    for c in &cleared {
        if c.is_zero() {
            continue;
        }
        content = content.gcd(c);
        if content.degree() == Some(0) {
            break;
        }
    }
    let mut stripped: Vec<Poly<Rat>> = cleared
        .into_iter()
        .map(|c| {
            if c.is_zero() || content.is_one() {
                c
            } else {
                c.exact_div(&content)
            }
        })
        .collect();
    // scale the whole vector to integer primitive form
    let mut overall = Rat::zero();
    for c in &stripped {
        let rc = rational_content(c);
        if overall.is_zero() {
            overall = rc;
        } else if !rc.is_zero() {
            overall = Rat::new(
                overall.numer().gcd(rc.numer()),
                overall.denom().lcm(rc.denom()),
            );
        }
    }
    if !overall.is_zero() && !overall.is_one() {
        let inv = overall.inv();
        stripped = stripped.iter().map(|c| c.scale(&inv)).collect();
    }
    Poly::from_coeffs(
        stripped
            .into_iter()
            .map(|c| QExt::new(c, Poly::one()))
            .collect(),
    )
}

struct PolyInQ<'a>(&'a Poly<Rat>);

impl fmt::Display for PolyInQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with_var(f, "q")
    }
}

impl fmt::Display for QExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with_var(f, "q")
    }
}

impl fmt::Debug for QExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! qext_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &QExt {
            type Output = QExt;
            fn $method(self, rhs: &QExt) -> QExt {
                Field::$method(self, rhs)
            }
        }
    };
}

qext_binop!(Add, add);
qext_binop!(Sub, sub);
qext_binop!(Mul, mul);
qext_binop!(Div, div);

impl std::ops::Neg for &QExt {
    type Output = QExt;
    fn neg(self) -> QExt {
        Field::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_arithmetic() {
        let q = QExt::q();
        // q^2 - 1 = (q-1)(q+1)
        let sq = q.mul(&q).sub(&QExt::one());
        let factored = q.sub(&QExt::one()).mul(&q.add(&QExt::one()));
        assert_eq!(sq, factored);
        assert_eq!(QExt::q_pow(-2).mul(&QExt::q_pow(2)), QExt::one());
    }

    #[test]
    fn eval_at_numeric_q() {
        // (1 - q^3)/(1 - q) at q = 1/2 is 7/4
        let q = QExt::q();
        let f = QExt::one()
            .sub(&q.pow(3))
            .div(&QExt::one().sub(&q));
        assert_eq!(f.eval_at(&Rat::ratio(1, 2)).unwrap(), Rat::ratio(7, 4));
    }

    #[test]
    fn display_uses_q() {
        let e = QExt::q_pow(2).sub(&QExt::from_i64(1));
        assert_eq!(e.to_string(), "q^2 - 1");
        let r = QExt::one().div(&QExt::q().sub(&QExt::one()));
        assert_eq!(r.to_string(), "(1)/(q - 1)");
    }

    #[test]
    fn coeff_atom_shapes() {
        assert_eq!(QExt::q_pow(3).coeff_atom(), (false, "q^3".into()));
        let neg = QExt::from_i64(-2).mul(&QExt::q());
        assert_eq!(neg.coeff_atom(), (true, "2*q".into()));
        let sum = QExt::q().add(&QExt::one());
        assert_eq!(sum.coeff_atom(), (false, "(q + 1)".into()));
        let frac = QExt::one().div(&QExt::q().sub(&QExt::one()));
        assert_eq!(frac.coeff_atom(), (false, "1/(q - 1)".into()));
    }
}
