//! Dense univariate polynomials over an abstract field.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the vector is empty for the zero polynomial, and the last
//! element is nonzero otherwise. The degree of the zero polynomial is the
//! sentinel `None`, never an integer.

use std::fmt;

use super::field::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![K::zero(), K::one()],
        }
    }

    pub fn monomial(c: K, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![K::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<K>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| K::from_i64(c)).collect())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Makes the leading coefficient 1. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lc_inv = div.leading_coeff().unwrap().inv();
        let mut rem = self.clone();
        let mut quot = vec![K::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap().mul(&lc_inv);
            let shift = rd - dd;
            quot[shift] = factor.clone();
            // rem -= factor * x^shift * div
            let mut new = rem.coeffs;
            for (j, b) in div.coeffs.iter().enumerate() {
                new[shift + j] = new[shift + j].sub(&factor.mul(b));
            }
            rem = Poly::from_coeffs(new);
        }
        (Poly::from_coeffs(quot), rem)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Number of zero coefficients below the lowest nonzero one, i.e. the
    /// multiplicity of the variable as a factor. Zero for the zero poly.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Exact division by x^k.
    pub fn shr_var(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        assert!(self.trailing_zeros() >= k, "inexact division by x^k");
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiplication by x^k.
    pub fn shl_var(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Monic greatest common divisor. A common power of the variable is
    /// split off first; the rest dispatches through the scalar type so that
    /// Q and Q(q) can use fraction-free remainder sequences.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let ta = self.trailing_zeros();
        let tb = other.trailing_zeros();
        let a = self.shr_var(ta);
        let b = other.shr_var(tb);
        let g = if a.is_constant() || b.is_constant() {
            Poly::one()
        } else {
            K::poly_gcd(&a, &b)
        };
        g.shl_var(ta.min(tb))
    }

    /// Canonical pseudo-remainder: `lc(div)^(deg self - deg div + 1) * self`
    /// reduced modulo `div`, computed without any coefficient inversion.
    pub fn pseudo_rem(&self, div: &Self) -> Self {
        assert!(!div.is_zero(), "pseudo-remainder by zero");
        let db = div.degree().unwrap();
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return self.clone(),
        };
        let lc = div.leading_coeff().unwrap().clone();
        let mut spare = (da - db + 1) as i64;
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lead = r.leading_coeff().unwrap().clone();
            r = r.scale(&lc).sub(&div.mul(&Poly::monomial(lead, dr - db)));
            spare -= 1;
        }
        // pad so the total factor is exactly lc^(da-db+1)
        if spare > 0 && !r.is_zero() {
            r = r.scale(&lc.pow(spare));
        }
        r
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        acc
    }

    /// Substitutes `x -> x + k` (exact Taylor shift by an integer).
    pub fn compose_shift(&self, k: i64) -> Self {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let arg = Poly::from_coeffs(vec![K::from_i64(k), K::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&arg).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Substitutes `x -> c * x`: the coefficient of x^i picks up c^i.
    pub fn compose_scale(&self, c: &K) -> Self {
        let mut factor = K::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&factor));
            factor = factor.mul(c);
        }
        Poly::from_coeffs(out)
    }

    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, atom) = c.coeff_atom();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = atom == "1";
            match (i, coeff_is_one) {
                (0, _) => write!(f, "{atom}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{atom}*{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{atom}*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Plain Euclidean gcd with the remainder made monic at each step; the
/// generic fallback behind [`Field::poly_gcd`].
pub fn euclid_gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    let mut a = a.monic();
    let mut b = b.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    a
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "x")
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl<K: Field> std::ops::$trait for &Poly<K> {
            type Output = Poly<K>;
            fn $method(self, rhs: &Poly<K>) -> Poly<K> {
                Poly::$method(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<K: Field> std::ops::Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::neg(self)
    }
}
