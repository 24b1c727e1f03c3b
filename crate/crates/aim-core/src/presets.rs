//! Named example equations, both as typed constructors and as DSL sources
//! for the CLI preset mechanism.

use crate::daim::{Equation, HypergeometricFamily};
use crate::diffops::OperatorKind;
use crate::exactfield::{Field, Poly, RatFun};
use crate::qaim::QEquation;

/// Euler-type equation: `Delta^2 y = 2(a-1)/(1+x) Delta y + a(1-a)/(x(1+x)) y`.
pub fn euler_equation<K: Field>(a: &K) -> Equation<K> {
    let one = K::one();
    let two_a1 = K::from_i64(2).mul(&a.sub(&one));
    let lambda0 = RatFun::new(
        Poly::constant(two_a1),
        Poly::from_coeffs(vec![one.clone(), one.clone()]),
    );
    let s = a.mul(&one.sub(a));
    let s0 = RatFun::new(
        Poly::constant(s),
        Poly::from_coeffs(vec![K::zero(), one.clone(), one]),
    );
    Equation::new(lambda0, s0)
}

/// The hypergeometric-type family with all five coefficients.
pub fn hypergeometric_family<K: Field>(a2: K, a1: K, a0: K, b1: K, b0: K) -> HypergeometricFamily<K> {
    HypergeometricFamily { a2, a1, a0, b1, b0 }
}

/// q-Laguerre equation with integer parameters eta and n bound into the field.
pub fn q_laguerre_equation<K: Field>(q: &K, eta: i64, n: i64) -> QEquation<K> {
    let one = K::one();
    let qn = q.pow(n);
    // denominator (q-1) x (1 + qx) = (q-1) x + (q-1) q x^2
    let qm1 = q.sub(&one);
    let den = Poly::from_coeffs(vec![K::zero(), qm1.clone(), qm1.mul(q)]);
    // numerator q^{-1-eta} - 1 - (1 + q - q^n) x
    let num = Poly::from_coeffs(vec![
        q.pow(-1 - eta).sub(&one),
        one.add(q).sub(&qn).neg(),
    ]);
    let lambda0 = RatFun::new(num, den);
    // s0 = (q^n - 1) / ((q-1)^2 x (1 + qx))
    let qm1sq = qm1.mul(&qm1);
    let s_den = Poly::from_coeffs(vec![K::zero(), qm1sq.clone(), qm1sq.mul(q)]);
    let s0 = RatFun::new(Poly::constant(qn.sub(&one)), s_den);
    QEquation::new(lambda0, s0, q.clone())
}

/// Al-Salam-Carlitz equation; `a` may be any field element (e.g. 2 or q).
pub fn al_salam_carlitz_equation<K: Field>(q: &K, a: &K, n: i64) -> QEquation<K> {
    let one = K::one();
    let qn = q.pow(n);
    let q2n = q.pow(2 - n);
    // lambda0 = (q + aq - q^{2-n} x) / (a - aq)
    let den = a.mul(&one.sub(q));
    let lambda0 = RatFun::from_poly(
        Poly::from_coeffs(vec![q.mul(&one.add(a)), q2n.neg()]).scale(&den.inv()),
    );
    // s0 = -q^{2-n} (q^n - 1) / (a (q-1)^2)
    let qm1 = q.sub(&one);
    let s = q2n.mul(&qn.sub(&one)).neg().div(&a.mul(&qm1.mul(&qm1)));
    let s0 = RatFun::constant(s);
    QEquation::new(lambda0, s0, q.clone())
}

/// Stieltjes-Wigert equation with integer parameter n.
pub fn stieltjes_wigert_equation<K: Field>(q: &K, n: i64) -> QEquation<K> {
    let one = K::one();
    let qn = q.pow(n);
    let qm1 = q.sub(&one);
    // lambda0 = (1 - q(1 + q - q^n) x) / ((q-1) q^2 x^2)
    let num = Poly::from_coeffs(vec![one.clone(), q.mul(&one.add(q).sub(&qn)).neg()]);
    let den = Poly::monomial(qm1.mul(&q.mul(q)), 2);
    let lambda0 = RatFun::new(num, den);
    // s0 = (q^n - 1) / ((q-1)^2 q x^2)
    let s_den = Poly::monomial(qm1.mul(&qm1).mul(q), 2);
    let s0 = RatFun::new(Poly::constant(qn.sub(&one)), s_den);
    QEquation::new(lambda0, s0, q.clone())
}

/// A CLI preset: DSL sources plus the parameters they expect.
#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub operator: OperatorKind,
    pub lambda0: &'static str,
    pub s0: &'static str,
    /// Names the sources refer to (q excluded).
    pub params: &'static [&'static str],
    /// Bindings derived from the others when not given explicitly.
    pub derived: &'static [(&'static str, &'static str)],
    pub notes: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "euler",
        operator: OperatorKind::Delta,
        lambda0: "2*(a-1)/(1+x)",
        s0: "a*(1-a)/(x*(1+x))",
        params: &["a"],
        derived: &[],
        notes: "terminates at n when a = n+1; polynomial solution is the rising factorial (x)_n",
    },
    Preset {
        name: "hypergeometric",
        operator: OperatorKind::Delta,
        lambda0: "-(b1*x+b0)/(a2*x^2+a1*x+a0)",
        s0: "k/(a2*x^2+a1*x+a0)",
        params: &["a2", "a1", "a0", "b1", "b0", "k"],
        derived: &[("k", "n*(n-1)*a2 + n*b1")],
        notes: "bind k directly, or bind n to use the eigenvalue k = n(n-1)a2 + n b1",
    },
    Preset {
        name: "meixner",
        operator: OperatorKind::Delta,
        lambda0: "-((mu-1)*(x-n+1)+mu*delta)/(mu*(x+delta+1))",
        s0: "-k/(mu*(x+delta+1))",
        params: &["mu", "delta", "n", "k"],
        derived: &[("k", "n*(1-mu)")],
        notes: "a hypergeometric-family instance; k defaults to n(1-mu), which terminates at n",
    },
    Preset {
        name: "hermite-difference",
        operator: OperatorKind::Delta,
        lambda0: "a*x+b",
        s0: "gamma",
        params: &["a", "b", "gamma"],
        derived: &[],
        notes: "does not terminate for generic gamma (exit code 3); gamma = -n*a terminates at n",
    },
    Preset {
        name: "q-laguerre",
        operator: OperatorKind::Dq,
        lambda0: "(q^(-1-eta)-1-(1+q-q^n)*x)/((q-1)*x*(1+q*x))",
        s0: "(q^n-1)/((q-1)^2*x*(1+q*x))",
        params: &["eta", "n"],
        derived: &[],
        notes: "terminates at m = n; eta enters only the non-vanishing part of delta_m",
    },
    Preset {
        name: "al-salam-carlitz",
        operator: OperatorKind::Dq,
        lambda0: "(q+a*q-q^(2-n)*x)/(a-a*q)",
        s0: "-q^(2-n)*(q^n-1)/(a*(q-1)^2)",
        params: &["a", "n"],
        derived: &[],
        notes: "terminates at m = n for any nonzero a, e.g. a = 2 or a = q",
    },
    Preset {
        name: "stieltjes-wigert",
        operator: OperatorKind::Dq,
        lambda0: "(1-q*(1+q-q^n)*x)/((q-1)*q^2*x^2)",
        s0: "(q^n-1)/((q-1)^2*q*x^2)",
        params: &["n"],
        derived: &[],
        notes: "terminates at m = n; coefficients are Gaussian binomials times (-1)^k q^{k^2}",
    },
];

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{QExt, Rat};

    #[test]
    fn euler_coefficients() {
        let eq = euler_equation(&Rat::from_int(3));
        assert_eq!(eq.lambda0.to_string(), "(4)/(x + 1)");
        assert_eq!(eq.s0.to_string(), "(-6)/(x^2 + x)");
    }

    #[test]
    fn preset_lookup() {
        assert!(preset("euler").is_some());
        assert!(preset("stieltjes-wigert").is_some());
        assert!(preset("nope").is_none());
        for p in PRESETS {
            assert!(!p.lambda0.is_empty() && !p.s0.is_empty());
        }
    }

    #[test]
    fn q_equations_reject_degenerate_q() {
        let r = std::panic::catch_unwind(|| {
            stieltjes_wigert_equation(&Rat::from_int(1), 2)
        });
        assert!(r.is_err());
    }

    #[test]
    fn al_salam_carlitz_with_a_equal_q() {
        let q = QExt::q();
        let eq = al_salam_carlitz_equation(&q, &q, 2);
        assert!(eq.lambda0.is_polynomial());
        assert!(!eq.s0.is_zero());
    }
}
