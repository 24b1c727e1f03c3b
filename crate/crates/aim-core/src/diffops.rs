//! Difference and q-difference operators acting exactly on rational
//! functions, plus the first-order solvers used by the solution formulas.

use std::fmt;

use crate::exactfield::{Field, PoleError, Poly, Rat, RatFun};

/// Which second-order operator an equation is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// Forward difference: `Delta f(x) = f(x+1) - f(x)`.
    Delta,
    /// q-derivative: `D_q f(x) = (f(x) - f(qx)) / ((1-q) x)`.
    Dq,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Delta => write!(f, "delta"),
            OperatorKind::Dq => write!(f, "dq"),
        }
    }
}

/// Values of a function on the integer-spaced grid `x0, x0+1, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<K: Field> {
    pub x0: Rat,
    pub values: Vec<K>,
}

impl<K: Field> GridFunction<K> {
    pub fn new(x0: Rat, values: Vec<K>) -> Self {
        assert!(!values.is_empty(), "empty grid");
        GridFunction { x0, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Forward difference of the sampled values (one point shorter).
    pub fn delta_values(&self) -> Vec<K> {
        self.values
            .windows(2)
            .map(|w| w[1].sub(&w[0]))
            .collect()
    }
}

/// `f(x + k)`, exact substitution.
pub fn shift<K: Field>(f: &RatFun<K>, k: i64) -> RatFun<K> {
    if k == 0 {
        return f.clone();
    }
    RatFun::new(f.num().compose_shift(k), f.den().compose_shift(k))
}

/// Order-fold forward difference `Delta^order f`.
pub fn delta<K: Field>(f: &RatFun<K>, order: u32) -> RatFun<K> {
    let mut cur = f.clone();
    for _ in 0..order {
        cur = shift(&cur, 1).sub(&cur);
    }
    cur
}

/// Order-fold backward difference `Nabla^order f`.
pub fn nabla<K: Field>(f: &RatFun<K>, order: u32) -> RatFun<K> {
    let mut cur = f.clone();
    for _ in 0..order {
        cur = cur.sub(&shift(&cur, -1));
    }
    cur
}

/// `f(q^j x)`: the coefficient of x^k picks up q^{jk}.
pub fn qscale<K: Field>(f: &RatFun<K>, q: &K, j: i64) -> RatFun<K> {
    assert!(!q.is_zero(), "qscale with q = 0");
    if j == 0 {
        return f.clone();
    }
    let factor = q.pow(j);
    RatFun::new(
        f.num().compose_scale(&factor),
        f.den().compose_scale(&factor),
    )
}

/// Order-fold q-derivative. The removable factor x in the denominator
/// cancels under normalization, so `dq` of a polynomial is a polynomial.
pub fn dq<K: Field>(f: &RatFun<K>, q: &K, order: u32) -> RatFun<K> {
    assert!(!q.is_one(), "dq with q = 1");
    assert!(!q.is_zero(), "dq with q = 0");
    let scale = K::one().sub(q); // 1 - q
    let mut cur = f.clone();
    for _ in 0..order {
        let num = cur.sub(&qscale(&cur, q, 1));
        if num.is_zero() {
            return RatFun::zero();
        }
        let den = RatFun::from_poly(Poly::from_coeffs(vec![K::zero(), scale.clone()]));
        cur = num.div(&den);
    }
    cur
}

/// `(q; q)_n` as a polynomial in q.
pub fn q_pochhammer_q(n: usize) -> Poly<Rat> {
    let mut acc: Poly<Rat> = Poly::one();
    for j in 1..=n {
        // 1 - q^j
        let factor = Poly::one().sub(&Poly::monomial(Rat::from_int(1), j));
        acc = acc.mul(&factor);
    }
    acc
}

/// Gaussian binomial `[n k]_q` as a polynomial in q.
pub fn q_binomial(n: usize, k: usize) -> Poly<Rat> {
    if k > n {
        return Poly::zero();
    }
    q_pochhammer_q(n).exact_div(&q_pochhammer_q(k).mul(&q_pochhammer_q(n - k)))
}

/// Exact solution of `y(n+1) = lambda(n) y(n) + g(n)`, `y(n0) = y0`, written
/// as the product/sum closed form and evaluated for `n0 <= n <= n_end`.
pub fn solve_first_order_grid<K, L, G>(
    lambda: L,
    g: G,
    y0: K,
    n0: i64,
    n_end: i64,
) -> Result<GridFunction<K>, PoleError>
where
    K: Field,
    L: Fn(i64) -> Result<K, PoleError>,
    G: Fn(i64) -> Result<K, PoleError>,
{
    assert!(n_end >= n0, "empty solve range");
    let count = (n_end - n0) as usize + 1;
    let mut values = Vec::with_capacity(count);
    // prod[k] = prod_{i=n0}^{n0+k-1} lambda(i); running sums reuse it.
    let mut prod = vec![K::one()];
    for i in n0..n_end {
        let l = lambda(i)?;
        prod.push(prod.last().unwrap().mul(&l));
    }
    for n in n0..=n_end {
        let idx = (n - n0) as usize;
        let mut y = prod[idx].mul(&y0);
        for i in n0..n {
            // prod_{l=i+1}^{n-1} lambda(l) = prod[idx] / prod[i-n0+1]
            let j = (i - n0) as usize + 1;
            let tail = if prod[j].is_zero() {
                // recompute directly; the prefix product cannot be divided out
                let mut t = K::one();
                for l in (i + 1)..n {
                    t = t.mul(&lambda(l)?);
                }
                t
            } else {
                prod[idx].div(&prod[j])
            };
            y = y.add(&tail.mul(&g(i)?));
        }
        values.push(y);
    }
    Ok(GridFunction::new(Rat::from_int(n0), values))
}

/// Result of a truncated infinite product/series evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedValue {
    pub value: f64,
    /// Number of factors/terms consumed before the tail dropped below tol.
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QSolveError {
    Pole(PoleError),
    /// A product factor vanished on the geometric grid.
    VanishingFactor { index: usize },
    /// The tail did not fall below tol within the factor cap.
    Truncation { cap: usize },
}

impl fmt::Display for QSolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSolveError::Pole(p) => write!(f, "{p}"),
            QSolveError::VanishingFactor { index } => {
                write!(f, "product factor vanished at index {index}")
            }
            QSolveError::Truncation { cap } => {
                write!(f, "no convergence within {cap} factors")
            }
        }
    }
}

impl std::error::Error for QSolveError {}

impl From<PoleError> for QSolveError {
    fn from(e: PoleError) -> Self {
        QSolveError::Pole(e)
    }
}

const Q_FACTOR_CAP: usize = 10_000;

/// Approximate solution of `D_q y = alpha(x) y + beta(x)` continuous at 0:
/// the truncated infinite product plus series. Requires numeric `q` in (0,1).
pub fn solve_first_order_q(
    alpha: &RatFun<Rat>,
    beta: &RatFun<Rat>,
    y0: f64,
    x: &Rat,
    q: &Rat,
    tol: f64,
) -> Result<TruncatedValue, QSolveError> {
    let qf = q.to_f64();
    assert!(qf > 0.0 && qf < 1.0, "q must lie in (0, 1)");
    let one_minus_q = 1.0 - qf;
    let beta_is_zero = beta.is_zero();

    let mut point = x.clone(); // x * q^k
    let mut xqk = point.to_f64();
    let mut product = 1.0_f64; // prod_{j<=k} [1 - (1-q) x q^j alpha(x q^j)]
    let mut series = 0.0_f64;
    for k in 0..Q_FACTOR_CAP {
        let a = alpha.eval(&point)?.to_f64();
        let u = one_minus_q * xqk * a;
        let factor = 1.0 - u;
        if factor == 0.0 {
            return Err(QSolveError::VanishingFactor { index: k });
        }
        product *= factor;
        let term = if beta_is_zero {
            0.0
        } else {
            let b = beta.eval(&point)?.to_f64();
            xqk * one_minus_q * b / product
        };
        series += term;
        // tail: both the remaining factors and the remaining series terms
        // shrink geometrically once x q^k is small
        let series_tail = term.abs() * qf / one_minus_q;
        if u.abs() < tol && series_tail < tol {
            return Ok(TruncatedValue {
                value: y0 / product + series,
                terms: k + 1,
            });
        }
        point = Field::mul(&point, q);
        xqk = point.to_f64();
    }
    Err(QSolveError::Truncation { cap: Q_FACTOR_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::QExt;

    type R = RatFun<Rat>;
    type P = Poly<Rat>;

    fn over(n: &[i64], d: &[i64]) -> R {
        R::new(P::from_i64_coeffs(n), P::from_i64_coeffs(d))
    }

    #[test]
    fn shift_examples() {
        let x2 = R::from_poly(P::from_i64_coeffs(&[0, 0, 1]));
        assert_eq!(shift(&x2, 1), R::from_poly(P::from_i64_coeffs(&[1, 2, 1])));
        let f = over(&[1, 2], &[3, 0, 1]);
        assert_eq!(shift(&f, 0), f);
        let inv_x = over(&[1], &[0, 1]);
        assert_eq!(shift(&inv_x, -1), over(&[1], &[-1, 1]));
    }

    #[test]
    fn delta_examples() {
        let x2 = R::from_poly(P::from_i64_coeffs(&[0, 0, 1]));
        assert_eq!(delta(&x2, 1), R::from_poly(P::from_i64_coeffs(&[1, 2])));
        assert_eq!(delta(&x2, 2), R::from_i64(2));
        assert!(delta(&R::from_i64(17), 1).is_zero());
    }

    #[test]
    fn nabla_examples() {
        let x = R::x();
        assert_eq!(nabla(&x, 1), R::from_i64(1));
        let x2 = R::from_poly(P::from_i64_coeffs(&[0, 0, 1]));
        assert_eq!(nabla(&x2, 1), R::from_poly(P::from_i64_coeffs(&[-1, 2])));
        // nabla f = delta(f(x-1))
        let f = over(&[1, 1], &[5, 3, 1]);
        assert_eq!(nabla(&f, 1), delta(&shift(&f, -1), 1));
    }

    #[test]
    fn qscale_examples() {
        let q = QExt::q();
        let x2: RatFun<QExt> = RatFun::from_poly(Poly::monomial(QExt::one(), 2));
        let scaled = qscale(&x2, &q, 1);
        assert_eq!(scaled, RatFun::from_poly(Poly::monomial(QExt::q_pow(2), 2)));
        let f = RatFun::new(
            Poly::one(),
            Poly::from_coeffs(vec![QExt::one(), QExt::one()]),
        );
        assert_eq!(qscale(&f, &q, 0), f);
        // 1/(1+x) -> 1/(1+qx)
        let expect = RatFun::new(
            Poly::one(),
            Poly::from_coeffs(vec![QExt::one(), QExt::q()]),
        );
        assert_eq!(qscale(&f, &q, 1), expect);
    }

    #[test]
    fn dq_monomial() {
        let q = QExt::q();
        for n in 1..=5usize {
            let xn: RatFun<QExt> = RatFun::from_poly(Poly::monomial(QExt::one(), n));
            // D_q x^n = (1-q^n)/(1-q) x^{n-1}
            let qn = QExt::one().sub(&q.pow(n as i64));
            let coeff = qn.div(&QExt::one().sub(&q));
            assert_eq!(dq(&xn, &q, 1), RatFun::from_poly(Poly::monomial(coeff, n - 1)));
        }
        assert!(dq(&RatFun::<QExt>::from_i64(3), &q, 1).is_zero());
    }

    #[test]
    fn dq_second_order_is_q_factorial() {
        // D_q^2 x^2 = (1+q) * 1 = [2]_q!
        let q = QExt::q();
        let x2: RatFun<QExt> = RatFun::from_poly(Poly::monomial(QExt::one(), 2));
        let expect = RatFun::constant(QExt::one().add(&q));
        assert_eq!(dq(&x2, &q, 2), expect);
    }

    #[test]
    fn q_binomial_small_values() {
        // [4 2]_q = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(q_binomial(4, 2), P::from_i64_coeffs(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 0), P::one());
        assert_eq!(q_binomial(5, 5), P::one());
        assert_eq!(q_binomial(3, 7), P::zero());
        // symmetry
        assert_eq!(q_binomial(7, 3), q_binomial(7, 4));
    }

    #[test]
    fn first_order_grid_examples() {
        let one = |_: i64| Ok(Rat::from_int(1));
        let zero = |_: i64| Ok(Rat::from_int(0));
        let g = solve_first_order_grid(one, zero, Rat::from_int(5), 0, 6).unwrap();
        assert!(g.values.iter().all(|v| *v == Rat::from_int(5)));

        let two = |_: i64| Ok(Rat::from_int(2));
        let g = solve_first_order_grid(two, zero, Rat::from_int(1), 0, 10).unwrap();
        for (n, v) in g.values.iter().enumerate() {
            assert_eq!(*v, Rat::from_int(1 << n));
        }

        let g = solve_first_order_grid(one, |_| Ok(Rat::from_int(1)), Rat::from_int(0), 0, 9).unwrap();
        for (n, v) in g.values.iter().enumerate() {
            assert_eq!(*v, Rat::from_int(n as i64));
        }
    }

    #[test]
    fn first_order_grid_matches_recurrence() {
        // closed form (product/sum) against the defining recurrence
        let lambda = |i: i64| over(&[1, 1], &[2, 1]).eval_i64(i);
        let g_fn = |i: i64| over(&[1], &[1, 1]).eval_i64(i);
        let got = solve_first_order_grid(&lambda, &g_fn, Rat::ratio(3, 7), 1, 12).unwrap();
        let mut y = Rat::ratio(3, 7);
        for (k, v) in got.values.iter().enumerate() {
            assert_eq!(*v, y, "mismatch at offset {k}");
            let i = 1 + k as i64;
            y = lambda(i).unwrap().mul(&y).add(&g_fn(i).unwrap());
        }
    }

    #[test]
    fn first_order_q_trivial_and_linear() {
        let zero = R::zero();
        let q = Rat::ratio(1, 2);
        let x = Rat::ratio(1, 3);
        let r = solve_first_order_q(&zero, &zero, 4.0, &x, &q, 1e-13).unwrap();
        assert_eq!(r.value, 4.0);

        // alpha = 0, beta = 1, y0 = 0: y(x) = sum x q^k (1-q) = x
        let one = R::one();
        let r = solve_first_order_q(&zero, &one, 0.0, &x, &q, 1e-13).unwrap();
        assert!((r.value - x.to_f64()).abs() < 1e-11, "got {}", r.value);
    }

    #[test]
    fn first_order_q_constant_alpha_matches_direct_product() {
        // alpha = c: y(x) = y0 / prod(1 - (1-q) x q^k c), direct product oracle
        let c = R::one();
        let q = Rat::ratio(1, 2);
        let x = Rat::ratio(1, 3);
        let r = solve_first_order_q(&c, &R::zero(), 1.0, &x, &q, 1e-14).unwrap();
        let mut prod = 1.0;
        for k in 0..200 {
            prod *= 1.0 - 0.5 * (1.0 / 3.0) * 0.5f64.powi(k);
        }
        let expect = 1.0 / prod;
        assert!((r.value - expect).abs() < 1e-12, "{} vs {expect}", r.value);
    }

    #[test]
    fn first_order_q_pole_reported() {
        // beta has a pole at x q^1 = 1/6 when x = 1/3, q = 1/2
        let beta = R::new(P::one(), P::from_coeffs(vec![Rat::ratio(-1, 6), Rat::from_int(1)]));
        let err = solve_first_order_q(&R::zero(), &beta, 1.0, &Rat::ratio(1, 3), &Rat::ratio(1, 2), 1e-12)
            .unwrap_err();
        assert!(matches!(err, QSolveError::Pole(_)));

        // a product factor that lands exactly on zero is reported too:
        // with alpha = 1/(x - p) the node right before the pole gives
        // (1-q) t / (t - p) = 1 at t = p/q
        let alpha = R::new(P::one(), P::from_coeffs(vec![Rat::ratio(-1, 6), Rat::from_int(1)]));
        let err = solve_first_order_q(&alpha, &R::zero(), 1.0, &Rat::ratio(1, 3), &Rat::ratio(1, 2), 1e-12)
            .unwrap_err();
        assert!(matches!(err, QSolveError::VanishingFactor { index: 0 }));
    }
}
