//! The q-analogue of the iteration engine, for equations
//! `D_q^2 y = lambda_0 * D_q y + s_0 * y`.
//!
//! The recursion replaces the unit shift by the substitution `x -> qx`:
//!
//! ```text
//! lambda_m = D_q lambda_{m-1} + lambda_{m-1}(qx) lambda_0 + s_{m-1}(qx)
//! s_m      = D_q s_{m-1}      + lambda_{m-1}(qx) s_0
//! ```
//!
//! Termination is decided by the same exact test `delta_m == 0`, by default
//! over the symbolic field Q(q); a numeric q in (0,1) is used only for the
//! truncated-product cross-checks.

use crate::daim::{PolynomialSolution, SolveError, TerminationReport};
use crate::diffops::{dq, qscale, solve_first_order_q, QSolveError, TruncatedValue};
use crate::exactfield::{Field, Poly, Rat, RatFun};

pub use crate::daim::{AimTrace as QAimTrace, TraceEntry};

/// A second-order q-difference equation over a field containing q.
#[derive(Clone, Debug, PartialEq)]
pub struct QEquation<K: Field> {
    pub lambda0: RatFun<K>,
    pub s0: RatFun<K>,
    pub q: K,
}

impl<K: Field> QEquation<K> {
    pub fn new(lambda0: RatFun<K>, s0: RatFun<K>, q: K) -> Self {
        assert!(!q.is_zero() && !q.is_one(), "q must differ from 0 and 1");
        QEquation { lambda0, s0, q }
    }
}

fn step<K: Field>(eq: &QEquation<K>, prev: &TraceEntry<K>) -> (RatFun<K>, RatFun<K>) {
    let scaled_lambda = qscale(&prev.lambda, &eq.q, 1);
    let scaled_s = qscale(&prev.s, &eq.q, 1);
    let lambda = dq(&prev.lambda, &eq.q, 1)
        .add(&scaled_lambda.mul(&eq.lambda0))
        .add(&scaled_s);
    let s = dq(&prev.s, &eq.q, 1).add(&scaled_lambda.mul(&eq.s0));
    (lambda, s)
}

fn extend<K: Field>(eq: &QEquation<K>, trace: &mut QAimTrace<K>) {
    let (lambda, s) = if trace.max_n() < 0 {
        (eq.lambda0.clone(), eq.s0.clone())
    } else {
        step(eq, trace.entry(trace.max_n()))
    };
    trace.push(lambda, s);
}

/// Runs the q-recursion up to index `m_max` inclusive.
pub fn q_iterate<K: Field>(eq: &QEquation<K>, m_max: usize) -> QAimTrace<K> {
    let mut trace = QAimTrace::seed();
    while trace.max_n() < m_max as i64 {
        extend(eq, &mut trace);
    }
    trace
}

/// Smallest m with `delta_m == 0` (exact zero test), verifying that the
/// next delta vanishes as well.
pub fn q_find_termination<K: Field>(eq: &QEquation<K>, m_max: usize) -> TerminationReport {
    let (_, report) = q_find_termination_with_trace(eq, m_max);
    report
}

pub fn q_find_termination_with_trace<K: Field>(
    eq: &QEquation<K>,
    m_max: usize,
) -> (QAimTrace<K>, TerminationReport) {
    let mut trace = QAimTrace::seed();
    let mut hit = None;
    while trace.max_n() < m_max as i64 {
        extend(eq, &mut trace);
        let e = trace.entry(trace.max_n());
        if e.delta.is_zero() {
            hit = Some(e.n as usize);
            break;
        }
    }
    if let Some(m) = hit {
        extend(eq, &mut trace);
        assert!(
            trace.entry(m as i64 + 1).delta.is_zero(),
            "delta_{} vanished but delta_{} did not",
            m,
            m + 1
        );
    }
    let report = TerminationReport {
        terminated_at: hit,
        max_checked: trace.max_n().max(0) as usize,
        degenerate: trace.degenerate(),
    };
    (trace, report)
}

/// Solves the degree-n ansatz in the D_q equation. Solutions are normalized
/// to constant term 1 when possible (matching the usual `y(x)/y(0)`
/// displays), otherwise to a monic leading coefficient.
pub fn q_polynomial_solution<K: Field>(
    eq: &QEquation<K>,
    n: usize,
) -> Result<Vec<PolynomialSolution<K>>, SolveError> {
    let g = eq.lambda0.den().gcd(eq.s0.den());
    let common = eq.lambda0.den().mul(&eq.s0.den().exact_div(&g));
    let a = eq.lambda0.num().mul(&common.exact_div(eq.lambda0.den()));
    let b = eq.s0.num().mul(&common.exact_div(eq.s0.den()));

    let dq_poly = |p: &Poly<K>| -> Poly<K> {
        let r = dq(&RatFun::from_poly(p.clone()), &eq.q, 1);
        r.as_poly().expect("dq of a polynomial is a polynomial").clone()
    };

    let columns: Vec<Poly<K>> = (0..=n)
        .map(|k| {
            let yk = Poly::monomial(K::one(), k);
            let d1 = dq_poly(&yk);
            let d2 = dq_poly(&d1);
            common.mul(&d2).sub(&a.mul(&d1)).sub(&b.mul(&yk))
        })
        .collect();

    let rows = columns
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .map_or(1, |d| d + 1);
    let mut m = crate::exactfield::Matrix::zero(rows, n + 1);
    for (k, p) in columns.iter().enumerate() {
        for r in 0..rows {
            *m.at_mut(r, k) = p.coeff(r);
        }
    }
    let basis = crate::exactfield::nullspace(&m);
    if basis.is_empty() {
        return Err(SolveError::EmptyNullspace { n });
    }
    Ok(basis
        .into_iter()
        .map(|c| {
            let raw = Poly::from_coeffs(c);
            let c0 = raw.coeff(0);
            let poly = if c0.is_zero() {
                raw.monic()
            } else {
                raw.scale(&c0.inv())
            };
            let residual = q_verify(eq, &poly);
            PolynomialSolution {
                degree: poly.degree().expect("nullspace vector is nonzero"),
                verified: residual.is_zero(),
                poly,
                residual,
            }
        })
        .collect())
}

/// Exact residual `D_q^2 y - lambda_0 D_q y - s_0 y`.
pub fn q_verify<K: Field>(eq: &QEquation<K>, y: &Poly<K>) -> RatFun<K> {
    let yr = RatFun::from_poly(y.clone());
    let d1 = dq(&yr, &eq.q, 1);
    let d2 = dq(&yr, &eq.q, 2);
    d2.sub(&eq.lambda0.mul(&d1)).sub(&eq.s0.mul(&yr))
}

/// Numeric evaluation of the first solution by the truncated infinite
/// product, normalized to `y(0) = 1`. Requires a numeric q in (0, 1). The
/// value is meant to be compared against the exact polynomial at the same x.
pub fn q_product_solution_value(
    eq: &QEquation<Rat>,
    n: usize,
    x: &Rat,
    tol: f64,
) -> Result<TruncatedValue, QSolveError> {
    if x.is_zero() {
        // empty product
        return Ok(TruncatedValue { value: 1.0, terms: 0 });
    }
    let trace = q_iterate(eq, n.saturating_sub(1));
    let prev = trace.entry(n as i64 - 1);
    // y solves D_q y = -(s_{n-1}/lambda_{n-1}) y, so reuse the first-order
    // q-solver with alpha = -s/lambda and beta = 0
    let alpha = prev
        .s
        .checked_div(&prev.lambda)
        .expect("lambda_{n-1} vanishes identically")
        .neg();
    solve_first_order_q(&alpha, &RatFun::zero(), 1.0, x, &eq.q, tol)
}

/// True iff the q-Wronskian `y1 * D_q y2 - y2 * D_q y1` is nonzero at every
/// aligned sample point.
pub fn q_independence_check<K: Field>(
    y1_values: &[K],
    y2_values: &[K],
    dqy1_values: &[K],
    dqy2_values: &[K],
) -> bool {
    assert!(
        y1_values.len() == y2_values.len()
            && y1_values.len() == dqy1_values.len()
            && y1_values.len() == dqy2_values.len(),
        "sample lists must be aligned"
    );
    y1_values
        .iter()
        .zip(y2_values)
        .zip(dqy1_values.iter().zip(dqy2_values))
        .all(|((y1, y2), (d1, d2))| !y1.mul(d2).sub(&y2.mul(d1)).is_zero())
}
