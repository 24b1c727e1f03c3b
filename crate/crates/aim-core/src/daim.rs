//! The discrete asymptotic iteration engine for equations
//! `Delta^2 y = lambda_0 * Delta y + s_0 * y`.
//!
//! Iterating
//!
//! ```text
//! lambda_n = Delta lambda_{n-1} + lambda_{n-1}(x+1) lambda_0 + s_{n-1}(x+1)
//! s_n      = Delta s_{n-1}      + lambda_{n-1}(x+1) s_0
//! ```
//!
//! with the convention `lambda_{-1} = -1`, `s_{-1} = 0`, the equation has a
//! polynomial solution of degree at most n exactly when
//! `delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n` vanishes identically.
//! Everything here is decided by exact zero tests; there are no numeric
//! thresholds in the Delta engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::diffops::{delta, shift, GridFunction};
use crate::exactfield::{nullspace, Field, Matrix, Poly, Rat, RatFun};

/// A second-order forward-difference equation, held as the coefficient pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation<K: Field> {
    pub lambda0: RatFun<K>,
    pub s0: RatFun<K>,
}

impl<K: Field> Equation<K> {
    pub fn new(lambda0: RatFun<K>, s0: RatFun<K>) -> Self {
        Equation { lambda0, s0 }
    }
}

/// One row of the iteration: the pair at index n together with
/// `delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n` (zero for the n = -1 row).
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry<K: Field> {
    pub n: i64,
    pub lambda: RatFun<K>,
    pub s: RatFun<K>,
    pub delta: RatFun<K>,
}

/// Iteration history indexed from the convention entry n = -1 upward.
#[derive(Clone, Debug, PartialEq)]
pub struct AimTrace<K: Field> {
    entries: Vec<TraceEntry<K>>,
}

impl<K: Field> AimTrace<K> {
    /// A fresh trace holding only the n = -1 convention entry.
    pub fn seed() -> Self {
        AimTrace {
            entries: vec![TraceEntry {
                n: -1,
                lambda: RatFun::from_i64(-1),
                s: RatFun::zero(),
                delta: RatFun::zero(),
            }],
        }
    }

    /// Highest index present (at least -1).
    pub fn max_n(&self) -> i64 {
        self.entries.len() as i64 - 2
    }

    pub fn entry(&self, n: i64) -> &TraceEntry<K> {
        assert!(n >= -1 && n <= self.max_n(), "trace has no entry {n}");
        &self.entries[(n + 1) as usize]
    }

    pub fn entries(&self) -> &[TraceEntry<K>] {
        &self.entries
    }

    /// Appends the pair at index `max_n + 1`, computing its delta.
    pub fn push(&mut self, lambda: RatFun<K>, s: RatFun<K>) {
        let prev = self.entries.last().expect("seeded trace");
        let delta = lambda.mul(&prev.s).sub(&prev.lambda.mul(&s));
        self.entries.push(TraceEntry {
            n: prev.n + 1,
            lambda,
            s,
            delta,
        });
    }

    /// True when some `lambda_n` with n >= 0 is identically zero.
    pub fn degenerate(&self) -> bool {
        self.entries.iter().skip(1).any(|e| e.lambda.is_zero())
    }
}

fn step<K: Field>(eq: &Equation<K>, prev: &TraceEntry<K>) -> (RatFun<K>, RatFun<K>) {
    let shifted_lambda = shift(&prev.lambda, 1);
    let shifted_s = shift(&prev.s, 1);
    let lambda = delta(&prev.lambda, 1)
        .add(&shifted_lambda.mul(&eq.lambda0))
        .add(&shifted_s);
    let s = delta(&prev.s, 1).add(&shifted_lambda.mul(&eq.s0));
    (lambda, s)
}

fn extend<K: Field>(eq: &Equation<K>, trace: &mut AimTrace<K>) {
    let (lambda, s) = if trace.max_n() < 0 {
        (eq.lambda0.clone(), eq.s0.clone())
    } else {
        step(eq, trace.entry(trace.max_n()))
    };
    trace.push(lambda, s);
}

/// Runs the recursion up to index `n_max` inclusive.
pub fn iterate<K: Field>(eq: &Equation<K>, n_max: usize) -> AimTrace<K> {
    let mut trace = AimTrace::seed();
    while trace.max_n() < n_max as i64 {
        extend(eq, &mut trace);
    }
    trace
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationReport {
    /// Smallest n with `delta_n == 0`, if one exists within the bound.
    pub terminated_at: Option<usize>,
    /// Highest index whose delta was tested.
    pub max_checked: usize,
    /// Some `lambda_n` vanished identically along the way.
    pub degenerate: bool,
}

/// Scans an existing trace for the first identically-zero delta.
pub fn scan_termination<K: Field>(trace: &AimTrace<K>) -> Option<usize> {
    trace
        .entries()
        .iter()
        .skip(1)
        .find(|e| e.delta.is_zero())
        .map(|e| e.n as usize)
}

/// Iterates until `delta_n == 0` or the bound is reached. On a hit the next
/// delta is also computed and checked (it must vanish too).
pub fn find_termination<K: Field>(eq: &Equation<K>, n_max: usize) -> TerminationReport {
    let (_, report) = find_termination_with_trace(eq, n_max);
    report
}

pub fn find_termination_with_trace<K: Field>(
    eq: &Equation<K>,
    n_max: usize,
) -> (AimTrace<K>, TerminationReport) {
    let mut trace = AimTrace::seed();
    let mut hit = None;
    while trace.max_n() < n_max as i64 {
        extend(eq, &mut trace);
        let e = trace.entry(trace.max_n());
        if e.delta.is_zero() {
            hit = Some(e.n as usize);
            break;
        }
    }
    if let Some(n) = hit {
        extend(eq, &mut trace);
        assert!(
            trace.entry(n as i64 + 1).delta.is_zero(),
            "delta_{} vanished but delta_{} did not",
            n,
            n + 1
        );
    }
    let report = TerminationReport {
        terminated_at: hit,
        max_checked: trace.max_n().max(0) as usize,
        degenerate: trace.degenerate(),
    };
    (trace, report)
}

/// An extracted polynomial solution with its exact verification status.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSolution<K: Field> {
    pub poly: Poly<K>,
    pub degree: usize,
    pub verified: bool,
    pub residual: RatFun<K>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    /// The ansatz system has a trivial kernel: the claimed termination index
    /// does not correspond to a polynomial solution.
    EmptyNullspace { n: usize },
    /// A candidate did not back-substitute to zero.
    Unverified { residual: String },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::EmptyNullspace { n } => {
                write!(f, "no polynomial solution of degree <= {n}")
            }
            SolveError::Unverified { residual } => {
                write!(f, "candidate failed verification, residual {residual}")
            }
        }
    }
}

impl std::error::Error for SolveError {}

fn poly_delta<K: Field>(p: &Poly<K>) -> Poly<K> {
    p.compose_shift(1).sub(p)
}

/// Columns of the ansatz system: for `y = sum c_k x^k`, the polynomial
/// `D * Delta^2 x^k - A * Delta x^k - B * x^k` where `lambda_0 = A/D` and
/// `s_0 = B/D` over the common denominator D.
fn ansatz_columns<K: Field, F>(eq: &Equation<K>, n: usize, second_diff: F) -> Vec<Poly<K>>
where
    F: Fn(&Poly<K>) -> (Poly<K>, Poly<K>),
{
    let g = eq.lambda0.den().gcd(eq.s0.den());
    let common = eq.lambda0.den().mul(&eq.s0.den().exact_div(&g));
    let a = eq.lambda0.num().mul(&common.exact_div(eq.lambda0.den()));
    let b = eq.s0.num().mul(&common.exact_div(eq.s0.den()));
    (0..=n)
        .map(|k| {
            let yk = Poly::monomial(K::one(), k);
            let (d1, d2) = second_diff(&yk);
            common.mul(&d2).sub(&a.mul(&d1)).sub(&b.mul(&yk))
        })
        .collect()
}

fn solutions_from_columns<K: Field>(
    columns: Vec<Poly<K>>,
    n: usize,
) -> Result<Vec<Vec<K>>, SolveError> {
    let rows = columns
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .map_or(1, |d| d + 1);
    let mut m = Matrix::zero(rows, n + 1);
    for (k, p) in columns.iter().enumerate() {
        for r in 0..rows {
            *m.at_mut(r, k) = p.coeff(r);
        }
    }
    let basis = nullspace(&m);
    if basis.is_empty() {
        return Err(SolveError::EmptyNullspace { n });
    }
    Ok(basis)
}

/// Solves the degree-n ansatz and returns every independent polynomial
/// solution, normalized to a monic leading coefficient and residual-verified.
/// More than one entry means both independent solutions are polynomial.
pub fn polynomial_solution<K: Field>(
    eq: &Equation<K>,
    n: usize,
) -> Result<Vec<PolynomialSolution<K>>, SolveError> {
    let columns = ansatz_columns(eq, n, |yk| {
        let d1 = poly_delta(yk);
        let d2 = poly_delta(&d1);
        (d1, d2)
    });
    let basis = solutions_from_columns(columns, n)?;
    Ok(basis
        .into_iter()
        .map(|c| {
            let poly = Poly::from_coeffs(c).monic();
            let residual = verify(eq, &poly);
            PolynomialSolution {
                degree: poly.degree().expect("nullspace vector is nonzero"),
                verified: residual.is_zero(),
                poly,
                residual,
            }
        })
        .collect())
}

/// Exact residual `Delta^2 y - lambda_0 Delta y - s_0 y`; zero iff `y`
/// solves the equation.
pub fn verify<K: Field>(eq: &Equation<K>, y: &Poly<K>) -> RatFun<K> {
    let yr = RatFun::from_poly(y.clone());
    let d1 = delta(&yr, 1);
    let d2 = delta(&yr, 2);
    d2.sub(&eq.lambda0.mul(&d1)).sub(&eq.s0.mul(&yr))
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridError {
    /// A coefficient has a pole at an integer node.
    Pole { point: i64 },
    /// `lambda_{n-1}` vanishes at a node where the formula divides by it.
    ZeroLambda { point: i64 },
    /// The two constructed solutions are dependent at a node.
    ZeroCasorati { point: i64 },
    /// A constructed grid failed the exact residual check.
    ResidualNonzero { point: i64 },
    /// The supplied polynomial solution vanishes on the grid.
    ZeroOfSolution { point: i64 },
    /// The reduction lemma requires a verified polynomial solution.
    UnverifiedSolution,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::Pole { point } => write!(f, "pole at grid point {point}"),
            GridError::ZeroLambda { point } => {
                write!(f, "lambda vanishes at grid point {point}")
            }
            GridError::ZeroCasorati { point } => {
                write!(f, "Casorati determinant vanishes at grid point {point}")
            }
            GridError::ResidualNonzero { point } => {
                write!(f, "residual is nonzero at grid point {point}")
            }
            GridError::ZeroOfSolution { point } => {
                write!(f, "first solution vanishes at grid point {point}")
            }
            GridError::UnverifiedSolution => {
                write!(f, "order reduction requires a verified solution")
            }
        }
    }
}

impl std::error::Error for GridError {}

fn eval_at<K: Field>(f: &RatFun<K>, i: i64) -> Result<K, GridError> {
    f.eval_i64(i).map_err(|_| GridError::Pole { point: i })
}

/// `1 - s_{n-1}/lambda_{n-1}`, formed as a normalized rational function so
/// that removable singularities (shared zeros of s and lambda) cancel before
/// any point is plugged in.
fn product_factor_fun<K: Field>(
    lam: &RatFun<K>,
    s: &RatFun<K>,
) -> Result<RatFun<K>, GridError> {
    if lam.is_zero() {
        return Err(GridError::ZeroLambda { point: 0 });
    }
    Ok(RatFun::one().sub(&s.div(lam)))
}

/// First solution by the product formula:
/// `y(x) = prod_{i=x0}^{x-1} [1 - s_{n-1}(i)/lambda_{n-1}(i)]`, `y(x0) = 1`.
/// A pole of the normalized ratio at a node is reported with the point.
pub fn product_solution_values<K: Field>(
    eq: &Equation<K>,
    n: usize,
    x0: i64,
    x_end: i64,
) -> Result<GridFunction<K>, GridError> {
    assert!(x_end >= x0, "empty grid");
    let trace = iterate(eq, n.saturating_sub(1));
    let prev = trace.entry(n as i64 - 1);
    let factor = product_factor_fun(&prev.lambda, &prev.s)?;
    let mut values = vec![K::one()];
    for i in x0..x_end {
        values.push(values.last().unwrap().mul(&eval_at(&factor, i)?));
    }
    Ok(GridFunction::new(Rat::from_int(x0), values))
}

/// Checks `Delta^2 y - lambda_0 Delta y - s_0 y = 0` exactly at every
/// interior node of the sampled grid.
pub fn check_residual_on_grid<K: Field>(
    eq: &Equation<K>,
    grid: &GridFunction<K>,
) -> Result<(), GridError> {
    let x0 = grid.x0.to_i64().expect("integer grid");
    for w in 0..grid.len().saturating_sub(2) {
        let x = x0 + w as i64;
        let y = &grid.values[w];
        let y1 = &grid.values[w + 1];
        let y2 = &grid.values[w + 2];
        let d1 = y1.sub(y);
        let d2 = y2.sub(y1).sub(&d1);
        let r = d2
            .sub(&eval_at(&eq.lambda0, x)?.mul(&d1))
            .sub(&eval_at(&eq.s0, x)?.mul(y));
        if !r.is_zero() {
            return Err(GridError::ResidualNonzero { point: x });
        }
    }
    Ok(())
}

/// Second solution sampled on a grid, with its Casorati certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondSolutionSample<K: Field> {
    pub grid: GridFunction<K>,
    pub n0: i64,
    pub m: i64,
    /// `y1(x) y2(x+1) - y1(x+1) y2(x)` at consecutive nodes; all nonzero.
    pub casorati_values: Vec<K>,
}

/// Second solution by the double product/sum formula (the inhomogeneous part
/// of the general solution), evaluated exactly on `x = n0 ... x_end`. The
/// result is validated: the residual must vanish at every interior node and
/// the Casorati determinant against the product solution must not.
pub fn second_solution_values<K: Field>(
    eq: &Equation<K>,
    n: usize,
    n0: i64,
    m: i64,
    x_end: i64,
) -> Result<SecondSolutionSample<K>, GridError> {
    assert!(m >= 0, "m must be non-negative");
    assert!(x_end >= n0 + 2, "grid too short to validate");
    let trace = iterate(eq, n);
    let prev = trace.entry(n as i64 - 1);
    let cur = trace.entry(n as i64);

    // rho = 1 - s_{n-1}/lambda_{n-1} and tau = 1 + lambda_n/lambda_{n-1},
    // both normalized as rational functions before evaluation
    if prev.lambda.is_zero() {
        return Err(GridError::ZeroLambda { point: n0 });
    }
    let rho_fun = product_factor_fun(&prev.lambda, &prev.s)?;
    let tau_fun = RatFun::one().add(&cur.lambda.div(&prev.lambda));
    let mut rho_memo: BTreeMap<i64, K> = BTreeMap::new();
    let mut tau_memo: BTreeMap<i64, K> = BTreeMap::new();
    let rho = |l: i64, rho_memo: &mut BTreeMap<i64, K>| -> Result<K, GridError> {
        if let Some(v) = rho_memo.get(&l) {
            return Ok(v.clone());
        }
        let v = eval_at(&rho_fun, l)?;
        rho_memo.insert(l, v.clone());
        Ok(v)
    };
    let tau = |j: i64, tau_memo: &mut BTreeMap<i64, K>| -> Result<K, GridError> {
        if let Some(v) = tau_memo.get(&j) {
            return Ok(v.clone());
        }
        let v = eval_at(&tau_fun, j)?;
        tau_memo.insert(j, v.clone());
        Ok(v)
    };

    let mut values = Vec::with_capacity((x_end - n0) as usize + 1);
    for x in n0..=x_end {
        let mut sum = K::zero();
        for i in n0..x {
            let lv = eval_at(&prev.lambda, i)?;
            if lv.is_zero() {
                return Err(GridError::ZeroLambda { point: i });
            }
            let mut term = lv.inv();
            for l in (i + 1)..x {
                term = term.mul(&rho(l, &mut rho_memo)?);
            }
            for j in n0..=(i - m - 1) {
                term = term.mul(&tau(j, &mut tau_memo)?);
            }
            for k in 0..m {
                term = term.mul(&tau(i - m + k, &mut tau_memo)?);
            }
            sum = sum.add(&term);
        }
        values.push(sum);
    }
    let grid = GridFunction::new(Rat::from_int(n0), values);
    check_residual_on_grid(eq, &grid)?;

    let first = product_solution_values(eq, n, n0, x_end)?;
    let casorati_values = casorati(&first, &grid, n0)?;
    Ok(SecondSolutionSample {
        grid,
        n0,
        m,
        casorati_values,
    })
}

fn casorati<K: Field>(
    y1: &GridFunction<K>,
    y2: &GridFunction<K>,
    x0: i64,
) -> Result<Vec<K>, GridError> {
    let len = y1.len().min(y2.len());
    let mut out = Vec::with_capacity(len.saturating_sub(1));
    for w in 0..len.saturating_sub(1) {
        let c = y1.values[w]
            .mul(&y2.values[w + 1])
            .sub(&y1.values[w + 1].mul(&y2.values[w]));
        if c.is_zero() {
            return Err(GridError::ZeroCasorati { point: x0 + w as i64 });
        }
        out.push(c);
    }
    Ok(out)
}

/// Second solution by order reduction through a known polynomial solution g:
/// with `a_1 = -lambda_0`, sums the telescoped first-order solution. The
/// returned grid satisfies the equation exactly at interior nodes.
pub fn reduce_order_second_solution<K: Field>(
    eq: &Equation<K>,
    g: &PolynomialSolution<K>,
    n0: i64,
    x_end: i64,
) -> Result<GridFunction<K>, GridError> {
    if !g.verified {
        return Err(GridError::UnverifiedSolution);
    }
    assert!(x_end >= n0 + 2, "grid too short to validate");
    let gval = |i: i64| -> Result<K, GridError> {
        let v = g.poly.eval(&K::from_i64(i));
        if v.is_zero() {
            return Err(GridError::ZeroOfSolution { point: i });
        }
        Ok(v)
    };
    // inner factor: (2 - a1(j)) g(j+1)/g(j+2) - 1 with a1 = -lambda_0
    let inner = |j: i64| -> Result<K, GridError> {
        let two_minus_a1 = K::from_i64(2).add(&eval_at(&eq.lambda0, j)?);
        Ok(two_minus_a1.mul(&gval(j + 1)?).div(&gval(j + 2)?).sub(&K::one()))
    };
    let mut values = Vec::with_capacity((x_end - n0) as usize + 1);
    for x in n0..=x_end {
        let mut sum = K::zero();
        for i in n0..x {
            let mut term = gval(i + 1)?;
            for l in (i + 1)..x {
                term = term.mul(&gval(l + 1)?).div(&gval(l)?);
            }
            for j in n0..i {
                term = term.mul(&inner(j)?);
            }
            sum = sum.add(&term);
        }
        values.push(sum);
    }
    let grid = GridFunction::new(Rat::from_int(n0), values);
    check_residual_on_grid(eq, &grid)?;
    Ok(grid)
}

/// The hypergeometric-type difference equation
/// `(a2 x^2 + a1 x + a0) Delta^2 y + (b1 x + b0) Delta y - k y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricFamily<K: Field> {
    pub a2: K,
    pub a1: K,
    pub a0: K,
    pub b1: K,
    pub b0: K,
}

impl<K: Field> HypergeometricFamily<K> {
    /// The eigenvalue `k = n(n-1) a2 + n b1` that makes the iteration
    /// terminate at index n.
    pub fn eigenvalue(&self, n: usize) -> K {
        let n_elem = K::from_i64(n as i64);
        let n_minus_1 = K::from_i64(n as i64 - 1);
        n_elem.mul(&n_minus_1).mul(&self.a2).add(&n_elem.mul(&self.b1))
    }

    /// The equation in iteration form for a given k.
    pub fn equation(&self, k: &K) -> Equation<K> {
        let denom = Poly::from_coeffs(vec![self.a0.clone(), self.a1.clone(), self.a2.clone()]);
        let b = Poly::from_coeffs(vec![self.b0.clone(), self.b1.clone()]);
        Equation {
            lambda0: RatFun::new(b.neg(), denom.clone()),
            s0: RatFun::new(Poly::constant(k.clone()), denom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rat;

    type P = Poly<Rat>;
    type R = RatFun<Rat>;

    /// lambda_0 = 2(a-1)/(1+x), s_0 = a(1-a)/(x(1+x))
    pub fn euler_equation(a: Rat) -> Equation<Rat> {
        let two_a1 = Rat::from_int(2).mul(&a.sub(&Rat::from_int(1)));
        let lambda0 = R::new(P::constant(two_a1), P::from_i64_coeffs(&[1, 1]));
        let s = a.mul(&Rat::from_int(1).sub(&a));
        let s0 = R::new(P::constant(s), P::from_i64_coeffs(&[0, 1, 1]));
        Equation::new(lambda0, s0)
    }

    fn rising(base: i64, n: usize) -> P {
        // (x + base)(x + base + 1) ... (x + base + n - 1)
        let mut acc = P::one();
        for k in 0..n as i64 {
            acc = acc.mul(&P::from_i64_coeffs(&[base + k, 1]));
        }
        acc
    }

    #[test]
    fn euler_first_step_matches_closed_form() {
        // a = 3: lambda_1 = 6/((1+x)(2+x)), s_1 = -12/(x(1+x)(2+x))
        let eq = euler_equation(Rat::from_int(3));
        let trace = iterate(&eq, 1);
        let e = trace.entry(1);
        let expect_lambda = R::new(P::from_i64_coeffs(&[6]), rising(1, 2));
        let expect_s = R::new(P::from_i64_coeffs(&[-12]), rising(0, 3));
        assert_eq!(e.lambda, expect_lambda);
        assert_eq!(e.s, expect_s);
    }

    #[test]
    fn zero_equation_stays_zero() {
        let eq = Equation::new(R::zero(), R::zero());
        let trace = iterate(&eq, 5);
        for n in 0..=5 {
            assert!(trace.entry(n).lambda.is_zero());
            assert!(trace.entry(n).s.is_zero());
        }
    }

    #[test]
    fn constant_coefficients_first_step() {
        // lambda_0 = a, s_0 = b: lambda_1 = a^2 + b, s_1 = ab
        let (a, b) = (Rat::from_int(2), Rat::from_int(3));
        let eq = Equation::new(R::constant(a.clone()), R::constant(b.clone()));
        let trace = iterate(&eq, 2);
        assert_eq!(trace.entry(1).lambda, R::constant(a.mul(&a).add(&b)));
        assert_eq!(trace.entry(1).s, R::constant(a.mul(&b)));
        // lambda_2 = a(a^2 + 2b), s_2 = b(a^2 + b)
        let l2 = a.mul(&a.mul(&a).add(&Rat::from_int(2).mul(&b)));
        let s2 = b.mul(&a.mul(&a).add(&b));
        assert_eq!(trace.entry(2).lambda, R::constant(l2));
        assert_eq!(trace.entry(2).s, R::constant(s2));
    }

    #[test]
    fn delta_convention_seed() {
        let eq = euler_equation(Rat::from_int(4));
        let trace = iterate(&eq, 0);
        // delta_0 = lambda_0 * s_{-1} - lambda_{-1} * s_0 = s_0
        assert_eq!(trace.entry(0).delta, eq.s0);
    }

    #[test]
    fn euler_termination_at_a_minus_1() {
        let eq = euler_equation(Rat::from_int(4));
        let report = find_termination(&eq, 24);
        assert_eq!(report.terminated_at, Some(3));
    }

    #[test]
    fn constant_coefficients_do_not_terminate() {
        let eq = Equation::new(R::one(), R::one());
        let report = find_termination(&eq, 25);
        assert_eq!(report.terminated_at, None);
        assert_eq!(report.max_checked, 25);
    }

    #[test]
    fn zero_s0_terminates_immediately() {
        let eq = Equation::new(R::new(P::from_i64_coeffs(&[1, 2]), P::from_i64_coeffs(&[3, 1])), R::zero());
        let report = find_termination(&eq, 5);
        assert_eq!(report.terminated_at, Some(0));
    }

    #[test]
    fn euler_polynomial_solution_is_pochhammer() {
        // a = 3 -> y = x^2 + x = (x)_2 up to the monic normalization
        let eq = euler_equation(Rat::from_int(3));
        let sols = polynomial_solution(&eq, 2).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].poly, P::from_i64_coeffs(&[0, 1, 1]));
        assert!(sols[0].verified);
        assert!(sols[0].residual.is_zero());
    }

    #[test]
    fn hypergeometric_degree_one_solution() {
        // k = b1 (n = 1) gives y = x + b0/b1
        let fam = HypergeometricFamily {
            a2: Rat::from_int(1),
            a1: Rat::from_int(3),
            a0: Rat::from_int(2),
            b1: Rat::from_int(2),
            b0: Rat::from_int(1),
        };
        let eq = fam.equation(&fam.eigenvalue(1));
        let sols = polynomial_solution(&eq, 1).unwrap();
        assert_eq!(sols.len(), 1);
        let expected = P::from_coeffs(vec![Rat::ratio(1, 2), Rat::from_int(1)]);
        assert_eq!(sols[0].poly, expected);
        assert!(sols[0].verified);
    }

    #[test]
    fn hypergeometric_eigenvalues() {
        let fam = HypergeometricFamily {
            a2: Rat::from_int(1),
            a1: Rat::from_int(0),
            a0: Rat::from_int(1),
            b1: Rat::from_int(2),
            b0: Rat::from_int(0),
        };
        assert_eq!(fam.eigenvalue(0), Rat::from_int(0));
        assert_eq!(fam.eigenvalue(1), fam.b1);
        assert_eq!(fam.eigenvalue(3), Rat::from_int(12));
    }

    #[test]
    fn product_solution_euler_triangular_numbers() {
        // a = 3, x0 = 1: values (x)_2/(1)_2 = 1, 3, 6, 10, ...
        let eq = euler_equation(Rat::from_int(3));
        let grid = product_solution_values(&eq, 2, 1, 6).unwrap();
        let expect: Vec<i64> = vec![1, 3, 6, 10, 15, 21];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(grid.values[k], Rat::from_int(*e));
        }
    }

    #[test]
    fn product_solution_trivial_when_s_vanishes() {
        let eq = Equation::new(R::new(P::from_i64_coeffs(&[5]), P::from_i64_coeffs(&[1, 1])), R::zero());
        let grid = product_solution_values(&eq, 0, 0, 8).unwrap();
        assert!(grid.values.iter().all(|v| v.is_one()));
    }

    #[test]
    fn product_and_ansatz_solutions_agree_up_to_constant() {
        let eq = euler_equation(Rat::from_int(4));
        let grid = product_solution_values(&eq, 3, 1, 11).unwrap();
        let sols = polynomial_solution(&eq, 3).unwrap();
        let p = &sols[0].poly;
        let ratio = grid.values[0].div(&p.eval(&Rat::from_int(1)));
        for (k, v) in grid.values.iter().enumerate() {
            let x = Rat::from_int(1 + k as i64);
            assert_eq!(*v, ratio.mul(&p.eval(&x)));
        }
    }

    #[test]
    fn verify_examples() {
        let eq = euler_equation(Rat::from_int(3));
        assert!(verify(&eq, &P::from_i64_coeffs(&[0, 1, 1])).is_zero());
        // y = 1 against s0 != 0: residual = -s0
        assert_eq!(verify(&eq, &P::one()), eq.s0.neg());
        // y = x solves Delta^2 y = 0
        let trivial = Equation::new(R::zero(), R::zero());
        assert!(verify(&trivial, &P::x()).is_zero());
    }

    #[test]
    fn second_solution_trivial_equation_is_linear() {
        let eq = Equation::new(R::zero(), R::zero());
        let sample = second_solution_values(&eq, 0, 0, 0, 8).unwrap();
        // y2 grows linearly: -(x - n0) here
        let diffs = sample.grid.delta_values();
        assert!(diffs.windows(2).all(|w| w[0] == w[1]));
        assert!(!diffs[0].is_zero());
    }

    #[test]
    fn second_solution_euler_residual_and_casorati() {
        let eq = euler_equation(Rat::from_int(3));
        let sample = second_solution_values(&eq, 2, 1, 2, 12).unwrap();
        assert_eq!(sample.casorati_values.len(), 11);
        // lies in span{(x)_2, (x)_3}: third differences of such a cubic are constant
        let d1 = sample.grid.delta_values();
        let d2: Vec<Rat> = d1.windows(2).map(|w| w[1].sub(&w[0])).collect();
        let d3: Vec<Rat> = d2.windows(2).map(|w| w[1].sub(&w[0])).collect();
        assert!(d3.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn reduce_order_euler_shape() {
        // g = (x)_2 for a = 3; f must lie in span{(x)_2, (x)_3}
        let eq = euler_equation(Rat::from_int(3));
        let sols = polynomial_solution(&eq, 2).unwrap();
        let f = reduce_order_second_solution(&eq, &sols[0], 1, 9).unwrap();
        // fit f = C (x)_2 + B (x)_3 using the first two nodes, then check all
        let p2 = rising(0, 2);
        let p3 = rising(0, 3);
        let at = |p: &P, x: i64| p.eval(&Rat::from_int(x));
        // solve 2x2 system at x = 1, 2
        let (a11, a12, b1) = (at(&p2, 1), at(&p3, 1), f.values[0].clone());
        let (a21, a22, b2) = (at(&p2, 2), at(&p3, 2), f.values[1].clone());
        let det = a11.mul(&a22).sub(&a12.mul(&a21));
        let c = b1.mul(&a22).sub(&a12.mul(&b2)).div(&det);
        let b = a11.mul(&b2).sub(&b1.mul(&a21)).div(&det);
        for (k, v) in f.values.iter().enumerate() {
            let x = 1 + k as i64;
            let expect = c.mul(&at(&p2, x)).add(&b.mul(&at(&p3, x)));
            assert_eq!(*v, expect, "mismatch at x = {x}");
        }
    }

    #[test]
    fn reduce_order_trivial_equation_is_linear() {
        let eq = Equation::new(R::zero(), R::zero());
        let sols = polynomial_solution(&eq, 0).unwrap();
        let f = reduce_order_second_solution(&eq, &sols[0], 0, 8).unwrap();
        let d1 = f.delta_values();
        assert!(d1.windows(2).all(|w| w[0] == w[1]));
        assert!(!d1[0].is_zero());
    }
}
