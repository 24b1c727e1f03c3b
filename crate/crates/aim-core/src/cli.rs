//! Pipeline orchestration behind the `aim` command-line tool: resolve a
//! configuration (presets, bindings, field selection), run the requested
//! pipeline, and assemble reports.
//!
//! Exit code contract: 0 verified solution, 1 usage error, 2 pipeline
//! error, 3 no termination within the bound.

use std::fmt;
use std::time::Instant;

use crate::daim::{self, Equation, GridError, PolynomialSolution};
use crate::diffops::OperatorKind;
use crate::eqdsl::{self, Bindings};
use crate::exactfield::{Field, Poly, QExt, Rat, RatFun};
use crate::presets;
use crate::qaim::{self, QEquation};
use crate::report::{
    GridDoc, ProductCheckDoc, ScanReport, ScanRow, SecondOptions, SecondSolutionDoc, SolveConfig,
    SolveReport, SolutionDoc, TerminationDoc, TraceRow, VerifyReport,
};

#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    Usage(String),
    Pipeline(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Pipeline(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Pipeline(m) => write!(f, "pipeline error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pipeline(msg: impl fmt::Display) -> CliError {
    CliError::Pipeline(msg.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Verified,
    NoTermination,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub report: SolveReport,
    pub status: SolveStatus,
}

impl SolveOutcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            SolveStatus::Verified => 0,
            SolveStatus::NoTermination => 3,
        }
    }
}

/// How the coefficient field is realized for a run.
#[derive(Clone, Debug, PartialEq)]
enum QMode {
    None,
    Numeric(Rat),
    Symbolic,
}

/// A config with preset sources merged in and the field mode fixed.
#[derive(Clone, Debug)]
struct Resolved {
    operator: OperatorKind,
    lambda0_src: String,
    s0_src: String,
    q_mode: QMode,
    /// bind entries plus preset-derived fallbacks, in application order
    binds: Vec<(String, String)>,
}

fn resolve(cfg: &SolveConfig) -> Result<Resolved, CliError> {
    let preset = match &cfg.preset {
        Some(name) => Some(
            presets::preset(name)
                .ok_or_else(|| usage(format!("unknown preset `{name}`")))?,
        ),
        None => None,
    };
    let operator = match (&cfg.operator, preset) {
        (Some(op), _) => op
            .parse::<OperatorKind>()
            .map_err(|e| usage(e))?,
        (None, Some(p)) => p.operator,
        (None, None) => return Err(usage("--operator is required without a preset")),
    };
    let lambda0_src = cfg
        .lambda0
        .clone()
        .or_else(|| preset.map(|p| p.lambda0.to_string()))
        .ok_or_else(|| usage("--lambda0 is required without a preset"))?;
    let s0_src = cfg
        .s0
        .clone()
        .or_else(|| preset.map(|p| p.s0.to_string()))
        .ok_or_else(|| usage("--s0 is required without a preset"))?;
    let q_mode = match &cfg.q {
        Some(text) if text == "symbolic" => QMode::Symbolic,
        Some(text) => {
            let q: Rat = text
                .parse()
                .map_err(|e| usage(format!("invalid q `{text}`: {e}")))?;
            if q <= Rat::from_int(0) || q >= Rat::from_int(1) {
                return Err(usage("numeric q must lie in (0, 1)"));
            }
            QMode::Numeric(q)
        }
        // symbolic q is the default for q-difference equations
        None if operator == OperatorKind::Dq => QMode::Symbolic,
        None => QMode::None,
    };
    let mut binds: Vec<(String, String)> = cfg
        .bind
        .iter()
        .map(|b| (b.name.clone(), b.value.clone()))
        .collect();
    if let Some(p) = preset {
        for (name, expr) in p.derived {
            if !binds.iter().any(|(n, _)| n == name) {
                binds.push((name.to_string(), expr.to_string()));
            }
        }
    }
    Ok(Resolved {
        operator,
        lambda0_src,
        s0_src,
        q_mode,
        binds,
    })
}

impl std::str::FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "delta" => Ok(OperatorKind::Delta),
            "dq" => Ok(OperatorKind::Dq),
            other => Err(format!("unknown operator `{other}` (expected delta or dq)")),
        }
    }
}

/// Builds the binding table, evaluating each value in order so later
/// bindings may refer to earlier ones. Integer literals bind as integers.
fn build_bindings<K: Field>(
    entries: &[(String, String)],
    q: Option<&K>,
) -> Result<Bindings<K>, CliError> {
    let mut bindings = Bindings::new();
    for (name, value) in entries {
        if name == "x" || name == "q" {
            return Err(usage(format!("`{name}` is reserved and cannot be bound")));
        }
        if bindings.contains(name) {
            return Err(usage(format!("parameter `{name}` bound twice")));
        }
        let trimmed = value.trim();
        if let Ok(i) = trimmed.parse::<i64>() {
            bindings.bind_int(name.clone(), i);
            continue;
        }
        let lowered = eqdsl::lower_source(trimmed, &bindings, q)
            .map_err(|e| usage(format!("binding `{name}`: {e}")))?;
        let elem = lowered
            .as_poly()
            .filter(|p| p.is_constant())
            .map(|p| p.coeff(0))
            .or_else(|| {
                // a constant rational function of x is still constant
                (lowered.num().is_constant() && lowered.den().is_constant())
                    .then(|| lowered.num().coeff(0).div(&lowered.den().coeff(0)))
            })
            .ok_or_else(|| {
                usage(format!("binding `{name}` must not involve the variable x"))
            })?;
        bindings.bind_elem(name.clone(), elem);
    }
    Ok(bindings)
}

fn lower_pair<K: Field>(
    r: &Resolved,
    q: Option<&K>,
) -> Result<(RatFun<K>, RatFun<K>), CliError> {
    let bindings = build_bindings::<K>(&r.binds, q)?;
    let lambda0 = eqdsl::lower_source(&r.lambda0_src, &bindings, q)
        .map_err(|e| usage(format!("lambda0: {e}")))?;
    let s0 = eqdsl::lower_source(&r.s0_src, &bindings, q)
        .map_err(|e| usage(format!("s0: {e}")))?;
    Ok((lambda0, s0))
}

/// Runs parse -> lower -> iterate -> find_termination -> polynomial_solution
/// -> verify, plus the optional second-solution and product-check sections.
pub fn cmd_solve(cfg: &SolveConfig) -> Result<SolveOutcome, CliError> {
    let r = resolve(cfg)?;
    match (&r.operator, &r.q_mode) {
        (OperatorKind::Delta, QMode::Symbolic) => {
            let q = QExt::q();
            let (l, s) = lower_pair::<QExt>(&r, Some(&q))?;
            run_delta(cfg, &r, l, s)
        }
        (OperatorKind::Delta, QMode::Numeric(qv)) => {
            let qv = qv.clone();
            let (l, s) = lower_pair::<Rat>(&r, Some(&qv))?;
            run_delta(cfg, &r, l, s)
        }
        (OperatorKind::Delta, QMode::None) => {
            let (l, s) = lower_pair::<Rat>(&r, None)?;
            run_delta(cfg, &r, l, s)
        }
        (OperatorKind::Dq, QMode::Symbolic) => {
            let q = QExt::q();
            let (l, s) = lower_pair::<QExt>(&r, Some(&q))?;
            run_dq(cfg, &r, QEquation::new(l, s, q), None)
        }
        (OperatorKind::Dq, QMode::Numeric(qv)) => {
            let qv = qv.clone();
            let (l, s) = lower_pair::<Rat>(&r, Some(&qv))?;
            run_dq_numeric(cfg, &r, QEquation::new(l, s, qv))
        }
        (OperatorKind::Dq, QMode::None) => {
            Err(usage("operator dq requires --q symbolic or a numeric q"))
        }
    }
}

fn echo_config(cfg: &SolveConfig, r: &Resolved) -> SolveConfig {
    let mut echo = cfg.clone();
    echo.operator = Some(r.operator.to_string());
    echo.lambda0 = Some(r.lambda0_src.clone());
    echo.s0 = Some(r.s0_src.clone());
    echo.q = match &r.q_mode {
        QMode::None => None,
        QMode::Numeric(q) => Some(q.to_string()),
        QMode::Symbolic => Some("symbolic".to_string()),
    };
    echo
}

fn trace_rows<K: Field>(trace: &daim::AimTrace<K>, with_delta: bool) -> Vec<TraceRow> {
    trace
        .entries()
        .iter()
        .filter(|e| e.n >= 0)
        .map(|e| TraceRow::of(e, with_delta))
        .collect()
}

fn run_delta<K: Field>(
    cfg: &SolveConfig,
    r: &Resolved,
    lambda0: RatFun<K>,
    s0: RatFun<K>,
) -> Result<SolveOutcome, CliError> {
    if cfg.product_check.is_some() {
        return Err(usage("product check applies to dq equations with numeric q"));
    }
    let started = Instant::now();
    let eq = Equation::new(lambda0, s0);
    let (trace, term) = daim::find_termination_with_trace(&eq, cfg.n_max);
    let mut report = SolveReport {
        config: echo_config(cfg, r),
        termination: TerminationDoc::from(&term),
        trace: trace_rows(&trace, cfg.trace_deltas),
        solutions: Vec::new(),
        second_solution: None,
        product_check: None,
        timing_ms: 0,
    };
    let Some(n) = term.terminated_at else {
        report.timing_ms = started.elapsed().as_millis();
        return Ok(SolveOutcome {
            report,
            status: SolveStatus::NoTermination,
        });
    };
    let sols = daim::polynomial_solution(&eq, n).map_err(pipeline)?;
    if let Some(bad) = sols.iter().find(|s| !s.verified) {
        return Err(pipeline(format!(
            "solution failed exact verification, residual {}",
            bad.residual
        )));
    }
    report.solutions = sols.iter().map(SolutionDoc::of).collect();
    if let Some(opts) = &cfg.second {
        report.second_solution = Some(second_section(&eq, n, &sols[0], opts)?);
    }
    report.timing_ms = started.elapsed().as_millis();
    Ok(SolveOutcome {
        report,
        status: SolveStatus::Verified,
    })
}

/// Picks the smallest n0 >= 1 for which the construction avoids all poles.
fn default_n0<K: Field>(
    eq: &Equation<K>,
    n: usize,
    m: i64,
    grid_end: Option<i64>,
) -> Result<i64, CliError> {
    for cand in 1..=64 {
        let end = match grid_end {
            Some(e) if e < cand + 2 => break,
            Some(e) => e,
            None => cand + 11,
        };
        match daim::second_solution_values(eq, n, cand, m, end) {
            Ok(_) => return Ok(cand),
            Err(GridError::Pole { .. })
            | Err(GridError::ZeroLambda { .. })
            | Err(GridError::ZeroOfSolution { .. }) => continue,
            Err(e) => return Err(pipeline(e)),
        }
    }
    Err(pipeline("no pole-free base point n0 found"))
}

fn second_section<K: Field>(
    eq: &Equation<K>,
    n: usize,
    first: &PolynomialSolution<K>,
    opts: &SecondOptions,
) -> Result<SecondSolutionDoc, CliError> {
    let m = opts.m.unwrap_or(n as i64);
    let n0 = match opts.n0 {
        Some(v) => v,
        None => default_n0(eq, n, m, opts.grid_end)?,
    };
    let grid_end = opts.grid_end.unwrap_or(n0 + 11);
    if grid_end < n0 + 2 {
        return Err(usage("second-solution grid must span at least 3 points"));
    }
    let sample =
        daim::second_solution_values(eq, n, n0, m, grid_end).map_err(pipeline)?;
    let first_grid =
        daim::product_solution_values(eq, n, n0, grid_end).map_err(pipeline)?;
    let reduce = match daim::reduce_order_second_solution(eq, first, n0, grid_end) {
        Ok(g) => Some(GridDoc::of(&g)),
        // a zero of the polynomial solution on the grid only disables this route
        Err(GridError::ZeroOfSolution { .. }) => None,
        Err(e) => return Err(pipeline(e)),
    };
    Ok(SecondSolutionDoc {
        n0,
        m,
        values: GridDoc::of(&sample.grid),
        first_solution: GridDoc::of(&first_grid),
        casorati: sample
            .casorati_values
            .iter()
            .map(|c| c.to_string())
            .collect(),
        reduce_order: reduce,
        residual_ok: true,
    })
}

fn run_dq<K: Field>(
    cfg: &SolveConfig,
    r: &Resolved,
    eq: QEquation<K>,
    product: Option<ProductCheckDoc>,
) -> Result<SolveOutcome, CliError> {
    if cfg.second.is_some() {
        return Err(usage(
            "the second-solution construction is defined for the delta operator",
        ));
    }
    let started = Instant::now();
    let (trace, term) = qaim::q_find_termination_with_trace(&eq, cfg.n_max);
    let mut report = SolveReport {
        config: echo_config(cfg, r),
        termination: TerminationDoc::from(&term),
        trace: trace_rows(&trace, cfg.trace_deltas),
        solutions: Vec::new(),
        second_solution: None,
        product_check: None,
        timing_ms: 0,
    };
    let Some(n) = term.terminated_at else {
        report.timing_ms = started.elapsed().as_millis();
        return Ok(SolveOutcome {
            report,
            status: SolveStatus::NoTermination,
        });
    };
    let sols = qaim::q_polynomial_solution(&eq, n).map_err(pipeline)?;
    if let Some(bad) = sols.iter().find(|s| !s.verified) {
        return Err(pipeline(format!(
            "solution failed exact verification, residual {}",
            bad.residual
        )));
    }
    report.solutions = sols.iter().map(SolutionDoc::of).collect();
    report.product_check = product;
    report.timing_ms = started.elapsed().as_millis();
    Ok(SolveOutcome {
        report,
        status: SolveStatus::Verified,
    })
}

fn run_dq_numeric(
    cfg: &SolveConfig,
    r: &Resolved,
    eq: QEquation<Rat>,
) -> Result<SolveOutcome, CliError> {
    let mut product = None;
    if let Some(opts) = &cfg.product_check {
        let x: Rat = opts
            .x
            .parse()
            .map_err(|e| usage(format!("product check x: {e}")))?;
        let term = qaim::q_find_termination(&eq, cfg.n_max);
        let n = term
            .terminated_at
            .ok_or_else(|| usage("product check requires a terminating equation"))?;
        let value =
            qaim::q_product_solution_value(&eq, n, &x, opts.tol).map_err(pipeline)?;
        let sols = qaim::q_polynomial_solution(&eq, n).map_err(pipeline)?;
        let exact = sols[0].poly.eval(&x);
        product = Some(ProductCheckDoc {
            x: x.to_string(),
            value: value.value,
            terms: value.terms,
            exact: exact.to_string(),
            abs_error: (value.value - exact.to_f64()).abs(),
        });
    }
    run_dq(cfg, r, eq, product)
}

/// Scan configuration for the hypergeometric family.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub a2: String,
    pub a1: String,
    pub a0: String,
    pub b1: String,
    pub b0: String,
    pub n_from: usize,
    pub n_to: usize,
    pub n_max: usize,
}

fn scan_param(name: &str, src: &str) -> Result<Rat, CliError> {
    let lowered = eqdsl::lower_source(src, &Bindings::<Rat>::new(), None)
        .map_err(|e| usage(format!("{name}: {e}")))?;
    lowered
        .as_poly()
        .filter(|p| p.is_constant())
        .map(|p| p.coeff(0))
        .ok_or_else(|| usage(format!("{name} must be a rational constant")))
}

/// For each n in the range, the eigenvalue k(n), the termination index,
/// and the verified solution degree.
pub fn cmd_scan(cfg: &ScanConfig) -> Result<ScanReport, CliError> {
    if cfg.n_to < cfg.n_from {
        return Err(usage("empty n range"));
    }
    let fam = presets::hypergeometric_family(
        scan_param("a2", &cfg.a2)?,
        scan_param("a1", &cfg.a1)?,
        scan_param("a0", &cfg.a0)?,
        scan_param("b1", &cfg.b1)?,
        scan_param("b0", &cfg.b0)?,
    );
    let started = Instant::now();
    let mut rows = Vec::new();
    for n in cfg.n_from..=cfg.n_to {
        let k = fam.eigenvalue(n);
        let eq = fam.equation(&k);
        let term = daim::find_termination(&eq, cfg.n_max);
        let (degree, verified) = match term.terminated_at {
            Some(idx) => {
                let sols = daim::polynomial_solution(&eq, idx).map_err(pipeline)?;
                (Some(sols[0].degree), sols.iter().all(|s| s.verified))
            }
            None => (None, false),
        };
        rows.push(ScanRow {
            n,
            k: k.to_string(),
            terminated_at: term.terminated_at,
            degree,
            verified,
        });
    }
    Ok(ScanReport {
        rows,
        timing_ms: started.elapsed().as_millis(),
    })
}

/// Second-solution pipeline: a solve with the second section required.
pub fn cmd_second(cfg: &SolveConfig) -> Result<SolveOutcome, CliError> {
    let mut cfg = cfg.clone();
    if cfg.second.is_none() {
        cfg.second = Some(SecondOptions::default());
    }
    cmd_solve(&cfg)
}

fn parse_coeffs<K: Field>(
    src: &str,
    bindings: &Bindings<K>,
    q: Option<&K>,
) -> Result<Poly<K>, CliError> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.iter().all(|p| p.is_empty()) {
        return Err(usage("empty polynomial: no coefficients given"));
    }
    let mut coeffs = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(usage(format!("coefficient {i} is empty")));
        }
        let lowered = eqdsl::lower_source(part, bindings, q)
            .map_err(|e| usage(format!("coefficient {i}: {e}")))?;
        let c = lowered
            .as_poly()
            .filter(|p| p.is_constant())
            .map(|p| p.coeff(0))
            .ok_or_else(|| usage(format!("coefficient {i} must not involve x")))?;
        coeffs.push(c);
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Back-substitutes explicit coefficients into the configured equation.
pub fn cmd_verify(cfg: &SolveConfig, coeffs_src: &str) -> Result<VerifyReport, CliError> {
    let r = resolve(cfg)?;
    let report = match (&r.operator, &r.q_mode) {
        (OperatorKind::Dq, QMode::Symbolic) => {
            let q = QExt::q();
            let (l, s) = lower_pair::<QExt>(&r, Some(&q))?;
            let bindings = build_bindings::<QExt>(&r.binds, Some(&q))?;
            let y = parse_coeffs(coeffs_src, &bindings, Some(&q))?;
            let res = qaim::q_verify(&QEquation::new(l, s, q), &y);
            VerifyReport {
                residual: res.to_string(),
                zero: res.is_zero(),
            }
        }
        (OperatorKind::Dq, QMode::Numeric(qv)) => {
            let qv = qv.clone();
            let (l, s) = lower_pair::<Rat>(&r, Some(&qv))?;
            let bindings = build_bindings::<Rat>(&r.binds, Some(&qv))?;
            let y = parse_coeffs(coeffs_src, &bindings, Some(&qv))?;
            let res = qaim::q_verify(&QEquation::new(l, s, qv), &y);
            VerifyReport {
                residual: res.to_string(),
                zero: res.is_zero(),
            }
        }
        (OperatorKind::Dq, QMode::None) => {
            return Err(usage("operator dq requires --q symbolic or a numeric q"))
        }
        (OperatorKind::Delta, mode) => {
            let qv = match mode {
                QMode::Numeric(q) => Some(q.clone()),
                _ => None,
            };
            let (l, s) = lower_pair::<Rat>(&r, qv.as_ref())?;
            let bindings = build_bindings::<Rat>(&r.binds, qv.as_ref())?;
            let y = parse_coeffs(coeffs_src, &bindings, qv.as_ref())?;
            let res = daim::verify(&Equation::new(l, s), &y);
            VerifyReport {
                residual: res.to_string(),
                zero: res.is_zero(),
            }
        }
    };
    Ok(report)
}

fn degree_text(d: &crate::report::DegreePair) -> String {
    match d.num {
        Some(n) => format!("{n}/{}", d.den),
        None => format!("zero/{}", d.den),
    }
}

/// Human-readable rendering of a solve report.
pub fn render_solve_text(out: &SolveOutcome) -> String {
    let r = &out.report;
    let mut s = String::new();
    if let Some(p) = &r.config.preset {
        s.push_str(&format!("preset: {p}\n"));
    }
    s.push_str(&format!(
        "operator: {}\n",
        r.config.operator.as_deref().unwrap_or("?")
    ));
    s.push_str(&format!(
        "lambda0 = {}\ns0      = {}\n",
        r.config.lambda0.as_deref().unwrap_or("?"),
        r.config.s0.as_deref().unwrap_or("?")
    ));
    if let Some(q) = &r.config.q {
        s.push_str(&format!("q: {q}\n"));
    }
    for b in &r.config.bind {
        s.push_str(&format!("bind: {} = {}\n", b.name, b.value));
    }
    match r.termination.terminated_at {
        Some(n) => s.push_str(&format!(
            "termination: delta_n == 0 first at n = {n} (checked to {}{})\n",
            r.termination.max_checked,
            if r.termination.degenerate {
                ", degenerate lambda encountered"
            } else {
                ""
            }
        )),
        None => s.push_str(&format!(
            "termination: none within n_max = {} (no polynomial solution of degree <= {})\n",
            r.termination.max_checked, r.termination.max_checked
        )),
    }
    s.push_str("trace (degrees num/den):\n");
    for row in &r.trace {
        s.push_str(&format!(
            "  n={:>2}  lambda {:>7}  s {:>7}  delta {:>7}{}\n",
            row.n,
            degree_text(&row.lambda_degrees),
            degree_text(&row.s_degrees),
            degree_text(&row.delta_degrees),
            row.delta
                .as_deref()
                .map(|d| format!("  delta = {d}"))
                .unwrap_or_default()
        ));
    }
    for sol in &r.solutions {
        s.push_str(&format!(
            "solution: degree {} ({})\n",
            sol.degree,
            if sol.verified {
                "verified, residual 0"
            } else {
                "NOT verified"
            }
        ));
        for (k, c) in sol.coefficients.iter().enumerate() {
            s.push_str(&format!("  c[{k}] = {c}\n"));
        }
        if !sol.verified {
            s.push_str(&format!("  residual = {}\n", sol.residual));
        }
    }
    if r.solutions.len() > 1 {
        s.push_str("note: nullspace dimension > 1, all basis solutions listed\n");
    }
    if let Some(sec) = &r.second_solution {
        s.push_str(&format!(
            "second solution (n0 = {}, m = {}), residual 0 at interior nodes:\n",
            sec.n0, sec.m
        ));
        s.push_str(&format!("  y2 on grid:  {}\n", sec.values.values.join(", ")));
        s.push_str(&format!(
            "  y1 on grid:  {}\n",
            sec.first_solution.values.join(", ")
        ));
        s.push_str(&format!("  casorati:    {}\n", sec.casorati.join(", ")));
        if let Some(red) = &sec.reduce_order {
            s.push_str(&format!("  order-reduction route: {}\n", red.values.join(", ")));
        }
    }
    if let Some(p) = &r.product_check {
        s.push_str(&format!(
            "product check at x = {}: value {:.15e} after {} factors, exact {} (abs err {:.3e})\n",
            p.x, p.value, p.terms, p.exact, p.abs_error
        ));
    }
    s.push_str(&format!("time: {} ms\n", r.timing_ms));
    s
}

pub fn render_scan_text(r: &ScanReport) -> String {
    let mut s = String::from("  n  k            terminated  degree  verified\n");
    for row in &r.rows {
        s.push_str(&format!(
            "{:>3}  {:<12} {:<11} {:<7} {}\n",
            row.n,
            row.k,
            row.terminated_at
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".into()),
            row.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            row.verified
        ));
    }
    s.push_str(&format!("time: {} ms\n", r.timing_ms));
    s
}

pub fn render_verify_text(r: &VerifyReport) -> String {
    format!(
        "residual = {}\n{}\n",
        r.residual,
        if r.zero { "verified: residual is exactly zero" } else { "NOT a solution" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::BindEntry;

    fn bind(name: &str, value: &str) -> BindEntry {
        BindEntry {
            name: name.into(),
            value: value.into(),
        }
    }

    #[test]
    fn euler_preset_pipeline() {
        let cfg = SolveConfig {
            preset: Some("euler".into()),
            bind: vec![bind("a", "4")],
            ..SolveConfig::default()
        };
        let out = cmd_solve(&cfg).unwrap();
        assert_eq!(out.status, SolveStatus::Verified);
        assert_eq!(out.exit_code(), 0);
        assert_eq!(out.report.termination.terminated_at, Some(3));
        assert_eq!(out.report.solutions.len(), 1);
        // x(x+1)(x+2) = 2x + 3x^2 + x^3
        assert_eq!(
            out.report.solutions[0].coefficients,
            vec!["0", "2", "3", "1"]
        );
    }

    #[test]
    fn constant_coefficients_no_termination() {
        let cfg = SolveConfig {
            operator: Some("delta".into()),
            lambda0: Some("1".into()),
            s0: Some("1".into()),
            n_max: 25,
            ..SolveConfig::default()
        };
        let out = cmd_solve(&cfg).unwrap();
        assert_eq!(out.status, SolveStatus::NoTermination);
        assert_eq!(out.exit_code(), 3);
        assert!(out.report.solutions.is_empty());
    }

    #[test]
    fn stieltjes_wigert_preset() {
        let cfg = SolveConfig {
            preset: Some("stieltjes-wigert".into()),
            bind: vec![bind("n", "4")],
            ..SolveConfig::default()
        };
        let out = cmd_solve(&cfg).unwrap();
        assert_eq!(out.report.termination.terminated_at, Some(4));
        let sol = &out.report.solutions[0];
        assert_eq!(sol.degree, 4);
        assert!(sol.verified);
        // Gaussian binomial coefficients: [4 k]_q (-1)^k q^{k^2}
        assert_eq!(sol.coefficients[0], "1");
        assert_eq!(sol.coefficients[4], "q^16");
    }

    #[test]
    fn usage_errors() {
        let cfg = SolveConfig::default();
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Usage(_))));

        let cfg = SolveConfig {
            preset: Some("euler".into()),
            bind: vec![bind("a", "x+1")],
            ..SolveConfig::default()
        };
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Usage(_))));

        let cfg = SolveConfig {
            preset: Some("q-laguerre".into()),
            q: Some("3/2".into()),
            bind: vec![bind("eta", "1"), bind("n", "2")],
            ..SolveConfig::default()
        };
        assert!(matches!(cmd_solve(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn scan_eigenvalue_column() {
        let cfg = ScanConfig {
            a2: "1".into(),
            a1: "0".into(),
            a0: "1".into(),
            b1: "2".into(),
            b0: "0".into(),
            n_from: 0,
            n_to: 4,
            n_max: 24,
        };
        let report = cmd_scan(&cfg).unwrap();
        let ks: Vec<&str> = report.rows.iter().map(|r| r.k.as_str()).collect();
        assert_eq!(ks, vec!["0", "2", "6", "12", "20"]);
        for row in &report.rows {
            assert_eq!(row.terminated_at, Some(row.n));
            assert!(row.verified);
            assert_eq!(row.degree, Some(row.n));
        }
    }

    #[test]
    fn verify_command() {
        let cfg = SolveConfig {
            preset: Some("stieltjes-wigert".into()),
            bind: vec![bind("n", "2")],
            ..SolveConfig::default()
        };
        // 1 - (1+q) q x + q^4 x^2
        let ok = cmd_verify(&cfg, "1, -(1+q)*q, q^4").unwrap();
        assert!(ok.zero);
        let bad = cmd_verify(&cfg, "1, (1+q)*q, q^4").unwrap();
        assert!(!bad.zero);
        assert!(matches!(cmd_verify(&cfg, " , "), Err(CliError::Usage(_))));
    }

    #[test]
    fn second_solution_section_for_euler() {
        let cfg = SolveConfig {
            preset: Some("euler".into()),
            bind: vec![bind("a", "3")],
            second: Some(SecondOptions {
                n0: Some(1),
                m: Some(2),
                grid_end: Some(12),
            }),
            ..SolveConfig::default()
        };
        let out = cmd_second(&cfg).unwrap();
        let sec = out.report.second_solution.as_ref().unwrap();
        assert_eq!(sec.values.values.len(), 12);
        assert!(sec.residual_ok);
        assert!(sec.reduce_order.is_some());
    }
}
