use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use lmx_core::matrix::ComplexMatrix;
use lmx_core::pde::{
    coefficient_sweep, necessity_probe, pointwise_residual, PdeSystemId, ProbeOptions,
};
use lmx_core::quadrature::{integral_value, QuadratureSpec, RepresentationId};
use lmx_core::report::{CheckRecord, Status, VerificationReport};
use lmx_core::series::{
    convergence_report, evaluate, pde_hypotheses, validate_parameters, ConvergenceFlag,
    FunctionSpec,
};
use lmx_core::Error;
use num_complex::Complex64;

use crate::problem::Problem;
use crate::CliError;

/// Relative tolerance `‖I − S‖ / (1 + ‖S‖)` between integral and series.
pub const INTEGRAL_TOL: f64 = 1e-6;
/// Relative residual tolerance for each Taylor coefficient of an equation.
pub const COEFFICIENT_TOL: f64 = 1e-10;
/// Tolerance on `‖equation(U)‖ / (1 + ‖U‖)` at a point.
pub const POINTWISE_TOL: f64 = 1e-6;
/// Coefficient degree cap for `verify-pde` and `necessity` without `--max-degree`.
pub const DEFAULT_SWEEP_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Converge,
    Validate,
    VerifyIntegral,
    VerifyPde,
    Necessity,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Eval,
        Command::Converge,
        Command::Validate,
        Command::VerifyIntegral,
        Command::VerifyPde,
        Command::Necessity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Converge => "converge",
            Command::Validate => "validate",
            Command::VerifyIntegral => "verify-integral",
            Command::VerifyPde => "verify-pde",
            Command::Necessity => "necessity",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let valid: Vec<_> = Command::ALL.iter().map(|c| c.name()).collect();
                CliError::Input(format!(
                    "unknown check {s:?}; valid checks: {}",
                    valid.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub quad_level: Option<usize>,
}

/// A report plus the matrices `eval` computed, keyed by record position.
#[derive(Debug, Clone)]
pub struct Output {
    pub report: VerificationReport,
    pub values: BTreeMap<usize, ComplexMatrix>,
}

impl Output {
    fn new(report: VerificationReport) -> Self {
        Self {
            report,
            values: BTreeMap::new(),
        }
    }

    pub fn append(&mut self, other: Output) {
        let offset = self.report.records.len();
        self.values
            .extend(other.values.into_iter().map(|(k, v)| (k + offset, v)));
        self.report.extend(other.report);
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!(
            "{}{}{}i",
            z.re,
            if z.im < 0.0 { "-" } else { "+" },
            z.im.abs()
        )
    }
}

pub fn format_point(p: &[Complex64]) -> String {
    let parts: Vec<String> = p.iter().map(|&z| format_complex(z)).collect();
    format!("({})", parts.join(", "))
}

fn header(cmd: Command, spec: &FunctionSpec) -> String {
    format!(
        "{cmd}: {}, n = {}, r = {}",
        spec.id(),
        spec.n(),
        spec.order()
    )
}

fn require_points(problem: &Problem, cmd: Command) -> Result<(), CliError> {
    if problem.points.is_empty() {
        return Err(CliError::Input(format!(
            "{cmd} needs at least one entry in points"
        )));
    }
    Ok(())
}

pub fn run_command(cmd: Command, problem: &Problem, options: &Options) -> Result<Output, CliError> {
    match cmd {
        Command::Eval => eval(problem, options),
        Command::Converge => converge(problem),
        Command::Validate => validate(problem),
        Command::VerifyIntegral => verify_integral(problem, options),
        Command::VerifyPde => verify_pde(problem, options),
        Command::Necessity => necessity(problem, options),
    }
}

/// Runs the commands listed in the file's `checks`, in order.
pub fn run_checks(problem: &Problem, options: &Options) -> Result<Output, CliError> {
    if problem.file.checks.is_empty() {
        return Err(CliError::Input(
            "checks: the problem file lists no checks to run".into(),
        ));
    }
    let mut out = Output::new(VerificationReport::new(format!(
        "checks for {}",
        problem.spec.id()
    )));
    for name in &problem.file.checks {
        out.append(run_command(name.parse()?, problem, options)?);
    }
    Ok(out)
}

fn eval(problem: &Problem, options: &Options) -> Result<Output, CliError> {
    require_points(problem, Command::Eval)?;
    let spec = &problem.spec;
    let policy = problem.policy(options.max_degree)?;
    let mut out = Output::new(VerificationReport::new(header(Command::Eval, spec)));
    let anchor = format!("{} series definition", spec.id());
    for p in &problem.points {
        let v = evaluate(spec, p, &policy)?;
        let check = format!("eval at {}", format_point(p));
        let detail = format!(
            "{}, K = {}, {} terms",
            v.flag.as_str(),
            policy.max_degree,
            v.terms_summed
        );
        let mut record = if v.flag == ConvergenceFlag::DivergingSuspected {
            CheckRecord::fail(check, anchor.clone(), detail)
        } else {
            CheckRecord::pass(check, anchor.clone()).with_reason(detail)
        };
        record.residual = Some(v.tail_estimate);
        out.values.insert(out.report.records.len(), v.value);
        out.report.push(record);
    }
    Ok(out)
}

fn converge(problem: &Problem) -> Result<Output, CliError> {
    require_points(problem, Command::Converge)?;
    let spec = &problem.spec;
    let mut out = Output::new(VerificationReport::new(header(Command::Converge, spec)));
    let anchor = format!("{} convergence theorem", spec.id());
    for p in &problem.points {
        let at = format_point(p);
        let report = convergence_report(spec, p);
        if !report.stated {
            out.report.push(CheckRecord::skipped(
                format!("convergence at {at}"),
                anchor.clone(),
                format!(
                    "no sufficient convergence condition is implemented for {}",
                    spec.id()
                ),
            ));
            continue;
        }
        for c in report.spectral.iter().chain(&report.domain) {
            let mut record = if c.pass {
                CheckRecord::pass(format!("{} at {at}", c.condition), anchor.clone())
            } else {
                CheckRecord::fail(
                    format!("{} at {at}", c.condition),
                    anchor.clone(),
                    "condition not met; convergence is not guaranteed",
                )
            };
            record.residual = Some(c.lhs);
            record.tol = Some(c.rhs);
            out.report.push(record);
        }
    }
    Ok(out)
}

fn validate(problem: &Problem) -> Result<Output, CliError> {
    let spec = &problem.spec;
    let mut out = Output::new(VerificationReport::new(header(Command::Validate, spec)));
    let anchor = format!("{} hypotheses", spec.id());
    let violations = validate_parameters(spec);
    for h in pde_hypotheses(spec.id(), spec.n()) {
        let cond = h.condition();
        let record = match violations.iter().find(|v| v.condition == cond) {
            Some(v) => CheckRecord {
                residual: Some(v.residual),
                tol: Some(v.threshold),
                ..CheckRecord::fail(cond, anchor.clone(), format!("{} violated", v.family))
            },
            None => CheckRecord::pass(cond, anchor.clone()),
        };
        out.report.push(record);
    }
    Ok(out)
}

fn verify_integral(problem: &Problem, options: &Options) -> Result<Output, CliError> {
    let spec = &problem.spec;
    let mut out = Output::new(VerificationReport::new(header(
        Command::VerifyIntegral,
        spec,
    )));
    let reps = match RepresentationId::for_function(spec.id()) {
        Ok(r) => r,
        Err(Error::NoRepresentation { reason, .. }) => {
            out.report.push(CheckRecord::skipped(
                "series vs integral",
                format!("{} integral representation", spec.id()),
                reason,
            ));
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    require_points(problem, Command::VerifyIntegral)?;
    let policy = problem.policy(options.max_degree)?;
    let q = QuadratureSpec::new(options.quad_level.unwrap_or(problem.file.quadrature_level))?;
    for rep in reps {
        for p in &problem.points {
            let series = evaluate(spec, p, &policy)?;
            let integral = integral_value(rep, spec, p, &q)?;
            let residual =
                integral.value.distance(&series.value) / (1.0 + series.value.frobenius_norm());
            let record = CheckRecord::compare(
                format!("{rep} at {}", format_point(p)),
                rep.anchor(),
                residual,
                INTEGRAL_TOL,
            )
            .with_reason(format!(
                "cubature error estimate {:.1e}, series {}",
                integral.error_estimate,
                series.flag.as_str()
            ));
            out.report.push(record);
        }
    }
    Ok(out)
}

fn verify_pde(problem: &Problem, options: &Options) -> Result<Output, CliError> {
    let spec = &problem.spec;
    let mut out = Output::new(VerificationReport::new(header(Command::VerifyPde, spec)));
    let degree = options.max_degree.unwrap_or(DEFAULT_SWEEP_DEGREE);
    let violated: Vec<String> = validate_parameters(spec)
        .into_iter()
        .map(|v| v.condition)
        .collect();
    for sys in PdeSystemId::all(spec.id(), spec.n()) {
        let r = coefficient_sweep(&sys, spec, degree)?;
        let mut reason = format!(
            "{} coefficients, worst at index {}",
            r.checked, r.worst_index
        );
        if !violated.is_empty() {
            reason += &format!("; violated hypotheses: {}", violated.join(", "));
        }
        let check = format!("{sys}: coefficients to degree {degree}");
        out.report.push(
            CheckRecord::compare(check, sys.anchor(), r.worst_relative, COEFFICIENT_TOL)
                .with_reason(reason),
        );
    }
    if problem.points.is_empty() {
        return Ok(out);
    }
    let policy = problem.policy(options.max_degree)?;
    for p in &problem.points {
        let norm = evaluate(spec, p, &policy)?.value.frobenius_norm();
        for sys in PdeSystemId::all(spec.id(), spec.n()) {
            let r = pointwise_residual(&sys, spec, p, &policy)?;
            let check = format!("{sys} at {}", format_point(p));
            out.report.push(
                CheckRecord::compare(
                    check,
                    sys.anchor(),
                    r.residual / (1.0 + norm),
                    POINTWISE_TOL,
                )
                .with_reason(format!(
                    "K = {}, series {}",
                    policy.max_degree,
                    r.flag.as_str()
                )),
            );
        }
    }
    Ok(out)
}

fn necessity(problem: &Problem, options: &Options) -> Result<Output, CliError> {
    let spec = &problem.spec;
    let probe = ProbeOptions {
        seed: options.seed,
        max_degree: options.max_degree.unwrap_or(DEFAULT_SWEEP_DEGREE),
        ..ProbeOptions::default()
    };
    let mut report = VerificationReport::new(header(Command::Necessity, spec));
    report.extend(necessity_probe(spec.id(), spec.n(), &probe)?);
    Ok(Output::new(report))
}

/// 0 if no check failed, 1 otherwise.
pub fn exit_status(report: &VerificationReport) -> i32 {
    match report.overall() {
        Status::Fail => crate::EXIT_CHECK_FAILED,
        _ => crate::EXIT_PASS,
    }
}
