use num_complex::Complex64;

use super::coefficients::Coefficients;
use super::convergence::convergence_report;
use super::function::FunctionSpec;
use super::index::shell;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Largest total degree summed (K).
    pub max_degree: usize,
    /// Stop early once a shell's norm drops below `tail_tol · ‖sum‖`.
    pub tail_tol: Option<f64>,
}

impl TruncationPolicy {
    pub fn new(max_degree: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::InvalidArgument(
                "max_degree must be at least 1".into(),
            ));
        }
        Ok(Self {
            max_degree,
            tail_tol: None,
        })
    }

    pub fn with_tail_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tail_tol must be nonnegative, got {tol}"
            )));
        }
        self.tail_tol = Some(tol);
        Ok(self)
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_degree: 20,
            tail_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceFlag {
    Guaranteed,
    NotGuaranteed,
    DivergingSuspected,
}

impl ConvergenceFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            ConvergenceFlag::Guaranteed => "guaranteed",
            ConvergenceFlag::NotGuaranteed => "not-guaranteed",
            ConvergenceFlag::DivergingSuspected => "diverging-suspected",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: ComplexMatrix,
    /// Norm of the last shell summed; heuristic, not a bound.
    pub tail_estimate: f64,
    pub terms_summed: usize,
    pub flag: ConvergenceFlag,
    /// `‖Σ_{|m|=d} term‖` for each summed degree d.
    pub shell_norms: Vec<f64>,
    /// `Σ_{|m|=d} ‖term‖` for each summed degree d.
    pub shell_magnitudes: Vec<f64>,
}

/// Sums the series at `point` over total-degree shells `0..=K`.
pub fn evaluate(
    spec: &FunctionSpec,
    point: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    let mut coeffs = Coefficients::new(spec);
    evaluate_with(&mut coeffs, point, policy)
}

/// As [`evaluate`], reusing Pochhammer tables across calls.
pub fn evaluate_with(
    coeffs: &mut Coefficients,
    point: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    let spec = coeffs.spec().clone();
    let n = spec.n();
    if point.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} takes {n} variables, got a point with {}",
            spec.id(),
            point.len()
        )));
    }
    if point.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument(
            "point has non-finite coordinates".into(),
        ));
    }
    let k_max = policy.max_degree;
    coeffs.ensure(k_max)?;

    let powers: Vec<Vec<Complex64>> = point
        .iter()
        .map(|&x| {
            let mut p = Vec::with_capacity(k_max + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=k_max {
                p.push(acc);
                acc *= x;
            }
            p
        })
        .collect();

    let mut sum = ComplexMatrix::zeros(spec.order());
    let mut shell_norms = Vec::with_capacity(k_max + 1);
    let mut shell_magnitudes = Vec::with_capacity(k_max + 1);
    let mut terms = 0usize;
    let mut overflow = false;
    for d in 0..=k_max {
        let mut shell_sum = ComplexMatrix::zeros(spec.order());
        let mut magnitude = 0.0;
        let indices = shell(n, d);
        let count = indices.len();
        for idx in indices {
            let c = idx.components();
            let mono: Complex64 = c.iter().enumerate().map(|(i, &m)| powers[i][m]).product();
            if mono == Complex64::new(0.0, 0.0) {
                continue;
            }
            let term = coeffs.coefficient_ready(c).scale(mono);
            magnitude += term.frobenius_norm();
            shell_sum += &term;
        }
        let norm = shell_sum.frobenius_norm();
        if !norm.is_finite() || !magnitude.is_finite() || !shell_sum.is_finite() {
            overflow = true;
            break;
        }
        sum += &shell_sum;
        terms += count;
        shell_norms.push(norm);
        shell_magnitudes.push(magnitude);
        if let Some(tol) = policy.tail_tol {
            if d > 0 && norm <= tol * sum.frobenius_norm() {
                break;
            }
        }
    }

    let tail_estimate = shell_norms.last().copied().unwrap_or(0.0);
    let growing = shell_norms.len() >= 2 && {
        let l = shell_norms.len();
        shell_norms[l - 1] > shell_norms[l - 2]
    };
    let flag = if overflow || growing {
        ConvergenceFlag::DivergingSuspected
    } else if convergence_report(&spec, point).is_guaranteed() {
        ConvergenceFlag::Guaranteed
    } else {
        ConvergenceFlag::NotGuaranteed
    };
    Ok(SeriesValue {
        value: sum,
        tail_estimate: if overflow {
            f64::INFINITY
        } else {
            tail_estimate
        },
        terms_summed: terms,
        flag,
        shell_norms,
        shell_magnitudes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{FunctionId, Role};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn scalar_fd(a: f64, b: f64, cc: f64) -> FunctionSpec {
        let s = |v: f64| ComplexMatrix::scalar(1, c(v));
        FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [(Role::A, s(a)), (Role::Bi(1), s(b)), (Role::C, s(cc))],
        )
        .unwrap()
    }

    #[test]
    fn origin_gives_identity() {
        let spec = scalar_fd(1.0, 1.0, 2.0);
        let v = evaluate(&spec, &[c(0.0)], &TruncationPolicy::default()).unwrap();
        assert!((v.value.get(0, 0) - c(1.0)).norm() < 1e-15);
        assert_eq!(v.tail_estimate, 0.0);
    }

    #[test]
    fn log_closed_form() {
        let spec = scalar_fd(1.0, 1.0, 2.0);
        let v = evaluate(&spec, &[c(0.5)], &TruncationPolicy::new(60).unwrap()).unwrap();
        let want = 2.0 * 2f64.ln();
        assert!((v.value.get(0, 0).re - want).abs() < 1e-8);
        // α(B1) < 1 fails at b = 1
        assert_eq!(v.flag, ConvergenceFlag::NotGuaranteed);
        let inside = evaluate(
            &scalar_fd(1.0, 0.5, 2.0),
            &[c(0.5)],
            &TruncationPolicy::new(60).unwrap(),
        )
        .unwrap();
        assert_eq!(inside.flag, ConvergenceFlag::Guaranteed);
    }

    #[test]
    fn tail_tol_stops_early() {
        let spec = scalar_fd(1.0, 1.0, 2.0);
        let policy = TruncationPolicy::new(200)
            .unwrap()
            .with_tail_tol(1e-12)
            .unwrap();
        let v = evaluate(&spec, &[c(0.1)], &policy).unwrap();
        assert!(v.shell_norms.len() < 30);
        assert!((v.value.get(0, 0).re - (-(0.9f64).ln() / 0.1)).abs() < 1e-11);
    }

    #[test]
    fn growth_is_flagged() {
        let spec = scalar_fd(1.0, 1.0, 2.0);
        let v = evaluate(&spec, &[c(1.5)], &TruncationPolicy::new(30).unwrap()).unwrap();
        assert_eq!(v.flag, ConvergenceFlag::DivergingSuspected);
    }

    #[test]
    fn point_length_checked() {
        let spec = scalar_fd(1.0, 1.0, 2.0);
        assert!(evaluate(&spec, &[c(0.1), c(0.1)], &TruncationPolicy::default()).is_err());
    }
}
