use num_complex::Complex64;
use rayon::prelude::*;

use super::terms::{system_terms, OperatorTerm, PdeSystemId};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::series::{
    evaluate_with, indices_up_to, Coefficients, ConvergenceFlag, FunctionSpec, MultiIndex,
    TruncationPolicy,
};

/// `b!/(b−d)!`
fn falling(b: usize, d: usize) -> f64 {
    (b + 1 - d..=b).map(|k| k as f64).product()
}

/// An equation with its matrix factors evaluated once.
struct Bound {
    terms: Vec<(OperatorTerm, ComplexMatrix, ComplexMatrix, f64)>,
}

impl Bound {
    fn new(id: &PdeSystemId, spec: &FunctionSpec) -> Result<Self> {
        let terms = system_terms(id, spec)?
            .into_iter()
            .map(|t| {
                let l = t.left.eval(spec)?;
                let r = t.right.eval(spec)?;
                let scale = t.coeff.abs() * l.frobenius_norm() * r.frobenius_norm();
                Ok((t, l, r, scale))
            })
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    /// Largest Pochhammer index any term reads at total degree `degree`.
    fn reach(&self, degree: usize) -> usize {
        let lift = self
            .terms
            .iter()
            .map(|(t, ..)| t.derivative.iter().sum::<usize>())
            .max()
            .unwrap_or(0);
        degree + lift
    }

    /// Residual coefficient of `x^idx` and the sum of the term norms.
    fn at(&self, coeffs: &Coefficients, idx: &[usize]) -> (ComplexMatrix, f64) {
        let order = coeffs.spec().order();
        let mut total = ComplexMatrix::zeros(order);
        let mut scale = 0.0;
        for (t, l, r, s) in &self.terms {
            if idx.iter().zip(&t.monomial).any(|(a, m)| a < m) {
                continue;
            }
            let beta: Vec<usize> = idx
                .iter()
                .zip(&t.monomial)
                .zip(&t.derivative)
                .map(|((a, m), d)| a - m + d)
                .collect();
            let f: f64 = beta
                .iter()
                .zip(&t.derivative)
                .map(|(&b, &d)| falling(b, d))
                .product();
            let c = coeffs.coefficient_ready(&beta);
            let term = (l * &c * r).scale_real(t.coeff * f);
            scale += s * f * c.frobenius_norm();
            total += &term;
        }
        (total, scale)
    }
}

/// Coefficient of `x^idx` in `Σ c·x^μ·L·∂^δU·R`. No hypotheses are
/// assumed; a nonzero result shows the equation fails for these parameters.
pub fn coefficient_residual(
    id: &PdeSystemId,
    spec: &FunctionSpec,
    idx: &MultiIndex,
) -> Result<ComplexMatrix> {
    idx.check_len(spec.n())?;
    let bound = Bound::new(id, spec)?;
    let mut coeffs = Coefficients::new(spec);
    coeffs.ensure(bound.reach(idx.total()))?;
    Ok(bound.at(&coeffs, idx.components()).0)
}

/// Worst coefficient residual over all indices of total degree `<= max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub system: PdeSystemId,
    pub max_degree: usize,
    pub checked: usize,
    /// `‖residual‖ / Σ‖term‖`, maximized over indices.
    pub worst_relative: f64,
    pub worst_absolute: f64,
    pub worst_index: MultiIndex,
}

pub fn coefficient_sweep(
    id: &PdeSystemId,
    spec: &FunctionSpec,
    max_degree: usize,
) -> Result<SweepResult> {
    let bound = Bound::new(id, spec)?;
    let mut coeffs = Coefficients::new(spec);
    coeffs.ensure(bound.reach(max_degree))?;
    sweep_bound(id, &bound, &coeffs, max_degree)
}

fn sweep_bound(
    id: &PdeSystemId,
    bound: &Bound,
    coeffs: &Coefficients,
    max_degree: usize,
) -> Result<SweepResult> {
    let indices = indices_up_to(coeffs.spec().n(), max_degree);
    let results: Vec<(f64, f64)> = indices
        .par_iter()
        .map(|idx| {
            let (m, scale) = bound.at(coeffs, idx.components());
            let abs = m.frobenius_norm();
            (if scale > 0.0 { abs / scale } else { abs }, abs)
        })
        .collect();
    let mut worst = 0;
    for (i, r) in results.iter().enumerate() {
        if !(r.0 <= results[worst].0) {
            worst = i;
        }
    }
    Ok(SweepResult {
        system: *id,
        max_degree,
        checked: indices.len(),
        worst_relative: results[worst].0,
        worst_absolute: results[worst].1,
        worst_index: indices[worst].clone(),
    })
}

/// First index (by total degree, then increasing lexicographic order) whose
/// relative residual exceeds `tol`.
pub fn first_nonzero(
    id: &PdeSystemId,
    spec: &FunctionSpec,
    max_degree: usize,
    tol: f64,
) -> Result<Option<(MultiIndex, f64)>> {
    let bound = Bound::new(id, spec)?;
    let mut coeffs = Coefficients::new(spec);
    coeffs.ensure(bound.reach(max_degree))?;
    for idx in indices_up_to(spec.n(), max_degree) {
        let (m, scale) = bound.at(&coeffs, idx.components());
        let rel = if scale > 0.0 {
            m.frobenius_norm() / scale
        } else {
            m.frobenius_norm()
        };
        if !(rel <= tol) {
            return Ok(Some((idx, rel)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseResidual {
    /// Frobenius norm of the assembled equation at the point.
    pub residual: f64,
    /// Convergence flag of the underlying series evaluation.
    pub flag: ConvergenceFlag,
}

/// Assembles the equation from the truncated series and its termwise
/// derivatives at `point`.
pub fn pointwise_residual(
    id: &PdeSystemId,
    spec: &FunctionSpec,
    point: &[Complex64],
    policy: &TruncationPolicy,
) -> Result<PointwiseResidual> {
    if policy.max_degree < 4 {
        return Err(Error::InvalidArgument(format!(
            "pointwise residual needs max_degree >= 4, got {}",
            policy.max_degree
        )));
    }
    let bound = Bound::new(id, spec)?;
    let mut coeffs = Coefficients::new(spec);
    let flag = evaluate_with(&mut coeffs, point, policy)?.flag;
    let k = policy.max_degree;
    coeffs.ensure(k)?;
    let n = spec.n();
    let indices = indices_up_to(n, k);

    let pow = |x: Complex64, e: usize| -> Complex64 { x.powu(e as u32) };
    let mut total = ComplexMatrix::zeros(spec.order());
    let mut derivs: Vec<(Vec<usize>, ComplexMatrix)> = Vec::new();
    for (t, l, r, _) in &bound.terms {
        let d = match derivs.iter().find(|(d, _)| d == &t.derivative) {
            Some((_, m)) => m.clone(),
            None => {
                let mut acc = ComplexMatrix::zeros(spec.order());
                for idx in &indices {
                    let m = idx.components();
                    if m.iter().zip(&t.derivative).any(|(a, d)| a < d) {
                        continue;
                    }
                    let f: f64 = m
                        .iter()
                        .zip(&t.derivative)
                        .map(|(&a, &d)| falling(a, d))
                        .product();
                    let mono: Complex64 = m
                        .iter()
                        .zip(&t.derivative)
                        .zip(point)
                        .map(|((&a, &d), &x)| pow(x, a - d))
                        .product();
                    acc += &coeffs.coefficient_ready(m).scale(mono * f);
                }
                derivs.push((t.derivative.clone(), acc.clone()));
                acc
            }
        };
        let mono: Complex64 = t
            .monomial
            .iter()
            .zip(point)
            .map(|(&e, &x)| pow(x, e))
            .product();
        total += &(l * &d * r).scale(mono * t.coeff);
    }
    let residual = total.frobenius_norm();
    if !residual.is_finite() {
        return Err(Error::Domain {
            condition: format!("series diverges at the point ({})", flag.as_str()),
        });
    }
    Ok(PointwiseResidual { residual, flag })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{draw_spec, Sampler, SpectrumRange};
    use crate::series::{pde_hypotheses, FunctionId, Role};

    fn f3_general() -> FunctionSpec {
        let mut s = Sampler::new(11);
        let mut params = std::collections::BTreeMap::new();
        for role in FunctionId::F3.roles(3) {
            params.insert(role, s.generic(2, 1.5, 0.5));
        }
        FunctionSpec::new(FunctionId::F3, 3, params).unwrap()
    }

    #[test]
    fn f3_first_order_residual_formula() {
        let spec = f3_general();
        let id = PdeSystemId::new(FunctionId::F3, 1);
        let got = coefficient_residual(&id, &spec, &MultiIndex::new(vec![1, 0, 0])).unwrap();
        let a1 = spec.param(Role::Ai(1)).unwrap();
        let b1 = spec.param(Role::Bi(1)).unwrap();
        let c1i = spec.param(Role::Ci(1)).unwrap().try_inverse().unwrap();
        let a = a1 * &a1.shift(1.0);
        let want = &(&a * b1) * &(&b1.shift(1.0) * &c1i) - (&(&a * b1) * &(&c1i * &b1.shift(1.0)));
        assert!(
            got.distance(&want) < 1e-12 * want.frobenius_norm().max(1.0),
            "{got} vs {want}"
        );
        assert!(want.frobenius_norm() > 1e-3);
    }

    #[test]
    fn scalar_parameters_satisfy_every_system() {
        let mut s = Sampler::new(5);
        for id in FunctionId::DISTINCT {
            let n = id.fixed_variables().unwrap_or(2);
            let spec = draw_spec(
                id,
                n,
                1,
                &pde_hypotheses(id, n),
                SpectrumRange::default(),
                &mut s,
            )
            .unwrap();
            for sys in PdeSystemId::all(id, n) {
                let r = coefficient_sweep(&sys, &spec, 5).unwrap();
                assert!(r.worst_relative < 1e-12, "{sys}: {r:?}");
            }
        }
    }

    #[test]
    fn commuting_draws_satisfy_every_system() {
        let mut s = Sampler::new(6);
        for id in FunctionId::DISTINCT {
            let n = id.fixed_variables().unwrap_or(3);
            let spec = draw_spec(
                id,
                n,
                3,
                &pde_hypotheses(id, n),
                SpectrumRange::default(),
                &mut s,
            )
            .unwrap();
            for sys in PdeSystemId::all(id, n) {
                let r = coefficient_sweep(&sys, &spec, 4).unwrap();
                assert!(r.worst_relative < 1e-10, "{sys}: {r:?}");
            }
        }
    }

    #[test]
    fn pointwise_decreases_with_degree() {
        let mut s = Sampler::new(8);
        let spec = draw_spec(FunctionId::F3, 3, 1, &[], SpectrumRange::default(), &mut s).unwrap();
        let id = PdeSystemId::new(FunctionId::F3, 1);
        let p = [Complex64::new(0.1, 0.0); 3];
        let r: Vec<f64> = [6, 10, 14]
            .iter()
            .map(|&k| {
                pointwise_residual(&id, &spec, &p, &TruncationPolicy::new(k).unwrap())
                    .unwrap()
                    .residual
            })
            .collect();
        assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
        let origin = pointwise_residual(
            &id,
            &spec,
            &[Complex64::new(0.0, 0.0); 3],
            &TruncationPolicy::new(6).unwrap(),
        );
        assert!(origin.unwrap().residual < 1e-12);
    }
}
