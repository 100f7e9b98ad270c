use std::collections::BTreeMap;

use num_complex::Complex64;

use super::residual::first_nonzero;
use super::terms::PdeSystemId;
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::report::{CheckRecord, VerificationReport};
use crate::sampling::Sampler;
use crate::series::{pde_hypotheses, FunctionId, FunctionSpec, Hypothesis, MultiIndex, Role};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeOptions {
    pub seed: u64,
    /// Indices of total degree up to this are searched.
    pub max_degree: usize,
    /// Relative residual above which a coefficient counts as nonzero.
    pub tol: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            max_degree: 6,
            tol: 1e-10,
        }
    }
}

/// Where breaking one commutation hypothesis first shows up.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub hypothesis: Hypothesis,
    /// Earliest (equation, index, relative residual); `None` when every
    /// equation still holds up to the degree cap.
    pub first: Option<(usize, MultiIndex, f64)>,
}

/// 2×2 parameters with every role scalar except the pair `(p, q)`:
/// `p` is diagonal with distinct entries and `q` is diagonal plus a strictly
/// upper perturbation of norm 0.1, so exactly `pq = qp` fails.
pub fn violating_spec(
    id: FunctionId,
    n: usize,
    p: Role,
    q: Role,
    sampler: &mut Sampler,
) -> Result<FunctionSpec> {
    let mut params = BTreeMap::new();
    for role in id.roles(n) {
        let m = if role == p {
            let a = sampler.uniform(0.6, 1.0);
            let b = sampler.uniform(1.4, 1.9);
            ComplexMatrix::from_real_diagonal(&[a, b])
        } else if role == q {
            let d = [sampler.uniform(0.6, 1.9), sampler.uniform(0.6, 1.9)];
            ComplexMatrix::from_real_diagonal(&d) + sampler.strictly_upper(2, 0.1)
        } else {
            ComplexMatrix::scalar(2, Complex64::new(sampler.uniform(0.6, 1.9), 0.0))
        };
        params.insert(role, m);
    }
    FunctionSpec::new(id, n, params)
}

/// Breaks each commutation hypothesis of the system in turn and records
/// the first coefficient at which some equation fails.
pub fn necessity_outcomes(
    id: FunctionId,
    n: usize,
    options: &ProbeOptions,
) -> Result<Vec<ProbeOutcome>> {
    let mut sampler = Sampler::new(options.seed);
    let systems = PdeSystemId::all(id, n);
    let mut out = Vec::new();
    for h in pde_hypotheses(id, n) {
        let Some((p, q)) = h.role_pair() else {
            continue;
        };
        let spec = violating_spec(id, n, p, q, &mut sampler)?;
        let mut first: Option<(usize, MultiIndex, f64)> = None;
        for sys in &systems {
            if let Some((idx, rel)) = first_nonzero(sys, &spec, options.max_degree, options.tol)? {
                let earlier = match &first {
                    None => true,
                    Some((_, best, _)) => (idx.total(), &idx) < (best.total(), best),
                };
                if earlier {
                    first = Some((sys.equation, idx, rel));
                }
            }
        }
        out.push(ProbeOutcome {
            hypothesis: h,
            first,
        });
    }
    Ok(out)
}

/// Report form of [`necessity_outcomes`]: a hypothesis passes when
/// breaking it makes some coefficient of the system nonzero.
pub fn necessity_probe(
    id: FunctionId,
    n: usize,
    options: &ProbeOptions,
) -> Result<VerificationReport> {
    let id = id.canonical();
    let mut report = VerificationReport::new(format!("necessity of commutation hypotheses, {id}"));
    let anchor = format!("{id} bilateral system needs its commutation hypotheses");
    for o in necessity_outcomes(id, n, options)? {
        let check = format!("break {}", o.hypothesis.condition());
        let record = match &o.first {
            Some((eq, idx, rel)) => CheckRecord::pass(check, anchor.clone()).with_reason(format!(
                "equation {eq} fails first at index {idx}, relative residual {rel:.3e}"
            )),
            None => CheckRecord::fail(
                check,
                anchor.clone(),
                format!(
                    "no coefficient up to degree {} detects the violation",
                    options.max_degree
                ),
            ),
        };
        report.push(CheckRecord {
            residual: o.first.as_ref().map(|f| f.2),
            tol: Some(options.tol),
            ..record
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violating_spec_breaks_one_pair() {
        let mut s = Sampler::new(0);
        let spec = violating_spec(FunctionId::F3, 3, Role::Bi(1), Role::Ci(1), &mut s).unwrap();
        let v = crate::series::validate_parameters(&spec);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, "B1C1 = C1B1");
    }

    #[test]
    fn f3_outcomes() {
        let outcomes = necessity_outcomes(FunctionId::F3, 3, &ProbeOptions::default()).unwrap();
        let find = |cond: &str| {
            outcomes
                .iter()
                .find(|o| o.hypothesis.condition() == cond)
                .and_then(|o| o.first.clone())
                .map(|f| f.1.components().to_vec())
        };
        assert_eq!(find("B1C1 = C1B1"), Some(vec![1, 0, 0]));
        for cond in ["B1B2 = B2B1", "C1C2 = C2C1", "B1C2 = C2B1"] {
            assert_eq!(find(cond), Some(vec![0, 1, 0]), "{cond}");
        }
    }
}
