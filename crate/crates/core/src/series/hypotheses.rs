//! Commutation and positive-stability hypotheses on the parameters.

use super::expr::LinComb;
use super::function::{FunctionId, FunctionSpec, Role};
use crate::matrix::{commute_residual, spectral_summary};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub enum Hypothesis {
    /// `left·right = right·left`; `family` is the generic form, such as
    /// `B_iC_j = C_jB_i`.
    Commute {
        family: String,
        left: LinComb,
        right: LinComb,
    },
    PositiveStable(LinComb),
}

impl Hypothesis {
    pub fn commute(family: &str, left: impl Into<LinComb>, right: impl Into<LinComb>) -> Self {
        Hypothesis::Commute {
            family: family.to_string(),
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn positive_stable(expr: impl Into<LinComb>) -> Self {
        Hypothesis::PositiveStable(expr.into())
    }

    /// Concrete condition, e.g. `B1C1 = C1B1` or `β(C − A) > 0`.
    pub fn condition(&self) -> String {
        match self {
            Hypothesis::Commute { left, right, .. } => {
                let wrap = |l: &LinComb| {
                    if l.terms.len() + usize::from(l.identity != 0.0) > 1 {
                        format!("({l})")
                    } else {
                        l.to_string()
                    }
                };
                let (l, r) = (wrap(left), wrap(right));
                format!("{l}{r} = {r}{l}")
            }
            Hypothesis::PositiveStable(e) => format!("β({e}) > 0"),
        }
    }

    pub fn family(&self) -> String {
        match self {
            Hypothesis::Commute { family, .. } => family.clone(),
            Hypothesis::PositiveStable(_) => "positive stable".to_string(),
        }
    }

    /// Pair of roles that must commute, when the hypothesis is a plain
    /// two-role commutation.
    pub fn role_pair(&self) -> Option<(Role, Role)> {
        match self {
            Hypothesis::Commute { left, right, .. } => {
                let single = |l: &LinComb| match (l.terms.as_slice(), l.identity) {
                    ([(r, c)], i) if *c == 1.0 && i == 0.0 => Some(*r),
                    _ => None,
                };
                Some((single(left)?, single(right)?))
            }
            Hypothesis::PositiveStable(_) => None,
        }
    }
}

/// A hypothesis that failed, with the measured quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub family: String,
    pub condition: String,
    /// Commutator norm, or β of the expression for positive stability.
    pub residual: f64,
    /// Commutator threshold, or 0 for positive stability.
    pub threshold: f64,
}

/// Evaluates every hypothesis against `spec` and returns the failures.
pub fn check_hypotheses(
    spec: &FunctionSpec,
    hypotheses: &[Hypothesis],
    tol: &Tolerances,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for h in hypotheses {
        match h {
            Hypothesis::Commute { left, right, .. } => {
                let (Ok(l), Ok(r)) = (left.eval(spec), right.eval(spec)) else {
                    out.push(Violation {
                        family: h.family(),
                        condition: format!("{} (parameter missing)", h.condition()),
                        residual: f64::NAN,
                        threshold: 0.0,
                    });
                    continue;
                };
                let res = commute_residual(&l, &r).unwrap_or(f64::INFINITY);
                let threshold = tol.commute_threshold(l.frobenius_norm(), r.frobenius_norm());
                if !(res <= threshold) {
                    out.push(Violation {
                        family: h.family(),
                        condition: h.condition(),
                        residual: res,
                        threshold,
                    });
                }
            }
            Hypothesis::PositiveStable(e) => {
                let beta = e
                    .eval(spec)
                    .ok()
                    .and_then(|m| spectral_summary(&m).ok())
                    .map_or(f64::NAN, |s| s.beta);
                if !(beta > 0.0) {
                    out.push(Violation {
                        family: h.family(),
                        condition: h.condition(),
                        residual: beta,
                        threshold: 0.0,
                    });
                }
            }
        }
    }
    out
}

fn pairs_within(family: &str, roles: &[Role]) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for (i, &a) in roles.iter().enumerate() {
        for &b in &roles[i + 1..] {
            out.push(Hypothesis::commute(family, a, b));
        }
    }
    out
}

fn pairs_across(family: &str, left: &[Role], right: &[Role]) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for &a in left {
        for &b in right {
            out.push(Hypothesis::commute(family, a, b));
        }
    }
    out
}

fn indexed(mk: fn(u8) -> Role, n: usize) -> Vec<Role> {
    (1..=n as u8).map(mk).collect()
}

/// Commutation hypotheses under which the series satisfies its bilateral
/// system.
pub fn pde_hypotheses(id: FunctionId, n: usize) -> Vec<Hypothesis> {
    use Role::*;
    let a = |k| indexed(Ai, k);
    let b = |k| indexed(Bi, k);
    let c = |k| indexed(Ci, k);
    let mut h = Vec::new();
    match id.canonical() {
        FunctionId::FA => {
            h.extend(pairs_within("B_iB_j = B_jB_i", &b(n)));
            h.extend(pairs_across("C_iB_j = B_jC_i", &c(n), &b(n)));
            h.extend(pairs_within("C_iC_j = C_jC_i", &c(n)));
        }
        FunctionId::FB => {
            h.extend(pairs_within("A_iA_j = A_jA_i", &a(n)));
            h.extend(pairs_within("B_iB_j = B_jB_i", &b(n)));
            h.extend(pairs_across("CB_j = B_jC", &[C], &b(n)));
        }
        FunctionId::FC => {
            h.extend(pairs_within("C_iC_j = C_jC_i", &c(n)));
            h.extend(pairs_across("C_jB = BC_j", &c(n), &[B]));
        }
        FunctionId::FD => {
            h.extend(pairs_within("B_iB_j = B_jB_i", &b(n)));
            h.extend(pairs_across("CB_j = B_jC", &[C], &b(n)));
        }
        FunctionId::F3 => {
            h.extend(pairs_within("A_1A_2 = A_2A_1", &a(2)));
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(2), &c(3)));
            h.extend(pairs_within("C_iC_j = C_jC_i", &c(3)));
        }
        FunctionId::F4 => {
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_within("C_iC_j = C_jC_i", &c(3)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(2), &c(3)));
        }
        FunctionId::F6 => {
            h.extend(pairs_within("A_iA_j = A_jA_i", &a(3)));
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_within("C_iC_j = C_jC_i", &c(2)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(2), &c(2)));
        }
        FunctionId::F7 => {
            h.extend(pairs_within("A_1A_2 = A_2A_1", &a(2)));
            h.extend(pairs_within("B_iB_j = B_jB_i", &b(3)));
            h.extend(pairs_across("B_iC_1 = C_1B_i", &b(3), &c(1)));
        }
        FunctionId::F8 => {
            h.extend(pairs_within("B_iB_j = B_jB_i", &b(3)));
            h.extend(pairs_within("C_1C_2 = C_2C_1", &c(2)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(3), &c(2)));
        }
        FunctionId::F10 | FunctionId::F11 | FunctionId::F12 => {
            h.extend(pairs_within("A_1A_2 = A_2A_1", &a(2)));
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_within("C_1C_2 = C_2C_1", &c(2)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(2), &c(2)));
        }
        FunctionId::F13 => {
            h.extend(pairs_within("A_1A_2 = A_2A_1", &a(2)));
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_across("B_iC_1 = C_1B_i", &b(2), &c(1)));
        }
        FunctionId::F14 => {
            h.extend(pairs_within("B_1B_2 = B_2B_1", &b(2)));
            h.extend(pairs_within("C_1C_2 = C_2C_1", &c(2)));
            h.extend(pairs_across("B_iC_j = C_jB_i", &b(2), &c(2)));
        }
        FunctionId::HA => h.extend(pairs_within(
            "B, B', C, C' commute",
            &[B, BPrime, C, CPrime],
        )),
        FunctionId::HB => h.extend(pairs_within(
            "B, B', C, C', C'' commute",
            &[B, BPrime, C, CPrime, CDoublePrime],
        )),
        FunctionId::HC => h.extend(pairs_within("B, B', C commute", &[B, BPrime, C])),
        FunctionId::F1 | FunctionId::F2 | FunctionId::F5 | FunctionId::F9 => {
            unreachable!("canonical")
        }
    }
    h
}

/// Checks the bilateral-system hypotheses of `spec`; empty means all hold.
pub fn validate_parameters(spec: &FunctionSpec) -> Vec<Violation> {
    validate_parameters_with(spec, &Tolerances::default())
}

pub fn validate_parameters_with(spec: &FunctionSpec, tol: &Tolerances) -> Vec<Violation> {
    check_hypotheses(spec, &pde_hypotheses(spec.id(), spec.n()), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    fn f3_spec(b1: ComplexMatrix, c1: ComplexMatrix) -> FunctionSpec {
        let d = |v: f64| ComplexMatrix::from_real_diagonal(&[v, v + 0.5]);
        FunctionSpec::from_pairs(
            FunctionId::F3,
            3,
            [
                (Role::Ai(1), d(1.0)),
                (Role::Ai(2), d(1.5)),
                (Role::Bi(1), b1),
                (Role::Bi(2), d(0.7)),
                (Role::Ci(1), c1),
                (Role::Ci(2), d(2.0)),
                (Role::Ci(3), d(3.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn diagonal_parameters_pass() {
        let spec = f3_spec(
            ComplexMatrix::from_real_diagonal(&[0.3, 0.4]),
            ComplexMatrix::from_real_diagonal(&[1.0, 2.0]),
        );
        assert!(validate_parameters(&spec).is_empty());
    }

    #[test]
    fn f3_b1c1_violation() {
        let nil = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let spec = f3_spec(nil, ComplexMatrix::from_real_diagonal(&[1.0, 2.0]));
        let v = validate_parameters(&spec);
        let hit = v
            .iter()
            .find(|v| v.condition == "B1C1 = C1B1")
            .expect("B1C1 reported");
        assert!((hit.residual - 1.0).abs() < 1e-15);
        assert_eq!(hit.family, "B_iC_j = C_jB_i");
    }

    #[test]
    fn fa_noncommuting_c() {
        let d = |v: f64| ComplexMatrix::from_real_diagonal(&[v, v + 1.0]);
        let full = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![0.0, 3.0]]).unwrap();
        let spec = FunctionSpec::from_pairs(
            FunctionId::FA,
            2,
            [
                (Role::A, full.clone()),
                (Role::Bi(1), ComplexMatrix::identity(2)),
                (Role::Bi(2), ComplexMatrix::identity(2)),
                (Role::Ci(1), d(1.0)),
                (Role::Ci(2), full),
            ],
        )
        .unwrap();
        let v = validate_parameters(&spec);
        assert!(v.iter().any(|v| v.family == "C_iC_j = C_jC_i"));
        // A is unconstrained
        assert!(v.iter().all(|v| !v.condition.contains('A')));
    }

    #[test]
    fn condition_strings() {
        let h = Hypothesis::positive_stable(LinComb::role(Role::C).minus(Role::A));
        assert_eq!(h.condition(), "β(C − A) > 0");
        let h = Hypothesis::commute("x", Role::BPrime, Role::C);
        assert_eq!(h.condition(), "B'C = CB'");
        assert_eq!(h.role_pair(), Some((Role::BPrime, Role::C)));
    }
}
