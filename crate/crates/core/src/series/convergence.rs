//! Sufficient conditions for absolute convergence.
//!
//! Only FA–FD and F3 have conditions implemented. For the other triple
//! series no region is asserted and the report says so.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::function::{FunctionId, FunctionSpec, Role};
use crate::matrix::spectral_summary;

/// `lhs < rhs`, with the numbers that were compared.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub condition: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl Inequality {
    fn new(condition: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            condition: condition.into(),
            lhs,
            rhs,
            pass: lhs < rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    Guaranteed,
    NotGuaranteed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub function: FunctionId,
    pub spectral: Vec<Inequality>,
    pub domain: Vec<Inequality>,
    /// False when no sufficient condition is implemented for the id; the
    /// report is then empty and never guaranteed.
    pub stated: bool,
    pub overall: Guarantee,
}

impl ConvergenceReport {
    pub fn is_guaranteed(&self) -> bool {
        self.overall == Guarantee::Guaranteed
    }

    pub fn failures(&self) -> impl Iterator<Item = &Inequality> {
        self.spectral.iter().chain(&self.domain).filter(|c| !c.pass)
    }
}

struct Spectra(BTreeMap<Role, (f64, f64)>);

impl Spectra {
    fn new(spec: &FunctionSpec) -> Self {
        let map = spec
            .params()
            .iter()
            .map(|(role, m)| {
                let ab = spectral_summary(m)
                    .map(|s| (s.alpha, s.beta))
                    .unwrap_or((f64::NAN, f64::NAN));
                (*role, ab)
            })
            .collect();
        Spectra(map)
    }

    fn alpha(&self, r: Role) -> f64 {
        self.0.get(&r).map_or(f64::NAN, |s| s.0)
    }

    fn beta(&self, r: Role) -> f64 {
        self.0.get(&r).map_or(f64::NAN, |s| s.1)
    }
}

/// Checks the sufficient convergence conditions at `point`.
pub fn convergence_report(spec: &FunctionSpec, point: &[Complex64]) -> ConvergenceReport {
    let id = spec.id().canonical();
    let n = spec.n();
    let s = Spectra::new(spec);
    let abs: Vec<f64> = point.iter().map(|z| z.norm()).collect();
    let mut spectral = Vec::new();
    let mut domain = Vec::new();

    let stated = matches!(
        id,
        FunctionId::FA | FunctionId::FB | FunctionId::FC | FunctionId::FD | FunctionId::F3
    );
    if stated {
        for role in spec.params().keys() {
            spectral.push(Inequality::new(
                format!("β({role}) > 0"),
                0.0,
                s.beta(*role),
            ));
        }
    }
    let idx = |i: usize| i as u8 + 1;
    match id {
        FunctionId::FA => {
            spectral.push(Inequality::new("α(A) < 1", s.alpha(Role::A), 1.0));
            for i in 0..n {
                let (b, c) = (Role::Bi(idx(i)), Role::Ci(idx(i)));
                spectral.push(Inequality::new(
                    format!("α({b}) < β({c})"),
                    s.alpha(b),
                    s.beta(c),
                ));
            }
            domain.push(Inequality::new(
                "|x1| + … + |xn| < 1",
                abs.iter().sum(),
                1.0,
            ));
        }
        FunctionId::FB => {
            for i in 0..n {
                let (a, b) = (Role::Ai(idx(i)), Role::Bi(idx(i)));
                spectral.push(Inequality::new(
                    format!("α({a}) + α({b}) < 2"),
                    s.alpha(a) + s.alpha(b),
                    2.0,
                ));
            }
            spectral.push(Inequality::new("β(C) > 1", 1.0, s.beta(Role::C)));
            domain.push(Inequality::new("max |xi| < 1", max_abs(&abs), 1.0));
        }
        FunctionId::FC => {
            spectral.push(Inequality::new(
                "α(A) + α(B) < 2",
                s.alpha(Role::A) + s.alpha(Role::B),
                2.0,
            ));
            for i in 0..n {
                let c = Role::Ci(idx(i));
                spectral.push(Inequality::new(format!("β({c}) > 1"), 1.0, s.beta(c)));
            }
            domain.push(Inequality::new(
                "√|x1| + … + √|xn| < 1",
                abs.iter().map(|a| a.sqrt()).sum(),
                1.0,
            ));
        }
        FunctionId::FD => {
            spectral.push(Inequality::new(
                "α(A) < β(C)",
                s.alpha(Role::A),
                s.beta(Role::C),
            ));
            for i in 0..n {
                let b = Role::Bi(idx(i));
                spectral.push(Inequality::new(format!("α({b}) < 1"), s.alpha(b), 1.0));
            }
            domain.push(Inequality::new("max |xi| < 1", max_abs(&abs), 1.0));
        }
        FunctionId::F3 => {
            let (a1, a2, b1, b2) = (Role::Ai(1), Role::Ai(2), Role::Bi(1), Role::Bi(2));
            let (c1, c2, c3) = (Role::Ci(1), Role::Ci(2), Role::Ci(3));
            spectral.push(Inequality::new("α(A1) < β(C1)", s.alpha(a1), s.beta(c1)));
            spectral.push(Inequality::new("α(A2) < 1", s.alpha(a2), 1.0));
            spectral.push(Inequality::new("α(B1) < 1", s.alpha(b1), 1.0));
            spectral.push(Inequality::new("α(B2) < β(C2)", s.alpha(b2), s.beta(c2)));
            spectral.push(Inequality::new("β(C3) > 1", 1.0, s.beta(c3)));
            // |x| < r, |y| < s, |z| < t for some (1−r)(1−s) = t
            domain.push(Inequality::new("|x| < 1", abs[0], 1.0));
            domain.push(Inequality::new("|y| < 1", abs[1], 1.0));
            domain.push(Inequality::new(
                "|z| < (1−|x|)(1−|y|)",
                abs[2],
                (1.0 - abs[0]) * (1.0 - abs[1]),
            ));
        }
        _ => {}
    }
    let overall = if stated && spectral.iter().chain(&domain).all(|c| c.pass) && point.len() == n {
        Guarantee::Guaranteed
    } else {
        Guarantee::NotGuaranteed
    };
    ConvergenceReport {
        function: spec.id(),
        spectral,
        domain,
        stated,
        overall,
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().cloned().fold(0.0, f64::max)
}
