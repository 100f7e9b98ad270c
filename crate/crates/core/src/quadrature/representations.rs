//! Integral representations of the series, evaluated by cubature as an
//! independent oracle.
//!
//! Integrand factors are multiplied in their printed order even where the
//! hypotheses make them commute.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::cubature::{
    axis_nodes, integrate_on_axes, Block, CubatureResult, Region, Sample, MAX_DIM,
};
use crate::error::{Error, Result};
use crate::matrix::{matrix_gamma_with, reciprocal_gamma_with, ComplexMatrix, MatrixPower};
use crate::series::{
    check_hypotheses, FunctionId, FunctionSpec, Hyper0F1, Hypothesis, LinComb, Role,
};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepresentationId {
    /// n-fold integral over the unit cube.
    FaCube,
    FbSimplex,
    /// Single integral over `[0, 1]`.
    FdEuler,
    FdSimplex,
    Dirichlet,
    F6,
    F7,
    F8,
    F11,
    F12,
    F13,
    HA,
    HB,
    HC,
}

impl RepresentationId {
    pub const ALL: [RepresentationId; 14] = [
        RepresentationId::FaCube,
        RepresentationId::FbSimplex,
        RepresentationId::FdEuler,
        RepresentationId::FdSimplex,
        RepresentationId::Dirichlet,
        RepresentationId::F6,
        RepresentationId::F7,
        RepresentationId::F8,
        RepresentationId::F11,
        RepresentationId::F12,
        RepresentationId::F13,
        RepresentationId::HA,
        RepresentationId::HB,
        RepresentationId::HC,
    ];

    pub fn name(self) -> &'static str {
        use RepresentationId::*;
        match self {
            FaCube => "FA-nfold",
            FbSimplex => "FB-simplex",
            FdEuler => "FD-euler",
            FdSimplex => "FD-simplex",
            Dirichlet => "dirichlet-lemma",
            F6 => "F6",
            F7 => "F7",
            F8 => "F8",
            F11 => "F11",
            F12 => "F12",
            F13 => "F13",
            HA => "HA",
            HB => "HB",
            HC => "HC",
        }
    }

    /// The series this integral represents; `None` for the Dirichlet lemma.
    pub fn function(self) -> Option<FunctionId> {
        use RepresentationId::*;
        Some(match self {
            FaCube => FunctionId::FA,
            FbSimplex => FunctionId::FB,
            FdEuler | FdSimplex => FunctionId::FD,
            Dirichlet => return None,
            F6 => FunctionId::F6,
            F7 => FunctionId::F7,
            F8 => FunctionId::F8,
            F11 => FunctionId::F11,
            F12 => FunctionId::F12,
            F13 => FunctionId::F13,
            HA => FunctionId::HA,
            HB => FunctionId::HB,
            HC => FunctionId::HC,
        })
    }

    /// Neutral description used as a report anchor.
    pub fn anchor(self) -> String {
        use RepresentationId::*;
        match self {
            FaCube => "FA as an n-fold Euler integral over the unit cube".into(),
            FbSimplex => "FB as an integral over the simplex".into(),
            FdEuler => "FD as a single Euler integral".into(),
            FdSimplex => "FD as an integral over the simplex".into(),
            Dirichlet => "matrix Dirichlet integral over the simplex".into(),
            HB => "HB as a Laplace-type integral over the positive octant".into(),
            other => format!("{} integral representation", other.name()),
        }
    }

    /// Representations of `id`, or the reason there are none.
    pub fn for_function(id: FunctionId) -> Result<Vec<RepresentationId>> {
        let id = id.canonical();
        let reps: Vec<_> = Self::ALL
            .into_iter()
            .filter(|r| r.function() == Some(id))
            .collect();
        if !reps.is_empty() {
            return Ok(reps);
        }
        let reason = if id == FunctionId::FC {
            "no integral representation in simple form".to_string()
        } else {
            "no integral representation available".to_string()
        };
        Err(Error::NoRepresentation {
            function: id.to_string(),
            reason,
        })
    }
}

impl fmt::Display for RepresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepresentationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown representation {s:?}; valid: {}",
                    Self::ALL.map(|r| r.name()).join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Tanh-sinh level: step `1/level`.
    pub level: usize,
    /// Half-line integrals stop where the weight falls below this.
    pub tail_tol: f64,
}

impl QuadratureSpec {
    pub fn new(level: usize) -> Result<Self> {
        if level < 3 {
            return Err(Error::InvalidArgument(format!(
                "quadrature level must be at least 3, got {level}"
            )));
        }
        Ok(Self {
            level,
            tail_tol: 1e-18,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            level: 8,
            tail_tol: 1e-18,
        }
    }
}

type Base = Box<dyn Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync>;

enum Part {
    /// `base^{exponent}`
    Pow(Base, LinComb),
    /// `e^{−(u+v+w)}`
    Decay,
    /// `₀F₁(−; param; point[var] · x[a] · x[b])`
    ZeroF1 {
        param: Role,
        var: usize,
        axes: (usize, usize),
    },
}

enum Norm {
    Gamma(LinComb),
    Recip(LinComb),
}

struct Layout {
    blocks: Vec<Block>,
    left: Vec<Norm>,
    parts: Vec<Part>,
    right: Vec<Norm>,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn role(r: Role) -> LinComb {
    LinComb::role(r)
}

fn neg(r: Role) -> LinComb {
    LinComb {
        terms: vec![(r, -1.0)],
        identity: 0.0,
    }
}

/// `expr − I`
fn less_i(l: LinComb) -> LinComb {
    l.plus_identity(-1.0)
}

fn pow(
    base: impl Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync + 'static,
    e: LinComb,
) -> Part {
    Part::Pow(Box::new(base), e)
}

fn coord(i: usize) -> impl Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync {
    move |s, _| c(s.x[i])
}

fn coord_c(i: usize) -> impl Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync {
    move |s, _| c(s.xc[i])
}

fn rest(b: usize) -> impl Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync {
    move |s, _| c(s.rest[b])
}

/// `1 − Σ_{(i, j)} x[i]·point[j]`
fn one_minus(
    pairs: &'static [(usize, usize)],
) -> impl Fn(&Sample, &[Complex64]) -> Complex64 + Send + Sync {
    move |s, p| {
        let mut b = c(1.0);
        for &(i, j) in pairs {
            b -= p[j] * s.x[i];
        }
        b
    }
}

fn indexed(mk: fn(u8) -> Role, n: usize) -> Vec<Role> {
    (1..=n as u8).map(mk).collect()
}

fn commute_within(family: &str, roles: &[Role]) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for (i, &a) in roles.iter().enumerate() {
        for &b in &roles[i + 1..] {
            out.push(Hypothesis::commute(family, a, b));
        }
    }
    out
}

fn commute_across(family: &str, left: &[Role], right: &[Role]) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for &a in left {
        for &b in right {
            out.push(Hypothesis::commute(family, a, b));
        }
    }
    out
}

fn stable(exprs: Vec<LinComb>) -> Vec<Hypothesis> {
    exprs.into_iter().map(Hypothesis::positive_stable).collect()
}

/// Commutation and positive-stability hypotheses of a representation for
/// `n` variables.
pub fn representation_hypotheses(rep: RepresentationId, n: usize) -> Vec<Hypothesis> {
    use RepresentationId as R;
    use Role::*;
    let b = indexed(Bi, n);
    let cs = indexed(Ci, n);
    let mut h = Vec::new();
    match rep {
        R::FaCube => {
            h.extend(commute_within("B_iB_j = B_jB_i", &b));
            h.extend(commute_across("C_iB_j = B_jC_i", &cs, &b));
            h.extend(commute_within("C_iC_j = C_jC_i", &cs));
            h.extend(stable(b.iter().map(|&r| role(r)).collect()));
            h.extend(stable(cs.iter().map(|&r| role(r)).collect()));
            h.extend(stable(
                (1..=n as u8).map(|i| role(Ci(i)).minus(Bi(i))).collect(),
            ));
        }
        R::FbSimplex | R::FdSimplex => {
            h.extend(commute_within("B_iB_j = B_jB_i", &b));
            h.extend(commute_across("CB_j = B_jC", &[C], &b));
            h.extend(stable(b.iter().map(|&r| role(r)).collect()));
            h.extend(stable(vec![role(C), role(C).minus_all(&b)]));
        }
        R::FdEuler => {
            h.extend(commute_across("CB_i = B_iC", &[C], &b));
            h.push(Hypothesis::commute("AC = CA", A, C));
            h.extend(stable(vec![role(A), role(C), role(C).minus(A)]));
        }
        R::Dirichlet => {}
        R::F6 => {
            let a = indexed(Ai, 3);
            let (b, cs) = (indexed(Bi, 2), indexed(Ci, 2));
            h.extend(commute_within("A_iA_j = A_jA_i", &a));
            h.extend(commute_across("B_iC_j = C_jB_i", &b, &cs));
            h.extend(commute_within("C_1C_2 = C_2C_1", &cs));
            h.extend(commute_across("A_iC_j = C_jA_i", &a, &cs));
            h.extend(commute_within("B_1B_2 = B_2B_1", &b));
            h.extend(stable(vec![
                role(Ai(1)),
                role(Ai(2)),
                role(Ai(3)),
                role(Ci(1)),
                role(Ci(2)),
                role(Ci(1)).minus(Ai(1)),
                role(Ci(2)).minus_all(&[Ai(2), Ai(3)]),
            ]));
        }
        R::F7 => {
            let b = indexed(Bi, 3);
            h.extend(commute_within("B_iB_j = B_jB_i", &b));
            h.extend(commute_across("B_iC_1 = C_1B_i", &b, &[Ci(1)]));
            h.extend(stable(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Bi(3)),
                role(Ci(1)),
                role(Ci(1)).minus_all(&b),
            ]));
        }
        R::F8 => {
            let (b, cs) = (indexed(Bi, 3), indexed(Ci, 2));
            h.extend(commute_within("B_iB_j = B_jB_i", &b));
            h.extend(commute_within("C_1C_2 = C_2C_1", &cs));
            h.extend(commute_across("B_iC_j = C_jB_i", &b, &cs));
            h.extend(stable(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Bi(3)),
                role(Ci(1)),
                role(Ci(2)),
                role(Ci(1)).minus(Bi(1)),
                role(Ci(2)).minus_all(&[Bi(2), Bi(3)]),
            ]));
        }
        R::F11 => {
            let (a, b, cs) = (indexed(Ai, 2), indexed(Bi, 2), indexed(Ci, 2));
            h.extend(commute_within("A_1A_2 = A_2A_1", &a));
            h.extend(commute_across("B_iC_j = C_jB_i", &b, &cs));
            h.extend(commute_within("C_1C_2 = C_2C_1", &cs));
            h.extend(commute_across("A_iC_j = C_jA_i", &a, &cs));
            h.extend(stable(vec![
                role(Ai(1)),
                role(Ai(2)),
                role(Ci(1)),
                role(Ci(2)),
                role(Ci(1)).minus(Ai(1)),
                role(Ci(2)).minus(Ai(2)),
            ]));
        }
        R::F12 => {
            h.extend(commute_within(
                "C_1, C_2, B_1, B_2, A_2 commute",
                &[Ci(1), Ci(2), Bi(1), Bi(2), Ai(2)],
            ));
            h.extend(stable(vec![
                role(Ai(2)),
                role(Bi(1)),
                role(Bi(2)),
                role(Ci(1)),
                role(Ci(2)),
                role(Ci(1)).minus(Bi(1)),
                role(Ci(2)).minus_all(&[Ai(2), Bi(2)]),
            ]));
        }
        R::F13 => {
            h.extend(commute_within(
                "C_1, B_1, B_2 commute",
                &[Ci(1), Bi(1), Bi(2)],
            ));
            h.extend(stable(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Ci(1)),
                role(Ci(1)).minus_all(&[Bi(1), Bi(2)]),
            ]));
        }
        R::HA => {
            h.extend(commute_within(
                "B, B', C, C' commute",
                &[B, BPrime, C, CPrime],
            ));
            h.extend(stable(vec![
                role(B),
                role(BPrime),
                role(C),
                role(CPrime),
                role(C).minus(B),
                role(CPrime).minus(BPrime),
            ]));
        }
        R::HB => {
            h.extend(commute_across("B, B' commute with A", &[B, BPrime], &[A]));
            h.push(Hypothesis::commute("BB' = B'B", B, BPrime));
            h.extend(stable(vec![role(A), role(B), role(BPrime)]));
        }
        R::HC => {
            h.extend(commute_within("A, B, C commute", &[A, B, C]));
            h.push(Hypothesis::commute("B'C = CB'", BPrime, C));
            h.extend(stable(vec![
                role(A),
                role(B),
                role(C),
                role(C).minus_all(&[A, B]),
            ]));
        }
    }
    h
}

fn sum_abs(p: &[Complex64], idx: &[usize]) -> f64 {
    idx.iter().map(|&i| p[i].norm()).sum()
}

fn require(ok: bool, condition: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            condition: condition.to_string(),
        })
    }
}

/// Smallest eigenvalue of the quadratic form bounding the HB integrand's
/// exponent; the integral converges when it is positive.
pub fn hb_decay_rate(point: &[Complex64]) -> f64 {
    let (r, s, t) = (
        point[0].norm().sqrt(),
        point[1].norm().sqrt(),
        point[2].norm().sqrt(),
    );
    let m = nalgebra::Matrix3::new(1.0, -r, -s, -r, 1.0, -t, -s, -t, 1.0);
    m.symmetric_eigenvalues().min()
}

/// Domain of absolute convergence of the integral at `point`.
pub fn check_domain(rep: RepresentationId, point: &[Complex64]) -> Result<()> {
    use RepresentationId as R;
    let a = |i: usize| point[i].norm();
    let all: Vec<usize> = (0..point.len()).collect();
    match rep {
        R::FaCube | R::FdSimplex => require(sum_abs(point, &all) < 1.0, "|x1| + … + |xn| < 1"),
        R::FbSimplex | R::FdEuler => require(all.iter().all(|&i| a(i) < 1.0), "max |xi| < 1"),
        R::Dirichlet => Ok(()),
        R::F6 | R::F11 => {
            require(a(0) + a(2) < 1.0, "|x| + |z| < 1")?;
            require(a(1) < 1.0, "|y| < 1")
        }
        R::F7 | R::F13 => {
            require(a(1) + a(2) < 1.0, "|y| + |z| < 1")?;
            require(a(0) < 1.0, "|x| < 1")
        }
        R::F8 => require(a(0) + a(1) + a(2) < 1.0, "|x| + |y| + |z| < 1"),
        R::F12 | R::HA => {
            require(
                a(0) + a(1) + a(2) < 1.0 + a(1) * a(2),
                "|x| + |y| + |z| < 1 + |y||z|",
            )?;
            require(a(1) < 1.0 && a(2) < 1.0, "|y| < 1 and |z| < 1")
        }
        R::HC => require(
            a(0) + a(1) + a(2) + a(0) * a(2) < 1.0 + a(1),
            "|x| + |y| + |z| + |x||z| < 1 + |y|",
        ),
        R::HB => require(
            hb_decay_rate(point) > 0.0,
            "the form u + v + w − 2(√(|x|uv) + √(|y|uw) + √(|z|vw)) is positive definite",
        ),
    }
}

fn layout(rep: RepresentationId, n: usize) -> Layout {
    use RepresentationId as R;
    use Role::*;
    let gammas = |rs: Vec<LinComb>| rs.into_iter().map(Norm::Gamma).collect::<Vec<_>>();
    let recips = |rs: Vec<LinComb>| rs.into_iter().map(Norm::Recip).collect::<Vec<_>>();
    let b: Vec<Role> = indexed(Bi, n);
    match rep {
        R::FaCube => {
            let mut parts = vec![pow(
                move |s: &Sample, p: &[Complex64]| {
                    let mut v = c(1.0);
                    for (pi, xi) in p.iter().zip(&s.x) {
                        v -= pi * xi;
                    }
                    v
                },
                neg(A),
            )];
            for i in 0..n {
                let k = i as u8 + 1;
                parts.push(pow(coord(i), less_i(role(Bi(k)))));
                parts.push(pow(coord_c(i), less_i(role(Ci(k)).minus(Bi(k)))));
            }
            let mut right = gammas(indexed(Ci, n).into_iter().map(role).collect());
            right.extend(recips(b.iter().map(|&r| role(r)).collect()));
            right.extend(recips(
                (1..=n as u8).map(|k| role(Ci(k)).minus(Bi(k))).collect(),
            ));
            Layout {
                blocks: vec![Block::Interval; n],
                left: vec![],
                parts,
                right,
            }
        }
        R::FbSimplex | R::FdSimplex => {
            let mut parts = Vec::new();
            if rep == R::FbSimplex {
                for i in 0..n {
                    parts.push(pow(
                        move |s: &Sample, p: &[Complex64]| c(1.0) - p[i] * s.x[i],
                        neg(Ai(i as u8 + 1)),
                    ));
                }
            } else {
                parts.push(pow(
                    move |s: &Sample, p: &[Complex64]| {
                        let mut v = c(1.0);
                        for (pi, xi) in p.iter().zip(&s.x) {
                            v -= pi * xi;
                        }
                        v
                    },
                    neg(A),
                ));
            }
            for i in 0..n {
                parts.push(pow(coord(i), less_i(role(Bi(i as u8 + 1)))));
            }
            parts.push(pow(rest(0), less_i(role(C).minus_all(&b))));
            let mut right = gammas(vec![role(C)]);
            right.extend(recips(b.iter().map(|&r| role(r)).collect()));
            right.push(Norm::Recip(role(C).minus_all(&b)));
            Layout {
                blocks: vec![Block::Simplex(n)],
                left: vec![],
                parts,
                right,
            }
        }
        R::FdEuler => {
            let mut parts = vec![
                pow(coord(0), less_i(role(A))),
                pow(coord_c(0), less_i(role(C).minus(A))),
            ];
            for i in 0..n {
                parts.push(pow(
                    move |s: &Sample, p: &[Complex64]| c(1.0) - p[i] * s.x[0],
                    neg(Bi(i as u8 + 1)),
                ));
            }
            let mut left = gammas(vec![role(C)]);
            left.extend(recips(vec![role(A), role(C).minus(A)]));
            Layout {
                blocks: vec![Block::Interval],
                left,
                parts,
                right: vec![],
            }
        }
        R::Dirichlet => unreachable!("built from explicit matrices"),
        R::F6 => {
            let mut left = gammas(vec![role(Ci(1)), role(Ci(2))]);
            left.extend(recips(vec![
                role(Ai(1)),
                role(Ai(2)),
                role(Ai(3)),
                role(Ci(1)).minus(Ai(1)),
                role(Ci(2)).minus_all(&[Ai(2), Ai(3)]),
            ]));
            Layout {
                blocks: vec![Block::Interval, Block::Simplex(2)],
                left,
                parts: vec![
                    pow(coord(0), less_i(role(Ai(1)))),
                    pow(coord(1), less_i(role(Ai(2)))),
                    pow(coord(2), less_i(role(Ai(3)))),
                    pow(coord_c(0), less_i(role(Ci(1)).minus(Ai(1)))),
                    pow(rest(1), less_i(role(Ci(2)).minus_all(&[Ai(2), Ai(3)]))),
                    pow(one_minus(&[(1, 1)]), neg(Bi(2))),
                    pow(one_minus(&[(0, 0), (2, 2)]), neg(Bi(1))),
                ],
                right: vec![],
            }
        }
        R::F7 => {
            let b3 = indexed(Bi, 3);
            let mut right = gammas(vec![role(Ci(1))]);
            right.extend(recips(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Bi(3)),
                role(Ci(1)).minus_all(&b3),
            ]));
            Layout {
                blocks: vec![Block::Simplex(3)],
                left: vec![],
                parts: vec![
                    pow(one_minus(&[(0, 0)]), neg(Ai(1))),
                    pow(one_minus(&[(1, 1), (2, 2)]), neg(Ai(2))),
                    pow(coord(0), less_i(role(Bi(1)))),
                    pow(coord(1), less_i(role(Bi(2)))),
                    pow(coord(2), less_i(role(Bi(3)))),
                    pow(rest(0), less_i(role(Ci(1)).minus_all(&b3))),
                ],
                right,
            }
        }
        R::F8 => {
            let mut right = gammas(vec![role(Ci(1)), role(Ci(2))]);
            right.extend(recips(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Bi(3)),
                role(Ci(1)).minus(Bi(1)),
                role(Ci(2)).minus_all(&[Bi(2), Bi(3)]),
            ]));
            Layout {
                blocks: vec![Block::Interval, Block::Simplex(2)],
                left: vec![],
                parts: vec![
                    pow(one_minus(&[(0, 0), (1, 1), (2, 2)]), neg(Ai(1))),
                    pow(coord(0), less_i(role(Bi(1)))),
                    pow(coord(1), less_i(role(Bi(2)))),
                    pow(coord(2), less_i(role(Bi(3)))),
                    pow(coord_c(0), less_i(role(Ci(1)).minus(Bi(1)))),
                    pow(rest(1), less_i(role(Ci(2)).minus_all(&[Bi(2), Bi(3)]))),
                ],
                right,
            }
        }
        R::F11 => {
            let mut left = gammas(vec![role(Ci(1)), role(Ci(2))]);
            left.extend(recips(vec![
                role(Ai(1)),
                role(Ai(2)),
                role(Ci(1)).minus(Ai(1)),
                role(Ci(2)).minus(Ai(2)),
            ]));
            Layout {
                blocks: vec![Block::Interval, Block::Interval],
                left,
                parts: vec![
                    pow(coord(0), less_i(role(Ai(1)))),
                    pow(coord(1), less_i(role(Ai(2)))),
                    pow(coord_c(0), less_i(role(Ci(1)).minus(Ai(1)))),
                    pow(coord_c(1), less_i(role(Ci(2)).minus(Ai(2)))),
                    pow(one_minus(&[(0, 0), (1, 2)]), neg(Bi(1))),
                    pow(one_minus(&[(1, 1)]), neg(Bi(2))),
                ],
                right: vec![],
            }
        }
        R::F12 => {
            let mut right = gammas(vec![role(Ci(1)), role(Ci(2))]);
            right.extend(recips(vec![
                role(Ai(2)),
                role(Bi(1)),
                role(Bi(2)),
                role(Ci(1)).minus(Bi(1)),
                role(Ci(2)).minus_all(&[Ai(2), Bi(2)]),
            ]));
            Layout {
                blocks: vec![Block::Interval, Block::Simplex(2)],
                left: vec![],
                parts: vec![
                    pow(one_minus(&[(1, 1)]), role(Ai(1))),
                    pow(
                        |s: &Sample, p: &[Complex64]| {
                            c(1.0) - p[0] * s.x[0] - p[1] * s.x[1] - p[2] * s.x[2]
                                + p[1] * p[2] * (s.x[1] * s.x[2])
                        },
                        neg(Ai(1)),
                    ),
                    pow(coord(0), less_i(role(Bi(1)))),
                    pow(coord(1), less_i(role(Ai(2)))),
                    pow(coord(2), less_i(role(Bi(2)))),
                    pow(coord_c(0), less_i(role(Ci(1)).minus(Bi(1)))),
                    pow(rest(1), less_i(role(Ci(2)).minus_all(&[Ai(2), Bi(2)]))),
                    pow(one_minus(&[(1, 1)]), neg(Bi(1))),
                ],
                right,
            }
        }
        R::F13 => {
            let mut right = gammas(vec![role(Ci(1))]);
            right.extend(recips(vec![
                role(Bi(1)),
                role(Bi(2)),
                role(Ci(1)).minus_all(&[Bi(1), Bi(2)]),
            ]));
            Layout {
                blocks: vec![Block::Simplex(2)],
                left: vec![],
                parts: vec![
                    pow(one_minus(&[(0, 0)]), neg(Ai(1))),
                    pow(one_minus(&[(1, 1), (0, 2)]), neg(Ai(2))),
                    pow(coord(0), less_i(role(Bi(1)))),
                    pow(coord(1), less_i(role(Bi(2)))),
                    pow(rest(0), less_i(role(Ci(1)).minus_all(&[Bi(1), Bi(2)]))),
                ],
                right,
            }
        }
        R::HA => {
            let mut right = gammas(vec![role(C), role(CPrime)]);
            right.extend(recips(vec![
                role(B),
                role(BPrime),
                role(C).minus(B),
                role(CPrime).minus(BPrime),
            ]));
            Layout {
                blocks: vec![Block::Interval, Block::Interval],
                left: vec![],
                parts: vec![
                    pow(
                        |s: &Sample, p: &[Complex64]| {
                            let (u, v) = (s.x[0], s.x[1]);
                            c(1.0) - p[0] * u - p[1] * v - p[2] * v + p[1] * p[2] * (v * v)
                        },
                        neg(A),
                    ),
                    pow(one_minus(&[(1, 1)]), role(A)),
                    pow(coord(0), less_i(role(B))),
                    pow(coord(1), less_i(role(BPrime))),
                    pow(coord_c(0), less_i(role(C).minus(B))),
                    pow(coord_c(1), less_i(role(CPrime).minus(BPrime))),
                    pow(one_minus(&[(1, 1)]), neg(B)),
                ],
                right,
            }
        }
        R::HB => Layout {
            // cutoff is filled in from the point
            blocks: vec![Block::HalfLine { cutoff: 0.0 }; 3],
            left: recips(vec![role(A), role(B), role(BPrime)]),
            parts: vec![
                Part::Decay,
                pow(coord(1), less_i(role(A))),
                pow(coord(0), less_i(role(B))),
                pow(coord(2), less_i(role(BPrime))),
                Part::ZeroF1 {
                    param: C,
                    var: 0,
                    axes: (0, 1),
                },
                Part::ZeroF1 {
                    param: CPrime,
                    var: 1,
                    axes: (0, 2),
                },
                Part::ZeroF1 {
                    param: CDoublePrime,
                    var: 2,
                    axes: (1, 2),
                },
            ],
            right: vec![],
        },
        R::HC => {
            let mut left = gammas(vec![role(C)]);
            left.extend(recips(vec![role(A), role(B), role(C).minus_all(&[A, B])]));
            Layout {
                blocks: vec![Block::Interval, Block::Interval],
                left,
                parts: vec![
                    pow(coord(0), less_i(role(A))),
                    pow(coord(1), less_i(role(B))),
                    pow(coord_c(0), less_i(role(C).minus(A))),
                    pow(coord_c(1), less_i(role(C).minus_all(&[A, B]))),
                    pow(one_minus(&[(0, 0)]), neg(B)),
                    pow(one_minus(&[(0, 0)]), role(BPrime)),
                    pow(
                        |s: &Sample, p: &[Complex64]| {
                            let (u, v) = (s.x[0], s.x[1]);
                            c(1.0) - p[0] * u - p[1] * v - p[2] * u
                                + p[1] * (u * v)
                                + p[0] * p[2] * (u * u)
                        },
                        neg(BPrime),
                    ),
                ],
                right: vec![],
            }
        }
    }
}

enum Prepared {
    Pow(Base, MatrixPower),
    Decay,
    Table {
        values: Vec<ComplexMatrix>,
        stride: usize,
        axes: (usize, usize),
    },
}

fn eval_parts(parts: &[Prepared], s: &Sample, point: &[Complex64], order: usize) -> ComplexMatrix {
    let mut acc: Option<ComplexMatrix> = None;
    let mut scalar = c(1.0);
    for part in parts {
        let m = match part {
            Prepared::Pow(base, power) => {
                let b = base(s, point);
                // a coordinate underflowed to the endpoint; its weight is negligible
                if b == c(0.0) {
                    return ComplexMatrix::zeros(order);
                }
                power.pow(b)
            }
            Prepared::Decay => {
                scalar *= (-(s.x[0] + s.x[1] + s.x[2])).exp();
                continue;
            }
            Prepared::Table {
                values,
                stride,
                axes,
            } => values[s.idx[axes.0] * stride + s.idx[axes.1]].clone(),
        };
        acc = Some(match acc {
            None => m,
            Some(a) => a * m,
        });
    }
    acc.unwrap_or_else(|| ComplexMatrix::identity(order))
        .scale(scalar)
}

fn normalizer(norms: &[Norm], spec: &FunctionSpec, tol: &Tolerances) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::identity(spec.order());
    for n in norms {
        let f = match n {
            Norm::Gamma(e) => matrix_gamma_with(&e.eval(spec)?, &e.to_string(), tol)?,
            Norm::Recip(e) => reciprocal_gamma_with(&e.eval(spec)?, &e.to_string(), tol)?,
        };
        m = m * f;
    }
    Ok(m)
}

fn first_violation(spec: &FunctionSpec, hypotheses: &[Hypothesis], tol: &Tolerances) -> Result<()> {
    match check_hypotheses(spec, hypotheses, tol).into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::Hypothesis {
            condition: v.condition,
            residual: v.residual,
        }),
    }
}

/// Evaluates representation `rep` of `spec` at `point`.
pub fn integral_value(
    rep: RepresentationId,
    spec: &FunctionSpec,
    point: &[Complex64],
    q: &QuadratureSpec,
) -> Result<CubatureResult> {
    integral_value_with(rep, spec, point, q, &Tolerances::default())
}

pub fn integral_value_with(
    rep: RepresentationId,
    spec: &FunctionSpec,
    point: &[Complex64],
    q: &QuadratureSpec,
    tol: &Tolerances,
) -> Result<CubatureResult> {
    let Some(function) = rep.function() else {
        return Err(Error::InvalidArgument(
            "the Dirichlet lemma has no series; use dirichlet_simplex_integral".into(),
        ));
    };
    if spec.id().canonical() != function {
        return Err(Error::InvalidArgument(format!(
            "{rep} represents {function}, not {}",
            spec.id()
        )));
    }
    let n = spec.n();
    if point.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} takes {n} variables, got {}",
            spec.id(),
            point.len()
        )));
    }
    let dim = match rep {
        RepresentationId::FdEuler => 1,
        RepresentationId::FaCube | RepresentationId::FbSimplex | RepresentationId::FdSimplex => n,
        _ => 0,
    };
    if dim > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "{rep} needs a {dim}-dimensional integral; at most {MAX_DIM} are supported"
        )));
    }
    check_domain(rep, point)?;
    first_violation(spec, &representation_hypotheses(rep, n), tol)?;

    let mut lay = layout(rep, n);
    if rep == RepresentationId::HB {
        // e^{-rate (u+v+w)} bounds the integrand; stop where it is below tail_tol,
        // with room for the algebraic factors
        let rate = hb_decay_rate(point);
        let cutoff = ((1.0 / q.tail_tol).ln() + 16.0) / rate;
        lay.blocks = vec![
            Block::HalfLine {
                cutoff: cutoff.min(1e4)
            };
            3
        ];
    }
    let region = Region::new(lay.blocks.clone())?;
    let axes = axis_nodes(&region, q.level);

    let mut prepared = Vec::with_capacity(lay.parts.len());
    for part in lay.parts {
        prepared.push(match part {
            Part::Pow(base, e) => Prepared::Pow(base, MatrixPower::new(&e.eval(spec)?, tol)),
            Part::Decay => Prepared::Decay,
            Part::ZeroF1 {
                param,
                var,
                axes: (a, b),
            } => Prepared::Table {
                values: zero_f1_table(spec.param(param)?, point[var], &axes[a], &axes[b])?,
                stride: axes[b].len(),
                axes: (a, b),
            },
        });
    }
    let left = normalizer(&lay.left, spec, tol)?;
    let right = normalizer(&lay.right, spec, tol)?;
    let order = spec.order();
    let mut result = integrate_on_axes(&region, &axes, order, |s| {
        eval_parts(&prepared, s, point, order)
    });
    let scale = left.frobenius_norm() * right.frobenius_norm();
    result.value = &(&left * &result.value) * &right;
    result.error_estimate *= scale;
    Ok(result)
}

fn zero_f1_table(
    c_param: &ComplexMatrix,
    z: Complex64,
    a: &[super::rule::Node],
    b: &[super::rule::Node],
) -> Result<Vec<ComplexMatrix>> {
    let mut f = Hyper0F1::new(c_param);
    let max_a = a.iter().map(|n| n.x).fold(0.0, f64::max);
    let max_b = b.iter().map(|n| n.x).fold(0.0, f64::max);
    // grows the inverse table enough for every smaller argument
    f.eval(z * (max_a * max_b))?;
    let f = &f;
    (0..a.len() * b.len())
        .into_par_iter()
        .map(|k| f.eval_ready(z * (a[k / b.len()].x * b[k % b.len()].x)))
        .collect()
}

/// `∫_{Σu ≤ 1} u₁^{A₁−I}⋯u_n^{A_n−I}(1 − Σu)^{C−I} du` by cubature.
pub fn dirichlet_simplex_integral(
    a: &[ComplexMatrix],
    c_mat: &ComplexMatrix,
    q: &QuadratureSpec,
) -> Result<CubatureResult> {
    let n = a.len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "Dirichlet integral needs 1..={MAX_DIM} matrices, got {n}"
        )));
    }
    let tol = Tolerances::default();
    for (i, m) in a.iter().enumerate() {
        m.check_same_order(c_mat)?;
        crate::matrix::require_positive_stable(m, &format!("A{}", i + 1))?;
    }
    crate::matrix::require_positive_stable(c_mat, "C")?;
    let mut parts = Vec::with_capacity(n + 1);
    for (i, m) in a.iter().enumerate() {
        parts.push(Prepared::Pow(
            Box::new(coord(i)),
            MatrixPower::new(&m.shift(-1.0), &tol),
        ));
    }
    parts.push(Prepared::Pow(
        Box::new(rest(0)),
        MatrixPower::new(&c_mat.shift(-1.0), &tol),
    ));
    let region = Region::simplex(n)?;
    let axes = axis_nodes(&region, q.level);
    let order = c_mat.order();
    Ok(integrate_on_axes(&region, &axes, order, |s| {
        eval_parts(&parts, s, &[], order)
    }))
}

/// `Γ(A₁)⋯Γ(A_n)Γ(C)Γ⁻¹(A₁ + ⋯ + A_n + C)`, the closed form of
/// [`dirichlet_simplex_integral`] for commuting arguments.
pub fn dirichlet_closed_form(a: &[ComplexMatrix], c_mat: &ComplexMatrix) -> Result<ComplexMatrix> {
    let tol = Tolerances::default();
    let mut m = ComplexMatrix::identity(c_mat.order());
    let mut total = c_mat.clone();
    for (i, ai) in a.iter().enumerate() {
        m = m * matrix_gamma_with(ai, &format!("A{}", i + 1), &tol)?;
        total += ai;
    }
    m = m * matrix_gamma_with(c_mat, "C", &tol)?;
    Ok(m * reciprocal_gamma_with(&total, "A1 + … + An + C", &tol)?)
}
