//! Bilateral systems as sums of `c · x^μ · L · ∂^δU · R`.
//!
//! Three-variable systems use `x, y, z` for variables 0, 1, 2.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::{FunctionId, FunctionSpec, LinComb, MatExpr, Role};

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTerm {
    pub coeff: f64,
    /// Exponents of the scalar monomial multiplier.
    pub monomial: Vec<usize>,
    /// Derivative orders per variable; total order at most 2.
    pub derivative: Vec<usize>,
    pub left: MatExpr,
    pub right: MatExpr,
}

impl OperatorTerm {
    fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        let sign = if self.coeff < 0.0 { "−" } else { "+" };
        s.push_str(sign);
        let mag = self.coeff.abs();
        if mag != 1.0 {
            s.push_str(&format!("{mag}"));
        }
        for (i, &e) in self.monomial.iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&names[i]),
                _ => s.push_str(&format!("{}^{e}", names[i])),
            }
        }
        if !self.left.is_identity() {
            s.push_str(&wrap(&self.left));
        }
        s.push('U');
        let subs: String = self
            .derivative
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(names[i].clone(), d))
            .collect();
        if !subs.is_empty() {
            s.push('_');
            s.push_str(&subs);
        }
        if !self.right.is_identity() {
            s.push_str(&wrap(&self.right));
        }
        s
    }
}

fn wrap(e: &MatExpr) -> String {
    let t = e.to_string();
    if t.contains(' ') {
        format!("({t})")
    } else {
        t
    }
}

/// One equation of a bilateral system. `equation` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdeSystemId {
    pub function: FunctionId,
    pub equation: usize,
}

impl PdeSystemId {
    pub fn new(function: FunctionId, equation: usize) -> Self {
        Self {
            function: function.canonical(),
            equation,
        }
    }

    /// All equations of the system in `n` variables.
    pub fn all(function: FunctionId, n: usize) -> Vec<PdeSystemId> {
        (1..=equation_count(function, n))
            .map(|e| PdeSystemId::new(function, e))
            .collect()
    }

    /// Neutral description used as a report anchor.
    pub fn anchor(&self) -> String {
        format!(
            "{} bilateral system, equation {}",
            self.function, self.equation
        )
    }
}

impl fmt::Display for PdeSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-sys eq {}", self.function, self.equation)
    }
}

pub fn equation_count(function: FunctionId, n: usize) -> usize {
    function.fixed_variables().unwrap_or(n)
}

pub fn variable_names(n: usize) -> Vec<String> {
    if n == 3 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Human-readable equation, e.g. `+xU_xx −x^2U_xx … = 0`.
pub fn format_terms(terms: &[OperatorTerm], n: usize) -> String {
    let names = variable_names(n);
    let mut s = terms
        .iter()
        .map(|t| t.to_text(&names))
        .collect::<Vec<_>>()
        .join(" ");
    s.push_str(" = 0");
    s
}

struct Eq {
    n: usize,
    terms: Vec<OperatorTerm>,
}

impl Eq {
    fn new(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
        }
    }

    fn unit(&self, vars: &[usize]) -> Vec<usize> {
        let mut v = vec![0; self.n];
        for &i in vars {
            v[i] += 1;
        }
        v
    }

    fn t(
        &mut self,
        coeff: f64,
        mono: &[usize],
        der: &[usize],
        left: MatExpr,
        right: MatExpr,
    ) -> &mut Self {
        let term = OperatorTerm {
            coeff,
            monomial: self.unit(mono),
            derivative: self.unit(der),
            left,
            right,
        };
        self.terms.push(term);
        self
    }

    /// Scalar term `c · x^mono · ∂^der U`.
    fn s(&mut self, coeff: f64, mono: &[usize], der: &[usize]) -> &mut Self {
        self.t(coeff, mono, der, MatExpr::identity(), MatExpr::identity())
    }

    /// `v(1 − v) U_vv`
    fn x1mx(&mut self, v: usize) -> &mut Self {
        self.s(1.0, &[v], &[v, v]).s(-1.0, &[v, v], &[v, v])
    }

    /// `U_v (C − (B + I) v)`
    fn ushift(&mut self, v: usize, c: Role, b: Role) -> &mut Self {
        self.t(1.0, &[], &[v], MatExpr::identity(), c.into()).t(
            -1.0,
            &[v],
            &[v],
            MatExpr::identity(),
            plus_i(b),
        )
    }

    /// `−M (Σ_{v ∈ vs} v U_v)`
    fn l_euler(&mut self, m: impl Into<MatExpr> + Clone, vs: &[usize]) -> &mut Self {
        for &v in vs {
            self.t(-1.0, &[v], &[v], m.clone().into(), MatExpr::identity());
        }
        self
    }

    /// `−(Σ_{v ∈ vs} v U_v) M`
    fn r_euler(&mut self, m: impl Into<MatExpr> + Clone, vs: &[usize]) -> &mut Self {
        for &v in vs {
            self.t(-1.0, &[v], &[v], MatExpr::identity(), m.clone().into());
        }
        self
    }

    /// `−A U B`
    fn aub(&mut self, a: Role, b: impl Into<MatExpr>) -> &mut Self {
        self.t(-1.0, &[], &[], a.into(), b.into())
    }

    fn done(&mut self) -> Vec<OperatorTerm> {
        std::mem::take(&mut self.terms)
    }
}

fn plus_i(r: Role) -> MatExpr {
    LinComb::role(r).plus_identity(1.0).into()
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// Terms of one equation, as printed.
pub fn system_terms(id: &PdeSystemId, spec: &FunctionSpec) -> Result<Vec<OperatorTerm>> {
    if spec.id().canonical() != id.function {
        return Err(Error::InvalidArgument(format!(
            "system {id} does not belong to function {}",
            spec.id()
        )));
    }
    equation_terms(id.function, spec.n(), id.equation)
}

/// As [`system_terms`], from the function id and variable count alone.
pub fn equation_terms(
    function: FunctionId,
    n: usize,
    equation: usize,
) -> Result<Vec<OperatorTerm>> {
    let count = equation_count(function, n);
    if equation == 0 || equation > count {
        return Err(Error::InvalidArgument(format!(
            "{function} system has equations 1..={count}, got {equation}"
        )));
    }
    let i = equation - 1;
    let function = function.canonical();
    if function.is_general() {
        return Ok(general_terms(function, n, i));
    }
    Ok(triple_terms(function, i))
}

fn general_terms(function: FunctionId, n: usize, i: usize) -> Vec<OperatorTerm> {
    use Role::*;
    let k = i as u8 + 1;
    let mut e = Eq::new(n);
    e.x1mx(i);
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let all: Vec<usize> = (0..n).collect();
    match function {
        FunctionId::FA => {
            for &j in &others {
                e.s(-1.0, &[i, j], &[i, j]);
            }
            e.l_euler(plus_i(A), &[i]);
            e.r_euler(Bi(k), &all);
            e.t(1.0, &[], &[i], MatExpr::identity(), Ci(k).into());
            e.aub(A, Bi(k));
        }
        FunctionId::FB => {
            for &j in &others {
                e.s(1.0, &[j], &[i, j]);
            }
            e.l_euler(plus_i(Ai(k)), &[i]);
            e.r_euler(Bi(k), &[i]);
            e.t(1.0, &[], &[i], MatExpr::identity(), C.into());
            e.aub(Ai(k), Bi(k));
        }
        FunctionId::FC => {
            for &j in &others {
                e.s(-1.0, &[j, j], &[j, j]);
            }
            for (a, &r) in all.iter().enumerate() {
                for &s in &all[a + 1..] {
                    e.s(-2.0, &[r, s], &[r, s]);
                }
            }
            e.l_euler(plus_i(A), &all);
            e.t(1.0, &[], &[i], MatExpr::identity(), Ci(k).into());
            e.r_euler(B, &all);
            e.aub(A, B);
        }
        FunctionId::FD => {
            for &j in &others {
                e.s(1.0, &[j], &[i, j]);
                e.s(-1.0, &[i, j], &[i, j]);
            }
            e.l_euler(plus_i(A), &[i]);
            e.t(1.0, &[], &[i], MatExpr::identity(), C.into());
            e.r_euler(Bi(k), &all);
            e.aub(A, Bi(k));
        }
        _ => unreachable!("general functions only"),
    }
    e.done()
}

fn triple_terms(function: FunctionId, i: usize) -> Vec<OperatorTerm> {
    use Role::*;
    let (a1, a2, a3) = (Ai(1), Ai(2), Ai(3));
    let (b1, b2, b3) = (Bi(1), Bi(2), Bi(3));
    let (c1, c2, c3) = (Ci(1), Ci(2), Ci(3));
    let bb = MatExpr(vec![B.into(), BPrime.into()]);
    let mut e = Eq::new(3);
    match (function, i) {
        (FunctionId::F3, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F3, 1) => e
            .x1mx(Y)
            .s(-1.0, &[Y, Z], &[Y, Z])
            .ushift(Y, c2, b2)
            .r_euler(b2, &[Z])
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        (FunctionId::F3, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(Z, c3, b1)
            .r_euler(b1, &[Y])
            .l_euler(a2, &[X, Z])
            .aub(a2, b1),

        (FunctionId::F4, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .r_euler(b1, &[Y, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X])
            .aub(a1, b1),
        (FunctionId::F4, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-2.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[Z, Z], &[Z, Z])
            .r_euler(b2, &[X])
            .ushift(Y, c2, b2)
            .l_euler(a1, &[Y, Z])
            .r_euler(plus_i(b2), &[Z])
            .aub(a1, b2),
        (FunctionId::F4, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-2.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[Y, Y], &[Y, Y])
            .r_euler(b2, &[X])
            .ushift(Z, c3, b2)
            .l_euler(a1, &[Y, Z])
            .r_euler(plus_i(b2), &[Y])
            .aub(a1, b2),

        (FunctionId::F6, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F6, 1) => e
            .x1mx(Y)
            .s(1.0, &[Z], &[Y, Z])
            .ushift(Y, c2, b2)
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        (FunctionId::F6, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .ushift(Z, c2, b1)
            .l_euler(a3, &[X, Z])
            .aub(a3, b1),

        (FunctionId::F7, 0) => e
            .x1mx(X)
            .s(1.0, &[Y], &[X, Y])
            .s(1.0, &[Z], &[X, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X])
            .aub(a1, b1),
        (FunctionId::F7, 1) => e
            .x1mx(Y)
            .s(1.0, &[X], &[X, Y])
            .s(1.0, &[Z], &[Y, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(b2, &[Z])
            .ushift(Y, c1, b2)
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        (FunctionId::F7, 2) => e
            .x1mx(Z)
            .s(1.0, &[X], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(b3, &[Y])
            .ushift(Z, c1, b3)
            .l_euler(a2, &[Z])
            .aub(a2, b3),

        (FunctionId::F8, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .l_euler(a1, &[X])
            .ushift(X, c1, b1)
            .r_euler(b1, &[Y, Z])
            .aub(a1, b1),
        (FunctionId::F8, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[Z], &[Y, Z])
            .l_euler(a1, &[Y])
            .r_euler(b2, &[X, Z])
            .ushift(Y, c2, b2)
            .aub(a1, b2),
        (FunctionId::F8, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[Y], &[Y, Z])
            .l_euler(a1, &[Z])
            .r_euler(b3, &[X, Y])
            .ushift(Z, c2, b3)
            .aub(a1, b3),

        (FunctionId::F10, 0) => e
            .x1mx(X)
            .s(-2.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Z, Z], &[Z, Z])
            .r_euler(plus_i(b1), &[Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F10, 1) => e
            .x1mx(Y)
            .s(1.0, &[Z], &[Y, Z])
            .ushift(Y, c2, b2)
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        // "−x²u_xx" is read as −x²U_xx; "+U_z C₂" stands alone as printed.
        (FunctionId::F10, 2) => e
            .x1mx(Z)
            .s(-2.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .s(-1.0, &[X, X], &[X, X])
            .t(1.0, &[], &[Z], MatExpr::identity(), c2.into())
            .r_euler(plus_i(b1), &[X, Z])
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),

        (FunctionId::F11, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F11, 1) => e
            .x1mx(Y)
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[Z], &[Y, Z])
            .r_euler(b2, &[Z])
            .ushift(Y, c2, b2)
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        (FunctionId::F11, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .r_euler(b1, &[Y])
            .ushift(Z, c2, b1)
            .l_euler(a2, &[X, Z])
            .aub(a2, b1),

        (FunctionId::F12, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .r_euler(b1, &[Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Y])
            .aub(a1, b1),
        (FunctionId::F12, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(1.0, &[Z], &[Y, Z])
            .ushift(Y, c2, b1)
            .l_euler(a2, &[X, Y])
            .aub(a2, b1),
        (FunctionId::F12, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .ushift(Z, c2, b2)
            .r_euler(b2, &[X])
            .l_euler(a1, &[Z])
            .aub(a1, b2),

        (FunctionId::F13, 0) => e
            .x1mx(X)
            .s(1.0, &[Y], &[X, Y])
            .s(1.0, &[Z], &[X, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(X, c1, b1)
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F13, 1) => e
            .x1mx(Y)
            .s(1.0, &[X], &[X, Y])
            .s(1.0, &[Z], &[Y, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(b2, &[Z])
            .ushift(Y, c1, b2)
            .l_euler(a2, &[Y])
            .aub(a2, b2),
        (FunctionId::F13, 2) => e
            .x1mx(Z)
            .s(1.0, &[X], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .ushift(Z, c1, b1)
            .r_euler(b1, &[Y])
            .l_euler(a2, &[X, Z])
            .aub(a2, b1),

        (FunctionId::F14, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-2.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Z, Z], &[Z, Z])
            .ushift(X, c1, b1)
            .s(-1.0, &[Z], &[Z])
            .r_euler(b1, &[Y, Z])
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),
        (FunctionId::F14, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(1.0, &[Z], &[Y, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(b2, &[Z])
            .r_euler(b2, &[X])
            .ushift(Y, c2, b2)
            .l_euler(a1, &[Y])
            .aub(a1, b2),
        (FunctionId::F14, 2) => e
            .x1mx(Z)
            .s(-2.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .ushift(Z, c2, b1)
            .s(-1.0, &[X, X], &[X, X])
            .r_euler(plus_i(b1), &[X])
            .r_euler(b1, &[Y])
            .l_euler(a1, &[X, Z])
            .aub(a1, b1),

        (FunctionId::HA | FunctionId::HB, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .r_euler(B, &[Z])
            .ushift(X, C, B)
            .l_euler(A, &[Y, X])
            .aub(A, B),
        (FunctionId::HA, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[Z], &[Y, Z])
            .r_euler(BPrime, &[X])
            .ushift(Y, CPrime, BPrime)
            .r_euler(B, &[Y, Z])
            .t(-1.0, &[], &[], MatExpr::identity(), bb),
        (FunctionId::HA, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[Y], &[Y, Z])
            .r_euler(BPrime, &[X])
            .ushift(Z, CPrime, BPrime)
            .l_euler(A, &[Y, Z])
            .aub(A, BPrime),
        (FunctionId::HB, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(BPrime, &[X])
            .ushift(Y, CPrime, BPrime)
            .r_euler(B, &[Y, Z])
            .t(-1.0, &[], &[], MatExpr::identity(), bb),
        (FunctionId::HB, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .r_euler(BPrime, &[X])
            .ushift(Z, CDoublePrime, BPrime)
            .l_euler(A, &[Y, Z])
            .aub(A, BPrime),

        (FunctionId::HC, 0) => e
            .x1mx(X)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(1.0, &[Y], &[X, Y])
            .s(1.0, &[Z], &[X, Z])
            .r_euler(B, &[Z])
            .ushift(X, C, B)
            .l_euler(A, &[Y, X])
            .aub(A, B),
        (FunctionId::HC, 1) => e
            .x1mx(Y)
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[X], &[X, Y])
            .s(1.0, &[Z], &[Y, Z])
            .r_euler(BPrime, &[X])
            .ushift(Y, C, BPrime)
            .r_euler(B, &[Y, Z])
            .t(-1.0, &[], &[], MatExpr::identity(), bb),
        (FunctionId::HC, 2) => e
            .x1mx(Z)
            .s(-1.0, &[X, Z], &[X, Z])
            .s(-1.0, &[X, Y], &[X, Y])
            .s(-1.0, &[Y, Z], &[Y, Z])
            .s(1.0, &[X], &[X, Z])
            .s(1.0, &[Y], &[Y, Z])
            .ushift(Z, C, BPrime)
            .r_euler(BPrime, &[X])
            .l_euler(A, &[Y, Z])
            .aub(A, BPrime),
        _ => unreachable!("three equations per triple system"),
    };
    e.done()
}
