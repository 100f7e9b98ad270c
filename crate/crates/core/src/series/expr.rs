//! Small matrix expressions over parameter roles, such as `C − A − B`,
//! `B₁ + I` or `B·B′`.

use std::fmt;

use super::function::{FunctionSpec, Role};
use crate::error::Result;
use crate::matrix::ComplexMatrix;

/// `Σ cᵢ·Roleᵢ + c·I`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinComb {
    pub terms: Vec<(Role, f64)>,
    pub identity: f64,
}

impl LinComb {
    pub fn role(role: Role) -> Self {
        Self {
            terms: vec![(role, 1.0)],
            identity: 0.0,
        }
    }

    pub fn sum(roles: &[Role]) -> Self {
        Self {
            terms: roles.iter().map(|&r| (r, 1.0)).collect(),
            identity: 0.0,
        }
    }

    pub fn plus_identity(mut self, k: f64) -> Self {
        self.identity += k;
        self
    }

    pub fn minus(mut self, role: Role) -> Self {
        self.terms.push((role, -1.0));
        self
    }

    pub fn minus_all(mut self, roles: &[Role]) -> Self {
        self.terms.extend(roles.iter().map(|&r| (r, -1.0)));
        self
    }

    pub fn eval(&self, spec: &FunctionSpec) -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::zeros(spec.order());
        for (role, c) in &self.terms {
            m.add_scaled(spec.param(*role)?, (*c).into());
        }
        Ok(m.shift(self.identity))
    }
}

impl From<Role> for LinComb {
    fn from(role: Role) -> Self {
        LinComb::role(role)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, c: f64, name: &str| -> fmt::Result {
            let sign = if c < 0.0 { "−" } else { "+" };
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    f.write_str("−")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag != 1.0 {
                write!(f, "{mag}")?;
            }
            f.write_str(name)
        };
        for (role, c) in &self.terms {
            put(f, *c, &role.to_string())?;
        }
        if self.identity != 0.0 {
            put(f, self.identity, "I")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Product of linear combinations, left to right; empty means I.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatExpr(pub Vec<LinComb>);

impl MatExpr {
    pub fn identity() -> Self {
        MatExpr(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, spec: &FunctionSpec) -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::identity(spec.order());
        for factor in &self.0 {
            m = m * factor.eval(spec)?;
        }
        Ok(m)
    }
}

impl From<Role> for MatExpr {
    fn from(role: Role) -> Self {
        MatExpr(vec![LinComb::role(role)])
    }
}

impl From<LinComb> for MatExpr {
    fn from(l: LinComb) -> Self {
        MatExpr(vec![l])
    }
}

impl fmt::Display for MatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        let many = self.0.len() > 1;
        for l in &self.0 {
            if many && (l.terms.len() + usize::from(l.identity != 0.0)) > 1 {
                write!(f, "({l})")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::FunctionId;

    #[test]
    fn display_and_eval() {
        let e = LinComb::role(Role::C).minus(Role::A).plus_identity(-1.0);
        assert_eq!(e.to_string(), "C − A − I");
        let p = MatExpr(vec![Role::B.into(), Role::BPrime.into()]);
        assert_eq!(p.to_string(), "BB'");
        let q = MatExpr(vec![LinComb::role(Role::Bi(1)).plus_identity(1.0)]);
        assert_eq!(q.to_string(), "B1 + I");

        let spec = FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [
                (Role::A, ComplexMatrix::from_real_diagonal(&[1.0, 2.0])),
                (Role::Bi(1), ComplexMatrix::identity(2)),
                (Role::C, ComplexMatrix::from_real_diagonal(&[5.0, 7.0])),
            ],
        )
        .unwrap();
        let v = e.eval(&spec).unwrap();
        assert!(v.distance(&ComplexMatrix::from_real_diagonal(&[3.0, 4.0])) < 1e-15);
    }
}
