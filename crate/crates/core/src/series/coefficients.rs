use super::function::{Factor, FunctionSpec};
use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Pochhammer tables for the factors of one spec, grown on demand.
///
/// Numerators follow `(M)_{k+1} = (M)_k (M + kI)`; inverses follow
/// `(M)_{k+1}⁻¹ = (M + kI)⁻¹ (M)_k⁻¹`.
#[derive(Debug, Clone)]
pub struct Coefficients {
    spec: FunctionSpec,
    layout: Vec<Factor>,
    params: Vec<ComplexMatrix>,
    tables: Vec<Vec<ComplexMatrix>>,
}

impl Coefficients {
    pub fn new(spec: &FunctionSpec) -> Self {
        let layout = spec.layout();
        let params = layout
            .iter()
            .map(|f| {
                spec.param(f.role)
                    .expect("spec holds every layout role")
                    .clone()
            })
            .collect();
        let tables = vec![vec![ComplexMatrix::identity(spec.order())]; layout.len()];
        Self {
            spec: spec.clone(),
            layout,
            params,
            tables,
        }
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// Extends every table to cover Pochhammer index `degree`.
    pub fn ensure(&mut self, degree: usize) -> Result<()> {
        for f in 0..self.layout.len() {
            self.grow(f, degree, None)?;
        }
        Ok(())
    }

    fn grow(&mut self, f: usize, degree: usize, at: Option<&[usize]>) -> Result<()> {
        let factor = &self.layout[f];
        let table = &mut self.tables[f];
        while table.len() <= degree {
            let k = table.len() - 1;
            let step = self.params[f].shift(k as f64);
            let last = table.last().expect("table starts at (M)_0");
            let next = if factor.inverse {
                let inv = step.try_inverse().ok_or_else(|| Error::Singular {
                    context: match at {
                        Some(idx) => format!(
                            "{role} + {k}I while forming ({role})_{}⁻¹ at index {}",
                            k + 1,
                            MultiIndex::from(idx),
                            role = factor.role
                        ),
                        None => format!(
                            "{role} + {k}I while forming ({role})_{}⁻¹",
                            k + 1,
                            role = factor.role
                        ),
                    },
                })?;
                inv * last
            } else {
                last * &step
            };
            table.push(next);
        }
        Ok(())
    }

    /// Coefficient of `x^idx`, including `1/∏ m_i!`.
    pub fn coefficient(&mut self, idx: &[usize]) -> Result<ComplexMatrix> {
        if idx.len() != self.spec.n() {
            return Err(Error::InvalidArgument(format!(
                "multi-index {} has {} components, expected {}",
                MultiIndex::from(idx),
                idx.len(),
                self.spec.n()
            )));
        }
        for f in 0..self.layout.len() {
            let d = self.layout[f].degree(idx);
            self.grow(f, d, Some(idx))?;
        }
        Ok(self.coefficient_ready(idx))
    }

    /// As [`Coefficients::coefficient`], for indices already covered by
    /// [`Coefficients::ensure`].
    pub fn coefficient_ready(&self, idx: &[usize]) -> ComplexMatrix {
        let mut m: Option<ComplexMatrix> = None;
        for (f, factor) in self.layout.iter().enumerate() {
            let p = &self.tables[f][factor.degree(idx)];
            m = Some(match m {
                None => p.clone(),
                Some(acc) => acc * p,
            });
        }
        let fact: f64 = idx.iter().map(|&k| crate::special::factorial(k)).product();
        m.expect("non-empty layout").scale_real(1.0 / fact)
    }
}

/// Matrix coefficient of `x₁^{m₁}⋯x_n^{m_n}` with the factors multiplied in
/// the printed order.
pub fn term_coefficient(spec: &FunctionSpec, idx: &MultiIndex) -> Result<ComplexMatrix> {
    Coefficients::new(spec).coefficient(idx.components())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{FunctionId, Role};
    use num_complex::Complex64;

    fn m(rows: &[[f64; 2]; 2]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
    }

    #[test]
    fn zero_index_is_identity() {
        let spec = FunctionSpec::from_pairs(
            FunctionId::HC,
            3,
            [
                (Role::A, m(&[[1.0, 2.0], [0.0, 1.0]])),
                (Role::B, m(&[[0.5, 0.0], [1.0, 1.0]])),
                (Role::BPrime, m(&[[2.0, 1.0], [1.0, 3.0]])),
                (Role::C, m(&[[4.0, 0.0], [1.0, 5.0]])),
            ],
        )
        .unwrap();
        let c = term_coefficient(&spec, &MultiIndex::zero(3)).unwrap();
        assert!(c.distance(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn fa_first_order_order() {
        let a = m(&[[1.0, 2.0], [0.0, 1.0]]);
        let b1 = m(&[[0.5, 0.0], [1.0, 1.0]]);
        let c1 = m(&[[4.0, 0.0], [1.0, 5.0]]);
        let other = m(&[[2.0, 1.0], [1.0, 3.0]]);
        let spec = FunctionSpec::from_pairs(
            FunctionId::FA,
            2,
            [
                (Role::A, a.clone()),
                (Role::Bi(1), b1.clone()),
                (Role::Bi(2), other.clone()),
                (Role::Ci(1), c1.clone()),
                (Role::Ci(2), other.shift(3.0)),
            ],
        )
        .unwrap();
        let got = term_coefficient(&spec, &MultiIndex::new(vec![1, 0])).unwrap();
        let want = &(&a * &b1) * &c1.try_inverse().unwrap();
        assert!(got.distance(&want) < 1e-14);
    }

    #[test]
    fn f3_scalar_example() {
        let two = ComplexMatrix::scalar(1, Complex64::new(2.0, 0.0));
        let roles = [
            Role::Ai(1),
            Role::Ai(2),
            Role::Bi(1),
            Role::Bi(2),
            Role::Ci(1),
            Role::Ci(2),
            Role::Ci(3),
        ];
        let spec =
            FunctionSpec::from_pairs(FunctionId::F3, 3, roles.iter().map(|&r| (r, two.clone())))
                .unwrap();
        // (2)_1 (2)_1 (2)_1 (2)_1 / ((2)_1 (2)_1 · 1! 1!)
        let c = term_coefficient(&spec, &MultiIndex::new(vec![1, 1, 0])).unwrap();
        assert!((c.get(0, 0) - Complex64::new(4.0, 0.0)).norm() < 1e-13);
        // at (1,0,1): (A1)_1 (A2)_1 (B1)_2 / ((C1)_1 (C3)_1) = 2·2·6 / (2·2)
        let c = term_coefficient(&spec, &MultiIndex::new(vec![1, 0, 1])).unwrap();
        assert!((c.get(0, 0) - Complex64::new(6.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn singular_denominator_names_role_and_index() {
        let spec = FunctionSpec::from_pairs(
            FunctionId::FD,
            1,
            [
                (Role::A, ComplexMatrix::identity(1)),
                (Role::Bi(1), ComplexMatrix::identity(1)),
                (Role::C, ComplexMatrix::scalar(1, Complex64::new(-2.0, 0.0))),
            ],
        )
        .unwrap();
        assert!(term_coefficient(&spec, &MultiIndex::new(vec![2])).is_ok());
        let err = term_coefficient(&spec, &MultiIndex::new(vec![3]))
            .unwrap_err()
            .to_string();
        assert!(err.contains("C + 2I") && err.contains("(3)"), "{err}");
    }
}
