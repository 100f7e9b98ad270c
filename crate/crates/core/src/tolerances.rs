/// Numerical tolerances shared by the matrix calculus and the verifiers.
///
/// `commute_tol` is relative: two matrices are treated as commuting when
/// `‖M1 M2 − M2 M1‖_F <= commute_tol · ‖M1‖_F · ‖M2‖_F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eig_tol: f64,
    pub commute_tol: f64,
    pub value_tol: f64,
    /// Eigenvector-matrix condition number above which a matrix is treated
    /// as defective.
    pub eigcond_cap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_tol: 1e-10,
            commute_tol: 1e-10,
            value_tol: 1e-9,
            eigcond_cap: 1e8,
        }
    }
}

impl Tolerances {
    pub fn commute_threshold(&self, norm1: f64, norm2: f64) -> f64 {
        self.commute_tol * norm1 * norm2
    }
}
