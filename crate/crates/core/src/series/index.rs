use std::fmt;

use crate::error::{Error, Result};

/// Summation index `(m₁, …, m_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `e_i`, the unit index along variable `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::InvalidArgument(format!(
                "multi-index {self} has {} components, expected {n}",
                self.0.len()
            )));
        }
        Ok(())
    }

    /// `∏ m_i!`
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&m| crate::special::factorial(m))
            .product()
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(v: &[usize]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// All indices of `n` components with total `degree`, in increasing
/// lexicographic order.
pub fn shell(n: usize, degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fill(&mut cur, 0, degree, &mut out);
    out
}

fn fill(cur: &mut [usize], pos: usize, left: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex(cur.to_vec()));
        return;
    }
    for m in 0..=left {
        cur[pos] = m;
        fill(cur, pos + 1, left - m, out);
    }
}

/// Every index of total degree `<= max_degree`, shell by shell.
pub fn indices_up_to(n: usize, max_degree: usize) -> Vec<MultiIndex> {
    (0..=max_degree).flat_map(|d| shell(n, d)).collect()
}
