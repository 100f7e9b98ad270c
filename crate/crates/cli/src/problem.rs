//! Problem files: JSON with complex entries as `[re, im]` pairs and matrices
//! as arrays of rows.

use std::collections::BTreeMap;
use std::path::Path;

use lmx_core::matrix::ComplexMatrix;
use lmx_core::series::{FunctionId, FunctionSpec, Role, TruncationPolicy};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type Entry = [f64; 2];
pub type RawMatrix = Vec<Vec<Entry>>;

pub const DEFAULT_MAX_DEGREE: usize = 20;
pub const DEFAULT_QUAD_LEVEL: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_tol: Option<f64>,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
            tail_tol: None,
        }
    }
}

fn default_max_degree() -> usize {
    DEFAULT_MAX_DEGREE
}

fn default_quad_level() -> usize {
    DEFAULT_QUAD_LEVEL
}

/// The file as written. [`parse_problem_str`] only returns instances that
/// also pass [`ProblemFile::spec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub function: String,
    /// Variable names; their count fixes n for FA–FD.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub parameters: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    pub points: Vec<Vec<Entry>>,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default = "default_quad_level")]
    pub quadrature_level: usize,
    /// Commands run by `lmx run`, in order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    pub spec: FunctionSpec,
    pub points: Vec<Vec<Complex64>>,
}

impl Problem {
    pub fn policy(&self, max_degree: Option<usize>) -> Result<TruncationPolicy, CliError> {
        let mut p = TruncationPolicy::new(max_degree.unwrap_or(self.file.truncation.max_degree))?;
        if let Some(t) = self.file.truncation.tail_tol {
            p = p.with_tail_tol(t)?;
        }
        Ok(p)
    }
}

pub fn parse_problem_file(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem_str(&text)
}

pub fn parse_problem_str(text: &str) -> Result<Problem, CliError> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("problem file: {e}")))?;
    let spec = file.spec()?;
    let points = file.complex_points(spec.n())?;
    Ok(Problem { file, spec, points })
}

pub fn to_json(file: &ProblemFile) -> String {
    serde_json::to_string_pretty(file).expect("problem file serializes")
}

fn entry(e: &Entry) -> Complex64 {
    Complex64::new(e[0], e[1])
}

/// Checks that `m` is a square array of rows and converts it.
pub fn matrix_from_rows(field: &str, m: &RawMatrix) -> Result<ComplexMatrix, CliError> {
    let r = m.len();
    if r == 0 {
        return Err(CliError::Input(format!("{field}: empty matrix")));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != r {
            return Err(CliError::Input(format!(
                "{field}: ragged matrix: row {i} has {} entries but there are {r} rows (expected a square array of rows)",
                row.len()
            )));
        }
    }
    let rows: Vec<Vec<Complex64>> = m
        .iter()
        .map(|row| row.iter().map(entry).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Input(format!("{field}: {e}")))
}

pub fn matrix_to_rows(m: &ComplexMatrix) -> RawMatrix {
    (0..m.order())
        .map(|i| {
            (0..m.order())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

impl ProblemFile {
    pub fn function_id(&self) -> Result<FunctionId, CliError> {
        Ok(self.function.parse::<FunctionId>()?)
    }

    /// Number of variables: the `variables` list, the id, or the points.
    pub fn n(&self) -> Result<usize, CliError> {
        let id = self.function_id()?;
        if let Some(v) = &self.variables {
            if let Some(fixed) = id.fixed_variables() {
                if v.len() != fixed {
                    return Err(CliError::Input(format!(
                        "variables: {id} has {fixed} variables, got {}",
                        v.len()
                    )));
                }
            }
            return Ok(v.len());
        }
        if let Some(fixed) = id.fixed_variables() {
            return Ok(fixed);
        }
        match self.points.first() {
            Some(p) => Ok(p.len()),
            None => Err(CliError::Input(format!(
                "cannot infer the number of variables of {id}: give a variables list or a point"
            ))),
        }
    }

    pub fn spec(&self) -> Result<FunctionSpec, CliError> {
        let id = self.function_id()?;
        let n = self.n()?;
        if n == 0 {
            return Err(CliError::Input(
                "variables: at least one variable is needed".into(),
            ));
        }
        let mut params = BTreeMap::new();
        for (name, raw) in &self.parameters {
            let role: Role = name
                .parse()
                .map_err(|e| CliError::Input(format!("parameters.{name}: {e}")))?;
            params.insert(role, matrix_from_rows(&format!("parameters.{name}"), raw)?);
        }
        Ok(FunctionSpec::new(id, n, params)?)
    }

    pub fn complex_points(&self, n: usize) -> Result<Vec<Vec<Complex64>>, CliError> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.len() != n {
                    return Err(CliError::Input(format!(
                        "points[{i}]: expected {n} coordinates, got {}",
                        p.len()
                    )));
                }
                Ok(p.iter().map(entry).collect())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FD: &str = r#"{
        "function": "FD",
        "variables": ["x"],
        "parameters": {"A": [[[1, 0]]], "B1": [[[1, 0]]], "C": [[[2, 0]]]},
        "points": [[[0.5, 0]]]
    }"#;

    #[test]
    fn minimal_fd() {
        let p = parse_problem_str(FD).unwrap();
        assert_eq!(p.spec.n(), 1);
        assert_eq!(p.spec.order(), 1);
        assert_eq!(p.file.truncation.max_degree, 20);
        assert_eq!(p.file.quadrature_level, 8);
    }

    #[test]
    fn n_from_points() {
        let text = FD.replace(r#""variables": ["x"],"#, "");
        assert_eq!(parse_problem_str(&text).unwrap().spec.n(), 1);
    }

    #[test]
    fn ragged_matrix_names_field() {
        let text = FD.replace(
            r#""C": [[[2, 0]]]"#,
            r#""C": [[[2, 0], [0, 0], [1, 0]], [[0, 0], [2, 0], [0, 0]]]"#,
        );
        let msg = parse_problem_str(&text).unwrap_err().to_string();
        assert!(
            msg.contains("parameters.C") && msg.contains("ragged"),
            "{msg}"
        );
    }

    #[test]
    fn unknown_id_lists_valid_ids() {
        let msg = parse_problem_str(&FD.replace("\"FD\"", "\"F15\""))
            .unwrap_err()
            .to_string();
        assert!(
            msg.contains("F15") && msg.contains("HC") && msg.contains("FA"),
            "{msg}"
        );
    }

    #[test]
    fn missing_role() {
        let text = FD.replace(r#", "C": [[[2, 0]]]"#, "");
        let msg = parse_problem_str(&text).unwrap_err().to_string();
        assert!(msg.contains("missing parameter C"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let msg = parse_problem_str("{\n \"function\": \"FD\",\n oops }")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn wrong_point_length() {
        let text = FD.replace(
            r#""points": [[[0.5, 0]]]"#,
            r#""points": [[[0.5, 0], [0.1, 0]]]"#,
        );
        let msg = parse_problem_str(&text).unwrap_err().to_string();
        assert!(msg.contains("points[0]"), "{msg}");
    }

    #[test]
    fn round_trip() {
        let p = parse_problem_str(FD).unwrap();
        let again = parse_problem_str(&to_json(&p.file)).unwrap();
        assert_eq!(p.file, again.file);
    }
}
