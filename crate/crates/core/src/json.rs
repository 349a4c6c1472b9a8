//! File formats. Indices are 1-based and scalars are `"p"` or `"p/q"`
//! strings, so no decimal ever enters an exact computation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::complex::{Endomorphism, IntegrabilityReport};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    pub brackets: Vec<BracketJson>,
}

/// `[e_i, e_j] = sum_k result[k] e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub result: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndomorphismJson {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub dim: usize,
    pub integrable: bool,
    pub pairs_checked: usize,
    pub max_residual_norm: f64,
    pub nonzero_pairs: Vec<PairJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: usize,
    pub b: usize,
    pub value: Vec<String>,
}

fn one_based(index: usize, dim: usize) -> Result<usize> {
    if index == 0 || index > dim {
        return Err(Error::Parse(format!("index {index} outside 1..={dim}")));
    }
    Ok(index - 1)
}

impl AlgebraJson {
    /// Only brackets with `i < j` and nonzero result are written.
    pub fn from_algebra(g: &LieAlgebra<Rational>) -> Self {
        let d = g.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let terms = g.basis_bracket(i, j);
                if terms.is_empty() {
                    continue;
                }
                brackets.push(BracketJson {
                    i: i + 1,
                    j: j + 1,
                    result: terms
                        .iter()
                        .map(|(k, c)| (k + 1, format_rational(c)))
                        .collect(),
                });
            }
        }
        Self {
            dim: d,
            name: g.name().map(str::to_owned),
            basis_labels: Some(g.labels().to_vec()),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra<Rational>> {
        let d = self.dim;
        let mut entries = Vec::new();
        for b in &self.brackets {
            let i = one_based(b.i, d)?;
            let j = one_based(b.j, d)?;
            for (k, c) in &b.result {
                entries.push((i, j, one_based(*k, d)?, parse_rational(c)?));
            }
        }
        let mut g = LieAlgebra::new(d, entries)?;
        if let Some(labels) = &self.basis_labels {
            g = g.with_labels(labels.clone())?;
        }
        if let Some(name) = &self.name {
            g = g.with_name(name.clone());
        }
        Ok(g)
    }
}

impl EndomorphismJson {
    pub fn from_endomorphism(j: &Endomorphism<Rational>) -> Self {
        Self {
            dim: j.dim(),
            rows: j
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_endomorphism(&self) -> Result<Endomorphism<Rational>> {
        if self.rows.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.rows.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: r.len(),
                    });
                }
                r.iter().map(|s| parse_rational(s)).collect()
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Endomorphism::from_rows(rows)
    }
}

impl ReportJson {
    pub fn from_report(report: &IntegrabilityReport<Rational>) -> Self {
        Self {
            dim: report.dim,
            integrable: report.integrable,
            pairs_checked: report.pairs.len(),
            max_residual_norm: report.max_residual_norm,
            nonzero_pairs: report
                .nonzero_pairs()
                .map(|p| PairJson {
                    a: p.a + 1,
                    b: p.b + 1,
                    value: p.value.iter().map(format_rational).collect(),
                })
                .collect(),
        }
    }
}

pub fn algebra_to_json(g: &LieAlgebra<Rational>) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(g)).expect("serializable")
}

pub fn algebra_from_json(s: &str) -> Result<LieAlgebra<Rational>> {
    serde_json::from_str::<AlgebraJson>(s)?.to_algebra()
}

pub fn endomorphism_to_json(j: &Endomorphism<Rational>) -> String {
    serde_json::to_string_pretty(&EndomorphismJson::from_endomorphism(j)).expect("serializable")
}

pub fn endomorphism_from_json(s: &str) -> Result<Endomorphism<Rational>> {
    serde_json::from_str::<EndomorphismJson>(s)?.to_endomorphism()
}

pub fn report_to_json(report: &IntegrabilityReport<Rational>) -> String {
    serde_json::to_string_pretty(&ReportJson::from_report(report)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let s = r#"{"dim": 3, "basis_labels": ["e1","e2","e3"],
                    "brackets": [{"i": 1, "j": 2, "result": {"3": "1"}}]}"#;
        let g = algebra_from_json(s).unwrap();
        assert_eq!(
            g.bracket(&g.basis_vector(1), &g.basis_vector(0)).unwrap()[2],
            crate::scalar::rat(-1, 1)
        );
    }

    #[test]
    fn algebra_round_trip() {
        let s = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 3, "result": {"1": "1"}},
            {"i": 2, "j": 3, "result": {"2": "-1/2"}}]}"#;
        let g = algebra_from_json(s).unwrap();
        assert_eq!(algebra_from_json(&algebra_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(
            algebra_from_json(r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "result": {}}]}"#)
                .is_err()
        );
        assert!(algebra_from_json(
            r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"1": "0.5"}}]}"#
        )
        .is_err());
        assert!(endomorphism_from_json(r#"{"dim": 2, "rows": [["0","1"]]}"#).is_err());
        assert!(endomorphism_from_json(r#"{"dim": 2, "rows": [["0","-1"],["1"]]}"#).is_err());
    }

    #[test]
    fn endomorphism_round_trip() {
        let j = endomorphism_from_json(r#"{"dim": 2, "rows": [["0","-1"],["1","0"]]}"#).unwrap();
        assert!(j.is_complex_structure());
        assert_eq!(
            endomorphism_from_json(&endomorphism_to_json(&j)).unwrap(),
            j
        );
    }
}
