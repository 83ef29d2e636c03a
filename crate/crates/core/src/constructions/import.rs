//! Golden candidates supplied as data: `{gram, T, sigma?, label}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::icosian::GoldenInputs;
use crate::error::{Error, Result};
use crate::lattice::{galois_check, golden_check, golden_input_violations, goldenex, linalg, GoldenReport, GoldenStructure, IMatrix, ZGram};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenCandidate {
    #[serde(default)]
    pub label: String,
    pub gram: ZGram,
    #[serde(rename = "T")]
    pub t: IMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<IMatrix>,
}

impl GoldenCandidate {
    pub fn from_inputs(label: &str, inputs: &GoldenInputs) -> Self {
        GoldenCandidate {
            label: label.into(),
            gram: inputs.gram.clone(),
            t: inputs.t.clone(),
            sigma: Some(inputs.sigma.clone()),
        }
    }

    /// Every precondition of the golden pipeline that fails.
    pub fn violations(&self) -> Vec<String> {
        let mut v = golden_input_violations(&self.gram, &self.t);
        if let Some(s) = &self.sigma {
            let m = self.gram.m;
            if s.len() != m || !linalg::is_square(s) {
                v.push(format!("sigma must be {m}×{m}"));
            } else if self.gram.transform(s) != self.gram {
                v.push("sigma is not an isometry of the Gram matrix".into());
            }
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("candidate serializes")
    }
}

/// Parse and validate a candidate; nothing is used before every check passes.
pub fn import_golden_candidate(text: &str) -> Result<GoldenCandidate> {
    let c: GoldenCandidate =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let v = c.violations();
    if !v.is_empty() {
        return Err(Error::Precondition(v));
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub label: String,
    pub structure: GoldenStructure,
    pub golden: GoldenReport,
    /// `None` when no `sigma` was supplied.
    pub galois: Option<bool>,
}

impl CandidateReport {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "rank": self.structure.gram.n,
            "gram": serde_json::from_str::<Value>(&self.structure.gram.to_json()).expect("json"),
            "golden": self.golden.to_json(),
            "galois": self.galois,
        })
    }
}

/// Extract the `R`-structure, compare its theta series with the extremal form and
/// run the Galois check when a witness is present.
pub fn run_candidate(c: &GoldenCandidate, prec: i64) -> Result<CandidateReport> {
    let structure = goldenex(&c.gram, &c.t)?;
    let golden = golden_check(&structure.gram, prec)?;
    let galois = match &c.sigma {
        Some(s) => Some(galois_check(&structure.gram, &structure.transport(s)?)?),
        None => None,
    };
    Ok(CandidateReport { label: c.label.clone(), structure, golden, galois })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_input_reports_line() {
        let err = import_golden_candidate("{\n \"gram\": {\"m\": 2,\n \"entries\": [[2]]}").unwrap_err();
        assert!(matches!(err, Error::Parse { line, .. } if line >= 2));
    }

    #[test]
    fn fixed_vector_rejected() {
        // T = 1 fixes everything, so T² + T = 2 ≠ 1
        let text = r#"{"label":"bad","gram":{"m":2,"entries":[[2,1],[1,2]]},"T":[[1,0],[0,1]]}"#;
        match import_golden_candidate(text) {
            Err(Error::Precondition(v)) => {
                assert!(v.iter().any(|s| s.contains("T² + T")));
                assert!(v.iter().any(|s| s.contains("unimodular")));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn odd_rank_rejected() {
        let text = r#"{"gram":{"m":1,"entries":[[2]]},"T":[[1]]}"#;
        let Err(Error::Precondition(v)) = import_golden_candidate(text) else { panic!("accepted") };
        assert!(v.iter().any(|s| s.contains("odd")));
    }
}
