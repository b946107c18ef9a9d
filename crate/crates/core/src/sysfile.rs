//! System files: a JSON document carrying a σδ-linear system with
//! expression-string matrix entries, plus the reverse serializer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, render_expr};
use crate::matrix::Matrix;
use crate::ratfunc::RatFunc;
use crate::system::SigmaDeltaSystem;

fn default_shift_var() -> String {
    "x".into()
}

fn default_diff_var() -> String {
    "t".into()
}

/// On-disk form: `n`, row-major `A` and `B` as expression strings, the
/// nonvanishing-locus polynomial `h`, and the two distinguished variable
/// names (defaults "x" and "t").
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub h: String,
    #[serde(default = "default_shift_var")]
    pub shift_var: String,
    #[serde(default = "default_diff_var")]
    pub diff_var: String,
}

fn parse_matrix(name: &str, n: usize, rows: &[Vec<String>]) -> Result<Matrix<RatFunc>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeError(format!(
            "{} must be {}x{}, found {} row(s) of lengths {:?}",
            name,
            n,
            n,
            rows.len(),
            rows.iter().map(|r| r.len()).collect::<Vec<_>>()
        )));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, s) in row.iter().enumerate() {
            let f = parse_expr(s).map_err(|e| Error::ExprError {
                cell: format!("{}[{}][{}]", name, i, j),
                message: e.to_string(),
            })?;
            out.push(f);
        }
        parsed.push(out);
    }
    Matrix::from_rows(parsed)
}

fn rename_var(f: &RatFunc, from: &str, to: &str) -> RatFunc {
    let sub = crate::poly::Poly::var(to);
    RatFunc::new(f.num().subst_var(from, &sub), f.den().subst_var(from, &sub))
        .expect("denominator stays nonzero under renaming")
}

impl SystemFile {
    /// Renames the declared shift/diff variables to the internal "x"/"t".
    fn canonicalize(&self, f: RatFunc) -> RatFunc {
        let mut f = f;
        if self.shift_var != "x" {
            f = rename_var(&f, &self.shift_var, "x");
        }
        if self.diff_var != "t" {
            f = rename_var(&f, &self.diff_var, "t");
        }
        f
    }

    pub fn into_system(&self) -> Result<SigmaDeltaSystem> {
        let a = parse_matrix("A", self.n, &self.a)?.map(&|f: &RatFunc| self.canonicalize(f.clone()));
        let b = parse_matrix("B", self.n, &self.b)?.map(&|f: &RatFunc| self.canonicalize(f.clone()));
        let h_rf = self.canonicalize(parse_expr(&self.h).map_err(|e| Error::ExprError {
            cell: "h".into(),
            message: e.to_string(),
        })?);
        if !h_rf.is_poly() {
            return Err(Error::ExprError {
                cell: "h".into(),
                message: "h must be a polynomial".into(),
            });
        }
        SigmaDeltaSystem::new(a, b, h_rf.num().clone())
    }

    pub fn from_system(s: &SigmaDeltaSystem) -> SystemFile {
        let render_rows = |m: &Matrix<RatFunc>| -> Vec<Vec<String>> {
            (0..s.n)
                .map(|i| (0..s.n).map(|j| render_expr(m.at(i, j))).collect())
                .collect()
        };
        SystemFile {
            n: s.n,
            a: render_rows(&s.a),
            b: render_rows(&s.b),
            h: s.h.to_string(),
            shift_var: "x".into(),
            diff_var: "t".into(),
        }
    }
}

pub fn parse_system_str(json: &str) -> Result<SigmaDeltaSystem> {
    let file: SystemFile = serde_json::from_str(json).map_err(|e| {
        Error::ParseError(format!("line {}, column {}: {}", e.line(), e.column(), e))
    })?;
    file.into_system()
}

pub fn parse_system_file(path: &std::path::Path) -> Result<SigmaDeltaSystem> {
    let json = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {}", path.display(), e)))?;
    parse_system_str(&json)
}

pub fn serialize_system(s: &SigmaDeltaSystem) -> String {
    serde_json::to_string_pretty(&SystemFile::from_system(s)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::chebyshev_system;

    #[test]
    fn shipped_fixture_matches_constructor() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/chebyshev.json");
        let sys = parse_system_file(&path).unwrap();
        assert_eq!(sys, chebyshev_system());
    }

    #[test]
    fn round_trip() {
        let sys = chebyshev_system();
        let json = serialize_system(&sys);
        assert_eq!(parse_system_str(&json).unwrap(), sys);
        // byte-identical re-serialization
        assert_eq!(serialize_system(&parse_system_str(&json).unwrap()), json);
    }

    #[test]
    fn shape_mismatch() {
        let json = r#"{"n": 2, "A": [["1"]], "B": [["0","0"],["0","0"]], "h": "1"}"#;
        assert!(matches!(parse_system_str(json), Err(Error::ShapeError(_))));
    }

    #[test]
    fn bad_expression_names_cell() {
        let json = r#"{"n": 1, "A": [["2t"]], "B": [["0"]], "h": "1"}"#;
        match parse_system_str(json) {
            Err(Error::ExprError { cell, .. }) => assert_eq!(cell, "A[0][0]"),
            other => panic!("expected ExprError, got {:?}", other),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        match parse_system_str("{ not json") {
            Err(Error::ParseError(msg)) => assert!(msg.starts_with("line ")),
            other => panic!("expected ParseError, got {:?}", other),
        }
    }

    #[test]
    fn renamed_variables() {
        let json = r#"{"n": 1, "A": [["k"]], "B": [["u"]], "h": "1",
                       "shift_var": "k", "diff_var": "u"}"#;
        let sys = parse_system_str(json).unwrap();
        assert_eq!(*sys.a.at(0, 0), RatFunc::var("x"));
        assert_eq!(*sys.b.at(0, 0), RatFunc::var("t"));
    }
}
