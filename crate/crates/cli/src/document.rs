//! `.gl` curve documents: a JSON object naming the branches of a curve or a
//! family, with coordinates written as polynomial expressions.

use std::collections::BTreeMap;

use germlab_core::algebra::expr::{
    format_bipolynomial, format_polynomial, parse_bipolynomial, parse_expression, parse_polynomial,
    ExprError, ExprErrorKind,
};
use germlab_core::algebra::GaussianRational;
use germlab_core::curvegerm::{BranchParam, CurveGerm, FamilyBranch, FamilyCurve};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The variable of every branch parametrization.
pub const BRANCH_VARIABLE: &str = "u";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntry {
    pub label: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub ambient_dim: usize,
    pub family: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    pub branches: Vec<BranchEntry>,
    /// ε of the non-reduced structure at given parameter values, keyed by
    /// the value as written in an expression (`"0"`, `"1/2"`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_overrides: Option<BTreeMap<String, usize>>,
}

/// What a document describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedCurve {
    Germ(CurveGerm),
    Family {
        curve: FamilyCurve,
        epsilon: BTreeMap<GaussianRational, usize>,
    },
}

/// 1-based line and column of byte `offset` in `text`.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Positions an expression error inside the document text, where the
/// expression appears as a JSON string. Without the text, the column is the
/// one inside the expression and the line is 0.
fn locate(source: Option<&str>, expr: &str, e: ExprError) -> CliError {
    let (line, column) = source
        .and_then(|text| {
            let quoted = serde_json::to_string(expr).ok()?;
            let at = text.find(&quoted)?;
            let (line, column) = line_column(text, at);
            Some((line, column + e.column))
        })
        .unwrap_or((0, e.column));
    match e.kind {
        ExprErrorKind::Syntax(message) => CliError::Syntax {
            line,
            column,
            message,
        },
        ExprErrorKind::UnsupportedCoefficient(text) => CliError::UnsupportedCoefficient {
            line,
            column,
            text,
        },
    }
}

/// A single Gaussian-rational constant, written as in an expression.
pub fn parse_value(text: &str) -> Result<GaussianRational, ExprError> {
    let terms = parse_expression(text, &[])?;
    Ok(terms.into_values().next().unwrap_or_default())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Builds the curve. `source` is the text the document was read from,
    /// used only to place expression errors.
    pub fn build(&self, source: Option<&str>) -> Result<ParsedCurve, CliError> {
        let invalid = |m: String| Err(CliError::InvalidDocument(m));
        if self.ambient_dim < 2 {
            return invalid("ambient_dim must be at least 2".into());
        }
        if let Some(b) = self.branches.iter().find(|b| b.coords.len() != self.ambient_dim) {
            return invalid(format!(
                "branch `{}` has {} coordinates, expected {}",
                b.label,
                b.coords.len(),
                self.ambient_dim
            ));
        }
        if !self.family {
            if self.parameter.is_some() || self.epsilon_overrides.is_some() {
                return invalid("parameter and epsilon_overrides are only allowed for families".into());
            }
            let branches = self
                .branches
                .iter()
                .map(|b| {
                    let coords = b
                        .coords
                        .iter()
                        .map(|c| parse_polynomial(c, BRANCH_VARIABLE).map_err(|e| locate(source, c, e)))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(BranchParam::new(b.label.clone(), coords)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            return Ok(ParsedCurve::Germ(CurveGerm::new(branches)?));
        }
        let Some(param) = self.parameter.as_deref() else {
            return invalid("a family needs a parameter".into());
        };
        if !is_identifier(param) || param == BRANCH_VARIABLE {
            return invalid(format!("`{param}` cannot be the parameter"));
        }
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let coords = b
                    .coords
                    .iter()
                    .map(|c| {
                        parse_bipolynomial(c, BRANCH_VARIABLE, param).map_err(|e| locate(source, c, e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FamilyBranch::new(b.label.clone(), coords)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let mut epsilon = BTreeMap::new();
        for (key, &value) in self.epsilon_overrides.iter().flatten() {
            let t = parse_value(key).map_err(|e| locate(source, key, e))?;
            epsilon.insert(t, value);
        }
        Ok(ParsedCurve::Family {
            curve: FamilyCurve::new(param, branches)?,
            epsilon,
        })
    }

    /// The document describing `curve`, coordinates in normal form.
    pub fn from_curve(curve: &ParsedCurve) -> Self {
        match curve {
            ParsedCurve::Germ(c) => Self {
                ambient_dim: c.ambient_dim(),
                family: false,
                parameter: None,
                branches: c
                    .branches()
                    .iter()
                    .map(|b| BranchEntry {
                        label: b.label().to_string(),
                        coords: b.coords().iter().map(|p| format_polynomial(p, BRANCH_VARIABLE)).collect(),
                    })
                    .collect(),
                epsilon_overrides: None,
            },
            ParsedCurve::Family { curve, epsilon } => Self {
                ambient_dim: curve.ambient_dim(),
                family: true,
                parameter: Some(curve.parameter().to_string()),
                branches: curve
                    .branches()
                    .iter()
                    .map(|b| BranchEntry {
                        label: b.label().to_string(),
                        coords: b
                            .coords()
                            .iter()
                            .map(|p| format_bipolynomial(p, BRANCH_VARIABLE, curve.parameter()))
                            .collect(),
                    })
                    .collect(),
                epsilon_overrides: (!epsilon.is_empty())
                    .then(|| epsilon.iter().map(|(t, e)| (t.to_string(), *e)).collect()),
            },
        }
    }
}

/// Reads a `.gl` document.
pub fn parse_curve_document(text: &str) -> Result<ParsedCurve, CliError> {
    CurveDocument::from_json(text)?.build(Some(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_errors_are_placed_in_the_file() {
        let text = "{\n  \"ambient_dim\": 2,\n  \"family\": false,\n  \"branches\": [\n    {\"label\": \"a\", \"coords\": [\"u^2\", \"u^3 +* u\"]}\n  ]\n}";
        match parse_curve_document(text) {
            Err(CliError::Syntax { line, column, .. }) => assert_eq!((line, column), (5, 44)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn values_parse() {
        assert_eq!(parse_value("-1/2").unwrap(), GaussianRational::from_ratio(-1, 2));
        assert_eq!(parse_value("(0+1i)").unwrap(), GaussianRational::i());
        assert!(parse_value("u").is_err());
    }
}
