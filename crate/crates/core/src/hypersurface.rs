//! Tangent cones of hypersurfaces and exceptional tangents counted from
//! binary forms.

use std::fmt;

use num_traits::Zero;

use crate::algebra::expr::{format_terms, parse_expression, ExprError, SparseTerms};
use crate::algebra::{distinct_root_count, GaussianRational, Polynomial};
use crate::Error;

/// A polynomial in named variables, optionally depending on a parameter
/// that is not counted in degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    variables: Vec<String>,
    parameter: Option<String>,
    /// Exponents of the variables followed by the parameter's, if any.
    terms: SparseTerms,
}

impl MultiPoly {
    pub fn parse(text: &str, variables: &[&str], parameter: Option<&str>) -> Result<Self, ExprError> {
        let mut symbols = variables.to_vec();
        symbols.extend(parameter);
        Ok(Self {
            variables: variables.iter().map(|v| v.to_string()).collect(),
            parameter: parameter.map(str::to_string),
            terms: parse_expression(text, &symbols)?,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameter(&self) -> Option<&str> {
        self.parameter.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial in the variables and, last, the parameter.
    pub fn coeff(&self, exponents: &[u32]) -> GaussianRational {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn degree_of(&self, exponents: &[u32]) -> u32 {
        exponents[..self.variables.len()].iter().sum()
    }

    /// Total degree in the variables of every term, ascending and without
    /// repetition.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|e| self.degree_of(e)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Sets the parameter to `t0`; a polynomial without one is returned
    /// unchanged.
    pub fn substitute(&self, t0: &GaussianRational) -> Self {
        if self.parameter.is_none() {
            return self.clone();
        }
        let n = self.variables.len();
        let mut terms = SparseTerms::new();
        for (e, c) in &self.terms {
            let v = c * &t0.pow(e[n]);
            let slot = terms.entry(e[..n].to_vec()).or_default();
            *slot += &v;
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            variables: self.variables.clone(),
            parameter: None,
            terms,
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut symbols: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        symbols.extend(self.parameter.as_deref());
        f.write_str(&format_terms(
            self.terms.iter().rev().map(|(e, c)| (e.clone(), c)),
            &symbols,
        ))
    }
}

/// Lowest-degree homogeneous part of `f`, after setting its parameter to
/// `t0` when given. It defines the tangent cone of `{f = 0}` at the origin.
pub fn initial_form(f: &MultiPoly, t0: Option<&GaussianRational>) -> Result<MultiPoly, Error> {
    let g = match t0 {
        Some(t0) => f.substitute(t0),
        None => f.clone(),
    };
    let d = *g.degrees().first().ok_or(Error::ZeroInput)?;
    let terms = g
        .terms
        .iter()
        .filter(|(e, _)| g.degree_of(e) == d)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    Ok(MultiPoly { terms, ..g })
}

/// `Σ c_k a^k b^{D−k}`, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<GaussianRational>,
}

impl BinaryForm {
    /// `coeffs[k]` multiplies `a^k b^{D−k}`, with `D = coeffs.len() − 1`.
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self, Error> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// `f(a, 1)`.
    pub fn dehomogenize(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
    }
}

impl TryFrom<&MultiPoly> for BinaryForm {
    type Error = Error;

    /// Reads a homogeneous polynomial in two variables `(a, b)`.
    fn try_from(p: &MultiPoly) -> Result<Self, Error> {
        if p.variables.len() != 2 || p.parameter.is_some() {
            return Err(Error::InvalidInput(
                "a binary form has exactly two variables and no parameter".into(),
            ));
        }
        let degrees = p.degrees();
        let &[d] = degrees.as_slice() else {
            return Err(if p.is_zero() {
                Error::ZeroInput
            } else {
                Error::InvalidInput("a binary form must be homogeneous".into())
            });
        };
        let mut coeffs = vec![GaussianRational::zero(); d as usize + 1];
        for (e, c) in &p.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        Self::new(coeffs)
    }
}

/// Number of distinct points of `{f = 0}` in `ℙ¹`: the distinct roots of
/// `f(a, 1)`, plus `[1:0]` when `b` divides `f`.
pub fn count_exceptional_tangents(form: &BinaryForm) -> usize {
    let finite = distinct_root_count(&form.dehomogenize()).expect("the form is nonzero");
    let at_infinity = form.coeffs.last().is_some_and(Zero::is_zero);
    finite + usize::from(at_infinity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(text: &str) -> MultiPoly {
        MultiPoly::parse(text, &["x", "y", "z"], Some("t")).unwrap()
    }

    fn form(text: &str) -> BinaryForm {
        BinaryForm::try_from(&MultiPoly::parse(text, &["a", "b"], None).unwrap()).unwrap()
    }

    #[test]
    fn initial_forms() {
        let f = xyz("x^2 + y^2 + z^3");
        assert_eq!(initial_form(&f, None).unwrap(), xyz("x^2 + y^2"));
        let g = xyz("z^3 + t*x^4*z + x^6 + y^6");
        let cone = initial_form(&g, Some(&GaussianRational::from_integer(5))).unwrap();
        assert_eq!(cone.to_string(), "z^3");
        assert!(initial_form(&xyz("t*x"), Some(&GaussianRational::zero())) == Err(Error::ZeroInput));
        // With the parameter kept, degrees count only x, y, z.
        assert_eq!(initial_form(&xyz("t*x + y^2"), None).unwrap(), xyz("t*x"));
    }

    #[test]
    fn exceptional_tangent_counts() {
        assert_eq!(count_exceptional_tangents(&form("a^6 + b^6")), 6);
        assert_eq!(count_exceptional_tangents(&form("a*b")), 2);
        assert_eq!(count_exceptional_tangents(&form("a^2*b^3")), 2);
        assert_eq!(count_exceptional_tangents(&form("a^12 + 2*a^6*b^6 + b^12")), 6);
        assert_eq!(count_exceptional_tangents(&form("a^12 + 2*a^6*b^6 + 31/27*b^12")), 12);
    }

    #[test]
    fn binary_form_rejects_bad_input() {
        let p = MultiPoly::parse("a^2 + b", &["a", "b"], None).unwrap();
        assert!(BinaryForm::try_from(&p).is_err());
        assert_eq!(BinaryForm::new(vec![GaussianRational::zero(); 3]), Err(Error::ZeroInput));
    }
}
