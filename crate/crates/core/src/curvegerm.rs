//! Branches, curve germs and one-parameter families of them.
//!
//! A branch is a polynomial map `u ↦ (φ₁(u), …, φₙ(u))` with `φ(0) = 0`. A
//! family branch has coefficients that are polynomials in a parameter `t`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{rational_roots, BiPolynomial, GaussianRational, Polynomial, Var};
use crate::Error;

/// A primitive polynomial parametrization of a branch through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    label: String,
    coords: Vec<Polynomial>,
}

/// Gcd of every exponent carrying a nonzero coefficient, 0 if all are zero.
fn exponent_gcd(coords: &[Polynomial]) -> usize {
    coords
        .iter()
        .flat_map(|p| p.terms().map(|(k, _)| k))
        .fold(0, |g, k| g.gcd(&k))
}

/// True iff the gcd of all exponents appearing in `coords` is 1.
pub fn is_primitive(coords: &[Polynomial]) -> bool {
    exponent_gcd(coords) == 1
}

impl BranchParam {
    /// Validates the branch: at least two coordinates, none with a constant
    /// term, not all zero, and primitive.
    pub fn new(label: impl Into<String>, coords: Vec<Polynomial>) -> Result<Self, Error> {
        let label = label.into();
        if coords.len() < 2 {
            return Err(Error::InvalidBranch {
                label,
                reason: "ambient dimension must be at least 2".into(),
            });
        }
        if coords.iter().any(|p| !p.coeff(0).is_zero()) {
            return Err(Error::BranchNotThroughOrigin { label });
        }
        if coords.iter().all(Polynomial::is_zero) {
            return Err(Error::InvalidBranch {
                label,
                reason: "all coordinates are zero".into(),
            });
        }
        if !is_primitive(&coords) {
            return Err(Error::NonPrimitive { label });
        }
        Ok(Self { label, coords })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    /// Largest coordinate degree.
    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn multiplicity(&self) -> usize {
        branch_multiplicity(self)
    }

    /// Monic gcd of the coordinates with its factor `u^k` removed. Its roots
    /// are the other parameter values mapped to the origin.
    fn residual_origin_factor(&self) -> Polynomial {
        let g = self.coords.iter().fold(Polynomial::zero(), |g, p| g.gcd(p));
        g.unshift(g.order().unwrap_or(0))
    }

    /// True if the global map passes through the origin at some `u ≠ 0`.
    pub fn revisits_origin(&self) -> bool {
        !self.residual_origin_factor().is_constant()
    }

    /// Nonzero parameter values mapped to the origin.
    ///
    /// Fails with `SelfOverlappingParametrization` when some of them are not
    /// rational, since the branch cannot then be re-centred exactly.
    pub fn origin_preimages(&self) -> Result<Vec<GaussianRational>, Error> {
        let g = self.residual_origin_factor();
        if g.is_constant() {
            return Ok(Vec::new());
        }
        let roots = rational_roots(&g).ok_or_else(|| self.overlap_error())?;
        if roots.len() != g.squarefree_part().degree().unwrap_or(0) {
            return Err(self.overlap_error());
        }
        Ok(roots)
    }

    fn overlap_error(&self) -> Error {
        Error::SelfOverlappingParametrization {
            label: self.label.clone(),
        }
    }

    /// The germ of the same global map at `u = u0`, re-centred to `u = 0`.
    /// `u0` must be mapped to the origin.
    pub fn recentre(&self, u0: &GaussianRational, label: impl Into<String>) -> Result<Self, Error> {
        let shift = Polynomial::from_coeffs(vec![u0.clone(), GaussianRational::one()]);
        Self::new(label, self.coords.iter().map(|p| p.compose(&shift)).collect())
    }

    /// Applies a linear map given by its rows, without validating the image.
    pub fn linear_image(&self, rows: &[Vec<GaussianRational>]) -> Vec<Polynomial> {
        rows.iter()
            .map(|row| {
                row.iter()
                    .zip(&self.coords)
                    .fold(Polynomial::zero(), |acc, (a, p)| &acc + &p.scale(a))
            })
            .collect()
    }
}

/// Least order among the nonzero coordinates.
pub fn branch_multiplicity(b: &BranchParam) -> usize {
    b.coords
        .iter()
        .filter_map(Polynomial::order)
        .min()
        .expect("a valid branch has a nonzero coordinate")
}

/// A point of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<GaussianRational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<GaussianRational>) -> Result<Self, Error> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroInput)?
            .inv()
            .expect("nonzero");
        Ok(Self {
            coords: coords.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Direction of the coefficient vector of `u^m`, `m` the multiplicity.
pub fn tangent_direction(b: &BranchParam) -> ProjectivePoint {
    let m = branch_multiplicity(b);
    ProjectivePoint::new(b.coords.iter().map(|p| p.coeff(m)).collect())
        .expect("the order-m coefficients are not all zero")
}

/// The distinct tangent lines of a curve, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCone {
    pub directions: Vec<ProjectivePoint>,
}

impl TangentCone {
    pub fn count(&self) -> usize {
        self.directions.len()
    }
}

pub fn tangent_cone(c: &CurveGerm) -> TangentCone {
    let mut directions: Vec<_> = c.branches.iter().map(tangent_direction).collect();
    directions.sort();
    directions.dedup();
    TangentCone { directions }
}

/// A reduced curve germ given by its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    ambient_dim: usize,
    branches: Vec<BranchParam>,
}

impl CurveGerm {
    pub fn new(branches: Vec<BranchParam>) -> Result<Self, Error> {
        let ambient_dim = branches
            .first()
            .ok_or_else(|| Error::InvalidInput("a curve needs at least one branch".into()))?
            .ambient_dim();
        if let Some(b) = branches.iter().find(|b| b.ambient_dim() != ambient_dim) {
            return Err(Error::InvalidBranch {
                label: b.label.clone(),
                reason: format!("expected {ambient_dim} coordinates, found {}", b.ambient_dim()),
            });
        }
        Ok(Self {
            ambient_dim,
            branches,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn branches(&self) -> &[BranchParam] {
        &self.branches
    }

    /// Number of branches `r`.
    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Sum of branch multiplicities.
    pub fn multiplicity(&self) -> usize {
        self.branches.iter().map(branch_multiplicity).sum()
    }

    /// Fails with `CoincidentBranches` on the first pair of branches that
    /// define the same germ.
    pub fn check_distinct(&self) -> Result<(), Error> {
        for (i, a) in self.branches.iter().enumerate() {
            for b in &self.branches[i + 1..] {
                if germs_coincide(a, b) {
                    return Err(Error::CoincidentBranches {
                        first: a.label.clone(),
                        second: b.label.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `p(u) − q(v)` as a polynomial in `(u, v)`.
pub(crate) fn difference(p: &Polynomial, q: &Polynomial) -> BiPolynomial {
    &BiPolynomial::from_univariate(p, Var::First) - &BiPolynomial::from_univariate(q, Var::Second)
}

/// Whether two branches have the same image germ at the origin.
///
/// The images share a germ exactly when the equations `a(u) = b(v)` have a
/// common factor vanishing at `(0, 0)`.
pub fn germs_coincide(a: &BranchParam, b: &BranchParam) -> bool {
    if a.ambient_dim() != b.ambient_dim()
        || a.multiplicity() != b.multiplicity()
        || tangent_direction(a) != tangent_direction(b)
    {
        return false;
    }
    let mut content = Polynomial::zero();
    let mut common = BiPolynomial::zero();
    for (p, q) in a.coords.iter().zip(&b.coords) {
        let d = difference(p, q);
        content = content.gcd(&d.content());
        common = common.gcd_in_second(&d);
    }
    if common.is_zero() {
        return true;
    }
    let at_origin = common.eval_second(&GaussianRational::zero()).coeff(0);
    at_origin.is_zero() && common.degree_in(Var::Second) > Some(0)
        || (!content.is_zero() && content.coeff(0).is_zero())
}

/// A branch of a one-parameter family: coordinates are polynomials in
/// `(u, t)`, with `u` the first variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBranch {
    label: String,
    coords: Vec<BiPolynomial>,
}

impl FamilyBranch {
    /// Every term must contain `u`, so the origin lies on every fiber.
    pub fn new(label: impl Into<String>, coords: Vec<BiPolynomial>) -> Result<Self, Error> {
        let label = label.into();
        if coords.len() < 2 {
            return Err(Error::InvalidBranch {
                label,
                reason: "ambient dimension must be at least 2".into(),
            });
        }
        if coords.iter().any(|p| p.terms().any(|((i, _), _)| i == 0)) {
            return Err(Error::BranchNotThroughOrigin { label });
        }
        if coords.iter().all(BiPolynomial::is_zero) {
            return Err(Error::InvalidBranch {
                label,
                reason: "all coordinates are zero".into(),
            });
        }
        Ok(Self { label, coords })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coords(&self) -> &[BiPolynomial] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    /// Plain coordinate polynomials at `t = t0`.
    pub fn specialize(&self, t0: &GaussianRational) -> Vec<Polynomial> {
        self.coords.iter().map(|p| p.eval_second(t0)).collect()
    }
}

/// A one-parameter family of curves `X_t` with the section `σ(t) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCurve {
    ambient_dim: usize,
    parameter: String,
    branches: Vec<FamilyBranch>,
}

impl FamilyCurve {
    pub fn new(parameter: impl Into<String>, branches: Vec<FamilyBranch>) -> Result<Self, Error> {
        let ambient_dim = branches
            .first()
            .ok_or_else(|| Error::InvalidInput("a family needs at least one branch".into()))?
            .ambient_dim();
        if let Some(b) = branches.iter().find(|b| b.ambient_dim() != ambient_dim) {
            return Err(Error::InvalidBranch {
                label: b.label.clone(),
                reason: format!("expected {ambient_dim} coordinates, found {}", b.ambient_dim()),
            });
        }
        Ok(Self {
            ambient_dim,
            parameter: parameter.into(),
            branches,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn branches(&self) -> &[FamilyBranch] {
        &self.branches
    }
}

/// The fiber germ `(X_{t0}, 0)`.
///
/// A specialized branch whose global map meets the origin again at a rational
/// `u0 ≠ 0` contributes the germ at `u0` as a further branch, labelled
/// `label@u0`. Coincident branches are an error, never merged.
pub fn eval_fiber(f: &FamilyCurve, t0: &GaussianRational) -> Result<CurveGerm, Error> {
    let mut branches = Vec::new();
    for fb in &f.branches {
        let coords = fb.specialize(t0);
        if coords.iter().all(Polynomial::is_zero) {
            return Err(Error::DegenerateFiber {
                label: fb.label.clone(),
                t: t0.to_string(),
            });
        }
        if !is_primitive(&coords) {
            return Err(Error::NonPrimitiveFiber {
                label: fb.label.clone(),
                t: t0.to_string(),
            });
        }
        let b = BranchParam::new(fb.label.clone(), coords)?;
        let mut sheets = Vec::new();
        for u0 in b.origin_preimages()? {
            let label = format!("{}@{u0}", b.label);
            let local = b.recentre(&u0, label).map_err(|e| match e {
                Error::NonPrimitive { label } => Error::NonPrimitiveFiber {
                    label,
                    t: t0.to_string(),
                },
                e => e,
            })?;
            sheets.push(local);
        }
        branches.push(b);
        branches.extend(sheets);
    }
    let germ = CurveGerm::new(branches)?;
    germ.check_distinct()?;
    Ok(germ)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn mono(k: usize) -> Polynomial {
        Polynomial::monomial(GaussianRational::one(), k)
    }

    fn branch(coords: Vec<Polynomial>) -> BranchParam {
        BranchParam::new("b", coords).unwrap()
    }

    #[test]
    fn multiplicity_is_least_order() {
        assert_eq!(branch(vec![Polynomial::zero(), mono(2), mono(3)]).multiplicity(), 2);
        assert_eq!(branch(vec![mono(1), mono(2), mono(3)]).multiplicity(), 1);
        assert_eq!(branch(vec![mono(3), mono(4), mono(5)]).multiplicity(), 3);
    }

    #[test]
    fn primitivity_by_exponent_gcd() {
        assert!(is_primitive(&[mono(2), mono(3)]));
        assert!(!is_primitive(&[mono(2), mono(4)]));
        assert!(is_primitive(&[mono(4), p(&[0, 0, 0, 0, 0, 0, 1, 1])]));
        assert!(matches!(
            BranchParam::new("x", vec![mono(2), mono(4)]),
            Err(Error::NonPrimitive { .. })
        ));
    }

    #[test]
    fn constant_terms_rejected() {
        assert!(matches!(
            BranchParam::new("c", vec![p(&[1, 1]), mono(2)]),
            Err(Error::BranchNotThroughOrigin { .. })
        ));
    }

    #[test]
    fn tangent_directions() {
        let t = tangent_direction(&branch(vec![mono(2), mono(3)]));
        assert_eq!(t.to_string(), "[1:0]");
        let t = tangent_direction(&branch(vec![Polynomial::zero(), mono(2), mono(3)]));
        assert_eq!(t.to_string(), "[0:1:0]");
        let t = tangent_direction(&branch(vec![p(&[0, 0, 3]), p(&[0, 0, -6, 1])]));
        assert_eq!(t.to_string(), "[1:-2]");
    }

    #[test]
    fn coincidence_detects_reparametrization() {
        let a = branch(vec![mono(2), mono(3)]);
        // u ↦ -u gives the same germ
        let b = branch(vec![mono(2), p(&[0, 0, 0, -1])]);
        assert!(germs_coincide(&a, &b));
        let c = branch(vec![mono(2), p(&[0, 0, 0, 1, 1])]);
        assert!(!germs_coincide(&a, &c));
        // y = x^2 reparametrized by u ↦ u + u^2
        let d = branch(vec![mono(1), mono(2)]);
        let e = branch(vec![p(&[0, 1, 1]), p(&[0, 1, 1]).pow(2)]);
        assert!(germs_coincide(&d, &e));
    }

    #[test]
    fn origin_preimages_found() {
        // (u(u + 2), u^2(u + 2)) passes through 0 at u = 0 and u = -2
        let b = branch(vec![p(&[0, 2, 1]), p(&[0, 0, 2, 1])]);
        assert_eq!(b.origin_preimages().unwrap(), vec![GaussianRational::from_integer(-2)]);
        let c = branch(vec![p(&[0, 2, 0, 1]), p(&[0, 0, 2, 0, 1])]);
        assert!(matches!(
            c.origin_preimages(),
            Err(Error::SelfOverlappingParametrization { .. })
        ));
    }
}
