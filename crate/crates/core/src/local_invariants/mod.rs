//! Value semigroups, δ-invariants, Milnor numbers, plane intersection
//! multiplicities and plane topological types.

mod closure;
mod intersection;
mod semigroup;

use rayon::prelude::*;

use crate::curvegerm::{tangent_cone, CurveGerm};
use crate::Error;
use closure::Closure;

pub use intersection::{intersection_multiplicity, plane_intersection_multiplicity};
pub use semigroup::{branch_semigroup, SemigroupDescriptor};

/// First truncation tried by [`delta_curve`].
pub const DELTA_START: usize = 16;
/// Last truncation tried by [`delta_curve`].
pub const DELTA_MAX: usize = 512;

/// `r(N+1) − dim` of the algebra modulo `u^{N+1}` on every branch.
fn truncated_delta(c: &CurveGerm, n: usize) -> usize {
    let r = c.branch_count();
    let gens: Vec<Vec<_>> = (0..c.ambient_dim())
        .map(|k| c.branches().iter().map(|b| b.coords()[k].clone()).collect())
        .collect();
    r * (n + 1) - Closure::compute(&gens, r, n + 1).rank()
}

/// δ of the reduced curve: the codimension of its local algebra in the
/// normalization.
///
/// Computed as an exact rank on truncations `N = 16, 32, …, 512`, accepted
/// once two consecutive truncations agree.
pub fn delta_curve(c: &CurveGerm) -> Result<usize, Error> {
    c.check_distinct()?;
    let mut n = DELTA_START;
    let mut prev = truncated_delta(c, n);
    while n < DELTA_MAX {
        n *= 2;
        let next = truncated_delta(c, n);
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::PrecisionExhausted { limit: DELTA_MAX })
}

/// `μ = 2δ − r + 1`.
pub fn milnor_number(c: &CurveGerm) -> Result<usize, Error> {
    Ok(2 * delta_curve(c)? + 1 - c.branch_count())
}

/// Pairwise local intersection multiplicities of a plane curve, as a full
/// symmetric matrix with zero diagonal.
pub fn intersection_matrix(c: &CurveGerm) -> Result<Vec<Vec<usize>>, Error> {
    let bs = c.branches();
    let r = bs.len();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let values: Vec<usize> = pairs
        .par_iter()
        .map(|&(i, j)| intersection_multiplicity(&bs[i], &bs[j]))
        .collect::<Result<_, _>>()?;
    let mut m = vec![vec![0; r]; r];
    for (&(i, j), v) in pairs.iter().zip(values) {
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(m)
}

/// Semigroups of the branches plus their pairwise intersections, which
/// together determine the topological type of a plane curve.
#[derive(Clone, Debug)]
pub struct PlaneTopologicalType {
    pub branch_semigroups: Vec<SemigroupDescriptor>,
    pub intersection_matrix: Vec<Vec<usize>>,
}

impl PlaneTopologicalType {
    /// Equality up to a simultaneous permutation of the branches.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        let r = self.branch_semigroups.len();
        if r != other.branch_semigroups.len() {
            return false;
        }
        let mut sa = self.branch_semigroups.clone();
        let mut sb = other.branch_semigroups.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        self.extend_match(other, &mut perm, &mut used)
    }

    /// Backtracking over permutations that respect semigroups and the
    /// intersections already fixed.
    fn extend_match(&self, other: &Self, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == used.len() {
            return true;
        }
        for j in 0..used.len() {
            if used[j] || self.branch_semigroups[i] != other.branch_semigroups[j] {
                continue;
            }
            let fits = perm
                .iter()
                .enumerate()
                .all(|(k, &pk)| self.intersection_matrix[i][k] == other.intersection_matrix[j][pk]);
            if !fits {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if self.extend_match(other, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
}

impl PartialEq for PlaneTopologicalType {
    fn eq(&self, other: &Self) -> bool {
        self.is_equivalent(other)
    }
}

impl Eq for PlaneTopologicalType {}

pub fn plane_topological_type(c: &CurveGerm) -> Result<PlaneTopologicalType, Error> {
    if c.ambient_dim() != 2 {
        return Err(Error::InvalidInput("a plane curve is required".into()));
    }
    let branch_semigroups = c
        .branches()
        .par_iter()
        .map(branch_semigroup)
        .collect::<Result<_, _>>()?;
    Ok(PlaneTopologicalType {
        branch_semigroups,
        intersection_matrix: intersection_matrix(c)?,
    })
}

/// Invariants of one branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchInvariants {
    pub label: String,
    pub multiplicity: usize,
    pub semigroup: SemigroupDescriptor,
}

/// The invariants of a reduced curve germ. `s` is filled in by the
/// projection layer, since it depends on a generic plane projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub r: usize,
    pub m: usize,
    pub delta: usize,
    pub mu: usize,
    pub tangent_count: usize,
    pub s: Option<usize>,
    pub per_branch: Vec<BranchInvariants>,
}

/// Everything except `s`.
pub fn invariant_report(c: &CurveGerm) -> Result<InvariantReport, Error> {
    let per_branch = c
        .branches()
        .par_iter()
        .map(|b| {
            Ok(BranchInvariants {
                label: b.label().to_string(),
                multiplicity: b.multiplicity(),
                semigroup: branch_semigroup(b)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let delta = delta_curve(c)?;
    let r = c.branch_count();
    Ok(InvariantReport {
        r,
        m: c.multiplicity(),
        delta,
        mu: 2 * delta + 1 - r,
        tangent_count: tangent_cone(c).count(),
        s: None,
        per_branch,
    })
}
