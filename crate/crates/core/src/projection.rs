//! Linear projections to the plane, randomized genericity certification and
//! the s-invariant.
//!
//! A projection is generic for a curve when its kernel avoids every limit of
//! secant directions. Generic projections form a dense open set, so on them
//! the pairwise intersection multiplicities of the image branches take their
//! least possible values. We sample integer projections from a seeded stream
//! and certify the least intersection matrix once a clear majority of the
//! samples attain it.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{GaussianRational, Polynomial};
use crate::curvegerm::{eval_fiber, BranchParam, CurveGerm, FamilyCurve};
use crate::local_invariants::{branch_semigroup, intersection_matrix};
use crate::{Error, ProjectionCheck};

pub const DEFAULT_TRIALS: usize = 8;
pub const DEFAULT_SEED: u64 = 1;
/// Entries of sampled matrices are uniform in `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 9;

/// A linear map `ℂⁿ → ℂ²` given by two rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProjection {
    rows: Vec<Vec<GaussianRational>>,
}

impl LinearProjection {
    /// Fails with `NotGenericProjection(Shape)` unless there are two rows of
    /// equal length `≥ 2` spanning a plane.
    pub fn new(rows: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let shape = Error::NotGenericProjection {
            check: ProjectionCheck::Shape,
        };
        if rows.len() != 2 || rows[0].len() != rows[1].len() || rows[0].len() < 2 {
            return Err(shape);
        }
        let n = rows[0].len();
        let rank_two = (0..n).any(|i| {
            (i + 1..n).any(|j| !(&(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i])).is_zero())
        });
        if !rank_two {
            return Err(shape);
        }
        Ok(Self { rows })
    }

    /// Row-major integer entries, `2n` of them.
    pub fn from_integers(entries: &[i64]) -> Result<Self, Error> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::NotGenericProjection {
                check: ProjectionCheck::Shape,
            });
        }
        let n = entries.len() / 2;
        let row = |r: &[i64]| r.iter().map(|&a| GaussianRational::from_integer(a)).collect();
        Self::new(vec![row(&entries[..n]), row(&entries[n..])])
    }

    /// The identity of the plane.
    pub fn identity() -> Self {
        Self::from_integers(&[1, 0, 0, 1]).expect("rank 2")
    }

    pub fn rows(&self) -> &[Vec<GaussianRational>] {
        &self.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl fmt::Display for LinearProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[GaussianRational]| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[[{}],[{}]]", row(&self.rows[0]), row(&self.rows[1]))
    }
}

fn not_generic(check: ProjectionCheck) -> Error {
    Error::NotGenericProjection { check }
}

fn project_branch(p: &LinearProjection, b: &BranchParam) -> Result<BranchParam, Error> {
    let image: Vec<Polynomial> = b.linear_image(p.rows());
    let m = image.iter().filter_map(Polynomial::order).min();
    if m != Some(b.multiplicity()) {
        return Err(not_generic(ProjectionCheck::Multiplicity));
    }
    let image = BranchParam::new(b.label(), image).map_err(|e| match e {
        Error::NonPrimitive { .. } => not_generic(ProjectionCheck::Primitivity),
        e => e,
    })?;
    match branch_semigroup(&image) {
        Ok(_) => Ok(image),
        Err(Error::NonPrimitive { .. }) => Err(not_generic(ProjectionCheck::Primitivity)),
        Err(e) => Err(e),
    }
}

/// The image plane curve, after checking that every multiplicity is kept,
/// every image branch is primitive and no two image branches coincide.
pub fn apply_projection(p: &LinearProjection, c: &CurveGerm) -> Result<CurveGerm, Error> {
    if p.ambient_dim() != c.ambient_dim() {
        return Err(not_generic(ProjectionCheck::Shape));
    }
    let branches = c
        .branches()
        .iter()
        .map(|b| project_branch(p, b))
        .collect::<Result<Vec<_>, _>>()?;
    let image = CurveGerm::new(branches)?;
    image.check_distinct().map_err(|e| match e {
        Error::CoincidentBranches { .. } => not_generic(ProjectionCheck::Coincidence),
        e => e,
    })?;
    Ok(image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Certified,
    Inconclusive,
}

impl fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Certified => "certified",
            Self::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence that a projection is generic for one curve.
///
/// For a plane curve the identity is exact and is recorded as a single
/// admissible sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub samples_tried: usize,
    pub samples_admissible: usize,
    /// Admissible samples whose matrix equals `achieved_matrix`.
    pub samples_attaining: usize,
    /// Attaining samples needed for certification.
    pub threshold: usize,
    pub achieved_matrix: Vec<Vec<usize>>,
    pub verdict: CertificateVerdict,
    pub seed: u64,
}

impl GenericityCertificate {
    /// Sum of the entries above the diagonal.
    pub fn total(&self) -> usize {
        upper_sum(&self.achieved_matrix)
    }
}

fn upper_sum(m: &[Vec<usize>]) -> usize {
    m.iter()
        .enumerate()
        .map(|(i, row)| row[i + 1..].iter().sum::<usize>())
        .sum()
}

/// `⌈2·trials/3⌉`.
pub fn majority_threshold(trials: usize) -> usize {
    (2 * trials).div_ceil(3)
}

/// Deterministic stream of rank-2 integer matrices; degenerate draws are
/// skipped and not counted.
struct MatrixStream {
    rng: ChaCha8Rng,
    n: usize,
}

impl MatrixStream {
    fn new(n: usize, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    fn take(&mut self, count: usize) -> Vec<LinearProjection> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let entries: Vec<i64> = (0..2 * self.n)
                .map(|_| self.rng.random_range(-ENTRY_BOUND..=ENTRY_BOUND))
                .collect();
            if let Ok(p) = LinearProjection::from_integers(&entries) {
                out.push(p);
            }
        }
        out
    }
}

/// Intersection matrix of the image, or `None` if the projection is not
/// admissible for `c`.
fn evaluate(p: &LinearProjection, c: &CurveGerm) -> Result<Option<Vec<Vec<usize>>>, Error> {
    match apply_projection(p, c) {
        Ok(image) => intersection_matrix(&image).map(Some),
        Err(Error::NotGenericProjection { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn evaluate_all(
    candidates: &[LinearProjection],
    c: &CurveGerm,
) -> Result<Vec<Option<Vec<Vec<usize>>>>, Error> {
    candidates.par_iter().map(|p| evaluate(p, c)).collect()
}

/// Coordinatewise minimum of the admissible matrices and the certificate
/// for it; `None` entries are inadmissible samples.
fn certify_from(
    results: &[Option<Vec<Vec<usize>>>],
    trials: usize,
    seed: u64,
) -> Result<GenericityCertificate, Error> {
    let admissible: Vec<&Vec<Vec<usize>>> = results.iter().flatten().collect();
    if admissible.len() < 2 {
        return Err(Error::InconclusiveGenericity {
            reason: format!(
                "only {} of {trials} sampled projections are admissible",
                admissible.len()
            ),
        });
    }
    let mut min = admissible[0].clone();
    for m in &admissible[1..] {
        for (row, other) in min.iter_mut().zip(m.iter()) {
            for (a, b) in row.iter_mut().zip(other) {
                *a = (*a).min(*b);
            }
        }
    }
    let attaining = admissible.iter().filter(|m| ***m == min).count();
    let threshold = majority_threshold(trials);
    Ok(GenericityCertificate {
        samples_tried: results.len(),
        samples_admissible: admissible.len(),
        samples_attaining: attaining,
        threshold,
        achieved_matrix: min,
        verdict: if attaining >= threshold {
            CertificateVerdict::Certified
        } else {
            CertificateVerdict::Inconclusive
        },
        seed,
    })
}

fn plane_certificate(c: &CurveGerm, seed: u64) -> Result<GenericityCertificate, Error> {
    Ok(GenericityCertificate {
        samples_tried: 1,
        samples_admissible: 1,
        samples_attaining: 1,
        threshold: 1,
        achieved_matrix: intersection_matrix(c)?,
        verdict: CertificateVerdict::Certified,
        seed,
    })
}

/// Samples `trials` projections and returns one attaining the least
/// intersection matrix, with its certificate.
pub fn certify_generic(
    c: &CurveGerm,
    trials: usize,
    seed: u64,
) -> Result<(LinearProjection, GenericityCertificate), Error> {
    if trials < 3 {
        return Err(Error::InvalidInput("at least 3 trials are required".into()));
    }
    if c.ambient_dim() == 2 {
        return Ok((LinearProjection::identity(), plane_certificate(c, seed)?));
    }
    let candidates = MatrixStream::new(c.ambient_dim(), seed).take(trials);
    let results = evaluate_all(&candidates, c)?;
    let cert = certify_from(&results, trials, seed)?;
    let best = results
        .iter()
        .position(|m| m.as_ref() == Some(&cert.achieved_matrix))
        .or_else(|| {
            // No single sample attains every minimum; fall back to the
            // admissible sample with the least total.
            results
                .iter()
                .enumerate()
                .filter_map(|(k, m)| m.as_ref().map(|m| (upper_sum(m), k)))
                .min()
                .map(|(_, k)| k)
        })
        .expect("at least two admissible samples");
    Ok((candidates[best].clone(), cert))
}

/// `s = Σ_{i<j} i(C̃ⁱ, C̃ʲ)` over a generic plane projection `C̃`.
///
/// With `p` given, that projection is used after the admissibility checks;
/// otherwise one is certified with [`DEFAULT_TRIALS`] samples from `seed`.
pub fn s_invariant(c: &CurveGerm, p: Option<&LinearProjection>, seed: u64) -> Result<usize, Error> {
    if c.branch_count() < 2 {
        return Err(Error::UndefinedForIrreducible);
    }
    match p {
        Some(p) => Ok(upper_sum(&intersection_matrix(&apply_projection(p, c)?)?)),
        None => {
            let (_, cert) = certify_generic(c, DEFAULT_TRIALS, seed)?;
            if cert.verdict != CertificateVerdict::Certified {
                return Err(Error::InconclusiveGenericity {
                    reason: format!(
                        "least matrix attained by {} of {} samples, {} needed",
                        cert.samples_attaining, cert.samples_tried, cert.threshold
                    ),
                });
            }
            Ok(cert.total())
        }
    }
}

/// Rounds of extra candidates tried when none of the first `trials` is
/// generic at every sample.
const EXTRA_ROUNDS: usize = 4;

/// A single projection generic for every sampled fiber, with one
/// certificate per sample (in sample order).
///
/// Each fiber is certified from the same stream of candidates; the chosen
/// projection is the first candidate attaining the certified matrix at every
/// sample.
pub fn common_generic_projection(
    f: &FamilyCurve,
    t_samples: &[GaussianRational],
    trials: usize,
    seed: u64,
) -> Result<(LinearProjection, Vec<GenericityCertificate>), Error> {
    if t_samples.is_empty() {
        return Err(Error::InvalidInput("no parameter samples".into()));
    }
    if trials < 3 {
        return Err(Error::InvalidInput("at least 3 trials are required".into()));
    }
    let fibers = t_samples
        .par_iter()
        .map(|t| eval_fiber(f, t))
        .collect::<Result<Vec<_>, _>>()?;
    if f.ambient_dim() == 2 {
        let certs = fibers
            .iter()
            .map(|c| plane_certificate(c, seed))
            .collect::<Result<_, _>>()?;
        return Ok((LinearProjection::identity(), certs));
    }
    let mut stream = MatrixStream::new(f.ambient_dim(), seed);
    let mut candidates = stream.take(trials);
    let mut results = fibers
        .iter()
        .map(|c| evaluate_all(&candidates, c))
        .collect::<Result<Vec<_>, _>>()?;
    let certs = results
        .iter()
        .map(|r| certify_from(r, trials, seed))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((k, cert)) = certs
        .iter()
        .enumerate()
        .find(|(_, c)| c.verdict != CertificateVerdict::Certified)
    {
        return Err(Error::InconclusiveGenericity {
            reason: format!(
                "fiber at t = {}: least matrix attained by {} of {} samples",
                t_samples[k], cert.samples_attaining, cert.samples_tried
            ),
        });
    }
    let passes = |results: &[Vec<Option<Vec<Vec<usize>>>>], k: usize| {
        results
            .iter()
            .zip(&certs)
            .all(|(r, c)| r[k].as_ref() == Some(&c.achieved_matrix))
    };
    for _ in 0..=EXTRA_ROUNDS {
        if let Some(k) = (0..candidates.len()).find(|&k| passes(&results, k)) {
            return Ok((candidates[k].clone(), certs));
        }
        let more = stream.take(trials);
        for (r, c) in results.iter_mut().zip(&fibers) {
            r.extend(evaluate_all(&more, c)?);
        }
        candidates.extend(more);
    }
    Err(Error::InconclusiveGenericity {
        reason: format!(
            "none of {} candidates is generic at every sample",
            candidates.len()
        ),
    })
}
