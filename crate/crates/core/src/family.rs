//! Classification of one-parameter families from invariants at sampled
//! parameter values.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::expr::parse_bipolynomial;
use crate::algebra::GaussianRational;
use crate::curvegerm::{eval_fiber, FamilyBranch, FamilyCurve};
use crate::local_invariants::{invariant_report, plane_topological_type, InvariantReport, PlaneTopologicalType};
use crate::projection::{apply_projection, common_generic_projection, GenericityCertificate, LinearProjection};
use crate::Error;

/// Default parameter samples: the special fiber and four others.
pub fn default_samples() -> Vec<GaussianRational> {
    vec![
        GaussianRational::from_integer(0),
        GaussianRational::from_integer(1),
        GaussianRational::from_integer(-1),
        GaussianRational::from_ratio(1, 2),
        GaussianRational::from_integer(2),
    ]
}

/// A verdict that may depend on data the tool cannot check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::True => "true",
            Self::False => "false",
            Self::Unknown => "unknown",
        })
    }
}

/// Family verdicts, each valid at the sampled parameters only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub topologically_trivial: TriState,
    pub whitney: TriState,
    pub s_constant: bool,
    pub tangent_count_constant: bool,
    pub equisaturated: TriState,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub samples: Vec<GaussianRational>,
    /// One row per sample, `s` filled in where the fiber has two or more
    /// branches.
    pub table: Vec<InvariantReport>,
    /// ε supplied for each sample, if any.
    pub epsilon: Vec<Option<usize>>,
    /// `μ − 2ε`, with ε = 0 where none was supplied.
    pub mu_effective: Vec<i64>,
    pub projection: LinearProjection,
    pub certificates: Vec<GenericityCertificate>,
    /// Plane topological type of each fiber under `projection`.
    pub plane_types: Vec<PlaneTopologicalType>,
    pub verdicts: Verdicts,
    pub caveats: Vec<String>,
}

fn constant<T: PartialEq>(xs: impl IntoIterator<Item = T>) -> bool {
    let mut it = xs.into_iter();
    match it.next() {
        None => true,
        Some(first) => it.all(|x| x == first),
    }
}

fn validate_samples(samples: &[GaussianRational]) -> Result<(), Error> {
    let zero = GaussianRational::from_integer(0);
    if !samples.contains(&zero) {
        return Err(Error::InvalidInput("the samples must include t = 0".into()));
    }
    if samples.iter().filter(|t| **t != zero).count() < 2 {
        return Err(Error::InvalidInput(
            "at least two nonzero samples are required".into(),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != samples.len() {
        return Err(Error::InvalidInput("duplicate samples".into()));
    }
    Ok(())
}

/// Computes every invariant at every sample and derives the verdicts.
///
/// `epsilon` maps sample values to ε of the fiber's non-reduced structure;
/// values for parameters that are not sampled are rejected.
pub fn classify_family(
    f: &FamilyCurve,
    samples: &[GaussianRational],
    trials: usize,
    seed: u64,
    epsilon: Option<&BTreeMap<GaussianRational, usize>>,
) -> Result<ClassificationReport, Error> {
    validate_samples(samples)?;
    if let Some(t) = epsilon.and_then(|e| e.keys().find(|t| !samples.contains(t))) {
        return Err(Error::InvalidInput(format!("ε given for t = {t}, which is not sampled")));
    }
    let fibers = samples
        .par_iter()
        .map(|t| eval_fiber(f, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = fibers
        .par_iter()
        .map(invariant_report)
        .collect::<Result<Vec<_>, _>>()?;
    let (projection, certificates) = common_generic_projection(f, samples, trials, seed)?;
    let plane_types = fibers
        .par_iter()
        .map(|c| plane_topological_type(&apply_projection(&projection, c)?))
        .collect::<Result<Vec<_>, _>>()?;
    for (row, cert) in table.iter_mut().zip(&certificates) {
        if row.r >= 2 {
            row.s = Some(cert.total());
        }
    }
    let eps: Vec<Option<usize>> = samples
        .iter()
        .map(|t| epsilon.and_then(|e| e.get(t).copied()))
        .collect();
    let mu_effective: Vec<i64> = table
        .iter()
        .zip(&eps)
        .map(|(row, e)| row.mu as i64 - 2 * e.unwrap_or(0) as i64)
        .collect();

    let mut caveats = vec!["verdicts hold at the sampled parameters only".to_string()];
    let overrides = epsilon.is_some_and(|e| !e.is_empty());
    let r_constant = constant(table.iter().map(|row| row.r));
    let mu_constant = constant(mu_effective.iter());
    let m_constant = constant(table.iter().map(|row| row.m));
    let mu_verdict = if mu_constant {
        if !overrides {
            caveats.push("no ε supplied: fibers are treated as reduced".into());
        }
        TriState::True
    } else if overrides {
        TriState::False
    } else {
        caveats.push(
            "no ε supplied: the reduced μ varies, which a non-reduced structure may compensate"
                .into(),
        );
        TriState::Unknown
    };
    let topologically_trivial = if !r_constant {
        TriState::False
    } else {
        if mu_verdict == TriState::True {
            caveats.push("fiber connectedness is not checked".into());
        }
        mu_verdict
    };
    // Whitney equisingularity implies topological triviality.
    let whitney = if !m_constant || !r_constant {
        TriState::False
    } else {
        mu_verdict
    };
    if table.iter().any(|row| row.r < 2) {
        caveats.push("s is undefined at samples whose fiber has one branch".into());
    }
    let verdicts = Verdicts {
        topologically_trivial,
        whitney,
        s_constant: constant(table.iter().map(|row| row.s)),
        tangent_count_constant: constant(table.iter().map(|row| row.tangent_count)),
        equisaturated: constant(plane_types.iter()).into(),
    };
    Ok(ClassificationReport {
        samples: samples.to_vec(),
        table,
        epsilon: eps,
        mu_effective,
        projection,
        certificates,
        plane_types,
        verdicts,
        caveats,
    })
}

/// A failed implication between the computed invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub samples: Vec<GaussianRational>,
    pub detail: String,
}

/// Checks implications that must hold for any correct report:
///
/// * μ, m and s constant implies a constant number of tangents;
/// * `s ≥ Σ_{i<j} m_i m_j`, with equality exactly when all branch tangents
///   are distinct;
/// * under topological triviality, `s(0) ≥ s(t)` at every sample.
pub fn theorem_consistency_check(rep: &ClassificationReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let s_constant = constant(rep.table.iter().map(|row| row.s));
    if constant(rep.mu_effective.iter())
        && constant(rep.table.iter().map(|row| row.m))
        && s_constant
        && !constant(rep.table.iter().map(|row| row.tangent_count))
    {
        out.push(Violation {
            rule: "tangent count constancy",
            samples: rep.samples.clone(),
            detail: "μ, m and s are constant but the number of tangents varies".into(),
        });
    }
    for (t, row) in rep.samples.iter().zip(&rep.table) {
        let Some(s) = row.s else { continue };
        let ms: Vec<usize> = row.per_branch.iter().map(|b| b.multiplicity).collect();
        let bound: usize = (0..ms.len())
            .flat_map(|i| (i + 1..ms.len()).map(move |j| (i, j)))
            .map(|(i, j)| ms[i] * ms[j])
            .sum();
        let distinct = row.tangent_count == row.r;
        if s < bound || (s == bound) != distinct {
            out.push(Violation {
                rule: "s lower bound",
                samples: vec![t.clone()],
                detail: format!(
                    "s = {s}, Σ m_i m_j = {bound}, tangents distinct: {distinct}"
                ),
            });
        }
    }
    if rep.verdicts.topologically_trivial == TriState::True {
        let zero = GaussianRational::from_integer(0);
        if let Some(s0) = rep
            .samples
            .iter()
            .position(|t| *t == zero)
            .and_then(|k| rep.table[k].s)
        {
            for (t, row) in rep.samples.iter().zip(&rep.table) {
                if row.s.is_some_and(|s| s > s0) {
                    out.push(Violation {
                        rule: "s semicontinuity",
                        samples: vec![zero.clone(), t.clone()],
                        detail: format!("s(0) = {s0} < s(t) = {}", row.s.unwrap_or(0)),
                    });
                }
            }
        }
    }
    out
}

struct Example {
    name: &'static str,
    branches: &'static [(&'static str, &'static [&'static str])],
}

const CORPUS: &[Example] = &[
    Example {
        name: "ex2.1",
        branches: &[("n", &["t*u", "u^2", "u^3"])],
    },
    Example {
        name: "ex2.3",
        branches: &[("n", &["t*u", "u^2", "u^3"])],
    },
    Example {
        name: "ex4.8",
        branches: &[
            ("n1", &["t*u", "u^2", "u^3"]),
            ("n2", &["u", "u^4", "u^6"]),
        ],
    },
    Example {
        name: "ex4.9",
        branches: &[
            ("n1", &["u^3", "u^4", "u^5"]),
            ("n2", &["u^3", "u^4 + t*u^3", "u^7"]),
        ],
    },
    Example {
        name: "ex4.10",
        branches: &[
            ("n1", &["u^4", "u^6 + t*u^7", "u^9"]),
            ("n2", &["0", "u", "0"]),
        ],
    },
    Example {
        name: "ex4.11",
        branches: &[
            ("n1", &["u^3", "u^4", "u^5"]),
            ("n2", &["u^3", "u^4 + t*u^3", "u^7"]),
        ],
    },
    // y·(x² + y³ + t²y²) = 0: the line y = 0 and the curve
    // x = i·y·sqrt(y + t²), parametrized by y = u² + 2tu. For t ≠ 0 that map
    // passes through the origin again at u = −2t, the second sheet of the
    // node.
    Example {
        name: "remark3.10",
        branches: &[
            ("line", &["u", "0"]),
            ("cubic", &["(0+1i)*u^3 + (0+3i)*t*u^2 + (0+2i)*t^2*u", "u^2 + 2*t*u"]),
        ],
    },
];

pub fn builtin_example_names() -> Vec<&'static str> {
    CORPUS.iter().map(|e| e.name).collect()
}

/// A named family from the built-in corpus.
pub fn builtin_example(name: &str) -> Result<FamilyCurve, Error> {
    let ex = CORPUS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample {
            name: name.to_string(),
            available: builtin_example_names().join(", "),
        })?;
    let branches = ex
        .branches
        .iter()
        .map(|(label, coords)| {
            let coords = coords
                .iter()
                .map(|c| parse_bipolynomial(c, "u", "t").expect("corpus entries parse"))
                .collect();
            FamilyBranch::new(*label, coords)
        })
        .collect::<Result<Vec<_>, _>>()?;
    FamilyCurve::new("t", branches)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn samples_are_validated() {
        let f = builtin_example("ex4.10").unwrap();
        for bad in [vec![gi(1), gi(2)], vec![gi(0), gi(1)], vec![gi(0), gi(1), gi(1)]] {
            assert!(matches!(
                classify_family(&f, &bad, 8, 1, None),
                Err(Error::InvalidInput(_))
            ));
        }
        let eps = BTreeMap::from([(gi(7), 1)]);
        assert!(classify_family(&f, &default_samples(), 8, 1, Some(&eps)).is_err());
    }

    #[test]
    fn unknown_example_lists_corpus() {
        match builtin_example("ex9.9") {
            Err(Error::UnknownExample { available, .. }) => assert!(available.contains("remark3.10")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corpus_parses() {
        for name in builtin_example_names() {
            let f = builtin_example(name).unwrap();
            assert!(f.ambient_dim() >= 2, "{name}");
        }
    }

    #[test]
    fn epsilon_override_changes_mu_verdict() {
        let f = builtin_example("ex2.3").unwrap();
        let plain = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
        assert_eq!(plain.verdicts.topologically_trivial, TriState::Unknown);
        let eps = BTreeMap::from([(gi(0), 1)]);
        let rep = classify_family(&f, &default_samples(), 8, 1, Some(&eps)).unwrap();
        assert_eq!(rep.mu_effective, vec![0; 5]);
        assert_eq!(rep.verdicts.topologically_trivial, TriState::True);
        assert_eq!(rep.verdicts.whitney, TriState::False);
    }
}
