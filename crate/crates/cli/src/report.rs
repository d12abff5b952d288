//! JSON reports. Exact non-integers are written as strings (`"1/2"`,
//! `"(0+1i)"`), integers as numbers. Object keys are sorted, so equal
//! results always print identically.

use germlab_core::algebra::GaussianRational;
use germlab_core::family::{ClassificationReport, Violation};
use germlab_core::local_invariants::{InvariantReport, PlaneTopologicalType, SemigroupDescriptor};
use germlab_core::projection::{GenericityCertificate, LinearProjection};
use serde_json::{json, Value};

pub fn value(t: &GaussianRational) -> Value {
    match t.to_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(n) => json!(n),
        None => json!(t.to_string()),
    }
}

pub fn semigroup(s: &SemigroupDescriptor) -> Value {
    json!({
        "generators": s.generators(),
        "gaps": s.gaps(),
        "conductor": s.conductor(),
        "delta": s.delta(),
    })
}

pub fn invariants(rep: &InvariantReport) -> Value {
    json!({
        "r": rep.r,
        "m": rep.m,
        "delta": rep.delta,
        "mu": rep.mu,
        "tangent_count": rep.tangent_count,
        "s": rep.s,
        "branches": rep.per_branch.iter().map(|b| json!({
            "label": b.label,
            "multiplicity": b.multiplicity,
            "semigroup": semigroup(&b.semigroup),
        })).collect::<Vec<_>>(),
    })
}

pub fn projection(p: &LinearProjection) -> Value {
    Value::Array(
        p.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(value).collect()))
            .collect(),
    )
}

pub fn certificate(t: Option<&GaussianRational>, c: &GenericityCertificate) -> Value {
    let mut v = json!({
        "samples_tried": c.samples_tried,
        "samples_admissible": c.samples_admissible,
        "samples_attaining": c.samples_attaining,
        "threshold": c.threshold,
        "achieved_matrix": c.achieved_matrix,
        "verdict": c.verdict.to_string(),
        "seed": c.seed,
    });
    if let Some(t) = t {
        v["t"] = value(t);
    }
    v
}

pub fn plane_type(p: &PlaneTopologicalType) -> Value {
    json!({
        "branch_semigroups": p.branch_semigroups.iter().map(|s| s.generators()).collect::<Vec<_>>(),
        "intersection_matrix": p.intersection_matrix,
    })
}

fn violation(v: &Violation) -> Value {
    json!({
        "rule": v.rule,
        "samples": v.samples.iter().map(value).collect::<Vec<_>>(),
        "detail": v.detail,
    })
}

pub fn classification(rep: &ClassificationReport, violations: &[Violation]) -> Value {
    let table: Vec<Value> = rep
        .samples
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let mut row = invariants(&rep.table[k]);
            row["t"] = value(t);
            row["epsilon"] = json!(rep.epsilon[k]);
            row["mu_effective"] = json!(rep.mu_effective[k]);
            row["plane_type"] = plane_type(&rep.plane_types[k]);
            row
        })
        .collect();
    let v = &rep.verdicts;
    json!({
        "samples": rep.samples.iter().map(value).collect::<Vec<_>>(),
        "table": table,
        "verdicts": {
            "topologically_trivial": v.topologically_trivial.to_string(),
            "whitney": v.whitney.to_string(),
            "s_constant": v.s_constant,
            "tangent_count_constant": v.tangent_count_constant,
            "equisaturated": v.equisaturated.to_string(),
        },
        "caveats": rep.caveats,
        "projection": projection(&rep.projection),
        "certificates": rep
            .samples
            .iter()
            .zip(&rep.certificates)
            .map(|(t, c)| certificate(Some(t), c))
            .collect::<Vec<_>>(),
        "consistency_violations": violations.iter().map(violation).collect::<Vec<_>>(),
    })
}
