use std::collections::BTreeMap;

use germlab_core::algebra::expr::parse_bipolynomial;
use germlab_core::algebra::GaussianRational;
use germlab_core::curvegerm::{eval_fiber, FamilyBranch, FamilyCurve};
use germlab_core::family::{
    builtin_example, classify_family, default_samples, theorem_consistency_check, TriState,
};
use germlab_core::Error;

fn gi(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

fn family(branches: &[(&str, &[&str])]) -> FamilyCurve {
    let bs = branches
        .iter()
        .map(|(label, coords)| {
            let coords = coords.iter().map(|c| parse_bipolynomial(c, "u", "t").unwrap()).collect();
            FamilyBranch::new(*label, coords).unwrap()
        })
        .collect();
    FamilyCurve::new("t", bs).unwrap()
}

#[test]
fn node_appears_away_from_zero() {
    let f = builtin_example("remark3.10").unwrap();
    let special = eval_fiber(&f, &gi(0)).unwrap();
    assert_eq!(special.branch_count(), 2);
    let general = eval_fiber(&f, &gi(1)).unwrap();
    let labels: Vec<&str> = general.branches().iter().map(|b| b.label()).collect();
    assert_eq!(labels, ["line", "cubic", "cubic@-2"]);
}

#[test]
fn fiber_errors() {
    let f = family(&[("a", &["t*u", "t*u^2"])]);
    assert!(matches!(eval_fiber(&f, &gi(0)), Err(Error::DegenerateFiber { .. })));
    let f = family(&[("a", &["t*u + u^2", "u^4"])]);
    assert!(matches!(eval_fiber(&f, &gi(0)), Err(Error::NonPrimitiveFiber { .. })));
    let f = family(&[("a", &["u", "t*u"]), ("b", &["u", "u"])]);
    assert!(matches!(eval_fiber(&f, &gi(1)), Err(Error::CoincidentBranches { .. })));
}

#[test]
fn constant_term_rejected() {
    let coords = vec![parse_bipolynomial("t + u", "u", "t").unwrap(), parse_bipolynomial("u^2", "u", "t").unwrap()];
    assert!(matches!(FamilyBranch::new("a", coords), Err(Error::BranchNotThroughOrigin { .. })));
}

#[test]
fn single_branch_family_drops_multiplicity() {
    let f = builtin_example("ex2.1").unwrap();
    let rep = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
    let m: Vec<usize> = rep.table.iter().map(|r| r.m).collect();
    let delta: Vec<usize> = rep.table.iter().map(|r| r.delta).collect();
    assert_eq!(m, [2, 1, 1, 1, 1]);
    assert_eq!(delta, [1, 0, 0, 0, 0]);
    assert!(rep.table.iter().all(|r| r.s.is_none()));
    assert_eq!(rep.verdicts.whitney, TriState::False);
    assert_eq!(rep.verdicts.topologically_trivial, TriState::Unknown);
}

#[test]
fn tangent_jump_with_constant_s() {
    let f = builtin_example("ex4.8").unwrap();
    let rep = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
    assert_eq!(rep.verdicts.topologically_trivial, TriState::True);
    assert_eq!(rep.verdicts.whitney, TriState::False);
    assert!(rep.verdicts.s_constant);
    assert!(!rep.verdicts.tangent_count_constant);
    assert!(theorem_consistency_check(&rep).is_empty());
}

#[test]
fn equisingular_but_not_equisaturated() {
    let f = builtin_example("ex4.10").unwrap();
    let samples = [gi(0), gi(1), gi(2)];
    let rep = classify_family(&f, &samples, 8, 1, None).unwrap();
    assert_eq!(rep.verdicts.whitney, TriState::True);
    assert_eq!(rep.verdicts.equisaturated, TriState::False);
    // Same plane type at every nonzero sample.
    assert_eq!(rep.plane_types[1], rep.plane_types[2]);
    assert_ne!(rep.plane_types[0], rep.plane_types[1]);
}

#[test]
fn branch_count_jump_is_not_trivial() {
    let f = builtin_example("remark3.10").unwrap();
    let samples = [gi(0), gi(1), GaussianRational::from_ratio(1, 2)];
    let rep = classify_family(&f, &samples, 8, 1, None).unwrap();
    let r: Vec<usize> = rep.table.iter().map(|r| r.r).collect();
    let mu: Vec<usize> = rep.table.iter().map(|r| r.mu).collect();
    assert_eq!(r, [2, 3, 3]);
    assert_eq!(mu, [5, 4, 4]);
    assert_eq!(rep.verdicts.topologically_trivial, TriState::False);
    assert_eq!(rep.verdicts.whitney, TriState::False);
    // s grows away from 0, which semicontinuity forbids only under
    // topological triviality.
    assert!(theorem_consistency_check(&rep).is_empty());
}

#[test]
fn consistency_check_flags_broken_reports() {
    let f = builtin_example("ex4.8").unwrap();
    let mut rep = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
    // At t = 1 both branches are smooth with a common tangent, so s = 1
    // would be the value for distinct tangents.
    rep.table[1].s = Some(1);
    let rules: Vec<&str> = theorem_consistency_check(&rep).iter().map(|v| v.rule).collect();
    assert!(rules.contains(&"s lower bound"), "{rules:?}");
    // With s(t) > s(0) under triviality.
    let mut rep = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
    rep.table[2].s = Some(5);
    let rules: Vec<&str> = theorem_consistency_check(&rep).iter().map(|v| v.rule).collect();
    assert!(rules.contains(&"s semicontinuity"), "{rules:?}");
}

#[test]
fn tangent_count_rule_fires() {
    let f = builtin_example("ex4.8").unwrap();
    let mut rep = classify_family(&f, &default_samples(), 8, 1, None).unwrap();
    for row in &mut rep.table {
        row.m = 2;
    }
    let rules: Vec<&str> = theorem_consistency_check(&rep).iter().map(|v| v.rule).collect();
    assert!(rules.contains(&"tangent count constancy"), "{rules:?}");
}

#[test]
fn epsilon_overrides_must_be_sampled() {
    let f = builtin_example("ex2.3").unwrap();
    let eps = BTreeMap::from([(GaussianRational::from_ratio(1, 3), 1)]);
    assert!(matches!(
        classify_family(&f, &default_samples(), 8, 1, Some(&eps)),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn same_seed_same_report() {
    let f = builtin_example("ex4.8").unwrap();
    let a = classify_family(&f, &default_samples(), 8, 3, None).unwrap();
    let b = classify_family(&f, &default_samples(), 8, 3, None).unwrap();
    assert_eq!(a.projection, b.projection);
    assert_eq!(a.table, b.table);
    assert_eq!(a.certificates, b.certificates);
}
