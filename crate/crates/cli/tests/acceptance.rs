//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its own pass/fail line.

use std::collections::BTreeMap;
use std::process::ExitCode;

use germlab::run_with;
use germlab_core::algebra::{distinct_root_count, GaussianRational, Polynomial};
use germlab_core::curvegerm::{tangent_cone, BranchParam, CurveGerm};
use germlab_core::family::{
    builtin_example, builtin_example_names, classify_family, default_samples, theorem_consistency_check,
    ClassificationReport, TriState,
};
use germlab_core::hypersurface::{count_exceptional_tangents, initial_form, BinaryForm, MultiPoly};
use germlab_core::local_invariants::{
    branch_semigroup, delta_curve, intersection_multiplicity, milnor_number,
};
use germlab_core::projection::s_invariant;
use germlab_core::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

type Outcome = Result<(), String>;

fn gi(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn classify(name: &str, eps: Option<&BTreeMap<GaussianRational, usize>>) -> Result<ClassificationReport, String> {
    let f = builtin_example(name).map_err(|e| e.to_string())?;
    classify_family(&f, &default_samples(), 8, 1, eps).map_err(|e| format!("{name}: {e}"))
}

fn column<T>(rep: &ClassificationReport, f: impl Fn(&germlab_core::local_invariants::InvariantReport) -> T) -> Vec<T> {
    rep.table.iter().map(f).collect()
}

fn criterion_1() -> Outcome {
    let cusp = BranchParam::new(
        "cusp",
        vec![Polynomial::zero(), Polynomial::from_ints(&[0, 0, 1]), Polynomial::from_ints(&[0, 0, 0, 1])],
    )
    .map_err(|e| e.to_string())?;
    let c = CurveGerm::new(vec![cusp]).map_err(|e| e.to_string())?;
    let got = (
        delta_curve(&c).map_err(|e| e.to_string())?,
        milnor_number(&c).map_err(|e| e.to_string())?,
        c.multiplicity(),
    );
    ensure(got == (1, 2, 2), || format!("(δ, μ, m) = {got:?}, expected (1, 2, 2)"))
}

fn criterion_2() -> Outcome {
    let eps = BTreeMap::from([(gi(0), 1)]);
    let rep = classify("ex2.3", Some(&eps))?;
    let m = column(&rep, |r| r.m);
    ensure(m == [2, 1, 1, 1, 1], || format!("m = {m:?}"))?;
    ensure(rep.mu_effective == [0; 5], || format!("μ − 2ε = {:?}", rep.mu_effective))
}

fn criterion_3() -> Outcome {
    let rep = classify("ex4.8", None)?;
    let s = column(&rep, |r| r.s);
    let m = column(&rep, |r| r.m);
    let tc = column(&rep, |r| r.tangent_count);
    ensure(s == [Some(2); 5], || format!("s = {s:?}"))?;
    ensure(m == [3, 2, 2, 2, 2], || format!("m = {m:?}"))?;
    ensure(tc == [2, 1, 1, 1, 1], || format!("tangent counts = {tc:?}"))
}

fn criterion_4() -> Outcome {
    let rep = classify("ex4.9", None)?;
    let s = column(&rep, |r| r.s);
    let m = column(&rep, |r| r.m);
    let tc = column(&rep, |r| r.tangent_count);
    ensure(m == [6; 5], || format!("m = {m:?}"))?;
    ensure(s == [Some(13), Some(9), Some(9), Some(9), Some(9)], || format!("s = {s:?}"))?;
    ensure(tc == [1, 2, 2, 2, 2], || format!("tangent counts = {tc:?}"))?;
    ensure(rep.verdicts.whitney == TriState::True, || {
        format!("Whitney verdict {}", rep.verdicts.whitney)
    })?;
    let v = theorem_consistency_check(&rep);
    ensure(v.is_empty(), || format!("consistency violations {v:?}"))
}

fn criterion_5() -> Outcome {
    let rep = classify("ex4.10", None)?;
    let s = column(&rep, |r| r.s);
    let m = column(&rep, |r| r.m);
    ensure(m == [5; 5], || format!("m = {m:?}"))?;
    ensure(s == [Some(4); 5], || format!("s = {s:?}"))?;
    ensure(rep.verdicts.tangent_count_constant, || "tangent count varies".into())?;
    ensure(rep.verdicts.equisaturated == TriState::False, || {
        format!("equisaturated verdict {}", rep.verdicts.equisaturated)
    })?;
    let cusp_semigroup = |k: usize| -> Vec<usize> {
        rep.plane_types[k]
            .branch_semigroups
            .iter()
            .find(|g| g.multiplicity() == 4)
            .map(|g| g.generators().to_vec())
            .unwrap_or_default()
    };
    ensure(cusp_semigroup(0) == [4, 6, 15], || format!("t = 0 image semigroup {:?}", cusp_semigroup(0)))?;
    for k in 1..rep.samples.len() {
        ensure(cusp_semigroup(k) == [4, 6, 13], || {
            format!("t = {} image semigroup {:?}", rep.samples[k], cusp_semigroup(k))
        })?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let rep = classify("remark3.10", None)?;
    let s = column(&rep, |r| r.s);
    ensure(s == [Some(2), Some(3), Some(3), Some(3), Some(3)], || format!("s = {s:?}"))
}

fn form(text: &str) -> Result<BinaryForm, String> {
    let p = MultiPoly::parse(text, &["a", "b"], None).map_err(|e| e.to_string())?;
    BinaryForm::try_from(&p).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let special = count_exceptional_tangents(&form("a^6 + b^6")?);
    ensure(special == 6, || format!("special fiber count {special}"))?;
    let general = MultiPoly::parse("a^12 + 2*a^6*b^6 + b^12 + 4/27*t^3*b^12", &["a", "b"], Some("t"))
        .map_err(|e| e.to_string())?;
    for t in [gi(1), GaussianRational::from_ratio(1, 2)] {
        let f = BinaryForm::try_from(&general.substitute(&t)).map_err(|e| e.to_string())?;
        let n = count_exceptional_tangents(&f);
        ensure(n == 12, || format!("general fiber count at t = {t}: {n}"))?;
    }
    let xyz = |s: &str| MultiPoly::parse(s, &["x", "y", "z"], None).map_err(|e| e.to_string());
    let cone = initial_form(&xyz("x^2 + y^2 + z^3")?, None).map_err(|e| e.to_string())?;
    ensure(cone == xyz("x^2 + y^2")?, || format!("initial form {cone}"))
}

/// Coefficient vectors of `u^1..=u^4` for each coordinate, with every
/// coefficient below `u^order` zero.
fn branch_strategy(dim: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=3usize, prop::collection::vec(prop::collection::vec(-2i64..=2, 4), dim))
}

fn build_branch(label: String, order: usize, coeffs: &[Vec<i64>]) -> Option<BranchParam> {
    let coords = coeffs
        .iter()
        .map(|cs| {
            Polynomial::from_terms(
                cs.iter()
                    .enumerate()
                    .filter(|&(k, _)| k + 1 >= order)
                    .map(|(k, &c)| (k + 1, gi(c))),
            )
        })
        .collect();
    BranchParam::new(label, coords).ok()
}

/// A curve of 2 or 3 branches; with `shared`, every branch gets the tangent
/// of the first.
/// Branches as (order, coordinate coefficient lists), plus the shared-tangent flag.
type CurveSpec = (Vec<(usize, Vec<Vec<i64>>)>, bool);

fn curve_strategy(dim: usize) -> impl Strategy<Value = CurveSpec> {
    (prop::collection::vec(branch_strategy(dim), 2..=3), any::<bool>())
}

fn build_curve(spec: &[(usize, Vec<Vec<i64>>)], shared: bool) -> Result<CurveGerm, TestCaseError> {
    let mut specs = spec.to_vec();
    if shared {
        let (o0, c0) = specs[0].clone();
        for (o, c) in specs.iter_mut().skip(1) {
            for (row, lead) in c.iter_mut().zip(&c0) {
                row[*o - 1] = lead[o0 - 1];
            }
        }
    }
    let branches = specs
        .iter()
        .enumerate()
        .map(|(k, (o, c))| build_branch(format!("b{k}"), *o, c))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| TestCaseError::reject("degenerate branch"))?;
    let c = CurveGerm::new(branches).map_err(|e| TestCaseError::reject(e.to_string()))?;
    c.check_distinct().map_err(|_| TestCaseError::reject("coincident branches"))?;
    Ok(c)
}

/// Failures stop the property; anything that makes the sample unusable
/// (non-primitive branch, inconclusive genericity) rejects it instead.
fn lift(e: Error) -> TestCaseError {
    match e {
        Error::NonPrimitive { .. } | Error::InconclusiveGenericity { .. } => TestCaseError::reject(e.to_string()),
        e => TestCaseError::fail(e.to_string()),
    }
}

fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: 100,
        max_global_rejects: 4096,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn property<S: Strategy>(
    name: &str,
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    runner(seed)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Outcome {
    property("semigroup δ = δ", 1, (2..=3usize).prop_flat_map(branch_strategy), |(o, c)| {
        let b = build_branch("b".into(), o, &c).ok_or_else(|| TestCaseError::reject("degenerate"))?;
        let sg = branch_semigroup(&b).map_err(lift)?;
        let d = delta_curve(&CurveGerm::new(vec![b]).map_err(lift)?).map_err(lift)?;
        prop_assert_eq!(sg.delta(), d);
        Ok(())
    })?;
    property("plane δ additivity", 2, curve_strategy(2), |(spec, shared)| {
        let c = build_curve(&spec, shared)?;
        let bs = c.branches();
        let mut expected = 0;
        for (i, b) in bs.iter().enumerate() {
            expected += branch_semigroup(b).map_err(lift)?.delta();
            for other in &bs[i + 1..] {
                expected += intersection_multiplicity(b, other).map_err(lift)?;
            }
        }
        prop_assert_eq!(delta_curve(&c).map_err(lift)?, expected);
        Ok(())
    })?;
    property("s lower bound", 3, curve_strategy(3), |(spec, shared)| {
        let c = build_curve(&spec, shared)?;
        let ms: Vec<usize> = c.branches().iter().map(BranchParam::multiplicity).collect();
        let bound: usize = (0..ms.len())
            .flat_map(|i| (i + 1..ms.len()).map(move |j| (i, j)))
            .map(|(i, j)| ms[i] * ms[j])
            .sum();
        let s = s_invariant(&c, None, 1).map_err(lift)?;
        let distinct = tangent_cone(&c).count() == c.branch_count();
        prop_assert!(s >= bound, "s = {} < {}", s, bound);
        prop_assert_eq!(s == bound, distinct);
        Ok(())
    })?;
    property("s projection independence", 4, curve_strategy(3), |(spec, shared)| {
        let c = build_curve(&spec, shared)?;
        let s1 = s_invariant(&c, None, 1).map_err(lift)?;
        let s2 = s_invariant(&c, None, 2).map_err(lift)?;
        prop_assert_eq!(s1, s2);
        Ok(())
    })?;
    let poly = (prop::collection::vec(((-5i64..=5), (-5i64..=5)), 1..=7))
        .prop_map(|cs| {
            Polynomial::from_coeffs(cs.into_iter().map(|(re, im)| GaussianRational::from_parts((re, 1), (im, 1))).collect())
        })
        .prop_filter("nonzero", |p| !p.is_zero());
    property("squaring keeps distinct roots", 5, poly, |p| {
        let sq = &p * &p;
        prop_assert_eq!(distinct_root_count(&sq).map_err(lift)?, distinct_root_count(&p).map_err(lift)?);
        Ok(())
    })
}

fn classify_json(name: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(["germlab", "classify", "--example", name, "--seed", "1"], &mut out, &mut err);
    ensure(code == 0, || format!("{name}: exit {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

fn criterion_9() -> Outcome {
    for name in builtin_example_names() {
        let first = classify_json(name)?;
        let second = classify_json(name)?;
        ensure(first == second, || format!("{name}: reports differ"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("cusp germ (0,u^2,u^3): δ=1, μ=2, m=2", criterion_1),
        ("ex2.3: m drops 2 -> 1, μ − 2ε constant 0 with ε(0)=1", criterion_2),
        ("ex4.8: s=2 throughout, m 3 -> 2, tangents 2 -> 1", criterion_3),
        ("ex4.9: m=6, s 13 -> 9, tangents 1 -> 2, Whitney, consistent", criterion_4),
        ("ex4.10: m=5, s=4, tangents constant, not equisaturated", criterion_5),
        ("remark3.10: s 2 -> 3", criterion_6),
        ("exceptional tangents 6 and 12, initial form x^2+y^2", criterion_7),
        ("property suite, 100 cases each", criterion_8),
        ("classify reports are byte-identical across runs", criterion_9),
    ];
    let mut failed = 0;
    for (k, (what, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: pass  {what}  ({:.1?})", k + 1, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {what}: {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
