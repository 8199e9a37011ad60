//! Invariant suites behind `fvsub verify`.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use fvsub::barycentric::{check_symmetry, lambda_entry, lambda_matrix, limit_polys, limit_roots, subdivided_fvector};
use fvsub::complexes::{
    barycentric_subdivide, euler_char, f_vector, interior_face_count, iota_sum, iota_via_links,
    manifold_identity_check, FormalSum, ManifoldSpec, SimplicialComplex,
};
use fvsub::corpus::{bundled, random_complex};
use fvsub::exactalg::{factorial, rational, Rational};
use fvsub::rules::{
    builtin_rule, check_rule_symmetry, limit_poly_rule, transition_matrix, validate_rule,
    verify_iota_commutation_rule, BuiltinKind, RuleError,
};
use fvsub::series::{b_poly, verify_b_identity, verify_iota_b_commutation};

use crate::Suite;

type Outcome = Result<(), String>;

pub struct Check {
    pub suite: &'static str,
    pub name: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Check { suite, name: name.into(), run: Box::new(run) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Largest simplex dimension for the interior-count oracle.
const MAX_INTERIOR_DIM: isize = 9;

pub fn checks(suite: Suite, max_d: usize, max_k: usize) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Symmetry | Suite::All) {
        out.extend(symmetry_checks(max_d));
    }
    if matches!(suite, Suite::Identity | Suite::All) {
        out.extend(identity_checks(max_d, max_k));
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        out.extend(oracle_checks(max_d));
    }
    if matches!(suite, Suite::Rules | Suite::All) {
        out.extend(rule_checks(max_d));
    }
    out
}

/// Runs checks on `jobs` threads; results keep the order of `checks`.
pub fn run_checks(checks: &[Check], jobs: usize) -> VerifyReport {
    let eval = |c: &Check| {
        let outcome = (c.run)();
        CheckResult { suite: c.suite, name: c.name.clone(), passed: outcome.is_ok(), detail: outcome.err() }
    };
    let results: Vec<CheckResult> = if jobs <= 1 {
        checks.iter().map(eval).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| checks.par_iter().map(eval).collect()),
            Err(_) => checks.iter().map(eval).collect(),
        }
    };
    let passed = results.iter().filter(|r| r.passed).count();
    VerifyReport { passed, failed: results.len() - passed, checks: results }
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn paired(roots: &[f64], partner: impl Fn(f64) -> f64) -> Option<f64> {
    roots.iter().copied().find(|&r| {
        !roots.iter().any(|&s| (partner(r) - s).abs() < 1e-9 || (r - partner(s)).abs() < 1e-9)
    })
}

fn symmetry_checks(max_d: usize) -> Vec<Check> {
    (2..=max_d)
        .map(|d| {
            Check::new("symmetry", format!("d={d}"), move || {
                let c = check_symmetry(d).map_err(|e| e.to_string())?;
                ensure(c.holds, || format!("q_d(t) - (-1)^d q_d(-1-t) = {}", c.witness))?;
                let roots = limit_roots(d, &rational::pow10_neg(12)).map_err(|e| e.to_string())?;
                match paired(&roots.q, |r| -1.0 - r) {
                    Some(r) => Err(format!("root {r} of q_d has no partner -1-r")),
                    None => Ok(()),
                }
            })
        })
        .collect()
}

fn identity_checks(max_d: usize, max_k: usize) -> Vec<Check> {
    let mut out = vec![
        Check::new("identity", format!("generating function to order {max_k}"), move || {
            let c = verify_b_identity(max_k);
            match c.first_mismatch {
                None => Ok(()),
                Some((k, l, r)) => Err(format!("k={k}: b(t^k) = {l} but series gives {r}")),
            }
        }),
        Check::new("identity", format!("iota commutes with b to degree {max_k}"), move || {
            let c = verify_iota_b_commutation(max_k);
            match c.first_mismatch {
                None => Ok(()),
                Some((k, l, r)) => Err(format!("k={k}: {l} != {r}")),
            }
        }),
    ];
    out.extend((2..=max_d).map(|d| {
        Check::new("identity", format!("b(q_{d}) = {d}! q_{d}"), move || {
            let q = limit_polys(d).map_err(|e| e.to_string())?.q;
            let scaled = q.scale(&Rational::from_integer(factorial(d as u32)));
            let got = b_poly(&q);
            ensure(got == scaled, || format!("b(q_d) = {got}"))
        })
    }));
    out
}

fn oracle_checks(max_d: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let top = (max_d as isize - 1).min(MAX_INTERIOR_DIM);
    out.push(Check::new("oracle", format!("interior face counts for i <= {top}"), move || {
        for i in -1..=top {
            for j in -1..=i {
                let (a, b) = (interior_face_count(i, j), lambda_entry(i, j));
                ensure(a == b, || format!("({i},{j}): chains {a}, matrix {b}"))?;
            }
        }
        Ok(())
    }));
    let mut complexes: Vec<(String, SimplicialComplex)> =
        bundled().into_iter().map(|(n, x)| (n.to_string(), x)).collect();
    complexes.extend((0..20).map(|s| (format!("random seed {s}"), random_complex(s, 7, 4))));
    for (name, x) in complexes {
        out.push(Check::new("oracle", name, move || complex_oracle(&x)));
    }
    for (name, spec) in manifold_witnesses() {
        out.push(Check::new("oracle", format!("manifold identity: {name}"), move || {
            let c = manifold_identity_check(&spec);
            ensure(c.holds, || format!("difference {}", c.difference))
        }));
    }
    out
}

fn complex_oracle(x: &SimplicialComplex) -> Outcome {
    let f = f_vector(x);
    let mut y = x.clone();
    for n in 1..=2 {
        y = barycentric_subdivide(&y);
        let (explicit, by_matrix) = (f_vector(&y), subdivided_fvector(&f, n));
        ensure(explicit == by_matrix, || format!("n={n}: explicit {explicit}, matrix {by_matrix}"))?;
        ensure(euler_char(&y) == euler_char(x), || format!("n={n}: Euler characteristic changed"))?;
    }
    let all = FormalSum::of_complex(x);
    let direct = iota_sum(&all);
    ensure(iota_sum(&direct) == all, || "iota is not an involution".into())?;
    ensure(iota_via_links(x) == direct, || "link formula disagrees with iota".into())
}

pub fn manifold_witnesses() -> Vec<(&'static str, ManifoldSpec)> {
    let cx = |facets: &[&[u32]]| {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).expect("small complex")
    };
    vec![
        ("interval", ManifoldSpec { complex: cx(&[&[0, 1], &[1, 2]]), boundary: Some(cx(&[&[0], &[2]])), r: 1 }),
        (
            "solid triangle",
            ManifoldSpec { complex: SimplicialComplex::simplex(2), boundary: Some(SimplicialComplex::simplex_boundary(2)), r: 2 },
        ),
        (
            "solid tetrahedron",
            ManifoldSpec { complex: SimplicialComplex::simplex(3), boundary: Some(SimplicialComplex::simplex_boundary(3)), r: 3 },
        ),
        (
            "tetrahedron boundary",
            ManifoldSpec { complex: SimplicialComplex::simplex_boundary(3), boundary: None, r: 2 },
        ),
    ]
}

fn rule_checks(max_d: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let top = max_d.clamp(1, 6);
    out.push(Check::new("rules", format!("barycentric rule matrix equals lambda for d <= {top}"), move || {
        for d in 1..=top {
            let rule = builtin_rule(BuiltinKind::Barycentric, d - 1).map_err(|e| e.to_string())?;
            let m = transition_matrix(&rule, d).map_err(|e| e.to_string())?.matrix;
            ensure(m == lambda_matrix(d), || format!("d={d}: rule matrix differs"))?;
        }
        Ok(())
    }));
    for kind in [BuiltinKind::Barycentric, BuiltinKind::StellarTop(2), BuiltinKind::StellarTop(3), BuiltinKind::Trivial] {
        out.push(Check::new("rules", format!("{kind:?} validates"), move || {
            let max_dim = match kind {
                BuiltinKind::StellarTop(n) => n,
                _ => 3,
            };
            let rule = builtin_rule(kind, max_dim).map_err(|e| e.to_string())?;
            let findings = validate_rule(&rule);
            ensure(findings.is_empty(), || format!("{} findings, first: {}", findings.len(), findings[0]))
        }));
    }
    for n in [2usize, 3] {
        out.push(Check::new("rules", format!("stellar_top({n}) limit symmetry"), move || {
            let rule = builtin_rule(BuiltinKind::StellarTop(n), n).map_err(|e| e.to_string())?;
            let c = check_rule_symmetry(&rule, n + 1).map_err(|e| e.to_string())?;
            ensure(c.holds, || format!("witness {}", c.witness))
        }));
    }
    for kind in [BuiltinKind::Barycentric, BuiltinKind::StellarTop(3)] {
        out.push(Check::new("rules", format!("{kind:?} commutes with iota for n <= 3"), move || {
            let rule = builtin_rule(kind, 3).map_err(|e| e.to_string())?;
            for n in 0..=3 {
                let r = verify_iota_commutation_rule(&rule, n).map_err(|e| e.to_string())?;
                ensure(r.holds, || format!("n={n}: first failure at {:?}", r.first_failure))?;
            }
            Ok(())
        }));
    }
    out.push(Check::new("rules", "trivial rule has no dominant eigenvalue", || {
        let rule = builtin_rule(BuiltinKind::Trivial, 3).map_err(|e| e.to_string())?;
        match limit_poly_rule(&rule, 3) {
            Err(RuleError::NonDominantEigenvalue { top, .. }) if top.is_one() => Ok(()),
            other => Err(format!("expected NonDominantEigenvalue, got {other:?}")),
        }
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_sizes() {
        assert_eq!(checks(Suite::Symmetry, 10, 12).len(), 9);
        assert_eq!(checks(Suite::Identity, 4, 12).len(), 2 + 3);
        assert!(checks(Suite::All, 3, 3).len() > 30);
    }

    #[test]
    fn parallel_order_is_stable() {
        let cs = checks(Suite::Symmetry, 6, 0);
        let serial = run_checks(&cs, 1);
        let parallel = run_checks(&cs, 4);
        assert_eq!(serial, parallel);
        assert!(serial.all_passed());
    }

    #[test]
    fn failing_check_is_reported() {
        let cs = vec![Check::new("x", "fails", || Err("nope".into()))];
        let r = run_checks(&cs, 1);
        assert_eq!((r.passed, r.failed), (0, 1));
        assert_eq!(r.checks[0].detail.as_deref(), Some("nope"));
    }
}
