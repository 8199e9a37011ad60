use fvsub::barycentric::{check_symmetry, limit_polys, limit_roots};
use fvsub::exactalg::rational::{int, rat};
use fvsub::exactalg::Rational;
use fvsub::rules::{builtin_rule, limit_poly_rule, BuiltinKind};
use fvsub::exactalg::isolate_real_roots;

fn tol() -> Rational {
    rat(1, 1_000_000_000_000)
}

/// `partner` is an involution; each pair is compared on whichever side the
/// map does not magnify the refinement error.
fn assert_paired(roots: &[f64], partner: impl Fn(f64) -> f64, what: &str) {
    for &r in roots {
        let found = roots
            .iter()
            .any(|&s| (partner(r) - s).abs() < 1e-9 || (r - partner(s)).abs() < 1e-9);
        assert!(found, "{what}: partner of {r} missing in {roots:?}");
    }
}

#[test]
fn q_roots_pair_under_reflection() {
    for d in 2..=10 {
        let r = limit_roots(d, &tol()).unwrap();
        assert_eq!(r.q.len(), d);
        assert_paired(&r.q, |x| -1.0 - x, &format!("q_{d}"));
    }
}

#[test]
fn p_roots_pair_under_mobius_map() {
    for d in 2..=10 {
        let r = limit_roots(d, &tol()).unwrap();
        assert_eq!(r.p.len(), d - 1);
        // -1 is the partner of the root at infinity lost with q_d(0) = 0
        let finite: Vec<f64> = r.p.iter().copied().filter(|a| (a + 1.0).abs() > 1e-9).collect();
        assert_eq!(finite.len(), d - 2);
        assert_paired(&finite, |a| -a / (a + 1.0), &format!("p_{d}"));
    }
}

#[test]
fn limit_polynomial_shape() {
    for d in 2..=10 {
        assert!(check_symmetry(d).unwrap().holds);
        let l = limit_polys(d).unwrap();
        assert_eq!(l.q.eval(&int(0)), int(0));
        assert_eq!(l.q.eval(&int(-1)), int(0));
        assert_eq!(l.q.degree(), Some(d));
        assert_eq!(l.p.degree(), Some(d - 1));
        assert!(l.p.nonnegative_coefficients() && l.q.nonnegative_coefficients());
    }
}

#[test]
fn symmetric_rule_limits_have_paired_roots() {
    let cases = [
        (builtin_rule(BuiltinKind::StellarTop(2), 2).unwrap(), 3, 3),
        // t(t+1)(t^2 + t + 1/3): symmetric, but two roots are complex
        (builtin_rule(BuiltinKind::StellarTop(3), 3).unwrap(), 4, 2),
        (builtin_rule(BuiltinKind::Barycentric, 4).unwrap(), 5, 5),
    ];
    for (rule, d, real) in cases {
        let q = limit_poly_rule(&rule, d).unwrap().q;
        let rep = isolate_real_roots(&q).unwrap();
        assert_eq!(rep.count_real, real, "{} d={d}", rule.name);
        assert_paired(&rep.approximations_with_multiplicity(), |x| -1.0 - x, &rule.name);
    }
}
