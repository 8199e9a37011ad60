use fvsub::complexes::{barycentric_subdivide, euler_char, f_vector};
use fvsub::corpus::{bundled, random_complex};
use fvsub::exactalg::mat_power_apply;
use fvsub::rules::{apply_rule, builtin_rule, parse_rule, transition_matrix, validate_rule, BuiltinKind};

#[test]
fn barycentric_rule_reproduces_order_complex_counts() {
    let rule = builtin_rule(BuiltinKind::Barycentric, 3).unwrap();
    for (name, x) in bundled() {
        let by_rule = apply_rule(&rule, &x).unwrap().complex;
        assert_eq!(f_vector(&by_rule), f_vector(&barycentric_subdivide(&x)), "{name}");
    }
}

#[test]
fn rule_application_is_linear_in_face_counts() {
    let rules = [
        builtin_rule(BuiltinKind::Barycentric, 4).unwrap(),
        builtin_rule(BuiltinKind::StellarTop(3), 3).unwrap(),
    ];
    for seed in 0..15 {
        let x = random_complex(seed, 6, 3);
        let f = f_vector(&x);
        for rule in &rules {
            let m = transition_matrix(rule, f.d()).unwrap().matrix;
            let once = apply_rule(rule, &x).unwrap().complex;
            assert_eq!(f_vector(&once).as_rationals(), mat_power_apply(&f.as_rationals(), &m, 1).unwrap());
            assert_eq!(euler_char(&once), euler_char(&x));
        }
    }
}

#[test]
fn parsed_builtins_behave_like_builtins() {
    let rule = builtin_rule(BuiltinKind::StellarTop(2), 2).unwrap();
    let parsed = parse_rule(&rule.to_json()).unwrap();
    assert!(validate_rule(&parsed).is_empty());
    let x = random_complex(3, 7, 2);
    assert_eq!(
        f_vector(&apply_rule(&parsed, &x).unwrap().complex),
        f_vector(&apply_rule(&rule, &x).unwrap().complex)
    );
}
