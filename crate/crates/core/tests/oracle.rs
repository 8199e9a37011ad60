//! The matrix pathway against explicit subdivision.

use fvsub::barycentric::{lambda_entry, lambda_matrix, limit_constant, limit_polys, normalized_polys, subdivided_fvector};
use fvsub::complexes::{
    barycentric_subdivide, euler_char, f_vector, interior_face_count, iota_sum, iota_via_links, FormalSum,
    SimplicialComplex,
};
use fvsub::corpus::{bundled, random_complex};
use fvsub::exactalg::{mat_power_apply, Rational};
use fvsub::series::b_poly;
use num_traits::{Signed, Zero};

fn test_complexes() -> Vec<SimplicialComplex> {
    let mut all: Vec<SimplicialComplex> = bundled().into_iter().map(|(_, x)| x).collect();
    all.extend((0..20).map(|seed| random_complex(seed, 7, 4)));
    all
}

#[test]
fn lambda_entries_count_interior_chains() {
    for i in -1..=9isize {
        for j in -1..=i {
            assert_eq!(interior_face_count(i, j), lambda_entry(i, j), "({i},{j})");
        }
    }
}

#[test]
fn matrix_action_matches_explicit_subdivision() {
    for x in test_complexes() {
        let f = f_vector(&x);
        let mut y = x.clone();
        for n in 1..=2 {
            y = barycentric_subdivide(&y);
            assert_eq!(f_vector(&y), subdivided_fvector(&f, n), "n={n} on {}", x.to_json());
        }
    }
}

#[test]
fn third_iteration_on_low_dimensional_complexes() {
    // three explicit rounds on a 4-simplex produce over a million facets,
    // so the deepest check is limited to dimension two
    let mut checked = 0;
    for seed in 0..60 {
        let x = random_complex(seed, 7, 2);
        let f = f_vector(&x);
        let y = barycentric_subdivide(&barycentric_subdivide(&barycentric_subdivide(&x)));
        assert_eq!(f_vector(&y), subdivided_fvector(&f, 3), "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 60);
}

#[test]
fn repeated_multiplication_agrees_with_subdivided_fvector() {
    for x in test_complexes() {
        let f = f_vector(&x);
        let lam = lambda_matrix(f.d());
        let by_matrix = mat_power_apply(&f.as_rationals(), &lam, 3).unwrap();
        assert_eq!(subdivided_fvector(&f, 3).as_rationals(), by_matrix);
    }
}

#[test]
fn euler_characteristic_is_invariant() {
    for x in test_complexes() {
        let y = barycentric_subdivide(&x);
        assert_eq!(euler_char(&y), euler_char(&x));
        assert_eq!(euler_char(&barycentric_subdivide(&y)), euler_char(&x));
    }
}

#[test]
fn iota_is_an_involution_on_faces() {
    for x in test_complexes() {
        for (k, face) in x.faces().into_iter().enumerate() {
            let s = FormalSum::single(face);
            assert_eq!(iota_sum(&iota_sum(&s)), s);
            if k > 12 {
                break;
            }
        }
        let all = FormalSum::of_complex(&x);
        assert_eq!(iota_sum(&iota_sum(&all)), all);
        // mixed coefficients
        let mut mixed = FormalSum::new();
        for (k, face) in x.faces().into_iter().enumerate() {
            mixed.add_term(face, (k as i64 % 5 - 2).into());
        }
        assert_eq!(iota_sum(&iota_sum(&mixed)), mixed);
    }
}

#[test]
fn link_formula_matches_direct_iota() {
    for x in test_complexes() {
        assert_eq!(iota_via_links(&x), iota_sum(&FormalSum::of_complex(&x)), "{}", x.to_json());
    }
}

#[test]
fn b_advances_normalized_polynomials() {
    for x in test_complexes() {
        let f = f_vector(&x);
        let d = f.d() as u32;
        let scale = Rational::from_integer(fvsub::exactalg::factorial(d));
        for n in 0..3 {
            let (_, qn) = normalized_polys(&f, n);
            let (_, qn1) = normalized_polys(&f, n + 1);
            assert_eq!(b_poly(&qn), qn1.scale(&scale));
        }
    }
}

fn max_abs_diff(a: &[Rational], b: &[Rational]) -> Rational {
    let len = a.len().max(b.len());
    let zero = Rational::zero();
    (0..len)
        .map(|k| (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).abs())
        .max()
        .unwrap_or(zero)
}

#[test]
fn normalized_coefficients_converge() {
    let complexes = [
        SimplicialComplex::simplex(1),
        SimplicialComplex::simplex_boundary(2),
        SimplicialComplex::simplex_boundary(3),
        SimplicialComplex::simplex(3),
        fvsub::corpus::bundled_by_name("two_triangles").unwrap(),
        fvsub::corpus::bundled_by_name("triangle_with_edge").unwrap(),
    ];
    for x in complexes {
        let f = f_vector(&x);
        let d = f.d();
        assert!(d <= 4);
        let target = limit_polys(d).unwrap().q.scale(&limit_constant(&f).unwrap());
        let errors: Vec<Rational> = (1..=12)
            .map(|n| max_abs_diff(normalized_polys(&f, n).1.coeffs(), target.coeffs()))
            .collect();
        for w in errors.windows(2) {
            assert!(w[1] <= w[0], "{}: {errors:?}", x.to_json());
        }
        assert!(&errors[11] * Rational::from_integer(1000.into()) < errors[0], "{}", x.to_json());
    }
}
