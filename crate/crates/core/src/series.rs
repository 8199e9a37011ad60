//! Barycentric subdivision as the linear operator `b` on polynomials, the
//! involution `ι: g(t) ↦ g(-1-t)`, and the generating-function identity
//! `B(e^{tx}) = 1 / (1 - (e^x - 1) t)` checked to a truncation order.

use num_traits::{One, Zero};

use crate::complexes::{barycentric_subdivide, f_vector, SimplicialComplex};
use crate::exactalg::{factorial, finite_difference, rational, stirling2, Polynomial, Rational};
use crate::fvector::FVector;

/// `b(g) = Σ_k Δ^k{g(l)}_l t^k`, differences taken at `l = 0`.
pub fn b_poly(g: &Polynomial) -> Polynomial {
    let Some(deg) = g.degree() else {
        return Polynomial::zero();
    };
    let seq = |l: i64| g.eval(&rational::int(l));
    Polynomial::new((0..=deg as u32).map(|k| finite_difference(seq, k, 0)).collect())
}

/// `b(t^k) = Σ_j j! S(k,j) t^j`.
pub fn b_monomial_closed(k: usize) -> Polynomial {
    let k = k as u32;
    Polynomial::new(
        (0..=k)
            .map(|j| Rational::from_integer(factorial(j) * stirling2(k, j)))
            .collect(),
    )
}

/// `g(-1-t)`.
pub fn iota_poly(g: &Polynomial) -> Polynomial {
    g.compose(&Polynomial::from_ints(&[-1, -1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexMethod {
    /// Explicit order-complex enumeration.
    ChainOracle,
    /// `f_{j-1} = Δ^j{(1+l)^s}_l` for `j = 0..=s`.
    DifferenceFormula,
}

/// f-vector of the barycentric subdivision of the closed `(s-1)`-simplex.
pub fn subdivided_simplex_fvector(s: usize, method: SimplexMethod) -> FVector {
    assert!(s >= 1, "the simplex needs at least one vertex");
    match method {
        SimplexMethod::ChainOracle => {
            f_vector(&barycentric_subdivide(&SimplicialComplex::simplex(s as u32 - 1)))
        }
        SimplexMethod::DifferenceFormula => {
            let seq = |l: i64| Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(1 + l), s));
            let entries: Vec<Rational> = (0..=s as u32).map(|j| finite_difference(seq, j, 0)).collect();
            FVector::from_rationals(&entries).expect("differences of integer sequences are integers")
        }
    }
}

/// Power series in `x` truncated after `x^order`, with coefficients in
/// `Q[t]`. Entry `k` is the coefficient of `x^k / k!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBivariateSeries {
    pub order: usize,
    pub coeffs: Vec<Polynomial>,
}

/// Ordinary (not exponential) power series in `x` over `Q`, truncated.
fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expands `1 / (1 - (e^x - 1) t) = Σ_j (e^x - 1)^j t^j` up to `x^order`.
///
/// Works directly with truncated exponential series, independent of any
/// Stirling-number or finite-difference machinery.
pub fn rhs_series(order: usize) -> TruncatedBivariateSeries {
    // e^x - 1 as an ordinary series
    let mut em1 = vec![Rational::zero(); order + 1];
    for (k, c) in em1.iter_mut().enumerate().skip(1) {
        *c = Rational::new(One::one(), factorial(k as u32));
    }
    // ordinary[k][j]: coefficient of x^k t^j
    let mut ordinary = vec![vec![Rational::zero(); order + 1]; order + 1];
    let mut power = vec![Rational::zero(); order + 1];
    power[0] = Rational::one();
    // (e^x - 1)^j starts at x^j, so j <= order suffices
    for j in 0..=order {
        for k in 0..=order {
            ordinary[k][j] = power[k].clone();
        }
        power = series_mul(&power, &em1, order);
    }
    let coeffs = ordinary
        .into_iter()
        .enumerate()
        .map(|(k, row)| Polynomial::new(row).scale(&Rational::from_integer(factorial(k as u32))))
        .collect();
    TruncatedBivariateSeries { order, coeffs }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    pub holds: bool,
    /// Smallest `k` where the sides differ, with both sides.
    pub first_mismatch: Option<(usize, Polynomial, Polynomial)>,
}

/// Compares `b(t^k)` against the coefficient of `x^k/k!` of the closed form
/// for every `k <= order`.
pub fn verify_b_identity(order: usize) -> SeriesCheck {
    let rhs = rhs_series(order);
    for (k, right) in rhs.coeffs.iter().enumerate() {
        let left = b_poly(&Polynomial::monomial(k, Rational::one()));
        if &left != right {
            return SeriesCheck { holds: false, first_mismatch: Some((k, left, right.clone())) };
        }
    }
    SeriesCheck { holds: true, first_mismatch: None }
}

/// Checks `ι(b(ι(t^k))) = b(t^k)` for all `k <= max_degree`.
pub fn verify_iota_b_commutation(max_degree: usize) -> SeriesCheck {
    for k in 0..=max_degree {
        let mono = Polynomial::monomial(k, Rational::one());
        let left = iota_poly(&b_poly(&iota_poly(&mono)));
        let right = b_poly(&mono);
        if left != right {
            return SeriesCheck { holds: false, first_mismatch: Some((k, left, right)) };
        }
    }
    SeriesCheck { holds: true, first_mismatch: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycentric::{limit_polys, normalized_polys};
    use crate::exactalg::rational::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_poly(&Polynomial::one()), Polynomial::one());
        assert_eq!(b_poly(&p(&[0, 0, 1])), p(&[0, 1, 2]));
        let q3 = limit_polys(3).unwrap().q;
        assert_eq!(b_poly(&q3), q3.scale(&int(6)));
        assert_eq!(b_poly(&Polynomial::zero()), Polynomial::zero());
    }

    #[test]
    fn closed_monomials() {
        assert_eq!(b_monomial_closed(0), Polynomial::one());
        assert_eq!(b_monomial_closed(3), p(&[0, 1, 6, 6]));
        assert_eq!(b_monomial_closed(5), p(&[0, 1, 30, 150, 240, 120]));
        for k in 0..=12 {
            assert_eq!(b_poly(&Polynomial::monomial(k, Rational::one())), b_monomial_closed(k), "k={k}");
        }
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota_poly(&p(&[0, 1])), p(&[-1, -1]));
        assert_eq!(iota_poly(&p(&[0, 1, 1])), p(&[0, 1, 1]));
    }

    #[test]
    fn simplex_methods_agree() {
        let expect = [
            FVector::from_ints(&[1, 1]),
            FVector::from_ints(&[1, 3, 2]),
            FVector::from_ints(&[1, 7, 12, 6]),
            FVector::from_ints(&[1, 15, 50, 60, 24]),
        ];
        for (s, e) in (1..=4).zip(&expect) {
            assert_eq!(&subdivided_simplex_fvector(s, SimplexMethod::ChainOracle), e);
            assert_eq!(&subdivided_simplex_fvector(s, SimplexMethod::DifferenceFormula), e);
        }
        for s in 5..=6 {
            assert_eq!(
                subdivided_simplex_fvector(s, SimplexMethod::ChainOracle),
                subdivided_simplex_fvector(s, SimplexMethod::DifferenceFormula)
            );
        }
    }

    #[test]
    fn rhs_low_orders() {
        let r = rhs_series(2);
        assert_eq!(r.coeffs[0], Polynomial::one());
        assert_eq!(r.coeffs[1], p(&[0, 1]));
        assert_eq!(r.coeffs[2], p(&[0, 1, 2]));
        assert_eq!(rhs_series(0).coeffs, vec![Polynomial::one()]);
    }

    #[test]
    fn b_identity_and_commutation() {
        assert!(verify_b_identity(0).holds);
        assert!(verify_b_identity(5).holds);
        assert_eq!(rhs_series(5).coeffs[5], b_monomial_closed(5));
        assert!(verify_b_identity(12).holds);
        assert!(verify_iota_b_commutation(0).holds);
        assert!(verify_iota_b_commutation(10).holds);
        // k = 2 by hand: b(ι(t^2)) = b(t^2 + 2t + 1) = 2t^2 + 3t + 1, whose ι is 2t^2 + t
        let two = Polynomial::monomial(2, Rational::one());
        assert_eq!(iota_poly(&b_poly(&iota_poly(&two))), p(&[0, 1, 2]));
    }

    #[test]
    fn b_advances_q_polynomials() {
        for f in [
            FVector::from_ints(&[1, 2, 1]),
            FVector::from_ints(&[1, 4, 6, 4]),
            FVector::from_ints(&[1, 4, 5, 2]),
            FVector::from_ints(&[1, 5, 10, 10, 5]),
        ] {
            let d = f.d() as u32;
            let (_, q0) = normalized_polys(&f, 0);
            let (_, q1) = normalized_polys(&f, 1);
            assert_eq!(b_poly(&q0).scale(&Rational::new(1.into(), factorial(d))), q1);
        }
    }

    #[test]
    fn eigenpolynomials() {
        for d in 2..=10 {
            let q = limit_polys(d).unwrap().q;
            assert_eq!(b_poly(&q), q.scale(&Rational::from_integer(factorial(d as u32))), "d={d}");
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn poly_upto(deg: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(small_rational(), 0..=deg + 1).prop_map(Polynomial::new)
    }

    proptest! {
        #[test]
        fn b_is_linear(g in poly_upto(8), h in poly_upto(8), a in small_rational(), c in small_rational()) {
            let lhs = b_poly(&(&g.scale(&a) + &h.scale(&c)));
            let rhs = &b_poly(&g).scale(&a) + &b_poly(&h).scale(&c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn iota_is_involution(g in poly_upto(12)) {
            prop_assert_eq!(iota_poly(&iota_poly(&g)), g.clone());
            prop_assert_eq!(iota_poly(&g).degree(), g.degree());
        }
    }
}
