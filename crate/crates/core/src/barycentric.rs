//! The barycentric transition matrix `Λ_d`, its eigendata, and the limit
//! polynomials `p_d`, `q_d` attracting the roots of iterated subdivisions.
//!
//! Index conventions: every `(d+1)`-length structure is indexed by face
//! dimension `-1..=d-1` and stored at `0..=d`. The q-form of a coefficient
//! row pairs the entry for dimension `k-1` with `t^k`; the p-form is its
//! reversal, pairing dimension `k-1` with `t^(d-k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{
    self, factorial, isolate_real_roots_tol, lt_eigendecompose, mat_power_apply, rational, stirling2,
    EigenData, ExactError, Polynomial, Rational, RationalMatrix, RootReport,
};
pub use crate::fvector::FVector;
use crate::series::iota_poly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarycentricError {
    #[error("dimension parameter must be at least {min}, got {d}")]
    DimensionTooSmall { d: usize, min: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("{kind}_{d} has {found} real roots, expected {expected}")]
    RealRootDeficit {
        d: usize,
        kind: char,
        found: usize,
        expected: usize,
        partial: Box<LimitRoots>,
    },
    #[error("trial division bound {bound} exhausted on {remaining}")]
    FactorizationTimeout { bound: u64, remaining: BigInt, partial: Box<DenominatorReport> },
}

/// `λ_{i,j}`: the number of `j`-faces interior to the barycentric
/// subdivision of the `i`-simplex, via `(j+1)! S(i+1, j+1)`.
pub fn lambda_entry(i: isize, j: isize) -> BigInt {
    assert!(i >= -1 && j >= -1, "face dimensions start at -1");
    if j > i {
        return BigInt::zero();
    }
    if i == -1 {
        return BigInt::one();
    }
    if j == -1 {
        return BigInt::zero();
    }
    factorial((j + 1) as u32) * stirling2((i + 1) as u32, (j + 1) as u32)
}

/// `Λ_d`, `(d+1) x (d+1)` with logical indices `-1..=d-1`.
pub fn lambda_matrix(d: usize) -> RationalMatrix {
    assert!(d >= 1, "lambda_matrix needs d >= 1");
    let rows = (0..=d)
        .map(|r| {
            (0..=d)
                .map(|c| Rational::from_integer(lambda_entry(r as isize - 1, c as isize - 1)))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("square").with_index_base(-1)
}

/// `f · Λ_d^n`: the f-vector of the `n`-th barycentric subdivision.
pub fn subdivided_fvector(f: &FVector, n: usize) -> FVector {
    if n == 0 || f.d() == 0 {
        return f.clone();
    }
    let out = mat_power_apply(&f.as_rationals(), &lambda_matrix(f.d()), n).expect("matching sizes");
    FVector::from_rationals(&out).expect("integer matrix action keeps integers")
}

/// `(p^X_n, q^X_n)`: the f- and reversed f-polynomials of `X^(n)` scaled by
/// `(d!)^-n`.
pub fn normalized_polys(f: &FVector, n: usize) -> (Polynomial, Polynomial) {
    let fn_ = subdivided_fvector(f, n);
    let scale = Rational::new(
        BigInt::one(),
        num_traits::pow(factorial(f.d() as u32), n),
    );
    (fn_.f_polynomial().scale(&scale), fn_.q_polynomial().scale(&scale))
}

/// Exact eigendata of `Λ_d`.
pub fn lambda_eigendata(d: usize) -> Result<EigenData, BarycentricError> {
    if d < 1 {
        return Err(BarycentricError::DimensionTooSmall { d, min: 1 });
    }
    Ok(lt_eigendecompose(&lambda_matrix(d))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitData {
    pub d: usize,
    pub p: Polynomial,
    pub q: Polynomial,
    /// Row of `P_d^-1` for face dimension `d-1`.
    #[serde(with = "rational::vec")]
    pub last_row: Vec<Rational>,
}

impl LimitData {
    pub fn from_last_row(d: usize, last_row: Vec<Rational>) -> Self {
        let q = Polynomial::new(last_row.clone());
        let p = q.reversed(d);
        LimitData { d, p, q, last_row }
    }
}

/// `p_d` and `q_d` from the last row of `P_d^-1`.
pub fn limit_polys(d: usize) -> Result<LimitData, BarycentricError> {
    let eig = lambda_eigendata(d)?;
    Ok(LimitData::from_last_row(d, eig.p_inv.row(d).to_vec()))
}

/// `c_{X,d}`: the last entry of `f^X · P_d`, the weight of the dominant
/// eigendirection in `f^X`.
pub fn limit_constant(f: &FVector) -> Result<Rational, BarycentricError> {
    let eig = lambda_eigendata(f.d())?;
    let row = eig.p.left_apply(&f.as_rationals())?;
    Ok(row[f.d()].clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRoots {
    pub d: usize,
    /// Roots of `p_d`, ascending, with multiplicity.
    pub p: Vec<f64>,
    /// Roots of `q_d`, ascending, with multiplicity.
    pub q: Vec<f64>,
    pub p_report: RootReport,
    pub q_report: RootReport,
}

/// Isolates and refines the real roots of `p_d` and `q_d` to `tol`.
///
/// A polynomial with fewer real roots than its degree yields
/// `RealRootDeficit` carrying everything that was found.
pub fn limit_roots(d: usize, tol: &Rational) -> Result<LimitRoots, BarycentricError> {
    if d < 2 {
        return Err(BarycentricError::DimensionTooSmall { d, min: 2 });
    }
    let data = limit_polys(d)?;
    let p_report = isolate_real_roots_tol(&data.p, tol)?;
    let q_report = isolate_real_roots_tol(&data.q, tol)?;
    let out = LimitRoots {
        d,
        p: p_report.approximations_with_multiplicity(),
        q: q_report.approximations_with_multiplicity(),
        p_report,
        q_report,
    };
    for (kind, rep) in [('p', &out.p_report), ('q', &out.q_report)] {
        if !rep.is_real_rooted() {
            return Err(BarycentricError::RealRootDeficit {
                d,
                kind,
                found: rep.count_real,
                expected: rep.degree,
                partial: Box::new(out.clone()),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCheck {
    pub holds: bool,
    /// Must be the zero polynomial when `holds`.
    pub witness: Polynomial,
}

/// Checks `q_d(t) = (-1)^d q_d(-1-t)` coefficient-wise.
pub fn check_symmetry(d: usize) -> Result<PolyCheck, BarycentricError> {
    let q = limit_polys(d)?.q;
    Ok(symmetry_witness(&q, d))
}

pub(crate) fn symmetry_witness(q: &Polynomial, d: usize) -> PolyCheck {
    let mut mirrored = iota_poly(q);
    if d % 2 == 1 {
        mirrored = -mirrored;
    }
    let witness = q - &mirrored;
    PolyCheck { holds: witness.is_zero(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorEntry {
    /// Power of `t` in `q_d`.
    pub power: usize,
    #[serde(with = "rational")]
    pub coefficient: Rational,
    #[serde(serialize_with = "serialize_bigint")]
    pub denominator: BigInt,
    /// Prime factorization as `(prime, exponent)`.
    #[serde(serialize_with = "serialize_factors")]
    pub factors: Vec<(BigInt, u32)>,
    pub square_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorReport {
    pub d: usize,
    pub entries: Vec<DenominatorEntry>,
}

impl DenominatorReport {
    pub fn all_square_free(&self) -> bool {
        self.entries.iter().all(|e| e.square_free)
    }
}

fn serialize_bigint<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn serialize_factors<S: serde::Serializer>(f: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

/// Default trial-division bound for [`denominator_report`].
pub const DEFAULT_TRIAL_BOUND: u64 = 10_000_000;

/// Factors the reduced denominators of the coefficients of `q_d` by trial
/// division up to `bound` and flags square-freeness.
pub fn denominator_report(d: usize, bound: u64) -> Result<DenominatorReport, BarycentricError> {
    let q = limit_polys(d)?.q;
    let mut entries = Vec::with_capacity(d + 1);
    let mut overrun = None;
    for power in 0..=d {
        let coefficient = q.coeff(power);
        let denominator = coefficient.denom().clone();
        let (factors, rest) = trial_factor(&denominator, bound);
        let square_free = factors.iter().all(|(_, e)| *e == 1);
        if !rest.is_one() && overrun.is_none() {
            overrun = Some(rest);
        }
        entries.push(DenominatorEntry { power, coefficient, denominator, factors, square_free });
    }
    let report = DenominatorReport { d, entries };
    match overrun {
        Some(remaining) => Err(BarycentricError::FactorizationTimeout {
            bound,
            remaining,
            partial: Box::new(report),
        }),
        None => Ok(report),
    }
}

/// Trial division by 2 and odd numbers up to `bound`. Returns the factors
/// found and the unfactored cofactor (`1` when complete).
pub fn trial_factor(n: &BigInt, bound: u64) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= bound && !rest.is_one() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            out.push((rest.clone(), 1));
            rest = BigInt::one();
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    // a cofactor below bound^2 with no divisor up to bound is prime
    if !rest.is_one() && rest.to_u128().is_some_and(|r| r <= u128::from(bound) * u128::from(bound)) {
        out.push((rest, 1));
        rest = BigInt::one();
    }
    (out, rest)
}

/// Convenience: the real roots of `p^X_n`, ascending, with multiplicity.
pub fn p_roots(f: &FVector, n: usize, tol: &Rational) -> Result<RootReport, BarycentricError> {
    let (p, _) = normalized_polys(f, n);
    Ok(exactalg::isolate_real_roots_tol(&p, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use crate::exactalg::{binomial, Polynomial};

    /// `λ_{i,j}` from the alternating binomial sum, with the column index
    /// counting vertices of the interior face: `Σ_l (-1)^(j+1-l) C(j+1,l) l^(i+1)`.
    fn lambda_alternating(i: isize, j: isize) -> BigInt {
        if i == -1 || j == -1 {
            return BigInt::from(u8::from(i == j));
        }
        let (n, k) = ((i + 1) as u32, (j + 1) as u32);
        (0..=k)
            .map(|l| {
                let term = binomial(k, l) * BigInt::from(l).pow(n);
                if (k - l) % 2 == 0 { term } else { -term }
            })
            .sum()
    }

    fn lambda5_displayed() -> RationalMatrix {
        RationalMatrix::from_int_rows(&[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 1, 2, 0, 0, 0],
            &[0, 1, 6, 6, 0, 0],
            &[0, 1, 14, 36, 24, 0],
            &[0, 1, 30, 150, 240, 120],
        ])
        .unwrap()
        .with_index_base(-1)
    }

    #[test]
    fn lambda_entries() {
        assert_eq!(lambda_entry(1, 1), BigInt::from(2));
        assert_eq!(lambda_entry(2, 1), BigInt::from(6));
        assert_eq!(lambda_entry(2, 2), BigInt::from(6));
        assert_eq!(lambda_entry(4, 3), BigInt::from(240));
        assert_eq!(lambda_entry(4, 4), BigInt::from(120));
        assert_eq!(lambda_entry(0, 1), BigInt::zero());
        assert_eq!(lambda_entry(-1, -1), BigInt::one());
    }

    #[test]
    fn closed_form_matches_alternating_sum() {
        for i in -1..=10 {
            for j in -1..=i {
                assert_eq!(lambda_entry(i, j), lambda_alternating(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn lambda_matrices() {
        assert_eq!(lambda_matrix(5), lambda5_displayed());
        assert_eq!(lambda_matrix(1), RationalMatrix::identity(2).with_index_base(-1));
        for d in 1..=12 {
            let m = lambda_matrix(d);
            assert!(m.is_lower_triangular());
            let expect: Vec<Rational> = (0..=d as u32).map(|k| Rational::from_integer(factorial(k))).collect();
            assert_eq!(m.diag(), expect);
        }
    }

    #[test]
    fn subdivided_vectors() {
        let edge = FVector::from_ints(&[1, 2, 1]);
        assert_eq!(subdivided_fvector(&edge, 0), edge);
        assert_eq!(subdivided_fvector(&edge, 1), FVector::from_ints(&[1, 3, 2]));
        let sphere = FVector::from_ints(&[1, 4, 6, 4]);
        assert_eq!(subdivided_fvector(&sphere, 1), FVector::from_ints(&[1, 14, 36, 24]));
    }

    #[test]
    fn normalized_polynomials() {
        let edge = FVector::from_ints(&[1, 2, 1]);
        let (p0, _) = normalized_polys(&edge, 0);
        assert_eq!(p0, edge.f_polynomial());
        let (p1, q1) = normalized_polys(&edge, 1);
        assert_eq!(p1, Polynomial::new(vec![int(1), rat(3, 2), rat(1, 2)]));
        assert_eq!(q1, Polynomial::new(vec![rat(1, 2), rat(3, 2), int(1)]));
        let (p3, q3) = normalized_polys(&FVector::from_ints(&[1, 4, 6, 4]), 3);
        assert_eq!(p3.leading(), rat(1, 216));
        assert_eq!(q3.coeff(0), rat(1, 216));
    }

    #[test]
    fn eigendata_reconstructs() {
        for d in 1..=10 {
            let e = lambda_eigendata(d).unwrap();
            assert_eq!(e.reconstruct(), lambda_matrix(d));
            assert_eq!(e.p.mul(&e.p_inv).unwrap(), RationalMatrix::identity(d + 1).with_index_base(-1));
            assert!(e.p_inv.is_lower_triangular());
            assert!(e.p_inv.diag().iter().all(One::is_one));
        }
    }

    #[test]
    fn small_limit_polys() {
        let l2 = limit_polys(2).unwrap();
        assert_eq!(l2.q, Polynomial::from_ints(&[0, 1, 1]));
        assert_eq!(l2.p, Polynomial::from_ints(&[1, 1]));
        let l3 = limit_polys(3).unwrap();
        assert_eq!(l3.q, Polynomial::new(vec![int(0), rat(1, 2), rat(3, 2), int(1)]));
        let l4 = limit_polys(4).unwrap();
        assert_eq!(l4.last_row, vec![int(0), rat(2, 11), rat(13, 11), int(2), int(1)]);
    }

    #[test]
    fn limit_poly_shape() {
        for d in 2..=10 {
            let l = limit_polys(d).unwrap();
            assert_eq!(l.q.degree(), Some(d));
            assert!(l.q.leading().is_one());
            assert!(l.q.coeff(0).is_zero());
            assert_eq!(l.p.degree(), Some(d - 1));
            assert!(!l.p.coeff(0).is_zero());
            assert!(l.p.nonnegative_coefficients() && l.q.nonnegative_coefficients());
            assert!(l.q.eval(&int(-1)).is_zero());
            assert_eq!(l.p, l.q.reversed(d));
        }
    }

    #[test]
    fn small_limit_roots() {
        let tol = rational::pow10_neg(12);
        let r3 = limit_roots(3, &tol).unwrap();
        assert!((r3.p[0] + 2.0).abs() < 1e-9 && (r3.p[1] + 1.0).abs() < 1e-9);
        let r2 = limit_roots(2, &tol).unwrap();
        assert_eq!(r2.p.len(), 1);
        assert!((r2.p[0] + 1.0).abs() < 1e-12);
        let r5 = limit_roots(5, &tol).unwrap();
        for (got, want) in r5.q.iter().zip([-1.0, -0.88044, -0.5, -0.11956, 0.0]) {
            assert!((got - want).abs() < 1e-4, "{:?}", r5.q);
        }
        assert!(matches!(limit_roots(1, &tol), Err(BarycentricError::DimensionTooSmall { .. })));
    }

    #[test]
    fn symmetry_small() {
        for d in 2..=10 {
            let c = check_symmetry(d).unwrap();
            assert!(c.holds, "d={d} witness {}", c.witness);
        }
        // Λ_1 is the identity, so q_1 = t is not pinned down by a dominant
        // eigenvalue, and t - (-1)(-1-t) = -1
        let c = check_symmetry(1).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Polynomial::from_ints(&[-1]));
        // a non-symmetric polynomial produces a nonzero witness
        let bad = symmetry_witness(&Polynomial::from_ints(&[0, 1, 2, 1]), 3);
        assert!(!bad.holds);
    }

    #[test]
    fn denominators() {
        let r4 = denominator_report(4, DEFAULT_TRIAL_BOUND).unwrap();
        let dens: Vec<BigInt> = r4.entries.iter().map(|e| e.denominator.clone()).collect();
        assert_eq!(dens, [1, 11, 11, 1, 1].map(BigInt::from));
        assert!(r4.all_square_free());
        let r2 = denominator_report(2, DEFAULT_TRIAL_BOUND).unwrap();
        assert!(r2.entries.iter().all(|e| e.denominator.is_one()));
        let r7 = denominator_report(7, DEFAULT_TRIAL_BOUND).unwrap();
        assert!(r7.entries.iter().any(|e| e.denominator == BigInt::from(34399)));
        assert!(r7.all_square_free());
    }

    #[test]
    fn trial_division() {
        let (f, rest) = trial_factor(&BigInt::from(34399), 1000);
        assert_eq!(f, vec![(BigInt::from(41), 1), (BigInt::from(839), 1)]);
        assert!(rest.is_one());
        let (f, _) = trial_factor(&BigInt::from(2 * 2 * 3 * 7), 100);
        assert_eq!(f, vec![(BigInt::from(2), 2), (BigInt::from(3), 1), (BigInt::from(7), 1)]);
        // 1000003 * 1000033 needs a divisor above the bound
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let (f, rest) = trial_factor(&n, 1000);
        assert!(f.is_empty());
        assert_eq!(rest, n);
    }

    #[test]
    fn factorization_bound_overrun_reports_partial() {
        // q_10 has the denominator 123031432784730871 = 31*47*89*107*547*3217*5039
        match denominator_report(10, 1000) {
            Err(BarycentricError::FactorizationTimeout { partial, remaining, .. }) => {
                assert_eq!(partial.entries.len(), 11);
                assert_eq!(remaining, BigInt::from(3217u64 * 5039));
            }
            other => panic!("expected overrun, got {other:?}"),
        }
    }
}
