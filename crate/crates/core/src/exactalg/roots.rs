//! Real-root isolation with Sturm sequences and bisection refinement.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::polynomial::Polynomial;
use super::rational::{self, Rational};
use super::ExactError;

/// One isolated real root: `lo <= r <= hi`, with `lo == hi` when the root
/// was hit exactly. Endpoints of proper intervals are never roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedRoot {
    #[serde(with = "rational")]
    pub lo: Rational,
    #[serde(with = "rational")]
    pub hi: Rational,
    pub multiplicity: usize,
    pub approx: f64,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    /// Sorted ascending, pairwise disjoint.
    pub roots: Vec<IsolatedRoot>,
    /// Real roots counted with multiplicity.
    pub count_real: usize,
    pub degree: usize,
}

impl RootReport {
    pub fn intervals(&self) -> Vec<(Rational, Rational)> {
        self.roots.iter().map(|r| (r.lo.clone(), r.hi.clone())).collect()
    }

    pub fn approximations(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.approx).collect()
    }

    /// Approximations repeated according to multiplicity.
    pub fn approximations_with_multiplicity(&self) -> Vec<f64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.approx, r.multiplicity))
            .collect()
    }

    pub fn is_real_rooted(&self) -> bool {
        self.count_real == self.degree
    }
}

/// Sturm chain `p0 = g, p1 = g', p_{k+1} = -rem(p_{k-1}, p_k)`.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(g: &Polynomial) -> Self {
        let mut chain = vec![g.clone(), g.derivative()];
        while !chain.last().is_some_and(Polynomial::is_zero) {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain.retain(|p| !p.is_zero());
        SturmSequence { chain: chain.iter().map(IntPoly::new).collect() }
    }

    /// Sign variations at `x` (zeros skipped).
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct roots in `(a, b]` for a square-free chain head.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A positive integer multiple of a rational polynomial; only its sign at
/// rational points is used, which avoids gcds during evaluation.
#[derive(Clone, Debug)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn new(g: &Polynomial) -> Self {
        let lcm = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = g.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        IntPoly { coeffs }
    }

    /// Sign of `sum a_i p^i q^(n-i)` for `x = p/q`, `q > 0`.
    fn sign_at(&self, x: &Rational) -> i8 {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for a in self.coeffs.iter().rev() {
            acc = acc * p + a * &qpow;
            qpow *= q;
        }
        match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

/// Strict bound on the magnitude of every root: `1 + max |a_k / a_n|`.
pub fn cauchy_bound(g: &Polynomial) -> Rational {
    let lead = g.leading().abs();
    let n = g.degree().unwrap_or(0);
    let max = g.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// Isolates all real roots of `g`, then refines each interval below the
/// default tolerance `1e-12`.
pub fn isolate_real_roots(g: &Polynomial) -> Result<RootReport, ExactError> {
    isolate_real_roots_tol(g, &default_tolerance())
}

pub fn default_tolerance() -> Rational {
    rational::pow10_neg(12)
}

pub fn isolate_real_roots_tol(g: &Polynomial, tol: &Rational) -> Result<RootReport, ExactError> {
    let degree = g.degree().ok_or(ExactError::ZeroPolynomial)?;
    if !tol.is_positive() {
        return Err(ExactError::NonPositiveTolerance);
    }
    if degree == 0 {
        return Ok(RootReport { roots: Vec::new(), count_real: 0, degree });
    }
    let sqf = g.square_free_part();
    let factors = g.square_free_factors();
    let sturm = SturmSequence::new(&sqf);
    let bound = cauchy_bound(&sqf);
    let mut found: Vec<(Rational, Rational)> = Vec::new();
    let head = IntPoly::new(&sqf);
    bisect(&head, &sturm, -bound.clone(), bound, &mut found);
    found.sort_by(|x, y| x.0.cmp(&y.0));

    let mut roots = Vec::with_capacity(found.len());
    for (lo, hi) in found {
        let (lo, hi) = if lo == hi { (lo, hi) } else { narrow(&head, lo, hi, tol)? };
        let multiplicity = multiplicity_in(&factors, &lo, &hi);
        let mid = (&lo + &hi) / rational::int(2);
        roots.push(IsolatedRoot {
            approx: rational::to_f64(&mid),
            lo,
            hi,
            multiplicity,
        });
    }
    let count_real = roots.iter().map(|r| r.multiplicity).sum();
    Ok(RootReport { roots, count_real, degree })
}

/// Recursive Sturm bisection on `(a, b]`; both endpoints are non-roots.
fn bisect(
    g: &IntPoly,
    sturm: &SturmSequence,
    a: Rational,
    b: Rational,
    out: &mut Vec<(Rational, Rational)>,
) {
    match sturm.count_in(&a, &b) {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let m = (&a + &b) / rational::int(2);
            if g.sign_at(&m) == 0 {
                // Carve out a root-free neighbourhood of the exact root m.
                let mut delta = (&b - &a) / rational::int(4);
                loop {
                    let l = &m - &delta;
                    let r = &m + &delta;
                    if g.sign_at(&l) != 0 && g.sign_at(&r) != 0 && sturm.count_in(&l, &r) == 1 {
                        out.push((m.clone(), m.clone()));
                        bisect(g, sturm, a, l, out);
                        bisect(g, sturm, r, b, out);
                        return;
                    }
                    delta /= rational::int(2);
                }
            }
            bisect(g, sturm, a, m.clone(), out);
            bisect(g, sturm, m, b, out);
        }
    }
}

/// Shrinks an isolating interval of a simple root below `tol`.
fn narrow(
    g: &IntPoly,
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
) -> Result<(Rational, Rational), ExactError> {
    let mut s_lo = g.sign_at(&lo);
    if s_lo == 0 || s_lo == g.sign_at(&hi) {
        return Err(ExactError::NoSignChange);
    }
    while &(&hi - &lo) >= tol {
        let m = (&lo + &hi) / rational::int(2);
        match g.sign_at(&m) {
            0 => return Ok((m.clone(), m)),
            s if s == s_lo => {
                lo = m;
                s_lo = s;
            }
            _ => hi = m,
        }
    }
    Ok((lo, hi))
}

fn multiplicity_in(factors: &[Polynomial], lo: &Rational, hi: &Rational) -> usize {
    for (i, f) in factors.iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let f = IntPoly::new(f);
        let hit = if lo == hi { f.sign_at(lo) == 0 } else { f.sign_at(lo) * f.sign_at(hi) < 0 };
        if hit {
            return i + 1;
        }
    }
    1
}

/// Bisection of `g` on `[lo, hi]` until the bracket is narrower than `tol`;
/// returns the midpoint of the final bracket.
pub fn refine_root(
    g: &Polynomial,
    interval: (&Rational, &Rational),
    tol: &Rational,
) -> Result<Rational, ExactError> {
    if !tol.is_positive() {
        return Err(ExactError::NonPositiveTolerance);
    }
    let (lo, hi) = interval;
    if g.eval(lo).is_zero() {
        return Ok(lo.clone());
    }
    if g.eval(hi).is_zero() {
        return Ok(hi.clone());
    }
    let (lo, hi) = narrow(&IntPoly::new(g), lo.clone(), hi.clone(), tol)?;
    Ok((lo + hi) / rational::int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn from_roots(roots: &[Rational]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::new(vec![-r.clone(), int(1)]))
    }

    #[test]
    fn two_roots() {
        let rep = isolate_real_roots(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(rep.count_real, 2);
        assert_eq!(rep.roots.len(), 2);
        assert!((rep.roots[0].approx + 1.0).abs() < 1e-12);
        assert!((rep.roots[1].approx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_real_roots() {
        let rep = isolate_real_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!(rep.count_real, 0);
        assert!(rep.roots.is_empty());
        assert!(!rep.is_real_rooted());
    }

    #[test]
    fn q3_roots() {
        let q3 = Polynomial::new(vec![int(0), rat(1, 2), rat(3, 2), int(1)]);
        let rep = isolate_real_roots(&q3).unwrap();
        assert_eq!(rep.count_real, 3);
        let approx = rep.approximations();
        for (a, e) in approx.iter().zip([-1.0, -0.5, 0.0]) {
            assert!((a - e).abs() < 1e-12, "{approx:?}");
        }
    }

    #[test]
    fn multiplicities_reported() {
        // (t+1)^3 (t-2)^2 t
        let g = from_roots(&[int(-1), int(-1), int(-1), int(2), int(2), int(0)]);
        let rep = isolate_real_roots(&g).unwrap();
        assert_eq!(rep.roots.len(), 3);
        assert_eq!(rep.count_real, 6);
        let mult: Vec<usize> = rep.roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mult, vec![3, 1, 2]);
    }

    #[test]
    fn close_roots_separate() {
        let g = from_roots(&[rat(1, 1000), rat(2, 1000), rat(-7, 3), int(5)]);
        let rep = isolate_real_roots(&g).unwrap();
        assert_eq!(rep.roots.len(), 4);
        for w in rep.roots.windows(2) {
            assert!(w[0].hi < w[1].lo || (w[0].hi <= w[1].lo && w[0].is_exact() != w[1].is_exact()));
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(isolate_real_roots(&Polynomial::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn refine_linear() {
        let tol = rational::pow10_neg(12);
        let r = refine_root(&p(&[1, 1]), (&int(-2), &int(0)), &tol).unwrap();
        assert!((rational::to_f64(&r) + 1.0).abs() <= 1e-12);
        let err = refine_root(&p(&[1, 1]), (&int(0), &int(2)), &tol);
        assert_eq!(err, Err(ExactError::NoSignChange));
    }

    #[test]
    fn sturm_counts_match_factorized_polynomials() {
        let cases: Vec<Vec<Rational>> = vec![
            vec![int(1), int(2), int(3)],
            vec![rat(-1, 2), rat(1, 3), rat(1, 3), int(7)],
            vec![int(0), int(0), int(4), int(-4), rat(9, 7)],
        ];
        for roots in cases {
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            // times an irreducible quadratic with no real roots
            let g = &from_roots(&roots) * &p(&[3, 1, 1]);
            let rep = isolate_real_roots(&g).unwrap();
            assert_eq!(rep.roots.len(), distinct.len());
            assert_eq!(rep.count_real, roots.len());
            for (iso, r) in rep.roots.iter().zip(&distinct) {
                assert!(&iso.lo <= r && r <= &iso.hi);
            }
        }
    }
}
