//! Exact rational linear algebra, polynomials and real-root isolation.

pub mod combinat;
pub mod eigen;
pub mod matrix;
pub mod polynomial;
pub mod rational;
pub mod roots;

use thiserror::Error;

pub use combinat::{binomial, factorial, finite_difference, stirling2};
pub use eigen::{lt_eigendecompose, EigenData};
pub use matrix::RationalMatrix;
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use roots::{isolate_real_roots, isolate_real_roots_tol, refine_root, IsolatedRoot, RootReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not lower triangular")]
    NonTriangular,
    #[error("diagonal entries {index} and {other} coincide and the eigenvalue is defective")]
    RepeatedEigenvalue { index: usize, other: usize },
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix rows have differing lengths")]
    Ragged,
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial has equal signs at both interval endpoints")]
    NoSignChange,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// `v * M^n` by repeated multiplication.
pub fn mat_power_apply(
    v: &[Rational],
    m: &RationalMatrix,
    n: usize,
) -> Result<Vec<Rational>, ExactError> {
    if !m.is_square() || v.len() != m.rows() {
        return Err(ExactError::DimensionMismatch {
            left: (1, v.len()),
            right: (m.rows(), m.cols()),
        });
    }
    let mut out = v.to_vec();
    for _ in 0..n {
        out = m.left_apply(&out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::rational::int;
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn power_apply() {
        let l2 = RationalMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 2]]).unwrap();
        assert_eq!(mat_power_apply(&ints(&[1, 2, 1]), &l2, 0).unwrap(), ints(&[1, 2, 1]));
        assert_eq!(mat_power_apply(&ints(&[1, 2, 1]), &l2, 1).unwrap(), ints(&[1, 3, 2]));
        assert_eq!(mat_power_apply(&ints(&[1, 2, 1]), &l2, 2).unwrap(), ints(&[1, 5, 4]));
        assert!(mat_power_apply(&ints(&[1, 2]), &l2, 1).is_err());
    }
}
