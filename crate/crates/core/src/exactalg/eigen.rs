//! Exact eigendecomposition of lower-triangular matrices.

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::ExactError;

/// `M = P * diag(D) * P^-1` with `P` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub p: RationalMatrix,
    pub d: Vec<Rational>,
    pub p_inv: RationalMatrix,
}

impl EigenData {
    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> RationalMatrix {
        let pd = self
            .p
            .mul(&RationalMatrix::diagonal(&self.d).with_index_base(self.p.index_base()))
            .expect("square factors");
        pd.mul(&self.p_inv).expect("square factors")
    }
}

/// Diagonalizes a lower-triangular matrix exactly.
///
/// Column `j` of `P` is the right eigenvector for the diagonal entry `j`,
/// normalized so that its `j`-th entry is 1. When a diagonal value repeats,
/// the decomposition still succeeds as long as the matrix is diagonalizable
/// (the eigenvector recursion never divides a nonzero residual by zero);
/// otherwise `RepeatedEigenvalue` is returned.
pub fn lt_eigendecompose(m: &RationalMatrix) -> Result<EigenData, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_lower_triangular() {
        return Err(ExactError::NonTriangular);
    }
    let n = m.rows();
    let diag = m.diag();
    let mut p = RationalMatrix::zeros(n, n).with_index_base(m.index_base());
    for j in 0..n {
        let lambda = &diag[j];
        p[(j, j)] = Rational::one();
        for i in (j + 1)..n {
            let mut acc = Rational::zero();
            for k in j..i {
                let mk = &m[(i, k)];
                if !mk.is_zero() && !p[(k, j)].is_zero() {
                    acc += mk * &p[(k, j)];
                }
            }
            let gap = lambda - &diag[i];
            if gap.is_zero() {
                if !acc.is_zero() {
                    return Err(ExactError::RepeatedEigenvalue { index: j, other: i });
                }
                // free coordinate inside a repeated eigenspace
                continue;
            }
            p[(i, j)] = acc / gap;
        }
    }
    let p_inv = unit_lower_inverse(&p);
    Ok(EigenData { p, d: diag, p_inv })
}

/// Inverse of a unit lower-triangular matrix by forward substitution.
pub fn unit_lower_inverse(p: &RationalMatrix) -> RationalMatrix {
    let n = p.rows();
    let mut inv = RationalMatrix::zeros(n, n).with_index_base(p.index_base());
    for j in 0..n {
        inv[(j, j)] = Rational::one();
        for i in (j + 1)..n {
            let mut acc = Rational::zero();
            for k in j..i {
                if !p[(i, k)].is_zero() && !inv[(k, j)].is_zero() {
                    acc += &p[(i, k)] * &inv[(k, j)];
                }
            }
            inv[(i, j)] = -acc;
        }
    }
    inv
}
