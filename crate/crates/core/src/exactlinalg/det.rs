use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact, so entries stay integral and bounded
/// by Hadamard-type minors of the input.
pub fn det_bareiss(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    matches!(det_bareiss(a), Ok(d) if d == BigInt::one() || d == -BigInt::one())
}
