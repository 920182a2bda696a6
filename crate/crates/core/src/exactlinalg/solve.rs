use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{det_bareiss, IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Reduced row echelon form over the rationals. Returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let v = &m[(i, j)] - &f * &m[(r, j)];
                m[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &IntMatrix) -> usize {
    rref(&mut a.to_rational()).len()
}

/// Inverse over the rationals; `None` when singular.
pub fn inverse_rational(a: &IntMatrix) -> Result<Option<RatMatrix>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "inverse of non-square {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = BigRational::from_integer(a[(i, j)].clone());
        }
        aug[(i, n + i)] = BigRational::one();
    }
    let pivots = rref(&mut aug);
    if pivots.iter().filter(|&&c| c < n).count() < n {
        return Ok(None);
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Ok(Some(aug.submatrix(&rows, &cols)))
}

/// Exact integer inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(a: &IntMatrix) -> Result<IntMatrix> {
    let det = det_bareiss(a)?;
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    let inv = inverse_rational(a)?.expect("unimodular matrix is invertible");
    Ok(inv
        .to_integer()
        .expect("inverse of a unimodular matrix is integral"))
}

/// Rational right-nullspace basis of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullspace {
    /// Each vector scaled so its first nonzero coordinate is 1.
    pub basis: Vec<Vec<BigRational>>,
    /// The same vectors cleared to primitive integer vectors with positive
    /// leading coordinate.
    pub integer_basis: Vec<Vec<BigInt>>,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn nullspace_rational(a: &IntMatrix) -> Nullspace {
    let mut m = a.to_rational();
    let pivots = rref(&mut m);
    let cols = a.ncols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[(r, f)].clone();
        }
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("basis vector has a free coordinate");
        for x in &mut v {
            *x = &*x / &lead;
        }
        basis.push(v);
    }
    let integer_basis = basis.iter().map(|v| clear_denominators(v)).collect();
    Nullspace {
        basis,
        integer_basis,
    }
}

/// Smallest integer multiple of `v`, divided by the content, with positive
/// leading coordinate.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut out {
            *x = &*x / &g;
        }
    }
    if out
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}
