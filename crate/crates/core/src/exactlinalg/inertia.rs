use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Inertia {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

fn require_symmetric(a: &IntMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "inertia of non-square {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    match a.first_asymmetry() {
        Some((row, col)) => Err(Error::NotSymmetric { row, col }),
        None => Ok(()),
    }
}

/// Inertia by exact symmetric LDLᵀ elimination.
///
/// The largest-magnitude diagonal entry is used as a 1×1 pivot. When every
/// remaining diagonal entry is zero, a nonzero off-diagonal `b` yields the
/// 2×2 pivot `[[0, b], [b, 0]]`, which has one positive and one negative
/// eigenvalue.
pub fn inertia_ldlt(a: &IntMatrix) -> Result<Inertia> {
    require_symmetric(a)?;
    let mut s: RatMatrix = a.to_rational();
    let mut active: Vec<usize> = (0..a.nrows()).collect();
    let mut out = Inertia::default();

    while !active.is_empty() {
        let diag = active
            .iter()
            .copied()
            .filter(|&i| !s[(i, i)].is_zero())
            .max_by(|&i, &j| s[(i, i)].abs().cmp(&s[(j, j)].abs()).then(j.cmp(&i)));

        if let Some(p) = diag {
            let d = s[(p, p)].clone();
            if d.is_positive() {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                let f = &s[(i, p)] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = &s[(i, j)] - &f * &s[(p, j)];
                    s[(i, j)] = v;
                }
            }
            continue;
        }

        let off = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !s[(i, j)].is_zero())
                .map(|&j| (i, j))
        });
        let Some((p, q)) = off else {
            out.n_zero += active.len();
            break;
        };

        // Block [[0, b], [b, 0]] with inverse [[0, 1/b], [1/b, 0]].
        out.n_plus += 1;
        out.n_minus += 1;
        let b_inv = s[(p, q)].recip();
        active.retain(|&i| i != p && i != q);
        let xp: Vec<BigRational> = active.iter().map(|&i| s[(i, p)].clone()).collect();
        let xq: Vec<BigRational> = active.iter().map(|&i| s[(i, q)].clone()).collect();
        for (a_idx, &i) in active.iter().enumerate() {
            for (b_idx, &j) in active.iter().enumerate() {
                let corr = (&xp[a_idx] * &xq[b_idx] + &xq[a_idx] * &xp[b_idx]) * &b_inv;
                if !corr.is_zero() {
                    let v = &s[(i, j)] - corr;
                    s[(i, j)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Characteristic polynomial det(xI − A), coefficients from x^0 up to x^n.
///
/// Faddeev–LeVerrier recursion; each division by k is exact for integer
/// matrices.
pub fn characteristic_polynomial(a: &IntMatrix) -> Result<Vec<BigInt>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of non-square {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let tr = (a * &m).trace();
        debug_assert!((&tr % BigInt::from(k)).is_zero());
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    Ok(coeffs)
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Inertia by Descartes' rule of signs on the characteristic polynomial.
///
/// All roots of a symmetric matrix's characteristic polynomial are real, so
/// the sign-variation counts are exact rather than upper bounds.
pub fn inertia_charpoly(a: &IntMatrix) -> Result<Inertia> {
    require_symmetric(a)?;
    let p = characteristic_polynomial(a)?;
    let n_zero = p.iter().take_while(|c| c.is_zero()).count();
    let stripped = &p[n_zero..];
    let n_plus = sign_variations(stripped.iter());
    let flipped: Vec<BigInt> = stripped
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    let n_minus = sign_variations(flipped.iter());
    Ok(Inertia::new(n_plus, n_minus, n_zero))
}

/// Inertia via LDLᵀ, cross-checked against the characteristic polynomial.
pub fn inertia_checked(a: &IntMatrix) -> Result<Inertia> {
    let ldlt = inertia_ldlt(a)?;
    let charpoly = inertia_charpoly(a)?;
    if ldlt != charpoly {
        return Err(Error::InertiaMismatch {
            ldlt: ldlt.to_string(),
            charpoly: charpoly.to_string(),
        });
    }
    Ok(ldlt)
}

/// Default inertia routine (LDLᵀ).
pub fn inertia(a: &IntMatrix) -> Result<Inertia> {
    inertia_ldlt(a)
}
