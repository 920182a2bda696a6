//! Exact dense linear algebra over the integers and rationals.

mod det;
mod inertia;
mod matrix;
mod smith;
mod solve;

pub use det::{det_bareiss, is_unimodular};
pub use inertia::{
    characteristic_polynomial, inertia, inertia_charpoly, inertia_checked, inertia_ldlt, Inertia,
};
pub use matrix::{DenseMatrix, IntMatrix, RatMatrix};
pub use smith::{smith_normal_form, SmithForm};
pub use solve::{
    clear_denominators, inverse_rational, inverse_unimodular, nullspace_rational, rank, rref,
    Nullspace,
};

use crate::error::{Error, Result};

/// Congruence transform `M * A * Mᵀ`.
pub fn congruence_apply(m: &IntMatrix, a: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() || !a.is_square() || m.ncols() != a.nrows() {
        return Err(Error::Dimension(format!(
            "congruence of {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            m.nrows(),
            m.ncols()
        )));
    }
    m.checked_mul(a)?.checked_mul(&m.transpose())
}
