//! Seeded generators for randomized cross-checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactlinalg::IntMatrix;
use crate::forms::{BilinearForm, Epsilon};

/// Random unimodular matrix: a product of `steps` elementary transvections
/// with small multipliers, followed by a signed permutation.
pub fn random_unimodular<R: Rng + ?Sized>(dim: usize, steps: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(dim);
    if dim == 0 {
        return m;
    }
    if dim > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = BigInt::from(*[-2i64, -1, 1, 2].choose(rng).unwrap());
            for col in 0..dim {
                let delta = &c * &m[(j, col)];
                m[(i, col)] += delta;
            }
        }
    }
    signed_permutation(&m, rng)
}

fn signed_permutation<R: Rng + ?Sized>(m: &IntMatrix, rng: &mut R) -> IntMatrix {
    let dim = m.nrows();
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut out = IntMatrix::zeros(dim, m.ncols());
    for (new, &old) in perm.iter().enumerate() {
        let flip = rng.gen_bool(0.5);
        for c in 0..m.ncols() {
            out[(new, c)] = if flip {
                -&m[(old, c)]
            } else {
                m[(old, c)].clone()
            };
        }
    }
    out
}

/// Random congruence that keeps the diagonal of a zero-diagonal form zero.
///
/// Adding `c` times basis vector `j` to basis vector `i` changes the `i`-th
/// diagonal entry by `2c·F_ij + c²·F_jj`, so only pairs with `F_ij = 0` are
/// used for symmetric forms (skew forms accept every pair). Returns the
/// basis change `M` and the form `M F Mᵀ`.
pub fn random_zero_diagonal_congruence<R: Rng + ?Sized>(
    f: &BilinearForm,
    steps: usize,
    rng: &mut R,
) -> (IntMatrix, BilinearForm) {
    debug_assert!(f.has_zero_diagonal());
    let dim = f.rank();
    let mut m = IntMatrix::identity(dim);
    let mut g = f.matrix().clone();
    if dim > 1 {
        for _ in 0..steps {
            let candidates: Vec<(usize, usize)> = (0..dim)
                .flat_map(|i| (0..dim).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && (f.epsilon() == Epsilon::Skew || g[(i, j)].is_zero()))
                .collect();
            let Some(&(i, j)) = candidates.choose(rng) else {
                break;
            };
            let c = BigInt::from(*[-2i64, -1, 1, 2].choose(rng).unwrap());
            let mut e = IntMatrix::identity(dim);
            e[(i, j)] = c;
            g = &(&e * &g) * &e.transpose();
            m = &e * &m;
        }
    }
    let p = signed_permutation(&IntMatrix::identity(dim), rng);
    let g = &(&p * &g) * &p.transpose();
    let m = &p * &m;
    let out = BilinearForm::new(g, f.epsilon()).expect("congruence preserves symmetry");
    debug_assert!(out.has_zero_diagonal());
    (m, out)
}

/// Random symmetric integer matrix with entries in `[-bound, bound]`.
pub fn random_symmetric<R: Rng + ?Sized>(dim: usize, bound: i64, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let x = BigInt::from(rng.gen_range(-bound..=bound));
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

/// Standard symplectic form `J ⊕ … ⊕ J` with `J = [[0, 1], [-1, 0]]`.
pub fn symplectic(m: usize) -> BilinearForm {
    let mut out = IntMatrix::zeros(2 * m, 2 * m);
    for b in 0..m {
        out[(2 * b, 2 * b + 1)] = BigInt::one();
        out[(2 * b + 1, 2 * b)] = -BigInt::one();
    }
    BilinearForm::skew(out).expect("J is skew")
}

/// `H ⊕ … ⊕ H`.
pub fn hyperbolic(m: usize) -> BilinearForm {
    crate::forms::build_standard(0, m as u64)
}
