use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Rank of the free part of the cokernel `Z^rows / col-span`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.d.nrows() - self.rank()
    }

    /// Invariant factors of the cokernel that are not units.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.ncols() {
                let delta = factor * &m[(source, j)];
                if !delta.is_zero() {
                    m[(target, j)] += delta;
                }
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.nrows() {
                let delta = factor * &m[(i, source)];
                if !delta.is_zero() {
                    m[(i, target)] += delta;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.ncols() {
                let x = -&m[(i, j)];
                m[(i, j)] = x;
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce(&mut self) {
        let (rows, cols) = (self.a.nrows(), self.a.ncols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[(t, t)].clone();

                let mut leftover = false;
                for i in t + 1..rows {
                    let q = &self.a[(i, t)] / &p;
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                    leftover |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    let q = &self.a[(t, j)] / &p;
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                    leftover |= !self.a[(t, j)].is_zero();
                }
                if leftover {
                    continue;
                }

                let bad_row = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&self.a[(i, j)] % &p).is_zero()));
                if let Some(i) = bad_row {
                    self.add_row(t, i, &BigInt::one());
                    continue;
                }
                if p.is_negative() {
                    self.negate_row(t);
                }
                break;
            }
        }
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
///
/// Pivot choice is deterministic (smallest absolute value, ties broken by
/// row-major position), so `U` and `V` are reproducible.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(a.nrows()),
        v: IntMatrix::identity(a.ncols()),
    };
    r.reduce();
    SmithForm {
        u: r.u,
        v: r.v,
        d: r.a,
    }
}
