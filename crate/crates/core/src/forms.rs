//! Integral ε-symmetric bilinear forms, the standard even unimodular
//! building blocks E₈ and H, and invariant-based classification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{congruence_apply, det_bareiss, inertia_checked, Inertia, IntMatrix};

/// Cartan matrix of the E₈ lattice in the vertex order used throughout.
pub const E8_MATRIX: [[i64; 8]; 8] = [
    [2, 1, 0, 0, 0, 0, 0, 0],
    [1, 2, 1, 0, 0, 0, 0, 0],
    [0, 1, 2, 1, 0, 0, 0, 0],
    [0, 0, 1, 2, 1, 0, 0, 0],
    [0, 0, 0, 1, 2, 1, 0, 1],
    [0, 0, 0, 0, 1, 2, 1, 0],
    [0, 0, 0, 0, 0, 1, 2, 0],
    [0, 0, 0, 0, 1, 0, 0, 2],
];

pub const H_MATRIX: [[i64; 2]; 2] = [[0, 1], [1, 0]];

/// The zero-diagonal E₈ block as it circulates in the literature, kept only
/// for comparison with [`zero_diagonal_model`]. Entry (2, 1) (0-based) is
/// `+1` while its mirror (1, 2) is `-1`, so this matrix is not symmetric.
pub const PRINTED_E8_PRIME: [[i64; 8]; 8] = [
    [0, -1, -2, -2, -2, -2, -2, -2],
    [-1, 0, -1, -2, -2, -2, -2, -2],
    [-2, 1, 0, -1, -2, -2, -2, -2],
    [-2, -2, -1, 0, -1, -2, -2, -2],
    [-2, -2, -2, -1, 0, -1, -2, -1],
    [-2, -2, -2, -2, -1, 0, -1, -2],
    [-2, -2, -2, -2, -2, -1, 0, -2],
    [-2, -2, -2, -2, -1, -2, -2, 0],
];

pub fn e8() -> IntMatrix {
    IntMatrix::from_i64(&E8_MATRIX)
}

pub fn h() -> IntMatrix {
    IntMatrix::from_i64(&H_MATRIX)
}

/// Symmetry sign of a bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Symmetric,
    Skew,
}

impl Epsilon {
    /// `(-1)^n`
    pub fn for_dimension(n: u32) -> Self {
        if n.is_multiple_of(2) {
            Epsilon::Symmetric
        } else {
            Epsilon::Skew
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Epsilon::Symmetric => 1,
            Epsilon::Skew => -1,
        }
    }

    pub fn apply(self, x: &BigInt) -> BigInt {
        match self {
            Epsilon::Symmetric => x.clone(),
            Epsilon::Skew => -x,
        }
    }
}

/// A square integer matrix with a declared, verified symmetry sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    matrix: IntMatrix,
    epsilon: Epsilon,
}

impl BilinearForm {
    pub fn new(matrix: IntMatrix, epsilon: Epsilon) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "bilinear form needs a square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in i..n {
                if matrix[(j, i)] != epsilon.apply(&matrix[(i, j)]) {
                    return Err(Error::SymmetrySign {
                        epsilon: epsilon.sign(),
                        row: i,
                        col: j,
                    });
                }
            }
        }
        Ok(BilinearForm { matrix, epsilon })
    }

    pub fn symmetric(matrix: IntMatrix) -> Result<Self> {
        Self::new(matrix, Epsilon::Symmetric)
    }

    pub fn skew(matrix: IntMatrix) -> Result<Self> {
        Self::new(matrix, Epsilon::Skew)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&self.matrix).expect("square by construction")
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn first_nonzero_diagonal(&self) -> Option<usize> {
        (0..self.rank()).find(|&i| !self.matrix[(i, i)].is_zero())
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.first_nonzero_diagonal().is_none()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.epsilon != other.epsilon {
            return Err(Error::Dimension(
                "direct sum of forms with different symmetry".into(),
            ));
        }
        Ok(BilinearForm {
            matrix: self.matrix.direct_sum(&other.matrix),
            epsilon: self.epsilon,
        })
    }

    pub fn negate(&self) -> Self {
        BilinearForm {
            matrix: self.matrix.neg(),
            epsilon: self.epsilon,
        }
    }

    /// `M F Mᵀ`; symmetry is preserved by construction.
    pub fn congruent(&self, m: &IntMatrix) -> Result<Self> {
        Ok(BilinearForm {
            matrix: congruence_apply(m, &self.matrix)?,
            epsilon: self.epsilon,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::Positive => "positive definite",
            Definiteness::Negative => "negative definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        })
    }
}

/// Parity, definiteness and unimodularity of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormType {
    pub parity: Parity,
    pub definiteness: Definiteness,
    pub unimodular: bool,
    pub det: BigInt,
    pub rank: usize,
    /// `None` for skew forms.
    pub inertia: Option<Inertia>,
}

impl FormType {
    pub fn signature(&self) -> i64 {
        self.inertia.map_or(0, |i| i.signature())
    }
}

/// `p E₈ ⊕ q H` with signed `p` (negative `p` means `|p|` copies of −E₈).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StandardForm {
    pub p: i64,
    pub q: u64,
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}E8 + {}H", self.p, self.q)
    }
}

pub fn form_type(f: &BilinearForm) -> Result<FormType> {
    let m = f.matrix();
    let parity = if (0..f.rank()).all(|i| m[(i, i)].is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let det = f.det();
    let (definiteness, inertia) = match f.epsilon() {
        Epsilon::Symmetric => {
            let i = inertia_checked(m)?;
            let d = if i.n_zero > 0 {
                Definiteness::Degenerate
            } else if i.n_minus == 0 {
                Definiteness::Positive
            } else if i.n_plus == 0 {
                Definiteness::Negative
            } else {
                Definiteness::Indefinite
            };
            (d, Some(i))
        }
        // x·x = 0 for every x, so a skew form is never definite.
        Epsilon::Skew if det.is_zero() => (Definiteness::Degenerate, None),
        Epsilon::Skew => (Definiteness::Indefinite, None),
    };
    Ok(FormType {
        parity,
        definiteness,
        unimodular: det.abs().is_one(),
        det,
        rank: f.rank(),
        inertia,
    })
}

/// Classification of an even indefinite unimodular symmetric form as
/// `p E₈ ⊕ q H`, read off from rank and signature.
pub fn classify_indefinite(f: &BilinearForm) -> Result<StandardForm> {
    if f.epsilon() != Epsilon::Symmetric {
        return Err(Error::Classification("form is skew-symmetric".into()));
    }
    let t = form_type(f)?;
    if t.parity == Parity::Odd {
        return Err(Error::Classification("form is odd".into()));
    }
    match t.definiteness {
        Definiteness::Degenerate => return Err(Error::Classification("form is degenerate".into())),
        Definiteness::Positive | Definiteness::Negative => {
            return Err(Error::Classification(format!("form is {}", t.definiteness)))
        }
        Definiteness::Indefinite => {}
    }
    let sigma = t.signature();
    if sigma % 8 != 0 {
        return Err(Error::Classification(format!(
            "signature {sigma} is not divisible by 8, so the even form is not unimodular"
        )));
    }
    if !t.unimodular {
        return Err(Error::Classification(format!(
            "form is not unimodular (det = {})",
            t.det
        )));
    }
    let p = sigma / 8;
    let rest = t.rank as i64 - 8 * p.abs();
    debug_assert!(rest > 0 && rest % 2 == 0);
    Ok(StandardForm {
        p,
        q: (rest / 2) as u64,
    })
}

/// Block-diagonal `|p| (sign(p) E₈) ⊕ q H`.
pub fn build_standard(p: i64, q: u64) -> BilinearForm {
    let block = if p < 0 { e8().neg() } else { e8() };
    let mut m = IntMatrix::zeros(0, 0);
    for _ in 0..p.unsigned_abs() {
        m = m.direct_sum(&block);
    }
    for _ in 0..q {
        m = m.direct_sum(&h());
    }
    BilinearForm {
        matrix: m,
        epsilon: Epsilon::Symmetric,
    }
}

/// Basis change `e'_{i,s} = e_{i,s} + f_{1,1} − f_{2,1}` on `p E₈ ⊕ q H`,
/// as the rows of a unitriangular integer matrix.
pub fn zero_diagonal_basis_change(p: u64, q: u64) -> Result<IntMatrix> {
    if q == 0 {
        return Err(Error::Parameter(
            "zero-diagonal model needs at least one H summand".into(),
        ));
    }
    let e_dim = 8 * p as usize;
    let dim = e_dim + 2 * q as usize;
    let mut m = IntMatrix::identity(dim);
    for i in 0..e_dim {
        m[(i, e_dim)] = BigInt::one();
        m[(i, e_dim + 1)] = -BigInt::one();
    }
    Ok(m)
}

/// Full Gram matrix of `p E₈ ⊕ q H` in the zero-diagonal basis.
///
/// Within an E₈ block the new Gram entries are `E₈ − 2`; distinct E₈ blocks
/// pair to `−2` everywhere, and each new E₈ vector pairs with the first H
/// summand as `(−1, 1)`. The result is therefore not block diagonal.
pub fn zero_diagonal_model(p: i64, q: u64) -> Result<BilinearForm> {
    if p < 0 {
        return Err(Error::Parameter(format!(
            "zero-diagonal model is defined for p >= 0, got {p}"
        )));
    }
    let change = zero_diagonal_basis_change(p as u64, q)?;
    build_standard(p, q).congruent(&change)
}

/// One difference between the computed zero-diagonal E₈ block and
/// [`PRINTED_E8_PRIME`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiscrepancy {
    pub row: usize,
    pub col: usize,
    pub printed: i64,
    pub computed: BigInt,
}

/// Where the printed E₈′ block and the true Gram matrix of the new basis
/// disagree, together with the number of nonzero cross terms between the E₈
/// vectors and the H summand (zero for an actual block decomposition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E8PrimeComparison {
    pub entries: Vec<EntryDiscrepancy>,
    pub printed_symmetric: bool,
    pub cross_terms: usize,
}

pub fn compare_printed_e8_prime() -> E8PrimeComparison {
    let model = zero_diagonal_model(1, 1).expect("q = 1");
    let g = model.matrix();
    let mut entries = Vec::new();
    for (i, row) in PRINTED_E8_PRIME.iter().enumerate() {
        for (j, &printed) in row.iter().enumerate() {
            if g[(i, j)] != BigInt::from(printed) {
                entries.push(EntryDiscrepancy {
                    row: i,
                    col: j,
                    printed,
                    computed: g[(i, j)].clone(),
                });
            }
        }
    }
    let printed = IntMatrix::from_i64(&PRINTED_E8_PRIME);
    let cross_terms = (0..8)
        .flat_map(|i| (8..10).map(move |j| (i, j)))
        .filter(|&(i, j)| !g[(i, j)].is_zero())
        .count();
    E8PrimeComparison {
        entries,
        printed_symmetric: printed.is_symmetric(),
        cross_terms,
    }
}

/// Adds a preferred zeroth basis vector pairing to `+1` with every other
/// vector: row 0 is all ones, column 0 is `ε` times that, diagonal stays 0.
pub fn tilde_extend(a: &BilinearForm) -> Result<BilinearForm> {
    if let Some(i) = a.first_nonzero_diagonal() {
        return Err(Error::NonzeroDiagonal(i));
    }
    let d = a.rank();
    let mut m = IntMatrix::zeros(d + 1, d + 1);
    let eps_one = a.epsilon().apply(&BigInt::one());
    for j in 1..=d {
        m[(0, j)] = BigInt::one();
        m[(j, 0)] = eps_one.clone();
        for k in 1..=d {
            m[(j, k)] = a.matrix()[(j - 1, k - 1)].clone();
        }
    }
    Ok(BilinearForm {
        matrix: m,
        epsilon: a.epsilon(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
    Unknown,
}

/// Invariant-based equivalence decision over ℤ. No congruence matrix is
/// searched for; definite forms with matching invariants are `Unknown`.
pub fn decide_equivalent(f: &BilinearForm, g: &BilinearForm) -> Result<Equivalence> {
    if f.epsilon() != g.epsilon() {
        return Ok(Equivalence::Inequivalent);
    }
    if f.rank() != g.rank() {
        return Ok(Equivalence::Inequivalent);
    }
    let (tf, tg) = (form_type(f)?, form_type(g)?);
    if f.epsilon() == Epsilon::Skew {
        // Unimodular skew forms of equal rank are all symplectic.
        return Ok(if tf.unimodular && tg.unimodular {
            Equivalence::Equivalent
        } else if tf.det != tg.det {
            Equivalence::Inequivalent
        } else {
            Equivalence::Unknown
        });
    }
    if tf.det.signum() != tg.det.signum()
        || tf.unimodular != tg.unimodular
        || tf.parity != tg.parity
        || tf.inertia != tg.inertia
    {
        return Ok(Equivalence::Inequivalent);
    }
    if tf.unimodular && tf.definiteness == Definiteness::Indefinite {
        // Indefinite unimodular forms are determined by rank, signature and
        // parity (even: pE₈ ⊕ qH; odd: diagonal ±1).
        return Ok(Equivalence::Equivalent);
    }
    if tf.det != tg.det {
        return Ok(Equivalence::Inequivalent);
    }
    Ok(Equivalence::Unknown)
}
