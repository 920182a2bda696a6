//! Generalized Hopf links described by their matrix data.
//!
//! A link `K_A ⊂ S^{2n-1}` is determined by a zero-diagonal `(-1)^n`-symmetric
//! matrix `A`. Components are indexed `0..=d`, component 0 being the
//! preferred one.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{inverse_unimodular, smith_normal_form, IntMatrix, SmithForm};
use crate::forms::{BilinearForm, Epsilon};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HopfLinkSpec {
    form: BilinearForm,
    n: u32,
    k: u32,
    theta: u32,
}

impl HopfLinkSpec {
    pub fn new(form: BilinearForm, n: u32, k: u32, theta: u32) -> Result<Self> {
        if form.rank() == 0 {
            return Err(Error::Parameter("link matrix must have d >= 1".into()));
        }
        if n < 2 {
            return Err(Error::Parameter(format!("n must be at least 2, got {n}")));
        }
        if let Some(i) = form.first_nonzero_diagonal() {
            return Err(Error::NonzeroDiagonal(i));
        }
        let expected = Epsilon::for_dimension(n);
        if form.epsilon() != expected {
            return Err(Error::Parameter(format!(
                "n = {n} needs a {}-symmetric matrix",
                if expected == Epsilon::Symmetric {
                    ""
                } else {
                    "skew"
                }
            )));
        }
        if k >= n {
            return Err(Error::Parameter(format!(
                "projection count k = {k} must be at most n - 1 = {}",
                n - 1
            )));
        }
        if theta == 0 {
            return Err(Error::Parameter("theta must be positive".into()));
        }
        Ok(HopfLinkSpec { form, n, k, theta })
    }

    /// Builds the form from a raw matrix with symmetry sign `(-1)^n`.
    pub fn from_matrix(matrix: IntMatrix, n: u32, k: u32, theta: u32) -> Result<Self> {
        let form = BilinearForm::new(matrix, Epsilon::for_dimension(n))?;
        Self::new(form, n, k, theta)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.form.matrix()
    }

    pub fn d(&self) -> usize {
        self.form.rank()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    pub fn epsilon(&self) -> Epsilon {
        self.form.epsilon()
    }

    /// Number of link components: `d + 1` for `k = 0`, one (connected) for
    /// `k >= 1`.
    pub fn components(&self) -> usize {
        if self.k == 0 {
            self.d() + 1
        } else {
            1
        }
    }
}

/// Rational Betti numbers of a compact manifold (possibly with boundary).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberDescriptor {
    pub betti: Vec<u64>,
    pub dim: usize,
    pub boundary_components: usize,
    pub euler: i64,
    pub name: String,
}

impl FiberDescriptor {
    /// `betti[i]` for `i = 0..=dim`; missing top entries are zero.
    pub fn new(dim: usize, betti: Vec<u64>, boundary_components: usize) -> Result<Self> {
        if betti.len() > dim + 1 {
            return Err(Error::Dimension(format!(
                "{} Betti numbers for a {dim}-manifold",
                betti.len()
            )));
        }
        let mut b = betti;
        b.resize(dim + 1, 0);
        let euler = euler_of(&b);
        Ok(FiberDescriptor {
            betti: b,
            dim,
            boundary_components,
            euler,
            name: String::new(),
        })
    }

    /// Adds up `(degree, rank)` contributions; coincident degrees coalesce.
    pub fn from_ranks(dim: usize, ranks: &[(usize, u64)], boundary_components: usize) -> Self {
        let mut b = vec![0; dim + 1];
        for &(i, r) in ranks {
            b[i] += r;
        }
        Self::new(dim, b, boundary_components).expect("length fixed above")
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn disk(dim: usize) -> Self {
        Self::from_ranks(dim, &[(0, 1)], 1).named(format!("D^{dim}"))
    }

    pub fn sphere(dim: usize) -> Self {
        Self::from_ranks(dim, &[(0, 1), (dim, 1)], 0).named(format!("S^{dim}"))
    }

    pub fn is_disk(&self) -> bool {
        self.boundary_components == 1
            && self.betti[0] == 1
            && self.betti[1..].iter().all(|&b| b == 0)
    }

    pub fn betti_at(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn consistent(&self) -> bool {
        self.betti.len() == self.dim + 1 && self.euler == euler_of(&self.betti)
    }
}

fn euler_of(b: &[u64]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

impl fmt::Display for FiberDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.name.is_empty() {
            "M"
        } else {
            &self.name
        };
        write!(
            f,
            "{name} (dim {}, betti {:?}, chi {}, {} boundary components)",
            self.dim, self.betti, self.euler, self.boundary_components
        )
    }
}

/// Linking matrix `A*` of `K_A` in the canonical framing, indexed `0..=d`.
///
/// The `1..=d` block is `A⁻¹`; row 0 holds minus the column sums of `A⁻¹`;
/// the corner is the total sum of `A⁻¹`; column 0 follows by ε-symmetry.
pub fn derived_linking_matrix(l: &HopfLinkSpec) -> Result<IntMatrix> {
    let inv = inverse_unimodular(l.matrix())?;
    let d = l.d();
    let eps = l.epsilon();
    let mut out = IntMatrix::zeros(d + 1, d + 1);
    let mut total = BigInt::zero();
    for j in 0..d {
        let col_sum: BigInt = (0..d).map(|k| &inv[(k, j)]).sum();
        total += &col_sum;
        out[(0, j + 1)] = -&col_sum;
        out[(j + 1, 0)] = eps.apply(&-col_sum);
        for i in 0..d {
            out[(i + 1, j + 1)] = inv[(i, j)].clone();
        }
    }
    out[(0, 0)] = total;
    Ok(out)
}

/// Relation matrix for `H_{n-1}(X_s)`, where `X_s` fills every boundary
/// component except `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub s: usize,
    /// One row per relation, one column per generator.
    pub relations: IntMatrix,
    pub generators: Vec<String>,
    /// Class of `K_j` (of `K_s^♯` when `j = s`) in generator coordinates.
    pub component_classes: Vec<Vec<BigInt>>,
}

pub fn presentation_matrix(l: &HopfLinkSpec, s: usize) -> Result<Presentation> {
    let d = l.d();
    if s > d {
        return Err(Error::ComponentIndex { index: s, max: d });
    }
    let a = l.matrix();
    let mu = |j: usize| j;
    // δ generators follow the d + 1 meridians
    let deltas: Vec<usize> = (0..=d).filter(|&i| i != s).collect();
    let delta = |i: usize| d + 1 + deltas.iter().position(|&x| x == i).expect("delta index");
    let ngen = d + 1 + deltas.len();

    let mut generators: Vec<String> = (0..=d).map(|j| format!("mu{j}")).collect();
    generators.extend(deltas.iter().map(|i| format!("delta{i}")));

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let blank = || vec![BigInt::zero(); ngen];
    if s != 0 {
        let mut r = blank();
        r[delta(0)] = BigInt::one();
        for j in 1..=d {
            r[mu(j)] = BigInt::one();
        }
        rows.push(r);
        for i in (1..=d).filter(|&i| i != s) {
            let mut r = blank();
            r[mu(i)] = BigInt::one();
            r[delta(i)] = -BigInt::one();
            rows.push(r);
        }
        let mut r = blank();
        r[mu(0)] = BigInt::one();
        rows.push(r);
        for i in (1..=d).filter(|&i| i != s) {
            let mut r = blank();
            for j in 1..=d {
                r[mu(j)] = a[(i - 1, j - 1)].clone();
            }
            rows.push(r);
        }
    } else {
        for i in 1..=d {
            let mut r = blank();
            r[mu(i)] = BigInt::one();
            r[delta(i)] = -BigInt::one();
            rows.push(r);
        }
        for i in 1..=d {
            let mut r = blank();
            r[mu(0)] = BigInt::one();
            for j in 1..=d {
                r[mu(j)] = a[(i - 1, j - 1)].clone();
            }
            rows.push(r);
        }
    }

    let mut component_classes = Vec::with_capacity(d + 1);
    let mut k0 = blank();
    for j in 1..=d {
        k0[mu(j)] = -BigInt::one();
    }
    component_classes.push(k0);
    for j in 1..=d {
        let mut c = blank();
        c[mu(j)] = BigInt::one();
        component_classes.push(c);
    }

    Ok(Presentation {
        s,
        relations: IntMatrix::from_rows(rows)?,
        generators,
        component_classes,
    })
}

/// Cokernel of a presentation together with the linking numbers it yields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub s: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// `lk(K_j, K_s)` for `j != s` and `lk(K_s^♯, K_s)` at `j = s`, under
    /// one of the two isomorphisms of the cokernel with ℤ.
    pub linking_vector: Vec<BigInt>,
}

/// Computes the linking column for component `s` from the homology
/// presentation alone, using Smith normal form to find the cokernel.
pub fn presentation_oracle(l: &HopfLinkSpec, s: usize) -> Result<OracleResult> {
    presentation_oracle_with(l, s, smith_normal_form)
}

/// As [`presentation_oracle`], with a caller-supplied Smith form routine
/// (for memoization).
pub fn presentation_oracle_with<F>(l: &HopfLinkSpec, s: usize, snf: F) -> Result<OracleResult>
where
    F: FnOnce(&IntMatrix) -> SmithForm,
{
    let p = presentation_matrix(l, s)?;
    let smith = snf(&p.relations);
    let ngen = p.generators.len();
    let rank = smith.rank();
    let free_rank = ngen - rank;
    let torsion = smith.torsion();
    if free_rank != 1 || !torsion.is_empty() {
        return Err(Error::CokernelNotZ {
            free_rank,
            factors: torsion.iter().map(ToString::to_string).collect(),
        });
    }
    // Row vectors x map to x·V; the relations span the first `rank`
    // coordinates, so the last coordinate is the projection to ℤ.
    let free = ngen - 1;
    let linking_vector = p
        .component_classes
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .map(|(i, x)| x * &smith.v[(i, free)])
                .sum()
        })
        .collect();
    Ok(OracleResult {
        s,
        free_rank,
        torsion,
        linking_vector,
    })
}

/// `Some(±1)` if `a = sign · b`; zero vectors match with sign `+1`.
pub fn matches_up_to_sign(a: &[BigInt], b: &[BigInt]) -> Option<i32> {
    if a.len() != b.len() {
        return None;
    }
    if a == b {
        return Some(1);
    }
    if a.iter().zip(b).all(|(x, y)| *x == -y) {
        return Some(-1);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackedConstruction {
    pub summands: usize,
    pub matrix_dim: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub det: BigInt,
    pub unimodular: bool,
    /// Only meaningful for skew forms.
    pub skew_size_even: Option<bool>,
    pub admissible: bool,
    pub directly_fibered: bool,
    /// `A ⊕ (−A)`, offered for `n > 3`.
    pub doubling: Option<StackedConstruction>,
    /// `⊕_θ A`, offered for `n > 3`.
    pub theta_sum: Option<StackedConstruction>,
    pub notes: Vec<String>,
}

pub fn admissibility_check(l: &HopfLinkSpec) -> AdmissibilityReport {
    let det = l.form().det();
    let unimodular = det.abs().is_one();
    let d = l.d();
    let skew_size_even = (l.epsilon() == Epsilon::Skew).then_some(d.is_multiple_of(2));
    let admissible = unimodular && skew_size_even != Some(false);
    let mut notes = Vec::new();
    if !unimodular {
        notes.push(format!(
            "det A = {det}: the surgered manifold is not a homotopy sphere"
        ));
    }
    if skew_size_even == Some(false) {
        notes.push(format!("skew matrix of odd size {d} is singular"));
    }
    let directly_fibered = admissible && l.n() == 3;
    if directly_fibered {
        notes.push("n = 3: K_A is a fibered link in S^5".into());
    }
    let (doubling, theta_sum) = if admissible && l.n() > 3 {
        let doubled = StackedConstruction {
            summands: 2,
            matrix_dim: 2 * d,
            components: 2 * d + 1,
        };
        notes.push(format!(
            "n > 3: A + (-A) gives a fibered link with {} components ({} mod 4)",
            doubled.components,
            doubled.components % 4
        ));
        let t = l.theta() as usize;
        let stacked = StackedConstruction {
            summands: t,
            matrix_dim: t * d,
            components: t * d + 1,
        };
        notes.push(format!(
            "n > 3: theta = {t} copies of A give a fibered link with {} components",
            stacked.components
        ));
        (Some(doubled), Some(stacked))
    } else {
        (None, None)
    };
    AdmissibilityReport {
        det,
        unimodular,
        skew_size_even,
        admissible,
        directly_fibered,
        doubling,
        theta_sum,
        notes,
    }
}

/// Local fiber and link after `k` projections of a link with `d + 1`
/// components in `S^{2n-1}`.
pub fn projected_descriptors(
    d: usize,
    n: u32,
    k: u32,
) -> Result<(FiberDescriptor, FiberDescriptor)> {
    if k >= n {
        return Err(Error::Parameter(format!(
            "projection count k = {k} must be below n = {n}"
        )));
    }
    let n = n as usize;
    let k = k as usize;
    let du = d as u64;
    if k == 0 {
        let fiber = FiberDescriptor::from_ranks(n, &[(0, 1), (n - 1, du)], d + 1)
            .named(format!("D^{n} minus {d} disks"));
        let link = FiberDescriptor::from_ranks(n - 1, &[(0, du + 1), (n - 1, du + 1)], 0)
            .named(format!("{} copies of S^{}", d + 1, n - 1));
        Ok((fiber, link))
    } else {
        let fiber = FiberDescriptor::from_ranks(n + k, &[(0, 1), (n - 1, du)], 1).named(format!(
            "#b_{d} S^{}xD^{}",
            n - 1,
            k + 1
        ));
        let link = FiberDescriptor::from_ranks(
            n + k - 1,
            &[(0, 1), (k, du), (n - 1, du), (n + k - 1, 1)],
            0,
        )
        .named(format!("#_{d} S^{}xS^{k}", n - 1));
        Ok((fiber, link))
    }
}

pub fn project_link_descriptor(l: &HopfLinkSpec) -> Result<(FiberDescriptor, FiberDescriptor)> {
    projected_descriptors(l.d(), l.n(), l.k())
}

/// A link component `(S¹)^t × S^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkComponent {
    pub torus_factors: u32,
    pub sphere_dim: u32,
}

impl fmt::Display for LinkComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.torus_factors {
            0 => write!(f, "S^{}", self.sphere_dim),
            1 => write!(f, "S^1xS^{}", self.sphere_dim),
            t => write!(f, "(S^1)^{t}xS^{}", self.sphere_dim),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinDescriptor {
    pub spun: usize,
    pub times: u32,
    pub fiber: FiberDescriptor,
    /// Indexed like the original components; the spun one comes out as a
    /// sphere.
    pub components: Vec<LinkComponent>,
}

pub fn spin_link_descriptor(l: &HopfLinkSpec, i: usize) -> Result<SpinDescriptor> {
    spin_link_descriptor_iterated(l, i, 1)
}

/// Spins the link `times` times about the same component.
///
/// The fiber is `S^{n+t}` minus a ball and `d` copies of `(S¹)^t × D^n`;
/// Alexander duality puts `d·C(t, j)` in degree `n + t − 1 − j`.
pub fn spin_link_descriptor_iterated(
    l: &HopfLinkSpec,
    i: usize,
    times: u32,
) -> Result<SpinDescriptor> {
    if l.k() != 0 {
        return Err(Error::Unsupported(
            "spinning applies to links with sphere components (k = 0)".into(),
        ));
    }
    if times == 0 {
        return Err(Error::Parameter("spin at least once".into()));
    }
    let d = l.d();
    if i > d {
        return Err(Error::ComponentIndex { index: i, max: d });
    }
    let n = l.n();
    let dim = (n + times) as usize;
    let mut ranks = vec![(0, 1)];
    let mut binom: u64 = 1;
    for j in 0..=times as usize {
        ranks.push((dim - 1 - j, d as u64 * binom));
        binom = binom * (times as u64 - j as u64) / (j as u64 + 1);
    }
    let fiber = FiberDescriptor::from_ranks(dim, &ranks, d + 1).named(format!(
        "S^{dim} minus D^{dim} and {d} copies of {}",
        LinkComponent {
            torus_factors: times,
            sphere_dim: n
        }
        .to_string()
        .replace(&format!("S^{n}"), &format!("D^{n}"))
    ));
    let components = (0..=d)
        .map(|j| {
            if j == i {
                LinkComponent {
                    torus_factors: 0,
                    sphere_dim: n - 1 + times,
                }
            } else {
                LinkComponent {
                    torus_factors: times,
                    sphere_dim: n - 1,
                }
            }
        })
        .collect();
    Ok(SpinDescriptor {
        spun: i,
        times,
        fiber,
        components,
    })
}
