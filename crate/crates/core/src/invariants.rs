//! Cup-product forms of assembled blocks and the invariants derived from
//! them: signature, kernel, Euler characteristic, homology ranks and bounds
//! on the number of critical points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlinalg::{inertia_checked, inverse_unimodular, nullspace_rational, IntMatrix};
use crate::forms::{BilinearForm, Epsilon};
use crate::graphmodel::{
    assemble_global_fiber, graph_counts, validate_graph, DecoratedGraph, GraphCounts, Vertex,
};
use crate::hopflink::{derived_linking_matrix, FiberDescriptor, HopfLinkSpec};
use crate::Inertia;

/// Cup-product form on the edge classes of a family of `k = 0` graphs.
///
/// Edges are numbered graph by graph in input order. The `(e, f)` entry sums
/// `A*_v[c][c']` over every pair of ends of `e` and `f` meeting at the same
/// black vertex `v`, with `c`, `c'` the components used by those ends.
pub fn assemble_cup_form(graphs: &[DecoratedGraph]) -> Result<BilinearForm> {
    let eps = family_epsilon(graphs)?;
    let total: usize = graphs.iter().map(|g| g.edges.len()).sum();
    let mut out = IntMatrix::zeros(total, total);
    let mut offset = 0;
    for (gi, g) in graphs.iter().enumerate() {
        if g.k() != Some(0) {
            return Err(Error::UnsupportedShape(format!(
                "graph {gi}: edge cup form needs k = 0"
            )));
        }
        for (v, vert) in g.vertices.iter().enumerate() {
            let Vertex::Black { link } = vert else {
                continue;
            };
            let astar = derived_linking_matrix(link)?;
            let ends = g.incidences(v);
            for &(e, c) in &ends {
                for &(f, c2) in &ends {
                    out[(offset + e, offset + f)] += &astar[(c, c2)];
                }
            }
        }
        offset += g.edges.len();
    }
    BilinearForm::new(out, eps)
}

fn family_epsilon(graphs: &[DecoratedGraph]) -> Result<Epsilon> {
    let mut eps = None;
    for (i, g) in graphs.iter().enumerate() {
        let e = g
            .epsilon()
            .ok_or_else(|| Error::Parameter(format!("graph {i} has no black vertex")))?;
        if eps.is_some_and(|x| x != e) {
            return Err(Error::Parameter(
                "graphs mix symmetric and skew links".into(),
            ));
        }
        eps = Some(e);
    }
    eps.ok_or_else(|| Error::Parameter("empty graph family".into()))
}

/// The two graph shapes with `k >= 1` that carry a computable cup form.
#[derive(Debug, Clone, Copy)]
pub enum KShape<'a> {
    TwoBlack(&'a HopfLinkSpec, &'a HopfLinkSpec),
    BlackWhite(&'a HopfLinkSpec, &'a FiberDescriptor),
}

impl KShape<'_> {
    pub fn of_graph(g: &DecoratedGraph) -> Result<KShape<'_>> {
        if g.vertices.len() != 2 || g.edges.len() != 1 {
            return Err(Error::UnsupportedShape(format!(
                "{} vertices and {} edges; expected a single edge",
                g.vertices.len(),
                g.edges.len()
            )));
        }
        match (&g.vertices[0], &g.vertices[1]) {
            (Vertex::Black { link: v }, Vertex::Black { link: w }) => Ok(KShape::TwoBlack(v, w)),
            (Vertex::Black { link }, Vertex::White { fiber })
            | (Vertex::White { fiber }, Vertex::Black { link }) => {
                Ok(KShape::BlackWhite(link, fiber))
            }
            _ => Err(Error::UnsupportedShape("no black vertex".into())),
        }
    }
}

/// Cup-product form on the `d` handle classes of a `k >= 1` block, using
/// `A_v⁻¹` for each black vertex.
pub fn assemble_cup_form_k(shape: KShape<'_>) -> Result<BilinearForm> {
    match shape {
        KShape::TwoBlack(v, w) => {
            if v.d() != w.d() || v.epsilon() != w.epsilon() {
                return Err(Error::UnsupportedShape(format!(
                    "black vertices of sizes {} and {} cannot share handles",
                    v.d(),
                    w.d()
                )));
            }
            let sum =
                inverse_unimodular(v.matrix())?.checked_add(&inverse_unimodular(w.matrix())?)?;
            BilinearForm::new(sum, v.epsilon())
        }
        KShape::BlackWhite(v, _) => BilinearForm::new(inverse_unimodular(v.matrix())?, v.epsilon()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupAnalysis {
    /// `None` for skew forms.
    pub inertia: Option<Inertia>,
    pub sigma: i64,
    pub kernel_basis: Vec<Vec<BigRational>>,
    pub kernel_integer_basis: Vec<Vec<BigInt>>,
}

impl CupAnalysis {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

pub fn analyze_cup_form(f: &BilinearForm) -> Result<CupAnalysis> {
    let inertia = match f.epsilon() {
        Epsilon::Symmetric => Some(inertia_checked(f.matrix())?),
        Epsilon::Skew => None,
    };
    let ns = nullspace_rational(f.matrix());
    if let Some(i) = inertia {
        if i.n_zero != ns.dim() {
            return Err(Error::InertiaMismatch {
                ldlt: i.to_string(),
                charpoly: format!("nullspace dimension {}", ns.dim()),
            });
        }
    }
    Ok(CupAnalysis {
        sigma: inertia.map_or(0, |i| i.signature()),
        inertia,
        kernel_basis: ns.basis,
        kernel_integer_basis: ns.integer_basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerBreakdown {
    pub chi: i64,
    pub chi_base: i64,
    pub chi_fiber: i64,
    pub t: usize,
    pub g: usize,
    pub n: u32,
    pub k: u32,
}

/// `χ(S^{n-k})·χ(F) + (−1)^n·t`, with `t` summed over the family.
pub fn euler_characteristic(graphs: &[DecoratedGraph]) -> Result<EulerBreakdown> {
    let (n, k) = family_dims(graphs)?;
    let mut t = 0;
    let mut common: Option<(usize, i64)> = None;
    for (i, g) in graphs.iter().enumerate() {
        let counts = graph_counts(g);
        let fiber = assemble_global_fiber(g)?;
        t += counts.t;
        match common {
            None => common = Some((counts.g, fiber.chi)),
            Some((g0, chi0)) => {
                if g0 != counts.g {
                    return Err(Error::Parameter(format!(
                        "graph {i} has first Betti number {} but graph 0 has {g0}",
                        counts.g
                    )));
                }
                if chi0 != fiber.chi {
                    return Err(Error::Parameter(format!(
                        "graph {i} has fiber Euler characteristic {} but graph 0 has {chi0}",
                        fiber.chi
                    )));
                }
            }
        }
    }
    let (g, chi_fiber) = common.expect("family is nonempty");
    let chi_base = sphere_euler(n - k);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(EulerBreakdown {
        chi: chi_base * chi_fiber + sign * t as i64,
        chi_base,
        chi_fiber,
        t,
        g,
        n,
        k,
    })
}

fn sphere_euler(dim: u32) -> i64 {
    if dim.is_multiple_of(2) {
        2
    } else {
        0
    }
}

fn family_dims(graphs: &[DecoratedGraph]) -> Result<(u32, u32)> {
    let mut dims = None;
    for (i, g) in graphs.iter().enumerate() {
        let d = g
            .n()
            .zip(g.k())
            .ok_or_else(|| Error::Parameter(format!("graph {i} has no black vertex")))?;
        if dims.is_some_and(|x| x != d) {
            return Err(Error::Parameter(format!(
                "graph {i} has (n, k) = {d:?}, differing from graph 0"
            )));
        }
        dims = Some(d);
    }
    dims.ok_or_else(|| Error::Parameter("empty graph family".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    EvenK0,
    EvenKPos,
    OddK0,
    OddKPos,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "even-k0" => Some(Family::EvenK0),
            "even-kpos" => Some(Family::EvenKPos),
            "odd-k0" => Some(Family::OddK0),
            "odd-kpos" => Some(Family::OddKPos),
            _ => None,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Family::OddK0 | Family::OddKPos)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::EvenK0 => "even-k0",
            Family::EvenKPos => "even-kpos",
            Family::OddK0 => "odd-k0",
            Family::OddKPos => "odd-kpos",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub family: Family,
    pub dim: usize,
    /// `ranks[i]` is the rank of `H_i`, `i = 0..=dim`.
    pub ranks: Vec<u64>,
}

impl HomologyTable {
    pub fn rank(&self, i: usize) -> u64 {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Integral homology ranks of the closed manifolds built from the canonical
/// one-black-vertex graphs.
pub fn canonical_homology_ranks(family: Family, n: u32, k: u32, d: usize) -> Result<HomologyTable> {
    if n < 3 {
        return Err(Error::Parameter(format!("n = {n} is below 3")));
    }
    match family {
        Family::EvenK0 | Family::OddK0 => {
            if k != 0 {
                return Err(Error::Parameter(format!("{family} needs k = 0, got {k}")));
            }
            if d < 1 {
                return Err(Error::Parameter(format!("{family} needs d >= 1")));
            }
        }
        Family::EvenKPos | Family::OddKPos => {
            if k < 1 || k > n - 2 {
                return Err(Error::Parameter(format!(
                    "{family} needs 1 <= k <= n - 2 = {}, got {k}",
                    n - 2
                )));
            }
            if d < 4 {
                return Err(Error::Parameter(format!(
                    "{family} needs at least 5 link components, got d + 1 = {}",
                    d + 1
                )));
            }
        }
    }
    let (n, k, d) = (n as usize, k as usize, d as u64);
    let dim = if family.is_odd() { 2 * n + 1 } else { 2 * n };
    let mut ranks = vec![0u64; dim + 1];
    ranks[0] = 1;
    ranks[dim] = 1;
    match family {
        Family::EvenK0 => ranks[n] = d + 2,
        Family::EvenKPos => {
            ranks[n - k] = 1;
            ranks[n + k] = 1;
            ranks[n] = d;
        }
        Family::OddK0 => {
            ranks[n] = d + 1;
            ranks[n + 1] = d + 1;
        }
        Family::OddKPos => {
            ranks[n - k] = 1;
            ranks[n + k + 1] = 1;
            ranks[n] = d;
            ranks[n + 1] = d;
        }
    }
    Ok(HomologyTable { family, dim, ranks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBounds {
    pub lower: u64,
    pub upper: u64,
    pub notes: Vec<String>,
}

/// The canonical even-dimensional family a single graph belongs to, if any.
pub fn canonical_family(graphs: &[DecoratedGraph]) -> Option<(Family, usize)> {
    let [g] = graphs else {
        return None;
    };
    let counts = graph_counts(g);
    if counts.s_black != 1 || counts.g != 0 {
        return None;
    }
    let (_, link) = g.black_links().next()?;
    let whites = g.vertices.iter().filter_map(|v| match v {
        Vertex::White { fiber } => Some(fiber),
        Vertex::Black { .. } => None,
    });
    if link.k() == 0 {
        let all_disks = whites.into_iter().all(FiberDescriptor::is_disk);
        return (all_disks && link.n() >= 3).then_some((Family::EvenK0, link.d()));
    }
    let (n, k, d) = (link.n(), link.k(), link.d());
    let white: Vec<&FiberDescriptor> = whites.collect();
    let expected =
        FiberDescriptor::from_ranks((n + k) as usize, &[(0, 1), (k as usize, d as u64)], 1);
    let ok = n >= 3
        && k <= n - 2
        && d >= 4
        && white.len() == 1
        && white[0].betti == expected.betti
        && white[0].boundary_components == 1;
    ok.then_some((Family::EvenKPos, d))
}

/// Bounds on `φ(M, S^{n-k})` for the closed manifold assembled from the
/// family. `sigma` is the signature of the assembled cup form.
pub fn phi_bounds(
    graphs: &[DecoratedGraph],
    assume_cobounding: bool,
    sigma: i64,
) -> Result<PhiBounds> {
    if !assume_cobounding {
        return Err(Error::Parameter(
            "boundary fibrations must be assumed to cobound (set assume_cobounding)".into(),
        ));
    }
    let (n, k) = family_dims(graphs)?;
    let s: u64 = graphs.iter().map(|g| graph_counts(g).s_black as u64).sum();
    if let Some((family, d)) = canonical_family(graphs) {
        return Ok(PhiBounds {
            lower: 1,
            upper: 1,
            notes: vec![format!(
                "canonical {family} graph with d = {d}: one critical point suffices and the homology rules out a fibration"
            )],
        });
    }
    let mut notes = vec![format!(
        "upper bound: one critical point per black vertex (s = {s})"
    )];
    let lower = if (n - k) % 2 == 1 {
        notes.push(format!(
            "n - k = {} odd: chi != 0 rules out a fibration",
            n - k
        ));
        1
    } else if s % 2 == 1 {
        notes.push("n - k even and s odd: chi is odd, ruling out a fibration".into());
        1
    } else if sigma != 0 {
        notes.push(format!("signature {sigma} != 0 rules out a fibration"));
        1
    } else {
        notes.push("no obstruction certified".into());
        0
    };
    Ok(PhiBounds {
        lower,
        upper: s,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductFactor {
    /// `S⁴`.
    S4,
    /// `♯_r S² × S²`, `r >= 1`.
    ConnSum(u32),
}

impl ProductFactor {
    pub fn parse(s: &str) -> Option<ProductFactor> {
        if s == "S4" {
            return Some(ProductFactor::S4);
        }
        let r: u32 = s.strip_prefix("connsum_")?.parse().ok()?;
        (r >= 1).then_some(ProductFactor::ConnSum(r))
    }

    /// Known `φ(·, S³)`; equal to the Euler characteristic for these factors.
    pub fn phi(self) -> u64 {
        match self {
            ProductFactor::S4 => 2,
            ProductFactor::ConnSum(r) => 2 * r as u64 + 2,
        }
    }

    pub fn euler(self) -> u64 {
        self.phi()
    }
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductFactor::S4 => f.write_str("S4"),
            ProductFactor::ConnSum(r) => write!(f, "connsum_{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBound {
    pub lower: u64,
    pub upper: BigInt,
    pub chi: BigInt,
}

/// Bounds on `φ(M₁ × … × M_m, S³)`: the upper bound is multiplicative and
/// the lower bound comes from `χ != 0`.
pub fn product_phi_bound(factors: &[ProductFactor]) -> Result<ProductBound> {
    if factors.is_empty() {
        return Err(Error::Parameter("empty product".into()));
    }
    let upper: BigInt = factors.iter().map(|f| BigInt::from(f.phi())).product();
    let chi: BigInt = factors.iter().map(|f| BigInt::from(f.euler())).product();
    Ok(ProductBound {
        lower: 1,
        upper,
        chi,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
/// For obstructions (`euler`, `signature`) `holds` means the obstruction
/// applies; for consistency checks (`additivity`, `homology-euler`) it means
/// the check passed; `parity` is informational.
pub struct Verdict {
    pub criterion: String,
    pub holds: bool,
    pub statement: String,
}

/// Where the cup form of a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CupSource {
    Edges,
    /// `k >= 1` shapes, built from the `1..=d` block of `A*` (that is, `A⁻¹`).
    InverseBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: u32,
    pub k: u32,
    pub counts: Vec<GraphCounts>,
    pub s_black: usize,
    pub euler: EulerBreakdown,
    pub cup_source: CupSource,
    pub cup_form: BilinearForm,
    pub analysis: CupAnalysis,
    /// Signatures of the individual blocks; they add up to `sigma`.
    pub block_sigmas: Vec<i64>,
    pub homology: Option<HomologyTable>,
    /// Absent unless cobounding of the boundary fibrations is assumed.
    pub phi: Option<PhiBounds>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn chi(&self) -> i64 {
        self.euler.chi
    }

    pub fn sigma(&self) -> i64 {
        self.analysis.sigma
    }

    pub fn kernel_dim(&self) -> usize {
        self.analysis.kernel_dim()
    }
}

fn block_form(g: &DecoratedGraph) -> Result<(BilinearForm, CupSource)> {
    if g.k() == Some(0) {
        Ok((
            assemble_cup_form(std::slice::from_ref(g))?,
            CupSource::Edges,
        ))
    } else {
        Ok((
            assemble_cup_form_k(KShape::of_graph(g)?)?,
            CupSource::InverseBlock,
        ))
    }
}

/// Runs the full pipeline on a validated family.
pub fn build_report(graphs: &[DecoratedGraph], assume_cobounding: bool) -> Result<InvariantReport> {
    for g in graphs {
        validate_graph(g)?;
    }
    let (n, k) = family_dims(graphs)?;
    let euler = euler_characteristic(graphs)?;
    let counts: Vec<GraphCounts> = graphs.iter().map(graph_counts).collect();
    let s_black = counts.iter().map(|c| c.s_black).sum();

    let mut cup: Option<BilinearForm> = None;
    let mut cup_source = CupSource::Edges;
    let mut block_sigmas = Vec::with_capacity(graphs.len());
    for g in graphs {
        let (f, src) = block_form(g)?;
        cup_source = src;
        block_sigmas.push(analyze_cup_form(&f)?.sigma);
        cup = Some(match cup {
            None => f,
            Some(acc) => acc.direct_sum(&f)?,
        });
    }
    let cup_form = cup.expect("family is nonempty");
    let analysis = analyze_cup_form(&cup_form)?;
    let sigma = analysis.sigma;

    let mut notes = Vec::new();
    if cup_source == CupSource::InverseBlock {
        notes.push("k >= 1: the cup form uses the 1..d block of A*, i.e. A^-1".into());
    }
    let family = canonical_family(graphs);
    let homology = match family {
        Some((f, d)) => Some(canonical_homology_ranks(f, n, k, d)?),
        None => None,
    };
    let phi = if assume_cobounding {
        Some(phi_bounds(graphs, true, sigma)?)
    } else {
        notes.push("phi bounds need assume_cobounding".into());
        None
    };

    let mut verdicts = Vec::new();
    let chi = euler.chi;
    if (n - k) % 2 == 1 {
        verdicts.push(Verdict {
            criterion: "euler".into(),
            holds: chi != 0,
            statement: format!("chi = {chi}; a fibration over S^{} forces chi = 0", n - k),
        });
    } else {
        verdicts.push(Verdict {
            criterion: "euler".into(),
            holds: chi % 2 != 0,
            statement: format!(
                "chi = {chi}; a fibration over S^{} forces chi = 2 chi(F), which is even",
                n - k
            ),
        });
    }
    verdicts.push(Verdict {
        criterion: "signature".into(),
        holds: sigma != 0,
        statement: format!("sigma = {sigma}; a fibration over a sphere forces sigma = 0"),
    });
    let block_sum: i64 = block_sigmas.iter().sum();
    verdicts.push(Verdict {
        criterion: "additivity".into(),
        holds: block_sum == sigma,
        statement: format!("sigma(M) = {sigma}, sum of block signatures = {block_sum}"),
    });
    if let Some(h) = &homology {
        verdicts.push(Verdict {
            criterion: "homology-euler".into(),
            holds: h.euler() == chi,
            statement: format!(
                "alternating sum of the {} ranks = {}, chi = {chi}",
                h.family,
                h.euler()
            ),
        });
    }
    if n % 2 == 0 {
        let agree = (sigma - s_black as i64).rem_euclid(2) == 0;
        verdicts.push(Verdict {
            criterion: "parity".into(),
            holds: agree,
            statement: format!(
                "sigma = {sigma} and s = {s_black} {} mod 2 (reported, not asserted)",
                if agree { "agree" } else { "disagree" }
            ),
        });
    }

    Ok(InvariantReport {
        n,
        k,
        counts,
        s_black,
        euler,
        cup_source,
        cup_form,
        analysis,
        block_sigmas,
        homology,
        phi,
        verdicts,
        notes,
    })
}

/// True when `v` lies in the kernel of `f`.
pub fn in_kernel(f: &BilinearForm, v: &[BigInt]) -> bool {
    f.matrix()
        .mul_vec(v)
        .map(|w| w.iter().all(Zero::is_zero))
        .unwrap_or(false)
}
