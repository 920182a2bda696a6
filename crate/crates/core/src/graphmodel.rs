//! Decorated bicolored graphs.
//!
//! Black vertices carry fibered links, white vertices carry local fibers.
//! An edge glues one boundary component at each end; `u_comp` and `v_comp`
//! name the component (link component for black, boundary component for
//! white) used at each endpoint.

use crate::error::{Error, Result};
use crate::forms::Epsilon;
use crate::hopflink::{projected_descriptors, FiberDescriptor, HopfLinkSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Vertex {
    Black { link: HopfLinkSpec },
    White { fiber: FiberDescriptor },
}

impl Vertex {
    pub fn is_black(&self) -> bool {
        matches!(self, Vertex::Black { .. })
    }

    pub fn link(&self) -> Option<&HopfLinkSpec> {
        match self {
            Vertex::Black { link } => Some(link),
            Vertex::White { .. } => None,
        }
    }

    /// Number of edge ends the vertex must receive.
    pub fn slots(&self) -> usize {
        match self {
            Vertex::Black { link } => link.components(),
            Vertex::White { fiber } => fiber.boundary_components,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub u_comp: usize,
    pub v_comp: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, u_comp: usize, v_comp: usize) -> Self {
        Edge {
            u,
            v,
            u_comp,
            v_comp,
        }
    }

    pub fn ends(&self) -> [(usize, usize); 2] {
        [(self.u, self.u_comp), (self.v, self.v_comp)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Free-form gluing data (twists, mapping classes). Not used by any
    /// computation.
    pub annotation: Option<String>,
}

impl DecoratedGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        DecoratedGraph {
            vertices,
            edges,
            annotation: None,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    /// `(edge index, component)` for every edge end at `v`; a self-loop
    /// appears twice.
    pub fn incidences(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (w, c) in e.ends() {
                if w == v {
                    out.push((i, c));
                }
            }
        }
        out
    }

    pub fn black_links(&self) -> impl Iterator<Item = (usize, &HopfLinkSpec)> {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.link().map(|l| (i, l)))
    }

    fn first_link(&self) -> Option<&HopfLinkSpec> {
        self.black_links().next().map(|(_, l)| l)
    }

    pub fn n(&self) -> Option<u32> {
        self.first_link().map(HopfLinkSpec::n)
    }

    pub fn k(&self) -> Option<u32> {
        self.first_link().map(HopfLinkSpec::k)
    }

    pub fn epsilon(&self) -> Option<Epsilon> {
        self.first_link().map(HopfLinkSpec::epsilon)
    }

    fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }
}

fn graph_err(locus: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Graph {
        locus: locus.into(),
        reason: reason.into(),
    }
}

/// Checks the structural rules and returns the first violation.
pub fn validate_graph(g: &DecoratedGraph) -> Result<()> {
    if g.vertices.is_empty() {
        return Err(graph_err("graph", "no vertices"));
    }
    let Some(first) = g.first_link() else {
        return Err(graph_err("graph", "no black vertex"));
    };
    let (n, k) = (first.n(), first.k());
    for (i, l) in g.black_links() {
        if (l.n(), l.k()) != (n, k) {
            return Err(graph_err(
                format!("vertex {i}"),
                format!(
                    "link has (n, k) = ({}, {}) but the graph uses ({n}, {k})",
                    l.n(),
                    l.k()
                ),
            ));
        }
    }
    let nv = g.vertices.len();
    for (j, e) in g.edges.iter().enumerate() {
        for (w, c) in e.ends() {
            if w >= nv {
                return Err(graph_err(
                    format!("edge {j}"),
                    format!("endpoint {w} out of range ({nv} vertices)"),
                ));
            }
            let slots = g.vertices[w].slots();
            if c >= slots {
                return Err(graph_err(
                    format!("edge {j}"),
                    format!("component {c} at vertex {w} out of range (vertex has {slots})"),
                ));
            }
        }
    }
    for (i, v) in g.vertices.iter().enumerate() {
        let locus = format!("vertex {i}");
        let deg = g.degree(i);
        if deg == 0 {
            return Err(graph_err(locus, "isolated vertex"));
        }
        if let Vertex::White { fiber } = v {
            if !fiber.consistent() || fiber.betti[0] == 0 {
                return Err(graph_err(locus, "inconsistent fiber descriptor"));
            }
            if fiber.dim != (n + k) as usize {
                return Err(graph_err(
                    locus,
                    format!(
                        "fiber has dimension {} but local fibers have dimension {}",
                        fiber.dim,
                        n + k
                    ),
                ));
            }
        }
        let slots = v.slots();
        if deg != slots {
            let what = if v.is_black() {
                "link components"
            } else {
                "fiber boundary components"
            };
            return Err(graph_err(locus, format!("degree {deg} but {slots} {what}")));
        }
        let mut seen = vec![false; slots];
        for (edge, c) in g.incidences(i) {
            if std::mem::replace(&mut seen[c], true) {
                return Err(graph_err(
                    locus,
                    format!("component {c} used twice (again by edge {edge})"),
                ));
            }
        }
        if let Vertex::Black { link } = v {
            if link.epsilon() == Epsilon::Skew && deg.is_multiple_of(2) {
                return Err(graph_err(
                    locus,
                    format!("skew link at a black vertex of even degree {deg}"),
                ));
            }
        }
    }
    if g.component_count() != 1 {
        return Err(graph_err("graph", "graph is not connected"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphCounts {
    pub m: usize,
    pub s_black: usize,
    pub vertices: usize,
    pub components: usize,
    /// First Betti number of the graph.
    pub g: usize,
    /// Handles contributed by vanishing cycles, `Σ_black d(v)`.
    pub t: usize,
}

pub fn graph_counts(g: &DecoratedGraph) -> GraphCounts {
    let m = g.edges.len();
    let vertices = g.vertices.len();
    let components = g.component_count();
    let s_black = g.black_links().count();
    let t = g.black_links().map(|(_, l)| l.d()).sum();
    GraphCounts {
        m,
        s_black,
        vertices,
        components,
        g: m + components - vertices,
        t,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalFiber {
    pub chi: i64,
    /// Known only for disk-decorated graphs with `k = 0` and for the
    /// black–white shape with `k >= 1`.
    pub descriptor: Option<FiberDescriptor>,
    pub local_chi: i64,
    pub glue_chi: i64,
}

/// Euler characteristic of the generic fiber, glued from the local fibers.
pub fn assemble_global_fiber(g: &DecoratedGraph) -> Result<GlobalFiber> {
    let first = g
        .first_link()
        .ok_or_else(|| graph_err("graph", "no black vertex"))?;
    let (n, k) = (first.n(), first.k());
    let dim = (n + k) as usize;
    let mut local_chi = 0i64;
    let mut black_local = Vec::with_capacity(g.vertices.len());
    for (i, v) in g.vertices.iter().enumerate() {
        let (fiber, glue) = match v {
            Vertex::Black { link } => {
                if (link.n(), link.k()) != (n, k) {
                    return Err(Error::Dimension(format!(
                        "vertex {i} has (n, k) = ({}, {})",
                        link.n(),
                        link.k()
                    )));
                }
                let (f, l) = projected_descriptors(link.d(), n, k)?;
                (f, Some(l))
            }
            Vertex::White { fiber } => (fiber.clone(), None),
        };
        if fiber.dim != dim {
            return Err(Error::Dimension(format!(
                "vertex {i} has a local fiber of dimension {}, expected {dim}",
                fiber.dim
            )));
        }
        local_chi += fiber.euler;
        black_local.push(glue);
    }

    let sphere_chi = FiberDescriptor::sphere(n as usize - 1).euler;
    let mut glue_chi = 0i64;
    for (j, e) in g.edges.iter().enumerate() {
        if k == 0 {
            glue_chi += sphere_chi;
            continue;
        }
        let pieces: Vec<&FiberDescriptor> = [e.u, e.v]
            .iter()
            .filter_map(|&w| black_local.get(w).and_then(Option::as_ref))
            .collect();
        let Some(piece) = pieces.first() else {
            return Err(graph_err(
                format!("edge {j}"),
                "edge joins two white vertices",
            ));
        };
        if pieces.iter().any(|p| p.betti != piece.betti) {
            return Err(Error::Dimension(format!(
                "edge {j} glues links with different homology"
            )));
        }
        glue_chi += piece.euler;
    }
    let chi = local_chi - glue_chi;

    let descriptor = if k == 0 {
        let disks = g.vertices.iter().all(|v| match v {
            Vertex::White { fiber } => fiber.is_disk(),
            Vertex::Black { .. } => true,
        });
        let counts = graph_counts(g);
        (disks && counts.components == 1).then(|| connected_sum_s1(counts.g, n as usize))
    } else {
        black_white_sphere(g, dim)
    };
    if let Some(d) = &descriptor {
        if d.euler != chi {
            return Err(Error::Classification(format!(
                "glued Euler characteristic {chi} disagrees with {}",
                d
            )));
        }
    }
    Ok(GlobalFiber {
        chi,
        descriptor,
        local_chi,
        glue_chi,
    })
}

/// `♯_g S¹ × S^{n-1}` (the sphere `S^n` when `g = 0`).
pub fn connected_sum_s1(g: usize, n: usize) -> FiberDescriptor {
    let gg = g as u64;
    let f = FiberDescriptor::from_ranks(n, &[(0, 1), (1, gg), (n - 1, gg), (n, 1)], 0);
    if g == 0 {
        f.named(format!("S^{n}"))
    } else {
        f.named(format!("#_{g} S^1xS^{}", n - 1))
    }
}

fn black_white_sphere(g: &DecoratedGraph, dim: usize) -> Option<FiberDescriptor> {
    if g.vertices.len() != 2 || g.edges.len() != 1 {
        return None;
    }
    let (link, fiber) = match (&g.vertices[0], &g.vertices[1]) {
        (Vertex::Black { link }, Vertex::White { fiber })
        | (Vertex::White { fiber }, Vertex::Black { link }) => (link, fiber),
        _ => return None,
    };
    let k = link.k() as usize;
    let expected = FiberDescriptor::from_ranks(dim, &[(0, 1), (k, link.d() as u64)], 1);
    (fiber.betti == expected.betti).then(|| FiberDescriptor::sphere(dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::IntMatrix;
    use crate::forms::h;

    fn h_link(n: u32, k: u32) -> HopfLinkSpec {
        HopfLinkSpec::from_matrix(h(), n, k, 1).unwrap()
    }

    fn skew_link(d: usize) -> HopfLinkSpec {
        let mut m = IntMatrix::zeros(d, d);
        for b in 0..d / 2 {
            m[(2 * b, 2 * b + 1)] = 1.into();
            m[(2 * b + 1, 2 * b)] = (-1).into();
        }
        HopfLinkSpec::from_matrix(m, 3, 0, 1).unwrap()
    }

    fn tree(link: HopfLinkSpec, leaves: usize) -> DecoratedGraph {
        let n = link.n() as usize;
        let mut vertices = vec![Vertex::Black { link }];
        let mut edges = Vec::new();
        for i in 0..leaves {
            vertices.push(Vertex::White {
                fiber: FiberDescriptor::disk(n),
            });
            edges.push(Edge::new(0, i + 1, i, 0));
        }
        DecoratedGraph::new(vertices, edges)
    }

    fn theta_graph(link: HopfLinkSpec) -> DecoratedGraph {
        DecoratedGraph::new(
            vec![Vertex::Black { link: link.clone() }, Vertex::Black { link }],
            (0..3).map(|c| Edge::new(0, 1, c, c)).collect(),
        )
    }

    #[test]
    fn tree_validates() {
        let g = tree(skew_link(2), 3);
        validate_graph(&g).unwrap();
        let c = graph_counts(&g);
        assert_eq!((c.m, c.s_black, c.g, c.t), (3, 1, 0, 2));
    }

    #[test]
    fn missing_leaf_rejected() {
        let g = tree(skew_link(2), 2);
        match validate_graph(&g) {
            Err(Error::Graph { locus, reason }) => {
                assert_eq!(locus, "vertex 0");
                assert!(reason.contains("degree 2"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn skew_even_degree_rejected() {
        let mut m = IntMatrix::zeros(3, 3);
        m[(0, 1)] = 1.into();
        m[(1, 0)] = (-1).into();
        let l = HopfLinkSpec::from_matrix(m, 3, 0, 1).unwrap();
        let g = tree(l, 4);
        let err = validate_graph(&g).unwrap_err();
        assert!(err.to_string().contains("even degree"), "{err}");
    }

    #[test]
    fn component_reuse_rejected() {
        let mut g = tree(skew_link(2), 3);
        g.edges[2].u_comp = 0;
        assert!(validate_graph(&g)
            .unwrap_err()
            .to_string()
            .contains("used twice"));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut g = tree(skew_link(2), 3);
        g.edges[0].v = 9;
        assert!(validate_graph(&g).is_err());
        let mut g = tree(skew_link(2), 3);
        g.edges[0].u_comp = 3;
        assert!(validate_graph(&g).is_err());
    }

    #[test]
    fn all_black_counts() {
        let g = theta_graph(skew_link(2));
        validate_graph(&g).unwrap();
        let c = graph_counts(&g);
        assert_eq!((c.m, c.s_black, c.t, c.g), (3, 2, 4, 2));
        assert_eq!(c.t, 2 * c.m - c.s_black);
    }

    #[test]
    fn global_fiber_of_tree_is_sphere() {
        let f = assemble_global_fiber(&tree(skew_link(2), 3)).unwrap();
        assert_eq!(f.chi, 0);
        assert_eq!(f.descriptor.unwrap().name, "S^3");
        let f = assemble_global_fiber(&tree(h_link(4, 0), 3)).unwrap();
        assert_eq!(f.chi, 2);
    }

    #[test]
    fn global_fiber_of_theta_graph() {
        let f = assemble_global_fiber(&theta_graph(skew_link(2))).unwrap();
        assert_eq!(f.chi, 0);
        assert_eq!(f.descriptor.unwrap().betti, vec![1, 2, 2, 1]);
        let f = assemble_global_fiber(&theta_graph(h_link(4, 0))).unwrap();
        assert_eq!(f.chi, -2);
    }

    #[test]
    fn black_white_kpos() {
        let l = h_link(4, 1);
        let white = FiberDescriptor::from_ranks(5, &[(0, 1), (1, 2)], 1);
        let g = DecoratedGraph::new(
            vec![Vertex::Black { link: l }, Vertex::White { fiber: white }],
            vec![Edge::new(0, 1, 0, 0)],
        );
        validate_graph(&g).unwrap();
        let c = graph_counts(&g);
        assert_eq!((c.t, c.g), (2, 0));
        let f = assemble_global_fiber(&g).unwrap();
        assert_eq!(f.chi, 0);
        assert_eq!(f.descriptor.unwrap().name, "S^5");
    }

    #[test]
    fn two_black_kpos_counts() {
        let g = DecoratedGraph::new(
            vec![
                Vertex::Black { link: h_link(4, 1) },
                Vertex::Black { link: h_link(4, 1) },
            ],
            vec![Edge::new(0, 1, 0, 0)],
        );
        validate_graph(&g).unwrap();
        let c = graph_counts(&g);
        assert_eq!((c.t, c.g), (4, 0));
        let f = assemble_global_fiber(&g).unwrap();
        assert!(f.descriptor.is_none());
    }

    #[test]
    fn white_dimension_mismatch() {
        let mut g = tree(h_link(4, 0), 3);
        g.vertices[1] = Vertex::White {
            fiber: FiberDescriptor::disk(3),
        };
        assert!(matches!(
            assemble_global_fiber(&g),
            Err(Error::Dimension(_))
        ));
        assert!(validate_graph(&g).is_err());
    }
}
