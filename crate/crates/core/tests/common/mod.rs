#![allow(dead_code)]

use hopfcalc_core::exactlinalg::IntMatrix;
use hopfcalc_core::forms::{zero_diagonal_model, BilinearForm};
use hopfcalc_core::graphmodel::{DecoratedGraph, Edge, Vertex};
use hopfcalc_core::hopflink::{FiberDescriptor, HopfLinkSpec};
use hopfcalc_core::random::{hyperbolic, random_zero_diagonal_congruence, symplectic};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det_cofactor(&minor);
    }
    total
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_i64_rows()
        .expect("small entries")
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

/// Zero-diagonal unimodular seeds of either symmetry.
pub fn seed_forms() -> Vec<BilinearForm> {
    vec![
        hyperbolic(1),
        hyperbolic(2),
        hyperbolic(3),
        zero_diagonal_model(1, 1).unwrap(),
        symplectic(1),
        symplectic(2),
        symplectic(3),
    ]
}

/// Random unimodular zero-diagonal form, scrambled by a congruence.
pub fn random_link_form<R: Rng>(rng: &mut R) -> BilinearForm {
    let seeds = seed_forms();
    let seed = seeds.choose(rng).unwrap();
    let steps = rng.gen_range(0..12);
    random_zero_diagonal_congruence(seed, steps, rng).1
}

pub fn n_for(form: &BilinearForm) -> u32 {
    match form.epsilon() {
        hopfcalc_core::Epsilon::Symmetric => 4,
        hopfcalc_core::Epsilon::Skew => 3,
    }
}

/// One black vertex joined to `d + 1` white disks.
pub fn single_black_tree(link: HopfLinkSpec) -> DecoratedGraph {
    let n = link.n() as usize;
    let leaves = link.components();
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

/// Random connected all-black graph where every vertex carries `link`:
/// a uniform pairing of the component slots, retried until connected.
pub fn random_all_black<R: Rng>(link: &HopfLinkSpec, s: usize, rng: &mut R) -> DecoratedGraph {
    let slots = link.components();
    assert!((s * slots).is_multiple_of(2));
    loop {
        let mut ends: Vec<(usize, usize)> = (0..s)
            .flat_map(|v| (0..slots).map(move |c| (v, c)))
            .collect();
        ends.shuffle(rng);
        let edges: Vec<Edge> = ends
            .chunks(2)
            .map(|p| Edge::new(p[0].0, p[1].0, p[0].1, p[1].1))
            .collect();
        let g = DecoratedGraph::new(
            (0..s)
                .map(|_| Vertex::Black { link: link.clone() })
                .collect(),
            edges,
        );
        if hopfcalc_core::graphmodel::validate_graph(&g).is_ok() {
            return g;
        }
    }
}

pub fn small_matrix(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}
