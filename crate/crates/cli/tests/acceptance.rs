//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line; all comparisons are exact.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use hopfcalc_core::exactlinalg::{det_bareiss, inertia_charpoly, inertia_ldlt, IntMatrix};
use hopfcalc_core::forms::{
    build_standard, classify_indefinite, e8, form_type, h, zero_diagonal_model, BilinearForm,
    Parity, StandardForm,
};
use hopfcalc_core::graphmodel::{graph_counts, validate_graph, DecoratedGraph, Edge, Vertex};
use hopfcalc_core::hopflink::{
    derived_linking_matrix, matches_up_to_sign, presentation_oracle, FiberDescriptor, HopfLinkSpec,
};
use hopfcalc_core::invariants::{
    analyze_cup_form, assemble_cup_form, canonical_homology_ranks, euler_characteristic,
    product_phi_bound, Family, ProductFactor,
};
use hopfcalc_core::random::{
    hyperbolic, random_symmetric, random_unimodular, random_zero_diagonal_congruence, symplectic,
};
use hopfcalc_core::{Epsilon, Inertia};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn report(n: u32, title: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => println!("criterion {n}: PASS {title} ({detail})"),
        Err(why) => {
            println!("criterion {n}: FAIL {title}: {why}");
            panic!("criterion {n} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn n_for(f: &BilinearForm) -> u32 {
    match f.epsilon() {
        Epsilon::Symmetric => 4,
        Epsilon::Skew => 3,
    }
}

fn tree(link: HopfLinkSpec) -> DecoratedGraph {
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

fn random_link_form(r: &mut ChaCha8Rng) -> BilinearForm {
    let seeds = [
        hyperbolic(1),
        hyperbolic(2),
        hyperbolic(3),
        zero_diagonal_model(1, 1).unwrap(),
        symplectic(1),
        symplectic(2),
        symplectic(3),
    ];
    let seed = seeds.choose(r).unwrap().clone();
    let steps = r.gen_range(1..15);
    random_zero_diagonal_congruence(&seed, steps, r).1
}

fn random_all_black(link: &HopfLinkSpec, s: usize, r: &mut ChaCha8Rng) -> DecoratedGraph {
    let slots = link.components();
    loop {
        let mut ends: Vec<(usize, usize)> = (0..s)
            .flat_map(|v| (0..slots).map(move |c| (v, c)))
            .collect();
        ends.shuffle(r);
        let edges = ends
            .chunks(2)
            .map(|p| Edge::new(p[0].0, p[1].0, p[0].1, p[1].1))
            .collect();
        let g = DecoratedGraph::new(
            (0..s)
                .map(|_| Vertex::Black { link: link.clone() })
                .collect(),
            edges,
        );
        if validate_graph(&g).is_ok() {
            return g;
        }
    }
}

fn check_oracle(f: &BilinearForm) -> Result<(), String> {
    let link = HopfLinkSpec::new(f.clone(), n_for(f), 0, 1).map_err(|e| e.to_string())?;
    let astar = derived_linking_matrix(&link).map_err(|e| e.to_string())?;
    for s in 0..=link.d() {
        let r = presentation_oracle(&link, s).map_err(|e| format!("{}: {e}", f.matrix()))?;
        ensure(r.free_rank == 1 && r.torsion.is_empty(), || {
            format!("cokernel not Z for s = {s}")
        })?;
        ensure(
            matches_up_to_sign(&r.linking_vector, &astar.column(s)).is_some(),
            || {
                format!(
                    "s = {s}: oracle {:?} vs A* {:?}",
                    r.linking_vector,
                    astar.column(s)
                )
            },
        )?;
    }
    Ok(())
}

#[test]
fn criterion_01_e8_h_ground_truth() {
    let run = || -> Outcome {
        let start = Instant::now();
        let e = BilinearForm::symmetric(e8()).unwrap();
        let hh = BilinearForm::symmetric(h()).unwrap();
        ensure(det_bareiss(&e8()).unwrap() == BigInt::from(1), || {
            "det E8".into()
        })?;
        ensure(
            inertia_ldlt(&e8()).unwrap() == Inertia::new(8, 0, 0),
            || "inertia E8".into(),
        )?;
        ensure(det_bareiss(&h()).unwrap() == BigInt::from(-1), || {
            "det H".into()
        })?;
        ensure(inertia_ldlt(&h()).unwrap() == Inertia::new(1, 1, 0), || {
            "inertia H".into()
        })?;
        let sum = e.direct_sum(&hh).unwrap();
        let t = form_type(&sum).unwrap();
        ensure(t.parity == Parity::Even && t.unimodular, || {
            "E8+H type".into()
        })?;
        ensure(
            classify_indefinite(&sum).unwrap() == StandardForm { p: 1, q: 1 },
            || "classification of E8+H".into(),
        )?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(1), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!("{elapsed:?}"))
    };
    report(1, "E8/H ground truth", run());
}

#[test]
fn criterion_02_linking_matrix_oracle() {
    let run = || -> Outcome {
        let start = Instant::now();
        let mut corpus = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                // zero diagonal forces a = b for symmetric, a = -b for skew
                let m = IntMatrix::from_i64(&[[0, a], [b, 0]]);
                if a == b && a.abs() == 1 {
                    corpus.push(BilinearForm::symmetric(m.clone()).unwrap());
                }
                if a == -b && a.abs() == 1 {
                    corpus.push(BilinearForm::skew(m).unwrap());
                }
            }
        }
        let vals = [-1i64, 0, 1];
        for idx in 0..3usize.pow(6) {
            let mut x = [0i64; 6];
            let mut r = idx;
            for slot in x.iter_mut() {
                *slot = vals[r % 3];
                r /= 3;
            }
            let [a, b, c, d, e, f] = x;
            if (a * f - b * e + c * d).abs() != 1 {
                continue;
            }
            corpus.push(
                BilinearForm::skew(IntMatrix::from_i64(&[
                    [0, a, b, c],
                    [-a, 0, d, e],
                    [-b, -d, 0, f],
                    [-c, -e, -f, 0],
                ]))
                .unwrap(),
            );
        }
        corpus.push(BilinearForm::symmetric(h()).unwrap());
        corpus.push(zero_diagonal_model(1, 1).unwrap());
        let mut components = 0;
        for f in &corpus {
            check_oracle(f)?;
            components += f.rank() + 1;
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(10), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!(
            "{} forms, {components} filled components, {elapsed:?}",
            corpus.len()
        ))
    };
    report(2, "linking matrix matches presentation oracle", run());
}

#[test]
fn criterion_03_row_sums_vanish() {
    let run = || -> Outcome {
        let mut r = rng(3);
        let (mut sym, mut skew) = (0, 0);
        for i in 0..100 {
            let f = random_link_form(&mut r);
            match f.epsilon() {
                Epsilon::Symmetric => sym += 1,
                Epsilon::Skew => skew += 1,
            }
            let link = HopfLinkSpec::new(f.clone(), n_for(&f), 0, 1).unwrap();
            let a = derived_linking_matrix(&link).map_err(|e| e.to_string())?;
            let ones = vec![BigInt::from(1); a.ncols()];
            let prod = a.mul_vec(&ones).unwrap();
            ensure(prod.iter().all(Zero::is_zero), || {
                format!("sample {i}: A* 1 = {prod:?} for {}", f.matrix())
            })?;
        }
        ensure(sym > 0 && skew > 0, || "both symmetry signs needed".into())?;
        Ok(format!("{sym} symmetric, {skew} skew"))
    };
    report(3, "row-sum identity", run());
}

#[test]
fn criterion_04_kernel_is_all_ones() {
    let run = || -> Outcome {
        let mut r = rng(4);
        for i in 0..50 {
            let f = random_link_form(&mut r);
            let g = tree(HopfLinkSpec::new(f.clone(), n_for(&f), 0, 1).unwrap());
            validate_graph(&g).map_err(|e| e.to_string())?;
            let cup = assemble_cup_form(std::slice::from_ref(&g)).map_err(|e| e.to_string())?;
            let a = analyze_cup_form(&cup).map_err(|e| e.to_string())?;
            let ones = vec![BigInt::from(1); cup.rank()];
            ensure(
                a.kernel_dim() == 1 && a.kernel_integer_basis[0] == ones,
                || format!("tree {i}: kernel {:?}", a.kernel_integer_basis),
            )?;
        }
        Ok("50 trees".into())
    };
    report(4, "kernel of the tree cup form is span{1}", run());
}

#[test]
fn criterion_05_signature_eight() {
    let run = || -> Outcome {
        let f = zero_diagonal_model(1, 1).unwrap();
        let g = tree(HopfLinkSpec::new(f, 4, 0, 1).unwrap());
        let cup = assemble_cup_form(&[g]).map_err(|e| e.to_string())?;
        let a = analyze_cup_form(&cup).map_err(|e| e.to_string())?;
        ensure(a.sigma == 8, || format!("sigma = {}", a.sigma))?;
        for (p, q) in [(1i64, 1u64), (1, 2), (2, 1)] {
            let m = zero_diagonal_model(p, q).map_err(|e| e.to_string())?;
            let t = form_type(&m).unwrap();
            ensure(m.has_zero_diagonal(), || format!("({p},{q}) diagonal"))?;
            ensure(t.unimodular, || format!("({p},{q}) det {}", t.det))?;
            ensure(t.parity == Parity::Even, || format!("({p},{q}) parity"))?;
            ensure(t.signature() == 8 * p, || {
                format!("({p},{q}) sigma {}", t.signature())
            })?;
        }
        Ok("sigma = 8".into())
    };
    report(5, "signature of the E8+H block", run());
}

#[test]
fn criterion_06_euler_characteristic() {
    let run = || -> Outcome {
        let j = HopfLinkSpec::new(symplectic(1), 3, 0, 1).unwrap();
        let chi = euler_characteristic(&[tree(j.clone())])
            .map_err(|e| e.to_string())?
            .chi;
        ensure(chi == -2, || format!("tree chi = {chi}"))?;

        let mut r = rng(6);
        let hl = HopfLinkSpec::new(hyperbolic(1), 4, 0, 1).unwrap();
        let j5 = HopfLinkSpec::new(symplectic(2), 3, 0, 1).unwrap();
        let mut families = 0;
        for _ in 0..40 {
            let p = r.gen_range(1..=3);
            // odd n: degree-3 and degree-5 skew links
            let (link, s) = if r.gen_bool(0.5) {
                (&j, 2 * r.gen_range(1..=3))
            } else {
                (&j5, 2 * r.gen_range(1..=2))
            };
            let fam: Vec<_> = (0..p).map(|_| random_all_black(link, s, &mut r)).collect();
            let e = euler_characteristic(&fam).map_err(|e| e.to_string())?;
            ensure(e.chi == -(e.t as i64), || {
                format!("odd n: chi {} t {}", e.chi, e.t)
            })?;

            let s = 2 * r.gen_range(1..=3);
            let fam: Vec<_> = (0..p).map(|_| random_all_black(&hl, s, &mut r)).collect();
            let e = euler_characteristic(&fam).map_err(|e| e.to_string())?;
            let s_black: usize = fam.iter().map(|g| graph_counts(g).s_black).sum();
            ensure(e.chi.rem_euclid(2) == (s_black % 2) as i64, || {
                format!("even n: chi {} s {s_black}", e.chi)
            })?;
            families += 2;
        }
        Ok(format!("tree chi = -2, {families} all-black families"))
    };
    report(6, "Euler characteristic", run());
}

#[test]
fn criterion_07_inertia_algorithms_agree() {
    let run = || -> Outcome {
        let mut r = rng(7);
        for i in 0..200 {
            let n = r.gen_range(1..=10);
            let a = random_symmetric(n, 5, &mut r);
            let l = inertia_ldlt(&a).map_err(|e| e.to_string())?;
            let c = inertia_charpoly(&a).map_err(|e| e.to_string())?;
            ensure(l == c, || format!("sample {i}: ldlt {l} charpoly {c}\n{a}"))?;
        }
        Ok("200 matrices".into())
    };
    report(7, "LDL and characteristic polynomial inertia agree", run());
}

#[test]
fn criterion_08_classification_congruence_invariant() {
    let run = || -> Outcome {
        let mut r = rng(8);
        let mut seeds = Vec::new();
        for q in 1..=6u64 {
            seeds.push((0i64, q));
        }
        for q in 1..=2u64 {
            seeds.push((1, q));
            seeds.push((-1, q));
        }
        for &(p, q) in &seeds {
            let f = build_standard(p, q);
            for _ in 0..20 {
                let m = random_unimodular(f.rank(), 25, &mut r);
                let g = f.congruent(&m).unwrap();
                let c = classify_indefinite(&g).map_err(|e| e.to_string())?;
                ensure(c == StandardForm { p, q }, || {
                    format!("({p},{q}) became {c}")
                })?;
            }
        }
        Ok(format!("{} seed forms x 20", seeds.len()))
    };
    report(8, "classification is a congruence invariant", run());
}

#[test]
fn criterion_09_product_bounds() {
    use ProductFactor::*;
    let run = || -> Outcome {
        let cases: [(&[ProductFactor], u64, Option<u64>); 3] = [
            (&[S4, S4], 4, None),
            (&[ConnSum(1)], 4, Some(4)),
            (&[ConnSum(1), ConnSum(2)], 24, Some(24)),
        ];
        for (factors, upper, chi) in cases {
            let b = product_phi_bound(factors).map_err(|e| e.to_string())?;
            ensure(b.lower == 1 && b.upper == BigInt::from(upper), || {
                format!("{factors:?}: ({}, {})", b.lower, b.upper)
            })?;
            if let Some(chi) = chi {
                ensure(b.chi == BigInt::from(chi), || {
                    format!("{factors:?}: chi {}", b.chi)
                })?;
            }
        }
        ensure(product_phi_bound(&[]).is_err(), || {
            "empty product accepted".into()
        })?;
        Ok("(1,4), (1,4) chi 4, (1,24) chi 24".into())
    };
    report(9, "product bounds", run());
}

#[test]
fn criterion_10_homology_tables() {
    let run = || -> Outcome {
        let mut checked = 0;
        for n in 3u32..=6 {
            for k in 0..=n - 2 {
                for d in 4usize..=8 {
                    let fams: &[Family] = if k == 0 {
                        &[Family::EvenK0, Family::OddK0]
                    } else {
                        &[Family::EvenKPos, Family::OddKPos]
                    };
                    for &fam in fams {
                        let t =
                            canonical_homology_ranks(fam, n, k, d).map_err(|e| e.to_string())?;
                        let (nu, ku, du) = (n as usize, k as usize, d as u64);
                        let dim = if matches!(fam, Family::OddK0 | Family::OddKPos) {
                            2 * nu + 1
                        } else {
                            2 * nu
                        };
                        let mut expected = vec![0u64; dim + 1];
                        expected[0] = 1;
                        expected[dim] = 1;
                        match fam {
                            Family::EvenK0 => expected[nu] = du + 2,
                            Family::EvenKPos => {
                                expected[nu] = du;
                                expected[nu - ku] = 1;
                                expected[nu + ku] = 1;
                            }
                            Family::OddK0 => {
                                expected[nu] = du + 1;
                                expected[nu + 1] = du + 1;
                            }
                            Family::OddKPos => {
                                expected[nu] = du;
                                expected[nu + 1] = du;
                                expected[nu - ku] = 1;
                                expected[nu + ku + 1] = 1;
                            }
                        }
                        ensure(t.dim == dim && t.ranks == expected, || {
                            format!("{fam} n={n} k={k} d={d}: {:?} vs {expected:?}", t.ranks)
                        })?;
                        checked += 1;
                    }
                }
            }
        }
        let rejected = [
            (Family::EvenKPos, 5, 1, 3),
            (Family::OddKPos, 5, 1, 2),
            (Family::EvenKPos, 5, 4, 4),
            (Family::OddKPos, 4, 0, 4),
            (Family::EvenK0, 4, 1, 4),
            (Family::OddK0, 2, 0, 4),
            (Family::EvenK0, 4, 0, 0),
        ];
        for (fam, n, k, d) in rejected {
            ensure(canonical_homology_ranks(fam, n, k, d).is_err(), || {
                format!("{fam} n={n} k={k} d={d} accepted")
            })?;
        }
        Ok(format!("{checked} tables, {} rejections", rejected.len()))
    };
    report(10, "canonical homology tables", run());
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn spec_fixtures() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let text = std::fs::read_to_string(p).unwrap();
            p.extension().is_some_and(|e| e == "json") && text.trim_start().starts_with('{')
        })
        .collect();
    out.sort();
    out
}

fn hopfcalc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcalc"))
        .args(args)
        .env_remove("HOPFCALC_CACHE")
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_11_cli_determinism() {
    let run = || -> Outcome {
        let specs = spec_fixtures();
        ensure(specs.len() >= 3, || "fixtures missing".into())?;
        for p in &specs {
            let path = p.to_str().unwrap();
            for format in ["text", "json"] {
                let a = hopfcalc(&["report", "--oracle", "--format", format, path]);
                let b = hopfcalc(&["report", "--oracle", "--format", format, path]);
                ensure(a.status.code() == Some(0), || {
                    format!(
                        "{path}: exit {:?}: {}",
                        a.status,
                        String::from_utf8_lossy(&a.stderr)
                    )
                })?;
                ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
                    format!("{path} ({format}) differs between runs")
                })?;
            }
            let o = hopfcalc(&["oracle", path]);
            ensure(o.status.code() == Some(0), || {
                format!("oracle {path}: exit {:?}", o.status.code())
            })?;
        }
        Ok(format!("{} fixtures", specs.len()))
    };
    report(11, "CLI determinism and oracle exit code", run());
}
