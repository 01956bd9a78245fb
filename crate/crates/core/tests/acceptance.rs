//! Acceptance suite. Every criterion prints one PASS/FAIL line and the
//! process exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p cvgraph --test acceptance`. Passing `--ignored`
//! additionally streams every two-vertex grid of the random suite.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::Complex;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use cvgraph::experiment::{preset, Experiment};
use cvgraph::graph::{Graph, VertexSet};
use cvgraph::nongauss::{
    build_a, default_axes, negativity_trace, purity_nongaussian, quadrature_moment, wigner_grid, wigner_value,
    ModeVector, NonGaussMatrix, OperationSign, PhotonGraphState, Quadrature, WignerKernel, DEFAULT_POINTS,
    DEFAULT_SIGMAS,
};
use cvgraph::oracle::{
    grid_maximum, grid_minimum, grid_purity, integrate_grid, integrate_streaming, Integrand, QuadratureDomain,
};
use cvgraph::{CovarianceMatrix, SqueezingSpec};

const SUITE_SEED: u64 = 0x5eed_c0de;
const SUITE_SIZE: usize = 200;
const ORACLE_INSTANCES: usize = 50;
/// Two-vertex grids streamed at full resolution in the default run.
const TWO_MODE_SAMPLE: usize = 4;

struct Instance {
    graph: Graph,
    state: PhotonGraphState,
}

/// Connected graph: random spanning tree plus independent extra edges.
fn random_graph(rng: &mut StdRng) -> Graph {
    let m = rng.random_range(3..=12);
    let density = rng.random_range(0.0..0.5);
    let mut edges = Vec::new();
    for v in 1..m {
        edges.push((rng.random_range(0..v), v));
    }
    for i in 0..m {
        for j in i + 1..m {
            if rng.random_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(m, &edges).unwrap()
}

fn random_mode(rng: &mut StdRng, m: usize) -> ModeVector {
    if rng.random_bool(0.5) {
        return ModeVector::vertex(m, rng.random_range(0..m)).unwrap();
    }
    let i = rng.random_range(0..m);
    let j = (i + rng.random_range(1..m)) % m;
    let mut coeffs = vec![Complex::new(0.0, 0.0); m];
    for k in [i, j] {
        coeffs[k] = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    ModeVector::normalized(coeffs).unwrap()
}

fn random_suite() -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE)
        .map(|n| {
            let graph = random_graph(&mut rng);
            assert!(graph.is_connected());
            let m = graph.vertex_count();
            let s: Vec<f64> = (0..m).map(|_| rng.random_range(1.0..=10.0)).collect();
            let mode = random_mode(&mut rng, m);
            let sign = if n % 2 == 0 {
                OperationSign::Add
            } else {
                OperationSign::Subtract
            };
            let state =
                PhotonGraphState::new(graph.clone(), &SqueezingSpec::from_factors(s).unwrap(), mode, sign).unwrap();
            Instance { graph, state }
        })
        .collect()
}

fn single(state: &PhotonGraphState, k: usize) -> (CovarianceMatrix, NonGaussMatrix) {
    state.reduce(&VertexSet::single(k)).unwrap()
}

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn report(outcomes: &[Outcome]) {
    println!();
    for o in outcomes {
        println!(
            "{} {:>2}. {:<28} {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
}

fn locality(suite: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut passed = 0;
    for inst in suite {
        let cert = inst.state.locality_certificate().unwrap();
        worst = worst.max(cert.max_outside);
        passed += usize::from(cert.pass && cert.max_outside <= 1e-12);
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 1,
        title: "locality theorem",
        pass: passed == suite.len() && secs < 10.0,
        detail: format!(
            "{passed}/{} certified, max outside |A| = {worst:e}, {secs:.2} s",
            suite.len()
        ),
    }
}

fn sparsity(suite: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for inst in suite {
        let m = inst.graph.vertex_count();
        let v = inst.state.covariance().matrix();
        let adj = inst.graph.adjacency_matrix();
        let adj2 = &adj * adj.transpose();
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    worst = worst.max(v[(i, j)].abs());
                }
                if adj[(i, j)] == 0.0 {
                    worst = worst.max(v[(i, j + m)].abs()).max(v[(i + m, j)].abs());
                }
                if i != j && adj2[(i, j)] == 0.0 {
                    worst = worst.max(v[(i + m, j + m)].abs());
                }
            }
        }
    }
    Outcome {
        id: 2,
        title: "covariance sparsity",
        pass: worst <= 1e-14,
        detail: format!("max entry outside pattern = {worst:e}"),
    }
}

/// All single-vertex grids (criteria 3 and 7) plus a fixed sample of
/// two-vertex grids streamed at full resolution.
fn single_mode_grids(suite: &[Instance]) -> (Outcome, Outcome) {
    let start = Instant::now();
    let (mut count, mut worst, mut agree) = (0usize, 0.0f64, 0usize);
    let mut disagreements = Vec::new();
    for (n, inst) in suite.iter().enumerate() {
        for k in 0..inst.graph.vertex_count() {
            let (v, a) = single(&inst.state, k);
            let grid = wigner_grid(&v, &a, &default_axes(&v, DEFAULT_SIGMAS, DEFAULT_POINTS).unwrap()).unwrap();
            worst = worst.max((integrate_grid(&grid, Integrand::Density).unwrap() - 1.0).abs());
            count += 1;
            let grid_negative = grid_minimum(&grid).1 < -1e-12 * grid_maximum(&grid);
            if grid_negative == negativity_trace(&v, &a).unwrap().1 {
                agree += 1;
            } else {
                disagreements.push((n, k));
            }
        }
    }
    let one_mode_secs = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let total_pairs: usize = suite
        .iter()
        .map(|i| i.graph.vertex_count())
        .map(|m| m * (m - 1) / 2)
        .sum();
    let mut worst_pair: f64 = 0.0;
    for inst in suite.iter().take(TWO_MODE_SAMPLE) {
        // support vertex with its first neighbour: the most correlated,
        // most non-Gaussian pair of the instance
        let j = inst.state.mode().support().iter().next().unwrap();
        let nb = inst.graph.neighbors(j).next().unwrap();
        worst_pair = worst_pair.max(two_mode_deviation(&inst.state, &VertexSet::new([j, nb])));
    }
    let two_mode_secs = start.elapsed().as_secs_f64();

    let normalization = Outcome {
        id: 3,
        title: "grid normalization",
        pass: worst <= 1e-6 && worst_pair <= 1e-6,
        detail: format!(
            "1-mode: {count} grids, max |I-1| = {worst:.2e} ({one_mode_secs:.1} s); \
             2-mode: {TWO_MODE_SAMPLE} sampled of {total_pairs}, max |I-1| = {worst_pair:.2e} ({two_mode_secs:.1} s)"
        ),
    };
    let equivalence = Outcome {
        id: 7,
        title: "negativity equivalence",
        pass: agree == count,
        detail: format!("{agree}/{count} single-vertex reductions agree {disagreements:?}"),
    };
    (normalization, equivalence)
}

fn two_mode_deviation(state: &PhotonGraphState, set: &VertexSet) -> f64 {
    let (v, a) = state.reduce(set).unwrap();
    let domain = QuadratureDomain::new(default_axes(&v, DEFAULT_SIGMAS, DEFAULT_POINTS).unwrap()).unwrap();
    let kernel = WignerKernel::new(&v, &a).unwrap();
    (integrate_streaming(&kernel, &domain, Integrand::Density).unwrap() - 1.0).abs()
}

fn fock_one() -> Outcome {
    let v = CovarianceMatrix::vacuum(1);
    let a = build_a(&v, &ModeVector::vertex(1, 0).unwrap(), OperationSign::Add)
        .unwrap()
        .a;
    let grid = wigner_grid(&v, &a, &default_axes(&v, DEFAULT_SIGMAS, DEFAULT_POINTS).unwrap()).unwrap();
    let p = |k| quadrature_moment(&v, &a, 0, Quadrature::P, k).unwrap();
    let p_grid = |k| integrate_grid(&grid, Integrand::Moment { axis: 1, power: k }).unwrap();
    let kappa = cvgraph::nongauss::excess_kurtosis(&v, &a, 0, Quadrature::P).unwrap();
    let (at, min) = grid_minimum(&grid);
    let checks = [
        (
            "W(0)",
            wigner_value(&v, &a, &[0.0, 0.0]).unwrap() + 1.0 / (2.0 * PI),
            1e-12,
        ),
        ("grid min", min + 1.0 / (2.0 * PI), 1e-12),
        ("argmin", at[0].abs() + at[1].abs(), 0.0),
        ("<p2>", p(2) - 3.0, 1e-12),
        ("<p4>", p(4) - 15.0, 1e-12),
        ("kappa", kappa + 4.0 / 3.0, 1e-12),
        ("purity", purity_nongaussian(&v, &a).unwrap() - 1.0, 1e-9),
        ("grid <p2>", p_grid(2) - 3.0, 1e-9),
        ("grid <p4>", p_grid(4) - 15.0, 1e-9),
        ("grid purity", grid_purity(&grid).unwrap() - 1.0, 1e-9),
    ];
    let failed: Vec<_> = checks.iter().filter(|(_, d, tol)| !(d.abs() <= *tol)).collect();
    Outcome {
        id: 4,
        title: "Fock-1 anchor",
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} values within tolerance", checks.len())
        } else {
            format!("off: {failed:?}")
        },
    }
}

fn kurtosis_sign(suite: &[Instance]) -> Outcome {
    let mut largest = f64::NEG_INFINITY;
    let mut count = 0;
    for inst in suite {
        for k in 0..inst.graph.vertex_count() {
            let mt = inst.state.vertex_metrics(k).unwrap();
            largest = largest.max(mt.kurtosis_x).max(mt.kurtosis_p);
            count += 2;
        }
    }
    Outcome {
        id: 5,
        title: "kurtosis sign",
        pass: largest <= 1e-10,
        detail: format!("max kappa over {count} vertex quadratures = {largest:e}"),
    }
}

fn full_state_negativity(suite: &[Instance]) -> Outcome {
    let mut smallest = f64::INFINITY;
    let mut negative = 0;
    for inst in suite {
        let (t, flag) = negativity_trace(inst.state.covariance(), inst.state.a()).unwrap();
        smallest = smallest.min(t);
        negative += usize::from(flag);
    }
    Outcome {
        id: 6,
        title: "full-state negativity",
        pass: negative == suite.len(),
        detail: format!("{negative}/{} negative, min tr(V^-1 A) = {smallest:.6}", suite.len()),
    }
}

fn chain_pattern() -> Outcome {
    let exp = Experiment::new(&preset("fig1-chain").unwrap()).unwrap();
    let graph = exp.state.graph();
    let dist = graph.distances_from(&exp.state.mode().support()).unwrap();
    let mut bad = Vec::new();
    let mut kappas = Vec::new();
    for k in 0..graph.vertex_count() {
        let mt = exp.state.vertex_metrics(k).unwrap();
        kappas.push(format!("{:.3e}", mt.kurtosis_p));
        let ok = if dist[k].unwrap() <= 2 {
            mt.kurtosis_p < -1e-6
        } else {
            mt.kurtosis_x.abs() <= 1e-10 && mt.kurtosis_p.abs() <= 1e-10 && (mt.relative_purity - 1.0).abs() <= 1e-10
        };
        if !ok {
            bad.push(k);
        }
    }
    Outcome {
        id: 8,
        title: "chain pattern",
        pass: bad.is_empty(),
        detail: format!("kappa_p = [{}], violations {bad:?}", kappas.join(", ")),
    }
}

fn superposition_tradeoff() -> Outcome {
    let config = preset("fig2-superposition").unwrap();
    let superposed = Experiment::new(&config).unwrap().state;
    let support = superposed.mode().support().to_vec();
    let (first, last) = (support[0], support[support.len() - 1]);
    let kp = |s: &PhotonGraphState, k| s.vertex_metrics(k).unwrap().kurtosis_p.abs();
    let single_end = |j: usize| {
        let m = superposed.graph().vertex_count();
        let squeezing = config.squeezing.build(m).unwrap();
        let state = PhotonGraphState::new(
            superposed.graph().clone(),
            &squeezing,
            ModeVector::vertex(m, j).unwrap(),
            config.operation.sign,
        )
        .unwrap();
        kp(&state, j)
    };
    let (s_first, s_last) = (single_end(first), single_end(last));
    let (b_first, b_last) = (kp(&superposed, first), kp(&superposed, last));
    let pass = s_first > b_first.max(b_last) && s_last > b_first.max(b_last);
    Outcome {
        id: 9,
        title: "superposition trade-off",
        pass,
        detail: format!(
            "|kappa_p| single: v{first} {s_first:.4e}, v{last} {s_last:.4e}; balanced: v{first} {b_first:.4e}, v{last} {b_last:.4e}"
        ),
    }
}

fn lattice_entanglement() -> Outcome {
    let exp = Experiment::new(&preset("fig3-lattice").unwrap()).unwrap();
    let graph = exp.state.graph();
    let dist = graph.distances_from(&exp.state.mode().support()).unwrap();
    let (mut inside, mut outside, mut bad) = (0, 0, Vec::new());
    let mut max_inside = f64::NEG_INFINITY;
    let mut max_dev_outside: f64 = 0.0;
    for k in 0..graph.vertex_count() {
        let rp = exp.state.vertex_metrics(k).unwrap().relative_purity;
        if dist[k].unwrap() <= 2 {
            inside += 1;
            max_inside = max_inside.max(rp);
            if !(rp < 1.0 - 1e-6) {
                bad.push(k);
            }
        } else {
            outside += 1;
            max_dev_outside = max_dev_outside.max((rp - 1.0).abs());
            if !((rp - 1.0).abs() <= 1e-10) {
                bad.push(k);
            }
        }
    }
    Outcome {
        id: 10,
        title: "entanglement increase",
        pass: bad.is_empty(),
        detail: format!(
            "{inside} vertices within 2 (max rel. purity {max_inside:.6}), {outside} beyond (max |dev| {max_dev_outside:e}), violations {bad:?}"
        ),
    }
}

fn oracle_agreement(suite: &[Instance]) -> Outcome {
    // vertices inside the affected region, so every instance is non-Gaussian
    let mut rng = StdRng::seed_from_u64(SUITE_SEED ^ 0xacce);
    let mut worst: f64 = 0.0;
    let mut worst_what = String::new();
    for n in 0..ORACLE_INSTANCES {
        let inst = &suite[rng.random_range(0..suite.len())];
        let allowed = inst.state.affected_vertices().unwrap().to_vec();
        let k = allowed[rng.random_range(0..allowed.len())];
        let (v, a) = single(&inst.state, k);
        let grid = wigner_grid(&v, &a, &default_axes(&v, DEFAULT_SIGMAS, DEFAULT_POINTS).unwrap()).unwrap();
        let mut deviations = vec![(
            "purity".to_string(),
            (grid_purity(&grid).unwrap() - purity_nongaussian(&v, &a).unwrap()).abs(),
        )];
        for (q, axis) in [(Quadrature::X, 0), (Quadrature::P, 1)] {
            for order in 1..=4 {
                let closed = quadrature_moment(&v, &a, 0, q, order).unwrap();
                let numeric = integrate_grid(&grid, Integrand::Moment { axis, power: order }).unwrap();
                deviations.push((format!("{q:?}^{order}"), (numeric - closed).abs()));
            }
        }
        for (what, d) in deviations {
            if d > worst {
                worst = d;
                worst_what = format!("instance {n}, vertex {k}, {what}");
            }
        }
    }
    Outcome {
        id: 11,
        title: "oracle agreement",
        pass: worst <= 1e-6,
        detail: format!("{ORACLE_INSTANCES} instances, max |closed - grid| = {worst:.2e} ({worst_what})"),
    }
}

fn acceptance_criteria() -> bool {
    let suite = random_suite();
    let (normalization, equivalence) = single_mode_grids(&suite);
    let mut outcomes = vec![
        locality(&suite),
        sparsity(&suite),
        normalization,
        fock_one(),
        kurtosis_sign(&suite),
        full_state_negativity(&suite),
        equivalence,
        chain_pattern(),
        superposition_tradeoff(),
        lattice_entanglement(),
        oracle_agreement(&suite),
    ];
    outcomes.sort_by_key(|o| o.id);
    report(&outcomes);
    outcomes.iter().all(|o| o.pass)
}

/// Every two-vertex reduction of the random suite at full resolution.
/// Several hours on a single core.
fn two_mode_normalization_exhaustive() -> bool {
    let suite = random_suite();
    let (mut worst, mut count, mut failed) = (0.0f64, 0, 0);
    for (n, inst) in suite.iter().enumerate() {
        let m = inst.graph.vertex_count();
        for i in 0..m {
            for j in i + 1..m {
                let d = two_mode_deviation(&inst.state, &VertexSet::new([i, j]));
                if !(d <= 1e-6) {
                    println!("  instance {n}, pair ({i}, {j}): |I-1| = {d:e}");
                    failed += 1;
                }
                worst = worst.max(d);
                count += 1;
            }
        }
    }
    println!(
        "{}  3. grid normalization (all)    {count} two-vertex grids, {failed} over 1e-6, max |I-1| = {worst:.2e}",
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    failed == 0
}

fn main() -> ExitCode {
    let exhaustive = std::env::args().any(|a| a == "--ignored" || a == "--include-ignored");
    let mut pass = acceptance_criteria();
    if exhaustive {
        pass &= two_mode_normalization_exhaustive();
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}
