//! Acceptance suite: one test per criterion, each printing its own
//! pass/fail line, with exactness and wall-clock budgets pinned in code.
//!
//! Everything here is seed-deterministic; oracle comparisons are exact
//! (bit-for-bit), never tolerance-based.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use chainscope_core::model::Q;
use chainscope_core::{
    alpha_k, eta_km, eta_star_k, gamma_m, gamma_star, BottleneckMatrix, Ext, MergeTree, Mode,
    Scale, SolverLimits, SpaceF64, Subset,
};
use chainscope_lab::{
    gen_members, gen_model, gen_space, gen_space_mixed, oracle_chain_component, oracle_kcenter,
    oracle_minimax, run_suite, GeneratorConfig, SpaceKind, SUITE_NAMES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget(name: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    println!("{name}: passed in {elapsed:?} (budget {limit:?})");
    assert!(
        elapsed < limit,
        "{name} exceeded its time budget: {elapsed:?} >= {limit:?}"
    );
}

/// Five interesting scales per space: exact stored values (strictness)
/// and midpoints between them, topped by a beyond-diameter scale.
fn five_scales(space: &SpaceF64) -> Vec<f64> {
    let values = space.distance_values();
    let mut scales = vec![space.diameter() + 1.0];
    for w in values.windows(2) {
        scales.push(w[1]);
        scales.push((w[0] + w[1]) / 2.0);
        if scales.len() >= 5 {
            break;
        }
    }
    scales.truncate(5);
    scales
}

#[test]
fn criterion_01_bottleneck_matches_minimax_oracle() {
    let start = Instant::now();
    for seed in 0..500u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 9) as usize); // up to 12 points
        let bn = BottleneckMatrix::compute(&space);
        for x in 0..space.len() {
            for y in 0..space.len() {
                let want = oracle_minimax(&space, x, y).unwrap();
                assert_eq!(bn.value(x, y), want, "seed {seed} pair ({x},{y})");
            }
        }
    }
    budget("criterion 01 (bottleneck = minimax oracle, 500 spaces)", start, Duration::from_secs(10));
}

#[test]
fn criterion_02_components_match_bfs_oracle() {
    let start = Instant::now();
    for seed in 0..500u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 9) as usize);
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        for eps in five_scales(&space) {
            let scale = Scale::new(eps).unwrap();
            for x in 0..space.len() {
                let want = oracle_chain_component(&space, x, eps);
                let got = tree.component(&space, x, &scale);
                assert_eq!(got.members(), &want, "seed {seed} x={x} eps={eps}");
            }
        }
    }
    budget("criterion 02 (components = BFS oracle, 500 spaces x 5 scales)", start, Duration::from_secs(10));
}

#[test]
fn criterion_03_ultrametric_and_partition_invariants() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 9) as usize);
        let n = space.len();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let (x, y, z) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            assert!(bn.value(x, y) <= space.dist(x, y), "seed {seed}: c <= d");
            assert!(
                bn.value(x, z) <= f64::max(bn.value(x, y), bn.value(y, z)),
                "seed {seed}: strong triangle"
            );
        }
        // partition law on a random scale
        let eps = five_scales(&space)[seed as usize % 5];
        let scale = Scale::new(eps).unwrap();
        let partition = tree.partition_at(&scale);
        for _ in 0..1000 {
            let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
            let same_class = partition[x] == partition[y];
            let in_component = scale.admits(&bn.value(x, y));
            assert_eq!(same_class, in_component, "seed {seed} x={x} y={y} eps={eps}");
        }
    }
    budget("criterion 03 (ultrametric + partition, 200 spaces x 1000 probes)", start, Duration::from_secs(5));
}

#[test]
fn criterion_04_covering_solvers_match_enumeration_oracle() {
    let start = Instant::now();
    let limits = SolverLimits::default();
    for seed in 0..200u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 7) as usize); // up to 10 points
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members = gen_members(&mut rng, n);
        let a = Subset::new(&space, members.clone()).unwrap();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        for k in 1..=3usize {
            for m in [1usize, 2, n - 1] {
                let got = eta_km(&a, k, m, Mode::Exact, &limits).unwrap().value;
                let want = oracle_kcenter(&space, &members, k, Some(m)).unwrap();
                assert_eq!(got, Ext::Finite(want), "seed {seed} eta k={k} m={m}");
            }
            let alpha = alpha_k(&a, k, Mode::Exact, &limits).unwrap().value;
            let want = oracle_kcenter(&space, &members, k, Some(1)).unwrap();
            assert_eq!(alpha, Ext::Finite(want), "seed {seed} alpha k={k}");
            let star = eta_star_k(&tree, &a, k).unwrap().value;
            let want = oracle_kcenter(&space, &members, k, None).unwrap();
            assert_eq!(star, Ext::Finite(want), "seed {seed} eta_star k={k}");
            // coincidence identities on every instance
            let eta1 = eta_km(&a, k, 1, Mode::Exact, &limits).unwrap().value;
            assert_eq!(alpha, eta1, "seed {seed} alpha_k = eta_k1");
        }
        for m in [1usize, 2, n - 1] {
            let g = gamma_m(&a, m).unwrap().value;
            let e = eta_km(&a, 1, m, Mode::Exact, &limits).unwrap().value;
            assert_eq!(g, e, "seed {seed} gamma_m = eta_1m");
        }
        let gs = gamma_star(&bn, &a).value;
        let s1 = eta_star_k(&tree, &a, 1).unwrap().value;
        assert_eq!(gs, s1, "seed {seed} gamma_star = eta_star_1");
    }
    budget("criterion 04 (covering solvers = enumeration oracle, 200 instances)", start, Duration::from_secs(30));
}

#[test]
fn criterion_05_hausdorff_stability() {
    let start = Instant::now();
    // exhaustive confirmation: all subset pairs of all 6-point spaces
    // from 20 seeds
    for seed in 0..20u64 {
        let space = gen_space_mixed(seed, 6);
        let n = space.len();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        let subsets: Vec<Subset<f64>> = (1u32..(1 << n))
            .map(|bits| {
                let members: Vec<usize> = (0..n).filter(|i| bits & (1 << i) != 0).collect();
                Subset::new(&space, members).unwrap()
            })
            .collect();
        let stars: Vec<Vec<Ext<f64>>> = subsets
            .iter()
            .map(|s| {
                (1..=3)
                    .map(|k| eta_star_k(&tree, s, k).unwrap().value)
                    .collect()
            })
            .collect();
        for (ia, a) in subsets.iter().enumerate() {
            for (ib, b) in subsets.iter().enumerate() {
                let h = a.hausdorff(b).unwrap();
                for k in 0..3 {
                    let bound = stars[ia][k].clone().max(h.clone());
                    assert!(
                        stars[ib][k].cmp_total(&bound) != std::cmp::Ordering::Greater,
                        "seed {seed} A={ia} B={ib} k={}",
                        k + 1
                    );
                }
            }
        }
    }
    // randomized sweep: 200 (A, B, k) triples
    for seed in 0..200u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 7) as usize);
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let b = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let k = 1 + (seed % 3) as usize;
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        let h = a.hausdorff(&b).unwrap();
        let ea = eta_star_k(&tree, &a, k).unwrap().value;
        let eb = eta_star_k(&tree, &b, k).unwrap().value;
        let bound = ea.max(h);
        assert!(
            eb.cmp_total(&bound) != std::cmp::Ordering::Greater,
            "seed {seed} k={k}"
        );
    }
    budget("criterion 05 (hausdorff stability, exhaustive 6-point sweep + 200 random)", start, Duration::from_secs(20));
}

#[test]
fn criterion_06_box_product_law() {
    let start = Instant::now();
    for seed in 0..50u64 {
        let x = gen_space(&GeneratorConfig::new(seed, SpaceKind::Collinear, 2 + (seed % 5) as usize));
        let y = gen_space_mixed(seed.wrapping_add(1000), 2 + ((seed / 5) % 5) as usize);
        let p = x.box_product(&y).unwrap();
        let bx = BottleneckMatrix::compute(&x);
        let by = BottleneckMatrix::compute(&y);
        let bp = BottleneckMatrix::compute(&p);
        let m = y.len();
        for i1 in 0..x.len() {
            for j1 in 0..m {
                for i2 in 0..x.len() {
                    for j2 in 0..m {
                        assert_eq!(
                            bp.value(i1 * m + j1, i2 * m + j2),
                            f64::max(bx.value(i1, i2), by.value(j1, j2)),
                            "seed {seed}"
                        );
                    }
                }
            }
        }
    }
    budget("criterion 06 (box-product law, 50 products)", start, Duration::from_secs(5));
}

#[test]
fn criterion_07_golden_classifier_table() {
    let start = Instant::now();
    let report = run_suite("model-classifier-goldens", 0, 1).unwrap();
    assert!(
        report.failures.is_empty(),
        "golden table violations: {:#?}",
        report.failures
    );
    budget("criterion 07 (golden classifier table)", start, Duration::from_secs(1));
}

#[test]
fn criterion_08_fc_laws_on_models() {
    let start = Instant::now();
    let mut lipschitz_models = 0usize;
    let mut bounded_models = 0usize;
    for seed in 0..40u64 {
        let model = gen_model(seed);
        assert!(
            model.fc_kernel().set_eq(&model.nslc()),
            "seed {seed}: Ker f_c = nslc"
        );
        assert!(
            model.iso_kernel().set_eq(&model.limit_points()),
            "seed {seed}: Ker I = X'"
        );
        let (lo, hi) = model.suggested_window();
        let span = hi.clone() - lo.clone();
        let gaps = model.gap_values();
        let res = gaps
            .first()
            .map(|g| g.clone() / Q::from_integer(3.into()))
            .unwrap_or_else(|| Q::new(1.into(), 4.into()))
            .max(span / Q::from_integer(40.into()));
        let Ok(samples) = model.sample(&lo, &hi, &res) else {
            continue;
        };
        let points: Vec<Q> = (0..samples.len().min(100))
            .map(|i| samples.label(i).parse().unwrap())
            .collect();
        let values: Vec<(Q, Ext<Q>)> = points
            .iter()
            .map(|x| (x.clone(), model.f_c(x).unwrap()))
            .collect();
        for (x, fc) in &values {
            let iso = model.isolation(x).unwrap();
            assert!(
                iso.cmp_total(fc) != std::cmp::Ordering::Greater,
                "seed {seed}: I({x}) = {iso} > f_c = {fc}"
            );
        }
        if values.iter().any(|(_, v)| v.is_infinite()) {
            assert!(
                values.iter().all(|(_, v)| v.is_infinite()),
                "seed {seed}: infinity must propagate"
            );
        }
        if model.is_bounded() {
            bounded_models += 1;
            assert!(
                values.iter().all(|(_, v)| v.is_infinite()),
                "seed {seed}: bounded model with finite f_c"
            );
        }
        if values.iter().all(|(_, v)| !v.is_infinite()) {
            lipschitz_models += 1;
            let mut checked = 0;
            'outer: for (i, (x, fx)) in values.iter().enumerate() {
                for (y, fy) in values.iter().skip(i + 1) {
                    let fx = fx.as_finite().unwrap();
                    let fy = fy.as_finite().unwrap();
                    let df = if fx >= fy { fx - fy } else { fy - fx };
                    let dx = if x >= y {
                        x.clone() - y.clone()
                    } else {
                        y.clone() - x.clone()
                    };
                    assert!(df <= dx, "seed {seed}: |f_c({x})-f_c({y})| > |x-y|");
                    checked += 1;
                    if checked >= 100 {
                        break 'outer;
                    }
                }
            }
        }
    }
    assert!(lipschitz_models > 0, "need finite-valued models in the mix");
    assert!(bounded_models > 0, "need bounded models in the mix");
    budget("criterion 08 (f_c laws on models)", start, Duration::from_secs(5));
}

#[test]
fn criterion_09_hierarchy_audit() {
    let start = Instant::now();
    let report = run_suite("hierarchy-audit", 2024, 60).unwrap();
    assert!(
        report.failures.is_empty(),
        "hierarchy violations: {:#?}",
        report.failures
    );
    budget("criterion 09 (hierarchy audit, 60 models)", start, Duration::from_secs(5));
}

#[test]
fn criterion_10_bornology_laws() {
    let start = Instant::now();
    let report = run_suite("bornology-laws", 2024, 10).unwrap();
    assert!(
        report.failures.is_empty(),
        "bornology violations: {:#?}",
        report.failures
    );
    budget("criterion 10 (bornology laws over 10 models)", start, Duration::from_secs(10));
}

#[test]
fn criterion_11_sample_crosscheck() {
    let start = Instant::now();
    let report = run_suite("sample-crosscheck", 2024, 10).unwrap();
    assert!(
        report.failures.is_empty(),
        "cross-check violations: {:#?}",
        report.failures
    );
    budget("criterion 11 (symbolic vs sampled components, 10 models)", start, Duration::from_secs(10));
}

#[test]
fn criterion_12_propcheck_determinism() {
    let start = Instant::now();
    for name in SUITE_NAMES {
        let trials = if *name == "model-classifier-goldens" { 1 } else { 12 };
        let a = run_suite(name, 99, trials).unwrap();
        let b = run_suite(name, 99, trials).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb, "suite {name} must serialize byte-identically");
        assert!(a.passed(), "suite {name} failed: {:#?}", a.failures);
    }
    budget("criterion 12 (byte-identical suite reports)", start, Duration::from_secs(30));
}

#[test]
fn oracle_cross_certification() {
    // the threshold-connectivity minimax oracle agrees with literal
    // simple-path enumeration wherever the latter is feasible
    let start = Instant::now();
    for seed in 0..60u64 {
        let space = gen_space_mixed(seed, 4 + (seed % 5) as usize); // up to 8
        for x in 0..space.len() {
            for y in 0..space.len() {
                assert_eq!(
                    oracle_minimax(&space, x, y).unwrap(),
                    chainscope_lab::oracle_minimax_paths(&space, x, y).unwrap(),
                    "seed {seed} ({x},{y})"
                );
            }
        }
    }
    budget("oracle cross-certification (threshold vs path enumeration)", start, Duration::from_secs(5));
}

#[test]
fn chain_ball_subset_reference_values() {
    // a handful of frozen values exercised end to end through the public API
    let space = gen_space(&GeneratorConfig::new(3, SpaceKind::Collinear, 6));
    let bn = BottleneckMatrix::compute(&space);
    let tree = MergeTree::compute(&space, &bn);
    let all = Subset::full(&space);
    let limits = SolverLimits::default();
    // unbounded budgets degenerate to zero on finite spaces
    let free = eta_star_k(&tree, &all, space.len()).unwrap().value;
    assert!(free.is_zero());
    // greedy stays within twice the optimum for plain ball covers
    for k in 1..=3 {
        let exact = alpha_k(&all, k, Mode::Exact, &limits).unwrap().value;
        let greedy = alpha_k(&all, k, Mode::Greedy, &limits).unwrap().value;
        let e = exact.as_finite().unwrap();
        let g = greedy.as_finite().unwrap();
        assert!(*g >= *e && *g <= 2.0 * e, "k={k}: greedy {g} exact {e}");
    }
    // witness chains are valid chains
    let eps = Scale::new(space.diameter() + 1.0).unwrap();
    let chain = chainscope_core::witness_chain(&space, &bn, 0, space.len() - 1, &eps).unwrap();
    assert!(chain.is_valid(&space));
    let sets: BTreeSet<usize> = chain.points().iter().copied().collect();
    assert!(sets.contains(&0) && sets.contains(&(space.len() - 1)));
}
