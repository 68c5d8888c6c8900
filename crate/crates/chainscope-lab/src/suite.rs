//! Registered property suites: deterministic, seed-reproducible batches
//! that turn every library invariant into an executable check. A suite
//! runs `trials` independent instances and reports each violated
//! assertion with the instance digest and a re-runnable command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use chainscope_core::io::pieces_to_json;
use chainscope_core::model::{Model1D, Piece, Q};
use chainscope_core::{
    alpha_k, eta_km, eta_star_k, gamma_m, gamma_star, io, BottleneckMatrix, Ext, MergeTree,
    MetricSpace, Mode, Scale, SolverLimits, SpaceF64, Subset,
};

use crate::gen::{gen_members, gen_model, gen_space_mixed, gen_subset, gen_subsubset};
use crate::oracle::{oracle_chain_ball, oracle_chain_component, oracle_kcenter};

pub const SUITE_NAMES: &[&str] = &[
    "metric-axioms",
    "ultrametric",
    "component-equivalence",
    "functional-coincidences",
    "monotonicity",
    "union-law",
    "hausdorff-stability",
    "box-product-law",
    "model-classifier-goldens",
    "model-fc-laws",
    "hierarchy-audit",
    "bornology-laws",
    "sample-crosscheck",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown suite {0:?} (expected one of: {names})", names = SUITE_NAMES.join(", "))]
pub struct UnknownSuite(pub String);

/// One violated assertion, with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Failure {
    pub trial: u64,
    pub seed: u64,
    pub instance: String,
    pub assertion: String,
    pub witness: String,
    pub rerun: String,
}

/// Deterministic suite outcome: re-running with the same seed yields an
/// identical report. Elapsed time is carried for logging but excluded
/// from serialization so reports stay byte-identical across runs.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    suite: &'static str,
    seed: u64,
    trials: u64,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check(&mut self, trial: u64, instance: &str, assertion: &str, ok: bool, witness: String) {
        if !ok {
            self.failures.push(Failure {
                trial,
                seed: trial_seed(self.seed, trial),
                instance: instance.to_string(),
                assertion: assertion.to_string(),
                witness,
                rerun: format!(
                    "chainscope propcheck --suite {} --seed {} --trials {}",
                    self.suite, self.seed, self.trials
                ),
            });
        }
    }
}

fn digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hex::encode(&hasher.finalize()[..8])
}

fn space_digest(space: &SpaceF64) -> String {
    digest(&io::space_to_json(space).to_string())
}

fn model_digest(model: &Model1D) -> String {
    digest(&pieces_to_json(model.pieces()).to_string())
}

fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs a registered suite. The golden-table suite ignores `trials` and
/// always runs its fixed rows.
pub fn run_suite(name: &str, seed: u64, trials: u64) -> Result<SuiteReport, UnknownSuite> {
    let start = std::time::Instant::now();
    let mut rec = Recorder {
        suite: SUITE_NAMES
            .iter()
            .find(|s| **s == name)
            .copied()
            .ok_or_else(|| UnknownSuite(name.to_string()))?,
        seed,
        trials,
        failures: Vec::new(),
    };
    match name {
        "metric-axioms" => suite_metric_axioms(&mut rec, seed, trials),
        "ultrametric" => suite_ultrametric(&mut rec, seed, trials),
        "component-equivalence" => suite_component_equivalence(&mut rec, seed, trials),
        "functional-coincidences" => suite_functional_coincidences(&mut rec, seed, trials),
        "monotonicity" => suite_monotonicity(&mut rec, seed, trials),
        "union-law" => suite_union_law(&mut rec, seed, trials),
        "hausdorff-stability" => suite_hausdorff_stability(&mut rec, seed, trials),
        "box-product-law" => suite_box_product(&mut rec, seed, trials),
        "model-classifier-goldens" => suite_goldens(&mut rec),
        "model-fc-laws" => suite_fc_laws(&mut rec, seed, trials),
        "hierarchy-audit" => suite_hierarchy_audit(&mut rec, seed, trials),
        "bornology-laws" => suite_bornology(&mut rec, seed, trials),
        "sample-crosscheck" => suite_sample_crosscheck(&mut rec, seed, trials),
        _ => unreachable!("registry checked above"),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        trials,
        failures: rec.failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn suite_metric_axioms(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 3 + (ts % 8) as usize);
        let id = space_digest(&space);
        let n = space.len();
        // re-validate through the public constructor
        let matrix: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| space.dist(i, j)).collect())
            .collect();
        let revalidated = MetricSpace::new(space.labels().to_vec(), matrix);
        rec.check(
            trial,
            &id,
            "generated space passes validate_metric",
            revalidated.is_ok(),
            format!("{revalidated:?}"),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let a = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let b = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let c = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let hab = a.hausdorff(&b).unwrap();
        let hba = b.hausdorff(&a).unwrap();
        rec.check(
            trial,
            &id,
            "hausdorff symmetry",
            hab == hba,
            format!("H(A,B)={hab} H(B,A)={hba}"),
        );
        rec.check(
            trial,
            &id,
            "hausdorff zero iff equal",
            hab.is_zero() == (a.members() == b.members()),
            format!("H={hab} A={:?} B={:?}", a.members(), b.members()),
        );
        let hac = a.hausdorff(&c).unwrap().as_finite().copied().unwrap();
        let hcb = c.hausdorff(&b).unwrap().as_finite().copied().unwrap();
        let habf = hab.as_finite().copied().unwrap();
        rec.check(
            trial,
            &id,
            "hausdorff triangle inequality",
            habf <= hac + hcb,
            format!("H(A,B)={habf} > H(A,C)+H(C,B)={}", hac + hcb),
        );
        let values = space.distance_values();
        let e1 = values[1 + (ts as usize % (values.len() - 1))];
        let e2 = space.diameter() / 2.0 + 0.03125;
        let (lo, hi) = (e1.min(e2).max(0.03125), e1.max(e2));
        let small = a.enlarge(&Scale::new(lo).unwrap());
        let big = a.enlarge(&Scale::new(hi.max(lo + 0.0625)).unwrap());
        rec.check(
            trial,
            &id,
            "enlargement inflationary and monotone",
            a.members().is_subset(small.members()) && small.members().is_subset(big.members()),
            format!("A={:?} small={:?} big={:?}", a.members(), small.members(), big.members()),
        );
    }
}

fn suite_ultrametric(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 4 + (ts % 9) as usize);
        let id = space_digest(&space);
        let bn = BottleneckMatrix::compute(&space);
        let n = space.len();
        let mut ok_below = true;
        let mut ok_ultra = true;
        let mut witness = String::new();
        for x in 0..n {
            for y in 0..n {
                if bn.value(x, y) > space.dist(x, y) {
                    ok_below = false;
                    witness = format!("c({x},{y})={} > d={}", bn.value(x, y), space.dist(x, y));
                }
                for z in 0..n {
                    let lhs = bn.value(x, z);
                    let rhs = f64::max(bn.value(x, y), bn.value(y, z));
                    if lhs > rhs {
                        ok_ultra = false;
                        witness = format!("c({x},{z})={lhs} > max(c({x},{y}),c({y},{z}))={rhs}");
                    }
                }
            }
        }
        rec.check(trial, &id, "c <= d on all pairs", ok_below, witness.clone());
        rec.check(
            trial,
            &id,
            "strong triangle inequality on all triples",
            ok_ultra,
            witness,
        );
    }
}

fn scales_for(space: &SpaceF64, ts: u64) -> Vec<f64> {
    let values = space.distance_values();
    let mut scales = Vec::new();
    // exact stored values (strictness matters) and midpoints between them
    for (i, v) in values.iter().enumerate().skip(1) {
        if i % 2 == (ts % 2) as usize {
            scales.push(*v);
        }
        scales.push((values[i - 1] + v) / 2.0);
    }
    scales.push(space.diameter() + 1.0);
    scales.retain(|s| *s > 0.0);
    scales.truncate(5);
    scales
}

fn suite_component_equivalence(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 4 + (ts % 9) as usize);
        let id = space_digest(&space);
        let n = space.len();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        for eps in scales_for(&space, ts) {
            let scale = Scale::new(eps).unwrap();
            for x in 0..n {
                let want = oracle_chain_component(&space, x, eps);
                let via_tree = tree.component(&space, x, &scale);
                let via_c = bn.component(&space, x, &scale);
                rec.check(
                    trial,
                    &id,
                    "merge-tree component equals the BFS oracle",
                    via_tree.members() == &want,
                    format!("x={x} eps={eps} got {:?} want {want:?}", via_tree.members()),
                );
                rec.check(
                    trial,
                    &id,
                    "threshold component equals the BFS oracle",
                    via_c.members() == &want,
                    format!("x={x} eps={eps} got {:?} want {want:?}", via_c.members()),
                );
                // ball growth: nested, inside the component, saturating
                let mut prev: Option<std::collections::BTreeSet<usize>> = None;
                for m in 1..n {
                    let ball = chainscope_core::chain_ball(&space, x, &scale, m);
                    let ball_oracle = oracle_chain_ball(&space, x, eps, m);
                    rec.check(
                        trial,
                        &id,
                        "chain ball equals the depth-bounded BFS oracle",
                        ball.members() == &ball_oracle,
                        format!("x={x} eps={eps} m={m}"),
                    );
                    if let Some(p) = &prev {
                        rec.check(
                            trial,
                            &id,
                            "chain balls are nested in depth",
                            p.is_subset(ball.members()),
                            format!("x={x} eps={eps} m={m}"),
                        );
                    }
                    rec.check(
                        trial,
                        &id,
                        "chain balls stay inside the component",
                        ball.members().is_subset(&want),
                        format!("x={x} eps={eps} m={m}"),
                    );
                    prev = Some(ball.members().clone());
                }
                rec.check(
                    trial,
                    &id,
                    "depth |X|-1 saturates to the component",
                    prev.as_ref() == Some(&want),
                    format!("x={x} eps={eps}"),
                );
                // partition law
                for y in &want {
                    let yc = tree.component(&space, *y, &scale);
                    rec.check(
                        trial,
                        &id,
                        "components partition the space",
                        yc.members() == &want,
                        format!("x={x} y={y} eps={eps}"),
                    );
                }
            }
        }
        // monotone in the scale
        let scale_list = scales_for(&space, ts);
        for w in scale_list.windows(2) {
            let (s1, s2) = (w[0].min(w[1]), w[0].max(w[1]));
            for x in 0..n {
                let c1 = tree.component(&space, x, &Scale::new(s1).unwrap());
                let c2 = tree.component(&space, x, &Scale::new(s2).unwrap());
                rec.check(
                    trial,
                    &id,
                    "components grow with the scale",
                    c1.members().is_subset(c2.members()),
                    format!("x={x} {s1} vs {s2}"),
                );
            }
        }
    }
}

fn ext_str(v: &Ext<f64>) -> String {
    v.to_string()
}

fn suite_functional_coincidences(rec: &mut Recorder, seed: u64, trials: u64) {
    let limits = SolverLimits::default();
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 4 + (ts % 5) as usize); // |X| <= 8
        let id = space_digest(&space);
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let members = gen_members(&mut rng, n);
        let a = Subset::new(&space, members.clone()).unwrap();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        for k in 1..=3usize {
            for m in [1usize, 2, n - 1] {
                let eta = eta_km(&a, k, m, Mode::Exact, &limits).unwrap();
                let want = oracle_kcenter(&space, &members, k, Some(m)).unwrap();
                rec.check(
                    trial,
                    &id,
                    "eta_km exact equals the enumeration oracle",
                    eta.value == Ext::Finite(want),
                    format!("k={k} m={m} got {} want {want}", ext_str(&eta.value)),
                );
            }
            let alpha = alpha_k(&a, k, Mode::Exact, &limits).unwrap();
            let want = oracle_kcenter(&space, &members, k, Some(1)).unwrap();
            rec.check(
                trial,
                &id,
                "alpha_k exact equals the enumeration oracle",
                alpha.value == Ext::Finite(want),
                format!("k={k} got {} want {want}", ext_str(&alpha.value)),
            );
            let eta1 = eta_km(&a, k, 1, Mode::Exact, &limits).unwrap();
            rec.check(
                trial,
                &id,
                "alpha_k = eta_{k,1}",
                alpha.value == eta1.value,
                format!("k={k}"),
            );
            let star = eta_star_k(&tree, &a, k).unwrap();
            let want_star = oracle_kcenter(&space, &members, k, None).unwrap();
            rec.check(
                trial,
                &id,
                "eta_star_k equals the enumeration oracle",
                star.value == Ext::Finite(want_star),
                format!("k={k} got {} want {want_star}", ext_str(&star.value)),
            );
            let deep = eta_km(&a, k, n - 1, Mode::Exact, &limits).unwrap();
            rec.check(
                trial,
                &id,
                "eta_km saturates to eta_star_k at m = |X|-1",
                deep.value == star.value,
                format!("k={k}"),
            );
        }
        for m in [1usize, 2, n - 1] {
            let g = gamma_m(&a, m).unwrap();
            let eta = eta_km(&a, 1, m, Mode::Exact, &limits).unwrap();
            rec.check(
                trial,
                &id,
                "gamma_m = eta_{1,m}",
                g.value == eta.value,
                format!("m={m}"),
            );
        }
        let gs = gamma_star(&bn, &a);
        let star1 = eta_star_k(&tree, &a, 1).unwrap();
        rec.check(
            trial,
            &id,
            "gamma_star = eta_star_1",
            gs.value == star1.value,
            String::new(),
        );
    }
}

fn suite_monotonicity(rec: &mut Recorder, seed: u64, trials: u64) {
    let limits = SolverLimits::default();
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 4 + (ts % 5) as usize);
        let id = space_digest(&space);
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let big_members = gen_members(&mut rng, n);
        let small_members: Vec<usize> = big_members
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.6))
            .collect();
        let small_members = if small_members.is_empty() {
            vec![big_members[0]]
        } else {
            small_members
        };
        let big = Subset::new(&space, big_members).unwrap();
        let small = Subset::new(&space, small_members).unwrap();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        let le = |a: &Ext<f64>, b: &Ext<f64>| a.cmp_total(b) != std::cmp::Ordering::Greater;
        for k in 1..=3usize {
            let sb = eta_star_k(&tree, &big, k).unwrap().value;
            let ss = eta_star_k(&tree, &small, k).unwrap().value;
            rec.check(
                trial,
                &id,
                "eta_star_k monotone in the subset",
                le(&ss, &sb),
                format!("k={k} small={} big={}", ext_str(&ss), ext_str(&sb)),
            );
            let ab = alpha_k(&big, k, Mode::Exact, &limits).unwrap().value;
            let as_ = alpha_k(&small, k, Mode::Exact, &limits).unwrap().value;
            rec.check(
                trial,
                &id,
                "alpha_k monotone in the subset",
                le(&as_, &ab),
                format!("k={k}"),
            );
            // dominance chain and monotonicity in m
            let mut prev: Option<Ext<f64>> = None;
            for m in 1..n.max(2) {
                let eta = eta_km(&big, k, m, Mode::Exact, &limits).unwrap().value;
                rec.check(
                    trial,
                    &id,
                    "eta_star_k <= eta_km <= alpha_k",
                    le(&sb, &eta) && le(&eta, &ab),
                    format!("k={k} m={m}"),
                );
                if let Some(p) = &prev {
                    rec.check(
                        trial,
                        &id,
                        "eta_km antitone in m",
                        le(&eta, p),
                        format!("k={k} m={m}"),
                    );
                }
                prev = Some(eta);
            }
        }
        // antitone in k
        let mut prev: Option<Ext<f64>> = None;
        for k in 1..=4usize {
            let v = eta_star_k(&tree, &big, k).unwrap().value;
            if let Some(p) = &prev {
                rec.check(
                    trial,
                    &id,
                    "eta_star_k antitone in k",
                    le(&v, p),
                    format!("k={k}"),
                );
            }
            prev = Some(v);
        }
        // gamma monotone in the subset
        let gb = gamma_star(&bn, &big).value;
        let gs = gamma_star(&bn, &small).value;
        rec.check(trial, &id, "gamma_star monotone in the subset", le(&gs, &gb), String::new());
    }
}

fn suite_union_law(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        // finite parametric form
        let space = gen_space_mixed(ts, 4 + (ts % 7) as usize);
        let id = space_digest(&space);
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let ma = gen_members(&mut rng, n);
        let mb = gen_members(&mut rng, n);
        let mut mu: Vec<usize> = ma.iter().chain(mb.iter()).copied().collect();
        mu.sort_unstable();
        mu.dedup();
        let a = Subset::new(&space, ma).unwrap();
        let b = Subset::new(&space, mb).unwrap();
        let u = Subset::new(&space, mu).unwrap();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        for k1 in 1..=2usize {
            for k2 in 1..=2usize {
                let va = eta_star_k(&tree, &a, k1).unwrap().value;
                let vb = eta_star_k(&tree, &b, k2).unwrap().value;
                let vu = eta_star_k(&tree, &u, k1 + k2).unwrap().value;
                let bound = va.clone().max(vb.clone());
                rec.check(
                    trial,
                    &id,
                    "eta_star_{k1+k2}(A u B) <= max(eta_star_k1(A), eta_star_k2(B))",
                    vu.cmp_total(&bound) != std::cmp::Ordering::Greater,
                    format!("k1={k1} k2={k2} union={} bound={}", ext_str(&vu), ext_str(&bound)),
                );
            }
        }
        // unrestricted k degenerates to zero
        let free = eta_star_k(&tree, &u, n).unwrap().value;
        rec.check(
            trial,
            &id,
            "eta_star with k = |X| is identically zero",
            free.is_zero(),
            ext_str(&free),
        );
        // genuine unbounded-k union law on the symbolic backend
        let model = gen_model(ts);
        let mid = model_digest(&model);
        let sa = gen_subset(&model, ts);
        let sb = gen_subset(&model, ts.wrapping_add(1));
        let union_region = sa.as_region().union(&sb.as_region());
        match model.subset(union_region.pieces().to_vec()) {
            Ok(su) => {
                let fa = model.functionals(&sa).eta_star;
                let fb = model.functionals(&sb).eta_star;
                let fu = model.functionals(&su).eta_star;
                let want = fa.clone().max(fb.clone());
                rec.check(
                    trial,
                    &mid,
                    "model eta_star(A u B) = max(eta_star(A), eta_star(B))",
                    fu == want,
                    format!("A={fa} B={fb} union={fu}"),
                );
            }
            Err(e) => rec.check(
                trial,
                &mid,
                "union of subsets is a subset",
                false,
                format!("{e}"),
            ),
        }
    }
}

fn suite_hausdorff_stability(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let space = gen_space_mixed(ts, 4 + (ts % 7) as usize);
        let id = space_digest(&space);
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let a = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let b = Subset::new(&space, gen_members(&mut rng, n)).unwrap();
        let bn = BottleneckMatrix::compute(&space);
        let tree = MergeTree::compute(&space, &bn);
        let h = a.hausdorff(&b).unwrap();
        for k in 1..=3usize {
            let ea = eta_star_k(&tree, &a, k).unwrap().value;
            let eb = eta_star_k(&tree, &b, k).unwrap().value;
            let bound = ea.clone().max(h.clone());
            rec.check(
                trial,
                &id,
                "eta_star_k(B) <= max(eta_star_k(A), H(A,B))",
                eb.cmp_total(&bound) != std::cmp::Ordering::Greater,
                format!(
                    "k={k} eta(B)={} eta(A)={} H={}",
                    ext_str(&eb),
                    ext_str(&ea),
                    ext_str(&h)
                ),
            );
        }
    }
}

fn suite_box_product(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let x = gen_space_mixed(ts, 2 + (ts % 5) as usize);
        let y = gen_space_mixed(ts.wrapping_add(7), 2 + ((ts >> 8) % 5) as usize);
        let p = match x.box_product(&y) {
            Ok(p) => p,
            Err(e) => {
                rec.check(trial, "-", "box product builds", false, format!("{e}"));
                continue;
            }
        };
        let id = space_digest(&p);
        let bx = BottleneckMatrix::compute(&x);
        let by = BottleneckMatrix::compute(&y);
        let bp = BottleneckMatrix::compute(&p);
        let m = y.len();
        let mut ok = true;
        let mut witness = String::new();
        for i1 in 0..x.len() {
            for j1 in 0..m {
                for i2 in 0..x.len() {
                    for j2 in 0..m {
                        let got = bp.value(i1 * m + j1, i2 * m + j2);
                        let want = f64::max(bx.value(i1, i2), by.value(j1, j2));
                        if got != want {
                            ok = false;
                            witness =
                                format!("(({i1},{j1}),({i2},{j2})): got {got} want {want}");
                        }
                    }
                }
            }
        }
        rec.check(
            trial,
            &id,
            "box-product bottleneck is the coordinate max",
            ok,
            witness,
        );
    }
}

fn q_of(s: &str) -> Q {
    s.parse().expect("literal rational")
}

fn golden_models() -> Vec<(&'static str, Model1D)> {
    use chainscope_core::model::{Direction, LatticeCount};
    let naturals = Piece::Lattice {
        start: q_of("1"),
        step: q_of("1"),
        count: LatticeCount::Infinite,
    };
    vec![
        ("naturals", Model1D::new(vec![naturals.clone()]).unwrap()),
        ("line", Model1D::new(vec![Piece::FullLine]).unwrap()),
        (
            "ray-plus-naturals",
            Model1D::new(vec![
                Piece::Ray {
                    dir: Direction::Left,
                    end: q_of("0"),
                },
                naturals.clone(),
            ])
            .unwrap(),
        ),
        (
            "unit-interval",
            Model1D::new(vec![Piece::Interval {
                a: q_of("0"),
                b: q_of("1"),
            }])
            .unwrap(),
        ),
    ]
}

fn suite_goldens(rec: &mut Recorder) {
    let models = golden_models();
    let by_name = |n: &str| models.iter().find(|(name, _)| *name == n).unwrap().1.clone();
    let mut row = 0u64;
    let mut expect = |rec: &mut Recorder, name: &str, what: &str, got: bool, want: bool, witness: &str| {
        rec.check(
            row,
            name,
            &format!("golden: {what}"),
            got == want,
            format!("got {got}, want {want}: {witness}"),
        );
        row += 1;
    };

    let r = by_name("naturals").classify();
    expect(rec, "naturals", "uss", r.uss.holds, true, &r.uss.witness);
    expect(rec, "naturals", "compact", r.compact.holds, false, "");
    expect(rec, "naturals", "uc", r.uc.holds, true, &r.uc.witness);

    let r = by_name("line").classify();
    expect(rec, "line", "uss", r.uss.holds, false, &r.uss.witness);
    expect(
        rec,
        "line",
        "cofinally_complete",
        r.cofinally_complete.holds,
        true,
        "",
    );

    let r = by_name("ray-plus-naturals").classify();
    expect(rec, "ray-plus-naturals", "uss", r.uss.holds, false, &r.uss.witness);
    expect(rec, "ray-plus-naturals", "uc", r.uc.holds, false, &r.uc.witness);
    expect(
        rec,
        "ray-plus-naturals",
        "cofinally_complete",
        r.cofinally_complete.holds,
        true,
        "",
    );

    let r = by_name("unit-interval").classify();
    for (what, v) in [
        ("compact", &r.compact),
        ("chainable", &r.chainable),
        ("strongly_locally_compact", &r.strongly_locally_compact),
        (
            "strongly_uniformly_locally_compact",
            &r.strongly_uniformly_locally_compact,
        ),
        ("uc", &r.uc),
        ("cofinally_complete", &r.cofinally_complete),
        ("complete", &r.complete),
        ("uss", &r.uss),
    ] {
        expect(rec, "unit-interval", what, v.holds, true, &v.witness);
    }

    // subset goldens
    let line = by_name("line");
    let nat_piece = Piece::Lattice {
        start: q_of("1"),
        step: q_of("1"),
        count: chainscope_core::model::LatticeCount::Infinite,
    };
    let a = line.subset(vec![nat_piece.clone()]).unwrap();
    let sr = line.classify_subset(&a);
    expect(
        rec,
        "naturals-in-line",
        "uss_subset",
        sr.uss_subset.holds,
        false,
        &sr.uss_subset.witness,
    );
    let f = line.functionals(&a);
    expect(rec, "naturals-in-line", "gamma_star = 0", f.gamma_star.is_zero(), true, "");
    expect(rec, "naturals-in-line", "eta_star = 0", f.eta_star.is_zero(), true, "");
    expect(rec, "naturals-in-line", "alpha = inf", f.alpha.is_infinite(), true, "");

    let nats = by_name("naturals");
    let a = nats.subset(vec![nat_piece]).unwrap();
    let sr = nats.classify_subset(&a);
    expect(
        rec,
        "naturals-in-naturals",
        "uss_subset",
        sr.uss_subset.holds,
        true,
        &sr.uss_subset.witness,
    );
    let f = nats.functionals(&a);
    expect(
        rec,
        "naturals-in-naturals",
        "gamma_star = 1",
        f.gamma_star == Ext::Finite(q_of("1")),
        true,
        "",
    );
    expect(
        rec,
        "naturals-in-naturals",
        "eta_star = 1",
        f.eta_star == Ext::Finite(q_of("1")),
        true,
        "",
    );
    expect(rec, "naturals-in-naturals", "alpha = inf", f.alpha.is_infinite(), true, "");

    // pointwise functional goldens
    let fc_line = by_name("line").f_c(&q_of("3")).unwrap();
    expect(rec, "line", "f_c = 0", fc_line.is_zero(), true, "");
    let fc_nat = by_name("naturals").f_c(&q_of("5")).unwrap();
    expect(
        rec,
        "naturals",
        "f_c = 1",
        fc_nat == Ext::Finite(q_of("1")),
        true,
        "",
    );
    let fc_int = by_name("unit-interval").f_c(&q_of("1/2")).unwrap();
    expect(rec, "unit-interval", "f_c = inf", fc_int.is_infinite(), true, "");
    let m = by_name("ray-plus-naturals");
    expect(
        rec,
        "ray-plus-naturals",
        "nslc = the ray",
        m.nslc().set_eq(&m.slice(None, Some(&q_of("0")))),
        true,
        "",
    );
    rec.trials = row;
}

/// Grid step for sampling a model: a third of the smallest hole, but
/// never finer than 1/40 of the window (cubic-time validation of the
/// sampled space has to stay affordable). Test scales sit strictly above
/// whatever resolution comes out, so the cross-check stays exact.
fn sample_resolution(model: &Model1D, lo: &Q, hi: &Q) -> Q {
    let fine = model
        .gap_values()
        .first()
        .map(|g| g.clone() / q_of("3"))
        .unwrap_or_else(|| q_of("1/4"));
    let coarse = (hi.clone() - lo.clone()) / q_of("40");
    fine.max(coarse)
}

fn suite_fc_laws(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let model = gen_model(ts);
        let id = model_digest(&model);
        rec.check(
            trial,
            &id,
            "Ker f_c = nslc as regions",
            model.fc_kernel().set_eq(&model.nslc()),
            format!("kernel={:?} nslc={:?}", model.fc_kernel().pieces(), model.nslc().pieces()),
        );
        rec.check(
            trial,
            &id,
            "Ker I = limit points as regions",
            model.iso_kernel().set_eq(&model.limit_points()),
            String::new(),
        );
        let (lo, hi) = model.suggested_window();
        let res = sample_resolution(&model, &lo, &hi);
        let Ok(samples) = model.sample(&lo, &hi, &res) else {
            continue;
        };
        let points: Vec<Q> = (0..samples.len().min(100))
            .map(|i| samples.label(i).parse().unwrap())
            .collect();
        let mut all_finite = true;
        let mut any_infinite = false;
        let mut values = Vec::new();
        for x in &points {
            let fc = model.f_c(x).unwrap();
            let iso = model.isolation(x).unwrap();
            rec.check(
                trial,
                &id,
                "I <= f_c at sampled points",
                iso.cmp_total(&fc) != std::cmp::Ordering::Greater,
                format!("x={x} I={iso} f_c={fc}"),
            );
            if fc.is_infinite() {
                any_infinite = true;
                all_finite = false;
            }
            values.push((x.clone(), fc));
        }
        if any_infinite {
            // infinity propagates: one infinite value makes f_c infinite
            // everywhere
            rec.check(
                trial,
                &id,
                "f_c = inf at one point forces f_c = inf everywhere",
                values.iter().all(|(_, v)| v.is_infinite()),
                format!("{values:?}"),
            );
        }
        if all_finite {
            // 1-Lipschitz on sampled pairs
            for pair in values.windows(2).take(100) {
                let (x, fx) = &pair[0];
                let (y, fy) = &pair[1];
                let (fx, fy) = (fx.as_finite().unwrap(), fy.as_finite().unwrap());
                let lhs = if fx >= fy {
                    fx.clone() - fy.clone()
                } else {
                    fy.clone() - fx.clone()
                };
                let rhs = if x >= y {
                    x.clone() - y.clone()
                } else {
                    y.clone() - x.clone()
                };
                rec.check(
                    trial,
                    &id,
                    "f_c is 1-Lipschitz",
                    lhs <= rhs,
                    format!("|f_c({x})-f_c({y})|={lhs} > |x-y|={rhs}"),
                );
            }
        }
        if model.is_bounded() {
            rec.check(
                trial,
                &id,
                "bounded models have f_c identically infinite",
                values.iter().all(|(_, v)| v.is_infinite()),
                String::new(),
            );
        }
    }
}

fn suite_hierarchy_audit(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let model = gen_model(ts);
        let id = model_digest(&model);
        let report = model.classify();
        let violations = report.hierarchy_violations();
        rec.check(
            trial,
            &id,
            "classifier hierarchy is respected",
            violations.is_empty(),
            violations.join(", "),
        );
    }
}

fn suite_bornology(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let model = gen_model(ts);
        let id = model_digest(&model);
        let b = gen_subset(&model, ts);
        let a = gen_subsubset(&model, &b, ts);
        let ub = model.classify_subset(&b).uss_subset.holds;
        let ua = model.classify_subset(&a).uss_subset.holds;
        rec.check(
            trial,
            &id,
            "uss subsets are closed under subsets",
            !ub || ua,
            format!("B uss={ub}, sub-subset uss={ua}"),
        );
        // singletons always belong
        let x = match b.pieces().first().unwrap() {
            Piece::FullLine => q_of("0"),
            Piece::Ray { end, .. } => end.clone(),
            Piece::Interval { a, .. } => a.clone(),
            Piece::Lattice { start, .. } => start.clone(),
            Piece::Points { xs } => xs[0].clone(),
        };
        let singleton = model
            .subset(vec![Piece::Points { xs: vec![x] }])
            .unwrap();
        rec.check(
            trial,
            &id,
            "singletons are uss subsets",
            model.classify_subset(&singleton).uss_subset.holds,
            String::new(),
        );
        // closed under finite unions
        let c = gen_subset(&model, ts.wrapping_add(33));
        let uc_ = model.classify_subset(&c).uss_subset.holds;
        let union = b.as_region().union(&c.as_region());
        match model.subset(union.pieces().to_vec()) {
            Ok(u) => {
                let uu = model.classify_subset(&u).uss_subset.holds;
                rec.check(
                    trial,
                    &id,
                    "uss subsets are closed under finite unions",
                    !(ub && uc_) || uu,
                    format!("B={ub} C={uc_} union={uu}"),
                );
            }
            Err(e) => rec.check(trial, &id, "union stays inside the model", false, format!("{e}")),
        }
    }
}

fn suite_sample_crosscheck(rec: &mut Recorder, seed: u64, trials: u64) {
    for trial in 0..trials {
        let ts = trial_seed(seed, trial);
        let model = gen_model(ts);
        let id = model_digest(&model);
        let (lo, hi) = model.suggested_window();
        let res = sample_resolution(&model, &lo, &hi);
        let samples = match model.sample(&lo, &hi, &res) {
            Ok(s) => s,
            Err(e) => {
                rec.check(trial, &id, "model samples", false, format!("{e}"));
                continue;
            }
        };
        let points: Vec<Q> = (0..samples.len())
            .map(|i| samples.label(i).parse().unwrap())
            .collect();
        // scale grid: midpoints between consecutive thresholds, all above
        // the resolution so interval discretization cannot disconnect runs
        let gaps = model.gap_values();
        let mut thresholds: Vec<Q> = vec![res.clone()];
        thresholds.extend(gaps.iter().filter(|g| **g > res).cloned());
        thresholds.sort();
        thresholds.dedup();
        let mut scales: Vec<Q> = thresholds
            .windows(2)
            .map(|w| (w[0].clone() + w[1].clone()) / q_of("2"))
            .collect();
        scales.push(thresholds.last().unwrap().clone() + q_of("1"));
        let bn = BottleneckMatrix::compute(&samples);
        let tree = MergeTree::compute(&samples, &bn);
        let probe = points.len().min(40);
        for eps in scales {
            let scale = Scale::new(eps.clone()).unwrap();
            for (i, x) in points.iter().enumerate().take(probe) {
                let finite = tree.component(&samples, i, &scale);
                let symbolic = model.component(x, &eps).unwrap();
                let mut ok = true;
                let mut witness = String::new();
                for (j, y) in points.iter().enumerate() {
                    let in_finite = finite.contains(j);
                    let in_symbolic = symbolic.contains(y);
                    if in_finite != in_symbolic {
                        ok = false;
                        witness = format!(
                            "x={x} y={y} eps={eps}: finite={in_finite} symbolic={in_symbolic}"
                        );
                        break;
                    }
                }
                rec.check(
                    trial,
                    &id,
                    "sampled components agree with symbolic components",
                    ok,
                    witness,
                );
            }
        }
    }
}

/// Default trial counts for batch runs.
pub fn default_trials(name: &str) -> u64 {
    match name {
        "model-classifier-goldens" => 1,
        "ultrametric" => 200,
        "component-equivalence" => 100,
        "sample-crosscheck" => 25,
        _ => 100,
    }
}
