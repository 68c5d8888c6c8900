//! Command implementations: thin adapters over the library operations.
//! Every JSON report embeds the tool version and the sha256 digest of
//! each input file, and identical invocations produce byte-identical
//! output (maps serialize with sorted keys, and nothing is timestamped).

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use chainscope_core::io::{self, FileKind};
use chainscope_core::model::{Model1D, SubsetSpec};
use chainscope_core::{
    alpha_k, eta_star_k, evaluate_budget, gamma_star, isolation, Budget, BottleneckMatrix,
    CoveringBudget, Exactness, FunctionalResult, MergeTree, MetricSpace, Mode,
    SolverLimits, Subset,
};
use chainscope_lab::{run_suite, UnknownSuite};

use crate::Cmd;

struct Input {
    role: &'static str,
    path: PathBuf,
    text: String,
}

fn read_input(role: &'static str, path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {} file {}", role, path.display()))?;
    Ok(Input {
        role,
        path: path.to_path_buf(),
        text,
    })
}

fn meta(inputs: &[&Input]) -> Value {
    let mut m = serde_json::Map::new();
    for i in inputs {
        m.insert(
            i.role.to_string(),
            json!({
                "path": i.path.display().to_string(),
                "sha256": hex::encode(Sha256::digest(i.text.as_bytes())),
            }),
        );
    }
    json!({
        "tool": { "name": "chainscope", "version": env!("CARGO_PKG_VERSION") },
        "inputs": Value::Object(m),
    })
}

fn with_meta(mut report: Value, meta: Value) -> Value {
    let obj = report.as_object_mut().expect("reports are objects");
    for (k, v) in meta.as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    report
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Exact-solver limits, overridable through `CHAINSCOPE_MAX_EXACT`.
fn solver_limits() -> Result<SolverLimits> {
    match std::env::var("CHAINSCOPE_MAX_EXACT") {
        Err(_) => Ok(SolverLimits::default()),
        Ok(s) => {
            let budget: u64 = s
                .parse()
                .map_err(|_| anyhow!("CHAINSCOPE_MAX_EXACT must be an integer, got {s:?}"))?;
            Ok(SolverLimits::from_budget(budget))
        }
    }
}

fn parse_budget(s: &str, name: &str) -> Result<Budget> {
    if s == "inf" {
        return Ok(Budget::Unbounded);
    }
    let v: usize = s
        .parse()
        .map_err(|_| anyhow!("{name} must be a positive integer or \"inf\", got {s:?}"))?;
    if v < 1 {
        bail!("{name} must be at least 1");
    }
    Ok(Budget::Finite(v))
}

fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "exact" => Ok(Mode::Exact),
        "greedy" => Ok(Mode::Greedy),
        other => bail!("mode must be exact or greedy, got {other:?}"),
    }
}

pub fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Validate { path } => cmd_validate(&path),
        Cmd::Analyze { path, subsets } => cmd_analyze(&path, &subsets),
        Cmd::Functionals {
            space,
            subset,
            k,
            m,
            mode,
        } => cmd_functionals(&space, &subset, &k, &m, &mode),
        Cmd::Classify { model, subset } => cmd_classify(&model, subset.as_deref()),
        Cmd::Scales { space, dot } => cmd_scales(&space, dot.as_deref()),
        Cmd::Hausdorff { space, a, b } => cmd_hausdorff(&space, &a, &b),
        Cmd::Product { a, b } => cmd_product(&a, &b),
        Cmd::Sample {
            model,
            window,
            resolution,
        } => cmd_sample(&model, &window, &resolution),
        Cmd::Propcheck {
            suite,
            seed,
            trials,
        } => cmd_propcheck(&suite, seed, trials),
    }
}

fn cmd_validate(path: &Path) -> Result<i32> {
    let input = read_input("input", path)?;
    let kind = io::detect_kind(&input.text)?;
    let verdict = match kind {
        FileKind::Space => io::space_from_json(&input.text).map(|_| "space"),
        FileKind::Model => io::model_from_json(&input.text).map(|_| "model1d"),
    };
    match verdict {
        Ok(kind_name) => {
            emit(&with_meta(
                json!({ "valid": true, "kind": kind_name }),
                meta(&[&input]),
            ));
            Ok(0)
        }
        Err(err) => {
            // axiom-level violations are domain verdicts (exit 1);
            // anything structural in the JSON itself is an input error
            let domain = matches!(err, io::IoError::Metric(_) | io::IoError::Model(_));
            if !domain {
                return Err(err.into());
            }
            emit(&with_meta(
                json!({
                    "valid": false,
                    "violation": {
                        "kind": format!("{err:?}"),
                        "message": err.to_string(),
                    },
                }),
                meta(&[&input]),
            ));
            Ok(1)
        }
    }
}

fn functional_json(space: &MetricSpace<f64>, r: &FunctionalResult<f64>) -> Value {
    json!({
        "value": io::ext_f64_to_json(&r.value),
        "centers": r.centers.iter().map(|&i| space.label(i)).collect::<Vec<_>>(),
        "exactness": match r.exactness {
            Exactness::Exact => "exact",
            Exactness::GreedyUpperBound => "greedy-upper-bound",
        },
    })
}

fn merge_events_json(space: &MetricSpace<f64>, tree: &MergeTree<f64>) -> Value {
    let events: Vec<Value> = tree
        .events()
        .iter()
        .map(|e| {
            let mut reps: Vec<usize> = e.partition.clone();
            reps.sort_unstable();
            reps.dedup();
            json!({
                "scale": e.scale,
                "pairs": e
                    .pairs
                    .iter()
                    .map(|(a, b)| json!([space.label(*a), space.label(*b)]))
                    .collect::<Vec<_>>(),
                "class_count": e.class_count,
                "representatives": reps.iter().map(|&r| space.label(r)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(events)
}

fn verdict_json(v: &chainscope_core::model::Verdict) -> Value {
    json!({ "holds": v.holds, "vacuous": v.vacuous, "witness": v.witness })
}

fn classifier_json(r: &chainscope_core::model::ClassifierReport) -> Value {
    json!({
        "compact": verdict_json(&r.compact),
        "chainable": verdict_json(&r.chainable),
        "strongly_locally_compact": verdict_json(&r.strongly_locally_compact),
        "strongly_uniformly_locally_compact": verdict_json(&r.strongly_uniformly_locally_compact),
        "uc": verdict_json(&r.uc),
        "cofinally_complete": verdict_json(&r.cofinally_complete),
        "complete": verdict_json(&r.complete),
        "uss": verdict_json(&r.uss),
    })
}

fn subset_report_json(r: &chainscope_core::model::SubsetReport) -> Value {
    json!({
        "uss_subset": verdict_json(&r.uss_subset),
        "uc_subset": verdict_json(&r.uc_subset),
        "cc_subset": verdict_json(&r.cc_subset),
        "qc_precompact": verdict_json(&r.qc_precompact),
        "bourbaki_bounded": verdict_json(&r.bourbaki_bounded),
    })
}

fn model_functionals_json(f: &chainscope_core::model::ModelFunctionals) -> Value {
    json!({
        "alpha": io::ext_q_to_json(&f.alpha),
        "eta": io::ext_q_to_json(&f.eta),
        "eta_star": io::ext_q_to_json(&f.eta_star),
        "gamma_star": io::ext_q_to_json(&f.gamma_star),
    })
}

fn space_digest_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn cmd_analyze(path: &Path, subset_paths: &[PathBuf]) -> Result<i32> {
    let input = read_input("input", path)?;
    match io::detect_kind(&input.text)? {
        FileKind::Space => {
            let space = io::space_from_json(&input.text)?;
            let bn = BottleneckMatrix::compute(&space);
            let tree = MergeTree::compute(&space, &bn);
            let points: Vec<Value> = (0..space.len())
                .map(|i| {
                    json!({
                        "index": i,
                        "label": space.label(i),
                        "isolation": io::ext_f64_to_json(&isolation(&space, i)),
                    })
                })
                .collect();
            let limits = solver_limits()?;
            let mut subset_reports = Vec::new();
            let mut inputs = vec![&input];
            let subs: Vec<Input> = subset_paths
                .iter()
                .map(|p| read_input("subset", p))
                .collect::<Result<_>>()?;
            for s in &subs {
                let members = io::members_from_json(&space, &s.text)?;
                let a = Subset::new(&space, members.clone())?;
                let g_star = gamma_star(&bn, &a);
                let a1 = alpha_k(&a, 1, Mode::Exact, &limits)?;
                let s1 = eta_star_k(&tree, &a, 1)?;
                subset_reports.push(json!({
                    "path": s.path.display().to_string(),
                    "members": members.iter().map(|&i| space.label(i)).collect::<Vec<_>>(),
                    "gamma_star": functional_json(&space, &g_star),
                    "alpha_1": functional_json(&space, &a1),
                    "eta_star_1": functional_json(&space, &s1),
                }));
            }
            for s in &subs {
                inputs.push(s);
            }
            let report = json!({
                "kind": "space-analysis",
                "digest": space_digest_hex(&input.text),
                "point_count": space.len(),
                "diameter": space.diameter(),
                "points": points,
                "merge_events": merge_events_json(&space, &tree),
                "subsets": subset_reports,
            });
            emit(&with_meta(report, meta(&inputs)));
            Ok(0)
        }
        FileKind::Model => {
            let model = io::model_from_json(&input.text)?;
            let zones: Vec<Value> = model
                .fc_zones()
                .iter()
                .map(|z| {
                    let rep = z.span.representative();
                    let iso = model.isolation(&rep).expect("representative is in the model");
                    json!({
                        "representative": io::format_rational(&rep),
                        "f_c": io::ext_q_to_json(&z.value),
                        "isolation": io::ext_q_to_json(&iso),
                    })
                })
                .collect();
            let mut subset_reports = Vec::new();
            let subs: Vec<Input> = subset_paths
                .iter()
                .map(|p| read_input("subset", p))
                .collect::<Result<_>>()?;
            for s in &subs {
                let a: SubsetSpec = io::model_subset_from_json(&model, &s.text)?;
                subset_reports.push(json!({
                    "path": s.path.display().to_string(),
                    "report": subset_report_json(&model.classify_subset(&a)),
                    "functionals": model_functionals_json(&model.functionals(&a)),
                }));
            }
            let mut inputs = vec![&input];
            for s in &subs {
                inputs.push(s);
            }
            let report = json!({
                "kind": "model-analysis",
                "digest": space_digest_hex(&input.text),
                "zones": zones,
                "nslc": io::pieces_to_json(model.nslc().pieces()),
                "limit_points": io::pieces_to_json(model.limit_points().pieces()),
                "classifiers": classifier_json(&model.classify()),
                "subsets": subset_reports,
            });
            emit(&with_meta(report, meta(&inputs)));
            Ok(0)
        }
    }
}

fn cmd_functionals(
    space_path: &Path,
    subset_path: &Path,
    k: &str,
    m: &str,
    mode: &str,
) -> Result<i32> {
    let space_in = read_input("space", space_path)?;
    let subset_in = read_input("subset", subset_path)?;
    let space = io::space_from_json(&space_in.text)?;
    let members = io::members_from_json(&space, &subset_in.text)?;
    let a = Subset::new(&space, members)?;
    let k_budget = parse_budget(k, "k")?;
    let m_budget = parse_budget(m, "m")?;
    let mode = parse_mode(mode)?;
    let limits = solver_limits()?;
    let bn = BottleneckMatrix::compute(&space);
    let tree = MergeTree::compute(&space, &bn);
    let k_eff = match k_budget {
        Budget::Finite(k) => k,
        Budget::Unbounded => space.len(),
    };
    let alpha = alpha_k(&a, k_eff, mode, &limits)?;
    let gamma_m_r = evaluate_budget(
        &a,
        &bn,
        &tree,
        CoveringBudget {
            centers: Budget::Finite(1),
            steps: m_budget,
        },
        mode,
        &limits,
    )?;
    let eta = evaluate_budget(
        &a,
        &bn,
        &tree,
        CoveringBudget {
            centers: k_budget,
            steps: m_budget,
        },
        mode,
        &limits,
    )?;
    let star = eta_star_k(&tree, &a, k_eff)?;
    let g_star = gamma_star(&bn, &a);
    let report = json!({
        "kind": "functionals",
        "budget": { "k": k, "m": m, "mode": match mode { Mode::Exact => "exact", Mode::Greedy => "greedy" } },
        "alpha_k": functional_json(&space, &alpha),
        "gamma_m": functional_json(&space, &gamma_m_r),
        "eta_km": functional_json(&space, &eta),
        "eta_star_k": functional_json(&space, &star),
        "gamma_star": functional_json(&space, &g_star),
    });
    emit(&with_meta(report, meta(&[&space_in, &subset_in])));
    Ok(0)
}

fn cmd_classify(model_path: &Path, subset_path: Option<&Path>) -> Result<i32> {
    let model_in = read_input("model", model_path)?;
    let model = io::model_from_json(&model_in.text)?;
    let mut report = json!({
        "kind": "classification",
        "classifiers": classifier_json(&model.classify()),
        "nslc": io::pieces_to_json(model.nslc().pieces()),
        "limit_points": io::pieces_to_json(model.limit_points().pieces()),
    });
    let mut inputs = vec![&model_in];
    let subset_in;
    if let Some(p) = subset_path {
        subset_in = read_input("subset", p)?;
        let a = io::model_subset_from_json(&model, &subset_in.text)?;
        let obj = report.as_object_mut().unwrap();
        obj.insert("subset".into(), subset_report_json(&model.classify_subset(&a)));
        obj.insert(
            "subset_functionals".into(),
            model_functionals_json(&model.functionals(&a)),
        );
        inputs.push(&subset_in);
    }
    emit(&with_meta(report, meta(&inputs)));
    Ok(0)
}

fn cmd_scales(space_path: &Path, dot: Option<&Path>) -> Result<i32> {
    let input = read_input("space", space_path)?;
    let space = io::space_from_json(&input.text)?;
    let bn = BottleneckMatrix::compute(&space);
    let tree = MergeTree::compute(&space, &bn);
    println!("scale,merged_pairs,class_count,representatives");
    for e in tree.events() {
        let pairs = e
            .pairs
            .iter()
            .map(|(a, b)| format!("{}-{}", space.label(*a), space.label(*b)))
            .collect::<Vec<_>>()
            .join(";");
        let mut reps: Vec<usize> = e.partition.clone();
        reps.sort_unstable();
        reps.dedup();
        let reps = reps
            .iter()
            .map(|&r| space.label(r).to_string())
            .collect::<Vec<_>>()
            .join("|");
        println!("{},{},{},{}", e.scale, pairs, e.class_count, reps);
    }
    if let Some(dot_path) = dot {
        std::fs::write(dot_path, dendrogram_dot(&space, &tree))
            .with_context(|| format!("writing {}", dot_path.display()))?;
    }
    Ok(0)
}

fn dendrogram_dot(space: &MetricSpace<f64>, tree: &MergeTree<f64>) -> String {
    let mut out = String::from("graph dendrogram {\n  rankdir=BT;\n");
    for i in 0..space.len() {
        out.push_str(&format!(
            "  leaf{} [shape=box, label=\"{}\"];\n",
            i,
            space.label(i)
        ));
    }
    // current DOT node per class representative
    let mut node: Vec<String> = (0..space.len()).map(|i| format!("leaf{i}")).collect();
    let mut prev: Vec<usize> = (0..space.len()).collect();
    for (idx, e) in tree.events().iter().enumerate() {
        let mut involved: Vec<usize> = e
            .pairs
            .iter()
            .flat_map(|(a, b)| [prev[*a], prev[*b]])
            .collect();
        involved.sort_unstable();
        involved.dedup();
        let name = format!("merge{idx}");
        out.push_str(&format!("  {} [label=\"{}\"];\n", name, e.scale));
        for class in &involved {
            out.push_str(&format!("  {} -- {};\n", name, node[*class]));
        }
        for class in involved {
            node[class] = name.clone();
        }
        for (i, class) in e.partition.iter().enumerate() {
            node[*class] = name.clone();
            prev[i] = *class;
        }
        let _ = &prev;
    }
    out.push_str("}\n");
    out
}

fn cmd_hausdorff(space_path: &Path, a_path: &Path, b_path: &Path) -> Result<i32> {
    let space_in = read_input("space", space_path)?;
    let a_in = read_input("a", a_path)?;
    let b_in = read_input("b", b_path)?;
    let space = io::space_from_json(&space_in.text)?;
    let a = Subset::new(&space, io::members_from_json(&space, &a_in.text)?)?;
    let b = Subset::new(&space, io::members_from_json(&space, &b_in.text)?)?;
    let report = json!({
        "kind": "hausdorff",
        "hausdorff": io::ext_f64_to_json(&a.hausdorff(&b)?),
        "set_gap": io::ext_f64_to_json(&a.gap(&b)?),
    });
    emit(&with_meta(report, meta(&[&space_in, &a_in, &b_in])));
    Ok(0)
}

fn cmd_product(a_path: &Path, b_path: &Path) -> Result<i32> {
    let a_in = read_input("a", a_path)?;
    let b_in = read_input("b", b_path)?;
    let a = io::space_from_json(&a_in.text)?;
    let b = io::space_from_json(&b_in.text)?;
    let p = a.box_product(&b)?;
    let report = with_meta(io::space_to_json(&p), meta(&[&a_in, &b_in]));
    emit(&report);
    Ok(0)
}

fn cmd_sample(model_path: &Path, window: &[String], resolution: &str) -> Result<i32> {
    let model_in = read_input("model", model_path)?;
    let model: Model1D = io::model_from_json(&model_in.text)?;
    if window.len() != 2 {
        bail!("--window takes exactly two rationals");
    }
    let lo = io::parse_rational(&json!(window[0]))?;
    let hi = io::parse_rational(&json!(window[1]))?;
    let res = io::parse_rational(&json!(resolution))?;
    let sampled = model.sample(&lo, &hi, &res)?;
    let mut report = io::space_q_to_json(&sampled);
    report.as_object_mut().unwrap().insert(
        "provenance".into(),
        json!({
            "window": [window[0], window[1]],
            "resolution": resolution,
        }),
    );
    emit(&with_meta(report, meta(&[&model_in])));
    Ok(0)
}

fn cmd_propcheck(suite: &str, seed: u64, trials: u64) -> Result<i32> {
    let report = match run_suite(suite, seed, trials) {
        Ok(r) => r,
        Err(e @ UnknownSuite(_)) => return Err(e.into()),
    };
    eprintln!(
        "suite {} finished in {} ms ({} failures)",
        report.suite,
        report.elapsed_ms,
        report.failures.len()
    );
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(if report.passed() { 0 } else { 1 })
}
