use chainscope_lab::{run_suite, SUITE_NAMES};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(7);
    let trials: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(25);
    for name in SUITE_NAMES {
        let t0 = std::time::Instant::now();
        let report = run_suite(name, seed, trials).unwrap();
        println!(
            "{name}: {} failures in {:?}",
            report.failures.len(),
            t0.elapsed()
        );
        for f in report.failures.iter().take(3) {
            println!("  [{}] {} :: {}", f.trial, f.assertion, f.witness);
        }
    }
}
