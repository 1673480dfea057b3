use std::process::ExitCode;
use std::time::Instant;

use qblocks_core::checks::{self, Report};
use qblocks_core::Rat;

fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, Box<dyn Fn() -> Report>)> = vec![
        (1, Box::new(|| checks::sl2_calibration(int(20)))),
        (2, Box::new(|| checks::n1_false_theta(int(50), 12))),
        (3, Box::new(|| checks::forms_agree_sl2(int(15)))),
        (4, Box::new(|| checks::zhat_match(int(15), int(120)))),
        (5, Box::new(|| checks::multiplicity_oracles(&["A1", "A2", "A3", "D4"], 10_000))),
        (6, Box::new(|| checks::borel_weil(&["A1", "A2"], 100))),
        (7, Box::new(|| checks::convolution_binomial(200, 5))),
        (8, Box::new(|| checks::condition_one(&["A1", "A2"], 7, 6))),
        (9, Box::new(|| checks::a2_smoke(int(10)))),
    ];
    // Optional criterion numbers restrict the run; other arguments are ignored.
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    let mut details = Vec::new();
    for (n, run) in criteria.iter().filter(|(n, _)| only.is_empty() || only.contains(n)) {
        let start = Instant::now();
        let rep = run();
        let status = if rep.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {n}: {status} {} ({} cases, {} failures, {:.1}s)",
            rep.name,
            rep.cases,
            rep.failures,
            start.elapsed().as_secs_f64()
        );
        if !rep.passed() {
            failed.push(*n);
        }
        details.push((n, rep));
    }
    println!();
    for (n, rep) in details {
        if !rep.notes.is_empty() || !rep.sub.is_empty() {
            println!("criterion {n} detail:\n  {}", rep.to_string().replace('\n', "\n  "));
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("\nfailing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
