use std::process::ExitCode;
use std::time::{Duration, Instant};

use misere_core::suites::{run_suite, SuiteConfig};

struct Criterion {
    id: u32,
    name: &'static str,
    suites: &'static [&'static str],
    limit: Option<Duration>,
}

const CRITERIA: [Criterion; 7] = [
    Criterion {
        id: 1,
        name: "figure fixtures",
        suites: &["fixtures"],
        limit: Some(Duration::from_secs(1)),
    },
    Criterion {
        id: 2,
        name: "class equalities on random DAGs",
        suites: &["equalities"],
        limit: Some(Duration::from_secs(30)),
    },
    Criterion {
        id: 3,
        name: "sum laws",
        suites: &["sums"],
        limit: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 4,
        name: "named position labels",
        suites: &["spot_labels"],
        limit: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 5,
        name: "P-position oracles",
        suites: &["wythoff", "wyt_ab"],
        limit: Some(Duration::from_secs(120)),
    },
    Criterion {
        id: 6,
        name: "family class verdicts",
        suites: &["families"],
        limit: Some(Duration::from_secs(300)),
    },
    Criterion {
        id: 7,
        name: "adjoined terminal equivalence",
        suites: &["adjoined_terminal"],
        limit: None,
    },
];

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut all_ok = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let mut total = 0;
        let mut failed = Vec::new();
        for suite in c.suites {
            match run_suite(suite, &cfg) {
                Ok(reports) => {
                    for r in reports {
                        for check in r.checks {
                            total += 1;
                            if !check.passed {
                                failed.push(format!(
                                    "{} / {}: {}",
                                    r.suite, check.name, check.detail
                                ));
                            }
                        }
                    }
                }
                Err(e) => failed.push(format!("{suite}: error {e}")),
            }
        }
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed < l);
        let ok = failed.is_empty() && total > 0 && in_time;
        all_ok &= ok;
        let limit = c.limit.map_or("no limit".to_string(), |l| {
            format!("limit {} s", l.as_secs())
        });
        println!(
            "{} criterion {}: {} ({}/{} checks, {:.3} s, {limit})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            total - failed.len(),
            total,
            elapsed.as_secs_f64()
        );
        for f in failed {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
