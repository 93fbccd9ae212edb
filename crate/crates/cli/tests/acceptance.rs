//! Runs the acceptance table for three seeds and prints one line per
//! criterion. Fails on any failure not listed as a documented deviation,
//! and on a documented deviation that no longer reproduces.

use std::process::ExitCode;

use pdlab::exact::{DEFAULT_HEIGHT, DEFAULT_RETRIES};
use pdlab_cli::acceptance::{run_criterion, AcceptanceConfig, KNOWN_DEVIATIONS, TITLES};

const SEEDS: [u64; 3] = [1, 2, 3];

fn main() -> ExitCode {
    let cfg = AcceptanceConfig {
        seeds: SEEDS.to_vec(),
        height: DEFAULT_HEIGHT,
        retries: DEFAULT_RETRIES,
        criteria: Vec::new(),
    };
    let mut ok = true;
    for id in 1..=TITLES.len() {
        let r = run_criterion(id, &cfg);
        println!("{} in {:.1} s", r.summary_line(), r.elapsed().as_secs_f64());
        for run in &r.runs {
            for it in run.items.iter().filter(|i| !i.pass) {
                println!(
                    "    seed {}: {}: expected {}, observed {}{}",
                    run.seed,
                    it.name,
                    it.expected,
                    it.observed,
                    if it.documented { " (documented deviation)" } else { "" }
                );
            }
        }
        if !r.only_documented_failures() {
            ok = false;
        }
        for (c, name, why) in KNOWN_DEVIATIONS.iter().filter(|(c, _, _)| *c == id) {
            let reproduced = r
                .runs
                .iter()
                .all(|run| run.items.iter().any(|i| i.name == *name && i.documented));
            if !reproduced {
                println!("    documented deviation of criterion {c} did not reproduce: {name}");
                ok = false;
            } else {
                println!("    documented: {name}: {why}");
            }
        }
    }
    if ok {
        println!("acceptance: all failures are documented deviations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: undocumented failures");
        ExitCode::FAILURE
    }
}
