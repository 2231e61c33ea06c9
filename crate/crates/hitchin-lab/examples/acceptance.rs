//! Runs the twelve acceptance checks and prints one line per check.

use hitchin_lab::painleve::default_table;
use hitchin_lab::suite::{run_all, DEFAULT_SEED};

fn main() {
    let outcomes = run_all(default_table(), DEFAULT_SEED);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} passed", outcomes.len() - failed, outcomes.len());
}
