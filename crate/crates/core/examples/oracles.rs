//! Runs every oracle suite and prints the JSON reports.

use homcat::cli::verify_dsq;
use homcat::oracle::{verify_a2_cases, verify_markov2_oracles, verify_square_lemmas};

fn main() {
    let qmax = 8;
    let reports = [verify_square_lemmas(qmax), verify_markov2_oracles(qmax), verify_a2_cases(qmax), verify_dsq(qmax)];
    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
}
