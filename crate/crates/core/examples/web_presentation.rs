//! Reads a web from JSON, prints its ring presentation and slice dimensions,
//! and checks them against the dense oracle.
//!
//! `cargo run --example web_presentation -- tests/fixtures/square_22.json`

use homcat::oracle::dense_slice_dim;
use homcat::presentations::present_cached;
use homcat::webs::LadderWeb;

fn main() -> homcat::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/square_22.json").into());
    let web = LadderWeb::from_json(&std::fs::read_to_string(path)?)?;
    println!("{web}");
    let p = present_cached(&web);
    println!("{} variables, {} relations", p.nvars(), p.relations().len());
    for r in p.relations() {
        println!("  {} = 0", p.display_poly(r));
    }
    println!("after eliminating linear variables: {} variables, {} relations", p.reduced_nvars(), p.reduced_relations());
    for q in (0..=12).step_by(2) {
        println!("  q = {q:>2}: dim {:>4} (dense {})", p.slice_dim(q), dense_slice_dim(&p, q));
    }
    Ok(())
}
