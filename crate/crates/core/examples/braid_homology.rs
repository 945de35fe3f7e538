//! Triply graded homology of a coloured braid closure, raw and shifted.
//!
//! `cargo run --release --example braid_homology -- 2,2 1,1 4`

use homcat::hochschild::{h12, hhh};
use homcat::webs::{diagram_stats, ColouredBraid};

fn main() -> homcat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let colours = args.first().map_or("2,2", String::as_str);
    let word = args.get(1).map_or("1,1", String::as_str);
    let qmax: i64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let b = ColouredBraid::parse(colours, word)?;
    println!("{:?}", diagram_stats(&b));
    let raw = hhh(&b, qmax)?;
    let inv = h12(&b, qmax)?;
    println!("hhh: {} rows, total {}", raw.rows().len(), raw.total_dim());
    println!("h12 (h2, hh2, q2, dim):");
    for r in inv.rows() {
        println!("  {:>3} {:>3} {:>3} {}", r.h2, r.hh2, r.q2, r.dim);
    }
    Ok(())
}
