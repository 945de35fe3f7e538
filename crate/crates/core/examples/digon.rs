//! Slice dimensions of a digon against a quantum binomial times the arc.

use homcat::algebra::quantum::quantum_binomial_coeffs;
use homcat::presentations::present_cached;
use homcat::webs::{LadderWeb, Slice};

fn main() -> homcat::Result<()> {
    for (i, j) in [(1u8, 1u8), (1, 2), (2, 2)] {
        let digon = LadderWeb::new(vec![i + j], vec![Slice::Split { pos: 0, left: i, right: j }, Slice::Merge { pos: 0 }])?;
        let (d, arc) = (present_cached(&digon), present_cached(&LadderWeb::identity(&[i + j])));
        let binom = quantum_binomial_coeffs((i + j) as i64, i as i64)?;
        println!("({i},{j}) digon, binomial coefficients {binom:?}");
        for q in (0..=10u32).step_by(2) {
            let want: i64 = binom.iter().enumerate().filter(|&(k, _)| 2 * k as u32 <= q).map(|(k, &c)| c * arc.slice_dim(q - 2 * k as u32) as i64).sum();
            println!("  q = {q:>2}: {:>3} = {want}", d.slice_dim(q));
        }
    }
    Ok(())
}
