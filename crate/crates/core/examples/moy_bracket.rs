//! The web-evaluation bracket of a braid, its normalization, and agreement
//! with the Euler characteristic of the homology.

use homcat::hochschild::{euler_bracket, hhh};
use homcat::moybracket::{bracket, normalized_bracket};
use homcat::webs::ColouredBraid;

fn half(x: i64) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("({x}/2)")
    }
}

fn main() -> homcat::Result<()> {
    let qmax = 5;
    for (c, w) in [(vec![1, 1], vec![1]), (vec![2, 2], vec![1]), (vec![1, 2], vec![1, 1])] {
        let b = ColouredBraid::new(c.clone(), w.clone())?;
        let br = bracket(&b, qmax)?;
        let terms: Vec<String> = br.terms().map(|(&(t2, q2), c)| format!("{c}·t^{}·q^{}", half(t2), half(q2))).collect();
        println!("{c:?} {w:?}: {}", terms.join(" + "));
        println!("  normalized prefactor: {:?}", normalized_bracket(&b, qmax)?.prefactor());
        println!("  equals Euler characteristic: {}", euler_bracket(&hhh(&b, qmax)?)?.agrees_up_to(&br, 2 * qmax));
    }
    Ok(())
}
