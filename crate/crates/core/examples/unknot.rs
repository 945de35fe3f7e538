//! Homology of the coloured unknots against the product formula.

use homcat::hochschild::{euler_bracket, hhh};
use homcat::moybracket::closed_form_a1;
use homcat::webs::ColouredBraid;

fn main() -> homcat::Result<()> {
    let qmax = 8;
    for k in [1u8, 2] {
        let t = hhh(&ColouredBraid::new(vec![k], vec![])?, qmax)?;
        println!("colour {k}: (h2, hh2, q2, dim)");
        for r in t.rows() {
            println!("  {:>3} {:>3} {:>3} {}", r.h2, r.hh2, r.q2, r.dim);
        }
        let same = euler_bracket(&t)?.agrees_up_to(&closed_form_a1(k, qmax), 2 * qmax);
        println!("  matches the product formula: {same}");
    }
    Ok(())
}
