//! The zip elements on dumbbell webs and their bimodule-map test.

use homcat::presentations::delta::{check_bimodule, delta_1k, delta_22, delta_general};

fn main() {
    for k in 1..=3 {
        let (p, d) = delta_1k(k);
        println!("delta_1k({k}) = {}  bimodule: {:?}", p.display_poly(&d), check_bimodule(&p, &d, 12).is_none());
    }
    let (p, d) = delta_22();
    println!("delta_22 = {}", p.display_poly(&d));
    println!("  equals delta_general(2,2): {}", delta_general(2, 2).1 == d);
    for (i, j) in [(2, 1), (1, 3)] {
        let (p, d) = delta_general(i, j);
        println!("delta_general({i},{j}) has {} terms, bimodule: {}", d.len(), check_bimodule(&p, &d, 12).is_none());
    }
}
