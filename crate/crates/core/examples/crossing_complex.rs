//! The resolution complex of a braid and the check that its differential
//! squares to zero.

use homcat::complexes::{braid_complex, check_d_squared};
use homcat::webs::ColouredBraid;

fn main() -> homcat::Result<()> {
    let b = ColouredBraid::new(vec![2, 2], vec![1, -1])?;
    let c = braid_complex(&b)?;
    for h in c.hom_degrees() {
        let objs: Vec<String> = c.objects_at(h).iter().map(|&o| format!("{:?}{{{}}}", c.objects[o].choice, c.objects[o].q_shift)).collect();
        println!("h = {h:>2}: {}", objs.join(" ⊕ "));
    }
    println!("Euler characteristic of the q = 4 slices: {}", c.euler_at(4));
    println!("{} arrows", c.arrows.len());
    println!("{:?}", check_d_squared(&c, 6)?);
    Ok(())
}
