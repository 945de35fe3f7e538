//! Hochschild homology of a dumbbell with only its right strand closed.

use homcat::hochschild::{hh_dims, koszul_closure};
use homcat::presentations::{delta::zip_dumbbell, present_cached};

fn main() -> homcat::Result<()> {
    let ring = present_cached(&zip_dumbbell(2, 1));
    let factors = koszul_closure(&ring, &[1])?;
    println!("{} Koszul factors, shifts {:?}", factors.len(), factors.iter().map(|f| f.shift()).collect::<Vec<_>>());
    let table = hh_dims(&ring, &factors, 8)?;
    println!("(hh2, q2, dim)");
    for (hh2, q2, dim) in table.rows() {
        println!("  {hh2:>3} {q2:>3} {dim}");
    }
    Ok(())
}
