//! Schur polynomials, the Jacobi-Trudi forms and quantum binomials.

use homcat::algebra::quantum::quantum_binomial_coeffs;
use homcat::algebra::schur::{elementary, schur_from_elementary};
use homcat::algebra::{schur, MPoly, Partition};

fn main() -> homcat::Result<()> {
    let vars = [0, 1, 2];
    let e: Vec<MPoly> = (1..=3).map(|k| elementary(k, &vars)).collect();
    for parts in [&[1][..], &[2], &[1, 1], &[2, 1], &[2, 2]] {
        let lambda = Partition::new(parts);
        let direct = schur(&lambda, &vars);
        let dual = schur_from_elementary(&lambda, &e);
        println!("s_{lambda} has {} terms; dual Jacobi-Trudi agrees: {}", direct.len(), direct == dual);
    }
    for n in 1..=4 {
        let row: Vec<_> = (0..=n).map(|m| quantum_binomial_coeffs(n, m).unwrap()).collect();
        println!("[{n} choose m]: {row:?}");
    }
    Ok(())
}
