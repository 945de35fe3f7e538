//! Exact ranks over Q and over the prime field.

use homcat::algebra::{Fp, Rat};
use homcat::linalg::{rank, QMat};

fn main() {
    let m = QMat::from_rows(&[vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
    println!("rank over Q: {}", rank(&m));
    let mf = m.convert(Fp::from_rat);
    println!("rank over F_p: {}", rank(&mf));
    let h = QMat::from_rows(&(1..=5).map(|i| (1..=5).map(|j| Rat::new(1, i + j - 1)).collect()).collect::<Vec<_>>());
    println!("5x5 Hilbert matrix rank: {}", rank(&h));
}
