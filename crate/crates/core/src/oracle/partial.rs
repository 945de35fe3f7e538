//! The four partial closures of the dumbbell `(i, j)`, `i, j in {1, 2}`,
//! with the right strand closed, against the explicit modules over the
//! free ring on the surviving variables.

use crate::error::Result;
use crate::hochschild::{hh_dims, koszul_closure};
use crate::presentations::delta::zip_dumbbell;
use crate::presentations::present_cached;

use super::kinks::{free_hilbert, shifted};
use super::{Report, Tally};

struct Case {
    i: u8,
    j: u8,
    /// Degrees of the free variables `x_1..x_i, y_1..y_j`.
    degs: &'static [u32],
    /// Generator q-degrees in Hochschild degrees `0, -1, ..., -j`.
    shifts: &'static [&'static [i64]],
}

const CASES: [Case; 4] = [
    // (x1 - y1) C[x1, y1] {1}
    Case { i: 1, j: 1, degs: &[2, 2], shifts: &[&[0], &[3]] },
    // (x2 - x1 y1 + y1^2) C[x1, x2, y1] {1}
    Case { i: 2, j: 1, degs: &[2, 4, 2], shifts: &[&[0], &[5]] },
    // (c, d) -> (c (x1 - y1) + d y2, -c + d x1) is injective; then
    // (x1^2 - x1 y1 + y2) C[x1, y1, y2] {4}
    Case { i: 1, j: 2, degs: &[2, 2, 4], shifts: &[&[0], &[3, 5], &[8]] },
    Case { i: 2, j: 2, degs: &[2, 4, 2, 4], shifts: &[&[0], &[5, 7], &[12]] },
];

fn check_case(t: &mut Tally, c: &Case, qmax: i64) -> Result<()> {
    let ring = present_cached(&zip_dumbbell(c.i, c.j));
    let table = hh_dims(&ring, &koszul_closure(&ring, &[1])?, qmax)?;
    let base = free_hilbert(c.degs, qmax);
    for (k, shifts) in c.shifts.iter().enumerate() {
        let hh = -(k as i64);
        for q in 0..=qmax {
            let want = shifted(&base, shifts, q);
            let got = table.dim(hh, q) as i64;
            t.expect(got == want, || format!("HH^R_{hh} of the ({},{}) closure at q={q}: engine {got}, module {want}", c.i, c.j));
        }
    }
    Ok(())
}

/// Engine tables of the four partial closures against the modules, `q <= qmax`.
pub fn verify_a2_cases(qmax: u32) -> Report {
    let mut t = Tally::new("a2");
    for c in &CASES {
        if let Err(e) = check_case(&mut t, c, qmax as i64) {
            t.fail(e.to_string());
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cases() {
        let r = verify_a2_cases(10);
        assert!(r.passed(), "{:?}", r.first_failure);
    }
}
