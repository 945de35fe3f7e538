//! Hochschild homology of the three resolutions of a 2-2 crossing with its
//! right strand closed, against the explicit modules over
//! `B = C[x1, x2, y1, y2]` and `A = B[z1] / (z1^2 - y1 z1 + y2)`, followed by
//! the kink shift statements for both colours.

use crate::algebra::TriPoincare;
use crate::error::Result;
use crate::hochschild::{hh_dims, hhh, koszul_closure};
use crate::presentations::present_cached;
use crate::webs::{local_web, ColouredBraid, Resolution, SegId};

use super::{Report, Tally};

/// Number of monomials of each real degree `0..=qmax` in free variables of
/// the given degrees.
pub(crate) fn free_hilbert(degs: &[u32], qmax: i64) -> Vec<i64> {
    let n = qmax.max(0) as usize + 1;
    let mut h = vec![0i64; n];
    h[0] = 1;
    for &d in degs {
        for q in d as usize..n {
            h[q] += h[q - d as usize];
        }
    }
    h
}

/// `Σ_k series(q - shifts[k])`, zero below degree 0.
pub(crate) fn shifted(series: &[i64], shifts: &[i64], q: i64) -> i64 {
    shifts.iter().map(|s| q - s).filter(|&x| x >= 0 && (x as usize) < series.len()).map(|x| series[x as usize]).sum()
}

/// Expected `HH^R_{hh}` Hilbert data as (base series, generator shifts).
struct Expect {
    name: &'static str,
    kind: Resolution,
    uses_a: bool,
    /// Generator q-degrees in Hochschild degrees 0, -1, -2.
    shifts: [&'static [i64]; 3],
}

const EXPECT: [Expect; 3] = [
    Expect { name: "twoarcs", kind: Resolution::TwoArcs, uses_a: false, shifts: [&[0], &[1, 3], &[4]] },
    // the -1 part is parametrized injectively by (g, h) in A x A, in degrees
    // 3 and 1 + deg(x2 - y2 - z1(x1 - y1)); the -2 part is generated in 4 + 4
    Expect { name: "square", kind: Resolution::Square, uses_a: true, shifts: [&[0], &[3, 5], &[8]] },
    // (c, d) in B x B sit in degrees 3 + deg(x1 - y1) and 3 + deg(x2 - y2);
    // p has degree 8
    Expect { name: "dumbbell", kind: Resolution::Dumbbell, uses_a: false, shifts: [&[0], &[5, 7], &[12]] },
];

fn resolution_tables(t: &mut Tally, qmax: i64) -> Result<()> {
    let b = free_hilbert(&[2, 4, 2, 4], qmax);
    let a: Vec<i64> = (0..b.len()).map(|q| b[q] + if q >= 2 { b[q - 2] } else { 0 }).collect();
    for e in &EXPECT {
        let ring = present_cached(&local_web(2, 2, e.kind)?);
        let factors = koszul_closure(&ring, &[1])?;
        let table = hh_dims(&ring, &factors, qmax)?;
        let base = if e.uses_a { &a } else { &b };
        for (k, shifts) in e.shifts.iter().enumerate() {
            let hh = -(k as i64);
            for q in 0..=qmax {
                let want = shifted(base, shifts, q);
                let got = table.dim(hh, q) as i64;
                t.expect(got == want, || format!("HH^R_{hh}({}) at q={q}: engine {got}, module {want}", e.name));
            }
        }
    }
    Ok(())
}

/// `z1^2 = y1 z1 - y2` holds in the square presentation once `t1` is
/// eliminated through `y1 = z1 + t1`, `y2 = z1 t1`.
fn square_quadratic(t: &mut Tally) -> Result<()> {
    let ring = present_cached(&local_web(2, 2, Resolution::Square)?);
    let z1 = ring.seg_e(SegId::Out(0, 0))[0].clone();
    let y = ring.seg_e(SegId::Bottom(1));
    let rel = &(&z1.pow(2) - &(&y[0] * &z1)) + &y[1];
    t.expect(ring.is_zero_class(&rel), || "z1^2 - y1 z1 + y2 is not zero in the square ring".into());
    t.expect(!ring.is_zero_class(&z1), || "z1 vanishes in the square ring".into());
    Ok(())
}

fn kink(colour: u8, sign: i32) -> ColouredBraid {
    ColouredBraid::new(vec![colour, colour], vec![sign]).expect("kink braid")
}

/// The kink statements: positive kinks leave the table unchanged, negative
/// ones shift it by `(h2, hh2, q2) = (2c, -2c, -2c)` for colour `c`.
pub(crate) fn kink_shifts(t: &mut Tally, qmax: i64) -> Result<()> {
    for c in [1u8, 2] {
        let c2 = 2 * c as i64;
        let unknot = hhh(&ColouredBraid::new(vec![c], vec![])?, qmax + c as i64)?;
        let want_pos = unknot.truncate(2 * qmax);
        let want_neg: TriPoincare = unknot.shift(c2, -c2, -c2).truncate(2 * qmax);
        let pos = hhh(&kink(c, 1), qmax)?;
        t.expect(pos.agrees_up_to(&want_pos, 2 * qmax), || format!("positive colour-{c} kink differs from the unknot"));
        let neg = hhh(&kink(c, -1), qmax)?;
        t.expect(neg.agrees_up_to(&want_neg, 2 * qmax), || format!("negative colour-{c} kink differs from the shifted unknot"));
    }
    Ok(())
}

/// Resolution tables and kink shifts up to `qmax`.
pub fn verify_markov2_oracles(qmax: u32) -> Report {
    let mut t = Tally::new("markov2");
    let q = qmax as i64;
    let steps: [fn(&mut Tally, i64) -> Result<()>; 3] = [resolution_tables, |t, _| square_quadratic(t), kink_shifts];
    for step in steps {
        if let Err(e) = step(&mut t, q) {
            t.fail(e.to_string());
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_of_free_rings() {
        assert_eq!(free_hilbert(&[2, 4], 8), vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
        assert_eq!(shifted(&[1, 0, 1], &[1, 2], 2), 1);
    }

    #[test]
    fn resolutions_match_modules() {
        let mut t = Tally::new("resolutions");
        resolution_tables(&mut t, 10).unwrap();
        square_quadratic(&mut t).unwrap();
        let r = t.finish();
        assert!(r.passed(), "{:?}", r.first_failure);
    }

    #[test]
    fn kinks_shift() {
        let r = verify_markov2_oracles(8);
        assert!(r.passed(), "{:?}", r.first_failure);
    }
}
