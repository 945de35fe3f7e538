//! Zip elements `Δ(1)` in dumbbell presentations.
//!
//! For a zip of edges coloured `i` (left) and `j` (right) the element lives
//! in the dumbbell with bottom `[i, j]`; it is written in the elementary
//! functions of the top-left edge and the bottom-right edge.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{schur_from_elementary, MPoly, Partition, Rat};
use crate::webs::{LadderWeb, SegId, Slice};

use super::ring::{present_cached, RingPres};

/// `Σ_{α ⊆ (j^i)} (-1)^{|α|} s_α(TL) s_{conj(complement α)}(BR)`.
pub fn delta_general_in(i: usize, j: usize, tl: &[MPoly], br: &[MPoly]) -> MPoly {
    assert_eq!((tl.len(), br.len()), (i, j));
    let mut out = MPoly::zero();
    for alpha in Partition::in_box(i, j as u32) {
        let dual = alpha.complement(i, j as u32).conjugate();
        let sign = if alpha.size() % 2 == 0 { Rat::one() } else { -Rat::one() };
        let t = &schur_from_elementary(&alpha, tl) * &schur_from_elementary(&dual, br);
        out = &out + &t.scale(&sign);
    }
    out
}

/// `Σ_{j=0}^{k} (-1)^j x^{k-j} e'_j` with `x` the colour-1 top-left edge.
pub fn delta_1k_in(x: &MPoly, br: &[MPoly]) -> MPoly {
    let k = br.len();
    let mut out = MPoly::zero();
    for j in 0..=k {
        let e = if j == 0 { MPoly::one() } else { br[j - 1].clone() };
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        out = &out + &(&x.pow((k - j) as u32) * &e).scale(&sign);
    }
    out
}

/// The six-term element for two 2-edges.
pub fn delta_22_in(tl: &[MPoly], br: &[MPoly]) -> MPoly {
    let s = |v: &[u32], e: &[MPoly]| schur_from_elementary(&Partition::new(v), e);
    let terms: [(i64, &[u32], &[u32]); 6] = [
        (1, &[2, 2], &[]),
        (-1, &[2, 1], &[1]),
        (1, &[2], &[1, 1]),
        (1, &[1, 1], &[2]),
        (-1, &[1], &[2, 1]),
        (1, &[], &[2, 2]),
    ];
    let mut out = MPoly::zero();
    for (c, a, b) in terms {
        out = &out + &(&s(a, tl) * &s(b, br)).scale(&Rat::int(c));
    }
    out
}

/// The element used by zips: colour-1 left edges take the `Δ_{1k}`
/// normalization, everything else the partition formula.
pub fn zip_element(i: usize, j: usize, tl: &[MPoly], br: &[MPoly]) -> MPoly {
    if i == 1 {
        delta_1k_in(&tl[0], br)
    } else {
        delta_general_in(i, j, tl, br)
    }
}

/// Bottom `[i, j]`, merge, split back into `(i, j)`.
pub fn zip_dumbbell(i: u8, j: u8) -> LadderWeb {
    LadderWeb::new(vec![i, j], vec![Slice::Merge { pos: 0 }, Slice::Split { pos: 0, left: i, right: j }])
        .expect("valid dumbbell")
}

fn on_dumbbell(i: u8, j: u8, f: impl Fn(&[MPoly], &[MPoly]) -> MPoly) -> (Arc<RingPres>, MPoly) {
    let p = present_cached(&zip_dumbbell(i, j));
    let d = f(p.seg_e(SegId::Out(1, 0)), p.seg_e(SegId::Bottom(1)));
    (p, d)
}

pub fn delta_1k(k: u8) -> (Arc<RingPres>, MPoly) {
    on_dumbbell(1, k, |tl, br| delta_1k_in(&tl[0], br))
}

pub fn delta_22() -> (Arc<RingPres>, MPoly) {
    on_dumbbell(2, 2, delta_22_in)
}

pub fn delta_general(i: u8, j: u8) -> (Arc<RingPres>, MPoly) {
    on_dumbbell(i, j, |tl, br| delta_general_in(i as usize, j as usize, tl, br))
}

/// Checks that `Δ·(f(top) - f(bottom)) ≡ 0` for every elementary function
/// `f` of both small edges, and that merged-edge symmetric functions act
/// equally from both sides. Returns the first failing description.
pub fn check_bimodule(p: &RingPres, delta: &MPoly, qmax: u32) -> Option<String> {
    let degs = p.degrees();
    let dd = delta.q_degree(&degs).unwrap_or(0);
    let pairs = [(SegId::Bottom(0), SegId::Out(1, 0)), (SegId::Bottom(1), SegId::Out(1, 1))];
    for (lo, hi) in pairs {
        for (k, (a, b)) in p.seg_e(lo).iter().zip(p.seg_e(hi)).enumerate() {
            let d = dd + 2 * (k as u32 + 1);
            if d > qmax {
                continue;
            }
            let x = &(delta * a) - &(delta * b);
            if !p.coords(&x, d).is_empty() {
                return Some(format!("e{} of {:?} vs {:?} at q={}", k + 1, lo, hi, d));
            }
        }
    }
    let merged_lo = super::ring::e_union(&[p.seg_e(SegId::Bottom(0)), p.seg_e(SegId::Bottom(1))]);
    let merged_hi = super::ring::e_union(&[p.seg_e(SegId::Out(1, 0)), p.seg_e(SegId::Out(1, 1))]);
    for (k, (a, b)) in merged_lo.iter().zip(&merged_hi).enumerate() {
        let d = dd + 2 * (k as u32 + 1);
        if d <= qmax && !p.coords(&(&(a * delta) - &(delta * b)), d).is_empty() {
            return Some(format!("merged e{} at q={}", k + 1, d));
        }
    }
    None
}
