//! Complexes of web bimodules: one per crossing, tensored along a braid.
//!
//! Objects of a braid complex are the vertices of the cube of resolution
//! choices; arrows change the choice at one crossing by one step.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rat;
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::presentations::{present_cached, MapDesc, RingPres, Rewriter};
use crate::webs::{block_offsets, crossing_terms, resolve_braid, ColouredBraid, LadderWeb};

/// One move of a local differential, in coordinates of the crossing block.
#[derive(Clone, Copy, Debug)]
enum Op {
    Zip(usize, usize),
    Unzip(usize),
    Create(usize, usize, u8, u8),
    Annihilate(usize, usize, usize),
    SplitAssoc(usize),
    MergeAssoc(usize),
}

/// The moves of the differential leaving resolution `from` of a crossing.
fn differential_ops(c1: u8, c2: u8, sign: i32, from: usize) -> Vec<Op> {
    use Op::*;
    match (c1, c2, sign, from) {
        (1, 1, 1, 0) => vec![Zip(0, 0)],
        (1, 1, _, 0) => vec![Unzip(0)],
        (2, 1, 1, 0) => vec![Zip(0, 0), SplitAssoc(1), Annihilate(2, 0, 1)],
        (2, 1, _, 0) => vec![Create(2, 1, 1, 1), SplitAssoc(1), Unzip(0)],
        (1, 2, 1, 0) => vec![Zip(0, 0), SplitAssoc(1), Annihilate(2, 1, 1)],
        (1, 2, _, 0) => vec![Create(2, 0, 1, 1), SplitAssoc(1), Unzip(0)],
        (2, 2, 1, 0) => vec![Create(0, 1, 1, 1), Zip(1, 0)],
        (2, 2, 1, 1) => {
            vec![Zip(2, 0), MergeAssoc(1), SplitAssoc(3), Annihilate(4, 0, 1), Annihilate(0, 0, 1)]
        }
        (2, 2, _, 0) => vec![Create(0, 1, 1, 1), Create(4, 1, 1, 1), MergeAssoc(1), SplitAssoc(3), Unzip(2)],
        (2, 2, _, 1) => vec![Unzip(1), Annihilate(0, 0, 1)],
        _ => unreachable!("no differential leaves resolution {from} of ({c1},{c2},{sign})"),
    }
}

fn run_ops(start: &LadderWeb, ops: &[Op], level: usize, pos: usize) -> Result<Rewriter> {
    let mut r = Rewriter::new(start);
    for &op in ops {
        r = match op {
            Op::Zip(k, p) => r.zip(k + level, p + pos)?,
            Op::Unzip(k) => r.unzip(k + level)?,
            Op::Create(k, p, a, b) => r.create(k + level, p + pos, a, b)?,
            Op::Annihilate(k, side, power) => r.annihilate(k + level, side, power)?,
            Op::SplitAssoc(k) => r.split_assoc(k + level)?,
            Op::MergeAssoc(k) => r.merge_assoc(k + level)?,
        };
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct Object {
    /// Resolution index at every crossing.
    pub choice: Vec<usize>,
    pub web: LadderWeb,
    pub ring: Arc<RingPres>,
    pub hom_degree: i64,
    /// q-shift in real units.
    pub q_shift: i64,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// The crossing whose resolution changes.
    pub crossing: usize,
    pub map: MapDesc,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct BimComplex {
    pub bottom: Vec<u8>,
    pub top: Vec<u8>,
    pub objects: Vec<Object>,
    pub arrows: Vec<Arrow>,
}

impl BimComplex {
    pub fn hom_degrees(&self) -> Vec<i64> {
        self.objects.iter().map(|o| o.hom_degree).sorted().dedup().collect()
    }

    pub fn objects_at(&self, h: i64) -> Vec<usize> {
        (0..self.objects.len()).filter(|&i| self.objects[i].hom_degree == h).collect()
    }

    pub fn arrows_from(&self, o: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == o)
    }

    /// Signed matrix of an arrow on the slice of total degree `q` of its source.
    pub fn arrow_matrix(&self, a: &Arrow, q: i64) -> Result<QMat> {
        let src = &self.objects[a.src];
        let d = q - src.q_shift;
        let n = if d < 0 { 0 } else { src.ring.slice_dim(d as u32) };
        let dd = q - self.objects[a.dst].q_shift;
        let m = if dd < 0 { 0 } else { self.objects[a.dst].ring.slice_dim(dd as u32) };
        if n == 0 || m == 0 {
            return Ok(QMat::zero(m, n));
        }
        let f = a.map.realize(d as u32)?;
        Ok(if a.sign < 0 { f.scale(&-Rat::one()) } else { f })
    }

    /// Euler characteristic at total degree `q`: `Σ (-1)^h dim`.
    pub fn euler_at(&self, q: i64) -> i64 {
        self.objects
            .iter()
            .map(|o| {
                let d = q - o.q_shift;
                let dim = if d < 0 { 0 } else { o.ring.slice_dim(d as u32) as i64 };
                if o.hom_degree % 2 == 0 { dim } else { -dim }
            })
            .sum()
    }
}

/// The complex of a braid: tensor product of its crossing complexes.
pub fn braid_complex(b: &ColouredBraid) -> Result<BimComplex> {
    let crossings = b.crossings();
    let terms: Vec<_> = crossings.iter().map(|&(c1, c2, s)| crossing_terms(c1, c2, s)).collect::<Result<_>>()?;
    let choices: Vec<Vec<usize>> = terms.iter().map(|t| 0..t.len()).multi_cartesian_product().collect();
    let choices = if crossings.is_empty() { vec![Vec::new()] } else { choices };
    let mut objects = Vec::with_capacity(choices.len());
    let mut index = HashMap::new();
    for ch in choices {
        let web = resolve_braid(b, &ch)?;
        let hom_degree = ch.iter().enumerate().map(|(k, &c)| terms[k][c].hom_degree).sum();
        let q_shift = ch.iter().enumerate().map(|(k, &c)| terms[k][c].q_shift).sum();
        index.insert(ch.clone(), objects.len());
        objects.push(Object { ring: present_cached(&web), web, choice: ch, hom_degree, q_shift });
    }
    let specs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|o| (0..crossings.len()).map(move |c| (o, c)))
        .filter(|&(o, c)| objects[o].choice[c] + 1 < terms[c].len())
        .collect();
    let arrows = specs
        .into_par_iter()
        .map(|(o, c)| {
            let src = &objects[o];
            let mut next = src.choice.clone();
            next[c] += 1;
            let dst = index[&next];
            let (c1, c2, s) = crossings[c];
            let level = block_offsets(b, &src.choice)?[c];
            let pos = b.word[c].unsigned_abs() as usize - 1;
            let ops = differential_ops(c1, c2, s, src.choice[c]);
            let map = run_ops(&src.web, &ops, level, pos)?.finish_at(&objects[dst].web)?;
            let earlier: i64 = (0..c).map(|k| terms[k][src.choice[k]].hom_degree).sum();
            let shift_ok = map.shift() == src.q_shift - objects[dst].q_shift;
            if !shift_ok {
                return Err(Error::NotChainMap(format!("crossing {c}: map of degree {} between shifts", map.shift())));
            }
            Ok(Arrow { src: o, dst, crossing: c, map, sign: if earlier % 2 == 0 { 1 } else { -1 } })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BimComplex { bottom: b.colours.clone(), top: b.top_colours(), objects, arrows })
}

/// The complex of a single crossing on two strands.
pub fn crossing_complex(c1: u8, c2: u8, sign: i32) -> Result<BimComplex> {
    braid_complex(&ColouredBraid::new(vec![c1, c2], vec![sign])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredReport {
    pub ok: bool,
    pub checked: usize,
    pub first_failure: Option<String>,
}

/// Realizes every two-step composite `o → o''` on the source slices of
/// degree up to `qmax` and reports the first one that is nonzero.
pub fn check_d_squared(c: &BimComplex, qmax: i64) -> Result<DSquaredReport> {
    let mut jobs = Vec::new();
    for (o, obj) in c.objects.iter().enumerate() {
        let mut targets: Vec<usize> = Vec::new();
        for a in c.arrows_from(o) {
            for b in c.arrows_from(a.dst) {
                if !targets.contains(&b.dst) {
                    targets.push(b.dst);
                }
            }
        }
        for t in targets {
            for d in (0..=qmax).step_by(2) {
                jobs.push((o, t, d + obj.q_shift));
            }
        }
    }
    let checked = jobs.len();
    let results: Vec<Result<Option<String>>> = jobs
        .par_iter()
        .map(|&(o, t, q)| {
            let mut sum: Option<QMat> = None;
            for a in c.arrows_from(o) {
                for b in c.arrows_from(a.dst).filter(|b| b.dst == t) {
                    let m = c.arrow_matrix(b, q)?.mul(&c.arrow_matrix(a, q)?);
                    sum = Some(match sum {
                        Some(s) => s.add(&m),
                        None => m,
                    });
                }
            }
            let bad = sum.is_some_and(|s| !s.is_zero());
            let d = q - c.objects[o].q_shift;
            Ok(bad.then(|| format!("{:?} -> {:?} on the degree {d} slice", c.objects[o].choice, c.objects[t].choice)))
        })
        .collect();
    let mut first_failure = None;
    for r in results {
        if let Some(msg) = r? {
            first_failure.get_or_insert(msg);
        }
    }
    Ok(DSquaredReport { ok: first_failure.is_none(), checked, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MPoly;

    #[test]
    fn single_crossings_square_to_zero() {
        for (c1, c2) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            for s in [1, -1] {
                let c = crossing_complex(c1, c2, s).unwrap();
                let r = check_d_squared(&c, 10).unwrap();
                assert!(r.ok, "({c1},{c2},{s}): {:?}", r.first_failure);
            }
        }
    }

    #[test]
    fn shapes() {
        let e = braid_complex(&ColouredBraid::new(vec![2], vec![]).unwrap()).unwrap();
        assert_eq!((e.objects.len(), e.objects[0].hom_degree, e.objects[0].q_shift), (1, 0, 0));
        assert!(check_d_squared(&e, 4).unwrap().ok);
        let c = crossing_complex(1, 1, 1).unwrap();
        assert_eq!(c.hom_degrees(), vec![-1, 0]);
        let r = braid_complex(&ColouredBraid::new(vec![2, 2], vec![1, -1]).unwrap()).unwrap();
        assert_eq!(r.objects.len(), 9);
        assert_eq!(r.hom_degrees(), vec![-2, -1, 0, 1, 2]);
        for (c1, c2) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            for s in [1, -1] {
                let c = crossing_complex(c1, c2, s).unwrap();
                let zero = &c.objects[c.objects_at(0)[0]];
                assert_eq!(zero.web.slices.len(), 2, "hom 0 object is the dumbbell");
            }
        }
    }

    #[test]
    fn mixed_crossing_differentials() {
        let c = crossing_complex(2, 1, 1).unwrap();
        let f = &c.arrows[0].map;
        let (img, d) = f.apply(&MPoly::one(), 0).unwrap();
        let dst = f.dst();
        let x = |n: &str| MPoly::var(dst.var_by_name(n).unwrap());
        assert_eq!(d, 2);
        assert!(dst.is_zero_class(&(&img - &(&x("t1.1") - &x("b2.1")))));
        // the negative differential is the canonical inclusion
        let c = crossing_complex(2, 1, -1).unwrap();
        let f = &c.arrows[0].map;
        for v in f.src().vars() {
            let (img, _) = f.apply(&MPoly::var(f.src().var_by_name(&v.name).unwrap()), v.degree).unwrap();
            let same = MPoly::var(f.dst().var_by_name(&v.name).unwrap());
            assert!(f.dst().is_zero_class(&(&img - &same)), "{}", v.name);
        }
    }

    #[test]
    fn corrupted_sign_is_caught() {
        let mut c = braid_complex(&ColouredBraid::new(vec![1, 1, 1], vec![1, 2]).unwrap()).unwrap();
        assert!(check_d_squared(&c, 4).unwrap().ok);
        let i = c.arrows.iter().position(|a| a.crossing == 1 && a.sign == -1).unwrap();
        c.arrows[i].sign = 1;
        let r = check_d_squared(&c, 4).unwrap();
        assert!(!r.ok);
        let at = format!("{:?}", c.objects[c.arrows[i].src].choice);
        assert!(r.first_failure.unwrap().contains(&at));
    }
}
