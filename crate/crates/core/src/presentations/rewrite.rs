//! Local web rewrites (zips, digons, associativity) as presentation maps.
//!
//! A `Rewriter` starts at a ladder web and accumulates a `MapDesc` while it
//! edits the web one move at a time. Slice indices `k` and positions `p` are
//! 0-based and refer to the web as it is before the move.

use std::sync::Arc;

use crate::algebra::{MPoly, Rat};
use crate::error::{Error, Result};
use crate::webs::{LadderWeb, SegId, Slice};

use super::delta::zip_element;
use super::maps::MapDesc;
use super::ring::{e_union, present_cached, RingPres};

/// Where a segment's elementary functions go.
#[derive(Clone, Debug)]
enum Img {
    Seg(SegId),
    Union(Vec<SegId>),
    /// Variables that the step handles itself.
    Skip,
}

#[derive(Clone, Debug)]
pub struct Rewriter {
    web: LadderWeb,
    map: MapDesc,
}

fn seg_poly(to: &RingPres, s: SegId) -> Result<Vec<MPoly>> {
    to.layout()
        .and_then(|l| l.seg_e.get(&s))
        .cloned()
        .ok_or_else(|| Error::Domain(format!("segment {s:?} missing from target web")))
}

/// Images of the variables of `from` in `to`. Segments default to
/// themselves, with slice indices `>= at` moved by `delta`; separate top
/// blocks go to the top of `to`.
fn var_images(from: &RingPres, to: &RingPres, over: &[(SegId, Img)], at: usize, delta: isize) -> Result<Vec<MPoly>> {
    let layout = from.layout().expect("web presentation");
    let mut img: Vec<Option<MPoly>> = vec![None; from.nvars()];
    for (&seg, vars) in &layout.seg_vars {
        let target = match over.iter().find(|(s, _)| *s == seg) {
            Some((_, i)) => i.clone(),
            None => Img::Seg(match seg {
                SegId::Out(j, o) if j >= at => SegId::Out((j as isize + delta) as usize, o),
                s => s,
            }),
        };
        let e = match target {
            Img::Skip => vec![MPoly::zero(); vars.len()],
            Img::Seg(s) => seg_poly(to, s)?,
            Img::Union(ss) => {
                let parts = ss.iter().map(|&s| seg_poly(to, s)).collect::<Result<Vec<_>>>()?;
                e_union(&parts.iter().map(|p| p.as_slice()).collect::<Vec<_>>())
            }
        };
        if e.len() != vars.len() {
            return Err(Error::Domain(format!("segment {seg:?} mapped to an edge of another colour")));
        }
        for (&v, p) in vars.iter().zip(e) {
            img[v as usize] = Some(p);
        }
    }
    for (p, block) in from.top_vars().iter().enumerate() {
        let t = to.top_e(p);
        for (i, &v) in block.iter().enumerate() {
            img[v as usize].get_or_insert_with(|| t[i].clone());
        }
    }
    img.into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| Error::Domain(format!("no image for {}", from.vars()[v].name))))
        .collect()
}

impl Rewriter {
    pub fn new(web: &LadderWeb) -> Self {
        Rewriter { web: web.clone(), map: MapDesc::identity(present_cached(web)) }
    }

    pub fn web(&self) -> &LadderWeb {
        &self.web
    }

    pub fn ring(&self) -> &Arc<RingPres> {
        self.map.dst()
    }

    pub fn finish(self) -> MapDesc {
        self.map
    }

    /// Finishes, checking that the web reached is `want`.
    pub fn finish_at(self, want: &LadderWeb) -> Result<MapDesc> {
        if &self.web != want {
            return Err(Error::Domain(format!("rewrite ended at {} instead of {}", self.web, want)));
        }
        Ok(self.map)
    }

    fn slice(&self, k: usize) -> Result<Slice> {
        self.web.slices.get(k).copied().ok_or_else(|| Error::Domain(format!("no slice {k}")))
    }

    fn with_slices(&self, k: usize, remove: usize, insert: &[Slice]) -> Result<LadderWeb> {
        let mut slices = self.web.slices.clone();
        slices.splice(k..k + remove, insert.iter().copied());
        LadderWeb::new(self.web.bottom.clone(), slices)
    }

    fn hom(mut self, dst_web: LadderWeb, over: &[(SegId, Img)], at: usize, delta: isize, mult: Option<MPoly>) -> Result<Self> {
        let dst = present_cached(&dst_web);
        let images = var_images(self.ring(), &dst, over, at, delta)?;
        self.map = self.map.poly(dst, images, mult.unwrap_or_else(MPoly::one))?;
        self.web = dst_web;
        Ok(self)
    }

    /// Zip of the edges at positions `p, p+1` of level `k`: inserts a
    /// merge-split pair and multiplies by the zip element.
    pub fn zip(self, k: usize, p: usize) -> Result<Self> {
        let levels = self.web.levels();
        let lev = levels.get(k).ok_or_else(|| Error::Domain(format!("no level {k}")))?;
        if p + 1 >= lev.len() {
            return Err(Error::Domain(format!("zip position {p} on a level of width {}", lev.len())));
        }
        let (a, b) = (lev[p], lev[p + 1]);
        let br = self.web.segment_levels()[k][p + 1];
        let dst_web = self.with_slices(k, 0, &[Slice::Merge { pos: p }, Slice::Split { pos: p, left: a, right: b }])?;
        let dst = present_cached(&dst_web);
        let delta = zip_element(a as usize, b as usize, dst.seg_e(SegId::Out(k + 1, 0)), dst.seg_e(br));
        self.hom(dst_web, &[], k, 2, Some(delta))
    }

    /// Removes the merge-split pair at slices `k, k+1`.
    pub fn unzip(self, k: usize) -> Result<Self> {
        let (Slice::Merge { pos: p }, Slice::Split { pos: q, left, right }) = (self.slice(k)?, self.slice(k + 1)?) else {
            return Err(Error::Domain(format!("no merge-split pair at slice {k}")));
        };
        let lev = &self.web.levels()[k];
        if p != q || lev[p] != left || lev[p + 1] != right {
            return Err(Error::Domain(format!("slices {k}, {} do not form a zip", k + 1)));
        }
        let segs = &self.web.segment_levels()[k];
        let over = [(SegId::Out(k + 1, 0), Img::Seg(segs[p])), (SegId::Out(k + 1, 1), Img::Seg(segs[p + 1]))];
        let dst_web = self.with_slices(k, 2, &[])?;
        self.hom(dst_web, &over, k + 2, -2, None)
    }

    /// Inserts a digon splitting the edge at level `k`, position `p`.
    pub fn create(self, k: usize, p: usize, a: u8, b: u8) -> Result<Self> {
        let dst_web = self.with_slices(k, 0, &[Slice::Split { pos: p, left: a, right: b }, Slice::Merge { pos: p }])?;
        self.hom(dst_web, &[], k, 2, None)
    }

    /// Removes the digon at slices `k, k+1`, projecting onto the summand of
    /// `v^power`, where `v` is the variable of the colour-1 side.
    pub fn annihilate(mut self, k: usize, side: usize, power: usize) -> Result<Self> {
        let (Slice::Split { pos: p, left, right }, Slice::Merge { pos: q }) = (self.slice(k)?, self.slice(k + 1)?) else {
            return Err(Error::Domain(format!("no digon at slice {k}")));
        };
        if p != q || [left, right][side] != 1 {
            return Err(Error::Domain(format!("digon at slice {k} has no colour-1 side {side}")));
        }
        let dst_web = self.with_slices(k, 2, &[])?;
        let dst = present_cached(&dst_web);
        let src = self.ring().clone();
        if left == 1 && right == 1 && power <= 1 {
            let over = [(SegId::Out(k, 0), Img::Skip), (SegId::Out(k, 1), Img::Skip)];
            let rename = var_images(&src, &dst, &over, k + 2, -2)?;
            let thick = self.web.segment_levels()[k][p];
            let e = seg_poly(&dst, thick)?;
            let var = |o: usize| src.layout().unwrap().seg_vars[&SegId::Out(k, o)][0];
            let (v, w) = (var(side), var(1 - side));
            self.map = self.map.digon(dst, v, w, e[0].clone(), e[1].clone(), rename, power)?;
            self.web = dst_web;
            return Ok(self);
        }
        if power >= (left + right) as usize {
            return Err(Error::Domain(format!("no v^{power} summand in a digon of width {}", left + right)));
        }
        let over = [(SegId::Out(k, 0), Img::Skip), (SegId::Out(k, 1), Img::Skip)];
        let rename = var_images(&src, &dst, &over, k + 2, -2)?;
        let thick = self.web.segment_levels()[k][p];
        let e = seg_poly(&dst, thick)?;
        let vars = |o: usize| src.layout().unwrap().seg_vars[&SegId::Out(k, o)].clone();
        let (v, others) = (vars(side)[0], vars(1 - side));
        self.map = self.map.peel(dst, v, others, e, rename, power)?;
        self.web = dst_web;
        Ok(self)
    }

    /// The digon projection by solving for the decomposition degree by degree.
    pub fn annihilate_extract(self, k: usize, side: usize, power: usize) -> Result<Self> {
        let (Slice::Split { pos: p, left, right }, Slice::Merge { pos: q }) = (self.slice(k)?, self.slice(k + 1)?) else {
            return Err(Error::Domain(format!("no digon at slice {k}")));
        };
        if p != q || [left, right][side] != 1 {
            return Err(Error::Domain(format!("digon at slice {k} has no colour-1 side {side}")));
        }
        let dst_web = self.with_slices(k, 2, &[])?;
        let dst = present_cached(&dst_web);
        self.annihilate_by_extract(dst, dst_web, k, side, power)
    }

    fn annihilate_by_extract(mut self, dst: Arc<RingPres>, dst_web: LadderWeb, k: usize, side: usize, power: usize) -> Result<Self> {
        let src = self.ring().clone();
        let Slice::Split { left, right, .. } = self.web.slices[k] else { unreachable!() };
        let incl = var_images(&dst, &src, &[], k, 2)?;
        let v = src.seg_e(SegId::Out(k, side))[0].clone();
        let basis = (0..(left + right) as u32).map(|i| v.pow(i)).collect();
        self.map = self.map.extract(dst, incl, basis, power)?;
        self.web = dst_web;
        Ok(self)
    }

    /// Reassociates two consecutive splits at slices `k, k+1`.
    pub fn split_assoc(self, k: usize) -> Result<Self> {
        let (Slice::Split { pos: p, left: l0, right: r0 }, Slice::Split { pos: q, left: l1, right: r1 }) =
            (self.slice(k)?, self.slice(k + 1)?)
        else {
            return Err(Error::Domain(format!("slices {k}, {} are not two splits", k + 1)));
        };
        let o = |j, i| SegId::Out(j, i);
        let (new, over) = if q == p + 1 {
            // (a, bc) then (b, c)  ->  (a+b, c) then (a, b)
            let new = [Slice::Split { pos: p, left: l0 + l1, right: r1 }, Slice::Split { pos: p, left: l0, right: l1 }];
            let over = vec![
                (o(k, 0), Img::Seg(o(k + 1, 0))),
                (o(k, 1), Img::Union(vec![o(k + 1, 1), o(k, 1)])),
                (o(k + 1, 0), Img::Seg(o(k + 1, 1))),
                (o(k + 1, 1), Img::Seg(o(k, 1))),
            ];
            (new, over)
        } else if q == p {
            // (ab, c) then (a, b)  ->  (a, b+c) then (b, c)
            let new = [Slice::Split { pos: p, left: l1, right: r1 + r0 }, Slice::Split { pos: p + 1, left: r1, right: r0 }];
            let over = vec![
                (o(k, 0), Img::Union(vec![o(k, 0), o(k + 1, 0)])),
                (o(k, 1), Img::Seg(o(k + 1, 1))),
                (o(k + 1, 0), Img::Seg(o(k, 0))),
                (o(k + 1, 1), Img::Seg(o(k + 1, 0))),
            ];
            (new, over)
        } else {
            return Err(Error::Domain(format!("splits at slices {k}, {} are not nested", k + 1)));
        };
        let dst_web = self.with_slices(k, 2, &new)?;
        self.hom(dst_web, &over, k + 2, 0, None)
    }

    /// Reassociates two consecutive merges at slices `k, k+1`.
    pub fn merge_assoc(self, k: usize) -> Result<Self> {
        let new = match (self.slice(k)?, self.slice(k + 1)?) {
            (Slice::Merge { pos: p }, Slice::Merge { pos: q }) if p == q => [Slice::Merge { pos: p + 1 }, Slice::Merge { pos: p }],
            (Slice::Merge { pos: p }, Slice::Merge { pos: q }) if p == q + 1 => [Slice::Merge { pos: q }, Slice::Merge { pos: q }],
            _ => return Err(Error::Domain(format!("slices {k}, {} are not nested merges", k + 1))),
        };
        let dst_web = self.with_slices(k, 2, &new)?;
        self.hom(dst_web, &[], k + 2, 0, None)
    }

    /// Swaps slices `k, k+1` when they touch disjoint edges.
    pub fn commute(self, k: usize) -> Result<Self> {
        let (a, b) = (self.slice(k)?, self.slice(k + 1)?);
        let ((in_a, out_a), (in_b, out_b)) = (a.arity(), b.arity());
        let (pa, pb) = (a.pos(), b.pos());
        let (new_b, new_a) = if pb >= pa + out_a {
            (b.with_pos(pb - out_a + in_a), a)
        } else if pb + in_b <= pa {
            (b, a.with_pos(pa - in_b + out_b))
        } else {
            return Err(Error::Domain(format!("slices {k}, {} share an edge", k + 1)));
        };
        let o = |j, i| SegId::Out(j, i);
        let mut over: Vec<(SegId, Img)> = (0..out_a).map(|i| (o(k, i), Img::Seg(o(k + 1, i)))).collect();
        over.extend((0..out_b).map(|i| (o(k + 1, i), Img::Seg(o(k, i)))));
        let dst_web = self.with_slices(k, 2, &[new_b, new_a])?;
        self.hom(dst_web, &over, k + 2, 0, None)
    }

    pub fn mult(mut self, m: MPoly) -> Result<Self> {
        self.map = self.map.mult(m)?;
        Ok(self)
    }

    pub fn scale(mut self, c: Rat) -> Self {
        self.map = self.map.scale(c);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMat;
    use crate::webs::{local_web, Resolution};

    fn w(bottom: &[u8], slices: Vec<Slice>) -> LadderWeb {
        LadderWeb::new(bottom.to_vec(), slices).unwrap()
    }

    #[test]
    fn unzip_identifies_layers() {
        let d11 = local_web(1, 1, Resolution::Dumbbell).unwrap();
        let f = Rewriter::new(&d11).unzip(0).unwrap().finish_at(&LadderWeb::identity(&[1, 1])).unwrap();
        let src = f.src().clone();
        let x = MPoly::var(src.var_by_name("t1.1").unwrap());
        let (img, d) = f.apply(&x, 2).unwrap();
        assert_eq!(d, 2);
        let dst = f.dst();
        assert!(dst.is_zero_class(&(&img - &MPoly::var(dst.var_by_name("b1.1").unwrap()))));
    }

    #[test]
    fn digon_round_trip() {
        // create then annihilate onto v^1 gives the identity on the arc
        for (a, b, side) in [(1u8, 1u8, 0usize), (1, 2, 0), (2, 1, 1), (1, 3, 0)] {
            let arc = LadderWeb::identity(&[a + b]);
            let f = Rewriter::new(&arc)
                .create(0, 0, a, b)
                .unwrap()
                .mult(MPoly::zero())
                .unwrap();
            assert!(f.finish().realize(2).unwrap().is_zero());
            let r = Rewriter::new(&arc).create(0, 0, a, b).unwrap();
            let v = r.ring().seg_e(SegId::Out(0, side))[0].clone();
            let top = (a + b - 1) as u32;
            let g = r.mult(v.pow(top)).unwrap().annihilate(0, side, (a + b - 1) as usize).unwrap().finish_at(&arc).unwrap();
            for d in (0..=8).step_by(2) {
                assert_eq!(g.realize(d).unwrap(), QMat::identity(g.src().slice_dim(d)), "({a},{b}) at {d}");
            }
        }
    }

    #[test]
    fn associativity_round_trips() {
        let start = w(&[3], vec![Slice::Split { pos: 0, left: 1, right: 2 }, Slice::Split { pos: 1, left: 1, right: 1 }]);
        let f = Rewriter::new(&start).split_assoc(0).unwrap();
        assert_eq!(f.web().slices, vec![Slice::Split { pos: 0, left: 2, right: 1 }, Slice::Split { pos: 0, left: 1, right: 1 }]);
        let g = f.split_assoc(0).unwrap().finish_at(&start).unwrap();
        for d in (0..=8).step_by(2) {
            assert_eq!(g.realize(d).unwrap(), QMat::identity(g.src().slice_dim(d)));
        }
        let m = w(&[1, 1, 1], vec![Slice::Merge { pos: 0 }, Slice::Merge { pos: 0 }]);
        let h = Rewriter::new(&m).merge_assoc(0).unwrap().merge_assoc(0).unwrap().finish_at(&m).unwrap();
        assert_eq!(h.realize(4).unwrap(), QMat::identity(h.src().slice_dim(4)));
    }

    #[test]
    fn zip_then_unzip_is_multiplication() {
        let arcs = LadderWeb::identity(&[1, 1]);
        let f = Rewriter::new(&arcs).zip(0, 0).unwrap();
        assert_eq!(f.web(), &local_web(1, 1, Resolution::Dumbbell).unwrap());
        let g = f.unzip(0).unwrap().finish_at(&arcs).unwrap();
        assert_eq!(g.shift(), 2);
        // on the two arcs the composite is multiplication by x1 - x2
        let src = g.src().clone();
        let (img, _) = g.apply(&MPoly::one(), 0).unwrap();
        let x = |n: &str| MPoly::var(src.var_by_name(n).unwrap());
        assert!(src.is_zero_class(&(&img - &(&x("b1.1") - &x("b2.1")))));
    }

    #[test]
    fn symbolic_digon_matches_extract() {
        let webs = [
            w(&[2], vec![Slice::Split { pos: 0, left: 1, right: 1 }, Slice::Merge { pos: 0 }]),
            w(&[2, 1], vec![Slice::Split { pos: 0, left: 1, right: 1 }, Slice::Merge { pos: 0 }, Slice::Merge { pos: 0 }, Slice::Split { pos: 0, left: 1, right: 2 }]),
            w(&[1, 2], vec![Slice::Merge { pos: 0 }, Slice::Split { pos: 0, left: 2, right: 1 }, Slice::Split { pos: 0, left: 1, right: 1 }, Slice::Merge { pos: 0 }]),
        ];
        for web in &webs {
            let k = web.slices.iter().position(|s| matches!(s, Slice::Split { left: 1, right: 1, .. })).unwrap();
            for side in 0..2 {
                for power in 0..2 {
                    let a = Rewriter::new(web).annihilate(k, side, power).unwrap().finish();
                    let b = Rewriter::new(web).annihilate_extract(k, side, power).unwrap().finish();
                    for d in (0..=10).step_by(2) {
                        assert_eq!(a.realize(d).unwrap(), b.realize(d).unwrap(), "{web} side {side} power {power} q={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn wide_digons_match_extract() {
        let webs = [
            (w(&[3], vec![Slice::Split { pos: 0, left: 2, right: 1 }, Slice::Merge { pos: 0 }]), 1),
            (w(&[3], vec![Slice::Split { pos: 0, left: 1, right: 2 }, Slice::Merge { pos: 0 }]), 0),
            (w(&[3, 1], vec![Slice::Split { pos: 0, left: 2, right: 1 }, Slice::Merge { pos: 1 }, Slice::Split { pos: 1, left: 1, right: 1 }, Slice::Merge { pos: 0 }]), usize::MAX),
            (w(&[4], vec![Slice::Split { pos: 0, left: 3, right: 1 }, Slice::Merge { pos: 0 }]), 1),
        ];
        for (web, side) in &webs {
            let (web, k, side) = if *side == usize::MAX {
                // digon produced by zipping the square's middle
                let r = Rewriter::new(web).zip(2, 0).unwrap().merge_assoc(1).unwrap().split_assoc(3).unwrap();
                (r.web().clone(), 4, 1)
            } else {
                (web.clone(), 0, *side)
            };
            let Slice::Split { left, right, .. } = web.slices[k] else { panic!() };
            for power in 0..(left + right) as usize {
                let a = Rewriter::new(&web).annihilate(k, side, power).unwrap().finish();
                let b = Rewriter::new(&web).annihilate_extract(k, side, power).unwrap().finish();
                for d in (0..=8).step_by(2) {
                    assert_eq!(a.realize(d).unwrap(), b.realize(d).unwrap(), "{web} side {side} power {power} q={d}");
                }
            }
        }
    }
}
