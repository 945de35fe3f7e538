//! Hochschild homology of web bimodules via Koszul complexes, and the
//! triply graded homology of braid closures.
//!
//! Real degrees are used internally (`q`, `hh`, `h`); tables store them
//! doubled. Closing a strand of colour `k` contributes the factors
//! `e_i(bottom) - e_i(top)`, `i = 1..=k`, each spanning a two-term complex
//! `R{-1, 2i-1} -> R`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Fp, MPoly, QTPoly, Rat, TriPoincare};
use crate::complexes::{braid_complex, BimComplex};
use crate::error::{Error, Result};
use crate::linalg::{homology, induced_map, Mat, QMat, Scalar, SparseVec, Subquotient};
use crate::presentations::RingPres;
use crate::webs::{diagram_stats, ColouredBraid};

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulFactor {
    pub f: MPoly,
    pub strand: usize,
    /// Elementary index `i`; `f` has real degree `2i`.
    pub index: u32,
    pub hh2: i64,
    pub q2: i64,
}

impl KoszulFactor {
    /// Real q-shift `2i - 1` of the factor's first term.
    pub fn shift(&self) -> i64 {
        self.q2 / 2
    }

    pub fn degree(&self) -> u32 {
        2 * self.index
    }
}

/// Factors closing the given boundary positions (top `p` glued to bottom `p`).
pub fn koszul_closure(p: &RingPres, strands: &[usize]) -> Result<Vec<KoszulFactor>> {
    let mut out = Vec::new();
    for &s in strands {
        let (b, t) = match (p.bottom_vars().get(s), p.top_vars().get(s)) {
            (Some(b), Some(t)) => (b, t),
            _ => return Err(Error::Closure(format!("no boundary position {}", s + 1))),
        };
        if b.len() != t.len() {
            return Err(Error::Closure(format!(
                "position {} has colour {} at the bottom and {} at the top",
                s + 1,
                b.len(),
                t.len()
            )));
        }
        for (i, (&x, &y)) in b.iter().zip(t).enumerate() {
            let index = i as u32 + 1;
            out.push(KoszulFactor {
                f: &MPoly::var(x) - &MPoly::var(y),
                strand: s,
                index,
                hh2: -2,
                q2: 2 * (2 * index as i64 - 1),
            });
        }
    }
    Ok(out)
}

/// Factors closing every strand.
pub fn full_closure(p: &RingPres) -> Result<Vec<KoszulFactor>> {
    let n = p.bottom_vars().len();
    if p.top_vars().len() != n {
        return Err(Error::Closure(format!("{} bottom and {} top edges", n, p.top_vars().len())));
    }
    koszul_closure(p, &(0..n).collect::<Vec<_>>())
}

/// Position of one Koszul component inside `K(hh, q)`.
#[derive(Clone, Debug)]
pub struct Component {
    pub mask: u32,
    /// Internal degree of the ring slice.
    pub degree: i64,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct HHCell<F = Fp> {
    pub hh: i64,
    pub q: i64,
    pub components: Vec<Component>,
    pub homology: Subquotient<F>,
}

impl<F: Scalar> HHCell<F> {
    pub fn dim(&self) -> usize {
        self.homology.dim
    }
}

/// Hochschild homology of one presentation, cell by cell up to `qmax`.
#[derive(Clone, Debug)]
pub struct HHTable<F = Fp> {
    pub ring: Arc<RingPres>,
    pub factors: Vec<KoszulFactor>,
    pub qmax: i64,
    cells: BTreeMap<(i64, i64), HHCell<F>>,
}

impl<F: Scalar> HHTable<F> {
    pub fn cell(&self, hh: i64, q: i64) -> Option<&HHCell<F>> {
        self.cells.get(&(hh, q))
    }

    pub fn dim(&self, hh: i64, q: i64) -> usize {
        self.cell(hh, q).map_or(0, |c| c.dim())
    }

    pub fn cells(&self) -> impl Iterator<Item = &HHCell<F>> {
        self.cells.values()
    }

    /// Nonzero entries as `(hh2, q2, dim)`.
    pub fn rows(&self) -> Vec<(i64, i64, u64)> {
        self.cells.values().filter(|c| c.dim() > 0).map(|c| (2 * c.hh, 2 * c.q, c.dim() as u64)).collect()
    }

    /// `Σ dim · t^hh q^q`.
    pub fn series(&self) -> QTPoly {
        let mut p = QTPoly::zero().truncate(2 * self.qmax);
        for (hh2, q2, d) in self.rows() {
            p.add_term(hh2, q2, &Rat::int(d as i64));
        }
        p
    }
}

struct Koszul<'a, F> {
    ring: &'a RingPres,
    factors: &'a [KoszulFactor],
    /// `(factor, source degree) -> multiplication matrix`
    mults: HashMap<(usize, i64), Mat<F>>,
}

impl<'a, F: Scalar> Koszul<'a, F> {
    fn new(ring: &'a RingPres, factors: &'a [KoszulFactor], qmax: i64) -> Self {
        // targets of the differential never exceed degree `qmax + 1`
        let jobs: Vec<(usize, i64)> = (0..factors.len())
            .flat_map(|a| (0..=qmax + 1 - factors[a].degree() as i64).step_by(2).map(move |d| (a, d)))
            .collect();
        let mults = jobs
            .into_par_iter()
            .map(|(a, d)| {
                let f = &factors[a];
                let to = (d + f.degree() as i64) as u32;
                let cols: Vec<SparseVec> =
                    ring.basis_polys(d as u32).iter().map(|b| ring.coords(&(&f.f * b), to)).collect();
                ((a, d), QMat::from_columns(ring.slice_dim(to), cols).convert(F::from_rat))
            })
            .collect();
        Koszul { ring, factors, mults }
    }

    fn space(&self, hh: i64, q: i64) -> (Vec<Component>, usize) {
        let n = self.factors.len();
        let mut comps = Vec::new();
        let mut total = 0;
        if hh > 0 || hh < -(n as i64) {
            return (comps, 0);
        }
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as i64 != -hh {
                continue;
            }
            let shift: i64 = (0..n).filter(|a| mask >> a & 1 == 1).map(|a| self.factors[a].shift()).sum();
            let degree = q - shift;
            let dim = if degree < 0 { 0 } else { self.ring.slice_dim(degree as u32) };
            if dim > 0 {
                comps.push(Component { mask, degree, offset: total, dim });
                total += dim;
            }
        }
        (comps, total)
    }

    /// Differential `K(hh, q) -> K(hh+1, q+1)`.
    fn diff(&self, hh: i64, q: i64) -> Mat<F> {
        let (src, n) = self.space(hh, q);
        let (dst, m) = self.space(hh + 1, q + 1);
        let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); n];
        for c in &src {
            let mut before = 0;
            for a in 0..self.factors.len() {
                if c.mask >> a & 1 == 0 {
                    continue;
                }
                let negate = before % 2 == 1;
                before += 1;
                let Some(t) = dst.iter().find(|t| t.mask == c.mask & !(1 << a)) else { continue };
                let mm = &self.mults[&(a, c.degree)];
                for j in 0..c.dim {
                    for (i, x) in mm.col(j) {
                        cols[c.offset + j].push((t.offset + i, if negate { x.neg() } else { x.clone() }));
                    }
                }
            }
        }
        for c in cols.iter_mut() {
            c.sort_by_key(|(i, _)| *i);
        }
        Mat::from_columns(m, cols)
    }
}

/// The Koszul differential `K(hh, q) -> K(hh + 1, q + 1)`.
pub fn koszul_differential<F: Scalar>(ring: &RingPres, factors: &[KoszulFactor], hh: i64, q: i64) -> Mat<F> {
    Koszul::new(ring, factors, q.max(0)).diff(hh, q)
}

/// Hochschild homology of `ring` for the given closure, cells with
/// `q <= qmax`, over any field.
pub fn hh_dims_over<F: Scalar>(ring: &Arc<RingPres>, factors: &[KoszulFactor], qmax: i64) -> Result<HHTable<F>> {
    let k = Koszul::new(ring, factors, qmax);
    let n = factors.len() as i64;
    let keys: Vec<(i64, i64)> = (-n..=0).flat_map(|hh| (0..=qmax).map(move |q| (hh, q))).collect();
    let cells = keys
        .into_par_iter()
        .map(|(hh, q)| {
            let (components, _) = k.space(hh, q);
            let d_in = k.diff(hh - 1, q - 1);
            let d_out = k.diff(hh, q);
            let homology = homology(&d_in, &d_out)?;
            Ok(((hh, q), HHCell { hh, q, components, homology }))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(HHTable { ring: ring.clone(), factors: factors.to_vec(), qmax, cells })
}

/// [`hh_dims_over`] in the working field.
pub fn hh_dims(ring: &Arc<RingPres>, factors: &[KoszulFactor], qmax: i64) -> Result<HHTable> {
    hh_dims_over(ring, factors, qmax)
}

/// Hochschild homology of a presentation with every strand closed.
pub fn hh_closed(ring: &Arc<RingPres>, qmax: i64) -> Result<HHTable> {
    hh_dims(ring, &full_closure(ring)?, qmax)
}

/// Triply graded homology of the closure of `b`, total `q <= qmax`.
pub fn hhh(b: &ColouredBraid, qmax: i64) -> Result<TriPoincare> {
    hhh_over::<Fp>(b, qmax)
}

pub fn hhh_over<F: Scalar>(b: &ColouredBraid, qmax: i64) -> Result<TriPoincare> {
    if !b.is_closable() {
        return Err(Error::Closure(format!(
            "bottom colours {:?} differ from top colours {:?}",
            b.colours,
            b.top_colours()
        )));
    }
    hhh_of_complex_over::<F>(&braid_complex(b)?, qmax)
}

/// An arrow's slice matrices assembled componentwise between Koszul spaces.
fn koszul_map<F: Scalar>(src: &[Component], dst: &[Component], slices: &HashMap<i64, Mat<F>>) -> Mat<F> {
    let n: usize = src.iter().map(|c| c.dim).sum();
    let m: usize = dst.iter().map(|c| c.dim).sum();
    let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); n];
    for c in src {
        let Some(t) = dst.iter().find(|t| t.mask == c.mask) else { continue };
        let mm = &slices[&c.degree];
        for j in 0..c.dim {
            cols[c.offset + j] = mm.col(j).iter().map(|(i, x)| (t.offset + i, x.clone())).collect();
        }
    }
    Mat::from_columns(m, cols)
}

pub fn hhh_of_complex(c: &BimComplex, qmax: i64) -> Result<TriPoincare> {
    hhh_of_complex_over::<Fp>(c, qmax)
}

pub fn hhh_of_complex_over<F: Scalar>(c: &BimComplex, qmax: i64) -> Result<TriPoincare> {
    let tables: Vec<HHTable<F>> = c
        .objects
        .par_iter()
        .map(|o| hh_dims_over(&o.ring, &full_closure(&o.ring)?, qmax - o.q_shift))
        .collect::<Result<_>>()?;
    // realized arrows on every slice that can occur
    let jobs: Vec<(usize, i64)> = c
        .arrows
        .iter()
        .enumerate()
        .flat_map(|(i, a)| (0..=qmax - c.objects[a.src].q_shift).step_by(2).map(move |d| (i, d)))
        .collect();
    let realized: HashMap<(usize, i64), Mat<F>> = jobs
        .into_par_iter()
        .map(|(i, d)| {
            let a = &c.arrows[i];
            let m = a.map.realize(d as u32)?.convert(F::from_rat);
            Ok(((i, d), if a.sign < 0 { m.scale(&F::one().neg()) } else { m }))
        })
        .collect::<Result<_>>()?;
    let nfactors = tables.first().map_or(0, |t| t.factors.len() as i64);
    let qmin = c.objects.iter().map(|o| o.q_shift).min().unwrap_or(0);
    let homs = c.hom_degrees();
    let keys: Vec<(i64, i64)> = (-nfactors..=0).flat_map(|hh| (qmin..=qmax).map(move |q| (hh, q))).collect();
    let rows = keys
        .into_par_iter()
        .map(|(hh, q)| {
            let cell = |o: usize| tables[o].cell(hh, q - c.objects[o].q_shift);
            let dim = |o: usize| cell(o).map_or(0, |x| x.dim());
            let offsets = |h: i64| -> (Vec<(usize, usize)>, usize) {
                let mut acc = 0;
                let mut v = Vec::new();
                for o in c.objects_at(h) {
                    v.push((o, acc));
                    acc += dim(o);
                }
                (v, acc)
            };
            // differential from hom degree h to h+1
            let diff = |h: i64| -> Result<Mat<F>> {
                let (src, n) = offsets(h);
                let (dst, m) = offsets(h + 1);
                let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); n];
                for (i, a) in c.arrows.iter().enumerate() {
                    let (Some(&(_, so)), Some(&(_, to))) =
                        (src.iter().find(|x| x.0 == a.src), dst.iter().find(|x| x.0 == a.dst))
                    else {
                        continue;
                    };
                    let (Some(sc), Some(tc)) = (cell(a.src), cell(a.dst)) else { continue };
                    if sc.dim() == 0 || tc.dim() == 0 {
                        continue;
                    }
                    let slices: HashMap<i64, Mat<F>> =
                        sc.components.iter().map(|x| (x.degree, realized[&(i, x.degree)].clone())).collect();
                    let f = koszul_map(&sc.components, &tc.components, &slices);
                    let ind = induced_map(&f, &sc.homology, &tc.homology)?;
                    for j in 0..ind.ncols() {
                        for (r, x) in ind.col(j) {
                            cols[so + j].push((to + r, x.clone()));
                        }
                    }
                }
                for col in cols.iter_mut() {
                    col.sort_by_key(|(i, _)| *i);
                    let mut merged: SparseVec<F> = Vec::with_capacity(col.len());
                    for (i, x) in col.drain(..) {
                        match merged.last_mut() {
                            Some((j, y)) if *j == i => *y = y.add(&x),
                            _ => merged.push((i, x)),
                        }
                    }
                    merged.retain(|(_, x)| !x.is_zero());
                    *col = merged;
                }
                Ok(Mat::from_columns(m, cols))
            };
            let mut out = Vec::new();
            for &h in &homs {
                let d_in = diff(h - 1)?;
                let d_out = diff(h)?;
                let hom = homology(&d_in, &d_out)?;
                if hom.dim > 0 {
                    out.push((2 * h, 2 * hh, 2 * q, hom.dim as u64));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = TriPoincare::new(2 * qmax);
    for (h2, hh2, q2, d) in rows.into_iter().flatten() {
        t.add(h2, hh2, q2, d);
    }
    Ok(t)
}

/// `hhh` with the overall shifts that make it a link invariant.
pub fn h12(b: &ColouredBraid, qmax: i64) -> Result<TriPoincare> {
    let s = diagram_stats(b);
    let n = s.normalization2();
    let base = hhh(b, (2 * qmax - n).div_euclid(2))?;
    Ok(base.shift(-n, n, n).truncate(2 * qmax))
}

/// `Σ (-1)^h dim · t^hh q^q`.
pub fn euler_bracket(t: &TriPoincare) -> Result<QTPoly> {
    t.euler()
}
