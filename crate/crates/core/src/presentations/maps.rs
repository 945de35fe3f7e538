//! Bimodule maps between presentations, realized slice by slice.
//!
//! A map is a chain of steps pushed through symbolically: each source basis
//! polynomial is substituted, multiplied and projected, and only the final
//! polynomial is reduced to coordinates in the target slice.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::algebra::{MPoly, Rat, Var};
use crate::error::{Error, Result};
use crate::linalg::{inverse, QMat, SparseVec};

use super::ring::RingPres;

/// Solved decomposition of one source slice.
#[derive(Debug)]
pub struct ExtractData {
    inv: QMat,
    /// Offset of each block in the solved coordinates.
    offsets: Vec<usize>,
}

pub enum Step {
    /// `p ↦ p(images) · mult`. `images[v]` is the image of source variable
    /// `v`; the substitution need not be a ring map on its own as long as the
    /// product with `mult` is well defined on classes.
    Poly { dst: Arc<RingPres>, images: Vec<MPoly>, mult: MPoly },
    /// Projection of a free module `⊕ basis[i] · incl(dst)` onto block
    /// `power`. `incl[v]` is the image of target variable `v` in the source.
    Extract {
        src: Arc<RingPres>,
        dst: Arc<RingPres>,
        incl: Vec<MPoly>,
        basis: Vec<MPoly>,
        power: usize,
        cache: Mutex<HashMap<u32, Arc<ExtractData>>>,
    },
    /// Projection for a digon with two colour-1 sides `v, w` onto the
    /// coefficient of `v^power` (`power` 0 or 1) over the thick edge with
    /// elementary functions `e1, e2`. Done monomial by monomial with divided
    /// differences, so no slice of the source is ever built.
    Digon { dst: Arc<RingPres>, v: Var, w: Var, e1: MPoly, e2: MPoly, rename: Vec<MPoly>, power: usize },
    /// Projection for a digon with a colour-1 side `v` and a side with
    /// elementary functions `others`, onto the coefficient of `v^power` over
    /// the thick edge with elementary functions `e`. The other side is
    /// rewritten through `e_j(other) = Σ (-v)^i E_{j-i}` and powers of `v` are
    /// reduced by `Σ (-1)^i E_i v^{n-i} = 0`.
    Peel { dst: Arc<RingPres>, v: Var, others: Vec<Var>, e: Vec<MPoly>, rename: Vec<MPoly>, power: usize },
    Scale(Rat),
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Poly { images, mult, .. } => write!(f, "Poly({} images, mult {} terms)", images.len(), mult.len()),
            Step::Extract { basis, power, .. } => write!(f, "Extract(block {power} of {})", basis.len()),
            Step::Digon { power, .. } => write!(f, "Digon(v^{power})"),
            Step::Peel { power, e, .. } => write!(f, "Peel(v^{power} of {})", e.len()),
            Step::Scale(c) => write!(f, "Scale({c})"),
        }
    }
}

/// A homogeneous map `src → dst` of degree `shift` (real units).
#[derive(Clone, Debug)]
pub struct MapDesc {
    src: Arc<RingPres>,
    dst: Arc<RingPres>,
    steps: Vec<Arc<Step>>,
    shift: i64,
}

impl MapDesc {
    pub fn identity(p: Arc<RingPres>) -> Self {
        MapDesc { src: p.clone(), dst: p, steps: Vec::new(), shift: 0 }
    }

    pub fn src(&self) -> &Arc<RingPres> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<RingPres> {
        &self.dst
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().map(|s| &**s)
    }

    /// Appends `p ↦ p(images) · mult` into `dst`.
    pub fn poly(mut self, dst: Arc<RingPres>, images: Vec<MPoly>, mult: MPoly) -> Result<Self> {
        if images.len() != self.dst.nvars() {
            return Err(Error::Domain(format!("{} images for {} variables", images.len(), self.dst.nvars())));
        }
        let degs = dst.degrees();
        for (v, img) in images.iter().enumerate() {
            let want = self.dst.vars()[v].degree;
            if !img.is_zero() && img.q_degree(&degs) != Some(want) {
                return Err(Error::Domain(format!("image of {} is not homogeneous of degree {want}", self.dst.vars()[v].name)));
            }
        }
        let d = if mult.is_zero() {
            0
        } else {
            mult.q_degree(&degs).ok_or_else(|| Error::Domain("inhomogeneous multiplier".into()))?
        };
        self.shift += d as i64;
        self.steps.push(Arc::new(Step::Poly { dst: dst.clone(), images, mult }));
        self.dst = dst;
        Ok(self)
    }

    /// Multiplication by an element of the current target.
    pub fn mult(self, m: MPoly) -> Result<Self> {
        let dst = self.dst.clone();
        let images = (0..dst.nvars() as u32).map(MPoly::var).collect();
        self.poly(dst, images, m)
    }

    pub fn scale(mut self, c: Rat) -> Self {
        self.steps.push(Arc::new(Step::Scale(c)));
        self
    }

    /// Appends the projection onto the summand `basis[power] · incl(dst)`.
    pub fn extract(mut self, dst: Arc<RingPres>, incl: Vec<MPoly>, basis: Vec<MPoly>, power: usize) -> Result<Self> {
        if incl.len() != dst.nvars() || power >= basis.len() {
            return Err(Error::Extract("malformed decomposition".into()));
        }
        let degs = self.dst.degrees();
        let bd = basis[power].q_degree(&degs).ok_or_else(|| Error::Extract("inhomogeneous basis element".into()))?;
        self.shift -= bd as i64;
        let step =
            Step::Extract { src: self.dst.clone(), dst: dst.clone(), incl, basis, power, cache: Mutex::new(HashMap::new()) };
        self.steps.push(Arc::new(step));
        self.dst = dst;
        Ok(self)
    }

    /// Appends the `v^power` projection of a `(1,1)` digon; see [`Step::Digon`].
    #[allow(clippy::too_many_arguments)]
    pub fn digon(mut self, dst: Arc<RingPres>, v: Var, w: Var, e1: MPoly, e2: MPoly, rename: Vec<MPoly>, power: usize) -> Result<Self> {
        if power > 1 || rename.len() != self.dst.nvars() {
            return Err(Error::Extract("malformed digon projection".into()));
        }
        self.shift -= 2 * power as i64;
        self.steps.push(Arc::new(Step::Digon { dst: dst.clone(), v, w, e1, e2, rename, power }));
        self.dst = dst;
        Ok(self)
    }

    /// Appends the `v^power` projection of a digon with a colour-1 side; see
    /// [`Step::Peel`].
    pub fn peel(mut self, dst: Arc<RingPres>, v: Var, others: Vec<Var>, e: Vec<MPoly>, rename: Vec<MPoly>, power: usize) -> Result<Self> {
        if power >= e.len() || others.len() + 1 != e.len() || rename.len() != self.dst.nvars() {
            return Err(Error::Extract("malformed digon projection".into()));
        }
        self.shift -= 2 * power as i64;
        self.steps.push(Arc::new(Step::Peel { dst: dst.clone(), v, others, e, rename, power }));
        self.dst = dst;
        Ok(self)
    }

    /// `other ∘ self`.
    pub fn then(mut self, other: &MapDesc) -> Result<Self> {
        if !Arc::ptr_eq(&self.dst, &other.src) {
            return Err(Error::Domain("composing maps with mismatched rings".into()));
        }
        self.steps.extend(other.steps.iter().cloned());
        self.dst = other.dst.clone();
        self.shift += other.shift;
        Ok(self)
    }

    /// Image of a homogeneous source polynomial of degree `d`, with its degree.
    pub fn apply(&self, p: &MPoly, d: u32) -> Result<(MPoly, i64)> {
        let mut p = p.clone();
        let mut deg = d as i64;
        for s in &self.steps {
            if p.is_zero() {
                break;
            }
            match &**s {
                Step::Poly { dst, images, mult } => {
                    p = &p.subst(|v| images[v as usize].clone()) * mult;
                    deg += if mult.is_zero() { 0 } else { mult.q_degree(&dst.degrees()).unwrap() as i64 };
                }
                Step::Digon { .. } => {
                    p = s.digon_image(&p);
                    deg -= 2 * s.digon_power() as i64;
                }
                Step::Peel { power, .. } => {
                    p = s.peel_image(&p);
                    deg -= 2 * *power as i64;
                }
                Step::Scale(c) => p = p.scale(c),
                Step::Extract { src, dst, basis, power, .. } => {
                    let data = s.extract_data(deg as u32)?;
                    let x = src.coords(&p, deg as u32);
                    let t = data.inv.apply(&x);
                    let lo = data.offsets[*power];
                    let hi = data.offsets[*power + 1];
                    let block: SparseVec = t.into_iter().filter(|(i, _)| (lo..hi).contains(i)).map(|(i, c)| (i - lo, c)).collect();
                    let bd = basis[*power].q_degree(&src.degrees()).unwrap() as i64;
                    deg -= bd;
                    p = if block.is_empty() { MPoly::zero() } else { dst.poly_of(deg as u32, &block) };
                }
            }
        }
        Ok((p, deg))
    }

    /// Matrix from the source slice at `d` to the target slice at `d + shift`.
    pub fn realize(&self, d: u32) -> Result<QMat> {
        let n = self.src.slice_dim(d);
        let out = d as i64 + self.shift;
        let m = if out < 0 { 0 } else { self.dst.slice_dim(out as u32) };
        if n == 0 || m == 0 {
            return Ok(QMat::zero(m, n));
        }
        let cols: Vec<SparseVec> = (0..n)
            .into_par_iter()
            .map(|i| {
                let (p, _) = self.apply(&self.src.basis_poly(d, i), d)?;
                Ok(self.dst.coords(&p, out as u32))
            })
            .collect::<Result<_>>()?;
        Ok(QMat::from_columns(m, cols))
    }
}

impl Step {
    fn digon_power(&self) -> usize {
        match self {
            Step::Digon { power, .. } => *power,
            _ => 0,
        }
    }

    fn digon_image(&self, p: &MPoly) -> MPoly {
        let Step::Digon { v, w, e1, e2, rename, power, .. } = self else { unreachable!() };
        // h_m and p_m of {v, w} in terms of e1, e2
        let mut h = vec![MPoly::one()];
        let mut pw = vec![MPoly::constant(Rat::int(2)), e1.clone()];
        let mut e2pow = vec![MPoly::one()];
        let grow = |t: &mut Vec<MPoly>, m: usize, first: MPoly| {
            if t.len() < 2 {
                t.push(first);
            }
            while t.len() <= m {
                let n = t.len();
                let next = &(e1 * &t[n - 1]) - &(e2 * &t[n - 2]);
                t.push(next);
            }
        };
        let mut out = MPoly::zero();
        let mut by_pair: HashMap<(u32, u32), MPoly> = HashMap::new();
        for (m, c) in p.terms() {
            let (a, b) = (m.exponent(*v), m.exponent(*w));
            let rest: Vec<(Var, u32)> = m.pairs().iter().copied().filter(|&(x, _)| x != *v && x != *w).collect();
            by_pair.entry((a, b)).or_insert_with(MPoly::zero).add_term(crate::algebra::Monomial::from_pairs(rest), c);
        }
        for ((a, b), coeff) in by_pair {
            let lo = a.min(b) as usize;
            let m = a.abs_diff(b) as usize;
            while e2pow.len() <= lo {
                let next = e2 * e2pow.last().unwrap();
                e2pow.push(next);
            }
            let sym = match (*power, a.cmp(&b)) {
                (1, std::cmp::Ordering::Equal) => continue,
                (1, std::cmp::Ordering::Greater) => {
                    grow(&mut h, m - 1, e1.clone());
                    h[m - 1].clone()
                }
                (1, _) => {
                    grow(&mut h, m - 1, e1.clone());
                    -&h[m - 1]
                }
                (_, std::cmp::Ordering::Equal) => MPoly::one(),
                (_, std::cmp::Ordering::Greater) => {
                    grow(&mut h, m, e1.clone());
                    grow(&mut pw, m, e1.clone());
                    &pw[m] - &h[m]
                }
                _ => {
                    grow(&mut h, m, e1.clone());
                    h[m].clone()
                }
            };
            let c = coeff.subst(|x| rename[x as usize].clone());
            out = &out + &(&(&c * &e2pow[lo]) * &sym);
        }
        out
    }

    fn peel_image(&self, p: &MPoly) -> MPoly {
        let Step::Peel { dst, v, others, e, rename, power } = self else { unreachable!() };
        let n = e.len();
        // a fresh variable standing for v on the target side
        let t = dst.nvars() as Var;
        let tv = MPoly::var(t);
        let mut images = rename.clone();
        images[*v as usize] = tv.clone();
        let minus_t = tv.scale(&Rat::int(-1));
        for (j, &o) in others.iter().enumerate() {
            let mut acc = MPoly::zero();
            let mut tp = MPoly::one();
            for i in 0..=j + 1 {
                let ej = if i == j + 1 { MPoly::one() } else { e[j - i].clone() };
                acc = &acc + &(&tp * &ej);
                tp = &tp * &minus_t;
            }
            images[o as usize] = acc;
        }
        let q = p.subst(|x| images[x as usize].clone());
        // coefficients of powers of t
        let mut by_power: Vec<MPoly> = Vec::new();
        for (m, c) in q.terms() {
            let k = m.exponent(t) as usize;
            if by_power.len() <= k {
                by_power.resize(k + 1, MPoly::zero());
            }
            let rest: Vec<(Var, u32)> = m.pairs().iter().copied().filter(|&(x, _)| x != t).collect();
            by_power[k].add_term(crate::algebra::Monomial::from_pairs(rest), c);
        }
        // v^k = Σ_{i=1..n} (-1)^{i+1} E_i v^{k-i} for k >= n
        for k in (n..by_power.len()).rev() {
            let c = std::mem::replace(&mut by_power[k], MPoly::zero());
            if c.is_zero() {
                continue;
            }
            for i in 1..=n {
                let term = &c * &e[i - 1];
                by_power[k - i] = if i % 2 == 1 { &by_power[k - i] + &term } else { &by_power[k - i] - &term };
            }
        }
        by_power.get(*power).cloned().unwrap_or_else(MPoly::zero)
    }

    fn extract_data(&self, d: u32) -> Result<Arc<ExtractData>> {
        let Step::Extract { src, dst, incl, basis, cache, .. } = self else { unreachable!() };
        if let Some(x) = cache.lock().unwrap().get(&d) {
            return Ok(x.clone());
        }
        let sdeg = src.degrees();
        let mut cols = Vec::new();
        let mut offsets = vec![0];
        for b in basis {
            let bd = b.q_degree(&sdeg).unwrap();
            if bd <= d {
                for w in dst.basis_polys(d - bd) {
                    let img = &w.subst(|v| incl[v as usize].clone()) * b;
                    cols.push(src.coords(&img, d));
                }
            }
            offsets.push(cols.len());
        }
        let rows = src.slice_dim(d);
        let m = QMat::from_columns(rows, cols);
        let inv = inverse(&m).ok_or_else(|| {
            Error::Extract(format!("no unique decomposition in degree {d} ({} rows, {} columns)", rows, m.ncols()))
        })?;
        let data = Arc::new(ExtractData { inv, offsets });
        Ok(cache.lock().unwrap().entry(d).or_insert(data).clone())
    }
}

/// Matrix of `f` at source degree `d`.
pub fn realize(f: &MapDesc, d: u32) -> Result<QMat> {
    f.realize(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::ring::{present_cached, VarInfo, VarKind};
    use crate::webs::{LadderWeb, Slice};

    #[test]
    fn identity_realizes_identity() {
        let w = LadderWeb::new(vec![2, 1], vec![Slice::Merge { pos: 0 }, Slice::Split { pos: 0, left: 2, right: 1 }]).unwrap();
        let p = present_cached(&w);
        let f = MapDesc::identity(p.clone()).mult(MPoly::one()).unwrap();
        for d in (0..=8).step_by(2) {
            assert_eq!(f.realize(d).unwrap(), QMat::identity(p.slice_dim(d)));
        }
    }

    fn ring(names: &[(&str, u32)], rels: Vec<MPoly>) -> Arc<RingPres> {
        let vars = names.iter().map(|&(n, d)| VarInfo { name: n.into(), degree: d, kind: VarKind::Internal }).collect();
        Arc::new(RingPres::from_parts(vars, rels, Vec::new(), Vec::new()))
    }

    /// `R_111 = Q[x1,x2,x3]^{S_1×S_1×S_1}` over `R_21 = Q[a1,a2,x3]`, with
    /// `a = e(x1,x2)`.
    #[test]
    fn extract_on_r111() {
        let r111 = ring(&[("x1", 2), ("x2", 2), ("x3", 2)], Vec::new());
        let r21 = ring(&[("a1", 2), ("a2", 4), ("x3", 2)], Vec::new());
        let x = |i| MPoly::var(i);
        let incl = vec![&x(0) + &x(1), &x(0) * &x(1), x(2)];
        let basis = vec![MPoly::one(), x(0)];
        let f = MapDesc::identity(r111.clone()).extract(r21.clone(), incl, basis, 1).unwrap();
        let (img, d) = f.apply(&x(0).pow(2), 4).unwrap();
        assert_eq!(d, 2);
        assert_eq!(img, MPoly::var(0));
        let (img, _) = f.apply(&x(1), 2).unwrap();
        assert_eq!(img, -&MPoly::one());
        // projecting onto the summand of 1 and then including is the identity there
        let g = MapDesc::identity(r111.clone())
            .extract(r21.clone(), vec![&x(0) + &x(1), &x(0) * &x(1), x(2)], vec![MPoly::one(), x(0)], 0)
            .unwrap();
        for d in (0..=8).step_by(2) {
            for w in r21.basis_polys(d) {
                let up = w.subst(|v| [&x(0) + &x(1), &x(0) * &x(1), x(2)][v as usize].clone());
                let (back, _) = g.apply(&up, d).unwrap();
                assert_eq!(back, w);
            }
        }
    }

    #[test]
    fn extract_rejects_non_free() {
        let r = ring(&[("x1", 2)], Vec::new());
        let f = MapDesc::identity(r.clone()).extract(r.clone(), vec![MPoly::var(0)], vec![MPoly::one(), MPoly::var(0)], 0).unwrap();
        assert!(matches!(f.realize(2), Err(Error::Extract(_))));
    }
}
