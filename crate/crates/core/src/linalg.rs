//! Sparse linear algebra over exact fields.
//!
//! Matrices are stored by column. Everything else is built on [`Echelon`],
//! an incremental row-echelon form that can also remember how each pivot
//! was combined from the inserted vectors. The rationals are the default
//! field; [`Fp`] gives the same algorithms with machine-word arithmetic.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::algebra::{Fp, Rat};
use crate::error::{Error, Result};

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_rat(x: &Rat) -> Self;
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self);
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rat(x: &Rat) -> Self {
        x.clone()
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= &(a * b);
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += &(a * b);
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn one() -> Self {
        Fp::ONE
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
    fn inv(&self) -> Self {
        Fp::inv(*self)
    }
    fn from_rat(x: &Rat) -> Self {
        Fp::from_rat(x)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = Fp::sub(*self, Fp::mul(*a, *b));
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = Fp::add(*self, Fp::mul(*a, *b));
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
}

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec<F = Rat> = Vec<(usize, F)>;

pub fn to_dense<F: Scalar>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn to_sparse<F: Scalar>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `a + c·b`
pub fn axpy<F: Scalar>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let s = a[i].1.add(&c.mul(&b[j].1));
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F = Rat> {
    nrows: usize,
    cols: Vec<SparseVec<F>>,
}

pub type QMat = Mat<Rat>;

impl<F: Scalar> Mat<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Mat { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat { nrows: n, cols: (0..n).map(|i| vec![(i, F::one())]).collect() }
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        Mat::identity(n).scale(c)
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, x)| *i < nrows && !x.is_zero())));
        Mat { nrows, cols }
    }

    /// From a row-major dense array.
    pub fn from_rows<T: Clone + Into<Rat>>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                let x = F::from_rat(&x.clone().into());
                if !x.is_zero() {
                    cols[j].push((i, x));
                }
            }
        }
        Mat { nrows, cols }
    }

    /// Entrywise image in another field.
    pub fn convert<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, x)| (*i, f(x))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        Mat { nrows: self.nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.cols[j].binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.cols[j][p].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut buf = vec![F::zero(); self.nrows];
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                buf[*i].add_mul(a, x);
            }
        }
        to_sparse(&buf)
    }

    pub fn mul(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch in product");
        Mat { nrows: self.nrows, cols: rhs.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        if c.is_zero() {
            return Mat::zero(self.nrows, self.ncols());
        }
        Mat { nrows: self.nrows, cols: self.cols.iter().map(|col| col.iter().map(|(i, x)| (*i, x.mul(c))).collect()).collect() }
    }

    pub fn add(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.nrows, self.ncols()), (rhs.nrows, rhs.ncols()));
        Mat { nrows: self.nrows, cols: self.cols.iter().zip(&rhs.cols).map(|(a, b)| axpy(a, &F::one(), b)).collect() }
    }

    pub fn sub(&self, rhs: &Mat<F>) -> Mat<F> {
        self.add(&rhs.scale(&F::one().neg()))
    }

    pub fn transpose(&self) -> Mat<F> {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        Mat { nrows: self.ncols(), cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`-style assembly from a grid of blocks.
    pub fn block(blocks: &[Vec<&Mat<F>>]) -> Mat<F> {
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].nrows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.ncols()).collect();
        let nrows = heights.iter().sum();
        let mut cols = Vec::new();
        for (bj, &w) in widths.iter().enumerate() {
            for j in 0..w {
                let mut col = Vec::new();
                let mut off = 0;
                for (bi, &h) in heights.iter().enumerate() {
                    let b = blocks[bi][bj];
                    assert_eq!((b.nrows, b.ncols()), (h, w), "block shape mismatch");
                    col.extend(b.cols[j].iter().map(|(i, x)| (i + off, x.clone())));
                    off += h;
                }
                cols.push(col);
            }
        }
        Mat { nrows, cols }
    }
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Inserted<F = Rat> {
    /// New pivot at this column.
    Pivot(usize),
    /// Dependent: the vector equals `Σ x_t v_t` over earlier tags.
    Dependent(Vec<F>),
}

/// Incremental echelon form. Pivot rows are normalized to leading
/// coefficient one; with `ntags > 0` each pivot also records the
/// combination of inserted vectors it came from.
#[derive(Clone, Debug)]
pub struct Echelon<F = Rat> {
    n: usize,
    ntags: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
    combos: Vec<Vec<F>>,
    pivot_cols: Vec<usize>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(n: usize) -> Self {
        Echelon::with_tags(n, 0)
    }

    pub fn with_tags(n: usize, ntags: usize) -> Self {
        Echelon { n, ntags, pivot_of_col: vec![None; n], rows: Vec::new(), combos: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    /// Pivot columns in insertion order.
    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Fully reduces `buf`, returning the tag combination subtracted.
    fn reduce_buf(&self, buf: &mut [F]) -> Vec<F> {
        let mut x = vec![F::zero(); self.ntags];
        for c in 0..self.n {
            if buf[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of_col[c] {
                let a = buf[c].clone();
                for (i, y) in &self.rows[r] {
                    buf[*i].sub_mul(&a, y);
                }
                if self.ntags > 0 {
                    for (t, y) in self.combos[r].iter().enumerate() {
                        if !y.is_zero() {
                            x[t].add_mul(&a, y);
                        }
                    }
                }
            }
        }
        x
    }

    /// Normal form of `v`: supported on non-pivot columns only.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut buf = to_dense(v, self.n);
        self.reduce_buf(&mut buf);
        to_sparse(&buf)
    }

    pub fn reduce_dense(&self, v: &[F]) -> Vec<F> {
        let mut buf = v.to_vec();
        self.reduce_buf(&mut buf);
        buf
    }

    /// `v = residual + Σ x_t v_t`; returns `(residual, x)`.
    pub fn decompose(&self, v: &SparseVec<F>) -> (SparseVec<F>, Vec<F>) {
        let mut buf = to_dense(v, self.n);
        let x = self.reduce_buf(&mut buf);
        (to_sparse(&buf), x)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec<F>, tag: Option<usize>) -> Inserted<F> {
        let mut buf = to_dense(v, self.n);
        let x = self.reduce_buf(&mut buf);
        let lead = match buf.iter().position(|a| !a.is_zero()) {
            Some(p) => p,
            None => return Inserted::Dependent(x),
        };
        let inv = buf[lead].inv();
        let row: SparseVec<F> =
            buf.iter().enumerate().skip(lead).filter(|(_, a)| !a.is_zero()).map(|(i, a)| (i, a.mul(&inv))).collect();
        let combo = if self.ntags > 0 {
            let mut c: Vec<F> = x.iter().map(|a| a.mul(&inv).neg()).collect();
            let t = tag.expect("tracked echelon needs a tag");
            c[t] = c[t].add(&inv);
            c
        } else {
            Vec::new()
        };
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        self.combos.push(combo);
        self.pivot_cols.push(lead);
        Inserted::Pivot(lead)
    }

    /// Fully reduced rows sorted by pivot column. Tags are dropped.
    pub fn into_rref(self) -> Vec<(usize, SparseVec<F>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.pivot_cols[r]));
        let mut done: Vec<(usize, SparseVec<F>)> = Vec::with_capacity(order.len());
        let mut pivot_row: Vec<Option<usize>> = vec![None; self.n];
        let mut buf = vec![F::zero(); self.n];
        let mut touched = Vec::new();
        for r in order {
            // rows already done vanish on every other pivot column, so one
            // pass over the original entries suffices
            for (c, x) in &self.rows[r] {
                match pivot_row[*c] {
                    Some(k) => {
                        for (i, y) in done[k].1.iter().skip(1) {
                            buf[*i].sub_mul(x, y);
                            touched.push(*i);
                        }
                    }
                    None => {
                        buf[*c] = buf[*c].add(x);
                        touched.push(*c);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let row: SparseVec<F> = touched
                .drain(..)
                .filter_map(|i| {
                    let x = std::mem::replace(&mut buf[i], F::zero());
                    (!x.is_zero()).then_some((i, x))
                })
                .collect();
            let lead = self.pivot_cols[r];
            pivot_row[lead] = Some(done.len());
            done.push((lead, row));
        }
        done.reverse();
        done
    }
}

pub fn rank<F: Scalar>(m: &Mat<F>) -> usize {
    let mut e = Echelon::new(m.nrows());
    for c in m.columns() {
        e.insert(c, None);
    }
    e.rank()
}

/// Columns form a basis of `{x : m x = 0}`, read off the reduced row
/// echelon form of `m`.
pub fn kernel_basis<F: Scalar>(m: &Mat<F>) -> Mat<F> {
    let n = m.ncols();
    let mut e = Echelon::new(n);
    for r in m.transpose().columns() {
        e.insert(r, None);
    }
    let rows = e.into_rref();
    let mut free: Vec<Option<SparseVec<F>>> = (0..n).map(|j| Some(vec![(j, F::one())])).collect();
    for (p, _) in &rows {
        free[*p] = None;
    }
    for (p, row) in &rows {
        for (f, x) in row.iter().skip(1) {
            if let Some(v) = free[*f].as_mut() {
                v.push((*p, x.neg()));
            }
        }
    }
    let cols = free
        .into_iter()
        .flatten()
        .map(|mut v| {
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect();
    Mat::from_columns(n, cols)
}

/// Indices of a maximal set of independent columns, first-come.
pub fn independent_columns<F: Scalar>(m: &Mat<F>) -> Vec<usize> {
    let mut e = Echelon::new(m.nrows());
    (0..m.ncols()).filter(|&j| matches!(e.insert(m.col(j), None), Inserted::Pivot(_))).collect()
}

/// Some `x` with `m x = b`, if one exists.
pub fn solve<F: Scalar>(m: &Mat<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    let mut e = Echelon::with_tags(m.nrows(), m.ncols());
    for (j, c) in m.columns().iter().enumerate() {
        e.insert(c, Some(j));
    }
    let (res, x) = e.decompose(b);
    res.is_empty().then(|| to_sparse(&x))
}

/// Inverse of a square matrix, if invertible.
pub fn inverse<F: Scalar>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.ncols();
    if m.nrows() != n {
        return None;
    }
    let mut e = Echelon::with_tags(n, n);
    for (j, c) in m.columns().iter().enumerate() {
        if let Inserted::Dependent(_) = e.insert(c, Some(j)) {
            return None;
        }
    }
    let cols = (0..n).map(|i| to_sparse(&e.decompose(&vec![(i, F::one())]).1)).collect();
    Some(Mat::from_columns(n, cols))
}

/// `ker(d_out) / im(d_in)` with chosen representatives.
#[derive(Clone, Debug)]
pub struct Subquotient<F = Rat> {
    pub dim: usize,
    pub reps: Mat<F>,
    pub boundaries: Mat<F>,
    ambient: usize,
    bounds: Echelon<F>,
    /// Echelon of the representatives reduced modulo boundaries, tagged by
    /// representative index.
    classes: Echelon<F>,
}

impl<F: Scalar> Subquotient<F> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Homology coordinates of a cycle; error if `z` is not a cycle.
    pub fn coords(&self, z: &SparseVec<F>) -> Result<Vec<F>> {
        let (res, x) = self.classes.decompose(&self.bounds.reduce(z));
        if !res.is_empty() {
            return Err(Error::NotChainMap("image is not a cycle".into()));
        }
        Ok(x)
    }
}

pub fn homology<F: Scalar>(d_in: &Mat<F>, d_out: &Mat<F>) -> Result<Subquotient<F>> {
    let n = d_out.ncols();
    if d_in.nrows() != n {
        return Err(Error::NotComplex(format!("shape mismatch: d_in has {} rows, d_out has {} columns", d_in.nrows(), n)));
    }
    let comp = d_out.mul(d_in);
    if !comp.is_zero() {
        return Err(Error::NotComplex(format!("composite has {} nonzero entries", comp.nnz())));
    }
    let cycles = kernel_basis(d_out);
    let mut bounds = Echelon::new(n);
    let mut bcols = Vec::new();
    for c in d_in.columns() {
        if let Inserted::Pivot(_) = bounds.insert(c, None) {
            bcols.push(c.clone());
        }
    }
    let dim = cycles.ncols() - bounds.rank();
    let mut classes = Echelon::with_tags(n, dim);
    let mut reps = Vec::new();
    for z in cycles.columns() {
        if reps.len() == dim {
            break;
        }
        let r = bounds.reduce(z);
        if r.is_empty() {
            continue;
        }
        if let Inserted::Pivot(_) = classes.insert(&r, Some(reps.len())) {
            reps.push(z.clone());
        }
    }
    if reps.len() != dim {
        return Err(Error::NotComplex("boundaries are not all cycles".into()));
    }
    Ok(Subquotient {
        dim,
        reps: Mat::from_columns(n, reps),
        boundaries: Mat::from_columns(n, bcols),
        ambient: n,
        bounds,
        classes,
    })
}

/// Matrix of the map induced by `f` on homology, `dst.dim × src.dim`.
pub fn induced_map<F: Scalar>(f: &Mat<F>, src: &Subquotient<F>, dst: &Subquotient<F>) -> Result<Mat<F>> {
    if f.ncols() != src.ambient_dim() || f.nrows() != dst.ambient_dim() {
        return Err(Error::NotChainMap("shape mismatch".into()));
    }
    for b in src.boundaries.columns() {
        if dst.coords(&f.apply(b))?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotChainMap("a boundary maps to a nonzero class".into()));
        }
    }
    let mut cols = Vec::with_capacity(src.dim);
    for r in src.reps.columns() {
        cols.push(to_sparse(&dst.coords(&f.apply(r))?));
    }
    Ok(Mat::from_columns(dst.dim, cols))
}
