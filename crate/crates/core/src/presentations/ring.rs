//! Polynomial presentations of web bimodules and their graded slices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::{monomials_of_degree, MPoly, Monomial, Rat, Var};
use crate::linalg::{Echelon, SparseVec};
use crate::webs::{LadderWeb, SegId, Slice};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    Bottom(usize),
    Top(usize),
    Internal,
}

#[derive(Clone, Debug)]
pub struct VarInfo {
    pub name: String,
    /// Real q-degree, `2i` for the `i`-th elementary symmetric variable.
    pub degree: u32,
    pub kind: VarKind,
}

/// Elementary symmetric functions of a union of alphabets.
pub fn e_union(parts: &[&[MPoly]]) -> Vec<MPoly> {
    let mut acc: Vec<MPoly> = Vec::new();
    for p in parts {
        let mut next = vec![MPoly::zero(); acc.len() + p.len()];
        for k in 0..next.len() {
            let mut s = MPoly::zero();
            for i in 0..=k + 1 {
                let a = if i == 0 { Some(MPoly::one()) } else { acc.get(i - 1).cloned() };
                let j = k + 1 - i;
                let b = if j == 0 { Some(MPoly::one()) } else { p.get(j - 1).cloned() };
                if let (Some(a), Some(b)) = (a, b) {
                    if !(i == 0 && j == 0) {
                        s = &s + &(&a * &b);
                    }
                }
            }
            next[k] = s;
        }
        acc = next;
    }
    acc
}

/// Web data kept alongside a presentation built from a ladder.
#[derive(Clone, Debug)]
pub struct WebLayout {
    pub web: LadderWeb,
    /// Elementary symmetric functions of every segment.
    pub seg_e: HashMap<SegId, Vec<MPoly>>,
    /// Segments whose elementary functions are variables.
    pub seg_vars: HashMap<SegId, Vec<Var>>,
    pub top_segments: Vec<SegId>,
}

/// The presentation after solving away every variable that occurs linearly
/// in some relation.
#[derive(Clone, Debug)]
struct Reduced {
    kept: Vec<Var>,
    degs: Vec<u32>,
    /// Original variable to polynomial in kept (local) indices.
    subst: Vec<MPoly>,
    rels: Vec<MPoly>,
}

/// One graded piece of the quotient ring.
#[derive(Debug)]
pub struct SliceBasis {
    pub degree: u32,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Column of each basis monomial.
    basis: Vec<usize>,
    /// Coordinates of every monomial's class.
    normal: Vec<SparseVec>,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis monomials in kept-variable indices.
    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&c| &self.monos[c])
    }

    fn coords_local(&self, p: &MPoly) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (m, c) in p.terms() {
            let i = *self.index.get(m).unwrap_or_else(|| panic!("monomial outside degree {}", self.degree));
            for (k, x) in &self.normal[i] {
                *acc.entry(*k).or_insert_with(Rat::zero) += &(c * x);
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

#[derive(Debug)]
pub struct RingPres {
    vars: Vec<VarInfo>,
    relations: Vec<MPoly>,
    bottom: Vec<Vec<Var>>,
    top: Vec<Vec<Var>>,
    layout: Option<WebLayout>,
    red: Reduced,
    memo: Mutex<HashMap<u32, Arc<SliceBasis>>>,
}

impl RingPres {
    /// A presentation from explicit data. `bottom`/`top` list the boundary
    /// blocks (elementary variables of each boundary edge).
    pub fn from_parts(vars: Vec<VarInfo>, relations: Vec<MPoly>, bottom: Vec<Vec<Var>>, top: Vec<Vec<Var>>) -> Self {
        let degs: Vec<u32> = vars.iter().map(|v| v.degree).collect();
        for r in &relations {
            assert!(r.is_homogeneous(&degs), "inhomogeneous relation");
        }
        let red = reduce(&vars, &relations);
        RingPres { vars, relations, bottom, top, layout: None, red, memo: Mutex::new(HashMap::new()) }
    }

    /// Free polynomial ring on named variables of the given degrees.
    pub fn free(vars: &[(&str, u32)]) -> Self {
        let vars = vars.iter().map(|&(n, d)| VarInfo { name: n.into(), degree: d, kind: VarKind::Internal }).collect();
        RingPres::from_parts(vars, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn vars(&self) -> &[VarInfo] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn relations(&self) -> &[MPoly] {
        &self.relations
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        self.vars.iter().position(|v| v.name == name).map(|i| i as Var)
    }

    pub fn bottom_vars(&self) -> &[Vec<Var>] {
        &self.bottom
    }

    pub fn top_vars(&self) -> &[Vec<Var>] {
        &self.top
    }

    pub fn layout(&self) -> Option<&WebLayout> {
        self.layout.as_ref()
    }

    pub fn web(&self) -> Option<&LadderWeb> {
        self.layout.as_ref().map(|l| &l.web)
    }

    pub fn bottom_e(&self, p: usize) -> Vec<MPoly> {
        self.bottom[p].iter().map(|&v| MPoly::var(v)).collect()
    }

    pub fn top_e(&self, p: usize) -> Vec<MPoly> {
        self.top[p].iter().map(|&v| MPoly::var(v)).collect()
    }

    /// Elementary symmetric functions of a segment of the underlying web.
    pub fn seg_e(&self, s: SegId) -> &[MPoly] {
        &self.layout.as_ref().expect("presentation without a web").seg_e[&s]
    }

    pub fn display_poly(&self, p: &MPoly) -> String {
        p.display_with(|v| self.vars[v as usize].name.clone()).to_string()
    }

    /// Number of variables left after linear elimination.
    pub fn reduced_nvars(&self) -> usize {
        self.red.kept.len()
    }

    pub fn reduced_relations(&self) -> usize {
        self.red.rels.len()
    }

    /// Rewrites a polynomial in the original variables into kept ones.
    fn to_local(&self, p: &MPoly) -> MPoly {
        p.subst(|v| self.red.subst[v as usize].clone())
    }

    fn from_local(&self, p: &MPoly) -> MPoly {
        p.rename(|v| self.red.kept[v as usize])
    }

    pub fn slice(&self, degree: u32) -> Arc<SliceBasis> {
        if let Some(s) = self.memo.lock().unwrap().get(&degree) {
            return s.clone();
        }
        let s = Arc::new(build_slice(&self.red, degree));
        self.memo.lock().unwrap().entry(degree).or_insert(s).clone()
    }

    /// Dimension of the quotient in real degree `degree`.
    pub fn slice_dim(&self, degree: u32) -> usize {
        if degree % 2 == 1 {
            return 0;
        }
        self.slice(degree).dim()
    }

    /// Coordinates of the class of `p` (homogeneous of `degree`, original
    /// variables) in the slice basis.
    pub fn coords(&self, p: &MPoly, degree: u32) -> SparseVec {
        if p.is_zero() {
            return Vec::new();
        }
        let s = self.slice(degree);
        s.coords_local(&self.to_local(p))
    }

    /// The `i`-th basis element of a slice, in original variables.
    pub fn basis_poly(&self, degree: u32, i: usize) -> MPoly {
        let s = self.slice(degree);
        let m = s.monos[s.basis[i]].clone();
        self.from_local(&MPoly::term(Rat::one(), m))
    }

    pub fn basis_polys(&self, degree: u32) -> Vec<MPoly> {
        (0..self.slice(degree).dim()).map(|i| self.basis_poly(degree, i)).collect()
    }

    /// Polynomial with the given slice coordinates.
    pub fn poly_of(&self, degree: u32, v: &SparseVec) -> MPoly {
        let s = self.slice(degree);
        let local = MPoly::from_terms(v.iter().map(|(i, c)| (s.monos[s.basis[*i]].clone(), c.clone())));
        self.from_local(&local)
    }

    /// Whether `p` lies in the ideal.
    pub fn is_zero_class(&self, p: &MPoly) -> bool {
        let degs = self.degrees();
        let mut by_deg: HashMap<u32, MPoly> = HashMap::new();
        for (m, c) in p.terms() {
            by_deg.entry(m.q_degree(&degs)).or_insert_with(MPoly::zero).add_term(m.clone(), c);
        }
        by_deg.iter().all(|(&d, q)| self.coords(q, d).is_empty())
    }

    pub fn hilbert(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree).map(|d| self.slice_dim(d)).collect()
    }
}

fn build_slice(red: &Reduced, degree: u32) -> SliceBasis {
    let monos = monomials_of_degree(&red.degs, degree);
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(monos.len());
    'outer: for g in &red.rels {
        let dg = g.q_degree(&red.degs).expect("homogeneous relation");
        if dg > degree {
            continue;
        }
        for m in monomials_of_degree(&red.degs, degree - dg) {
            if ech.rank() == monos.len() {
                break 'outer;
            }
            let mut row: SparseVec = g.terms().map(|(n, c)| (index[&n.mul(&m)], c.clone())).collect();
            row.sort_by_key(|(i, _)| *i);
            ech.insert(&row, None);
        }
    }
    let basis: Vec<usize> = (0..monos.len()).filter(|&c| !ech.is_pivot(c)).collect();
    let mut coord_of_col = vec![None; monos.len()];
    for (i, &c) in basis.iter().enumerate() {
        coord_of_col[c] = Some(i);
    }
    let mut normal: Vec<SparseVec> =
        coord_of_col.iter().map(|c| c.map_or_else(Vec::new, |i| vec![(i, Rat::one())])).collect();
    for (p, row) in ech.into_rref() {
        normal[p] = row
            .iter()
            .skip(1)
            .map(|(c, x)| (coord_of_col[*c].expect("reduced row on a pivot column"), -x))
            .collect::<SparseVec>();
        normal[p].sort_by_key(|(i, _)| *i);
    }
    SliceBasis { degree, monos, index, basis, normal }
}

fn kind_rank(k: VarKind) -> u8 {
    match k {
        VarKind::Internal => 0,
        VarKind::Top(_) => 1,
        VarKind::Bottom(_) => 2,
    }
}

/// Greedy linear elimination.
fn reduce(vars: &[VarInfo], relations: &[MPoly]) -> Reduced {
    let n = vars.len();
    let mut subst: Vec<Option<MPoly>> = vec![None; n];
    let mut rels: Vec<MPoly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    loop {
        // pick the best (relation, variable) pair
        let mut best: Option<(usize, Var, (u8, std::cmp::Reverse<Var>))> = None;
        for (ri, r) in rels.iter().enumerate() {
            for (m, _) in r.terms() {
                let p = m.pairs();
                if p.len() == 1 && p[0].1 == 1 {
                    let v = p[0].0;
                    let key = (kind_rank(vars[v as usize].kind), std::cmp::Reverse(v));
                    if best.as_ref().is_none_or(|b| key < b.2) {
                        best = Some((ri, v, key));
                    }
                }
            }
        }
        let Some((ri, v, _)) = best else { break };
        let r = rels.swap_remove(ri);
        let c = r.coeff(&Monomial::var(v));
        let rest = &r - &MPoly::var(v).scale(&c);
        let sol = rest.scale(&-c.recip());
        let sub = |p: &MPoly| p.subst(|w| if w == v { sol.clone() } else { MPoly::var(w) });
        rels = rels.iter().map(sub).filter(|p| !p.is_zero()).collect();
        for s in subst.iter_mut().flatten() {
            if s.uses_var(v) {
                *s = sub(s);
            }
        }
        subst[v as usize] = Some(sol);
    }
    let kept: Vec<Var> = (0..n as Var).filter(|&v| subst[v as usize].is_none()).collect();
    let mut local = vec![u32::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    let to_local = |p: &MPoly| p.rename(|w| {
        let l = local[w as usize];
        assert!(l != u32::MAX, "eliminated variable survived");
        l
    });
    let subst_local = (0..n)
        .map(|v| match &subst[v] {
            Some(p) => to_local(p),
            None => MPoly::var(local[v]),
        })
        .collect();
    let mut rels: Vec<MPoly> = rels.iter().map(to_local).collect();
    rels.sort_by_key(|r| r.len());
    Reduced { degs: kept.iter().map(|&v| vars[v as usize].degree).collect(), kept, subst: subst_local, rels }
}

/// The polynomial presentation of a ladder web. Bottom edges, split outputs
/// and (where needed) top edges carry elementary symmetric variables; merge
/// outputs are expressed through their inputs.
pub fn present_web(w: &LadderWeb) -> RingPres {
    let mut vars: Vec<VarInfo> = Vec::new();
    let mut seg_e: HashMap<SegId, Vec<MPoly>> = HashMap::new();
    let mut seg_vars: HashMap<SegId, Vec<Var>> = HashMap::new();
    let mut relations = Vec::new();
    let segs = w.segment_levels();
    let levels = w.levels();
    let top_segments = segs.last().unwrap().clone();
    let top_pos = |s: SegId| top_segments.iter().position(|&t| t == s);

    let block = |vars: &mut Vec<VarInfo>, name: &dyn Fn(usize) -> String, colour: u8, kind: VarKind| -> Vec<Var> {
        (1..=colour as usize)
            .map(|i| {
                vars.push(VarInfo { name: name(i), degree: 2 * i as u32, kind });
                (vars.len() - 1) as Var
            })
            .collect()
    };

    let mut bottom = Vec::new();
    for (p, &c) in w.bottom.iter().enumerate() {
        let b = block(&mut vars, &|i| format!("b{}.{}", p + 1, i), c, VarKind::Bottom(p));
        seg_e.insert(SegId::Bottom(p), b.iter().map(|&v| MPoly::var(v)).collect());
        seg_vars.insert(SegId::Bottom(p), b.clone());
        bottom.push(b);
    }
    for (k, s) in w.slices.iter().enumerate() {
        let lev = &segs[k];
        match *s {
            Slice::Split { pos, left, right } => {
                let mut outs = Vec::new();
                for (j, c) in [left, right].into_iter().enumerate() {
                    let id = SegId::Out(k, j);
                    let (kind, name): (VarKind, Box<dyn Fn(usize) -> String>) = match top_pos(id) {
                        Some(p) => (VarKind::Top(p), Box::new(move |i| format!("t{}.{}", p + 1, i))),
                        None => (VarKind::Internal, Box::new(move |i| format!("s{}.{}.{}", k + 1, j + 1, i))),
                    };
                    let b = block(&mut vars, &*name, c, kind);
                    seg_e.insert(id, b.iter().map(|&v| MPoly::var(v)).collect());
                    seg_vars.insert(id, b);
                    outs.push(id);
                }
                let big = seg_e[&lev[pos]].clone();
                let small = e_union(&[&seg_e[&outs[0]], &seg_e[&outs[1]]]);
                for (a, b) in big.iter().zip(&small) {
                    relations.push(a - b);
                }
            }
            Slice::Merge { pos } => {
                let e = e_union(&[&seg_e[&lev[pos]], &seg_e[&lev[pos + 1]]]);
                debug_assert_eq!(e.len(), levels[k + 1][pos] as usize);
                seg_e.insert(SegId::Out(k, 0), e);
            }
        }
    }
    let mut top = Vec::new();
    for (p, &s) in top_segments.iter().enumerate() {
        match seg_vars.get(&s) {
            Some(v) if matches!(s, SegId::Out(..)) => top.push(v.clone()),
            _ => {
                let c = seg_e[&s].len() as u8;
                let t = block(&mut vars, &|i| format!("t{}.{}", p + 1, i), c, VarKind::Top(p));
                for (a, &b) in seg_e[&s].iter().zip(&t) {
                    relations.push(a - &MPoly::var(b));
                }
                top.push(t);
            }
        }
    }
    let mut pres = RingPres::from_parts(vars, relations, bottom, top);
    pres.layout = Some(WebLayout { web: w.clone(), seg_e, seg_vars, top_segments });
    pres
}

/// Shared presentations, one per distinct web.
pub fn present_cached(w: &LadderWeb) -> Arc<RingPres> {
    static CACHE: OnceLock<Mutex<HashMap<LadderWeb, Arc<RingPres>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(w) {
        return p.clone();
    }
    let p = Arc::new(present_web(w));
    cache.lock().unwrap().entry(w.clone()).or_insert(p).clone()
}
