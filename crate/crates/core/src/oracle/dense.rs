//! Slice dimensions by brute force: eliminate variables that some relation
//! determines linearly, list every monomial of the degree, generate the
//! whole ideal in that degree and take a dense rank.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{MPoly, Monomial, Rat, Var};
use crate::presentations::RingPres;

fn weight(m: &Monomial, degs: &[u32]) -> u32 {
    m.pairs().iter().map(|&(v, e)| degs[v as usize] * e).sum()
}

fn homogeneous_degree(p: &MPoly, degs: &[u32]) -> Option<u32> {
    p.terms().next().map(|(m, _)| weight(m, degs))
}

/// Every exponent vector on `vars` of weight `d`.
fn enumerate(vars: &[Var], degs: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Vec<(Var, u32)>)> = vec![(0, d, Vec::new())];
    while let Some((i, left, pairs)) = stack.pop() {
        if left == 0 {
            out.push(Monomial::from_pairs(pairs));
            continue;
        }
        if i == vars.len() {
            continue;
        }
        let w = degs[vars[i] as usize];
        for e in 0..=left / w {
            let mut p = pairs.clone();
            if e > 0 {
                p.push((vars[i], e));
            }
            stack.push((i + 1, left - e * w, p));
        }
    }
    out
}

/// Relations after solving away every variable that occurs alone and with
/// a nonzero coefficient in some relation. Returns the surviving variables
/// and relations.
fn eliminate_linear(nvars: usize, relations: &[MPoly]) -> (Vec<Var>, Vec<MPoly>) {
    let mut rels: Vec<MPoly> = relations.to_vec();
    let mut gone = vec![false; nvars];
    loop {
        let found = rels.iter().enumerate().find_map(|(i, r)| {
            r.terms()
                .rev()
                .find(|(m, _)| m.pairs().len() == 1 && m.pairs()[0].1 == 1)
                .map(|(m, c)| (i, m.pairs()[0].0, c.clone()))
        });
        let Some((i, v, c)) = found else { break };
        let r = rels.swap_remove(i);
        let lone = MPoly::term(c.clone(), Monomial::var(v));
        let value = (&lone - &r).scale(&c.recip());
        if value.uses_var(v) {
            // `v` also sits inside a product; leave the relation alone.
            rels.push(r);
            break;
        }
        gone[v as usize] = true;
        rels = rels
            .into_iter()
            .map(|p| p.subst(|w| if w == v { value.clone() } else { MPoly::var(w) }))
            .filter(|p| !p.is_zero())
            .collect();
    }
    let kept = (0..nvars as Var).filter(|&v| !gone[v as usize]).collect();
    (kept, rels)
}

/// Rank of a dense matrix over Q by row reduction.
fn dense_rank(mut rows: Vec<Vec<Rat>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot: Vec<Rat> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for (x, y) in rows[r].iter_mut().zip(&pivot).skip(col) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Dimension of the degree-`q2` part of `p`, in real degree units.
pub fn dense_slice_dim(p: &RingPres, q2: u32) -> usize {
    if q2 == 0 {
        return 1;
    }
    let degs = p.degrees();
    let (kept, rels) = eliminate_linear(p.nvars(), p.relations());
    let monos = enumerate(&kept, &degs, q2);
    if monos.is_empty() {
        return 0;
    }
    let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for r in &rels {
        let Some(d) = homogeneous_degree(r, &degs) else { continue };
        if d > q2 {
            continue;
        }
        for m in enumerate(&kept, &degs, q2 - d) {
            let mut row = vec![Rat::zero(); monos.len()];
            for (n, c) in r.mul_monomial(&m, &Rat::one()).terms() {
                row[col[n]] += c;
            }
            rows.push(row);
        }
    }
    monos.len() - dense_rank(rows, monos.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::present_cached;
    use crate::webs::{local_web, LadderWeb, Resolution};

    #[test]
    fn small_cases() {
        let d21 = present_cached(&local_web(2, 1, Resolution::Dumbbell).unwrap());
        assert_eq!(dense_slice_dim(&d21, 2), 3);
        assert_eq!(dense_slice_dim(&d21, 0), 1);
        let free = RingPres::free(&[("x1", 2), ("x2", 4)]);
        assert_eq!(dense_slice_dim(&free, 4), 2);
        let arc = present_cached(&LadderWeb::identity(&[2]));
        assert_eq!(dense_slice_dim(&arc, 3), 0);
    }
}
