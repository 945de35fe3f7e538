//! Schur polynomials, in explicit variables and in elementary symmetric ones.

use num_traits::One;

use crate::error::{Error, Result};

use super::mpoly::{Monomial, MPoly, Var};
use super::partition::Partition;
use super::rat::Rat;

/// Determinant by cofactor expansion; fine for the small sizes used here.
pub fn det(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    match n {
        0 => MPoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Complete homogeneous symmetric polynomial `h_k` in `vars`.
pub fn complete_h(k: i64, vars: &[Var]) -> MPoly {
    if k < 0 {
        return MPoly::zero();
    }
    if k == 0 {
        return MPoly::one();
    }
    fn rec(vars: &[Var], i: usize, left: u32, cur: &mut Vec<(Var, u32)>, out: &mut MPoly) {
        if left == 0 {
            out.add_term(Monomial::from_pairs(cur.clone()), &Rat::one());
            return;
        }
        if i == vars.len() {
            return;
        }
        for e in (0..=left).rev() {
            cur.push((vars[i], e));
            rec(vars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = MPoly::zero();
    rec(vars, 0, k as u32, &mut Vec::new(), &mut out);
    out
}

/// Elementary symmetric polynomial `e_k` in `vars`.
pub fn elementary(k: usize, vars: &[Var]) -> MPoly {
    if k > vars.len() {
        return MPoly::zero();
    }
    fn rec(vars: &[Var], start: usize, left: usize, cur: &mut Vec<(Var, u32)>, out: &mut MPoly) {
        if left == 0 {
            out.add_term(Monomial::from_pairs(cur.clone()), &Rat::one());
            return;
        }
        for i in start..vars.len() {
            cur.push((vars[i], 1));
            rec(vars, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = MPoly::zero();
    rec(vars, 0, k, &mut Vec::new(), &mut out);
    out
}

/// `s_λ(vars)` by the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`.
pub fn schur(lambda: &Partition, vars: &[Var]) -> MPoly {
    if lambda.len() > vars.len() {
        return MPoly::zero();
    }
    let n = lambda.len();
    let m: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| complete_h(lambda.part(i) as i64 - i as i64 + j as i64, vars)).collect())
        .collect();
    det(&m)
}

/// `s_λ` for an alphabet whose elementary symmetric functions are `e[0] = e_1,
/// e[1] = e_2, ...` (and `e_k = 0` past the end), by the dual Jacobi–Trudi
/// determinant `det(e_{λ'_i - i + j})`.
pub fn schur_from_elementary(lambda: &Partition, e: &[MPoly]) -> MPoly {
    let conj = lambda.conjugate();
    let n = conj.len();
    let ek = |k: i64| -> MPoly {
        if k == 0 {
            MPoly::one()
        } else if k < 0 || k as usize > e.len() {
            MPoly::zero()
        } else {
            e[k as usize - 1].clone()
        }
    };
    let m: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| ek(conj.part(i) as i64 - i as i64 + j as i64)).collect())
        .collect();
    det(&m)
}

/// `s_λ` for an alphabet given by its complete symmetric functions
/// `h[0] = h_1, h[1] = h_2, ...` (used for negated alphabets).
pub fn schur_from_complete(lambda: &Partition, h: &[MPoly]) -> MPoly {
    let n = lambda.len();
    let hk = |k: i64| -> MPoly {
        if k == 0 {
            MPoly::one()
        } else if k < 0 || k as usize > h.len() {
            MPoly::zero()
        } else {
            h[k as usize - 1].clone()
        }
    };
    let m: Vec<Vec<MPoly>> = (0..n)
        .map(|i| (0..n).map(|j| hk(lambda.part(i) as i64 - i as i64 + j as i64)).collect())
        .collect();
    det(&m)
}

/// One summand `coeff · π'_prime · Π π_full` of a rewrite identity. `prime`
/// lives in the last two variables, each `full` factor in all four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTerm {
    pub coeff: i64,
    pub prime: Partition,
    pub full: Vec<Partition>,
}

/// Expresses `π_λ(x1,x2)` through `π'(x3,x4)` and Schur polynomials in
/// `x1..x4`, for `λ ⊆ (2,2)`.
pub fn rewrite_pi_in_primes(lambda: &Partition) -> Result<Vec<RewriteTerm>> {
    if !lambda.fits_in_box(2, 2) {
        return Err(Error::Domain(format!("{lambda} is not contained in (2,2)")));
    }
    let p = |v: &[u32]| Partition::new(v);
    let t = |coeff: i64, prime: &[u32], full: &[&[u32]]| RewriteTerm {
        coeff,
        prime: p(prime),
        full: full.iter().map(|f| p(f)).collect(),
    };
    let terms = match lambda.parts() {
        [] => vec![t(1, &[], &[])],
        [1] => vec![t(1, &[], &[&[1]]), t(-1, &[1], &[])],
        [1, 1] => vec![t(1, &[], &[&[1, 1]]), t(-1, &[1], &[&[1]]), t(1, &[2], &[])],
        [2] => vec![t(1, &[], &[&[2]]), t(-1, &[1], &[&[1]]), t(1, &[1, 1], &[])],
        [2, 1] => vec![
            t(1, &[], &[&[2, 1]]),
            t(-1, &[1], &[&[2]]),
            t(-1, &[1], &[&[1, 1]]),
            t(1, &[2], &[&[1]]),
            t(1, &[1, 1], &[&[1]]),
            t(-1, &[2, 1], &[]),
        ],
        [2, 2] => vec![
            t(1, &[], &[&[2, 2]]),
            t(-1, &[1], &[&[2, 1]]),
            t(1, &[1, 1], &[&[2]]),
            t(1, &[2], &[&[1, 1]]),
            t(-1, &[2, 1], &[&[1]]),
            t(1, &[2, 2], &[]),
        ],
        _ => unreachable!(),
    };
    Ok(terms)
}

/// Expands a rewrite as a polynomial in variables `x[0..4]`.
pub fn expand_rewrite(terms: &[RewriteTerm], x: [Var; 4]) -> MPoly {
    let mut out = MPoly::zero();
    for t in terms {
        let mut p = MPoly::constant(Rat::int(t.coeff));
        p = &p * &schur(&t.prime, &x[2..]);
        for f in &t.full {
            p = &p * &schur(f, &x);
        }
        out = &out + &p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(Var, u32)]) -> MPoly {
        MPoly::term(Rat::one(), Monomial::from_pairs(pairs.to_vec()))
    }

    /// Bialternant `a_{λ+δ} / a_δ`, computed by exact polynomial division.
    fn bialternant(lambda: &Partition, n: usize) -> MPoly {
        let vars: Vec<Var> = (0..n as Var).collect();
        let alt = |exps: &[u32]| -> Vec<Vec<MPoly>> {
            (0..n).map(|i| (0..n).map(|j| MPoly::var(vars[j]).pow(exps[i])).collect()).collect()
        };
        let delta: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
        let top: Vec<u32> = (0..n).map(|i| lambda.part(i) + delta[i]).collect();
        let num = det(&alt(&top));
        let den = det(&alt(&delta));
        divide(&num, &den)
    }

    /// Polynomial long division under lex; panics if inexact.
    fn divide(a: &MPoly, b: &MPoly) -> MPoly {
        let (lb, cb) = b.leading().unwrap();
        let mut rem = a.clone();
        let mut q = MPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let mono = lm.div(&lb).expect("inexact division");
            let c = &lc / &cb;
            let t = MPoly::term(c, mono);
            rem = &rem - &(&t * b);
            q = &q + &t;
        }
        q
    }

    #[test]
    fn two_variable_values() {
        let v = [0, 1];
        assert_eq!(schur(&Partition::new(&[1]), &v), &m(&[(0, 1)]) + &m(&[(1, 1)]));
        assert_eq!(schur(&Partition::new(&[2, 2]), &v), m(&[(0, 2), (1, 2)]));
        assert_eq!(schur(&Partition::new(&[2, 1]), &v), &m(&[(0, 2), (1, 1)]) + &m(&[(0, 1), (1, 2)]));
        assert!(schur(&Partition::new(&[1, 1, 1]), &v).is_zero());
    }

    #[test]
    fn jacobi_trudi_matches_bialternant() {
        for n in 1..=3 {
            let vars: Vec<Var> = (0..n as Var).collect();
            for lam in Partition::in_box(n, 3) {
                assert_eq!(schur(&lam, &vars), bialternant(&lam, n), "{lam} in {n} vars");
            }
        }
    }

    #[test]
    fn dual_jacobi_trudi_agrees() {
        let vars: Vec<Var> = vec![0, 1, 2];
        let e: Vec<MPoly> = (1..=3).map(|k| elementary(k, &vars)).collect();
        for lam in Partition::in_box(3, 3) {
            assert_eq!(schur_from_elementary(&lam, &e), schur(&lam, &vars), "{lam}");
        }
    }

    /// Expands a symmetric polynomial in the Schur basis by peeling leading
    /// monomials, returning the coefficients.
    fn schur_expand(p: &MPoly, vars: &[Var]) -> Vec<(Partition, Rat)> {
        let mut rem = p.clone();
        let mut out = Vec::new();
        while let Some((lm, lc)) = rem.leading() {
            let parts: Vec<u32> = vars.iter().map(|&v| lm.exponent(v)).collect();
            let lam = Partition::new(&parts);
            rem = &rem - &schur(&lam, vars).scale(&lc);
            out.push((lam, lc));
        }
        out
    }

    #[test]
    fn littlewood_richardson_positivity() {
        let vars: Vec<Var> = (0..4).collect();
        let mut parts = Vec::new();
        for n in 0..=3 {
            parts.extend(Partition::of_size(n));
        }
        for a in &parts {
            for b in &parts {
                if a.size() + b.size() > 6 {
                    continue;
                }
                let prod = &schur(a, &vars) * &schur(b, &vars);
                for (lam, c) in schur_expand(&prod, &vars) {
                    assert!(c.is_integer() && !c.is_negative(), "{a}*{b} has {c} at {lam}");
                }
            }
        }
    }

    #[test]
    fn rewrite_identities_hold() {
        let x = [0, 1, 2, 3];
        for lam in Partition::in_box(2, 2) {
            let rw = rewrite_pi_in_primes(&lam).unwrap();
            assert_eq!(expand_rewrite(&rw, x), schur(&lam, &x[..2]), "{lam}");
        }
        assert!(rewrite_pi_in_primes(&Partition::new(&[3])).is_err());
        assert_eq!(rewrite_pi_in_primes(&Partition::empty()).unwrap().len(), 1);
    }
}
