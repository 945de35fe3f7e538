//! Laurent polynomials / truncated series in `q` and `t` with half-integer
//! exponents, stored doubled.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::Rat;

/// `(sign_base · t · q)^{exponent2 / 2}` kept unexpanded.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Prefactor {
    pub sign_base: i64,
    pub t2: i64,
    pub q2: i64,
}

impl Prefactor {
    pub fn is_integral(&self) -> bool {
        self.t2 % 2 == 0 && self.q2 % 2 == 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QTPoly {
    /// `(t2, q2) -> coefficient`
    terms: BTreeMap<(i64, i64), Rat>,
    /// Terms with `q2 > qmax2` are unknown, not zero.
    qmax2: Option<i64>,
    prefactor: Option<Prefactor>,
}

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly::default()
    }

    pub fn one() -> Self {
        QTPoly::monomial(0, 0, Rat::one())
    }

    pub fn monomial(t2: i64, q2: i64, c: Rat) -> Self {
        QTPoly::from_terms([((t2, q2), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Rat)>>(it: I) -> Self {
        let mut p = QTPoly::zero();
        for ((t2, q2), c) in it {
            p.add_term(t2, q2, &c);
        }
        p
    }

    pub fn add_term(&mut self, t2: i64, q2: i64, c: &Rat) {
        if c.is_zero() || self.qmax2.is_some_and(|m| q2 > m) {
            return;
        }
        let e = self.terms.entry((t2, q2)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(t2, q2));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t2: i64, q2: i64) -> Rat {
        self.terms.get(&(t2, q2)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn qmax2(&self) -> Option<i64> {
        self.qmax2
    }

    pub fn prefactor(&self) -> Option<Prefactor> {
        self.prefactor
    }

    /// Drops every term above `q2 = qmax2` and records the bound.
    pub fn truncate(mut self, qmax2: i64) -> Self {
        let m = self.qmax2.map_or(qmax2, |old| old.min(qmax2));
        self.terms.retain(|&(_, q), _| q <= m);
        self.qmax2 = Some(m);
        self
    }

    pub fn shift(&self, t2: i64, q2: i64) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + t2, b + q2), c.clone())).collect(),
            qmax2: self.qmax2.map(|m| m + q2),
            prefactor: self.prefactor,
        }
    }

    pub fn scale(&self, c: &Rat) -> QTPoly {
        let mut out = QTPoly { terms: BTreeMap::new(), qmax2: self.qmax2, prefactor: self.prefactor };
        for (&(a, b), x) in &self.terms {
            out.add_term(a, b, &(x * c));
        }
        out
    }

    /// `1 / (1 - q^{step2/2})` as a series up to `qmax2`.
    pub fn geometric(step2: i64, qmax2: i64) -> QTPoly {
        assert!(step2 > 0);
        let mut p = QTPoly::zero();
        let mut q = 0;
        while q <= qmax2 {
            p.add_term(0, q, &Rat::one());
            q += step2;
        }
        p.truncate(qmax2)
    }

    /// Attaches a symbolic prefactor; an integral one is multiplied in.
    pub fn with_prefactor(self, pf: Prefactor) -> QTPoly {
        if pf.is_integral() {
            let (a, b) = (pf.t2 / 2, pf.q2 / 2);
            assert_eq!(a, b, "prefactor must be a power of (sign t q)");
            let sign = if a.rem_euclid(2) == 1 && pf.sign_base < 0 { -Rat::one() } else { Rat::one() };
            let mut out = self.shift(pf.t2, pf.q2).scale(&sign);
            out.prefactor = None;
            out
        } else {
            QTPoly { prefactor: Some(pf), ..self }
        }
    }

    /// Same coefficients on every `q2 <= qmax2`.
    pub fn agrees_up_to(&self, other: &QTPoly, qmax2: i64) -> bool {
        let a: Vec<_> = self.terms.iter().filter(|(k, _)| k.1 <= qmax2).collect();
        let b: Vec<_> = other.terms.iter().filter(|(k, _)| k.1 <= qmax2).collect();
        a == b && self.prefactor == other.prefactor
    }
}

fn join_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<'a> Add<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        assert_eq!(self.prefactor, rhs.prefactor, "adding series with different prefactors");
        let mut out = self.clone();
        out.qmax2 = join_bound(self.qmax2, rhs.qmax2);
        out.terms.retain(|&(_, q), _| out.qmax2.is_none_or(|m| q <= m));
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        self.scale(&-Rat::one())
    }
}

impl<'a> Sub<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        self + &(-rhs)
    }
}

/// Truncated product. A factor with a bound `m` only determines the product
/// up to `m` plus the other factor's lowest q-degree.
impl<'a> Mul<&'a QTPoly> for &'a QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let low = |p: &QTPoly| p.terms.keys().map(|k| k.1).min();
        let bound = match (self.qmax2, rhs.qmax2) {
            (None, None) => None,
            (Some(m), None) => Some(m + low(rhs).unwrap_or(0)),
            (None, Some(m)) => Some(m + low(self).unwrap_or(0)),
            (Some(a), Some(b)) => Some((a + low(rhs).unwrap_or(0)).min(b + low(self).unwrap_or(0))),
        };
        let prefactor = match (self.prefactor, rhs.prefactor) {
            (None, p) | (p, None) => p,
            (Some(a), Some(b)) => {
                assert_eq!(a.sign_base, b.sign_base);
                Some(Prefactor { sign_base: a.sign_base, t2: a.t2 + b.t2, q2: a.q2 + b.q2 })
            }
        };
        let mut out = QTPoly { terms: BTreeMap::new(), qmax2: bound, prefactor: None };
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, &(x * y));
            }
        }
        match prefactor {
            Some(pf) => out.with_prefactor(pf),
            None => out,
        }
    }
}

fn half(n: i64) -> String {
    if n % 2 == 0 {
        format!("{}", n / 2)
    } else {
        format!("{}/2", n)
    }
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(pf) = self.prefactor {
            let base = if pf.sign_base < 0 { "-tq" } else { "tq" };
            write!(f, "({base})^({}) * ", half(pf.t2))?;
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        let mut first = true;
        // ascending q, then t
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(t, q), _)| (q, t));
        for (&(t2, q2), c) in keys {
            let neg = c.is_negative();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !a.is_one() || (t2 == 0 && q2 == 0) {
                parts.push(a.to_string());
            }
            if t2 != 0 {
                parts.push(format!("t^{}", half(t2)));
            }
            if q2 != 0 {
                parts.push(format!("q^{}", half(q2)));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if let Some(m) = self.qmax2 {
            write!(f, " + O(q^{})", half(m + 1))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_inverts() {
        let g = QTPoly::geometric(4, 20);
        let one_minus = &QTPoly::one() - &QTPoly::monomial(0, 4, Rat::one());
        let p = &g * &one_minus;
        assert!(p.agrees_up_to(&QTPoly::one(), 20));
    }

    #[test]
    fn integral_prefactor_expands() {
        let p = QTPoly::one().with_prefactor(Prefactor { sign_base: -1, t2: 2, q2: 2 });
        assert_eq!(p, QTPoly::monomial(2, 2, -Rat::one()));
        let h = QTPoly::one().with_prefactor(Prefactor { sign_base: -1, t2: 1, q2: 1 });
        assert!(h.prefactor().is_some());
    }
}
