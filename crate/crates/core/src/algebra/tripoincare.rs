use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::qtpoly::QTPoly;
use super::rat::Rat;

/// Graded dimensions over (homological, Hochschild, q), all degrees doubled.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TriPoincare {
    entries: BTreeMap<(i64, i64, i64), u64>,
    /// Doubled q bound; nothing is known above it.
    qmax2: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Row {
    pub h2: i64,
    pub hh2: i64,
    pub q2: i64,
    pub dim: u64,
}

impl TriPoincare {
    pub fn new(qmax2: i64) -> Self {
        TriPoincare { entries: BTreeMap::new(), qmax2 }
    }

    pub fn qmax2(&self) -> i64 {
        self.qmax2
    }

    /// Adds `dim` at the given degrees; entries above the bound are dropped.
    pub fn add(&mut self, h2: i64, hh2: i64, q2: i64, dim: u64) {
        if dim == 0 || q2 > self.qmax2 {
            return;
        }
        *self.entries.entry((h2, hh2, q2)).or_insert(0) += dim;
    }

    pub fn get(&self, h2: i64, hh2: i64, q2: i64) -> u64 {
        self.entries.get(&(h2, hh2, q2)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<Row> {
        self.entries.iter().map(|(&(h2, hh2, q2), &dim)| Row { h2, hh2, q2, dim }).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Moves every entry; the q bound moves with it.
    pub fn shift(&self, h2: i64, hh2: i64, q2: i64) -> TriPoincare {
        TriPoincare {
            entries: self.entries.iter().map(|(&(a, b, c), &d)| ((a + h2, b + hh2, c + q2), d)).collect(),
            qmax2: self.qmax2 + q2,
        }
    }

    pub fn truncate(&self, qmax2: i64) -> TriPoincare {
        let m = qmax2.min(self.qmax2);
        TriPoincare {
            entries: self.entries.iter().filter(|(k, _)| k.2 <= m).map(|(&k, &d)| (k, d)).collect(),
            qmax2: m,
        }
    }

    /// Equal on all q-degrees at most `qmax2`.
    pub fn agrees_up_to(&self, other: &TriPoincare, qmax2: i64) -> bool {
        self.truncate(qmax2).entries == other.truncate(qmax2).entries
    }

    /// `Σ (-1)^h q^q t^hh dim`. Needs integral homological degrees.
    pub fn euler(&self) -> Result<QTPoly> {
        let mut p = QTPoly::zero();
        for (&(h2, hh2, q2), &d) in &self.entries {
            if h2 % 2 != 0 {
                return Err(Error::Domain("Euler characteristic of a half-integral homological degree".into()));
            }
            let s = if (h2 / 2).rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            p.add_term(hh2, q2, &(&s * &Rat::int(d as i64)));
        }
        Ok(p.truncate(self.qmax2))
    }

    /// Hochschild-q table at one homological degree.
    pub fn at_hom(&self, h2: i64) -> BTreeMap<(i64, i64), u64> {
        self.entries.iter().filter(|(k, _)| k.0 == h2).map(|(&(_, b, c), &d)| ((b, c), d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_enforced() {
        let mut t = TriPoincare::new(4);
        t.add(0, 0, 6, 1);
        assert!(t.is_empty());
        t.add(0, 0, 4, 2);
        t.add(2, -2, 2, 1);
        let e = t.euler().unwrap();
        assert_eq!(e.coeff(0, 4), Rat::int(2));
        assert_eq!(e.coeff(-2, 2), Rat::int(-1));
    }
}
