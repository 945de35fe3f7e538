use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Panics if `parts` is not weakly decreasing.
    pub fn new(parts: &[u32]) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing: {parts:?}");
        let mut v = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0) as usize;
        Partition((1..=w as u32).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().enumerate().all(|(i, &p)| p <= self.part(i))
    }

    /// Complement inside the `rows × cols` box, rotated back to a partition.
    pub fn complement(&self, rows: usize, cols: u32) -> Partition {
        assert!(self.fits_in_box(rows, cols), "{self} does not fit in {rows}x{cols}");
        let v: Vec<u32> = (0..rows).map(|r| cols - self.part(rows - 1 - r)).collect();
        Partition::new(&v)
    }

    /// Every partition fitting in the `rows × cols` box, in increasing size
    /// then reverse-lexicographic order.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if cur.len() == rows {
                out.push(Partition::new(cur));
                return;
            }
            for p in (0..=max).rev() {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort_by_key(|p| p.size());
        out
    }

    /// All partitions of `n`.
    pub fn of_size(n: u32) -> Vec<Partition> {
        Partition::in_box(n as usize, n).into_iter().filter(|p| p.size() == n).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_normalize() {
        assert_eq!(Partition::new(&[2, 1, 0, 0]), Partition::new(&[2, 1]));
    }

    #[test]
    fn conjugate_and_complement() {
        assert_eq!(Partition::new(&[3, 1]).conjugate(), Partition::new(&[2, 1, 1]));
        assert_eq!(Partition::new(&[1]).complement(2, 2), Partition::new(&[2, 1]));
        assert_eq!(Partition::empty().complement(1, 3), Partition::new(&[3]));
        for p in Partition::in_box(3, 3) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.complement(3, 3).complement(3, 3), p);
        }
    }

    #[test]
    fn box_counts() {
        // binomial(i+j, i)
        assert_eq!(Partition::in_box(2, 2).len(), 6);
        assert_eq!(Partition::in_box(1, 4).len(), 5);
        assert_eq!(Partition::of_size(4).len(), 5);
    }
}
