//! Quantum integers and binomials, `[n] = 1 + q^2 + ... + q^{2(n-1)}`.

use crate::error::{Error, Result};

use super::qtpoly::QTPoly;
use super::rat::Rat;

/// Coefficient list in powers of `q^2`: entry `k` is the coefficient of `q^{2k}`.
pub type Q2Coeffs = Vec<i64>;

fn mul(a: &[i64], b: &[i64]) -> Q2Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with unit leading and constant coefficients.
fn div_exact(a: &[i64], b: &[i64]) -> Q2Coeffs {
    let mut rem = a.to_vec();
    let n = b.len();
    assert!(n > 0 && b[n - 1] == 1);
    if rem.len() < n {
        return Vec::new();
    }
    let mut out = vec![0; rem.len() - n + 1];
    for i in (0..out.len()).rev() {
        let c = rem[i + n - 1];
        out[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact quantum division");
    out
}

pub fn quantum_integer_coeffs(n: u32) -> Q2Coeffs {
    vec![1; n as usize]
}

pub fn quantum_factorial_coeffs(n: u32) -> Q2Coeffs {
    (1..=n).fold(vec![1], |acc, k| mul(&acc, &quantum_integer_coeffs(k)))
}

pub fn quantum_binomial_coeffs(n: i64, m: i64) -> Result<Q2Coeffs> {
    if n < 0 || m < 0 || m > n {
        return Err(Error::Domain(format!("quantum binomial needs 0 <= m <= n, got ({n},{m})")));
    }
    let (n, m) = (n as u32, m as u32);
    let den = mul(&quantum_factorial_coeffs(m), &quantum_factorial_coeffs(n - m));
    Ok(div_exact(&quantum_factorial_coeffs(n), &den))
}

fn to_qt(c: &[i64]) -> QTPoly {
    QTPoly::from_terms(c.iter().enumerate().map(|(k, &x)| ((0, 4 * k as i64), Rat::int(x))))
}

/// `[n]` as a polynomial in q.
pub fn quantum_integer(n: u32) -> QTPoly {
    to_qt(&quantum_integer_coeffs(n))
}

pub fn quantum_binomial(n: i64, m: i64) -> Result<QTPoly> {
    Ok(to_qt(&quantum_binomial_coeffs(n, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(quantum_integer_coeffs(0), Vec::<i64>::new());
        assert_eq!(quantum_integer_coeffs(4), vec![1, 1, 1, 1]);
        assert_eq!(quantum_binomial_coeffs(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(quantum_binomial_coeffs(5, 0).unwrap(), vec![1]);
        assert_eq!(quantum_binomial_coeffs(4, 2).unwrap(), vec![1, 1, 2, 1, 1]);
        assert!(quantum_binomial_coeffs(2, 3).is_err());
        assert!(quantum_binomial_coeffs(2, -1).is_err());
    }

    #[test]
    fn binomial_counts_partitions_in_a_box() {
        // coefficient of q^{2k} in [n choose m] = #partitions of k in an m x (n-m) box
        use crate::algebra::Partition;
        for n in 0..7u32 {
            for m in 0..=n {
                let c = quantum_binomial_coeffs(n as i64, m as i64).unwrap();
                let mut count = vec![0i64; c.len()];
                for p in Partition::in_box(m as usize, n - m) {
                    count[p.size() as usize] += 1;
                }
                assert_eq!(c, count);
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_palindromic(n in 0i64..12, m in 0i64..12) {
            prop_assume!(m <= n);
            let a = quantum_binomial_coeffs(n, m).unwrap();
            let b = quantum_binomial_coeffs(n, n - m).unwrap();
            prop_assert_eq!(&a, &b);
            let mut r = a.clone();
            r.reverse();
            prop_assert_eq!(a, r);
        }
    }
}
