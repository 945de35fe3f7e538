//! The decategorified bracket: resolution sums of closed-web Hochschild
//! series, closed forms for unknots and partial closures, and the
//! normalization that turns the bracket into an invariant.

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{Prefactor, QTPoly, Rat};
use crate::error::{Error, Result};
use crate::hochschild::hh_closed;
use crate::presentations::present_cached;
use crate::webs::{crossing_terms, resolve_braid, ColouredBraid, DiagramStats};

/// `Σ_choices (-1)^hom q^shift <closed resolved web>` up to real degree `qmax`.
pub fn bracket(b: &ColouredBraid, qmax: i64) -> Result<QTPoly> {
    if !b.is_closable() {
        return Err(Error::Closure(format!(
            "bottom colours {:?} differ from top colours {:?}",
            b.colours,
            b.top_colours()
        )));
    }
    let terms: Vec<_> = b.crossings().into_iter().map(|(c1, c2, s)| crossing_terms(c1, c2, s)).collect::<Result<_>>()?;
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for t in &terms {
        choices = choices.into_iter().flat_map(|c| (0..t.len()).map(move |k| [c.clone(), vec![k]].concat())).collect();
    }
    let parts: Vec<QTPoly> = choices
        .into_par_iter()
        .map(|choice| {
            let (mut hom, mut shift) = (0, 0);
            for (k, &c) in choice.iter().enumerate() {
                hom += terms[k][c].hom_degree;
                shift += terms[k][c].q_shift;
            }
            let ring = present_cached(&resolve_braid(b, &choice)?);
            let value = hh_closed(&ring, qmax - shift)?.series();
            let sign = if hom.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            Ok(value.shift(0, 2 * shift).scale(&sign))
        })
        .collect::<Result<_>>()?;
    Ok(parts.iter().fold(QTPoly::zero().truncate(2 * qmax), |acc, p| &acc + p))
}

fn factor(q2_num: i64, step2: i64, qmax: i64) -> QTPoly {
    let num = &QTPoly::one() + &QTPoly::monomial(-2, q2_num, Rat::one());
    &num * &QTPoly::geometric(step2, 2 * qmax)
}

/// `Π_{i=1}^{k} (1 + t^-1 q^{2i-1}) / (1 - q^{2i})` up to `qmax`.
pub fn closed_form_a1(k: u8, qmax: i64) -> QTPoly {
    (1..=k as i64).fold(QTPoly::one(), |acc, i| &acc * &factor(2 * (2 * i - 1), 4 * i, qmax)).truncate(2 * qmax)
}

/// `Π_{l=1}^{j} (1 + t^-1 q^{2i+2l-1}) / (1 - q^{2l})` up to `qmax`.
pub fn closed_form_a2(i: u8, j: u8, qmax: i64) -> QTPoly {
    let i = i as i64;
    (1..=j as i64).fold(QTPoly::one(), |acc, l| &acc * &factor(2 * (2 * i + 2 * l - 1), 4 * l, qmax)).truncate(2 * qmax)
}

/// `(-tq)^{normalization / 2}` attached to a bracket.
pub fn prefactor(stats: &DiagramStats) -> Prefactor {
    let n = stats.normalization2();
    Prefactor { sign_base: -1, t2: n, q2: n }
}

pub fn normalize_i(br: QTPoly, stats: &DiagramStats) -> QTPoly {
    br.with_prefactor(prefactor(stats))
}

/// Normalized bracket up to total degree `qmax` (after the prefactor).
pub fn normalized_bracket(b: &ColouredBraid, qmax: i64) -> Result<QTPoly> {
    let stats = crate::webs::diagram_stats(b);
    let n = stats.normalization2();
    let br = bracket(b, (2 * qmax - n).div_euclid(2))?;
    let out = normalize_i(br, &stats);
    Ok(if out.prefactor().is_none() { out.truncate(2 * qmax) } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(c: &[u8], w: &[i32]) -> ColouredBraid {
        ColouredBraid::new(c.to_vec(), w.to_vec()).unwrap()
    }

    #[test]
    fn a1_first_terms() {
        let p = closed_form_a1(1, 3);
        let want = QTPoly::from_terms([((0, 0), 1), ((-2, 2), 1), ((0, 4), 1), ((-2, 6), 1)].map(|(k, c)| (k, Rat::int(c))));
        assert!(p.agrees_up_to(&want, 6));
        let p = closed_form_a1(2, 6);
        assert_eq!(p.coeff(0, 0), Rat::one());
        assert_eq!(p.coeff(-4, 8), Rat::one());
    }

    #[test]
    fn a2_factors() {
        assert_eq!(closed_form_a2(2, 0, 8), QTPoly::one().truncate(16));
        let want = &(&QTPoly::one() + &QTPoly::monomial(-2, 10, Rat::one())) * &QTPoly::geometric(4, 16);
        assert_eq!(closed_form_a2(2, 1, 8), want.truncate(16));
    }

    #[test]
    fn normalization_examples() {
        let s = DiagramStats { s2: 1, ..Default::default() };
        assert_eq!(normalize_i(QTPoly::one(), &s), QTPoly::monomial(2, 2, -Rat::one()));
        let s = DiagramStats { s1: 1, ..Default::default() };
        assert!(normalize_i(QTPoly::one(), &s).prefactor().is_some());
        let s = DiagramStats { s2: 2, n2_plus: 1, ..Default::default() };
        assert_eq!(prefactor(&s).t2, 2);
    }

    #[test]
    fn unknot_brackets() {
        for k in 1..=2 {
            assert_eq!(bracket(&braid(&[k], &[]), 10).unwrap(), closed_form_a1(k, 10));
        }
    }

    #[test]
    fn reidemeister_one() {
        let q = 8;
        let u2 = bracket(&braid(&[2], &[]), q).unwrap();
        assert!(bracket(&braid(&[2, 2], &[1]), q).unwrap().agrees_up_to(&u2, 2 * q));
        let neg = bracket(&braid(&[2, 2], &[-1]), q).unwrap();
        assert!(neg.agrees_up_to(&u2.shift(-4, -4), 2 * q - 4));
        let u1 = bracket(&braid(&[1], &[]), q).unwrap();
        assert!(bracket(&braid(&[1, 1], &[1]), q).unwrap().agrees_up_to(&u1, 2 * q));
        let neg = bracket(&braid(&[1, 1], &[-1]), q).unwrap();
        assert!(neg.agrees_up_to(&-&u1.shift(-2, -2), 2 * q - 2));
    }
}
