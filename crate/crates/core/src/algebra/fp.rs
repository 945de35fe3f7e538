//! The prime field of order `2^61 - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::rat::Rat;

pub const MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(x: u64) -> Fp {
        Fp(x % MODULUS)
    }

    pub fn from_i64(x: i64) -> Fp {
        let r = x.rem_euclid(MODULUS as i64);
        Fp(r as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }

    #[inline]
    pub fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MODULUS - o.0 })
    }

    #[inline]
    pub fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }

    #[inline]
    pub fn mul(self, o: Fp) -> Fp {
        let z = self.0 as u128 * o.0 as u128;
        let s = (z as u64 & MODULUS) + (z >> 61) as u64;
        let s = if s >= MODULUS { s - MODULUS } else { s };
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let (mut acc, mut b) = (Fp::ONE, self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(b);
            }
            b = b.mul(b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Fp {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(MODULUS - 2)
    }

    /// Image of a rational whose denominator is prime to the modulus.
    pub fn from_rat(x: &Rat) -> Fp {
        match x {
            Rat::Small(n, d) => Fp::from_i64(*n).mul(Fp::from_i64(*d).inv()),
            Rat::Big(_) => {
                let m = BigInt::from(MODULUS);
                let red = |b: BigInt| Fp(((b % &m + &m) % &m).to_u64().expect("reduced residue"));
                red(x.numer()).mul(red(x.denom()).inv())
            }
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals_map_consistently() {
        let half = Fp::from_rat(&Rat::new(1, 2));
        assert_eq!(half.mul(Fp::from_i64(2)), Fp::ONE);
        assert_eq!(Fp::from_rat(&Rat::int(-3)), Fp::from_i64(3).neg());
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..MODULUS, b in 0u64..MODULUS, c in 0u64..MODULUS) {
            let (a, b, c) = (Fp(a), Fp(b), Fp(c));
            prop_assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
            prop_assert_eq!(a.sub(b).add(b), a);
            if !a.is_zero() {
                prop_assert_eq!(a.mul(a.inv()), Fp::ONE);
            }
        }

        #[test]
        fn matches_big_arithmetic(a in 0u64..MODULUS, b in 0u64..MODULUS) {
            let want = (a as u128 * b as u128 % MODULUS as u128) as u64;
            prop_assert_eq!(Fp(a).mul(Fp(b)).value(), want);
        }
    }
}
