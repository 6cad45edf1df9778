use serde::Serialize;

use super::monomial::MonomialOrder;
use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// The graded ring F_p[X,Y,Z,T] together with the monomial order used for
/// every canonical form computed over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolyRing {
    p: u32,
    order: MonomialOrder,
}

impl Default for PolyRing {
    fn default() -> Self {
        PolyRing {
            p: DEFAULT_PRIME,
            order: MonomialOrder::GRevLex,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PolyRing {
    pub fn new(p: u32, order: MonomialOrder) -> Result<Self> {
        // products of two residues must fit in u64 and sums in u32 arithmetic
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(PolyRing { p, order })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Representative in (-p/2, p/2], used for printing.
    pub fn symmetric(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PolyRing::new(32004, MonomialOrder::GRevLex).is_err());
        assert!(PolyRing::new(1, MonomialOrder::GRevLex).is_err());
        assert!(PolyRing::new(7, MonomialOrder::DegLex).is_ok());
    }

    #[test]
    fn inverse_and_symmetric() {
        let r = PolyRing::default();
        for a in [1u32, 2, 17, 32002] {
            assert_eq!(r.mul(a, r.inv(a)), 1);
        }
        assert_eq!(r.symmetric(32002), -1);
        assert_eq!(r.from_i64(-3), 32000);
    }
}
