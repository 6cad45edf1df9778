use std::fmt;

use serde::Serialize;

pub const VARIABLES: [char; 4] = ['X', 'Y', 'Z', 'T'];

/// Global monomial orders refining total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
pub enum MonomialOrder {
    #[default]
    GRevLex,
    DegLex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::DegLex => "deglex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::GRevLex),
            "deglex" => Some(MonomialOrder::DegLex),
            _ => None,
        }
    }
}

const HIGH_BITS: u64 = 0x8000_8000_8000_8000;
const MAX_EXP: u64 = 0x7FFF;

/// Monomial X^a Y^b Z^c T^d packed as four 16-bit exponents (X in the top field).
///
/// Exponents stay below 2^15 so divisibility is a single SWAR subtraction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    #[inline]
    fn shift(var: usize) -> u32 {
        48 - 16 * var as u32
    }

    pub fn new(exps: [u16; 4]) -> Self {
        let mut v = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!((e as u64) <= MAX_EXP, "exponent overflow");
            v |= (e as u64) << Self::shift(i);
        }
        Monomial(v)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0u16; 4];
        e[i] = 1;
        Monomial::new(e)
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        ((self.0 >> Self::shift(var)) & 0xFFFF) as u16
    }

    pub fn exps(&self) -> [u16; 4] {
        [self.exp(0), self.exp(1), self.exp(2), self.exp(3)]
    }

    #[inline]
    pub fn degree(&self) -> i32 {
        let v = self.0;
        ((v & 0xFFFF) + ((v >> 16) & 0xFFFF) + ((v >> 32) & 0xFFFF) + (v >> 48)) as i32
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let r = self.0 + other.0;
        debug_assert!(r & HIGH_BITS == 0, "exponent overflow");
        Monomial(r)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        ((other.0 | HIGH_BITS) - self.0) & HIGH_BITS == HIGH_BITS
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0 - self.0))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.exp(i).max(other.exp(i));
        }
        Monomial::new(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.exp(i).min(other.exp(i));
        }
        Monomial::new(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Sort key: larger key means larger monomial in `order`.
    #[inline]
    pub fn key(&self, order: MonomialOrder) -> u64 {
        let d = self.degree() as u64;
        match order {
            MonomialOrder::GRevLex => {
                (d << 48)
                    | ((MAX_EXP - self.exp(3) as u64) << 32)
                    | ((MAX_EXP - self.exp(2) as u64) << 16)
                    | (MAX_EXP - self.exp(1) as u64)
            }
            MonomialOrder::DegLex => {
                (d << 48)
                    | ((self.exp(0) as u64) << 32)
                    | ((self.exp(1) as u64) << 16)
                    | self.exp(2) as u64
            }
        }
    }

    /// All monomials of the given degree, largest first in deglex.
    pub fn all_of_degree(d: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let d = d as u16;
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                for c in (0..=d - a - b).rev() {
                    out.push(Monomial::new([a, b, c, d - a - b - c]));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, v) in VARIABLES.iter().enumerate() {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// dim_k R_d for R = k[X,Y,Z,T].
pub fn dim_ring_degree(d: i64) -> i64 {
    if d < 0 {
        0
    } else {
        (d + 3) * (d + 2) * (d + 1) / 6
    }
}
