//! Finitely supported functions Z -> N, their primitives f♯ and f♯♯, and the
//! integer inequalities and bounds built from them.

mod chern;

pub use chern::{chern_classes, ChernData};

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A function Z -> N with finite support; zero values are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SupportFunction(BTreeMap<i32, u64>);

impl SupportFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(values: impl IntoIterator<Item = (i32, u64)>) -> Self {
        let mut m = BTreeMap::new();
        for (n, v) in values {
            *m.entry(n).or_insert(0) += v;
        }
        m.retain(|_, v| *v != 0);
        SupportFunction(m)
    }

    /// Parses `{2:2, 3:3}`; `{}` is the zero function.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.into(),
        };
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| err(1, "expected {n:value, ...}"))?;
        let mut values = Vec::new();
        let base = text.find('{').unwrap() + 2;
        let mut offset = 0;
        for part in inner.split(',') {
            let column = base + offset;
            offset += part.len() + 1;
            if part.trim().is_empty() {
                if inner.trim().is_empty() {
                    continue;
                }
                return Err(err(column, "empty entry"));
            }
            let (n, v) = part.split_once(':').ok_or_else(|| err(column, "expected n:value"))?;
            let n: i32 = n.trim().parse().map_err(|_| err(column, "degree is not an integer"))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| err(column, "value is not a natural number"))?;
            values.push((n, v));
        }
        Ok(Self::new(values))
    }

    pub fn get(&self, n: i32) -> u64 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(&n, &v)| (n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_support(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.iter().chain(other.iter()))
    }

    /// f♯(n) = Σ_{m ≤ n} f(m).
    pub fn sharp(&self, n: i32) -> i64 {
        self.0.range(..=n).map(|(_, &v)| v as i64).sum()
    }

    /// f♯♯(m) = Σ_{n ≤ m} f♯(n) = Σ_{k ≤ m} (m - k + 1) f(k).
    pub fn sharp_sharp(&self, m: i32) -> i64 {
        self.0
            .range(..=m)
            .map(|(&k, &v)| (m as i64 - k as i64 + 1) * v as i64)
            .sum()
    }

    /// (Σ f(n), Σ n·f(n)).
    pub fn twist_sum(&self) -> (i64, i64) {
        self.iter()
            .fold((0, 0), |(r, w), (n, v)| (r + v as i64, w + n as i64 * v as i64))
    }
}

impl fmt::Display for SupportFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(n, v)| format!("{n}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// l♯(n) ≤ q♯(n) for every n. Only the ♯-inequality is tested; the
/// "obligatory direct summand" side condition is not part of this predicate.
pub fn sharp_inequality_only(l: &SupportFunction, q: &SupportFunction) -> bool {
    // both primitives are step functions jumping only on the supports
    l.iter()
        .chain(q.iter())
        .all(|(n, _)| l.sharp(n) <= q.sharp(n))
}

/// Alias kept for readability at call sites.
pub fn sharp_dominates(l: &SupportFunction, q: &SupportFunction) -> bool {
    sharp_inequality_only(l, q)
}

/// Lower bound c1(F) + Σ n·q'(n) on first Chern classes of the rank-2
/// reflexive sheaves in the class.
pub fn minimal_c1_bound(c1f: i64, q_prime: &SupportFunction) -> i64 {
    c1f + q_prime.twist_sum().1
}

/// Result of the pointwise test q'(n) ≤ q(n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointwiseCheck {
    pub holds: bool,
    /// degrees with q'(n) > q(n)
    pub failures: Vec<i32>,
}

pub fn question_one_criterion(q: &SupportFunction, q_prime: &SupportFunction) -> PointwiseCheck {
    let failures: Vec<i32> = q_prime
        .iter()
        .filter(|&(n, v)| v > q.get(n))
        .map(|(n, _)| n)
        .collect();
    PointwiseCheck {
        holds: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let q = SupportFunction::parse("{2:2, 3:3}").unwrap();
        assert_eq!(q.get(3), 3);
        assert_eq!(q.to_string(), "{2:2, 3:3}");
        assert!(SupportFunction::parse("{}").unwrap().is_zero());
        assert!(SupportFunction::parse("{2:-1}").is_err());
        assert!(SupportFunction::parse("2:1").is_err());
        assert!(SupportFunction::parse("{2:1,}").is_err());
    }

    #[test]
    fn primitives() {
        let f = SupportFunction::parse("{0:1, 2:1}").unwrap();
        let vals: Vec<i64> = (-1..=3).map(|n| f.sharp(n)).collect();
        assert_eq!(vals, vec![0, 1, 1, 2, 2]);
        let q = SupportFunction::parse("{3:4}").unwrap();
        assert_eq!(q.sharp_sharp(5), 12);
        assert_eq!(SupportFunction::zero().sharp(10), 0);
    }

    #[test]
    fn predicates() {
        let q = SupportFunction::parse("{2:2, 3:3}").unwrap();
        let qp = SupportFunction::parse("{3:4}").unwrap();
        assert!(sharp_dominates(&q, &q));
        assert!(!sharp_dominates(&q, &qp));
        assert!(sharp_dominates(
            &SupportFunction::parse("{5:1}").unwrap(),
            &SupportFunction::parse("{0:1}").unwrap()
        ));
        let c = question_one_criterion(&q, &qp);
        assert!(!c.holds);
        assert_eq!(c.failures, vec![3]);
        assert!(question_one_criterion(&q, &q).holds);
        assert_eq!(minimal_c1_bound(-4, &SupportFunction::zero()), -4);
        assert_eq!(q.twist_sum(), (5, 13));
    }
}
