use std::fmt;

use serde::Serialize;

use crate::resolution::FreeResolution;

/// Rank and Chern classes in H*(P^3) = Z[t]/(t^4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}  c1 {}  c2 {}  c3 {}", self.rank, self.c1, self.c2, self.c3)
    }
}

fn mul_trunc(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    let mut out = [0i64; 4];
    for i in 0..4 {
        for j in 0..4 - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Total Chern class of the sheafified module: the alternating product of
/// (1 - a t) over all twists a of the resolution.
pub fn chern_classes(res: &FreeResolution) -> ChernData {
    let mut c = [1i64, 0, 0, 0];
    let mut rank = 0i64;
    for k in 0..=res.length() {
        for &a in &res.module(k).twists {
            let a = a as i64;
            let factor = if k % 2 == 0 {
                rank += 1;
                [1, -a, 0, 0]
            } else {
                rank -= 1;
                // (1 - a t)^{-1}
                [1, a, a * a, a * a * a]
            };
            c = mul_trunc(c, factor);
        }
    }
    ChernData {
        rank,
        c1: c[1],
        c2: c[2],
        c3: c[3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{FreeModule, PolyRing};
    use crate::resolution::PresentedModule;

    #[test]
    fn twisted_line_bundle() {
        let r = PolyRing::default();
        let m = PresentedModule::free(&r, FreeModule::new(vec![3]));
        let c = chern_classes(&FreeResolution::minimal(&m).unwrap());
        assert_eq!((c.rank, c.c1, c.c2, c.c3), (1, -3, 0, 0));
    }

    #[test]
    fn truncated_product() {
        assert_eq!(mul_trunc([1, -1, 0, 0], [1, 1, 1, 1]), [1, 0, 0, 0]);
    }
}
