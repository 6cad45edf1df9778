//! Independent oracles: plain degreewise linear algebra over F_p on monomial
//! coordinates, with no Gröbner bases involved.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use biliaison::cohomology::FiniteLengthModule;
use biliaison::linalg::DenseMatrix;
use biliaison::liaison::{example39_construct, Ex39Scenario};
use biliaison::poly::{parse_polys, FreeVector, PolyRing, Polynomial};

pub const P: u64 = 32003;

pub fn ring() -> PolyRing {
    PolyRing::default()
}

pub fn polys(text: &str) -> Vec<Polynomial> {
    parse_polys(&ring(), text).unwrap()
}

pub fn skew_lines() -> Vec<Polynomial> {
    polys("XZ, XT, YZ, YT")
}

pub fn twisted_cubic() -> Vec<Polynomial> {
    polys("XZ - Y^2, XT - YZ, YT - Z^2")
}

pub fn fixture_a() -> &'static Ex39Scenario {
    static A: OnceLock<Ex39Scenario> = OnceLock::new();
    A.get_or_init(|| example39_construct(1, 2, None).unwrap())
}

/// Exponent vectors of degree `d`, any order.
pub fn monomials(d: i32) -> Vec<[u16; 4]> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let d = d as u16;
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

pub fn dim_r(d: i32) -> i64 {
    if d < 0 {
        0
    } else {
        let d = d as i64;
        (d + 1) * (d + 2) * (d + 3) / 6
    }
}

pub fn binom(n: i64, k: i64) -> i64 {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

type Key = ([u16; 4], usize);
pub type Sparse = HashMap<Key, u64>;

fn add_exps(a: [u16; 4], b: [u16; 4]) -> [u16; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn sparse(v: &FreeVector) -> Sparse {
    v.terms()
        .iter()
        .map(|t| ((t.mono.exps(), t.comp as usize), t.coeff as u64))
        .collect()
}

fn shifted(v: &Sparse, m: [u16; 4]) -> Sparse {
    v.iter().map(|(&(e, c), &x)| ((add_exps(e, m), c), x)).collect()
}

fn vdeg(v: &FreeVector, twists: &[i32]) -> Option<i32> {
    v.terms()
        .first()
        .map(|t| t.mono.degree() + twists[t.comp as usize])
}

/// Row rank over F_p by straightforward elimination on hash-map rows.
pub fn rank(rows: Vec<Sparse>) -> usize {
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut pivots: Vec<(Key, Sparse)> = Vec::new();
    for mut row in rows {
        row.retain(|_, x| *x % P != 0);
        for (k, prow) in &pivots {
            if let Some(&c) = row.get(k) {
                for (key, &x) in prow {
                    let e = row.entry(*key).or_insert(0);
                    *e = (*e + P - c * x % P) % P;
                }
                row.retain(|_, x| *x != 0);
            }
        }
        if let Some(&k) = row.keys().min() {
            let s = inv(row[&k]);
            let normed: Sparse = row.into_iter().map(|(key, x)| (key, x * s % P)).collect();
            // keep earlier pivot rows reduced against the new pivot
            for (_, prow) in pivots.iter_mut() {
                if let Some(&c) = prow.get(&k) {
                    for (key, &x) in &normed {
                        let e = prow.entry(*key).or_insert(0);
                        *e = (*e + P - c * x % P) % P;
                    }
                    prow.retain(|_, x| *x != 0);
                }
            }
            pivots.push((k, normed));
        }
    }
    pivots.len()
}

/// All degree-d multiples m·v of the given vectors.
pub fn multiples(vectors: &[FreeVector], twists: &[i32], d: i32) -> Vec<Sparse> {
    let mut rows = Vec::new();
    for v in vectors {
        let Some(e) = vdeg(v, twists) else { continue };
        let s = sparse(v);
        for m in monomials(d - e) {
            rows.push(shifted(&s, m));
        }
    }
    rows
}

/// dim of the degree-d part of the submodule generated by `vectors`.
pub fn submodule_dim(vectors: &[FreeVector], twists: &[i32], d: i32) -> usize {
    rank(multiples(vectors, twists, d))
}

pub fn ideal_dim(gens: &[Polynomial], d: i32) -> usize {
    let v: Vec<FreeVector> = gens.iter().map(|g| g.as_vector().clone()).collect();
    submodule_dim(&v, &[0], d)
}

/// Hilbert function of R/I by counting.
pub fn quotient_hf(gens: &[Polynomial], d: i32) -> i64 {
    dim_r(d) - ideal_dim(gens, d) as i64
}

/// Whether f lies in the ideal, tested in f's own degree.
pub fn in_ideal(gens: &[Polynomial], f: &Polynomial) -> bool {
    let Some(d) = f.degree() else { return true };
    let v: Vec<FreeVector> = gens.iter().map(|g| g.as_vector().clone()).collect();
    let mut rows = multiples(&v, &[0], d);
    let base = rank(rows.clone());
    rows.push(sparse(f.as_vector()));
    rank(rows) == base
}

/// Dimension of the degree-d kernel of the map sending e_j to `columns[j]`,
/// with e_j in degree `source[j]`.
pub fn kernel_dim(columns: &[FreeVector], source: &[i32], d: i32) -> usize {
    let mut domain = 0;
    let mut images = Vec::new();
    for (col, &a) in columns.iter().zip(source) {
        let s = sparse(col);
        for m in monomials(d - a) {
            domain += 1;
            images.push(shifted(&s, m));
        }
    }
    domain - rank(images)
}

/// Coefficients of ∏(1 - a t)^{±1} mod t^4 over the twists of a resolution.
pub fn chern_oracle(steps: &[Vec<i32>]) -> [i64; 4] {
    let mut c = [1i64, 0, 0, 0];
    for (k, tw) in steps.iter().enumerate() {
        for &a in tw {
            let a = a as i64;
            // (1 - a t)^{-1} = 1 + a t + a^2 t^2 + a^3 t^3
            let f = if k % 2 == 0 {
                [1, -a, 0, 0]
            } else {
                [1, a, a * a, a * a * a]
            };
            let mut out = [0i64; 4];
            for i in 0..4 {
                for j in 0..4 - i {
                    out[i + j] += c[i] * f[j];
                }
            }
            c = out;
        }
    }
    c
}

fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Vec<Vec<u64>> {
    (0..a.nrows())
        .map(|i| {
            (0..b.ncols())
                .map(|j| (0..a.ncols()).map(|k| a.get(i, k) as u64 * b.get(k, j) as u64 % P).sum::<u64>() % P)
                .collect()
        })
        .collect()
}

fn dense_rank(m: &DenseMatrix) -> usize {
    let rows = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .filter(|&j| m.get(i, j) != 0)
                .map(|j| (([0, 0, 0, 0], j), m.get(i, j) as u64))
                .collect()
        })
        .collect();
    rank(rows)
}

/// Checks that `map[k]: a_{lo+k} -> b_{lo+k}` is bijective in every degree
/// and commutes with multiplication by the four variables.
pub fn verify_iso(a: &FiniteLengthModule, b: &FiniteLengthModule, map: &[DenseMatrix]) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    if a.low() != b.low() || a.high() != b.high() || map.len() != a.dims().len() {
        return false;
    }
    for (k, m) in map.iter().enumerate() {
        let n = a.low() + k as i32;
        if m.nrows() != b.dim(n) || m.ncols() != a.dim(n) || dense_rank(m) != a.dim(n) {
            return false;
        }
    }
    for k in 0..map.len() - 1 {
        let n = a.low() + k as i32;
        for v in 0..4 {
            if mat_mul(&map[k + 1], &a.operator(v, n)) != mat_mul(&b.operator(v, n), &map[k]) {
                return false;
            }
        }
    }
    true
}

/// Cohomology of J_C(n) for a disjoint union of `lines` lines, from
/// h^0(O_C(n)) = lines·(n+1) and h^1(O_C(n)) = lines·(-n-1) for n < 0.
pub fn lines_ideal_sheaf(gens: &[Polynomial], lines: i64, n: i32) -> [i64; 4] {
    let h0 = ideal_dim(gens, n) as i64;
    let n64 = n as i64;
    let h0_oc = lines * (n64 + 1).max(0);
    let h1_oc = lines * (-n64 - 1).max(0);
    let h1 = h0_oc - (dim_r(n) - h0);
    let h3 = binom(-n64 - 1, 3);
    [h0, h1, h1_oc, h3]
}

/// Same for the twisted cubic, with O_C(n) = O_{P^1}(3n).
pub fn cubic_ideal_sheaf(gens: &[Polynomial], n: i32) -> [i64; 4] {
    let h0 = ideal_dim(gens, n) as i64;
    let n64 = n as i64;
    let h0_oc = (3 * n64 + 1).max(0);
    let h1_oc = (-3 * n64 - 1).max(0);
    let h1 = h0_oc - (dim_r(n) - h0);
    let h3 = binom(-n64 - 1, 3);
    [h0, h1, h1_oc, h3]
}
