//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use biliaison::cohomology::{h1_star_module, sheaf_cohomology_table, FiniteLengthModule, IsoVerdict, DEFAULT_TRIALS};
use biliaison::correspondences::biliaison_equivalent;
use biliaison::liaison::{ci_link, curve_degree_genus, ideal_module, is_regular_pair, CurveRecord};
use biliaison::poly::{
    irrelevant_ideal, saturate, syzygy_module, FreeModule, FreeVector, GroebnerBasis, Matrix, Monomial, Polynomial,
};
use biliaison::resolution::{second_syzygy, FreeResolution, PresentedModule};
use biliaison::sharp::{chern_classes, minimal_c1_bound, SupportFunction};

use common::*;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5EED ^ salt)
}

fn err(e: biliaison::Error) -> String {
    e.to_string()
}

/// Degree and genus read off the counted Hilbert function at two large degrees.
fn degree_genus_oracle(gens: &[Polynomial], n: i32) -> (i64, i64) {
    let a = quotient_hf(gens, n);
    let b = quotient_hf(gens, n + 1);
    let d = b - a;
    (d, d * n as i64 + 1 - a)
}

/// `a(shift) ≅ b`, with the returned map checked independently.
fn iso_with_map(a: &FiniteLengthModule, b: &FiniteLengthModule, salt: u64) -> Check {
    match a.isomorphic(b, false, DEFAULT_TRIALS, &mut rng(salt)) {
        IsoVerdict::Iso { shift, map } => {
            ensure!(verify_iso(&a.shifted(shift), b, &map), "returned map is not an isomorphism");
            Ok(())
        }
        other => Err(format!("{other:?}")),
    }
}

fn criterion_1() -> Check {
    let sc = fixture_a();
    let r = ring();
    let (d1, g1) = curve_degree_genus(&r, &sc.c_prime.generators).map_err(err)?;
    let (d, g) = curve_degree_genus(&r, &sc.c.curve.generators).map_err(err)?;
    ensure!(d1 == 2 && d == 8, "degrees {d1} and {d}");
    let (od1, og1) = degree_genus_oracle(&sc.c_prime.generators, 8);
    let (od, og) = degree_genus_oracle(&sc.c.curve.generators, 9);
    ensure!((d1, g1) == (od1, og1), "C': engine ({d1},{g1}) vs count ({od1},{og1})");
    ensure!((d, g) == (od, og), "C: engine ({d},{g}) vs count ({od},{og})");
    Ok(())
}

fn criterion_2() -> Check {
    let sc = fixture_a();
    let rao_cp = sc.c_prime.rao.hilbert_map();
    let rao_c = sc.c.curve.rao.hilbert_map();
    ensure!(rao_cp == BTreeMap::from([(-1, 1), (0, 2), (1, 1)]), "Rao(C') rows {rao_cp:?}");
    ensure!(rao_c == BTreeMap::from([(1, 2), (2, 4), (3, 2)]), "Rao(C) rows {rao_c:?}");
    let mp = FiniteLengthModule::from_presentation(&sc.m_prime).map_err(err)?;
    let m = FiniteLengthModule::from_presentation(&sc.m).map_err(err)?;
    iso_with_map(&mp.shifted(1), &sc.c_prime.rao, 1).map_err(|e| format!("C' vs M'(1): {e}"))?;
    iso_with_map(&m.shifted(-1), &sc.c.curve.rao, 2).map_err(|e| format!("C vs M(-1): {e}"))?;
    Ok(())
}

fn criterion_3() -> Check {
    let r = ring();
    let sc = fixture_a();
    let k = PresentedModule::quotient_ring(&r, &irrelevant_ideal()).map_err(err)?;
    let cases = [
        ("k", k.clone()),
        ("k(-2)", k.shifted(-2)),
        ("M'", sc.m_prime.clone()),
        ("M'+M''", sc.m.clone()),
    ];
    for (i, (name, m)) in cases.iter().enumerate() {
        let syz = second_syzygy(m).map_err(err)?;
        let h1 = h1_star_module(&syz.module).map_err(err)?;
        let fm = FiniteLengthModule::from_presentation(m).map_err(err)?;
        iso_with_map(&fm, &h1, 10 + i as u64).map_err(|e| format!("{name}: H1_* vs M: {e}"))?;
        let table = sheaf_cohomology_table(&syz.module, None).map_err(err)?;
        ensure!(
            table.row(2).iter().all(|&v| v == 0),
            "{name}: H2 row {:?} on {}..{}",
            table.row(2),
            table.lo,
            table.hi
        );
    }
    Ok(())
}

fn criterion_4() -> Check {
    let sc = fixture_a();
    let q = SupportFunction::parse("{2:2, 3:3}").map_err(err)?;
    let qp = SupportFunction::parse("{3:4}").map_err(err)?;
    ensure!(q.twist_sum() == (5, 13), "twist_sum(q) = {:?}", q.twist_sum());
    ensure!(qp.twist_sum() == (4, 12), "twist_sum(q') = {:?}", qp.twist_sum());
    ensure!(sc.bundle_c1() == -12, "c1(F) = {}", sc.bundle_c1());
    let twist = sc.minimal_curve_twist();
    ensure!(twist == 1 && twist == (3 * sc.n1 - sc.n3) as i64, "minimal curve twist {twist}");
    ensure!(sc.minimal_reflexive_c1() == 0, "minimal reflexive c1 {}", sc.minimal_reflexive_c1());
    let q1 = sc.question_one();
    ensure!(!q1.holds && q1.failures == vec![3], "question-one check {q1:?}");
    Ok(())
}

fn random_support(rng: &mut ChaCha8Rng) -> SupportFunction {
    let k = rng.gen_range(0..4);
    SupportFunction::new((0..k).map(|_| (rng.gen_range(-6..12), rng.gen_range(0..5))))
}

fn criterion_5() -> Check {
    let sc = fixture_a();
    let res = FreeResolution::minimal(&sc.bundle.module).map_err(err)?;
    let ch = chern_classes(&res);
    // c(F) = (1 - t)^4 (1 - 2t)^4 from 0 -> F -> O(-1)^4 + O(-2)^4 -> O^2 -> 0
    let display = chern_oracle(&[vec![1, 1, 1, 1, 2, 2, 2, 2], vec![0, 0]]);
    let from_res = chern_oracle(&res.betti_twists());
    ensure!(display == [1, -12, 62, -180], "oracle {display:?}");
    ensure!(from_res == display, "resolution twists give {from_res:?}");
    ensure!(
        (ch.rank, ch.c1, ch.c2, ch.c3) == (6, -12, 62, -180),
        "engine gives {ch}"
    );
    let mut g = rng(5);
    for _ in 0..100 {
        let c1 = g.gen_range(-30..30);
        let qp = random_support(&mut g);
        let lp = random_support(&mut g);
        let shift: i64 = lp.iter().map(|(n, v)| n as i64 * v as i64).sum();
        let before = minimal_c1_bound(c1, &qp);
        let after = minimal_c1_bound(c1 - shift, &qp.add(&lp));
        ensure!(before == after, "c1 {c1}, q' {qp}, l' {lp}: {before} vs {after}");
    }
    Ok(())
}

fn random_linear(rng: &mut ChaCha8Rng) -> Polynomial {
    let r = ring();
    Polynomial::from_terms(&r, (0..4).map(|i| (rng.gen_range(0..P as u32), Monomial::var(i))))
}

/// A random element of degree `d` in the ideal generated by quadrics.
fn random_in(gens: &[Polynomial], d: i32, rng: &mut ChaCha8Rng) -> Polynomial {
    let r = ring();
    gens.iter().fold(Polynomial::zero(), |acc, g| {
        let mut c = Polynomial::constant(&r, rng.gen_range(1..P as i64));
        for _ in g.degree().unwrap()..d {
            c = c.mul(&r, &random_linear(rng));
        }
        acc.add(&r, &c.mul(&r, g))
    })
}

fn random_link(gens: &[Polynomial], degs: (i32, i32), rng: &mut ChaCha8Rng) -> Result<(CurveRecord, i64), String> {
    let r = ring();
    for _ in 0..10 {
        let f = random_in(gens, degs.0, rng);
        let g = random_in(gens, degs.1, rng);
        if is_regular_pair(&r, &f, &g).map_err(err)? {
            let link = ci_link(&r, gens, &f, &g).map_err(err)?;
            return Ok((link, (degs.0 * degs.1) as i64));
        }
    }
    Err("no regular pair found".into())
}

fn criterion_6() -> Check {
    let r = ring();
    let mut g = rng(6);
    let fixtures = [("skew lines", skew_lines(), 2i64), ("twisted cubic", twisted_cubic(), 3)];
    for i in 0..20 {
        let (name, gens, deg) = &fixtures[i % 2];
        let degs = if i % 4 < 2 { (2, 2) } else { (2, 3) };
        let (link, product) = random_link(gens, degs, &mut g)?;
        ensure!(link.degree + deg == product, "{name}: link degree {} with CI {product}", link.degree);
        let (od, _) = degree_genus_oracle(&link.generators, 7);
        ensure!(od == link.degree, "{name}: counted degree {od} vs {}", link.degree);
    }
    for (name, gens, _) in &fixtures {
        let (once, _) = random_link(gens, (2, 3), &mut g)?;
        let (twice, _) = random_link(&once.generators, (3, 3), &mut g)?;
        let v = biliaison_equivalent(&r, gens, &twice.generators, &mut g).map_err(err)?;
        ensure!(v.is_equivalent(), "{name}: double link gives {:?}", v.verdict);
    }
    let sc = fixture_a();
    let delta = sc.c.delta;
    ensure!(delta == 2 * sc.n1, "delta {delta}");
    let (i, ip, ipp) = (&sc.c.curve.generators, &sc.c_prime.generators, &sc.c_second.generators);
    for d in 0..=10 {
        let lhs = ideal_dim(i, d) as i64 + dim_r(d - 2 * delta);
        let rhs = ideal_dim(ip, d - delta) as i64 + ideal_dim(ipp, d - delta) as i64;
        ensure!(lhs == rhs, "Hilbert accounting fails in degree {d}: {lhs} vs {rhs}");
    }
    let sum = sc.c_prime.rao.direct_sum(&sc.c_second.rao).shifted(-delta);
    iso_with_map(&sum, &sc.c.curve.rao, 60).map_err(|e| format!("Rao(C) vs sum: {e}"))?;
    Ok(())
}

fn compare_table(name: &str, m: &PresentedModule, lo: i32, hi: i32, oracle: impl Fn(i32) -> [i64; 4]) -> Check {
    let t = sheaf_cohomology_table(m, Some((lo, hi))).map_err(err)?;
    for n in lo..=hi {
        let o = oracle(n);
        let e = [t.h(0, n), t.h(1, n), t.h(2, n), t.h(3, n)];
        ensure!(e == o, "{name}, n = {n}: engine {e:?}, oracle {o:?}");
    }
    let hp = m.hilbert_polynomial();
    for (k, chi) in t.euler_characteristics().into_iter().enumerate() {
        let n = lo + k as i32;
        ensure!(chi == hp.eval(n as i64), "{name}: χ({n}) = {chi} but P({n}) = {}", hp.eval(n as i64));
    }
    Ok(())
}

fn criterion_7() -> Check {
    let r = ring();
    let b = skew_lines();
    let c = twisted_cubic();
    compare_table("skew lines", &ideal_module(&r, &b).map_err(err)?, -4, 5, |n| lines_ideal_sheaf(&b, 2, n))?;
    compare_table("twisted cubic", &ideal_module(&r, &c).map_err(err)?, -4, 5, |n| cubic_ideal_sheaf(&c, n))?;
    let sc = fixture_a();
    for (name, curve, rao) in [
        ("C'", &sc.c_prime, BTreeMap::from([(-1, 1), (0, 2), (1, 1)])),
        ("C", &sc.c.curve, BTreeMap::from([(1, 2), (2, 4), (3, 2)])),
    ] {
        let gens = &curve.generators;
        let (d, g) = degree_genus_oracle(gens, 9);
        let oracle = |n: i32| {
            let h0 = ideal_dim(gens, n) as i64;
            let h1 = *rao.get(&n).unwrap_or(&0) as i64;
            let h3 = binom(-n as i64 - 1, 3);
            let n64 = n as i64;
            // χ(O(n)) as a polynomial, nonzero for n ≤ -4
            let chi = (n64 + 1) * (n64 + 2) * (n64 + 3) / 6 - (d * n64 + 1 - g);
            [h0, h1, chi - h0 + h1 + h3, h3]
        };
        compare_table(name, &ideal_module(&r, gens).map_err(err)?, -4, 6, oracle)?;
    }
    let e0 = sc.minimal_reflexive(0).map_err(err)?;
    let e1 = sc.minimal_reflexive(1).map_err(err)?;
    for (name, e) in [("first", &e0), ("second", &e1)] {
        ensure!(e.rank == 2 && e.reflexive, "{name} quotient: rank {} reflexive {}", e.rank, e.reflexive);
        let t = &e.table;
        let mut compared = 0;
        for n in t.lo..=t.hi {
            let m = (-e.c1 - 4) as i32 - n;
            if (t.lo..=t.hi).contains(&m) {
                ensure!(t.h(3, n) == t.h(0, m), "{name}: h3({n}) = {} but h0({m}) = {}", t.h(3, n), t.h(0, m));
                compared += 1;
            }
        }
        ensure!(compared > 4, "{name}: window too small for the duality check");
        let hp = e.module.hilbert_polynomial();
        for (k, chi) in t.euler_characteristics().into_iter().enumerate() {
            let n = t.lo + k as i32;
            ensure!(chi == hp.eval(n as i64), "{name}: χ({n}) = {chi}");
        }
    }
    ensure!(e0.table == e1.table, "the two reflexive quotients have different cohomology");
    Ok(())
}

fn random_form(rng: &mut ChaCha8Rng, d: i32, terms: usize) -> Polynomial {
    let r = ring();
    let all = Monomial::all_of_degree(d);
    Polynomial::from_terms(
        &r,
        (0..terms).map(|_| (rng.gen_range(1..P as u32), all[rng.gen_range(0..all.len())])),
    )
}

fn random_ideal(rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let k = rng.gen_range(2..=3);
    (0..k)
        .map(|_| loop {
            let d = rng.gen_range(1..=3);
            let terms = rng.gen_range(1..=3);
            let f = random_form(rng, d, terms);
            if !f.is_zero() {
                break f;
            }
        })
        .collect()
}

fn check_resolution(name: &str, m: &PresentedModule, hf: impl Fn(i32) -> i64) -> Check {
    let r = ring();
    let res = FreeResolution::minimal(m).map_err(err)?;
    ensure!(res.length() <= 4, "{name}: length {}", res.length());
    for k in 1..=res.length() {
        let d = res.map(k);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let e = d.entry(i, j);
                ensure!(e.is_zero() || e.degree() != Some(0), "{name}: unit entry in d_{k}");
            }
        }
        if k < res.length() {
            let next = res.map(k + 1);
            for col in next.columns() {
                ensure!(d.apply(&r, col).is_zero(), "{name}: d_{k} d_{} ≠ 0", k + 1);
            }
        }
    }
    for deg in -2..=10 {
        let alt: i64 = (0..=res.length())
            .map(|k| {
                let s: i64 = res.module(k).twists.iter().map(|&a| dim_r(deg - a)).sum();
                if k % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum();
        ensure!(alt == hf(deg), "{name}: Betti sum {alt} vs H({deg}) = {}", hf(deg));
    }
    Ok(())
}

fn criterion_8() -> Check {
    let r = ring();
    let mut g = rng(8);
    for trial in 0..50 {
        let gens = random_ideal(&mut g);
        let gb = GroebnerBasis::ideal(&r, &gens).map_err(err)?;
        let mut shuffled: Vec<Polynomial> = gens
            .iter()
            .map(|f| f.scale(&r, g.gen_range(1..P as u32)))
            .collect();
        shuffled.reverse();
        let len = shuffled.len();
        shuffled.rotate_left(trial % len);
        let gb2 = GroebnerBasis::ideal(&r, &shuffled).map_err(err)?;
        ensure!(gb == gb2, "trial {trial}: reduced bases differ for {gens:?}");
        for e in gb.polynomials().iter().filter(|e| e.degree().unwrap_or(0) <= 6) {
            ensure!(in_ideal(&gens, e), "trial {trial}: basis element outside the ideal");
        }
        if trial < 10 {
            let sat = saturate(&gb, &irrelevant_ideal()).map_err(err)?;
            let sat2 = saturate(&sat, &irrelevant_ideal()).map_err(err)?;
            ensure!(sat == sat2, "trial {trial}: saturation not idempotent");
            let q = PresentedModule::quotient_ring(&r, &gens).map_err(err)?;
            check_resolution(&format!("random ideal {trial}"), &q, |d| quotient_hf(&gens, d))?;
        }
    }
    // syzygies against degreewise kernels
    for trial in 0..12 {
        let rank = 1 + trial % 2;
        let twists: Vec<i32> = (0..rank).map(|i| i as i32).collect();
        let target = FreeModule::new(twists.clone());
        let ncols = g.gen_range(2..=4);
        let cols: Vec<FreeVector> = (0..ncols)
            .map(|_| {
                let d = g.gen_range(2..=3);
                let comps: Vec<Polynomial> = twists.iter().map(|&t| random_form(&mut g, d - t, 2)).collect();
                FreeVector::from_components(&r, &comps)
            })
            .filter(|v| !v.is_zero())
            .collect();
        let m = Matrix::from_columns(target, cols.clone()).map_err(err)?;
        let syz = syzygy_module(&r, &m).map_err(err)?;
        let source = m.source().twists.clone();
        for col in syz.columns() {
            ensure!(m.apply(&r, col).is_zero(), "syzygy trial {trial}: not a syzygy");
        }
        for d in 0..=6 {
            let got = submodule_dim(syz.columns(), &source, d);
            let want = kernel_dim(&cols, &source, d);
            ensure!(got == want, "syzygy trial {trial}, degree {d}: {got} vs kernel {want}");
        }
    }
    let b = GroebnerBasis::ideal(&r, &skew_lines()).map_err(err)?;
    let mut spoiled = Vec::new();
    for f in skew_lines() {
        for v in 0..4 {
            spoiled.push(f.mul(&r, &Polynomial::var(v)));
        }
    }
    let sat = saturate(&GroebnerBasis::ideal(&r, &spoiled).map_err(err)?, &irrelevant_ideal()).map_err(err)?;
    ensure!(sat == b, "saturating m·I_B does not give I_B");
    let sc = fixture_a();
    let k = PresentedModule::quotient_ring(&r, &irrelevant_ideal()).map_err(err)?;
    check_resolution("k", &k, |d| i64::from(d == 0))?;
    let mp = polys("X, Y, Z^2, T^2");
    check_resolution("M'", &sc.m_prime, |d| quotient_hf(&mp, d))?;
    check_resolution("skew lines", &PresentedModule::quotient_ring(&r, &skew_lines()).map_err(err)?, |d| {
        quotient_hf(&skew_lines(), d)
    })?;
    Ok(())
}

fn criterion_9() -> Check {
    // The general computation of q_F, q'_F and the subcanonical minimality
    // theorem are out of reach; the published q-values are inputs instead.
    let sc = fixture_a();
    ensure!(sc.q_f == SupportFunction::parse("{2:2, 3:3}").map_err(err)?, "q_F input {}", sc.q_f);
    ensure!(sc.q_prime_f == SupportFunction::parse("{3:4}").map_err(err)?, "q'_F input {}", sc.q_prime_f);
    let report = sc.report().map_err(err)?;
    let failing: Vec<&str> = report
        .expected_vs_computed
        .iter()
        .filter(|e| !e.agrees)
        .map(|e| e.quantity.as_str())
        .collect();
    ensure!(report.all_agree, "scenario disagreements: {failing:?}");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("curve degrees", criterion_1),
        ("Rao modules with explicit isomorphisms", criterion_2),
        ("second-syzygy round trip", criterion_3),
        ("minimality calculus", criterion_4),
        ("Chern pipeline and dissocié invariance", criterion_5),
        ("liaison suite", criterion_6),
        ("duality properties", criterion_7),
        ("engine properties", criterion_8),
        ("published q-values as inputs", criterion_9),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {n} ({name}): PASS [{secs:.2}s]"),
            Err(why) => {
                println!("criterion {n} ({name}): FAIL [{secs:.2}s] {why}");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
