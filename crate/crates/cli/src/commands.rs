use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use biliaison::cohomology::{sheaf_cohomology_table, IsoVerdict};
use biliaison::correspondences::{
    biliaison_equivalent, horrocks_extension, is_pseudo_isomorphism, psi_cone, stably_equivalent,
};
use biliaison::liaison::scenario::example39_construct_in;
use biliaison::liaison::{ci_link, is_lcm_curve, liaison_addition, rao_module, CurveRecord};
use biliaison::poly::{parse_poly, parse_polys, FreeVector, GroebnerBasis, Matrix, Polynomial};
use biliaison::resolution::{second_syzygy, FreeResolution, GradedMap, PresentedModule};
use biliaison::sharp::{chern_classes, minimal_c1_bound, question_one_criterion, sharp_dominates, SupportFunction};

use crate::modspec::parse_module;
use crate::{CliError, Context, Report, Verb};

type Out = Result<Report, CliError>;

fn report(text: String, json: Value) -> Out {
    Ok(Report { text, json, ok: true })
}

/// The flag's value, or the contents of `--file` when the flag is absent.
fn primary<'a>(ctx: &'a Context, flag: &'a Option<String>, name: &str) -> Result<&'a str, CliError> {
    flag.as_deref()
        .or(ctx.file.as_deref())
        .map(str::trim)
        .ok_or_else(|| CliError::Usage(format!("--{name} (or --file) is required")))
}

fn module(ctx: &Context, flag: &Option<String>) -> Result<PresentedModule, CliError> {
    Ok(parse_module(&ctx.ring, primary(ctx, flag, "module")?)?)
}

fn polys(ctx: &Context, text: &str) -> Result<Vec<Polynomial>, CliError> {
    Ok(parse_polys(&ctx.ring, text)?)
}

fn show_polys(ctx: &Context, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.display(&ctx.ring)).collect()
}

fn rng(ctx: &Context) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.seed.unwrap_or(0))
}

fn dims_line(dims: &std::collections::BTreeMap<i32, usize>) -> String {
    if dims.is_empty() {
        return "0".into();
    }
    dims.iter()
        .map(|(n, d)| format!("{n}:{d}"))
        .collect::<Vec<_>>()
        .join("  ")
}

fn betti_text(res: &FreeResolution) -> String {
    let betti = res.betti_numbers();
    if betti.is_empty() {
        return "0\n".into();
    }
    let cols = res.length() + 1;
    let rows: Vec<i32> = {
        let mut r: Vec<i32> = betti.keys().map(|&(k, a)| a - k as i32).collect();
        r.sort();
        r.dedup();
        (r[0]..=*r.last().unwrap()).collect()
    };
    let mut s = String::new();
    write!(s, "{:>6}", "").unwrap();
    for k in 0..cols {
        write!(s, " {k:>4}").unwrap();
    }
    s.push('\n');
    for j in rows {
        write!(s, "{:>5}:", j).unwrap();
        for k in 0..cols {
            match betti.get(&(k, j + k as i32)) {
                Some(b) => write!(s, " {b:>4}").unwrap(),
                None => write!(s, " {:>4}", "-").unwrap(),
            }
        }
        s.push('\n');
    }
    s
}

fn verdict_text(v: &IsoVerdict) -> String {
    match v {
        IsoVerdict::Iso { shift, .. } if *shift == 0 => "equivalent".into(),
        IsoVerdict::Iso { shift, .. } => format!("equivalent (shift {shift})"),
        IsoVerdict::NotIso { obstruction } => format!("not equivalent: {obstruction}"),
        IsoVerdict::Inconclusive { trials } => format!("inconclusive after {trials} trials"),
    }
}

fn curve_text(c: &CurveRecord, ctx: &Context) -> String {
    let mut s = String::new();
    writeln!(s, "ideal: {}", show_polys(ctx, &c.generators).join(", ")).unwrap();
    writeln!(s, "degree {}  genus {}", c.degree, c.genus).unwrap();
    writeln!(s, "rao dims: {}", dims_line(&c.rao.hilbert_map())).unwrap();
    writeln!(s, "{}", c.table).unwrap();
    s
}

pub fn run(ctx: &Context, verb: &Verb) -> Out {
    match verb {
        Verb::Groebner { ideal, module: m, reduce } => groebner(ctx, ideal, m, reduce),
        Verb::Resolve { module: m } => {
            let res = FreeResolution::minimal(&module(ctx, m)?)?;
            let text = format!(
                "{}length {}  regularity {}\n",
                betti_text(&res),
                res.length(),
                res.regularity().map_or("-".into(), |r| r.to_string())
            );
            report(
                text,
                json!({ "betti": res.betti_json(), "length": res.length(), "regularity": res.regularity() }),
            )
        }
        Verb::Hilbert { module: m } => hilbert(ctx, m),
        Verb::Cohomology { module: m } => {
            let t = sheaf_cohomology_table(&module(ctx, m)?, ctx.window)?;
            report(format!("{t}\n"), json!(t))
        }
        Verb::Rao { ideal } => {
            let gens = polys(ctx, primary(ctx, ideal, "ideal")?)?;
            let check = is_lcm_curve(&ctx.ring, &gens)?;
            if !check.is_curve() {
                return Err(CliError::Domain(biliaison::Error::NotACurve(check.failures.join("; "))));
            }
            let rao = rao_module(&ctx.ring, &gens)?;
            let dims = rao.hilbert_map();
            let text = if rao.is_zero() {
                "Rao module: 0 (arithmetically Cohen-Macaulay)\n".to_string()
            } else {
                let mut s = String::from("Rao module dims:\n");
                for (n, d) in &dims {
                    let field = if *d == 1 { "k".into() } else { format!("k^{d}") };
                    writeln!(s, "  degree {n}: {field}").unwrap();
                }
                s
            };
            report(text, json!({ "rao": dims, "total_dim": rao.total_dim() }))
        }
        Verb::Link { ideal, forms } => {
            let gens = polys(ctx, primary(ctx, ideal, "ideal")?)?;
            let fg = polys(ctx, forms)?;
            if fg.len() != 2 {
                return Err(CliError::Usage("--forms needs exactly two forms".into()));
            }
            let c = ci_link(&ctx.ring, &gens, &fg[0], &fg[1])?;
            report(curve_text(&c, ctx), json!(c.to_json()))
        }
        Verb::LiaisonAdd { c1, c2, p1, p2 } => {
            let a = polys(ctx, primary(ctx, c1, "c1")?)?;
            let b = polys(ctx, c2)?;
            let p1 = parse_poly(&ctx.ring, p1)?;
            let p2 = parse_poly(&ctx.ring, p2)?;
            let la = liaison_addition(&ctx.ring, &a, &b, &p1, &p2)?;
            let cert = la.triple.certificate();
            let text = format!("delta {}\n{}exact: {}\n", la.delta, curve_text(&la.curve, ctx), cert.holds());
            report(
                text,
                json!({ "delta": la.delta, "curve": la.curve.to_json(), "certificate": cert }),
            )
        }
        Verb::Syzygy2 { module: m } => {
            let n = module(ctx, m)?;
            let s = second_syzygy(&n)?;
            let l1 = s.l1();
            let l0 = s.l0();
            let ch = chern_classes(&FreeResolution::minimal(&s.module)?);
            let mut text = String::new();
            writeln!(text, "0 -> E -> L1 -> L0 -> N -> 0").unwrap();
            writeln!(text, "L1 twists: {:?}", l1.twists).unwrap();
            writeln!(text, "L0 twists: {:?}", l0.twists).unwrap();
            writeln!(text, "E generators: {:?}", s.module.generators().twists).unwrap();
            writeln!(text, "{ch}").unwrap();
            report(
                text,
                json!({
                    "l1": l1.twists,
                    "l0": l0.twists,
                    "generators": s.module.generators().twists,
                    "relations": s.module.relations().to_json(&ctx.ring),
                    "chern": ch,
                }),
            )
        }
        Verb::Horrocks { module: m } => {
            let n = module(ctx, m)?;
            let h = horrocks_extension(&n)?;
            let ch = chern_classes(&FreeResolution::minimal(&h.bundle)?);
            let cert = h.triple.as_ref().map(|t| t.certificate());
            let mut text = String::new();
            writeln!(text, "0 -> L -> F -> N -> 0").unwrap();
            writeln!(text, "L = {}", h.l).unwrap();
            writeln!(text, "F generators: {:?}", h.bundle.generators().twists).unwrap();
            writeln!(text, "{ch}").unwrap();
            if let Some(c) = &cert {
                writeln!(text, "exact: {}", c.holds()).unwrap();
            }
            report(
                text,
                json!({
                    "l": h.l.to_string(),
                    "generators": h.bundle.generators().twists,
                    "relations": h.bundle.relations().to_json(&ctx.ring),
                    "chern": ch,
                    "certificate": cert,
                }),
            )
        }
        Verb::PsiCheck { source, target, matrix, cone } => psi(ctx, source, target, matrix, *cone),
        Verb::StableEq { first, second } => {
            let a = parse_module(&ctx.ring, primary(ctx, first, "first")?)?;
            let b = parse_module(&ctx.ring, second)?;
            let v = stably_equivalent(&a, &b, &mut rng(ctx))?;
            let text = format!("{}\n{}\n", verdict_text(&v.verdict), v.certificate);
            report(text, json!(v))
        }
        Verb::BiliaisonEq { c1, c2 } => {
            let a = polys(ctx, primary(ctx, c1, "c1")?)?;
            let b = polys(ctx, c2)?;
            let v = biliaison_equivalent(&ctx.ring, &a, &b, &mut rng(ctx))?;
            let text = format!("{}\n{}\n", verdict_text(&v.verdict), v.certificate);
            report(text, json!(v))
        }
        Verb::Sharp { f, eval, against } => sharp(ctx, f, eval, against),
        Verb::Chern { module: m, q_prime } => {
            let n = module(ctx, m)?;
            let ch = chern_classes(&FreeResolution::minimal(&n)?);
            let mut text = format!("{ch}\n");
            let mut body = json!(ch);
            if let Some(q) = q_prime {
                let q = SupportFunction::parse(q)?;
                let bound = minimal_c1_bound(ch.c1, &q);
                writeln!(text, "c1 bound with q' = {q}: {bound}").unwrap();
                body["c1_bound"] = json!(bound);
            }
            report(text, body)
        }
        Verb::Scenario { name, n1, n3 } => scenario(ctx, name, *n1, *n3),
    }
}

fn groebner(ctx: &Context, ideal: &Option<String>, m: &Option<String>, reduce: &Option<String>) -> Out {
    let ring = &ctx.ring;
    let (gb, is_ideal) = match (ideal, m) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --ideal or --module".into())),
        (None, Some(spec)) => (parse_module(ring, spec)?.gb().clone(), false),
        (Some(text), None) => (GroebnerBasis::ideal(ring, &polys(ctx, text)?)?, true),
        (None, None) => {
            let text = primary(ctx, ideal, "ideal")?;
            (GroebnerBasis::ideal(ring, &polys(ctx, text)?)?, true)
        }
    };
    let shown: Vec<String> = if is_ideal {
        gb.polynomials().iter().map(|p| p.display(ring)).collect()
    } else {
        gb.elements().iter().map(|v| v.display(ring)).collect()
    };
    let mut text = format!("{} elements\n", shown.len());
    for s in &shown {
        writeln!(text, "  {s}").unwrap();
    }
    let mut body = json!({ "basis": shown });
    if let Some(r) = reduce {
        let inputs = polys(ctx, r)?;
        let vectors: Vec<FreeVector> = if is_ideal {
            inputs.iter().map(|p| p.as_vector().clone()).collect()
        } else {
            vec![FreeVector::from_components(ring, &inputs)]
        };
        let mut forms = Vec::new();
        for v in &vectors {
            let nf = gb.normal_form(v)?;
            forms.push(if is_ideal {
                nf.component(0).display(ring)
            } else {
                nf.display(ring)
            });
        }
        text.push_str("normal forms:\n");
        for f in &forms {
            writeln!(text, "  {f}").unwrap();
        }
        body["normal_forms"] = json!(forms);
    }
    report(text, body)
}

fn hilbert(ctx: &Context, m: &Option<String>) -> Out {
    let n = module(ctx, m)?;
    let hs = n.hilbert_series();
    let hp = n.hilbert_polynomial();
    let (lo, hi) = match ctx.window {
        Some(w) => w,
        None => {
            let lo = n.generators().twists.iter().copied().min().unwrap_or(0);
            let reg = FreeResolution::minimal(&n)?.regularity().unwrap_or(lo);
            (lo, reg.max(lo) + 3)
        }
    };
    let table = n.hilbert_table(lo, hi)?;
    let mut numer = String::new();
    for (e, c) in hs.numerator() {
        let sign = if *c < 0 { "-" } else if numer.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        let power = if *e == 1 { "t".to_string() } else { format!("t^{e}") };
        let body = match (*e, mag) {
            (0, _) => mag.to_string(),
            (_, 1) => power,
            _ => format!("{mag}{power}"),
        };
        if !numer.is_empty() {
            numer.push(' ');
        }
        numer.push_str(&format!("{sign}{}{body}", if sign.is_empty() || numer.is_empty() { "" } else { " " }));
    }
    let mut text = String::new();
    writeln!(text, "series: ({}) / (1-t)^4", if numer.is_empty() { "0" } else { &numer }).unwrap();
    writeln!(text, "polynomial: {hp}").unwrap();
    for (d, v) in &table {
        writeln!(text, "  H({d}) = {v}").unwrap();
    }
    report(
        text,
        json!({
            "numerator": hs.numerator(),
            "polynomial": hp.to_string(),
            "table": table.iter().map(|(d, v)| json!([d, v])).collect::<Vec<_>>(),
        }),
    )
}

fn psi(ctx: &Context, source: &Option<String>, target: &str, matrix: &str, cone: bool) -> Out {
    let ring = &ctx.ring;
    let src = parse_module(ring, primary(ctx, source, "source")?)?;
    let tgt = parse_module(ring, target)?;
    let rows: Vec<Vec<String>> = serde_json::from_str(matrix)
        .map_err(|e| CliError::Usage(format!("--matrix must be JSON rows of polynomials: {e}")))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for r in &rows {
        parsed.push(r.iter().map(|e| parse_poly(ring, e)).collect::<Result<Vec<_>, _>>()?);
    }
    let mat = Matrix::from_rows(ring, tgt.generators().clone(), src.generators().clone(), &parsed)?;
    let f = GradedMap::new(src, tgt, mat)?;
    if cone {
        let c = psi_cone(&f, ctx.window)?;
        let cert = c.triple.certificate();
        let text = format!(
            "pseudo-isomorphism: true\n0 -> L' -> F + L -> F' -> 0\nL  = {}\nL' = {}\nexact: {}\n",
            c.l,
            c.l_prime,
            cert.holds()
        );
        return report(
            text,
            json!({ "report": c.report, "l": c.l.to_string(), "l_prime": c.l_prime.to_string(), "certificate": cert }),
        );
    }
    let r = is_pseudo_isomorphism(&f, ctx.window)?;
    let mut text = String::new();
    writeln!(text, "pseudo-isomorphism: {}", r.is_psi()).unwrap();
    writeln!(text, "  H0 vanishes at n <= {}: {}", r.low_degree, r.h0_low).unwrap();
    writeln!(text, "  H1_* bijective: {}", r.h1_iso).unwrap();
    writeln!(text, "  H2_* injective on {}..{}: {}", r.window.0, r.window.1, r.h2_injective).unwrap();
    for fail in &r.failures {
        writeln!(text, "  - {fail}").unwrap();
    }
    report(text, json!(r))
}

fn sharp(ctx: &Context, f: &Option<String>, eval: &[i32], against: &Option<String>) -> Out {
    let func = SupportFunction::parse(primary(ctx, f, "f")?)?;
    let (count, weighted) = func.twist_sum();
    let mut text = String::new();
    let mut body = json!({ "f": func.to_string(), "twist_sum": [count, weighted] });
    if eval.is_empty() {
        writeln!(text, "f = {func}").unwrap();
        writeln!(text, "sum f = {count}  sum n f(n) = {weighted}").unwrap();
        if let (Some(lo), Some(hi)) = (func.min_support(), func.max_support()) {
            for n in lo..=hi + 1 {
                writeln!(text, "  f#({n}) = {}", func.sharp(n)).unwrap();
            }
        }
    } else {
        let values: Vec<i64> = eval.iter().map(|&n| func.sharp(n)).collect();
        for v in &values {
            writeln!(text, "{v}").unwrap();
        }
        body["values"] = json!(eval.iter().zip(&values).map(|(n, v)| json!([n, v])).collect::<Vec<_>>());
    }
    if let Some(q) = against {
        let q = SupportFunction::parse(q)?;
        let dom = sharp_dominates(&func, &q);
        let pw = question_one_criterion(&q, &func);
        writeln!(text, "f# <= q# everywhere: {dom}").unwrap();
        writeln!(text, "f <= q pointwise: {}", pw.holds).unwrap();
        body["sharp_dominated"] = json!(dom);
        body["pointwise"] = json!(pw);
    }
    report(text, body)
}

fn scenario(ctx: &Context, name: &str, n1: i32, n3: i32) -> Out {
    if name != "ex39" {
        return Err(CliError::Usage(format!("unknown scenario {name:?}; available: ex39")));
    }
    let sc = example39_construct_in(&ctx.ring, n1, n3, ctx.seed)?;
    let r = sc.report()?;
    let mut text = String::new();
    writeln!(text, "n1 = {}  n3 = {}  p = {}", r.n1, r.n3, r.characteristic).unwrap();
    for (k, v) in &r.polynomials {
        writeln!(text, "{k} = {v}").unwrap();
    }
    for (label, c) in [("C'", &r.c_prime), ("C''", &r.c_second), ("C", &r.c), ("Gamma", &r.gamma)] {
        writeln!(text, "{label}: degree {} genus {}  rao {}", c.degree, c.genus, dims_line(&c.rao)).unwrap();
    }
    writeln!(text, "q  = {}", r.q_f).unwrap();
    writeln!(text, "q' = {}", r.q_prime_f).unwrap();
    writeln!(text, "pointwise q' <= q: {}", r.question_one.holds).unwrap();
    writeln!(text, "reflexive sheaf: {}", r.chern).unwrap();
    writeln!(text, "{}", r.reflexive_table).unwrap();
    writeln!(text).unwrap();
    let w = r.expected_vs_computed.iter().map(|e| e.quantity.len()).max().unwrap_or(0);
    for e in &r.expected_vs_computed {
        writeln!(
            text,
            "{} {:<w$}  [{}]  expected {}  computed {}",
            if e.agrees { "ok  " } else { "FAIL" },
            e.quantity,
            e.source,
            e.expected,
            e.computed
        )
        .unwrap();
    }
    writeln!(text, "all agree: {}", r.all_agree).unwrap();
    Ok(Report {
        text,
        ok: r.all_agree,
        json: json!(r),
    })
}
