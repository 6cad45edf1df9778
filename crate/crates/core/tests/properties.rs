mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use biliaison::cohomology::FiniteLengthModule;
use biliaison::poly::{
    irrelevant_ideal, parse_poly, saturate, syzygy_module, FreeModule, FreeVector, GroebnerBasis, Matrix, Monomial,
    Polynomial,
};
use biliaison::resolution::{FreeResolution, PresentedModule};
use biliaison::sharp::{
    chern_classes, minimal_c1_bound, question_one_criterion, sharp_dominates, SupportFunction,
};

use common::*;

fn form(d: i32) -> impl Strategy<Value = Polynomial> {
    let n = Monomial::all_of_degree(d).len();
    prop::collection::vec((1..P as u32, 0..n), 1..=3).prop_map(move |terms| {
        let all = Monomial::all_of_degree(d);
        Polynomial::from_terms(&ring(), terms.into_iter().map(|(c, i)| (c, all[i])))
    })
}

fn any_form() -> impl Strategy<Value = Polynomial> {
    (1..=3i32).prop_flat_map(form).prop_filter("nonzero", |f| !f.is_zero())
}

fn ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(any_form(), 1..=3)
}

fn support() -> impl Strategy<Value = SupportFunction> {
    prop::collection::btree_map(-8..12i32, 0..5u64, 0..4).prop_map(SupportFunction::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_inverse(a in 1..P as u32, b in 0..P as u32) {
        let r = ring();
        prop_assert_eq!(r.mul(a, r.inv(a)), 1);
        prop_assert_eq!(r.sub(r.add(a, b), b), a);
        prop_assert_eq!(r.add(a, r.neg(a)), 0);
    }

    #[test]
    fn display_parse_roundtrip(f in any_form()) {
        let r = ring();
        let text = f.display(&r);
        prop_assert_eq!(parse_poly(&r, &text).unwrap(), f);
    }

    #[test]
    fn reduced_basis_is_canonical(gens in ideal(), scales in prop::collection::vec(1..P as u32, 3), rot in 0usize..3) {
        let r = ring();
        let gb = GroebnerBasis::ideal(&r, &gens).unwrap();
        let mut other: Vec<Polynomial> = gens.iter().zip(&scales).map(|(f, &c)| f.scale(&r, c)).collect();
        let len = other.len();
        other.rotate_left(rot % len);
        prop_assert_eq!(&gb, &GroebnerBasis::ideal(&r, &other).unwrap());
        for g in &gens {
            prop_assert!(gb.contains_poly(g));
        }
    }

    #[test]
    fn normal_forms_are_linear_and_idempotent(gens in ideal(), f in form(3), g in form(3)) {
        let r = ring();
        let gb = GroebnerBasis::ideal(&r, &gens).unwrap();
        let nf = |p: &Polynomial| gb.normal_form(p.as_vector()).unwrap();
        let nff = nf(&f);
        prop_assert_eq!(gb.normal_form(&nff).unwrap(), nff.clone());
        prop_assert!(gb.contains(&f.as_vector().sub(&r, &nff)).unwrap());
        prop_assert_eq!(nf(&f.add(&r, &g)), nff.add(&r, &nf(&g)));
        prop_assert_eq!(gb.contains_poly(&f), in_ideal(&gens, &f));
    }

    #[test]
    fn hilbert_function_matches_count(gens in ideal()) {
        let r = ring();
        let m = PresentedModule::quotient_ring(&r, &gens).unwrap();
        for d in 0..=5 {
            prop_assert_eq!(m.hilbert_function(d), quotient_hf(&gens, d));
        }
    }

    #[test]
    fn syzygies_span_the_kernel(gens in ideal()) {
        let r = ring();
        let cols: Vec<FreeVector> = gens.iter().map(|g| g.as_vector().clone()).collect();
        let m = Matrix::from_columns(FreeModule::new(vec![0]), cols.clone()).unwrap();
        let syz = syzygy_module(&r, &m).unwrap();
        let src = m.source().twists.clone();
        for c in syz.columns() {
            prop_assert!(m.apply(&r, c).is_zero());
        }
        for d in 0..=5 {
            prop_assert_eq!(submodule_dim(syz.columns(), &src, d), kernel_dim(&cols, &src, d));
        }
    }

    #[test]
    fn minimal_resolutions(gens in ideal()) {
        let r = ring();
        let m = PresentedModule::quotient_ring(&r, &gens).unwrap();
        let res = FreeResolution::minimal(&m).unwrap();
        prop_assert!(res.length() <= 4);
        prop_assert!(res.is_complex());
        prop_assert!(res.has_no_units());
        for d in 0..=6 {
            let alt: i64 = (0..=res.length())
                .map(|k| {
                    let s: i64 = res.module(k).twists.iter().map(|&a| dim_r(d - a)).sum();
                    if k % 2 == 0 { s } else { -s }
                })
                .sum();
            prop_assert_eq!(alt, quotient_hf(&gens, d));
        }
    }

    #[test]
    fn saturation_is_idempotent(gens in ideal()) {
        let r = ring();
        let gb = GroebnerBasis::ideal(&r, &gens).unwrap();
        let s = saturate(&gb, &irrelevant_ideal()).unwrap();
        prop_assert!(s.contains_all(&gb));
        prop_assert_eq!(saturate(&s, &irrelevant_ideal()).unwrap(), s);
    }

    #[test]
    fn hilbert_functions_add_and_shift(a in ideal(), b in ideal(), s in -3..3i32) {
        let r = ring();
        let m = PresentedModule::quotient_ring(&r, &a).unwrap();
        let n = PresentedModule::quotient_ring(&r, &b).unwrap().shifted(s);
        let sum = m.direct_sum(&n);
        for d in -3..=5 {
            prop_assert_eq!(sum.hilbert_function(d), m.hilbert_function(d) + quotient_hf(&b, d + s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn primitive_is_a_running_sum(f in support(), n in -12..16i32) {
        let direct: i64 = f.iter().filter(|&(m, _)| m <= n).map(|(_, v)| v as i64).sum();
        prop_assert_eq!(f.sharp(n), direct);
        prop_assert!(f.sharp(n) <= f.sharp(n + 1));
        let double: i64 = (-40..=n).map(|m| f.sharp(m)).sum();
        prop_assert_eq!(f.sharp_sharp(n), double);
    }

    #[test]
    fn twist_sums_add(f in support(), g in support()) {
        let (a, b) = (f.twist_sum(), g.twist_sum());
        prop_assert_eq!(f.add(&g).twist_sum(), (a.0 + b.0, a.1 + b.1));
    }

    #[test]
    fn domination_is_pointwise_on_primitives(l in support(), q in support()) {
        let holds = (-12..16).all(|n| l.sharp(n) <= q.sharp(n));
        prop_assert_eq!(sharp_dominates(&l, &q), holds);
        prop_assert!(sharp_dominates(&l, &l));
    }

    #[test]
    fn question_one_is_pointwise(q in support(), qp in support()) {
        let check = question_one_criterion(&q, &qp);
        let bad: Vec<i32> = (-12..16).filter(|&n| qp.get(n) > q.get(n)).collect();
        prop_assert_eq!(check.holds, bad.is_empty());
        prop_assert_eq!(check.failures, bad);
    }

    #[test]
    fn c1_bound_ignores_dissocie_summands(c1 in -40..40i64, qp in support(), lp in support()) {
        let shift: i64 = lp.iter().map(|(n, v)| n as i64 * v as i64).sum();
        prop_assert_eq!(minimal_c1_bound(c1 - shift, &qp.add(&lp)), minimal_c1_bound(c1, &qp));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn whitney_formula_for_split_modules(twists in prop::collection::vec(-4..5i32, 1..5)) {
        let r = ring();
        let m = PresentedModule::free(&r, FreeModule::new(twists.clone()));
        let ch = chern_classes(&FreeResolution::minimal(&m).unwrap());
        let oracle = chern_oracle(&[twists.clone()]);
        prop_assert_eq!([1, ch.c1, ch.c2, ch.c3], oracle);
        prop_assert_eq!(ch.rank, twists.len() as i64);
    }

    #[test]
    fn finite_length_duality(e in prop::collection::vec(1..4u32, 2), s in -3..3i32) {
        let r = ring();
        let gens = vec![
            Polynomial::var(0),
            Polynomial::var(1),
            Polynomial::var(2).pow(&r, e[0]),
            Polynomial::var(3).pow(&r, e[1]),
        ];
        let m = FiniteLengthModule::from_presentation(&PresentedModule::quotient_ring(&r, &gens).unwrap()).unwrap();
        let dims = m.hilbert_map();
        let total: usize = dims.values().sum();
        prop_assert_eq!(total as u32, e[0] * e[1]);
        let dual: BTreeMap<i32, usize> = m.dual().hilbert_map();
        let mirrored: BTreeMap<i32, usize> = dims.iter().map(|(&n, &d)| (-n, d)).collect();
        prop_assert_eq!(dual, mirrored);
        let shifted: BTreeMap<i32, usize> = m.shifted(s).hilbert_map();
        prop_assert_eq!(shifted, dims.iter().map(|(&n, &d)| (n - s, d)).collect::<BTreeMap<_, _>>());
        prop_assert!(m.operators_commute());
    }
}
