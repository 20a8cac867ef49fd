mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::Rng;

use janet::analytics::{characteristic_function, dim_component, is_in_involution, Generators};
use janet::divisions::{
    axiom_check, complementary_monomials, complete_set, divides_with, inductive_completeness, involutive_divisor, is_complete,
    mult_all, DivisionScheme,
};
use janet::input::{parse_pde, PdeInput};
use janet::involutive::{inv_normal_form, inv_normal_form_by, involutive_completion, membership, CompletionCap, Setting};
use janet::monomials::{
    cone_contains, gamma, minimal_generators, monomials_of_degree, monomials_up_to_degree, Monomial, MonomialOrder, VarSet,
    VariableContext, WeightMatrix,
};
use janet::pde::{phi, phi_inv, DerivativeKey, DerivativeOrder, JanetCap, LinearExpr, LinearPdeSystem, Operator, PdeError};
use janet::polynomials::{buchberger_oracle, classical_reduce, passes_s_criterion, GroebnerCap, Polynomial, Q};

fn monomial(n: usize, max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, n).prop_map(Monomial::new)
}

fn monomial_set(n: usize, max: u32, k: usize) -> impl Strategy<Value = Vec<Monomial>> {
    prop::collection::vec(monomial(n, max), 1..=k).prop_map(|v| v.into_iter().filter(|m| !m.is_one()).collect::<Vec<_>>())
}

/// Janet multiplicative variables straight from the definition: `x_i` is multiplicative for
/// `u` when `deg_i(u)` is maximal among the elements agreeing with `u` on every higher variable.
fn janet_oracle(ctx: &VariableContext, us: &[Monomial], u: &Monomial) -> VarSet {
    let order = ctx.highest_first();
    let mut out = VarSet::empty();
    for (pos, &v) in order.iter().enumerate() {
        let above = &order[..pos];
        let top = us
            .iter()
            .filter(|w| above.iter().all(|&a| w.deg(a) == u.deg(a)))
            .map(|w| w.deg(v))
            .max()
            .unwrap();
        if u.deg(v) == top {
            out.insert(v);
        }
    }
    out
}

fn orders(ctx: &VariableContext) -> Vec<MonomialOrder> {
    let n = ctx.n();
    let rows = vec![(1..=n as u64).collect::<Vec<_>>(), vec![1; n]];
    vec![
        MonomialOrder::lex(ctx),
        MonomialOrder::deglex(ctx),
        MonomialOrder::weight(WeightMatrix::new(rows, n).unwrap(), ctx),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_axioms(a in monomial(3, 4), b in monomial(3, 4), c in monomial(3, 4), w in monomial(3, 2)) {
        let ctx = VariableContext::standard(3);
        for o in orders(&ctx) {
            prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
            prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&w), &b.mul(&w)));
            prop_assert_ne!(o.compare(&ctx.one(), &a), Ordering::Greater);
            if o.compare(&a, &b).is_lt() && o.compare(&b, &c).is_lt() {
                prop_assert!(o.compare(&a, &c).is_lt());
            }
        }
    }

    #[test]
    fn phi_round_trip(a in monomial(4, 3)) {
        let ctx = VariableContext::standard(4);
        prop_assert_eq!(phi_inv(&ctx, &phi(&ctx, &a)).unwrap(), a);
    }

    #[test]
    fn monomial_text_round_trip(a in monomial(3, 5)) {
        let ctx = VariableContext::standard(3);
        prop_assert_eq!(ctx.parse_monomial(&ctx.format_monomial(&a)).unwrap(), a);
    }

    #[test]
    fn minimal_generators_keep_the_cone(us in monomial_set(3, 3, 6), w in monomial(3, 5)) {
        let m = minimal_generators(&us);
        prop_assert_eq!(cone_contains(&m, &w), cone_contains(&us, &w));
        for (i, a) in m.iter().enumerate() {
            for (j, b) in m.iter().enumerate() {
                prop_assert!(i == j || !a.divides(b));
            }
        }
    }

    #[test]
    fn gamma_counts_monomials(n in 1usize..5, p in 0u64..7) {
        prop_assert_eq!(gamma(n, p), monomials_of_degree(n, p as u32).len() as u128);
    }

    #[test]
    fn janet_matches_definition(us in monomial_set(3, 3, 6)) {
        let ctx = VariableContext::standard(3);
        let us = minimal_generators(&us);
        prop_assume!(!us.is_empty());
        let mults = mult_all(&DivisionScheme::Janet, &ctx, &us);
        for (u, m) in us.iter().zip(&mults) {
            prop_assert_eq!(*m, janet_oracle(&ctx, &us, u));
        }
    }

    #[test]
    fn janet_divisor_is_unique(us in monomial_set(3, 3, 6)) {
        let ctx = VariableContext::standard(3);
        let us = minimal_generators(&us);
        prop_assume!(!us.is_empty());
        let mults = mult_all(&DivisionScheme::Janet, &ctx, &us);
        for w in monomials_up_to_degree(3, 6) {
            let count = us.iter().zip(&mults).filter(|(u, m)| divides_with(u, m, &w)).count();
            prop_assert!(count <= 1);
        }
    }

    #[test]
    fn refinement(us in monomial_set(3, 4, 6)) {
        let ctx = VariableContext::standard(3);
        let us = minimal_generators(&us);
        prop_assume!(!us.is_empty());
        let j = mult_all(&DivisionScheme::Janet, &ctx, &us);
        let t = mult_all(&DivisionScheme::Thomas, &ctx, &us);
        let p = mult_all(&DivisionScheme::Pommaret, &ctx, &us);
        for k in 0..us.len() {
            prop_assert!(t[k].is_subset(&j[k]));
            prop_assert!(p[k].is_subset(&j[k]));
        }
    }

    #[test]
    fn completion_contract(us in monomial_set(3, 3, 4)) {
        let ctx = VariableContext::standard(3);
        prop_assume!(!us.is_empty());
        let order = MonomialOrder::deglex(&ctx);
        for scheme in [DivisionScheme::Janet, DivisionScheme::Thomas] {
            let done = complete_set(&scheme, &ctx, &us, &order, 50).unwrap();
            prop_assert!(us.iter().all(|u| done.contains(u)));
            prop_assert!(is_complete(&scheme, &ctx, &done).complete);
            for w in monomials_up_to_degree(3, 7) {
                prop_assert_eq!(cone_contains(&done, &w), cone_contains(&us, &w));
                if cone_contains(&us, &w) {
                    prop_assert!(involutive_divisor(&scheme, &ctx, &done, &w).is_some());
                }
            }
        }
    }

    #[test]
    fn inductive_and_local_criteria_agree(us in monomial_set(3, 3, 5)) {
        let ctx = VariableContext::standard(3);
        let us = minimal_generators(&us);
        prop_assume!(!us.is_empty());
        prop_assert_eq!(inductive_completeness(&ctx, &us), is_complete(&DivisionScheme::Janet, &ctx, &us).complete);
    }

    #[test]
    fn cone_partition(us in monomial_set(3, 3, 4)) {
        let ctx = VariableContext::standard(3);
        prop_assume!(!us.is_empty());
        let done = complete_set(&DivisionScheme::Janet, &ctx, &us, &MonomialOrder::deglex(&ctx), 50).unwrap();
        let comp = complementary_monomials(&ctx, &done).unwrap();
        let mults = mult_all(&DivisionScheme::Janet, &ctx, &done);
        let horizon = done.iter().map(|u| u.degree()).max().unwrap() as u32 + 4;
        for w in monomials_up_to_degree(3, horizon) {
            let inside = done.iter().zip(&mults).filter(|(u, m)| divides_with(u, m, &w)).count();
            let outside = comp.all().filter(|c| divides_with(&c.monomial, &c.partition.mult, &w)).count();
            prop_assert_eq!(inside + outside, 1);
        }
    }

    #[test]
    fn axioms_hold(us in monomial_set(2, 3, 4)) {
        let ctx = VariableContext::standard(2);
        prop_assume!(!us.is_empty());
        for scheme in [DivisionScheme::Janet, DivisionScheme::Thomas] {
            let r = axiom_check(&scheme, &ctx, &us, 5);
            prop_assert!(r.passed, "{:?}", r.failure);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_traces_replay(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (ctx, gs) = common::ideal(&mut rng);
        let f = common::polynomial(&mut rng, ctx.n(), 5, 5);
        let order = MonomialOrder::deglex(&ctx);
        let t = classical_reduce(&f, &gs, &order);
        prop_assert_eq!(t.replay(&gs), f);
        let lead_divisible = t.remainder.terms().any(|(m, _)| gs.iter().any(|g| g.lm(&order).unwrap().divides(m)));
        prop_assert!(!lead_divisible);
    }

    #[test]
    fn normal_form_unique_and_additive(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (ctx, fs) = common::ideal(&mut rng);
        let s = Setting::janet_deglex(ctx.clone());
        let b = involutive_completion(&s, &fs, CompletionCap::default()).unwrap();
        let f = common::polynomial(&mut rng, ctx.n(), 5, 4);
        let g = common::polynomial(&mut rng, ctx.n(), 5, 4);
        let nf = |p: &Polynomial| inv_normal_form(&s, p, &b.basis).remainder;
        let mut pick = common::rng(seed ^ 0x5eed);
        let shuffled = inv_normal_form_by(&s, &f, &b.basis, |ms| pick.gen_range(0..ms.len()));
        prop_assert_eq!(&shuffled.remainder, &nf(&f));
        prop_assert_eq!(shuffled.replay(&b.basis), f.clone());
        prop_assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
        prop_assert_eq!(nf(&f.scale(&Q::new(3.into(), 7.into()))), nf(&f).scale(&Q::new(3.into(), 7.into())));
    }

    #[test]
    fn involutive_bases_are_groebner(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (ctx, fs) = common::ideal(&mut rng);
        for scheme in [DivisionScheme::Janet, DivisionScheme::Thomas] {
            let s = Setting::new(scheme.clone(), ctx.clone(), MonomialOrder::deglex(&ctx));
            let b = involutive_completion(&s, &fs, CompletionCap::default()).unwrap();
            prop_assert!(passes_s_criterion(&b.basis, &s.order));
            prop_assert!(b.certificates_replay());
            prop_assert!(is_complete(&scheme, &ctx, &b.leads()).complete);
            let gb = buchberger_oracle(&fs, &s.order, GroebnerCap::default()).unwrap();
            let gb_leads: Vec<Monomial> = gb.iter().map(|g| g.lm(&s.order).unwrap().clone()).collect();
            let mut ours = minimal_generators(&b.leads());
            let mut theirs = gb_leads;
            ours.sort();
            theirs.sort();
            prop_assert_eq!(ours, theirs);
            let probe = common::combination(&mut rng, &fs);
            prop_assert!(membership(&probe, &b));
        }
    }

    #[test]
    fn groebner_ignores_input_order(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (ctx, mut fs) = common::ideal(&mut rng);
        let order = MonomialOrder::deglex(&ctx);
        let a = buchberger_oracle(&fs, &order, GroebnerCap::default()).unwrap();
        fs.reverse();
        let b = buchberger_oracle(&fs, &order, GroebnerCap::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn chi_of_monomial_ideals_counts_standard_monomials(us in monomial_set(3, 3, 4), p in 0u32..7) {
        prop_assume!(!us.is_empty());
        let gens = Generators::Monomials(us.clone());
        let standard = monomials_of_degree(3, p).into_iter().filter(|w| !cone_contains(&us, w)).count() as u128;
        prop_assert_eq!(gamma(3, p as u64) - dim_component(&gens, 3, p).unwrap(), standard);
        let polys = Generators::Polynomials(us.iter().cloned().map(Polynomial::monomial).collect());
        prop_assert_eq!(dim_component(&polys, 3, p).unwrap(), dim_component(&gens, 3, p).unwrap());
    }

    #[test]
    fn stabilised_polynomial_reproduces_the_tail(us in monomial_set(3, 3, 4)) {
        prop_assume!(!us.is_empty());
        let prof = characteristic_function(&Generators::Monomials(us), 3, 0, 14).unwrap();
        for (p, v) in &prof.values {
            if *p >= prof.stable_from {
                prop_assert_eq!(prof.stabilized.eval(*p as i64), Q::from_integer((*v as i64).into()));
            }
        }
        prop_assert!(prof.lambda <= 3);
    }

    #[test]
    fn characters_sum_to_chi(us in monomial_set(3, 2, 4), p in 1u64..4) {
        prop_assume!(!us.is_empty());
        let ctx = VariableContext::standard(3);
        let gens = Generators::Monomials(us.clone());
        let t = is_in_involution(&gens, &ctx, p).unwrap();
        let chi = gamma(3, p) - dim_component(&gens, 3, p as u32).unwrap();
        prop_assert_eq!(t.characters.sigma.iter().sum::<u64>() as u128, chi);
        prop_assert_eq!(t.involutive, t.lhs == t.rhs);
    }

    #[test]
    fn operator_derivation_commutes_with_application(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = 2;
        let ctx = VariableContext::standard(n);
        let mut e = LinearExpr::zero(n);
        for _ in 0..3 {
            let k = DerivativeKey::new(common::monomial(&mut rng, n, 2), 0);
            e.add_term(k, &common::polynomial(&mut rng, n, 2, 2));
        }
        let mut op = Operator::term(ctx.one(), common::polynomial(&mut rng, n, 1, 2));
        op.add_mul(&Polynomial::constant(n, Q::from_integer(1.into())), &Operator::term(ctx.var(1), Polynomial::monomial(ctx.var(0))));
        let i = rng.gen_range(0..n);
        prop_assert_eq!(op.derive(i).apply(&e), op.apply(&e).derive(i));
    }

    #[test]
    fn janet_procedure_traces(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = 3;
        let ctx = VariableContext::standard(n);
        let order = DerivativeOrder::janet_deglex(&ctx, 1);
        let eqs: Vec<LinearExpr> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut e = LinearExpr::zero(n);
                for _ in 0..3 {
                    let k = DerivativeKey::new(common::monomial(&mut rng, n, 2), 0);
                    let c: i64 = rng.gen_range(-2..=2);
                    e.add_term(k, &Polynomial::constant(n, Q::from_integer(c.into())));
                }
                e
            })
            .filter(|e| !e.is_zero())
            .collect();
        prop_assume!(!eqs.is_empty());
        let s = LinearPdeSystem::new(ctx.clone(), vec!["u".into()], order, eqs).unwrap();
        match s.janet(JanetCap { max_order: 8, ..JanetCap::default() }) {
            Ok(r) => {
                let leads: Vec<Monomial> = r.system.equations.iter().map(|e| e.lead.alpha.clone()).collect();
                prop_assert!(is_complete(&DivisionScheme::Janet, &ctx, &leads).complete);
                let last = r.rounds.last().unwrap();
                prop_assert!(r.system.verify_forward(&last.sigma));
                prop_assert!(r.system.verify_backward(&last.sigma));
                for c in &last.conditions {
                    prop_assert_eq!(c.trace.replay(n, |i| &last.sigma[i]), c.normal_form.clone());
                }
            }
            Err(PdeError::CapExceeded(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn fixture_pde_traces_replay() {
    for name in ["pde/weighted.txt", "pde/second_order.txt"] {
        let PdeInput::Linear(s) = parse_pde(&common::fixture(name)).unwrap() else {
            panic!("{name} is linear");
        };
        let r = s.janet(JanetCap::default()).unwrap();
        for round in &r.rounds {
            assert!(round.completed.verify_forward(&round.sigma), "{name}");
            assert!(round.completed.verify_backward(&round.sigma), "{name}");
        }
    }
}
