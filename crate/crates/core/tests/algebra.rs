//! Ring axioms, reduction and substitution on random instances.

use nekrasov_core::exactalg::*;
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::T1, Var::T2, Var::E(1), Var::E(2)];

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i64..=2, 4)
        .prop_map(|es| Monomial::from_pairs(VARS.iter().zip(es).map(|(v, e)| (*v, exp(e)))))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -5i64..=5), 0..4)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn frac() -> impl Strategy<Value = FactoredRat> {
    (poly(), prop::collection::vec(monomial(), 0..3)).prop_map(|(p, dens)| {
        let dens: Vec<Monomial> = dens.into_iter().filter(|m| !m.is_one()).collect();
        FactoredRat::from_poly(p).mul(&FactoredRat::inv_binomials(dens.iter()))
    })
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        let mut l = a.clone();
        l.add_assign_ref(&b);
        l.add_assign_ref(&c);
        let mut bc = b.clone();
        bc.add_assign_ref(&c);
        let mut r = a.clone();
        r.add_assign_ref(&bc);
        prop_assert_eq!(&l, &r);
        let mut ab_ac = a.mul_ref(&b);
        ab_ac.add_assign_ref(&a.mul_ref(&c));
        prop_assert_eq!(a.mul_ref(&bc), ab_ac);
    }

    #[test]
    fn frac_ring_axioms(a in frac(), b in frac(), c in frac()) {
        let l = a.add(&b).add(&c);
        let r = a.add(&b.add(&c));
        prop_assert!(rand_eq(&l, &r, &cfg()).unwrap());
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        prop_assert!(rand_eq(&l, &r, &cfg()).unwrap());
        prop_assert!(l.exact_eq(&r));
    }

    #[test]
    fn reduce_is_idempotent_and_value_preserving(a in frac(), b in frac()) {
        let x = a.add(&b);
        let once = x.clone().reduce();
        prop_assert!(rand_eq(&once, &x, &cfg()).unwrap());
        prop_assert_eq!(once.clone().reduce(), once);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in frac(), b in frac(), img in monomial()) {
        let s = Subst::fixing_others().with(Var::T1, img).with(Var::E(2), Monomial::var(Var::E(1)).inv());
        let (Ok(sa), Ok(sb), Ok(sab)) = (a.subst(&s), b.subst(&s), a.mul(&b).subst(&s)) else {
            // a denominator hit 1 − 1 under the substitution
            return Ok(());
        };
        prop_assert!(sab.exact_eq(&sa.mul(&sb)));
    }

    #[test]
    fn series_exp_inverts_log(cs in prop::collection::vec(-4i64..=4, 1..7)) {
        let cap = Some(exp(8));
        let mut s = Series::<Rat>::one(cap);
        for (i, c) in cs.iter().enumerate() {
            s.add_term(exp(i as i64 + 1), rat(*c));
        }
        let back = s.log().unwrap().exp().unwrap();
        prop_assert!(back.eq_with(&s, |x, y| x == y));
    }
}
