use nekrasov_core::blowup::*;
use nekrasov_core::exactalg::{exp, exp_frac, EvalConfig, FactoredRat};
use nekrasov_core::InstantonContext;

fn zhc(ctx: &InstantonContext, n: u32) -> Vec<FactoredRat> {
    (0..=n)
        .map(|m| ctx.z_coeff(m).mul_monomial(&ctx.half_canonical(m)))
        .collect()
}

#[test]
fn zhat_order_zero_is_one() {
    let ctx = InstantonContext::new(2);
    let z = zhat(&ctx, 0, 1, exp(0), &zhc(&ctx, 0)).unwrap();
    assert!(z.coeff(exp(0)).is_one());
    assert_eq!(z.terms().len(), 1);
}

#[test]
fn zhat_half_integral_leading_term() {
    let ctx = InstantonContext::new(2);
    let z = zhat(&ctx, 1, 0, exp_frac(1, 4), &zhc(&ctx, 0)).unwrap();
    let keys: Vec<_> = z.terms().keys().copied().collect();
    assert_eq!(keys, vec![exp_frac(1, 4)]);
}

#[test]
fn key2_rank_one_all_d() {
    let ctx = InstantonContext::new(1);
    let z = zhc(&ctx, 3);
    for d in 0..=1 {
        let rep = verify_key2(&ctx, 0, d, exp(3), &z, false, &EvalConfig::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn key2_rank_two_class_zero() {
    let ctx = InstantonContext::new(2);
    let z = zhc(&ctx, 2);
    for d in 0..=2 {
        let rep = verify_key2(&ctx, 0, d, exp(2), &z, false, &EvalConfig::default()).unwrap();
        assert!(rep.pass, "d={d}: {rep:?}");
    }
}

#[test]
fn key2_rank_two_class_one() {
    let ctx = InstantonContext::new(2);
    let z = zhc(&ctx, 1);
    for d in 0..=2 {
        let rep = verify_key2(&ctx, 1, d, exp_frac(5, 4), &z, false, &EvalConfig::default()).unwrap();
        assert!(rep.pass, "d={d}: {rep:?}");
    }
}

#[test]
fn key2_detects_wrong_sign() {
    // Ẑ_{1,2} carries (−1)^{k(r−k)} = −1; it must not match the d=0 prefactor.
    let ctx = InstantonContext::new(2);
    let z = zhc(&ctx, 1);
    let lhs = zhat(&ctx, 1, 2, exp_frac(1, 4), &z).unwrap().coeff(exp_frac(1, 4));
    let (_, pref) = key2_expected(&ctx, 1, 2).unwrap();
    let pref = pref.subst(&trace_gauge(2)).unwrap();
    assert!(lhs.exact_eq(&pref));
    assert!(!lhs.exact_eq(&pref.neg()));
}

#[test]
fn key2_exact_spot_check() {
    let ctx = InstantonContext::new(2);
    let rep = verify_key2(&ctx, 0, 1, exp(1), &zhc(&ctx, 1), true, &EvalConfig::default()).unwrap();
    assert!(rep.pass);
}

#[test]
fn exponent_structure() {
    let ctx = InstantonContext::new(3);
    for k in 0..3 {
        assert!(exponent_structure_ok(&ctx, k, exp(3)));
    }
}

#[test]
fn recursion_matches_enumeration_rank_two() {
    let ctx = InstantonContext::new(2);
    let cfg = EvalConfig::default();
    let out = solve_recursion(&ctx, 2, false, &cfg).unwrap();
    assert!(out.certified(), "{:?}", out.steps);
    assert!(cross_check(&ctx, &out, false, &cfg).unwrap().iter().all(|&b| b));
}

#[test]
fn recursion_rank_one_is_underdetermined() {
    let ctx = InstantonContext::new(1);
    assert!(solve_recursion(&ctx, 1, false, &EvalConfig::default()).is_err());
}

#[test]
fn pairing_cancellation_rank_two() {
    let ctx = InstantonContext::new(2);
    let z: Vec<FactoredRat> = (0..=2).map(|m| ctx.z_coeff(m)).collect();
    for n in 1..=2 {
        let rep = pairing_cancellation_check(&ctx, &z, n, false, &EvalConfig::default()).unwrap();
        assert!(rep.pass && rep.pairs_checked > 0, "{rep:?}");
    }
}

#[test]
fn lsym_suite() {
    for rt in roots(3) {
        for p in -4..=4 {
            assert!(lsym_check(p, rt).passed(), "p={p} root={rt:?}");
        }
    }
}

#[test]
fn lsym_product_matches_full_expansion() {
    use nekrasov_core::blowup::lfactor::l_poly;
    use nekrasov_core::exactalg::{rat, Monomial, Subst, Var};
    let neg = Subst::fixing_others()
        .with(Var::T1, Monomial::var(Var::T1).inv())
        .with(Var::T2, Monomial::var(Var::T2).inv());
    let mut odd_seen = false;
    for k in coweights_with_pairing_bound(2, 3) {
        let rts = roots(2);
        let lhs = rts
            .iter()
            .fold(nekrasov_core::exactalg::LaurentPoly::one(), |acc, &rt| {
                &acc * &l_poly(k.pair(rt), rt)
            });
        let mk = k.neg();
        let rhs = rts
            .iter()
            .fold(nekrasov_core::exactalg::LaurentPoly::one(), |acc, &rt| {
                &acc * &l_poly(mk.pair(-rt), -rt)
            })
            .subst(&neg)
            .unwrap()
            .mul_monomial(&k.e_power(exp(2)));
        let rep = lsym_product_check(&k);
        assert_eq!(rep.as_printed, lhs == rhs, "{k}");
        let sign = if rep.two_rho_pairing % 2 == 0 { 1 } else { -1 };
        assert_eq!(rep.with_rho_sign, lhs == rhs.scale(&rat(sign)), "{k}");
        assert!(rep.with_rho_sign);
        odd_seen |= sign == -1 && !rep.as_printed;
    }
    assert!(odd_seen, "some class-one coweight needs the (−1)^{{2⟨k,ρ⟩}} sign");
}
