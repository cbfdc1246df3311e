use nekrasov_core::exactalg::{rat, rat_frac, Rat};
use nekrasov_core::polylog::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LOG2_1E30: f64 = -99.65;
const LOG2_1E20: f64 = -66.43;

#[test]
fn p_polynomials_at_one_are_factorials() {
    let mut fact = BigInt::from(1);
    for k in 0..=12usize {
        if k > 0 {
            fact *= k;
        }
        let s: BigInt = p_poly(k).iter().sum();
        assert_eq!(s, fact, "P_{k}(1)");
    }
    assert_eq!(p_poly(3), vec![1.into(), 4.into(), 1.into()]);
}

#[test]
fn low_negative_index_closed_forms() {
    let x = rat_frac(1, 3);
    // Li_0(x) = x/(1 − x), Li_{−2}(x) = x(1 + x)/(1 − x)³
    assert_eq!(li_neg_value(0, &x).unwrap(), &x / (rat(1) - &x));
    let one_minus = rat(1) - &x;
    assert_eq!(
        li_neg_value(2, &x).unwrap(),
        &x * (rat(1) + &x) / (&one_minus * &one_minus * &one_minus)
    );
    assert!(li_neg_value(4, &rat(1)).is_err());
}

#[test]
fn derivative_relation_and_negative_inversion() {
    for k in 0..=8 {
        assert!(derivative_relation(k), "θLi_{{−{k}}} = Li_{{−{}}}", k + 1);
    }
    for l in 0..=8 {
        assert!(negative_inversion(l), "inversion at l = {l}");
    }
}

#[test]
fn positive_index_values() {
    let p = 192;
    let half = BigFloat::from_rat(&rat_frac(1, 2), p);
    let ln2 = BigFloat::from_i64(2, p).ln();
    let d = li_pos(1, &half).unwrap() - ln2;
    assert!(d.abs().log2_bound() < -150.0);
    assert!(li_pos(2, &BigFloat::zero(p)).unwrap().is_zero());
    assert!(li_pos(2, &BigFloat::one(p)).is_err());
}

#[test]
fn inversion_formulas_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11_2233);
    for _ in 0..10 {
        // y ∈ (0, 2π)
        let y = Rat::new(rng.gen_range(1..6283i64).into(), 1000.into());
        let r = inversion_checks(&y, 128).unwrap();
        assert!(r.pass, "{r:?}");
        for res in [r.li1_residual_log2, r.li2_residual_log2, r.li3_residual_log2] {
            assert!(res < LOG2_1E30, "{r:?}");
        }
    }
}

#[test]
fn bernoulli_expansion_matches_series() {
    let p = 128 + GUARD_BITS;
    for y in [rat_frac(1, 4), rat_frac(3, 2)] {
        let yf = BigFloat::from_rat(&y, p);
        let w = (-&yf).exp();
        for k in 1..=3u32 {
            let a = li_bernoulli(k, &yf).unwrap();
            let b = li_pos(k, &w).unwrap();
            assert!((a.re - b).abs().to_f64() < 1e-25, "k = {k}");
            assert!(a.im.is_zero());
        }
    }
}

#[test]
fn beta_limits_converge_at_first_order() {
    for k in [0usize, 1, 3] {
        let r = limit_checks(k, &rat(2), &rat(1), 128).unwrap();
        assert!(r.pass, "{r:?}");
        for s in &r.series {
            assert!(s.order >= 0.9, "{} order {}", s.name, s.order);
        }
    }
}

#[test]
fn bracket_identity_reproduces_l_factors() {
    for k in (-6..=6i64).filter(|k| *k != 0) {
        let r = bracket_identity(k);
        assert!(r.identity && r.matches_l_factor, "{r:?}");
    }
}

#[test]
fn closed_form_identities() {
    let out = pert_polynomial_identities();
    assert_eq!(out.len(), 5);
    for o in &out {
        assert!(o.holds_corrected, "{o:?}");
        assert_eq!(o.holds_as_printed, o.correction.is_none(), "{o:?}");
    }
    let broken: Vec<_> = out.iter().filter(|o| !o.holds_as_printed).map(|o| o.name).collect();
    assert_eq!(broken, ["log_quadratic", "epsilon_quadratic"]);
}

fn sample_args() -> GammaArgs {
    GammaArgs::from_rats(&rat(1), &rat(1), &rat(1), &rat_frac(1, 3), &rat_frac(1, 7), 128)
}

#[test]
fn gamma_tilde_two_paths_agree() {
    let a = sample_args();
    for m in [10, 20] {
        let c = gamma_consistency(&a, m, 128).unwrap();
        assert!(c.pass && c.path_residual_log2 < LOG2_1E20, "{c:?}");
        assert!(c.truncation_gap.abs() < 1e-6, "{c:?}");
    }
}

#[test]
fn gamma_tilde_small_beta_drift() {
    let r = beta_limit_drift(&rat(1), &rat(1), &rat_frac(1, 3), &rat_frac(1, 7), 128).unwrap();
    assert!(r.pass && r.decreasing, "{r:?}");
}

#[test]
fn perturbative_constant_has_derived_sign() {
    let a = sample_args();
    for d in 0..=2 {
        let c = proposition_check(&a, d, 20, 128).unwrap();
        assert!(c.pass, "{c:?}");
        assert!(!c.printed_holds, "{c:?}");
    }
}
