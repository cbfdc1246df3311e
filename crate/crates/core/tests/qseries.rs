use nekrasov_core::exactalg::{exp, exp_frac, rat, rat_frac, Exp, Rat, Series};
use nekrasov_core::qseries_special::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plain_product(order: i64) -> Series<Rat> {
    let cap = Some(exp(order));
    (1..=order).fold(Series::one(cap), |acc, n| {
        acc.mul(&Series::from_terms([(exp(0), rat(1)), (exp(n), rat(-1))], cap))
    })
}

#[test]
fn jacobi_derivative_formula_to_order_20() {
    let r = jacobi_derivative_check(20);
    assert!(r.pass, "{r:?}");
    assert_eq!(theta11_deriv_series(20).coeff(exp_frac(1, 4)), rat(1));
    assert_eq!(jacobi_product_series(20).coeff(exp_frac(1, 4) + exp(2)), rat(-3));
}

#[test]
fn eta_is_pentagonal_to_order_30() {
    let eta = eta_series(30).shift_exponent(-exp_frac(1, 24));
    let pent = pentagonal_series(30);
    assert!(eta.eq_with(&pent, |a, b| a == b));
    assert!(eta.eq_with(&plain_product(30), |a, b| a == b));
    let nonzero = eta.iter().filter(|(_, c)| !c.is_zero()).count();
    // generalized pentagonal numbers ≤ 30: 0 1 2 5 7 12 15 22 26
    assert_eq!(nonzero, 9);
}

#[test]
fn eta_24th_power_is_discriminant() {
    let e = eta_series(4).shift_exponent(-exp_frac(1, 24)).powi(24);
    // Δ = q − 24q² + 252q³ − 1472q⁴ + …
    assert_eq!(
        [e.coeff(exp(0)), e.coeff(exp(1)), e.coeff(exp(2)), e.coeff(exp(3))],
        [rat(1), rat(-24), rat(252), rat(-1472)]
    );
}

/// Π_m (1 − A^{2m})(1 − A^{2m}B)(1 − A^{2m−2}B⁻¹) with A = c·q and a constant B.
fn triple_product(c: &Rat, b: &Rat, cap: i64) -> Series<Rat> {
    let capx = Some(exp(cap));
    let lin = |k: i64, coef: Rat| Series::from_terms([(exp(0), rat(1)), (exp(k), -coef)], capx);
    let mut out = Series::one(capx);
    let cpow = |k: i64| (0..k).fold(rat(1), |a, _| a * c);
    for m in 1..=cap {
        out = out.mul(&lin(2 * m, cpow(2 * m)));
        out = out.mul(&lin(2 * m, cpow(2 * m) * b));
        if 2 * m - 2 <= cap {
            let e = 2 * m - 2;
            let coef = cpow(e) / b;
            out = out.mul(&if e == 0 {
                Series::constant(rat(1) - coef, capx)
            } else {
                lin(e, coef)
            });
        }
    }
    out
}

#[test]
fn odd_theta_matches_triple_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cap = exp(9);
    for _ in 0..5 {
        let c = rat_frac(rng.gen_range(1..9), rng.gen_range(1..9));
        let b = rat_frac(rng.gen_range(2..9), rng.gen_range(1..9));
        let a = Series::monomial(exp(1), c.clone(), Some(cap));
        let bs = Series::constant(b.clone(), Some(cap));
        let th = theta_char_e(&bs, &a, cap, Characteristic::ODD).unwrap();
        assert_eq!((th.a_power, th.b_power), (exp_frac(1, 4), exp_frac(1, 2)));
        let oracle = triple_product(&c, &b, 9);
        assert!(th.series.eq_with(&oracle, |x, y| x == y), "c = {c}, b = {b}");
    }
}

#[test]
fn odd_theta_is_odd_and_vanishes_at_unit_argument() {
    let cap = exp(8);
    let a = Series::monomial(exp(1), rat(1), Some(cap));
    let b = Series::from_terms([(exp(0), rat(2)), (exp(1), rat(1))], Some(cap));
    let th = theta_char_e(&b, &a, cap, Characteristic::ODD).unwrap().series;
    let th_inv = theta_char_e(&b.inv().unwrap(), &a, cap, Characteristic::ODD)
        .unwrap()
        .series;
    // B^{1/2}·S(B) is odd, so S(B⁻¹) = −B·S(B)
    assert!(th_inv.eq_with(&b.mul(&th).neg(), |x, y| x == y));
    let one = Series::one(Some(cap));
    assert!(theta_char_e(&one, &a, cap, Characteristic::ODD)
        .unwrap()
        .series
        .is_zero());
}

#[test]
fn theta_needs_positive_valuation() {
    let cap: Exp = exp(3);
    let b = Series::<Rat>::one(Some(cap));
    assert!(theta_char_e(&b, &b, cap, Characteristic::THETA4).is_err());
}
