use nekrasov_core::exactalg::{rat, rat_frac, EvalConfig, FactoredRat, Monomial, Var};
use nekrasov_core::prepotential::*;
use nekrasov_core::InstantonContext;

fn u() -> Monomial {
    Monomial::var(Var::W)
}

/// c/((1 − u)(1 − u⁻¹)) = −c·u/(1 − u)²
fn pair_pole(c: i64) -> FactoredRat {
    FactoredRat::inv_binomials([&u(), &u().inv()]).scale(&rat(c))
}

#[test]
fn probe_order_zero_vanishes() {
    let ctx = InstantonContext::new(2);
    let p = probe(&ctx, DEFAULT_DIRECTIONS[1], 1, 3).unwrap();
    assert!(p[0].iter().all(|(_, c)| c.is_zero()));
}

#[test]
fn regularity_rank_one_and_two() {
    for r in 1..=2 {
        let rep = regularity_check(&InstantonContext::new(r), 2, &DEFAULT_DIRECTIONS, true).unwrap();
        assert!(rep.regular, "{rep:?}");
    }
}

#[test]
fn regularity_fails_without_multiplier() {
    let rep = regularity_check(&InstantonContext::new(2), 1, &DEFAULT_DIRECTIONS, false).unwrap();
    assert!(!rep.regular);
    assert_eq!(rep.min_s_orders[0].1[1], Some(-2));
}

#[test]
fn direction_validation() {
    assert!(Direction::new(1, 1).is_err());
    assert!(Direction::new(-1, 2).is_err());
    assert!(Direction::new(2, -3).is_ok());
}

#[test]
fn genus_zero_first_order() {
    // ε₁ε₂Z₁ at ε = 0: each of the two one-box fixed points gives 1/((1 − u)(1 − u⁻¹))
    let data = RankTwoData::compute(1).unwrap();
    assert!(data.f0[1].exact_eq(&pair_pole(2)));
    assert!(data.h.iter().all(|h| h.is_zero()));
}

#[test]
fn genus_one_first_order_frozen() {
    let data = RankTwoData::compute(1).unwrap();
    assert!(data.f1[1].exact_eq(&pair_pole(1).scale(&rat_frac(1, 6))));
    // G₁ = −(1 + 10u + u²)u/(6(1 − u)⁴)
    let g = FactoredRat::from_poly(
        (FactoredRat::from_int(1).add(&FactoredRat::var(Var::W).scale(&rat(10))))
            .add(&FactoredRat::from_monomial(u().powi(2)))
            .as_poly()
            .unwrap(),
    )
    .mul_monomial(&u())
    .mul(&FactoredRat::inv_binomials([&u(), &u(), &u(), &u()]))
    .scale(&rat_frac(-1, 6));
    assert!(data.g[1].exact_eq(&g));
}

#[test]
fn alternative_directions_agree() {
    let ctx = InstantonContext::new(2);
    let a = extract_genus(&ctx, 2, &DEFAULT_DIRECTIONS).unwrap();
    let b = extract_genus(&ctx, 2, &ALTERNATIVE_DIRECTIONS).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(x.f0.exact_eq(&y.f0) && x.h.exact_eq(&y.h) && x.g.exact_eq(&y.g) && x.f1.exact_eq(&y.f1));
    }
}

#[test]
fn h_vanishes_rank_two() {
    let data = RankTwoData::compute(2).unwrap();
    assert!(data.h.iter().all(|h| h.is_zero()));
}

#[test]
fn genus_one_identities() {
    let data = RankTwoData::compute(3).unwrap();
    let rep = genus1_check(&data, true, &EvalConfig::default()).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert_eq!(rep.succeeded, vec![Normalization::Mixed]);
    assert!(rep.zeta_f1.iter().chain(&rep.zeta_d2f0).all(|z| z.polynomial));
}

#[test]
fn contact_equation() {
    let data = RankTwoData::compute(3).unwrap();
    let rep = contact_check(&data, false, &EvalConfig::default()).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(rep.odd_characteristic_vanishes);
}

#[test]
fn second_derivative_zeta_polynomial() {
    let data = RankTwoData::compute(1).unwrap();
    let d2 = data.f0[1].log_derivative(Var::W).log_derivative(Var::W);
    let z = zeta_polynomial(&d2).unwrap();
    assert!(z.len() <= 5);
}
