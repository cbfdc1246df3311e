use nekrasov_core::exactalg::{frac_eq, rat, rat_frac, EvalConfig, FactoredRat};
use nekrasov_core::instanton::{t1, t2};
use nekrasov_core::partitions::{enumerate_tuples, partition_counts, partitions};
use nekrasov_core::InstantonContext;
use proptest::prelude::*;

/// Coefficients of Π(1 − x^m)^{−r} through x^max.
fn colored_partition_counts(r: usize, max: usize) -> Vec<u64> {
    let p = partition_counts(max);
    let mut acc = vec![0u64; max + 1];
    acc[0] = 1;
    for _ in 0..r {
        let mut next = vec![0u64; max + 1];
        for i in 0..=max {
            for j in 0..=max - i {
                next[i + j] += acc[i] * p[j];
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn tuple_counts_match_generating_function() {
    for r in 1..=3 {
        let counts = colored_partition_counts(r, 8);
        for n in 0..=8u32 {
            assert_eq!(
                enumerate_tuples(r, n).len() as u64,
                counts[n as usize],
                "r = {r}, n = {n}"
            );
        }
    }
    // p(n) independently of the Euler product
    assert_eq!(partition_counts(10), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

/// f(k) = 1/((1 − t₁^{−k})(1 − t₂^{−k})); Z for r = 1 is exp Σ_k f(k)𝔮^k/k.
fn f(k: i64) -> FactoredRat {
    FactoredRat::inv_binomials([&t1().powi(-k), &t2().powi(-k)])
}

#[test]
fn rank_one_matches_plethystic_exponential() {
    let ctx = InstantonContext::new(1);
    let third = |x: FactoredRat, d: i64| x.scale(&rat_frac(1, d));
    let z2 = third(f(1).pow(2).add(&f(2)), 2);
    assert!(ctx.z_coeff(2).exact_eq(&z2));
    let z3 = third(
        f(1).pow(3)
            .add(&f(1).mul(&f(2)).scale(&rat(3)))
            .add(&f(3).scale(&rat(2))),
        6,
    );
    assert!(frac_eq(&ctx.z_coeff(3), &z3, true, &EvalConfig::default()).unwrap());
}

#[test]
fn tangent_determinant() {
    for r in 1..=2 {
        for n in 0..=4 {
            assert!(InstantonContext::new(r).tangent_det_check(n), "r = {r}, n = {n}");
        }
    }
}

#[test]
fn scaling_symmetry_rank_two() {
    let cfg = EvalConfig::default();
    assert!(InstantonContext::new(2).scaling_symmetry_check(3, false, &cfg).unwrap());
    assert!(InstantonContext::new(1).scaling_symmetry_check(3, true, &cfg).unwrap());
    assert!(InstantonContext::new(2).scaling_symmetry_check(2, true, &cfg).unwrap());
}

#[test]
fn exchange_and_weyl_symmetry() {
    let cfg = EvalConfig::default();
    for r in 1..=2 {
        for n in 1..=3 {
            assert!(InstantonContext::new(r)
                .exchange_symmetry_check(n, false, &cfg)
                .unwrap());
        }
    }
    assert!(InstantonContext::new(2)
        .weyl_symmetry_check(2, &[2, 1], true, &cfg)
        .unwrap());
    assert!(InstantonContext::new(3)
        .weyl_symmetry_check(2, &[3, 1, 2], false, &cfg)
        .unwrap());
}

#[test]
fn exact_and_randomized_paths_agree() {
    let ctx = InstantonContext::new(2);
    let z = ctx.z_coeff(2);
    let cfg = EvalConfig::with_seed(7);
    assert!(frac_eq(&z, &z.clone().reduce(), true, &cfg).unwrap());
    assert!(frac_eq(&z, &z.clone().reduce(), false, &cfg).unwrap());
    assert!(!frac_eq(&z, &ctx.z_coeff(1), false, &cfg).unwrap());
}

proptest! {
    #[test]
    fn arm_leg_nonnegative_inside(n in 1u32..9, pick in 0usize..1000) {
        let ps = partitions(n);
        let y = &ps[pick % ps.len()];
        for (i, j) in y.boxes() {
            prop_assert!(y.arm(i, j) >= 0 && y.leg(i, j) >= 0);
            prop_assert_eq!(y.arm(i, j), y.transpose().leg(j, i));
        }
        prop_assert_eq!(&y.transpose().transpose(), y);
    }
}
