use nekrasov_core::blowup::{
    coweights_with_pairing_bound, cross_check, key2_expected, lsym_check, lsym_product_check, roots, solve_recursion,
    verify_key2,
};
use nekrasov_core::exactalg::{exp, json, EvalConfig, Exp, FactoredRat, Rat};
use nekrasov_core::polylog::{
    beta_limit_drift, bracket_identity, gamma_consistency, inversion_checks, limit_checks, p_poly,
    pert_polynomial_identities, proposition_check, GammaArgs,
};
use nekrasov_core::prepotential::{
    contact_check, extract_genus, genus1_check, regularity_check, Direction, RankTwoData, ALTERNATIVE_DIRECTIONS,
    DEFAULT_DIRECTIONS,
};
use nekrasov_core::qseries_special::{eta_series, jacobi_derivative_check, pentagonal_series, theta11_deriv_series};
use nekrasov_core::{rat, rat_frac, InstantonContext};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{timed, Check};

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub exact: bool,
    pub cfg: EvalConfig,
}

fn series_json(s: &nekrasov_core::exactalg::Series<Rat>) -> Value {
    Value::Array(
        s.iter()
            .map(|(e, c)| json!([json::exp_str(e), json::rat_str(c)]))
            .collect(),
    )
}

/// Z₀…Z_N with the (t₁t₂)^{−rn/2} prefactor attached.
fn zhc(ctx: &InstantonContext, order: u32) -> Vec<FactoredRat> {
    (0..=order)
        .map(|n| ctx.z_coeff(n).mul_monomial(&ctx.half_canonical(n)))
        .collect()
}

pub fn compute_z(rank: usize, order: u32, s: Settings) -> (Vec<Check>, Value) {
    let ctx = InstantonContext::new(rank);
    let coeffs: Vec<FactoredRat> = (0..=order).map(|n| ctx.z_coeff(n)).collect();
    let data = json!({
        "rank": rank,
        "coefficients": coeffs.iter().enumerate().map(|(n, z)| json!({
            "n": n,
            "prefactor": json::monomial_json(&ctx.half_canonical(n as u32)),
            "z": json::frac_json(z),
        })).collect::<Vec<_>>(),
    });
    let mut checks = timed(|| {
        let ok = (0..=order).all(|n| ctx.tangent_det_check(n));
        vec![Check::new(
            "tangent-determinant",
            "determinant of the tangent space at fixed points",
            ok,
            json!({}),
        )]
    });
    checks.extend(timed(|| {
        let id = "exchange-symmetry";
        let anchor = "Z_n invariant under t1 <-> t2";
        let r: nekrasov_core::Result<bool> = (1..=order).try_fold(true, |acc, n| {
            Ok(acc && ctx.exchange_symmetry_check(n, s.exact, &s.cfg)?)
        });
        vec![match r {
            Ok(ok) => Check::new(id, anchor, ok, json!({})),
            Err(e) => Check::errored(id, anchor, &e),
        }]
    }));
    checks.extend(timed(|| {
        let id = "scaling-symmetry";
        let anchor = "Z(e1,-2e1) = Z(2e1,-e1)";
        vec![match ctx.scaling_symmetry_check(order, s.exact, &s.cfg) {
            Ok(ok) => Check::new(id, anchor, ok, json!({})),
            Err(e) => Check::errored(id, anchor, &e),
        }]
    }));
    (checks, data)
}

pub fn verify_blowup(rank: usize, k: usize, ds: &[usize], order: Exp, s: Settings) -> Vec<Check> {
    let ctx = InstantonContext::new(rank);
    let z = zhc(&ctx, order.floor().to_integer().max(0) as u32);
    ds.iter()
        .flat_map(|&d| {
            timed(|| {
                let id = format!("blowup-k{k}-d{d}");
                let anchor = "blowup equation closed form";
                let expected = match key2_expected(&ctx, k, d) {
                    Some((x, pref)) => json!({
                        "q_exponent": json::exp_str(&x),
                        "prefactor": json::frac_json(&pref),
                    }),
                    None => json!("vanishing"),
                };
                vec![match verify_key2(&ctx, k, d, order, &z, s.exact, &s.cfg) {
                    Ok(rep) => {
                        let ff = rep.first_failure.clone();
                        Check::new(id, anchor, rep.pass, json!({ "expected": expected, "report": rep }))
                            .with_failure(ff)
                    }
                    Err(e) => Check::errored(id, anchor, &e),
                }]
            })
        })
        .collect()
}

pub fn lsym(rank: usize) -> Vec<Check> {
    timed(|| {
        let single: Vec<_> = roots(rank)
            .into_iter()
            .flat_map(|rt| (-4..=4).map(move |p| lsym_check(p, rt)))
            .collect();
        let products: Vec<_> = coweights_with_pairing_bound(rank, 4)
            .iter()
            .map(lsym_product_check)
            .collect();
        let ok = single.iter().all(|r| r.passed()) && products.iter().all(|p| p.with_rho_sign);
        let printed_reflection = single.iter().filter(|r| !r.reflection_as_printed).count();
        let printed_product = products.iter().filter(|p| !p.as_printed).count();
        vec![Check::new(
            "l-factor-symmetries",
            "l-factor exchange, reflection and value at zero",
            ok,
            json!({
                "pairs_checked": single.len(),
                "coweights_checked": products.len(),
                "printed_reflection_exponent_failures": printed_reflection,
                "product_identity_without_rho_sign_failures": printed_product,
            }),
        )]
    })
}

pub fn recursion(rank: usize, order: u32, s: Settings) -> Vec<Check> {
    let anchor = "Z determined recursively from Z_0 = 1";
    if rank < 2 {
        return vec![Check::skipped(
            "recursion",
            anchor,
            "for r = 1 the differenced equation is homogeneous and fixes Z_n only up to scale",
        )];
    }
    let ctx = InstantonContext::new(rank);
    timed(|| match solve_recursion(&ctx, order, s.exact, &s.cfg) {
        Err(e) => vec![Check::errored("recursion", anchor, &e)],
        Ok(out) => {
            let certified = Check::new(
                "recursion-certified",
                anchor,
                out.certified(),
                json!({ "steps": out.steps }),
            );
            let cross = match cross_check(&ctx, &out, s.exact, &s.cfg) {
                Ok(v) => {
                    let first = v.iter().position(|b| !b).map(|i| (i + 1).to_string());
                    Check::new(
                        "recursion-vs-enumeration",
                        "recursion agrees with the fixed-point sum",
                        first.is_none(),
                        json!({ "orders": v }),
                    )
                    .with_failure(first)
                }
                Err(e) => Check::errored("recursion-vs-enumeration", anchor, &e),
            };
            vec![certified, cross]
        }
    })
}

pub fn probe_prepotential(rank: usize, order: u32, dirs: &[Direction; 3], compare: bool) -> (Vec<Check>, Value) {
    let ctx = InstantonContext::new(rank);
    let mut checks = timed(|| {
        let anchor = "F = e1 e2 log Z is regular at e = 0";
        let mut v = Vec::new();
        match regularity_check(&ctx, order, dirs, true) {
            Ok(rep) => v.push(Check::new("regularity", anchor, rep.regular, json!(rep))),
            Err(e) => v.push(Check::errored("regularity", anchor, &e)),
        }
        match regularity_check(&ctx, order, dirs, false) {
            Ok(rep) => v.push(Check::new(
                "regularity-control",
                "log Z without e1 e2 has poles",
                !rep.regular,
                json!(rep),
            )),
            Err(e) => v.push(Check::errored("regularity-control", anchor, &e)),
        }
        v
    });
    let mut data = Value::Null;
    checks.extend(timed(|| {
        let anchor = "F0, H, G, F1 extracted consistently along three rays";
        match extract_genus(&ctx, order, dirs) {
            Err(e) => vec![Check::errored("genus-extraction", anchor, &e)],
            Ok(slices) => {
                data = json!(slices
                    .iter()
                    .map(|g| json!({
                        "n": g.n,
                        "F0": json::frac_json(&g.f0),
                        "H": json::frac_json(&g.h),
                        "G": json::frac_json(&g.g),
                        "F1": json::frac_json(&g.f1),
                    }))
                    .collect::<Vec<_>>());
                let mut v = vec![Check::new(
                    "genus-extraction",
                    anchor,
                    true,
                    json!({ "orders": slices.len() }),
                )];
                let h_first = slices.iter().find(|g| !g.h.is_zero()).map(|g| g.n.to_string());
                v.push(Check::new("h-vanishes", "H^inst = 0", h_first.is_none(), json!({})).with_failure(h_first));
                if compare {
                    let other = if dirs == &DEFAULT_DIRECTIONS {
                        &ALTERNATIVE_DIRECTIONS
                    } else {
                        &DEFAULT_DIRECTIONS
                    };
                    let alt = extract_genus(&ctx, order, other);
                    let ok = alt.as_ref().is_ok_and(|alt| {
                        alt.iter().zip(&slices).all(|(x, y)| {
                            x.f0.exact_eq(&y.f0) && x.h.exact_eq(&y.h) && x.g.exact_eq(&y.g) && x.f1.exact_eq(&y.f1)
                        })
                    });
                    v.push(Check::new(
                        "direction-independence",
                        "genus coefficients independent of the ray set",
                        ok,
                        json!({ "other_directions": other }),
                    ));
                }
                v
            }
        }
    }));
    (checks, data)
}

pub fn genus1(order: u32, s: Settings) -> Vec<Check> {
    let anchor = "exp(F1) eta(tau/2) = 1 and exp(G) = q^{-1/24} prod(1 - q^{2d-1})";
    timed(
        || match RankTwoData::compute(order).and_then(|d| genus1_check(&d, s.exact, &s.cfg)) {
            Ok(rep) => vec![Check::new("genus-one", anchor, rep.pass, json!(rep))],
            Err(e) => vec![Check::errored("genus-one", anchor, &e)],
        },
    )
}

pub fn contact(order: u32, s: Settings) -> Vec<Check> {
    let anchor = "contact term equation independent of d";
    timed(
        || match RankTwoData::compute(order).and_then(|d| contact_check(&d, s.exact, &s.cfg)) {
            Ok(rep) => {
                let ff = rep.pairs.iter().find_map(|p| p.first_failure.clone());
                vec![Check::new("contact", anchor, rep.pass, json!(rep)).with_failure(ff)]
            }
            Err(e) => vec![Check::errored("contact", anchor, &e)],
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum QSeriesKind {
    Eta,
    ThetaDeriv,
}

pub fn qseries(kind: QSeriesKind, order: u32) -> Vec<Check> {
    timed(|| match kind {
        QSeriesKind::Eta => {
            let eta = eta_series(order);
            let bare = eta.shift_exponent(-nekrasov_core::exactalg::exp_frac(1, 24));
            let m = bare.first_mismatch(&pentagonal_series(order), |a, b| a == b);
            vec![Check::new(
                "eta-pentagonal",
                "eta coefficients supported on pentagonal numbers",
                m.is_none(),
                json!({ "series": series_json(&eta) }),
            )
            .with_failure(m.map(|e| json::exp_str(&e)))]
        }
        QSeriesKind::ThetaDeriv => {
            let rep = jacobi_derivative_check(order);
            let ff = rep.first_mismatch.clone();
            vec![Check::new(
                "jacobi-derivative",
                "theta11'(0) = -2 pi eta^3",
                rep.pass,
                json!({ "series": series_json(&theta11_deriv_series(order)) }),
            )
            .with_failure(ff)]
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PolylogSuite {
    All,
    Inversion,
    Limits,
    Bracket,
    Identities,
    Gamma,
}

pub fn polylog(suite: PolylogSuite, prec: usize, seed: u64) -> Vec<Check> {
    let on = |s: PolylogSuite| suite == PolylogSuite::All || suite == s;
    let mut out = Vec::new();
    if on(PolylogSuite::Inversion) {
        out.extend(timed(|| {
            let mut fact = BigInt::from(1);
            let mut pk_ok = true;
            for k in 0..=12usize {
                if k > 0 {
                    fact *= k;
                }
                pk_ok &= p_poly(k).iter().sum::<BigInt>() == fact;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<Rat> = (0..10)
                .map(|_| Rat::new(rng.gen_range(1..6283i64).into(), 1000.into()))
                .collect();
            let reps: Vec<_> = points.iter().map(|y| inversion_checks(y, prec)).collect();
            let ok = reps.iter().all(|r| r.as_ref().is_ok_and(|r| r.pass));
            let details: Vec<Value> = reps
                .iter()
                .map(|r| match r {
                    Ok(r) => json!(r),
                    Err(e) => json!({ "error": e.to_string() }),
                })
                .collect();
            vec![
                Check::new("p-polynomials", "P_k(1) = k! for k <= 12", pk_ok, json!({})),
                Check::new("inversion", "Li_1, Li_2, Li_3 inversion formulas", ok, json!(details)),
            ]
        }));
    }
    if on(PolylogSuite::Limits) {
        out.extend(timed(|| {
            let reps: Vec<_> = (0..=3).map(|k| limit_checks(k, &rat(2), &rat(1), prec)).collect();
            let ok = reps.iter().all(|r| r.as_ref().is_ok_and(|r| r.pass));
            let details: Vec<Value> = reps
                .iter()
                .map(|r| {
                    r.as_ref()
                        .map_or_else(|e| json!({ "error": e.to_string() }), |r| json!(r))
                })
                .collect();
            vec![Check::new(
                "beta-limits",
                "beta -> 0 limits of Li_k(e^{-beta x})",
                ok,
                json!(details),
            )]
        }));
    }
    if on(PolylogSuite::Bracket) {
        out.extend(timed(|| {
            let reps: Vec<_> = (-6..=6i64).filter(|k| *k != 0).map(bracket_identity).collect();
            let ok = reps.iter().all(|r| r.identity && r.matches_l_factor);
            vec![Check::new(
                "bracket",
                "gamma-bracket reproduces the l-factor",
                ok,
                json!(reps),
            )]
        }));
    }
    if on(PolylogSuite::Identities) {
        out.extend(timed(|| {
            let ids = pert_polynomial_identities();
            let ok = ids.iter().all(|i| i.holds_corrected);
            vec![Check::new(
                "perturbative-identities",
                "closed-form identities for the explicit gamma terms",
                ok,
                json!(ids),
            )]
        }));
    }
    if on(PolylogSuite::Gamma) {
        out.extend(timed(|| {
            let a = GammaArgs::from_rats(&rat(1), &rat(1), &rat(1), &rat_frac(1, 3), &rat_frac(1, 7), prec);
            let mut v = Vec::new();
            let anchor = "gamma-tilde by polylogs and by direct summation";
            v.push(match gamma_consistency(&a, 20, prec) {
                Ok(c) => Check::new("gamma-dual-path", anchor, c.pass, json!(c)),
                Err(e) => Check::errored("gamma-dual-path", anchor, &e),
            });
            let anchor = "small-beta expansion of gamma-tilde";
            v.push(
                match beta_limit_drift(&rat(1), &rat(1), &rat_frac(1, 3), &rat_frac(1, 7), prec) {
                    Ok(d) => Check::new("gamma-drift", anchor, d.pass, json!(d)),
                    Err(e) => Check::errored("gamma-drift", anchor, &e),
                },
            );
            let anchor = "perturbative blowup constant at r = 2";
            let props: Vec<_> = (0..=2).map(|d| proposition_check(&a, d, 20, prec)).collect();
            let ok = props.iter().all(|p| p.as_ref().is_ok_and(|p| p.pass));
            let details: Vec<Value> = props
                .iter()
                .map(|r| {
                    r.as_ref()
                        .map_or_else(|e| json!({ "error": e.to_string() }), |r| json!(r))
                })
                .collect();
            v.push(Check::new("perturbative-constant", anchor, ok, json!(details)));
            v
        }));
    }
    out
}

/// The q-orders used by `all` for the blowup checks at class k.
pub fn blowup_order(rank: usize, k: usize, order: u32) -> Exp {
    let r = rank as i64;
    let k = k as i64;
    nekrasov_core::exactalg::exp_frac(k * (r - k), 2 * r) + exp(order as i64 - i64::from(k > 0))
}
