//! Blowup correlation functions Ẑ_{k,d} and the three cases of their closed form.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::coweight::{enumerate_coweights, Coweight};
use super::lfactor::inv_l_product;
use crate::error::Result;
use crate::exactalg::{
    exp, exp_frac, json, product_value, products_eq, EvalConfig, Exp, FactoredRat, Monomial, Product, QSeries, Subst,
    Var,
};
use crate::instanton::{t1, t2, InstantonContext};

/// Eliminates e_r through the trace condition e₁⋯e_r = 1.
pub fn trace_gauge(r: usize) -> Subst {
    let img = Monomial::from_pairs((1..r).map(|a| (Var::E(a as u8), exp(-1))));
    Subst::fixing_others().with(Var::E(r as u8), img)
}

/// {t₂ ↦ t₂/t₁, e_α ↦ e_α t₁^{k_α}}: the arguments (ε₁, ε₂−ε₁, a⃗+ε₁k⃗).
pub fn first_shift(k: &Coweight) -> Subst {
    let mut s = Subst::fixing_others().with(Var::T2, t2().div(&t1()));
    for (a, ka) in k.0.iter().enumerate() {
        let v = Var::E(a as u8 + 1);
        s.insert(v, Monomial::var(v).mul(&t1().pow(*ka)));
    }
    s
}

/// {t₁ ↦ t₁/t₂, e_α ↦ e_α t₂^{k_α}}: the arguments (ε₁−ε₂, ε₂, a⃗+ε₂k⃗).
pub fn second_shift(k: &Coweight) -> Subst {
    let mut s = Subst::fixing_others().with(Var::T1, t1().div(&t2()));
    for (a, ka) in k.0.iter().enumerate() {
        let v = Var::E(a as u8 + 1);
        s.insert(v, Monomial::var(v).mul(&t2().pow(*ka)));
    }
    s
}

/// Unexpanded summands of Ẑ_{k,d}, grouped by 𝔮-exponent. `zhc[n]` is the 𝔮ⁿ
/// coefficient of Z^inst (with its half-canonical prefactor); it must reach ⌊order⌋.
pub fn zhat_products(
    ctx: &InstantonContext,
    k: usize,
    d: usize,
    order: Exp,
    zhc: &[FactoredRat],
) -> Result<BTreeMap<Exp, Vec<Product>>> {
    let r = ctx.r;
    assert!(d <= r, "d must satisfy 0 ≤ d ≤ r");
    let gauge = trace_gauge(r);
    let shift = exp(d as i64) - exp_frac(r as i64, 2);
    let cws = enumerate_coweights(r, k, order);
    let per: Vec<Vec<(Exp, Product)>> = cws
        .par_iter()
        .map(|kv| -> Result<Vec<(Exp, Product)>> {
            let h = kv.half_norm();
            let room = order - h;
            let nmax = room.floor().to_integer().max(-1);
            let pref = inv_l_product(kv)
                .mul_monomial(&t1().mul(&t2()).pow(shift * h))
                .mul_monomial(&kv.e_power(exp(d as i64)))
                .subst(&gauge)?;
            let s1 = first_shift(kv);
            let s2 = second_shift(kv);
            let mut z1 = Vec::new();
            let mut z2 = Vec::new();
            for n in 0..=nmax {
                let zn = &zhc[n as usize];
                let sh = exp(n) * shift;
                z1.push(zn.subst(&s1)?.mul_monomial(&t1().pow(sh)).subst(&gauge)?);
                z2.push(zn.subst(&s2)?.mul_monomial(&t2().pow(sh)).subst(&gauge)?);
            }
            let mut out = Vec::new();
            for n in 0..=nmax {
                for m in 0..=(nmax - n) {
                    let e = h + exp(n + m);
                    if e <= order {
                        out.push((e, vec![pref.clone(), z1[n as usize].clone(), z2[m as usize].clone()]));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut grouped: BTreeMap<Exp, Vec<Product>> = BTreeMap::new();
    for (e, p) in per.into_iter().flatten() {
        grouped.entry(e).or_default().push(p);
    }
    Ok(grouped)
}

/// Ẑ_{k,d} summed exactly.
pub fn zhat(ctx: &InstantonContext, k: usize, d: usize, order: Exp, zhc: &[FactoredRat]) -> Result<QSeries> {
    let grouped = zhat_products(ctx, k, d, order, zhc)?;
    let mut out = QSeries::zero(Some(order));
    for (e, ps) in grouped {
        let vals: Vec<FactoredRat> = ps.iter().map(product_value).collect();
        out.add_term(e, FactoredRat::sum(&vals));
    }
    Ok(out)
}

/// Right-hand side of the closed form for Ẑ_{k,d}: a monomial times 𝔮^{shift}·Z.
pub fn key2_expected(ctx: &InstantonContext, k: usize, d: usize) -> Option<(Exp, FactoredRat)> {
    let r = ctx.r as i64;
    let k = k as i64;
    let d = d as i64;
    // ℒ^{x} = 𝔮^x (t₁t₂)^{−r x/2}
    let x = exp_frac(k * (r - k), 2 * r);
    let tt = t1().mul(&t2());
    let lpow = tt.pow(-x * exp(r) / 2);
    if d == 0 {
        Some((x, FactoredRat::from_monomial(lpow)))
    } else if d < r {
        if k == 0 {
            Some((Exp::zero(), FactoredRat::one()))
        } else {
            None
        }
    } else {
        let sign = if (k * (r - k)) % 2 == 0 { 1 } else { -1 };
        let m = tt.pow(exp_frac(k * (r - k), 2)).mul(&lpow);
        Some((x, FactoredRat::from_monomial(m).scale(&crate::exactalg::rat(sign))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderStatus {
    pub exponent: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Key2Report {
    pub rank: usize,
    pub k: usize,
    pub d: usize,
    pub order: String,
    pub case: &'static str,
    pub orders: Vec<OrderStatus>,
    pub first_failure: Option<String>,
    pub pass: bool,
}

/// Checks Ẑ_{k,d} against its closed form order by order.
pub fn verify_key2(
    ctx: &InstantonContext,
    k: usize,
    d: usize,
    order: Exp,
    zhc: &[FactoredRat],
    exact: bool,
    cfg: &EvalConfig,
) -> Result<Key2Report> {
    let r = ctx.r;
    let gauge = trace_gauge(r);
    let lhs = zhat_products(ctx, k, d, order, zhc)?;
    let mut rhs: BTreeMap<Exp, Vec<Product>> = BTreeMap::new();
    if let Some((x, pref)) = key2_expected(ctx, k, d) {
        let pref = pref.subst(&gauge)?;
        for (n, z) in zhc.iter().enumerate() {
            let e = x + exp(n as i64);
            if e <= order {
                rhs.entry(e).or_default().push(vec![pref.clone(), z.subst(&gauge)?]);
            }
        }
    }
    let mut exps: Vec<Exp> = lhs.keys().chain(rhs.keys()).copied().collect();
    exps.sort();
    exps.dedup();
    let mut orders = Vec::new();
    let mut first_failure = None;
    for e in exps {
        let l = lhs.get(&e).cloned().unwrap_or_default();
        let rr = rhs.get(&e).cloned().unwrap_or_default();
        let pass = products_eq(&l, &rr, exact, cfg)?;
        if !pass && first_failure.is_none() {
            first_failure = Some(json::exp_str(&e));
        }
        orders.push(OrderStatus {
            exponent: json::exp_str(&e),
            pass,
        });
    }
    let case = if d == 0 {
        "d=0"
    } else if d < r {
        "0<d<r"
    } else {
        "d=r"
    };
    Ok(Key2Report {
        rank: r,
        k,
        d,
        order: json::exp_str(&order),
        case,
        pass: first_failure.is_none(),
        orders,
        first_failure,
    })
}

/// 𝔮-exponents of Ẑ_{k,d} lie in k(r−k)/2r + ℤ≥0.
pub fn exponent_structure_ok(ctx: &InstantonContext, k: usize, order: Exp) -> bool {
    let r = ctx.r as i64;
    let base = exp_frac(k as i64 * (r - k as i64), 2 * r);
    enumerate_coweights(ctx.r, k, order).iter().all(|c| {
        let off = c.half_norm() - base;
        off.is_integer() && off >= Exp::zero()
    })
}
