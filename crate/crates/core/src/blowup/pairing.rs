//! Pairwise cancellation behind the vanishing of Ẑ_{0,r} − Ẑ_{0,0} at ε₂ = −ε₁.
//!
//! On that slice the summand for (k⃗, l, m) is
//!
//!   T(k⃗,l,m) = E A_m B_l / L(k⃗) · (E − E⁻¹),   E = e^{r(k⃗,a⃗)/2} t^{r(m−l)/2}
//!
//! with A_m = Z_m(ε, −2ε, a⃗+εk⃗), B_l = Z_l(2ε, −ε, a⃗−εk⃗) and L(k⃗) = Π_Δ l^{k⃗}(ε, −ε).
//! Each such term is cancelled by T(−k⃗, m, l).

use serde::Serialize;

use super::coweight::{enumerate_coweights, Coweight};
use super::lfactor::inv_l_product;
use crate::error::Result;
use crate::exactalg::{
    exp, exp_frac, products_eq, EvalConfig, FactoredRat, LaurentPoly, Monomial, Product, Subst, Var,
};
use crate::instanton::{t1, InstantonContext};

fn e_shift(k: &Coweight, sign: i64) -> Subst {
    let mut s = Subst::fixing_others();
    for (a, ka) in k.0.iter().enumerate() {
        let v = Var::E(a as u8 + 1);
        s.insert(v, Monomial::var(v).mul(&t1().pow(*ka * exp(sign))));
    }
    s
}

fn summand(ctx: &InstantonContext, z: &[FactoredRat], k: &Coweight, l: usize, m: usize) -> Result<Product> {
    let r = ctx.r as i64;
    let a = e_shift(k, 1).with(Var::T1, t1()).with(Var::T2, t1().powi(-2));
    let b = e_shift(k, -1).with(Var::T1, t1().powi(2)).with(Var::T2, t1().inv());
    let am = z[m].subst(&a)?;
    let bl = z[l].subst(&b)?;
    let inv_l = inv_l_product(k).subst(&Subst::fixing_others().with(Var::T2, t1().inv()))?;
    let half = k.e_power(exp_frac(r, 2));
    let tpow = t1().pow(exp_frac(r * (m as i64 - l as i64), 2));
    let diff = LaurentPoly::monomial(half.mul(&tpow)) - LaurentPoly::monomial(half.inv().mul(&tpow.inv()));
    Ok(vec![
        FactoredRat::from_monomial(half.mul(&tpow)),
        am,
        bl,
        inv_l,
        FactoredRat::from_poly(diff),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub pass: bool,
}

/// Checks T(k⃗,l,m) + T(−k⃗,m,l) = 0 for all class-0 k⃗ with (k⃗,k⃗)/2 + l + m = n
/// and l, m ≠ n. `z` holds the bare coefficients Z_0..Z_n.
pub fn pairing_cancellation_check(
    ctx: &InstantonContext,
    z: &[FactoredRat],
    n: usize,
    exact: bool,
    cfg: &EvalConfig,
) -> Result<PairingReport> {
    let mut checked = 0;
    let mut pass = true;
    for k in enumerate_coweights(ctx.r, 0, exp(n as i64)) {
        let h = k.half_norm();
        if !h.is_integer() {
            continue;
        }
        let rest = n as i64 - h.to_integer();
        for l in 0..=rest {
            let m = rest - l;
            if l == n as i64 || m == n as i64 {
                continue;
            }
            let t = summand(ctx, z, &k, l as usize, m as usize)?;
            let u = summand(ctx, z, &k.neg(), m as usize, l as usize)?;
            checked += 1;
            if !products_eq(&[t, u], &[], exact, cfg)? {
                pass = false;
            }
        }
    }
    Ok(PairingReport {
        n,
        pairs_checked: checked,
        pass,
    })
}
