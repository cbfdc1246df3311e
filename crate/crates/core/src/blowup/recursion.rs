//! Re-deriving Z_n from Z₀ = 1 with the k = 0 blowup equations.
//!
//! Let L_n be the 𝔮ⁿ coefficient of log Z (half-canonical normalization). Since
//! Ẑ_{0,d} = Z for d = 0, 1, 2, taking logs gives at order n
//!
//!   L_n − L̃¹·t₁^{(d−r/2)n} − L̃²·t₂^{(d−r/2)n} = R_d,
//!
//! where L̃¹ = L_n∘{t₂↦t₂/t₁}, L̃² = L_n∘{t₁↦t₁/t₂} and R_d is the 𝔮ⁿ coefficient of
//! log(1 + U_d), U_d collecting the k⃗ ≠ 0 summands. Those only involve Z_m with m < n.
//! Differencing d = 0,1 and d = 1,2 gives a 2×2 system in L̃¹ and L̃².

use serde::Serialize;

use super::coweight::{enumerate_coweights, Coweight};
use super::lfactor::inv_l_product;
use super::zhat::{first_shift, second_shift};
use crate::error::{Error, Result};
use crate::exactalg::{exp, exp_frac, frac_eq, rat_frac, EvalConfig, FactoredRat, LaurentPoly, QSeries, Subst, Var};
use crate::instanton::{t1, t2, InstantonContext};

/// Σ_m 𝔮^m (Z_m∘σ)·t^{(d−r/2)m}, capped at `cap`, where σ is the shift attached to k⃗.
fn shifted_copy(
    ctx: &InstantonContext,
    zhc: &[FactoredRat],
    kv: &Coweight,
    d: usize,
    first: bool,
    cap: i64,
) -> Result<QSeries> {
    let shift = exp(d as i64) - exp_frac(ctx.r as i64, 2);
    let (s, t) = if first {
        (first_shift(kv), t1())
    } else {
        (second_shift(kv), t2())
    };
    let mut out = QSeries::zero(Some(exp(cap)));
    for m in 0..=cap {
        let c = zhc[m as usize].subst(&s)?.mul_monomial(&t.pow(exp(m) * shift));
        out.set(exp(m), c);
    }
    Ok(out)
}

/// R_d at order n, from Z_0..Z_{n−1}.
fn remainder(ctx: &InstantonContext, zhc: &[FactoredRat], n: i64, d: usize) -> Result<FactoredRat> {
    let r = ctx.r;
    let shift = exp(d as i64) - exp_frac(r as i64, 2);
    let zero = Coweight::zero(r);
    let base = shifted_copy(ctx, zhc, &zero, d, true, n - 1)?
        .mul(&shifted_copy(ctx, zhc, &zero, d, false, n - 1)?)
        .inv()?;
    let mut u = QSeries::zero(Some(exp(n)));
    for kv in enumerate_coweights(r, 0, exp(n)) {
        if kv.is_zero() {
            continue;
        }
        let h = kv.half_norm();
        let room = (exp(n) - h).floor().to_integer();
        let pref = inv_l_product(&kv)
            .mul_monomial(&t1().mul(&t2()).pow(shift * h))
            .mul_monomial(&kv.e_power(exp(d as i64)));
        let term = shifted_copy(ctx, zhc, &kv, d, true, room)?
            .mul(&shifted_copy(ctx, zhc, &kv, d, false, room)?)
            .mul(&base.truncate(exp(room)))
            .mul_coeff(&pref)
            .shift_exponent(h);
        u = u.add(&term.truncate(exp(n)));
    }
    let coeffs: Vec<FactoredRat> = (0..=n).map(|m| u.coeff(exp(m))).collect();
    Ok(log1p_coeff(&coeffs, n))
}

/// [𝔮ⁿ] log(1 + U) for U = Σ_{m≥1} u_m 𝔮^m, as one sum over compositions of n.
fn log1p_coeff(u: &[FactoredRat], n: i64) -> FactoredRat {
    fn rec(u: &[FactoredRat], left: i64, acc: FactoredRat, j: i64, out: &mut Vec<FactoredRat>) {
        if left == 0 {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out.push(acc.scale(&rat_frac(sign, j)));
            return;
        }
        for a in 1..=left {
            if !u[a as usize].is_zero() {
                rec(u, left - a, acc.mul(&u[a as usize]), j + 1, out);
            }
        }
    }
    let mut terms = Vec::new();
    rec(u, n, FactoredRat::one(), 0, &mut terms);
    FactoredRat::sum(&terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionStep {
    pub n: u32,
    /// L̃² from the system equals L_n∘{t₁↦t₁/t₂}.
    pub second_copy_consistent: bool,
    /// The undifferenced d = 0 equation holds.
    pub d0_equation: bool,
}

#[derive(Clone, Debug)]
pub struct RecursionOutput {
    /// Z₀, …, Z_N without the half-canonical prefactor, comparable with `z_coeff`.
    pub coeffs: Vec<FactoredRat>,
    pub steps: Vec<RecursionStep>,
}

impl RecursionOutput {
    pub fn certified(&self) -> bool {
        self.steps.iter().all(|s| s.second_copy_consistent && s.d0_equation)
    }
}

/// Z₁…Z_N from Z₀ = 1. Needs r ≥ 2: for r = 1 only d ∈ {0,1} exist and the single
/// differenced equation is homogeneous, so it fixes each L_n only up to scale.
pub fn solve_recursion(ctx: &InstantonContext, order: u32, exact: bool, cfg: &EvalConfig) -> Result<RecursionOutput> {
    if ctx.r < 2 {
        return Err(Error::SingularSystem);
    }
    let r = ctx.r as i64;
    let mut zhc = vec![FactoredRat::one()];
    let mut logs = QSeries::zero(Some(exp(0)));
    let mut steps = Vec::new();
    for n in 1..=order as i64 {
        let rs: Vec<FactoredRat> = (0..=2).map(|d| remainder(ctx, &zhc, n, d)).collect::<Result<_>>()?;
        let a = rs[0].sub(&rs[1]);
        let b = rs[1].sub(&rs[2]);
        let big1 = t1().powi(n);
        let big2 = t2().powi(n);
        let half = exp_frac(r * n, 2);
        // 1/((T₁−1)(T₁−T₂)) = −T₁⁻¹ / ((1−T₁)(1−T₂/T₁))
        let det_inv = FactoredRat::inv_binomials([&big1, &big2.div(&big1)])
            .mul_monomial(&big1.inv())
            .neg();
        let l1 = b
            .sub(&a.mul_monomial(&big2))
            .mul(&det_inv)
            .mul_monomial(&t1().pow(half));
        let ln = l1.subst(&Subst::fixing_others().with(Var::T2, t2().mul(&t1())))?;

        let x = l1.mul_monomial(&t1().pow(-half)).mul(&FactoredRat::from_poly(
            LaurentPoly::monomial(big1.clone()) - LaurentPoly::one(),
        ));
        let l2 = a
            .sub(&x)
            .mul_monomial(&t2().pow(half))
            .mul(&FactoredRat::inv_binomials([&big2]))
            .neg();
        let l2_expected = ln.subst(&Subst::fixing_others().with(Var::T1, t1().div(&t2())))?;
        let d0_lhs = ln
            .sub(&l1.mul_monomial(&t1().pow(-half)))
            .sub(&l2.mul_monomial(&t2().pow(-half)));
        steps.push(RecursionStep {
            n: n as u32,
            second_copy_consistent: frac_eq(&l2, &l2_expected, exact, cfg)?,
            d0_equation: frac_eq(&d0_lhs, &rs[0], exact, cfg)?,
        });

        let mut next = QSeries::zero(Some(exp(n)));
        for (e, c) in logs.iter() {
            next.set(*e, c.clone());
        }
        next.set(exp(n), ln);
        logs = next;
        zhc.push(logs.exp()?.coeff(exp(n)));
    }
    let coeffs = zhc
        .iter()
        .enumerate()
        .map(|(n, z)| z.mul_monomial(&ctx.half_canonical(n as u32).inv()))
        .collect();
    Ok(RecursionOutput { coeffs, steps })
}

/// The recursion output against fixed-point enumeration, coefficient by coefficient.
pub fn cross_check(ctx: &InstantonContext, out: &RecursionOutput, exact: bool, cfg: &EvalConfig) -> Result<Vec<bool>> {
    out.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, z)| frac_eq(z, &ctx.z_coeff(n as u32), exact, cfg))
        .collect()
}
