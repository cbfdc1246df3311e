//! Formal q-expansions of η, θ₁₁′ and the rank-one theta function with characteristic.
//!
//! Nomes follow q = e^{πiτ}; every 2π and √−1 is absorbed by making leading
//! coefficients monic.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{exp, exp_frac, rat, Coeff, Exp, Rat, Series};

/// q^{1/24} Π_{n≤N} (1 − qⁿ), exact through q^{1/24}·q^N.
pub fn eta_series(order: u32) -> Series<Rat> {
    let cap = exp(order as i64);
    let mut p = Series::<Rat>::one(Some(cap));
    for n in 1..=order as i64 {
        let f = Series::from_terms([(exp(0), rat(1)), (exp(n), rat(-1))], Some(cap));
        p = p.mul(&f);
    }
    p.shift_exponent(exp_frac(1, 24))
}

/// Σ_k (−1)^k q^{k(3k−1)/2} over all k ∈ ℤ, the pentagonal-number side of η/q^{1/24}.
pub fn pentagonal_series(order: u32) -> Series<Rat> {
    let cap = order as i64;
    let mut out = Series::<Rat>::zero(Some(exp(cap)));
    out.add_term(exp(0), rat(1));
    for k in 1i64.. {
        // generalized pentagonal numbers k(3k∓1)/2 for ±k
        let lo = k * (3 * k - 1) / 2;
        if lo > cap {
            break;
        }
        let sign = rat(if k % 2 == 0 { 1 } else { -1 });
        out.add_term(exp(lo), sign.clone());
        let hi = k * (3 * k + 1) / 2;
        if hi <= cap {
            out.add_term(exp(hi), sign);
        }
    }
    out
}

/// ∂_ξθ₁₁(0|τ)/(−2π) = Σ_{n≥0} (−1)ⁿ(2n+1) q^{(n+1/2)²}, through q^{1/4}·q^N.
pub fn theta11_deriv_series(order: u32) -> Series<Rat> {
    let cap = exp_frac(1, 4) + exp(order as i64);
    let mut out = Series::<Rat>::zero(Some(cap));
    let mut n: i64 = 0;
    loop {
        let e = exp_frac((2 * n + 1) * (2 * n + 1), 4);
        if e > cap {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        out.add_term(e, rat(sign * (2 * n + 1)));
        n += 1;
    }
    out
}

/// q^{1/4} Π_{d≥1} (1 − q^{2d})³, through q^{1/4}·q^N.
pub fn jacobi_product_series(order: u32) -> Series<Rat> {
    let cap = exp(order as i64);
    let mut p = Series::<Rat>::one(Some(cap));
    for d in 1..=(order as i64 / 2) {
        let f = Series::from_terms([(exp(0), rat(1)), (exp(2 * d), rat(-1))], Some(cap));
        p = p.mul(&f).mul(&f).mul(&f);
    }
    p.shift_exponent(exp_frac(1, 4))
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub order: u32,
    pub first_mismatch: Option<String>,
    pub pass: bool,
}

pub fn jacobi_derivative_check(order: u32) -> JacobiReport {
    let lhs = theta11_deriv_series(order);
    let rhs = jacobi_product_series(order);
    let m = lhs.first_mismatch(&rhs, |a, b| a == b);
    JacobiReport {
        order,
        first_mismatch: m.map(|e| e.to_string()),
        pass: m.is_none(),
    }
}

/// A characteristic (a, b) with a, b ∈ {0, ½}: lattice ℤ + a, sign e^{2πi(k−a)b}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Characteristic {
    pub half_shift: bool,
    pub half_sign: bool,
}

impl Characteristic {
    /// The odd characteristic (½, ½) of θ₁₁.
    pub const ODD: Characteristic = Characteristic {
        half_shift: true,
        half_sign: true,
    };
    /// (0, ½): the θ₄-type sum Σ (−1)^k A^{k²} B^k.
    pub const THETA4: Characteristic = Characteristic {
        half_shift: false,
        half_sign: true,
    };
}

/// Θ = A^{a_power} · B^{b_power} · series. The monomial prefactor carries the
/// characteristic shift, so the series itself only involves integral powers of A and B.
#[derive(Clone, Debug)]
pub struct ThetaValue<C: Coeff> {
    pub a_power: Exp,
    pub b_power: Exp,
    pub series: Series<C>,
}

/// Rank-one theta function Σ_{k∈ℤ+a} (−1)^{(k−a)·2b} A^{k²} B^k as a truncated series.
/// A must have positive valuation; B must be a unit (valuation 0).
pub fn theta_char_e<C: Coeff>(b: &Series<C>, a: &Series<C>, cap: Exp, ch: Characteristic) -> Result<ThetaValue<C>> {
    let va = a.valuation().ok_or(Error::NonPositiveValuation)?;
    if va <= Exp::zero() {
        return Err(Error::NonPositiveValuation);
    }
    let b = b.truncate(cap);
    let binv = b.inv()?;
    let shift: i64 = if ch.half_shift { 1 } else { 0 };
    // k = j + a: k² = j² + j·(2a) + a², so A^{k²}B^k = A^{a²}B^{a} · A^{j²+2aj} B^j
    let qexp = |j: i64| j * j + shift * j;
    let mut out = Series::<C>::zero(Some(cap));
    let jmax = {
        let mut j = 0;
        while Exp::from(qexp(j + 1)) * va <= cap || Exp::from(qexp(-(j + 1))) * va <= cap {
            j += 1;
        }
        j
    };
    for j in -jmax..=jmax {
        let qe = qexp(j);
        if Exp::from(qe) * va > cap {
            continue;
        }
        let mut term = a.truncate(cap).powi(qe as u32);
        let bj = if j >= 0 {
            b.powi(j as u32)
        } else {
            binv.powi((-j) as u32)
        };
        term = term.mul(&bj);
        if ch.half_sign && j.rem_euclid(2) == 1 {
            term = term.neg();
        }
        out = out.add(&term);
    }
    let (ap, bp) = if ch.half_shift {
        (exp_frac(1, 4), exp_frac(1, 2))
    } else {
        (Exp::zero(), Exp::zero())
    };
    Ok(ThetaValue {
        a_power: ap,
        b_power: bp,
        series: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_leading_terms() {
        let e = eta_series(8);
        let c = |k: i64| e.coeff(exp_frac(1, 24) + exp(k));
        assert_eq!(
            [c(0), c(1), c(2), c(3), c(5), c(7)],
            [rat(1), rat(-1), rat(-1), rat(0), rat(1), rat(1)]
        );
    }

    #[test]
    fn jacobi_low_order() {
        let d = theta11_deriv_series(2);
        assert_eq!(d.coeff(exp_frac(1, 4)), rat(1));
        assert_eq!(jacobi_product_series(2).coeff(exp_frac(9, 4)), rat(-3));
        assert!(jacobi_derivative_check(6).pass);
    }
}
