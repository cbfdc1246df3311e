//! F = ε₁ε₂ log Z along rays εᵢ = cᵢ·s.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{exp, rat, Exp, FactoredRat, Monomial, Rat, Series, Subst, Var};
use crate::instanton::InstantonContext;

/// A ray (ε₁, ε₂) = (c₁, c₂)·s with c₁ > 0 > c₂. Along such a ray no tangent weight
/// without an e-factor vanishes, so every fixed-point term is a Laurent series in s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    pub c1: i64,
    pub c2: i64,
}

impl Direction {
    pub fn new(c1: i64, c2: i64) -> Result<Self> {
        if c1 > 0 && c2 < 0 {
            Ok(Direction { c1, c2 })
        } else {
            Err(Error::InvalidArgument(format!(
                "direction ({c1},{c2}) needs c1 > 0 > c2"
            )))
        }
    }

    fn lambda(&self, m: &Monomial) -> i64 {
        let e = m.exponent(Var::T1) * self.c1 + m.exponent(Var::T2) * self.c2;
        assert!(e.is_integer(), "fractional t-exponent along a ray");
        e.to_integer()
    }
}

pub const DEFAULT_DIRECTIONS: [Direction; 3] = [
    Direction { c1: 1, c2: -1 },
    Direction { c1: 2, c2: -1 },
    Direction { c1: 3, c2: -1 },
];

pub const ALTERNATIVE_DIRECTIONS: [Direction; 3] = [
    Direction { c1: 1, c2: -2 },
    Direction { c1: 3, c2: -2 },
    Direction { c1: 4, c2: -1 },
];

/// Laurent series in s with coefficients in the e-variables.
pub type DirSeries = Series<FactoredRat>;

fn factorial(m: i64) -> Rat {
    (1..=m).fold(Rat::one(), |acc, k| acc * rat(k))
}

/// 1/(1 − x·e^{λs}) where x is an e-monomial, to relative precision `prec`.
fn inv_factor(x: &Monomial, lambda: i64, prec: i64) -> Result<DirSeries> {
    let lam = rat(lambda);
    if x.is_one() {
        // (1 − e^{λs})/s = −Σ_{m≥0} λ^{m+1} s^m/(m+1)!
        if lambda == 0 {
            return Err(Error::DegenerateDirection);
        }
        let mut g = DirSeries::zero(Some(exp(prec - 1)));
        for m in 0..prec {
            let c = -num_traits::pow(lam.clone(), (m + 1) as usize) / factorial(m + 1);
            g.set(exp(m), FactoredRat::from_rat(c));
        }
        Ok(g.inv()?.shift_exponent(exp(-1)))
    } else {
        let mut f = DirSeries::zero(Some(exp(prec - 1)));
        f.set(exp(0), FactoredRat::binomial(x));
        for m in 1..prec {
            let c = -num_traits::pow(lam.clone(), m as usize) / factorial(m);
            f.set(exp(m), FactoredRat::from_monomial(x.clone()).scale(&c));
        }
        f.inv()
    }
}

/// Sums series coefficientwise with one common-denominator sum per s-order.
fn sum_series(xs: &[DirSeries]) -> DirSeries {
    let cap = xs.iter().filter_map(|x| x.cap()).min();
    let mut keys: Vec<Exp> = xs.iter().flat_map(|x| x.terms().keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let mut out = DirSeries::zero(cap);
    for e in keys {
        if cap.is_some_and(|c| e > c) {
            continue;
        }
        let cs: Vec<FactoredRat> = xs.iter().map(|x| x.coeff(e)).filter(|c| !c.is_zero()).collect();
        out.set(e, FactoredRat::sum(&cs));
    }
    out
}

/// e^{λs} to precision `prec`.
fn exp_ray(lambda: Rat, prec: i64) -> DirSeries {
    let mut out = DirSeries::zero(Some(exp(prec - 1)));
    for m in 0..prec {
        out.set(
            exp(m),
            FactoredRat::from_rat(num_traits::pow(lambda.clone(), m as usize) / factorial(m)),
        );
    }
    out
}

/// (t₁t₂)^{−rn/2}·Z_n along the ray, each fixed-point term to relative precision `prec`.
pub fn z_along(ctx: &InstantonContext, dir: Direction, n: u32, prec: i64) -> Result<DirSeries> {
    let terms: Vec<DirSeries> = crate::partitions::enumerate_tuples(ctx.r, n)
        .par_iter()
        .map(|y| {
            let mut acc = DirSeries::one(None);
            for w in ctx.weights(y) {
                let winv = w.inv();
                let x = winv.restrict(|v| matches!(v, Var::E(_)));
                acc = acc.mul(&inv_factor(&x, dir.lambda(&winv), prec)?);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let half = rat(-(ctx.r as i64) * n as i64 * (dir.c1 + dir.c2)) / rat(2);
    Ok(sum_series(&terms).mul(&exp_ray(half, prec)))
}

/// log Z^inst along the ray, per 𝔮-order 0..=order, each known through s^{s_cap−2}.
pub fn log_z_along(ctx: &InstantonContext, dir: Direction, order: u32, s_cap: i64) -> Result<Vec<DirSeries>> {
    // Z_n has valuation ≥ −2n; a product in the 𝔮ⁿ coefficient of log Z loses
    // at most 2n orders, so relative precision s_cap + 2·order suffices.
    let prec = s_cap + 2 * order as i64;
    let zs: Vec<DirSeries> = (0..=order).map(|n| z_along(ctx, dir, n, prec)).collect::<Result<_>>()?;
    let z = Series::<DirSeries>::from_terms(
        zs.into_iter().enumerate().map(|(n, c)| (exp(n as i64), c)),
        Some(exp(order as i64)),
    );
    let lz = z.log()?;
    Ok((0..=order)
        .map(|n| lz.coeff(exp(n as i64)).truncate(exp(s_cap - 2)))
        .collect())
}

/// F^inst_n = c₁c₂s²·[𝔮ⁿ] log Z^inst along the ray, through s^{s_cap}.
pub fn probe(ctx: &InstantonContext, dir: Direction, order: u32, s_cap: i64) -> Result<Vec<DirSeries>> {
    if s_cap < 2 {
        return Err(Error::InvalidArgument("s_cap must be at least 2".into()));
    }
    let c = FactoredRat::from_int(dir.c1 * dir.c2);
    Ok(log_z_along(ctx, dir, order, s_cap)?
        .into_iter()
        .map(|l| l.mul_coeff(&c).shift_exponent(exp(2)))
        .collect())
}

fn min_order(x: &DirSeries) -> Option<i64> {
    x.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e.to_integer())
        .min()
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub rank: usize,
    pub order: u32,
    /// Smallest s-power seen, per direction and 𝔮-order.
    pub min_s_orders: Vec<(Direction, Vec<Option<i64>>)>,
    pub regular: bool,
}

/// F^inst has no negative s-powers along any of the rays. With `multiply = false` the
/// ε₁ε₂ factor is dropped, which must produce poles.
pub fn regularity_check(
    ctx: &InstantonContext,
    order: u32,
    dirs: &[Direction],
    multiply: bool,
) -> Result<RegularityReport> {
    let mut rows = Vec::new();
    let mut regular = true;
    for &d in dirs {
        let series = if multiply {
            probe(ctx, d, order, 2)?
        } else {
            log_z_along(ctx, d, order, 2)?
        };
        let mins: Vec<Option<i64>> = series.iter().map(min_order).collect();
        if mins.iter().flatten().any(|&m| m < 0) {
            regular = false;
        }
        rows.push((d, mins));
    }
    Ok(RegularityReport {
        rank: ctx.r,
        order,
        min_s_orders: rows,
        regular,
    })
}

/// 𝔮ⁿ coefficients of F₀, H, G, F₁ in F = F₀ + (ε₁+ε₂)H + (ε₁+ε₂)²G + ε₁ε₂F₁ + ….
#[derive(Clone, Debug)]
pub struct GenusSlice {
    pub n: u32,
    pub f0: FactoredRat,
    pub h: FactoredRat,
    pub g: FactoredRat,
    pub f1: FactoredRat,
}

/// Solves the s¹ and s² coefficients along three rays for H, G, F₁; the third ray and
/// the s⁰ agreement serve as cross-checks.
pub fn extract_genus(ctx: &InstantonContext, order: u32, dirs: &[Direction; 3]) -> Result<Vec<GenusSlice>> {
    let probes: Vec<Vec<DirSeries>> = dirs.iter().map(|&d| probe(ctx, d, order, 2)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 0..=order as usize {
        let s = |i: usize, k: i64| probes[i][n].coeff(exp(k));
        let f0 = s(0, 0);
        for i in 1..3 {
            if !s(i, 0).exact_eq(&f0) {
                return Err(Error::InconsistentDirections(format!("s^0 differs at order {n}")));
            }
        }
        let sig = |i: usize| rat(dirs[i].c1 + dirs[i].c2);
        let prod = |i: usize| rat(dirs[i].c1 * dirs[i].c2);
        // H from any ray with c₁ + c₂ ≠ 0; rays with c₁ + c₂ = 0 must see no s¹ term
        let mut h: Option<FactoredRat> = None;
        for i in 0..3 {
            if sig(i).is_zero() {
                if !s(i, 1).is_zero() {
                    return Err(Error::InconsistentDirections(format!(
                        "s^1 nonzero on a balanced ray at order {n}"
                    )));
                }
                continue;
            }
            let hi = s(i, 1).scale(&(Rat::one() / sig(i)));
            match &h {
                None => h = Some(hi),
                Some(h0) if !h0.exact_eq(&hi) => {
                    return Err(Error::InconsistentDirections(format!("H differs at order {n}")));
                }
                _ => {}
            }
        }
        let h = h.unwrap_or_else(FactoredRat::zero);
        // [σ₀² p₀; σ₁² p₁]·(G, F₁) = (s²₀, s²₁)
        let a = (sig(0) * sig(0), prod(0), sig(1) * sig(1), prod(1));
        let det = &a.0 * &a.3 - &a.1 * &a.2;
        if det.is_zero() {
            return Err(Error::SingularSystem);
        }
        let g = s(0, 2).scale(&(&a.3 / &det)).sub(&s(1, 2).scale(&(&a.1 / &det)));
        let f1 = s(1, 2).scale(&(&a.0 / &det)).sub(&s(0, 2).scale(&(&a.2 / &det)));
        let predicted = g.scale(&(sig(2) * sig(2))).add(&f1.scale(&prod(2)));
        if !predicted.exact_eq(&s(2, 2)) {
            return Err(Error::InconsistentDirections(format!(
                "s^2 cross-check fails at order {n}"
            )));
        }
        out.push(GenusSlice {
            n: n as u32,
            f0,
            h,
            g,
            f1,
        });
    }
    Ok(out)
}

/// Rank two with e₁ ↦ 1 and e₂ ↦ u, where u = e₂/e₁ is stored in `Var::W`.
pub fn to_u(x: &FactoredRat) -> Result<FactoredRat> {
    let s = Subst::fixing_others()
        .with(Var::E(1), Monomial::one())
        .with(Var::E(2), Monomial::var(Var::W));
    x.subst(&s)
}
