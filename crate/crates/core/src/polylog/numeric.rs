//! Numeric polylogarithms: direct series, the Bernoulli expansions around w = 1 with
//! their analytic continuation, the inversion formulas and the β → 0 limits.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::real::{BigFloat, Complex};
use super::symbolic::p_poly;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Rat};

/// Guard bits carried on top of the requested precision.
pub const GUARD_BITS: usize = 64;

pub fn tolerance_bits(prec: usize) -> f64 {
    -((prec as f64) - 16.0)
}

/// B₀ … B_n with B₁ = −1/2.
pub fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    let mut binom: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..=n {
        // row m+1 of Pascal's triangle
        let mut next = vec![BigInt::one(); m + 2];
        for j in 1..=m {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        let s: Rat = (0..m).map(|j| Rat::from_integer(binom[j].clone()) * &b[j]).sum();
        b.push(-s / Rat::from_integer(binom[m].clone()));
    }
    b
}

/// ζ(3) = (5/2) Σ_{n≥1} (−1)^{n+1} / (n³ C(2n,n)).
pub fn zeta3(p: usize) -> BigFloat {
    let mut acc = BigFloat::zero(p);
    let mut central = BigInt::one();
    for n in 1i64.. {
        central = central * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n);
        let den = BigInt::from(n * n * n) * &central;
        let term = BigFloat::from_rat(&Rat::new(BigInt::from(if n % 2 == 1 { 1 } else { -1 }), den), p);
        if term.log2_bound() < -((p + 8) as f64) {
            break;
        }
        acc = acc + term;
    }
    acc * BigFloat::from_rat(&Rat::new(5.into(), 2.into()), p)
}

/// Σ_{n≥1} xⁿ/n^k for |x| < 1, stopped once the geometric tail bound |x|ⁿ/(1−|x|) is
/// below 2^{−p}.
pub fn li_pos(k: u32, x: &BigFloat) -> Result<BigFloat> {
    let p = x.precision();
    let ax = x.abs();
    if !ax.lt(&BigFloat::one(p)) {
        return Err(Error::DomainError("Li_k series needs |x| < 1".into()));
    }
    let one_minus = BigFloat::one(p) - &ax;
    let mut acc = BigFloat::zero(p);
    let mut pow = x.clone();
    let mut apow = ax.clone();
    for n in 1usize.. {
        let nk = BigFloat::from_i64(n as i64, p).powi(k as usize);
        acc = acc + &pow / &nk;
        let tail = &apow / &one_minus;
        if tail.log2_bound() < -((p + 4) as f64) {
            break;
        }
        pow = &pow * x;
        apow = &apow * &ax;
    }
    Ok(acc)
}

/// Li_{−k}(w) = wP_k(w)/(1 − w)^{k+1} at a real w ≠ 1.
pub fn li_neg_real(k: usize, w: &BigFloat) -> BigFloat {
    let p = w.precision();
    let mut pk = BigFloat::zero(p);
    for c in p_poly(k).iter().rev() {
        pk = pk * w + BigFloat::from_rat(&Rat::from_integer(c.clone()), p);
    }
    let den = (BigFloat::one(p) - w).powi(k + 1);
    w * &pk / den
}

/// B_{2n}/(2n)! for n ≥ 1, from exact Bernoulli numbers while cheap and from
/// (−1)^{n+1}·2ζ(2n)/(2π)^{2n} beyond that.
struct EvenBernoulli {
    exact: Vec<BigFloat>,
    two_pi: BigFloat,
    p: usize,
}

const EXACT_BERNOULLI: usize = 40;

impl EvenBernoulli {
    fn new(p: usize) -> Self {
        let b = bernoulli(2 * EXACT_BERNOULLI);
        let mut fact = Rat::one();
        let mut exact = vec![BigFloat::zero(p)];
        for m in 1..=2 * EXACT_BERNOULLI {
            fact *= rat(m as i64);
            if m % 2 == 0 {
                exact.push(BigFloat::from_rat(&(&b[m] / &fact), p));
            }
        }
        EvenBernoulli {
            exact,
            two_pi: BigFloat::pi(p) * BigFloat::from_i64(2, p),
            p,
        }
    }

    fn get(&self, n: usize) -> BigFloat {
        if n <= EXACT_BERNOULLI {
            return self.exact[n].clone();
        }
        let p = self.p;
        let mut zeta = BigFloat::zero(p);
        for j in 1..=16i64 {
            zeta = zeta + BigFloat::one(p) / BigFloat::from_i64(j, p).powi(2 * n);
        }
        let v = BigFloat::from_i64(2, p) * zeta / self.two_pi.powi(2 * n);
        if n % 2 == 1 {
            v
        } else {
            -v
        }
    }
}

/// Li_k(e^{−y}) for k ∈ {1, 2, 3} and 0 < |y| < 2π from the expansion around w = 1.
/// Negative y is the analytic continuation with log(−y) = log y + π√−1.
pub fn li_bernoulli(k: u32, y: &BigFloat) -> Result<Complex> {
    let p = y.precision();
    let two_pi = BigFloat::pi(p) * BigFloat::from_i64(2, p);
    if y.is_zero() || !y.abs().lt(&two_pi) {
        return Err(Error::DomainError("Bernoulli expansion needs 0 < |y| < 2π".into()));
    }
    if !(1..=3).contains(&k) {
        return Err(Error::DomainError(format!(
            "Bernoulli expansion implemented for Li_1..Li_3, not Li_{k}"
        )));
    }
    let f = |n: i64| BigFloat::from_i64(n, p);
    let half = BigFloat::from_rat(&Rat::new(1.into(), 2.into()), p);
    let pi2 = BigFloat::pi(p).powi(2);
    let logy = Complex::log_real(y);
    let y2 = y * y;
    // Σ_{n≥1} B_{2n}/(2n)! · y^{2n+k−1}/(2n(2n+1)⋯(2n+k−1))
    let bern = EvenBernoulli::new(p);
    let mut tail = BigFloat::zero(p);
    let mut ypow = match k {
        1 => y2.clone(),
        2 => &y2 * y,
        _ => &y2 * &y2,
    };
    let mut small = 0;
    for n in 1usize.. {
        let m = 2 * n as i64;
        let mut den = f(m);
        for j in 1..k as i64 {
            den = den * f(m + j);
        }
        let term = bern.get(n) * &ypow / den;
        tail = tail + &term;
        small = if term.log2_bound() < -((p + 8) as f64) {
            small + 1
        } else {
            0
        };
        if small >= 3 {
            break;
        }
        ypow = ypow * &y2;
    }
    Ok(match k {
        // −log(1 − e^{−y}) = −log y + y/2 − Σ
        1 => logy.scale(&f(-1)).add(&Complex::real(y * &half - &tail)),
        // π²/6 + y log y − y − y²/4 + Σ
        2 => logy.scale(y).add(&Complex::real(&pi2 / f(6) - y - &y2 / f(4) + &tail)),
        // ζ(3) − π²y/6 − (y²/2)log y + 3y²/4 + y³/12 − Σ
        _ => logy.scale(&-(&y2 * &half)).add(&Complex::real(
            zeta3(p) - &pi2 * y / f(6) + &y2 * f(3) / f(4) + &y2 * y / f(12) - &tail,
        )),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionReport {
    pub y: f64,
    pub prec: usize,
    /// log₂ of the largest residual component; −∞ when exactly zero.
    pub li1_residual_log2: f64,
    pub li2_residual_log2: f64,
    pub li3_residual_log2: f64,
    /// Bernoulli expansion of Li₂(e^{−y}) against direct summation.
    pub li2_expansion_log2: f64,
    pub tolerance_log2: f64,
    pub pass: bool,
}

fn log2_abs(c: &Complex) -> f64 {
    c.re.abs().log2_bound().max(c.im.abs().log2_bound())
}

/// The three inversion formulas at a real 0 < y < 2π. The continued side uses the
/// Bernoulli expansion at −y (Li₁: the principal logarithm of 1 − e^{y} < 0); the
/// other side uses the convergent series at e^{−y}.
pub fn inversion_checks(y: &Rat, prec: usize) -> Result<InversionReport> {
    let p = prec + GUARD_BITS;
    let yf = BigFloat::from_rat(y, p);
    let f = |n: i64| BigFloat::from_i64(n, p);
    let pi = BigFloat::pi(p);
    let w = (-&yf).exp();
    let neg_y = -&yf;

    // Li₁(e^y) = −log(1 − e^y), principal branch
    let lhs1 = Complex::log_real(&(BigFloat::one(p) - yf.exp())).scale(&f(-1));
    let rhs1 = Complex::new(li_pos(1, &w)? - &yf, -pi.clone());
    let li2_direct = li_pos(2, &w)?;
    let lhs2 = li_bernoulli(2, &neg_y)?.add(&Complex::real(li2_direct.clone()));
    let rhs2 = Complex::new(pi.powi(2) / f(3) - &yf * &yf / f(2), -(&yf * &pi));
    let lhs3 = li_bernoulli(3, &neg_y)?;
    let rhs3 = Complex::new(
        li_pos(3, &w)? + pi.powi(2) * &yf / f(3) - yf.powi(3) / f(6),
        -(&yf * &yf * &pi / f(2)),
    );
    let exp2 = li_bernoulli(2, &yf)?.sub(&Complex::real(li2_direct));

    let r = [
        log2_abs(&lhs1.sub(&rhs1)),
        log2_abs(&lhs2.sub(&rhs2)),
        log2_abs(&lhs3.sub(&rhs3)),
        log2_abs(&exp2),
    ];
    let tol = tolerance_bits(prec);
    Ok(InversionReport {
        y: yf.to_f64(),
        prec,
        li1_residual_log2: r[0],
        li2_residual_log2: r[1],
        li3_residual_log2: r[2],
        li2_expansion_log2: r[3],
        tolerance_log2: tol,
        pass: r.iter().all(|&e| e <= tol),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitSeries {
    pub name: String,
    pub target: f64,
    pub betas: Vec<f64>,
    pub deviations: Vec<f64>,
    /// Least-squares slope of log|deviation| against log β.
    pub order: f64,
    pub pass: bool,
}

pub const LIMIT_BETAS: [i32; 6] = [-1, -2, -3, -4, -5, -6];

fn fit_order(betas: &[f64], devs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = betas
        .iter()
        .zip(devs)
        .filter(|(_, d)| **d != 0.0)
        .map(|(b, d)| (b.ln(), d.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}

fn limit_series(
    name: String,
    target: &BigFloat,
    p: usize,
    value: impl Fn(&BigFloat) -> Result<BigFloat>,
) -> Result<LimitSeries> {
    let mut betas = Vec::new();
    let mut devs = Vec::new();
    for e in LIMIT_BETAS {
        let beta = BigFloat::from_rat(&Rat::new(BigInt::one(), BigInt::from(10).pow((-e) as u32)), p);
        betas.push(beta.to_f64());
        devs.push((value(&beta)? - target).to_f64());
    }
    let order = fit_order(&betas, &devs);
    Ok(LimitSeries {
        name,
        target: target.to_f64(),
        betas,
        deviations: devs,
        order,
        pass: order >= 0.9,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub series: Vec<LimitSeries>,
    pub pass: bool,
}

/// β^{k+1}Li_{−k}(e^{−βx}) → k!x^{−k−1}, and the Li₁, Li₂, Li₃ limits with a log(βΛ)
/// counterterm, each checked for first-order convergence over β = 10⁻¹ … 10⁻⁶.
pub fn limit_checks(k: usize, x: &Rat, lambda: &Rat, prec: usize) -> Result<LimitReport> {
    let p = prec + GUARD_BITS;
    let xf = BigFloat::from_rat(x, p);
    let lf = BigFloat::from_rat(lambda, p);
    let f = |n: i64| BigFloat::from_i64(n, p);
    let pi2 = BigFloat::pi(p).powi(2);
    let log_x_l = (&xf / &lf).ln();

    let mut fact = f(1);
    for j in 1..=k as i64 {
        fact = fact * f(j);
    }
    let target = &fact / xf.powi(k + 1);
    let neg = limit_series(format!("Li_-{k}"), &target, p, |b| {
        Ok(b.powi(k + 1) * li_neg_real(k, &(-(b * &xf)).exp()))
    })?;

    let li1 = limit_series("Li_1".into(), &-log_x_l.clone(), p, |b| {
        Ok(li_bernoulli(1, &(b * &xf))?.re + (b * &lf).ln())
    })?;
    let li2 = limit_series("Li_2".into(), &(-(&xf * &log_x_l) + &xf), p, |b| {
        let v = li_bernoulli(2, &(b * &xf))?.re;
        Ok(-((v - &pi2 / f(6)) / b) + &xf * (b * &lf).ln())
    })?;
    let x2 = &xf * &xf;
    let t3 = -(&x2 * &log_x_l / f(2)) + &x2 * f(3) / f(4);
    let li3 = limit_series("Li_3".into(), &t3, p, |b| {
        let v = li_bernoulli(3, &(b * &xf))?.re;
        Ok((v - zeta3(p)) / (b * b) + &x2 / f(2) * (b * &lf).ln() + &pi2 * &xf / (f(6) * b))
    })?;
    let series = vec![neg, li1, li2, li3];
    let pass = series.iter().all(|s| s.pass);
    Ok(LimitReport { series, pass })
}

/// Residual |Li_k(x) − direct sum at twice the precision| as log₂, used for the
/// series self-check.
pub fn li_pos_self_check(k: u32, x: &Rat, prec: usize) -> Result<f64> {
    let a = li_pos(k, &BigFloat::from_rat(x, prec + GUARD_BITS))?;
    let b = li_pos(k, &BigFloat::from_rat(x, 2 * prec + GUARD_BITS))?;
    Ok((a - b).abs().log2_bound())
}
