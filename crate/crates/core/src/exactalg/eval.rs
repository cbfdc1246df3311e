//! Randomized identity testing: both sides are evaluated exactly at random rational
//! points. Fractional exponents are handled by drawing the value of v^{1/D} where D
//! clears every exponent denominator.

use std::collections::BTreeMap;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::frac::FactoredRat;
use super::monomial::Var;
use super::poly::{LaurentPoly, Rat};
use crate::error::{Error, Result};

const MAX_REDRAWS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub trials: usize,
    pub seed: u64,
    /// Numerators are drawn from [−2^bits, 2^bits] \ {0}.
    pub height_bits: u64,
    /// Denominators are drawn from [1, den_max].
    pub den_max: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            trials: 3,
            seed: 0x5eed,
            height_bits: 64,
            den_max: 16,
        }
    }
}

impl EvalConfig {
    pub fn with_seed(seed: u64) -> Self {
        EvalConfig {
            seed,
            ..Self::default()
        }
    }
}

/// A point assigning p/q to v^{1/d} for each variable v.
#[derive(Clone, Debug)]
pub struct Point {
    d: i64,
    vals: BTreeMap<Var, (BigInt, BigInt)>,
}

impl Point {
    pub fn random(vars: &[Var], d: i64, rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Self {
        let bound = BigInt::one() << cfg.height_bits;
        let vals = vars
            .iter()
            .map(|v| {
                let mut p = rng.gen_bigint_range(&-&bound, &(&bound + 1u32));
                while p.is_zero() {
                    p = rng.gen_bigint_range(&-&bound, &(&bound + 1u32));
                }
                let q = BigInt::from(rng.gen_range(1..=cfg.den_max));
                (*v, (p, q))
            })
            .collect();
        Point { d, vals }
    }

    /// Exact value of a Laurent polynomial, accumulated over one common denominator.
    pub fn eval_poly(&self, p: &LaurentPoly) -> Rat {
        if p.is_zero() {
            return Rat::zero();
        }
        let vars = p.variables();
        // integer exponents of each term after scaling by d
        let scaled: Vec<(Vec<i64>, &Rat)> = p
            .iter()
            .map(|(m, c)| {
                let ex = vars
                    .iter()
                    .map(|v| {
                        let e = m.exponent(*v) * self.d;
                        assert!(e.is_integer(), "point denominator does not clear exponent {e}");
                        e.to_integer()
                    })
                    .collect();
                (ex, c)
            })
            .collect();
        let mut lo = vec![i64::MAX; vars.len()];
        let mut hi = vec![i64::MIN; vars.len()];
        for (ex, _) in &scaled {
            for (i, e) in ex.iter().enumerate() {
                lo[i] = lo[i].min(*e);
                hi[i] = hi[i].max(*e);
            }
        }
        // table[i][k] = p^k q^{span−k}
        let tables: Vec<Vec<BigInt>> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (pv, qv) = &self.vals[v];
                let span = (hi[i] - lo[i]) as usize;
                let mut ppow = vec![BigInt::one()];
                let mut qpow = vec![BigInt::one()];
                for k in 1..=span {
                    ppow.push(&ppow[k - 1] * pv);
                    qpow.push(&qpow[k - 1] * qv);
                }
                (0..=span).map(|k| &ppow[k] * &qpow[span - k]).collect()
            })
            .collect();
        let cden = scaled.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut acc = BigInt::zero();
        for (ex, c) in &scaled {
            let mut t = c.numer() * (&cden / c.denom());
            for (i, e) in ex.iter().enumerate() {
                t *= &tables[i][(e - lo[i]) as usize];
            }
            acc += t;
        }
        let mut num = acc;
        let mut den = cden;
        for (i, v) in vars.iter().enumerate() {
            let (pv, qv) = &self.vals[v];
            let span = (hi[i] - lo[i]) as u32;
            den *= qv.pow(span);
            // overall factor (p/q)^{lo}
            if lo[i] >= 0 {
                num *= pv.pow(lo[i] as u32);
                den *= qv.pow(lo[i] as u32);
            } else {
                num *= qv.pow((-lo[i]) as u32);
                den *= pv.pow((-lo[i]) as u32);
            }
        }
        BigRational::new(num, den)
    }

    /// Value of x, or None at a pole.
    pub fn eval(&self, x: &FactoredRat) -> Option<Rat> {
        if x.is_zero() {
            return Some(Rat::zero());
        }
        let mut den = Rat::one();
        for (f, &k) in x.den() {
            let v = Rat::one() - self.eval_poly(&LaurentPoly::monomial(f.clone()));
            if v.is_zero() {
                return None;
            }
            den *= num_traits::pow(v, k as usize);
        }
        let u = self.eval_poly(&LaurentPoly::monomial(x.unit().clone()));
        Some(u * self.eval_poly(x.num()) / den)
    }
}

/// Draws pole-free points for the given expressions.
pub struct PointSampler {
    rng: ChaCha8Rng,
    cfg: EvalConfig,
    vars: Vec<Var>,
    d: i64,
}

impl PointSampler {
    pub fn new<'a, I: IntoIterator<Item = &'a FactoredRat>>(xs: I, cfg: &EvalConfig) -> Self {
        let mut vars = Vec::new();
        let mut d = 1;
        for x in xs {
            vars.extend(x.variables());
            d = d.lcm(&x.denominator_lcm());
        }
        vars.sort();
        vars.dedup();
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg: *cfg,
            vars,
            d,
        }
    }

    /// Next point together with the values of `xs` at it.
    pub fn next_values(&mut self, xs: &[&FactoredRat]) -> Result<Vec<Rat>> {
        for _ in 0..MAX_REDRAWS {
            let pt = Point::random(&self.vars, self.d, &mut self.rng, &self.cfg);
            let vals: Option<Vec<Rat>> = xs.iter().map(|x| pt.eval(x)).collect();
            if let Some(v) = vals {
                return Ok(v);
            }
        }
        Err(Error::EvaluationExhausted)
    }
}

/// Probabilistic test of x = y.
pub fn rand_eq(x: &FactoredRat, y: &FactoredRat, cfg: &EvalConfig) -> Result<bool> {
    if x == y {
        return Ok(true);
    }
    let mut s = PointSampler::new([x, y], cfg);
    for _ in 0..cfg.trials.max(1) {
        let v = s.next_values(&[x, y])?;
        if v[0] != v[1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests Σ xs = Σ ys without forming either sum symbolically.
pub fn rand_eq_sums(xs: &[FactoredRat], ys: &[FactoredRat], cfg: &EvalConfig) -> Result<bool> {
    let all: Vec<&FactoredRat> = xs.iter().chain(ys.iter()).collect();
    let mut s = PointSampler::new(all.iter().copied(), cfg);
    for _ in 0..cfg.trials.max(1) {
        let v = s.next_values(&all)?;
        let lhs: Rat = v[..xs.len()].iter().sum();
        let rhs: Rat = v[xs.len()..].iter().sum();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A product of factors; identities between sums of these are tested without expanding.
pub type Product = Vec<FactoredRat>;

pub fn product_value(p: &Product) -> FactoredRat {
    p.iter().fold(FactoredRat::one(), |acc, x| acc.mul(x))
}

/// Tests Σ lhs = Σ rhs where each summand is an unexpanded product.
pub fn rand_eq_products(lhs: &[Product], rhs: &[Product], cfg: &EvalConfig) -> Result<bool> {
    let all: Vec<&FactoredRat> = lhs.iter().chain(rhs.iter()).flat_map(|p| p.iter()).collect();
    let mut s = PointSampler::new(all.iter().copied(), cfg);
    for _ in 0..cfg.trials.max(1) {
        let v = s.next_values(&all)?;
        let mut it = v.into_iter();
        let mut side = |ps: &[Product]| -> Rat {
            ps.iter()
                .map(|p| p.iter().fold(Rat::one(), |acc, _| acc * it.next().unwrap()))
                .sum()
        };
        let l = side(lhs);
        let r = side(rhs);
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact test of the same identity: both sides are expanded and compared.
pub fn exact_eq_products(lhs: &[Product], rhs: &[Product]) -> bool {
    let l: Vec<FactoredRat> = lhs.iter().map(product_value).collect();
    let r: Vec<FactoredRat> = rhs.iter().map(product_value).collect();
    FactoredRat::sum(&l).exact_eq(&FactoredRat::sum(&r))
}

pub fn products_eq(lhs: &[Product], rhs: &[Product], exact: bool, cfg: &EvalConfig) -> Result<bool> {
    if exact {
        Ok(exact_eq_products(lhs, rhs))
    } else {
        rand_eq_products(lhs, rhs, cfg)
    }
}

/// Equality by randomized evaluation, or by exact common-denominator subtraction.
pub fn frac_eq(x: &FactoredRat, y: &FactoredRat, exact: bool, cfg: &EvalConfig) -> Result<bool> {
    if exact {
        Ok(x.exact_eq(y))
    } else {
        rand_eq(x, y, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::{exp_frac, Monomial};

    #[test]
    fn distinguishes_variables() {
        let a = FactoredRat::inv_binomials([&Monomial::var(Var::T1)]);
        let b = FactoredRat::inv_binomials([&Monomial::var(Var::T2)]);
        assert!(!rand_eq(&a, &b, &EvalConfig::default()).unwrap());
        assert!(rand_eq(&a, &a.clone(), &EvalConfig::default()).unwrap());
    }

    #[test]
    fn half_powers() {
        // (1 − t)/(1 − t^{1/2}) = 1 + t^{1/2}
        let h = Monomial::var_pow(Var::T1, exp_frac(1, 2));
        let x = FactoredRat::binomial(&Monomial::var(Var::T1)).mul(&FactoredRat::inv_binomials([&h]));
        let y = FactoredRat::from_poly(&LaurentPoly::one() + &LaurentPoly::monomial(h));
        assert!(rand_eq(&x, &y, &EvalConfig::default()).unwrap());
    }

    #[test]
    fn eval_matches_naive() {
        let m = Monomial::from_pairs([(Var::T1, 3.into()), (Var::T2, (-2).into())]);
        let p = &LaurentPoly::monomial(m) + &LaurentPoly::constant(super::super::poly::rat_frac(1, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pt = Point::random(&[Var::T1, Var::T2], 1, &mut rng, &EvalConfig::default());
        let (p1, q1) = &pt.vals[&Var::T1];
        let (p2, q2) = &pt.vals[&Var::T2];
        let t1 = BigRational::new(p1.clone(), q1.clone());
        let t2 = BigRational::new(p2.clone(), q2.clone());
        let naive = num_traits::pow(t1, 3) / num_traits::pow(t2, 2) + super::super::poly::rat_frac(1, 3);
        assert_eq!(pt.eval_poly(&p), naive);
    }
}
