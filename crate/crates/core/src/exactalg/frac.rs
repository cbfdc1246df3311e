use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::monomial::{Exp, Monomial, Subst, Var};
use super::poly::{LaurentPoly, Rat};
use crate::error::{Error, Result};

/// Puts the monomial of a binomial (1 − m) into canonical orientation (leading
/// exponent positive). Returns the oriented monomial and whether it was inverted.
pub fn orient(m: &Monomial) -> (Monomial, bool) {
    assert!(!m.is_one(), "binomial factor 1 - 1 vanishes identically");
    match m.leading_exponent() {
        Some(e) if e.is_negative() => (m.inv(), true),
        _ => (m.clone(), false),
    }
}

/// unit · num / Π (1 − mᵢ)^{kᵢ}, every mᵢ oriented by [`orient`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactoredRat {
    unit: Monomial,
    num: LaurentPoly,
    den: BTreeMap<Monomial, u32>,
}

impl Default for FactoredRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl FactoredRat {
    pub fn zero() -> Self {
        FactoredRat {
            unit: Monomial::one(),
            num: LaurentPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(super::poly::rat(n))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let mut x = FactoredRat {
            unit: Monomial::one(),
            num: p,
            den: BTreeMap::new(),
        };
        x.normalize_unit();
        x
    }

    /// 1 / Π (1 − mᵢ) for the given (unoriented) monomials.
    pub fn inv_binomials<'a, I: IntoIterator<Item = &'a Monomial>>(ms: I) -> Self {
        let mut x = FactoredRat::one();
        for m in ms {
            x.push_den(m, 1);
        }
        x.normalize_unit();
        x
    }

    /// 1 − m
    pub fn binomial(m: &Monomial) -> Self {
        Self::from_poly(LaurentPoly::one_minus(m))
    }

    pub fn unit(&self) -> &Monomial {
        &self.unit
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<Monomial, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.unit.is_one() && self.num.is_one()
    }

    /// The value as a constant, when it is one.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.den.is_empty() && self.unit.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The value as a Laurent polynomial, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_empty() {
            Some(self.num.mul_monomial(&self.unit))
        } else {
            None
        }
    }

    /// Multiplies the value by 1/(1 − m)^k, keeping the factor oriented.
    fn push_den(&mut self, m: &Monomial, k: u32) {
        if k == 0 {
            return;
        }
        let (o, flipped) = orient(m);
        if flipped {
            // 1/(1−m) = −m⁻¹/(1−m⁻¹)
            self.unit = self.unit.mul(&o.powi(k as i64));
            if k % 2 == 1 {
                self.num = -&self.num;
            }
        }
        *self.den.entry(o).or_insert(0) += k;
    }

    /// Moves the componentwise-minimal monomial of num into unit.
    fn normalize_unit(&mut self) {
        if self.num.is_zero() {
            self.unit = Monomial::one();
            self.den.clear();
            return;
        }
        let mins: Vec<(Var, Exp)> = self
            .num
            .variables()
            .into_iter()
            .map(|v| (v, self.num.iter().map(|(m, _)| m.exponent(v)).min().unwrap()))
            .collect();
        let g = Monomial::from_pairs(mins);
        if !g.is_one() {
            self.num = self.num.mul_monomial(&g.inv());
            self.unit = self.unit.mul(&g);
        }
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let factors: Vec<Monomial> = self.den.keys().cloned().collect();
        for f in factors {
            let k = self.den.get_mut(&f).unwrap();
            while *k > 0 {
                match self.num.div_one_minus(&f) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, k| *k > 0);
        self.normalize_unit();
        self
    }

    /// Numerator of `self` placed over the denominator `den` (which must contain self.den).
    fn numerator_over(&self, den: &BTreeMap<Monomial, u32>) -> LaurentPoly {
        let mut p = self.num.mul_monomial(&self.unit);
        for (f, &k) in den {
            let have = self.den.get(f).copied().unwrap_or(0);
            for _ in have..k {
                p = p.mul_one_minus(f);
            }
        }
        p
    }

    fn lcm_den<'a, I: IntoIterator<Item = &'a FactoredRat>>(xs: I) -> BTreeMap<Monomial, u32> {
        let mut den: BTreeMap<Monomial, u32> = BTreeMap::new();
        for x in xs {
            for (f, &k) in &x.den {
                let e = den.entry(f.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        den
    }

    /// Sum without the final reduce.
    fn add_unreduced(&self, other: &FactoredRat) -> FactoredRat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den && self.unit == other.unit {
            let mut x = FactoredRat {
                unit: self.unit.clone(),
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
            x.normalize_unit();
            return x;
        }
        let den = Self::lcm_den([self, other]);
        let num = &self.numerator_over(&den) + &other.numerator_over(&den);
        let mut x = FactoredRat {
            unit: Monomial::one(),
            num,
            den,
        };
        x.normalize_unit();
        x
    }

    pub fn add(&self, other: &FactoredRat) -> FactoredRat {
        self.add_unreduced(other).reduce()
    }

    pub fn sub(&self, other: &FactoredRat) -> FactoredRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FactoredRat {
        FactoredRat {
            unit: self.unit.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> FactoredRat {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRat {
            unit: self.unit.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> FactoredRat {
        if self.is_zero() {
            return Self::zero();
        }
        FactoredRat {
            unit: self.unit.mul(m),
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FactoredRat) -> FactoredRat {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        let x = FactoredRat {
            unit: self.unit.mul(&other.unit),
            num: self.num.mul_ref(&other.num),
            den,
        };
        if x.num.len() > 1 && !x.den.is_empty() {
            x.reduce()
        } else {
            let mut x = x;
            x.normalize_unit();
            x
        }
    }

    pub fn pow(&self, k: u32) -> FactoredRat {
        let mut out = FactoredRat::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse. The numerator must be a monomial times a product of
    /// binomials; monomials and two-term numerators c·(m₁ − m₂) are recognized directly,
    /// longer ones by peeling off binomials (1 − m) with m a ratio of two of its terms.
    pub fn inv(&self) -> Result<FactoredRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut binoms: Vec<Monomial> = Vec::new();
        let mut rest = self.num.clone();
        loop {
            if rest.len() <= 2 {
                break;
            }
            let cand = self
                .den
                .keys()
                .cloned()
                .chain(ratio_candidates(&rest))
                .find_map(|f| rest.div_one_minus(&f).map(|q| (f, q)));
            match cand {
                Some((f, q)) => {
                    binoms.push(f);
                    rest = q;
                }
                None => return Err(Error::NonBinomialDivisor),
            }
        }
        let mut out = FactoredRat::one();
        let mut terms = rest.iter();
        let (m1, c1) = terms.next().unwrap();
        match terms.next() {
            None => {
                out.unit = m1.inv();
                out.num = LaurentPoly::constant(c1.recip());
            }
            Some((m2, c2)) => {
                if c1 != &-c2.clone() {
                    return Err(Error::NonBinomialDivisor);
                }
                // c1 (m1 − m2) = c1 m1 (1 − m2/m1)
                out.unit = m1.inv();
                out.num = LaurentPoly::constant(c1.recip());
                out.push_den(&m2.div(m1), 1);
            }
        }
        for f in &binoms {
            out.push_den(f, 1);
        }
        out.unit = out.unit.mul(&self.unit.inv());
        let mut num = out.num.clone();
        for (f, &k) in &self.den {
            for _ in 0..k {
                num = num.mul_one_minus(f);
            }
        }
        out.num = num;
        Ok(out.reduce())
    }

    pub fn div(&self, other: &FactoredRat) -> Result<FactoredRat> {
        Ok(self.mul(&other.inv()?))
    }

    /// Sum of many terms over one common denominator; the numerators are expanded in
    /// parallel and added in index order, so the result does not depend on scheduling.
    pub fn sum(xs: &[FactoredRat]) -> FactoredRat {
        let nz: Vec<&FactoredRat> = xs.iter().filter(|x| !x.is_zero()).collect();
        match nz.len() {
            0 => return FactoredRat::zero(),
            1 => return nz[0].clone().reduce(),
            _ => {}
        }
        let den = Self::lcm_den(nz.iter().copied());
        let nums: Vec<LaurentPoly> = nz.par_iter().map(|x| x.numerator_over(&den)).collect();
        let num = tree_sum(nums);
        let mut x = FactoredRat {
            unit: Monomial::one(),
            num,
            den,
        };
        x.normalize_unit();
        x.reduce()
    }

    pub fn subst(&self, sigma: &Subst) -> Result<FactoredRat> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = FactoredRat {
            unit: self.unit.subst(sigma)?,
            num: self.num.subst(sigma)?,
            den: BTreeMap::new(),
        };
        for (f, &k) in &self.den {
            let img = f.subst(sigma)?;
            if img.is_one() {
                return Err(Error::DivisionByZero);
            }
            out.push_den(&img, k);
        }
        out.normalize_unit();
        Ok(out.reduce())
    }

    /// Fully expanded (numerator, denominator) pair as Laurent polynomials.
    pub fn to_fraction(&self) -> (LaurentPoly, LaurentPoly) {
        let mut den = LaurentPoly::one();
        for (f, &k) in &self.den {
            for _ in 0..k {
                den = den.mul_one_minus(f);
            }
        }
        (self.num.mul_monomial(&self.unit), den)
    }

    /// Exact equality: the difference over the common denominator has zero numerator.
    pub fn exact_eq(&self, other: &FactoredRat) -> bool {
        let den = Self::lcm_den([self, other]);
        self.numerator_over(&den) == other.numerator_over(&den)
    }

    /// Every monomial occurring anywhere in the representation.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        std::iter::once(&self.unit)
            .chain(self.num.iter().map(|(m, _)| m))
            .chain(self.den.keys())
    }

    pub fn denominator_lcm(&self) -> i64 {
        self.monomials()
            .fold(1, |acc, m| num_integer::lcm(acc, m.denominator_lcm()))
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.monomials().flat_map(|m| m.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// v·d/dv of the value.
    pub fn log_derivative(&self, v: Var) -> FactoredRat {
        if self.is_zero() {
            return Self::zero();
        }
        // D(u n / Π(1−f)^k) = u/Π(1−f)^k · (D n + n·(deg_v u) + n·Σ k·(deg_v f)·f/(1−f))
        let base = FactoredRat {
            unit: self.unit.clone(),
            num: LaurentPoly::one(),
            den: self.den.clone(),
        };
        let mut inner = FactoredRat::from_poly(
            &self.num.log_derivative(v) + &self.num.scale(&super::poly::exp_to_rat(self.unit.exponent(v))),
        );
        for (f, &k) in &self.den {
            let df = f.exponent(v);
            if df.is_zero() {
                continue;
            }
            let c = super::poly::exp_to_rat(df) * super::poly::rat(k as i64);
            let term = FactoredRat::inv_binomials([f])
                .mul_monomial(f)
                .mul(&FactoredRat::from_poly(self.num.scale(&c)));
            inner = inner.add(&term);
        }
        base.mul(&inner)
    }
}

/// Oriented ratios of pairs of terms: the possible binomial factors of a product of binomials.
fn ratio_candidates(p: &LaurentPoly) -> Vec<Monomial> {
    const MAX_TERMS: usize = 64;
    if p.len() > MAX_TERMS {
        return Vec::new();
    }
    let ms: Vec<&Monomial> = p.iter().map(|(m, _)| m).collect();
    let mut out: Vec<Monomial> = Vec::new();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let (o, _) = orient(&ms[j].div(ms[i]));
            out.push(o);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Index-ordered pairwise sum.
pub fn tree_sum(mut xs: Vec<LaurentPoly>) -> LaurentPoly {
    if xs.is_empty() {
        return LaurentPoly::zero();
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        xs = next;
    }
    xs.pop().unwrap()
}

impl fmt::Debug for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.unit.is_one() {
            write!(f, "{}*", self.unit)?;
        }
        write!(f, "({})", self.num)?;
        for (m, k) in &self.den {
            if *k == 1 {
                write!(f, "/(1 - {m})")?;
            } else {
                write!(f, "/(1 - {m})^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::exp;
    use crate::exactalg::poly::rat;

    fn t(v: Var) -> Monomial {
        Monomial::var(v)
    }

    #[test]
    fn add_same_denominator() {
        let x = FactoredRat::inv_binomials([&t(Var::T1)]);
        let s = x.add(&x);
        assert!(s.exact_eq(&x.scale(&rat(2))));
        assert_eq!(s.den().len(), 1);
    }

    #[test]
    fn reduce_cancels_binomial() {
        let p = FactoredRat::binomial(&t(Var::T1).powi(2)).mul(&FactoredRat::inv_binomials([&t(Var::T1)]));
        assert!(p.den().is_empty());
        assert_eq!(p.as_poly().unwrap(), &LaurentPoly::one() + &LaurentPoly::var(Var::T1));
    }

    #[test]
    fn reduce_keeps_coprime_factor() {
        let m = Monomial::from_pairs([(Var::T1, exp(1)), (Var::T2, exp(1))]);
        let p = FactoredRat::binomial(&m).mul(&FactoredRat::inv_binomials([&t(Var::T1)]));
        assert_eq!(p.den().len(), 1);
    }

    #[test]
    fn orientation_flip_preserves_value() {
        let a = FactoredRat::inv_binomials([&t(Var::T1).inv()]);
        // 1/(1 − t1⁻¹) = −t1/(1 − t1)
        let b = FactoredRat::inv_binomials([&t(Var::T1)])
            .mul_monomial(&t(Var::T1))
            .neg();
        assert!(a.exact_eq(&b));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = FactoredRat::binomial(&t(Var::T2))
            .mul(&FactoredRat::binomial(&t(Var::T1).inv()))
            .mul(&FactoredRat::inv_binomials([&t(Var::E(1))]))
            .scale(&rat(-3));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(x.div(&x).unwrap().is_one());
    }

    #[test]
    fn zero_over_binomial_is_zero() {
        let z = FactoredRat::zero().mul(&FactoredRat::inv_binomials([&t(Var::T1)]));
        assert!(z.is_zero());
        assert!(z.den().is_empty());
    }

    #[test]
    fn log_derivative_of_geometric() {
        // t d/dt 1/(1−t) = t/(1−t)^2
        let x = FactoredRat::inv_binomials([&t(Var::T1)]);
        let d = x.log_derivative(Var::T1);
        let expect = x.mul(&x).mul_monomial(&t(Var::T1));
        assert!(d.exact_eq(&expect));
    }
}
