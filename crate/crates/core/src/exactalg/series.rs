use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::frac::FactoredRat;
use super::monomial::{Exp, Monomial};
use super::poly::{exp_to_rat, rat, LaurentPoly, Rat};
use crate::error::{Error, Result};

/// Coefficient ring of a truncated series.
pub trait Coeff: Clone + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn inv(&self) -> Result<Self>;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn from_rat(c: Rat) -> Self {
        Self::one().scale(&c)
    }

    fn sum(xs: &[Self]) -> Self {
        xs.iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        self * c
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        LaurentPoly::scale(self, c)
    }
    fn inv(&self) -> Result<Self> {
        match self.as_single_term() {
            Some((m, c)) => Ok(LaurentPoly::term(m.inv(), c.recip())),
            None => Err(Error::NonBinomialDivisor),
        }
    }
}

impl Coeff for FactoredRat {
    fn zero() -> Self {
        FactoredRat::zero()
    }
    fn one() -> Self {
        FactoredRat::one()
    }
    fn is_zero(&self) -> bool {
        FactoredRat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FactoredRat::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        FactoredRat::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FactoredRat::mul(self, o)
    }
    fn neg(&self) -> Self {
        FactoredRat::neg(self)
    }
    fn scale(&self, c: &Rat) -> Self {
        FactoredRat::scale(self, c)
    }
    fn inv(&self) -> Result<Self> {
        FactoredRat::inv(self)
    }
    fn sum(xs: &[Self]) -> Self {
        FactoredRat::sum(xs)
    }
}

/// Truncated series Σ c_x·T^x over rational exponents. `cap == None` means the
/// series is exact (a finite sum); otherwise only exponents ≤ cap are known.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    cap: Option<Exp>,
    terms: BTreeMap<Exp, C>,
}

pub type QSeries = Series<FactoredRat>;

fn min_opt(a: Option<Exp>, b: Option<Exp>) -> Option<Exp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coeff> Series<C> {
    pub fn zero(cap: Option<Exp>) -> Self {
        Series {
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, cap: Option<Exp>) -> Self {
        Self::monomial(Exp::zero(), c, cap)
    }

    pub fn one(cap: Option<Exp>) -> Self {
        Self::constant(C::one(), cap)
    }

    pub fn monomial(e: Exp, c: C, cap: Option<Exp>) -> Self {
        let mut s = Self::zero(cap);
        s.set(e, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, C)>>(it: I, cap: Option<Exp>) -> Self {
        let mut s = Self::zero(cap);
        for (e, c) in it {
            s.add_term(e, c);
        }
        s
    }

    pub fn cap(&self) -> Option<Exp> {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Exp, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn in_range(&self, e: Exp) -> bool {
        self.cap.is_none_or(|c| e <= c)
    }

    pub fn set(&mut self, e: Exp, c: C) {
        if !self.in_range(e) || c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn add_term(&mut self, e: Exp, c: C) {
        if !self.in_range(e) || c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(x) => x.add(&c),
            None => c,
        };
        self.set(e, v);
    }

    pub fn coeff(&self, e: Exp) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    /// Valuation used in cap arithmetic: a zero series with finite cap is known to vanish up to cap.
    fn effective_valuation(&self) -> Option<Exp> {
        self.valuation().or(self.cap)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, cap: Exp) -> Self {
        let cap = min_opt(self.cap, Some(cap));
        Series {
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Some(**e) <= cap)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Series {
            cap: min_opt(self.cap, o.cap),
            terms: BTreeMap::new(),
        };
        for (e, c) in self.iter().chain(o.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Multiplies by T^e.
    pub fn shift_exponent(&self, e: Exp) -> Self {
        Series {
            cap: self.cap.map(|c| c + e),
            terms: self.terms.iter().map(|(x, c)| (*x + e, c.clone())).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.cap);
        for (e, c) in self.iter() {
            out.set(*e, f(c));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::<D>::zero(self.cap);
        for (e, c) in self.iter() {
            out.set(*e, f(c));
        }
        out
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        let mut out = Series::<D>::zero(self.cap);
        for (e, c) in self.iter() {
            out.set(*e, f(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cap = match (self.cap, o.cap) {
            (None, None) => None,
            _ => {
                let a = match (self.effective_valuation(), o.cap) {
                    (Some(v), Some(c)) => Some(v + c),
                    _ => None,
                };
                let b = match (o.effective_valuation(), self.cap) {
                    (Some(v), Some(c)) => Some(v + c),
                    _ => None,
                };
                min_opt(a, b)
            }
        };
        let mut acc: BTreeMap<Exp, Vec<C>> = BTreeMap::new();
        for (ea, ca) in self.iter() {
            for (eb, cb) in o.iter() {
                let e = *ea + *eb;
                if cap.is_none_or(|c| e <= c) {
                    acc.entry(e).or_default().push(ca.mul(cb));
                }
            }
        }
        let mut out = Self::zero(cap);
        for (e, cs) in acc {
            out.set(e, C::sum(&cs));
        }
        out
    }

    fn require_cap(&self) -> Result<Exp> {
        self.cap.ok_or(Error::UncappedSeries)
    }

    /// Σ_{j≥1} (−1)^{j+1} X^j / j with X = a − 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(Exp::zero()).is_one() {
            return Err(Error::LogOfNonUnit);
        }
        let mut x = self.clone();
        x.terms.remove(&Exp::zero());
        if x.is_zero() {
            return Ok(Self::zero(self.cap));
        }
        let v = x.valuation().unwrap();
        if !v.is_positive() {
            return Err(Error::LogOfNonUnit);
        }
        let cap = self.require_cap()?;
        let jmax = (cap / v).floor().to_integer();
        let mut out = Self::zero(self.cap);
        let mut pw = x.clone();
        for j in 1..=jmax {
            let c = if j % 2 == 1 { rat(1) } else { rat(-1) } / rat(j);
            out = out.add(&pw.scale(&c));
            if j < jmax {
                pw = pw.mul(&x);
            }
        }
        Ok(out)
    }

    /// Σ_{j≥0} X^j / j!.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| !v.is_positive()) {
            return Err(Error::ExpOfNonZeroConstant);
        }
        if self.is_zero() {
            return Ok(Self::one(self.cap));
        }
        let cap = self.require_cap()?;
        let v = self.valuation().unwrap();
        let jmax = (cap / v).floor().to_integer();
        let mut out = Self::one(self.cap);
        let mut pw = Self::one(self.cap);
        for j in 1..=jmax {
            pw = pw.mul(self).scale(&(rat(1) / rat(j)));
            out = out.add(&pw);
        }
        Ok(out)
    }

    /// 1/a for a with invertible constant term and no negative exponents.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff(Exp::zero());
        if self.valuation().is_none_or(|v| v.is_negative()) || c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c0i = c0.inv()?;
        let mut x = self.mul_coeff(&c0i);
        x.terms.remove(&Exp::zero());
        let x = x.neg();
        if x.is_zero() {
            return Ok(Self::constant(c0i, self.cap));
        }
        let cap = self.require_cap()?;
        let v = x.valuation().unwrap();
        let jmax = (cap / v).floor().to_integer();
        let mut out = Self::one(self.cap);
        let mut pw = Self::one(self.cap);
        for _ in 1..=jmax {
            pw = pw.mul(&x);
            out = out.add(&pw);
        }
        Ok(out.mul_coeff(&c0i))
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::one(self.cap);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// T·d/dT
    pub fn euler_derivative(&self) -> Self {
        let mut out = Self::zero(self.cap);
        for (e, c) in self.iter() {
            out.set(*e, c.scale(&exp_to_rat(*e)));
        }
        out
    }

    /// Equality up to the smaller cap, coefficientwise via `eq`.
    pub fn eq_with(&self, o: &Self, eq: impl Fn(&C, &C) -> bool) -> bool {
        self.first_mismatch(o, eq).is_none()
    }

    /// First exponent (up to the common cap) where the coefficients differ.
    pub fn first_mismatch(&self, o: &Self, eq: impl Fn(&C, &C) -> bool) -> Option<Exp> {
        let cap = min_opt(self.cap, o.cap);
        let mut keys: Vec<Exp> = self.terms.keys().chain(o.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|e| cap.is_none_or(|c| *e <= c))
            .find(|e| !eq(&self.coeff(*e), &o.coeff(*e)))
    }
}

impl Series<FactoredRat> {
    /// Substitution T ↦ m·T: the coefficient of T^x is multiplied by m^x.
    pub fn shift(&self, m: &Monomial) -> Self {
        self.map_with_exp(|e, c| c.mul_monomial(&m.pow(e)))
    }

    pub fn map_with_exp(&self, f: impl Fn(Exp, &FactoredRat) -> FactoredRat) -> Self {
        let mut out = Self::zero(self.cap);
        for (e, c) in self.iter() {
            out.set(*e, f(*e, c));
        }
        out
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn zero() -> Self {
        Series::zero(None)
    }
    fn one() -> Self {
        Series::one(None)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Exp::zero()).is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn scale(&self, c: &Rat) -> Self {
        Series::scale(self, c)
    }
    fn inv(&self) -> Result<Self> {
        Series::inv(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::{exp, exp_frac, Var};

    fn cq(c: i64, cap: i64) -> Series<Rat> {
        Series::from_terms([(exp(0), rat(1)), (exp(1), rat(c))], Some(exp(cap)))
    }

    #[test]
    fn mercator() {
        let l = cq(3, 2).log().unwrap();
        assert_eq!(l.coeff(exp(1)), rat(3));
        assert_eq!(l.coeff(exp(2)), rat(-9) / rat(2));
    }

    #[test]
    fn exp_log_roundtrip() {
        let a = cq(5, 2);
        let b = a.log().unwrap().exp().unwrap();
        assert!(b.eq_with(&a, |x, y| x == y));
        assert_eq!(b.coeff(exp(2)), rat(0));
    }

    #[test]
    fn cap_of_product() {
        let a = Series::from_terms([(exp(1), rat(1))], Some(exp(3)));
        let b = Series::from_terms([(exp(2), rat(1))], Some(exp(4)));
        assert_eq!(a.mul(&b).cap(), Some(exp(5)));
    }

    #[test]
    fn shift_by_half_power() {
        let c = FactoredRat::from_int(7);
        let a = QSeries::from_terms([(exp(0), FactoredRat::one()), (exp(1), c.clone())], Some(exp(1)));
        let m = Monomial::var_pow(Var::T1, exp_frac(1, 2));
        let s = a.shift(&m);
        assert!(s.coeff(exp(1)).exact_eq(&c.mul_monomial(&m)));
    }

    #[test]
    fn log_rejects_non_unit() {
        assert_eq!(cq(1, 2).scale(&rat(2)).log().unwrap_err(), Error::LogOfNonUnit);
    }

    #[test]
    fn inv_geometric() {
        let a = cq(-1, 4);
        let b = a.inv().unwrap();
        for k in 0..=4 {
            assert_eq!(b.coeff(exp(k)), rat(1));
        }
    }
}
