use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exp, Monomial, Subst, Var};
use crate::error::Result;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Finite sum of rational multiples of monomials; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rat::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// The binomial 1 − m.
    pub fn one_minus(m: &Monomial) -> Self {
        let mut p = LaurentPoly::one();
        p.add_term(m.clone(), -Rat::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        self.as_single_term()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(x, a)| (x.mul(m), a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> LaurentPoly {
        self.mul_monomial(m).scale(c)
    }

    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((m, c)) = other.as_single_term() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_single_term() {
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in self.iter() {
            for (mb, cb) in other.iter() {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// self · (1 − m)
    pub fn mul_one_minus(&self, m: &Monomial) -> LaurentPoly {
        let mut out = self.clone();
        for (x, c) in self.iter() {
            out.add_term(x.mul(m), -c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    /// Exact division by (1 − m), or None if (1 − m) does not divide.
    ///
    /// Monomials are grouped into classes x·m^ℤ; inside a class the quotient is the
    /// running prefix sum along increasing powers of m, and divisibility is the
    /// vanishing of each class total.
    pub fn div_one_minus(&self, m: &Monomial) -> Option<LaurentPoly> {
        assert!(!m.is_one(), "binomial 1 - 1");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (v0, e0) = *m.iter().next().unwrap();
        // class key -> list of (position, coefficient)
        let mut classes: BTreeMap<(Monomial, Exp), Vec<(i64, &Rat)>> = BTreeMap::new();
        for (x, c) in self.iter() {
            let t = x.exponent(v0) / e0;
            let pos = t.floor();
            let rep = x.mul(&m.pow(-t));
            classes.entry((rep, t - pos)).or_default().push((pos.to_integer(), c));
        }
        let mut out = BTreeMap::new();
        for ((rep, frac), mut items) in classes {
            items.sort_by_key(|(p, _)| *p);
            let base = rep.mul(&m.pow(frac));
            let mut run = Rat::zero();
            let mut k = 0;
            let mut pos = items[0].0;
            loop {
                while k < items.len() && items[k].0 == pos {
                    run += items[k].1;
                    k += 1;
                }
                if k == items.len() {
                    if !run.is_zero() {
                        return None;
                    }
                    break;
                }
                if !run.is_zero() {
                    out.insert(base.mul(&m.powi(pos)), run.clone());
                }
                pos += 1;
            }
        }
        Some(LaurentPoly { terms: out })
    }

    pub fn subst(&self, sigma: &Subst) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.iter() {
            out.add_term(m.subst(sigma)?, c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every monomial (for homomorphisms that are not plain substitutions).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.iter() {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Groups terms by the exponent of `v`; the map values have `v` removed.
    pub fn collect_in(&self, v: Var) -> BTreeMap<Exp, LaurentPoly> {
        let mut out: BTreeMap<Exp, LaurentPoly> = BTreeMap::new();
        for (m, c) in self.iter() {
            out.entry(m.exponent(v))
                .or_default()
                .add_term(m.restrict(|w| w != v), c.clone());
        }
        out
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.iter().flat_map(|(m, _)| m.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// lcm of all exponent denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.iter()
            .fold(1, |acc, (m, _)| num_integer::lcm(acc, m.denominator_lcm()))
    }

    /// Degree in `v` (max and min exponent), None for the zero polynomial.
    pub fn degree_range(&self, v: Var) -> Option<(Exp, Exp)> {
        let mut it = self.iter().map(|(m, _)| m.exponent(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Exact derivative w·d/dw.
    pub fn log_derivative(&self, v: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.iter() {
            let e = m.exponent(v);
            if !e.is_zero() {
                out.add_term(m.clone(), c * exp_to_rat(e));
            }
        }
        out
    }

    pub fn is_negative_leading(&self) -> bool {
        self.terms.iter().next().is_some_and(|(_, c)| c.is_negative())
    }
}

pub fn exp_to_rat(e: Exp) -> Rat {
    BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in rhs.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::exp;

    fn t1() -> Monomial {
        Monomial::var(Var::T1)
    }

    #[test]
    fn geometric_division() {
        let p = LaurentPoly::one_minus(&t1().powi(5));
        let q = p.div_one_minus(&t1()).unwrap();
        assert_eq!(q.len(), 5);
        assert_eq!(q.mul_one_minus(&t1()), p);
    }

    #[test]
    fn non_divisible() {
        let p = LaurentPoly::one_minus(&Monomial::from_pairs([(Var::T1, exp(1)), (Var::T2, exp(1))]));
        assert!(p.div_one_minus(&t1()).is_none());
    }

    #[test]
    fn division_with_fractional_classes() {
        let m = Monomial::from_pairs([(Var::T1, exp(2)), (Var::E(1), exp(-1))]);
        let q = LaurentPoly::from_terms([
            (Monomial::var(Var::T2), rat(3)),
            (
                Monomial::var_pow(Var::T1, crate::exactalg::monomial::exp_frac(1, 2)),
                rat(-2),
            ),
            (Monomial::one(), rat(1)),
        ]);
        let p = q.mul_one_minus(&m);
        assert_eq!(p.div_one_minus(&m).unwrap(), q);
        assert_eq!(p.div_one_minus(&m.inv()).unwrap(), -&q.mul_monomial(&m));
    }
}
