use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents are exact rationals; i64 is ample for every grading used here.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64) -> Exp {
    Ratio::from_integer(n)
}

pub fn exp_frac(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T1,
    T2,
    /// Exponentiated Coulomb parameter e_α, 1-based.
    E(u8),
    Q,
    S,
    W,
    Zeta,
    Sym(&'static str),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::T1 => "t1".into(),
            Var::T2 => "t2".into(),
            Var::E(i) => format!("e{i}"),
            Var::Q => "q".into(),
            Var::S => "s".into(),
            Var::W => "w".into(),
            Var::Zeta => "zeta".into(),
            Var::Sym(s) => (*s).into(),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Canonical product of variable powers: sorted by variable, no zero exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(Var, Exp); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, Exp::one())
    }

    pub fn var_pow(v: Var, e: Exp) -> Self {
        let mut m = SmallVec::new();
        if !e.is_zero() {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds from arbitrary (possibly repeated, unsorted) pairs.
    pub fn from_pairs<I: IntoIterator<Item = (Var, Exp)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, Exp> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert_with(Exp::zero) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| !e.is_zero()).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Var, Exp)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> Exp {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or_else(Exp::zero)
    }

    pub fn leading_exponent(&self) -> Option<Exp> {
        self.0.first().map(|(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if !e.is_zero() {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: Exp) -> Monomial {
        if k.is_zero() {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn powi(&self, k: i64) -> Monomial {
        self.pow(exp(k))
    }

    /// Drops every variable for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| keep(*v)).collect())
    }

    /// lcm of exponent denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.0.iter().fold(1, |acc, (_, e)| acc.lcm(e.denom()))
    }

    /// Image under a monomial substitution; variables absent from `sigma` are an error
    /// unless `partial` is set, in which case they map to themselves.
    pub fn subst(&self, sigma: &Subst) -> Result<Monomial> {
        let mut out = Monomial::one();
        for &(v, e) in self.0.iter() {
            match sigma.get(v) {
                Some(img) => out = out.mul(&img.pow(e)),
                None if sigma.partial => out = out.mul(&Monomial::var_pow(v, e)),
                None => return Err(Error::UndefinedSubstitution(v.name())),
            }
        }
        Ok(out)
    }

    /// Integer vector form of the exponents scaled by `d` (which must clear denominators).
    pub fn scaled_exponents(&self, d: i64) -> SmallVec<[(Var, i64); 4]> {
        self.0
            .iter()
            .map(|(v, e)| {
                let s = *e * d;
                debug_assert!(s.is_integer());
                (*v, s.to_integer())
            })
            .collect()
    }

    /// True if every exponent is a nonnegative integer.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| e.is_integer() && !e.is_negative())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e.is_one() {
                write!(f, "{v}")?;
            } else if e.is_integer() {
                write!(f, "{v}^{e}")?;
            } else {
                write!(f, "{v}^({e})")?;
            }
        }
        Ok(())
    }
}

/// A monomial substitution σ: variable ↦ monomial.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    map: BTreeMap<Var, Monomial>,
    /// When set, unmapped variables are fixed instead of rejected.
    pub partial: bool,
}

impl Subst {
    /// Strict substitution: every occurring variable must be mapped.
    pub fn strict() -> Self {
        Subst {
            map: BTreeMap::new(),
            partial: false,
        }
    }

    /// Substitution fixing every variable not explicitly mapped.
    pub fn fixing_others() -> Self {
        Subst {
            map: BTreeMap::new(),
            partial: true,
        }
    }

    pub fn with(mut self, v: Var, img: Monomial) -> Self {
        self.map.insert(v, img);
        self
    }

    pub fn insert(&mut self, v: Var, img: Monomial) {
        self.map.insert(v, img);
    }

    pub fn get(&self, v: Var) -> Option<&Monomial> {
        self.map.get(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_cancels_to_one() {
        let m = Monomial::from_pairs([(Var::T1, exp(2)), (Var::E(1), exp_frac(1, 2))]);
        assert!(m.mul(&m.inv()).is_one());
    }

    #[test]
    fn from_pairs_merges_and_sorts() {
        let m = Monomial::from_pairs([(Var::T2, exp(1)), (Var::T1, exp(1)), (Var::T2, exp(-1))]);
        assert_eq!(m, Monomial::var(Var::T1));
    }

    #[test]
    fn subst_half_power() {
        // e^2 under e -> e t1^(1/2) is e^2 t1
        let m = Monomial::var_pow(Var::E(1), exp(2));
        let s = Subst::strict().with(
            Var::E(1),
            Monomial::from_pairs([(Var::E(1), exp(1)), (Var::T1, exp_frac(1, 2))]),
        );
        let out = m.subst(&s).unwrap();
        assert_eq!(out, Monomial::from_pairs([(Var::E(1), exp(2)), (Var::T1, exp(1))]));
    }

    #[test]
    fn strict_subst_rejects_unmapped() {
        let m = Monomial::var(Var::T1);
        assert!(matches!(
            m.subst(&Subst::strict()),
            Err(Error::UndefinedSubstitution(_))
        ));
    }
}
