//! Rewriting rational functions of u = e₂/e₁ in ζ = 1/(1 − u), so u = (ζ − 1)/ζ.

use num_traits::Zero;
use serde::Serialize;

use crate::exactalg::{rat, FactoredRat, LaurentPoly, Rat, Var};

/// Dense univariate polynomial, lowest degree first.
type UPoly = Vec<Rat>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient, or None when the remainder is nonzero.
fn div_exact(num: &UPoly, den: &UPoly) -> Option<UPoly> {
    let den = trim(den.clone());
    let mut rem = trim(num.clone());
    if den.is_empty() {
        return None;
    }
    if rem.len() < den.len() {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let lead = den.last().unwrap().clone();
    let mut q = vec![Rat::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        q[shift] = c;
        rem = trim(rem);
    }
    if rem.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

/// Σ c_k u^k ↦ ζ^D Σ c_k ((ζ−1)/ζ)^k = Σ c_k (ζ−1)^k ζ^{D−k}, for 0 ≤ k ≤ D.
fn to_zeta_poly(p: &[(i64, Rat)], d: i64) -> UPoly {
    let zm1: UPoly = vec![rat(-1), rat(1)];
    let mut out: UPoly = Vec::new();
    for (k, c) in p {
        let mut t: UPoly = vec![Rat::zero(); (d - k) as usize];
        t.push(c.clone());
        for _ in 0..*k {
            t = mul(&t, &zm1);
        }
        if out.len() < t.len() {
            out.resize(t.len(), Rat::zero());
        }
        for (i, x) in t.into_iter().enumerate() {
            out[i] += x;
        }
    }
    trim(out)
}

fn u_terms(p: &LaurentPoly) -> Option<Vec<(i64, Rat)>> {
    p.iter()
        .map(|(m, c)| {
            let e = m.exponent(Var::W);
            if m.iter().any(|(v, _)| *v != Var::W) || !e.is_integer() {
                None
            } else {
                Some((e.to_integer(), c.clone()))
            }
        })
        .collect()
}

/// x(u) as a polynomial in ζ, or None if it is not one.
pub fn zeta_polynomial(x: &FactoredRat) -> Option<Vec<Rat>> {
    if x.is_zero() {
        return Some(Vec::new());
    }
    let (num, den) = x.to_fraction();
    let mut n = u_terms(&num)?;
    let mut d = u_terms(&den)?;
    let lo = n.iter().chain(d.iter()).map(|(k, _)| *k).min().unwrap();
    for (k, _) in n.iter_mut().chain(d.iter_mut()) {
        *k -= lo;
    }
    let hi = n.iter().chain(d.iter()).map(|(k, _)| *k).max().unwrap();
    div_exact(&to_zeta_poly(&n, hi), &to_zeta_poly(&d, hi))
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaShape {
    pub polynomial: bool,
    pub degree: Option<usize>,
    /// Lowest power of ζ with a nonzero coefficient.
    pub valuation: Option<usize>,
}

pub fn zeta_shape(x: &FactoredRat) -> ZetaShape {
    match zeta_polynomial(x) {
        None => ZetaShape {
            polynomial: false,
            degree: None,
            valuation: None,
        },
        Some(p) if p.is_empty() => ZetaShape {
            polynomial: true,
            degree: None,
            valuation: None,
        },
        Some(p) => ZetaShape {
            polynomial: true,
            degree: Some(p.len() - 1),
            valuation: p.iter().position(|c| !c.is_zero()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial;

    fn u() -> Monomial {
        Monomial::var(Var::W)
    }

    #[test]
    fn geometric_is_zeta() {
        let z = zeta_polynomial(&FactoredRat::inv_binomials([&u()])).unwrap();
        assert_eq!(z, vec![rat(0), rat(1)]);
    }

    #[test]
    fn reflected_geometric_is_one_minus_zeta() {
        let z = zeta_polynomial(&FactoredRat::inv_binomials([&u().inv()])).unwrap();
        assert_eq!(z, vec![rat(1), rat(-1)]);
    }

    #[test]
    fn non_polynomial_detected() {
        let x = FactoredRat::inv_binomials([&u().powi(2)]);
        assert!(zeta_polynomial(&x).is_none());
    }
}
