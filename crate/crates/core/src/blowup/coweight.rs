use std::fmt;

use num_traits::Zero;

use crate::exactalg::{exp, exp_frac, Exp, Monomial, Var};

/// A coweight k⃗ of sl_r in the class {k⃗} = −k/r.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(pub Vec<Exp>);

impl Coweight {
    pub fn zero(r: usize) -> Self {
        Coweight(vec![Exp::zero(); r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// (k⃗,k⃗) = Σ k_α²
    pub fn norm2(&self) -> Exp {
        self.0.iter().map(|k| k * k).sum()
    }

    /// The 𝔮-order (k⃗,k⃗)/2 of the summand.
    pub fn half_norm(&self) -> Exp {
        self.norm2() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|k| k.is_zero())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|k| -k).collect())
    }

    /// ⟨k⃗, ε_i − ε_j⟩ = k_i − k_j, 1-based root indices.
    pub fn pair(&self, root: Root) -> i64 {
        let p = self.0[root.0 - 1] - self.0[root.1 - 1];
        assert!(p.is_integer(), "non-integral root pairing");
        p.to_integer()
    }

    /// ⟨k⃗, ρ⟩ with ρ = ((r−1)/2, (r−3)/2, …, −(r−1)/2).
    pub fn rho_pair(&self) -> Exp {
        let r = self.rank() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(a, k)| k * exp_frac(r - 1 - 2 * a as i64, 2))
            .sum()
    }

    /// Π e_α^{c·k_α}
    pub fn e_power(&self, c: Exp) -> Monomial {
        Monomial::from_pairs(self.0.iter().enumerate().map(|(a, k)| (Var::E(a as u8 + 1), k * c)))
    }

    pub fn max_abs_pairing(&self) -> i64 {
        roots(self.rank())
            .iter()
            .map(|&rt| self.pair(rt).abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The root ε_i − ε_j, stored as (i, j), 1-based, i ≠ j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub usize, pub usize);

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.1, self.0)
    }
}

impl Root {
    /// e^{−⟨a⃗,α⃗⟩} = e_j / e_i
    pub fn exp_neg_a(self) -> Monomial {
        Monomial::var(Var::E(self.1 as u8)).div(&Monomial::var(Var::E(self.0 as u8)))
    }
}

/// All roots of sl_r in lexicographic order.
pub fn roots(r: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            if i != j {
                out.push(Root(i, j));
            }
        }
    }
    out
}

/// All k⃗ with Σk_α = 0, k_α ≡ −k/r mod 1 and (k⃗,k⃗)/2 ≤ bound, sorted by norm then lexicographically.
pub fn enumerate_coweights(r: usize, k: usize, bound: Exp) -> Vec<Coweight> {
    assert!(k < r, "class must satisfy 0 ≤ k < r");
    let shift = exp_frac(-(k as i64), r as i64);
    // k_α = n_α + shift with n_α ∈ ℤ and |k_α| ≤ sqrt(2·bound)
    let lim = {
        let b2 = bound * 2;
        let mut m = 0i64;
        while exp(m + 1) * exp(m + 1) <= b2 + exp(1) {
            m += 1;
        }
        m + 2
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(r: usize, lim: i64, shift: Exp, bound: Exp, cur: &mut Vec<Exp>, out: &mut Vec<Coweight>) {
        if cur.len() + 1 == r {
            let s: Exp = cur.iter().sum();
            let last = -s;
            if !(last - shift).is_integer() {
                return;
            }
            cur.push(last);
            let c = Coweight(cur.clone());
            if c.half_norm() <= bound {
                out.push(c);
            }
            cur.pop();
            return;
        }
        for n in -lim..=lim {
            let v = exp(n) + shift;
            let partial: Exp = cur.iter().map(|x| x * x).sum::<Exp>() + v * v;
            if partial / 2 > bound {
                continue;
            }
            cur.push(v);
            rec(r, lim, shift, bound, cur, out);
            cur.pop();
        }
    }
    rec(r, lim, shift, bound, &mut cur, &mut out);
    out.sort_by(|a, b| a.half_norm().cmp(&b.half_norm()).then_with(|| a.cmp(b)));
    out
}

/// Coweights of every class whose root pairings are bounded by `max_pair` in absolute value.
pub fn coweights_with_pairing_bound(r: usize, max_pair: i64) -> Vec<Coweight> {
    let bound = exp(max_pair * max_pair * r as i64);
    (0..r)
        .flat_map(|k| enumerate_coweights(r, k, bound))
        .filter(|c| c.max_abs_pairing() <= max_pair)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_class_zero() {
        let c = enumerate_coweights(2, 0, exp(2));
        let v: Vec<Vec<Exp>> = c.iter().map(|c| c.0.clone()).collect();
        assert_eq!(
            v,
            vec![vec![exp(0), exp(0)], vec![exp(-1), exp(1)], vec![exp(1), exp(-1)]]
        );
    }

    #[test]
    fn rank_two_class_one() {
        let c = enumerate_coweights(2, 1, exp(1));
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.half_norm() == exp_frac(1, 4)));
    }

    #[test]
    fn rank_three_class_zero() {
        assert_eq!(enumerate_coweights(3, 0, exp(1)).len(), 7);
    }

    #[test]
    fn rho_pairing_half_integral() {
        let k = Coweight(vec![exp_frac(1, 2), exp_frac(-1, 2)]);
        assert_eq!(k.rho_pair(), exp_frac(1, 2));
    }
}
