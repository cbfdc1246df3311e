//! Rank-two genus-one identities and the contact-term equation, over ℚ(u)[[𝔮]] with
//! u = e₂/e₁ (stored in `Var::W`).
//!
//! With x = a₁ − a₂ the perturbative prepotential gives, through the k⃗ = (m,−m) lattice
//! sum, the nome q = 𝔮·u²/(1−u)⁴·exp(−2θ_u²F₀^inst), where θ_u = u·d/du. The perturbative
//! parts of F₁ and G are both −(1/24)·log of the perturbative factor of q, so only
//! instanton parts enter the identities below.

use num_traits::Zero;
use serde::Serialize;

use super::probe::{extract_genus, to_u, GenusSlice, DEFAULT_DIRECTIONS};
use super::zeta::{zeta_shape, ZetaShape};
use crate::error::{Error, Result};
use crate::exactalg::{
    exp, exp_frac, frac_eq, json, rat, rat_frac, EvalConfig, Exp, FactoredRat, Monomial, QSeries, Var,
};
use crate::instanton::InstantonContext;
use crate::qseries_special::{theta_char_e, Characteristic};

/// How the variable a of the genus-one formulas relates to the Coulomb parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// a = ⟨a⃗,α⃗⟩ = a₁ − a₂ everywhere: e^{−a} = u and ∂_a = −θ_u.
    RootPairing,
    /// a⃗ = (−a, a) everywhere: e^{−a} = u^{1/2} and ∂_a = 2θ_u.
    HalfRoot,
    /// Root pairing inside the logarithms, a⃗ = (−a, a) for the derivative. This is what
    /// the lattice sum of the contact-term equation produces.
    Mixed,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [
        Normalization::RootPairing,
        Normalization::HalfRoot,
        Normalization::Mixed,
    ];

    /// (μ, λ): the perturbative factor uses u^μ, and ∂_a² = λ²θ_u².
    fn params(self) -> (Exp, i64) {
        match self {
            Normalization::RootPairing => (exp(1), 1),
            Normalization::HalfRoot => (exp_frac(1, 2), 2),
            Normalization::Mixed => (exp(1), 2),
        }
    }
}

fn u() -> Monomial {
    Monomial::var(Var::W)
}

fn theta(x: &FactoredRat) -> FactoredRat {
    x.log_derivative(Var::W)
}

/// Instanton coefficients F₀ₙ, Gₙ, F₁ₙ in the variable u.
#[derive(Clone, Debug)]
pub struct RankTwoData {
    pub order: u32,
    pub f0: Vec<FactoredRat>,
    pub g: Vec<FactoredRat>,
    pub f1: Vec<FactoredRat>,
    pub h: Vec<FactoredRat>,
}

impl RankTwoData {
    pub fn compute(order: u32) -> Result<Self> {
        let slices = extract_genus(&InstantonContext::new(2), order, &DEFAULT_DIRECTIONS)?;
        Self::from_slices(order, &slices)
    }

    pub fn from_slices(order: u32, slices: &[GenusSlice]) -> Result<Self> {
        let conv = |f: fn(&GenusSlice) -> &FactoredRat| -> Result<Vec<FactoredRat>> {
            slices.iter().map(|s| to_u(f(s))).collect()
        };
        Ok(RankTwoData {
            order,
            f0: conv(|s| &s.f0)?,
            g: conv(|s| &s.g)?,
            f1: conv(|s| &s.f1)?,
            h: conv(|s| &s.h)?,
        })
    }

    fn series(&self, cs: &[FactoredRat]) -> QSeries {
        QSeries::from_terms(
            cs.iter().enumerate().map(|(n, c)| (exp(n as i64), c.clone())),
            Some(exp(self.order as i64)),
        )
    }

    /// Σ_n θ_u²F₀ₙ 𝔮ⁿ
    fn theta2_f0(&self) -> QSeries {
        self.series(&self.f0).map(|c| theta(&theta(c)))
    }

    /// q = 𝔮·c(u^μ)·exp(−(λ²/2)θ_u²F₀^inst) with c(w) = 1/((1−w)(1−w⁻¹))².
    pub fn nome(&self, norm: Normalization) -> Result<QSeries> {
        let (mu, lambda) = norm.params();
        let w = u().pow(mu);
        let c = FactoredRat::inv_binomials([&w, &w, &w.inv(), &w.inv()]);
        let e = self.theta2_f0().scale(&rat_frac(-(lambda * lambda), 2)).exp()?;
        Ok(e.mul_coeff(&c).shift_exponent(exp(1)).truncate(exp(self.order as i64)))
    }
}

/// Π_{n∈S} (1 − qⁿ) over the given exponents, for q of positive valuation.
fn product_one_minus(q: &QSeries, exps: impl Iterator<Item = u32>) -> QSeries {
    let cap = q.cap().unwrap();
    let mut out = QSeries::one(Some(cap));
    for n in exps {
        if exp(n as i64) > cap {
            break;
        }
        out = out.mul(&QSeries::one(Some(cap)).sub(&q.powi(n)));
    }
    out
}

fn first_mismatch(a: &QSeries, b: &QSeries, exact: bool, cfg: &EvalConfig) -> Result<Option<Exp>> {
    let cap = a.cap().into_iter().chain(b.cap()).min();
    let mut keys: Vec<Exp> = a.terms().keys().chain(b.terms().keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for e in keys {
        if cap.is_some_and(|c| e > c) {
            continue;
        }
        if !frac_eq(&a.coeff(e), &b.coeff(e), exact, cfg)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizationOutcome {
    pub normalization: Normalization,
    /// exp(F₁)·η(τ/2) = 1
    pub f1_identity: bool,
    pub f1_first_failure: Option<String>,
    /// exp(G) = q^{−1/24} Π(1 − q^{2d−1})
    pub g_identity: bool,
    pub g_first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Genus1Report {
    pub order: u32,
    pub outcomes: Vec<NormalizationOutcome>,
    /// Normalizations under which both identities hold.
    pub succeeded: Vec<Normalization>,
    /// exp(G − F₁) equals the θ₄-type lattice sum Σ(−1)^m q^{m²} (normalization-free).
    pub theta4_consistency: bool,
    /// H^inst vanishes at every computed order.
    pub h_vanishes: bool,
    /// F₁ₙ and θ_u²F₀ₙ written in ζ = 1/(1 − u), per order n ≥ 1.
    pub zeta_f1: Vec<ZetaShape>,
    pub zeta_d2f0: Vec<ZetaShape>,
    pub pass: bool,
}

pub fn genus1_check(data: &RankTwoData, exact: bool, cfg: &EvalConfig) -> Result<Genus1Report> {
    let n = data.order;
    let one = QSeries::one(Some(exp(n as i64)));
    let mut outcomes = Vec::new();
    for norm in Normalization::ALL {
        let (_, lambda) = norm.params();
        let q = data.nome(norm)?;
        let kappa = rat_frac(lambda * lambda, 48);
        let shift = data.theta2_f0().scale(&kappa);
        // exp(F₁^inst − κθ²F₀^inst)·Π(1 − qⁿ) = 1
        let lhs1 = data
            .series(&data.f1)
            .sub(&shift)
            .exp()?
            .mul(&product_one_minus(&q, 1..));
        let m1 = first_mismatch(&lhs1, &one, exact, cfg)?;
        // exp(G^inst − κθ²F₀^inst) = Π(1 − q^{2d−1})
        let lhs2 = data.series(&data.g).sub(&shift).exp()?;
        let rhs2 = product_one_minus(&q, (1..).step_by(2));
        let m2 = first_mismatch(&lhs2, &rhs2, exact, cfg)?;
        outcomes.push(NormalizationOutcome {
            normalization: norm,
            f1_identity: m1.is_none(),
            f1_first_failure: m1.map(|e| json::exp_str(&e)),
            g_identity: m2.is_none(),
            g_first_failure: m2.map(|e| json::exp_str(&e)),
        });
    }
    let succeeded: Vec<Normalization> = outcomes
        .iter()
        .filter(|o| o.f1_identity && o.g_identity)
        .map(|o| o.normalization)
        .collect();

    let q = data.nome(Normalization::Mixed)?;
    let theta4 = theta_char_e(&one, &q, exp(n as i64), Characteristic::THETA4)?.series;
    let g_minus_f1 = data.series(&data.g).sub(&data.series(&data.f1)).exp()?;
    let theta4_consistency = first_mismatch(&g_minus_f1, &theta4, exact, cfg)?.is_none();

    let h_vanishes = data.h.iter().all(|h| h.is_zero());
    let zeta_f1 = data.f1.iter().skip(1).map(zeta_shape).collect();
    let zeta_d2f0 = data.f0.iter().skip(1).map(|f| zeta_shape(&theta(&theta(f)))).collect();
    let pass = !succeeded.is_empty() && theta4_consistency;
    Ok(Genus1Report {
        order: n,
        outcomes,
        succeeded,
        theta4_consistency,
        h_vanishes,
        zeta_f1,
        zeta_d2f0,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactPair {
    pub d: usize,
    /// The equation degenerates when d = (r+1)/2.
    pub trivial: bool,
    pub first_failure: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactReport {
    pub order: u32,
    pub pairs: Vec<ContactPair>,
    /// The common value equals exp(G − F₁).
    pub matches_genus1: bool,
    /// With the odd characteristic (½,½) the d = r/2 side vanishes identically.
    pub odd_characteristic_vanishes: bool,
    pub pass: bool,
}

/// E_d = exp(−(d−1)²P/2)·Σ_m (−1)^m q^{m²} B_d^m with P = Σ n²F₀ₙ𝔮ⁿ and
/// B_d = u^{1−d}·exp(2(d−1)θ_u Σ nF₀ₙ𝔮ⁿ).
fn contact_side(data: &RankTwoData, q: &QSeries, d: i64, ch: Characteristic) -> Result<QSeries> {
    let cap = exp(data.order as i64);
    let f0 = data.series(&data.f0);
    let p = f0.euler_derivative().euler_derivative();
    let dq = f0.euler_derivative().map(theta);
    let b = dq
        .scale(&rat(2 * (d - 1)))
        .exp()?
        .mul_coeff(&FactoredRat::from_monomial(u().powi(1 - d)));
    let th = theta_char_e(&b, q, cap, ch)?;
    if !th.a_power.is_zero() {
        return Err(Error::InvalidArgument(
            "contact check needs an integral characteristic".into(),
        ));
    }
    let pref = p.scale(&rat_frac(-(d - 1) * (d - 1), 2)).exp()?;
    Ok(pref.mul(&th.series))
}

pub fn contact_check(data: &RankTwoData, exact: bool, cfg: &EvalConfig) -> Result<ContactReport> {
    let r = 2;
    let q = data.nome(Normalization::Mixed)?;
    let sides: Vec<QSeries> = (0..=r)
        .map(|d| contact_side(data, &q, d as i64, Characteristic::THETA4))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for d in 1..=r {
        let trivial = 2 * d == r + 1;
        let m = if trivial {
            None
        } else {
            first_mismatch(&sides[d], &sides[d - 1], exact, cfg)?
        };
        pairs.push(ContactPair {
            d,
            trivial,
            first_failure: m.map(|e| json::exp_str(&e)),
            pass: m.is_none(),
        });
    }
    let g_minus_f1 = data.series(&data.g).sub(&data.series(&data.f1)).exp()?;
    let matches_genus1 = first_mismatch(&sides[1], &g_minus_f1, exact, cfg)?.is_none();
    let one = QSeries::one(Some(exp(data.order as i64)));
    let odd = theta_char_e(&one, &q, exp(data.order as i64), Characteristic::ODD)?;
    let odd_characteristic_vanishes = odd.series.is_zero();
    let pass = pairs.iter().all(|p| p.pass) && matches_genus1;
    Ok(ContactReport {
        order: data.order,
        pairs,
        matches_genus1,
        odd_characteristic_vanishes,
        pass,
    })
}
