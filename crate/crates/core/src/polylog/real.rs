//! Arbitrary-precision reals and the small amount of complex arithmetic the inversion
//! formulas need, over astro-float.

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat as AFloat, Consts, Radix, RoundingMode};
use num_traits::Signed;

use crate::exactalg::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary float carrying its working precision in bits. Binary operations run at the
/// larger of the two precisions.
#[derive(Clone, Debug)]
pub struct BigFloat {
    v: AFloat,
    p: usize,
}

impl BigFloat {
    fn wrap(v: AFloat, p: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN in polylog arithmetic");
        BigFloat { v, p }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Self::wrap(AFloat::from_i64(n, p), p)
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Self::wrap(AFloat::from_f64(x, p), p)
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_rat(r: &Rat, p: usize) -> Self {
        let parse = |s: String| with_cc(|cc| AFloat::parse(&s, Radix::Dec, p + 64, RM, cc));
        let n = parse(r.numer().to_string());
        let d = parse(r.denom().to_string());
        Self::wrap(n.div(&d, p, RM), p)
    }

    pub fn pi(p: usize) -> Self {
        Self::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.v.powi(n, self.p, RM), self.p)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    /// 2^e with e the binary exponent, so |x| < 2^e; −∞ for zero.
    pub fn log2_bound(&self) -> f64 {
        match self.v.exponent() {
            Some(e) if !self.v.is_zero() => e as f64,
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn lt(&self, other: &BigFloat) -> bool {
        self.v.cmp(&other.v).is_some_and(|c| c < 0)
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let s = with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).expect("decimal formatting");
        s.parse().unwrap_or(f64::NAN)
    }

    pub fn to_string_digits(&self) -> String {
        with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_default()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let p = self.p.max(rhs.p);
                BigFloat::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(AFloat::neg(&self.v), self.p)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

/// a + b·i
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn real(re: BigFloat) -> Self {
        let p = re.precision();
        Complex {
            re,
            im: BigFloat::zero(p),
        }
    }

    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn scale(&self, c: &BigFloat) -> Complex {
        Complex {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// log of a nonzero real, on the branch log(−y) = log y + π√−1 for y > 0.
    pub fn log_real(x: &BigFloat) -> Complex {
        let p = x.precision();
        if x.is_negative() {
            Complex {
                re: x.abs().ln(),
                im: BigFloat::pi(p),
            }
        } else {
            Complex::real(x.ln())
        }
    }

    /// max(|re|, |im|) as an f64, for residual reporting.
    pub fn max_abs(&self) -> f64 {
        self.re.to_f64().abs().max(self.im.to_f64().abs())
    }
}

/// Rational to f64, for diagnostics only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * BigFloat::from_rat(&r.abs(), 64).to_f64()
}
