//! Multiprecision real and complex helpers on top of `astro_float`.
//!
//! Every numeric routine in the crate takes an [`HpContext`], which fixes the
//! working precision and owns the constant cache (pi) used by the
//! trigonometric functions. Contexts are cheap to build and are not shared
//! between threads.

use std::env;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::error::{PgstError, Result};

pub const MIN_PRECISION_BITS: usize = 64;
pub const DEFAULT_PRECISION_BITS: usize = 128;

/// Environment variable overriding the default working precision (bits).
pub const PRECISION_ENV: &str = "PGST_PRECISION_BITS";

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits carried through argument reduction.
const GUARD_BITS: usize = 64;

/// Significand precision in bits; at least 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(usize);

impl Precision {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < MIN_PRECISION_BITS {
            return Err(PgstError::InsufficientPrecision(bits));
        }
        Ok(Precision(bits))
    }

    pub const fn bits(self) -> usize {
        self.0
    }

    /// Reads [`PRECISION_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(PRECISION_ENV) {
            Ok(raw) => {
                let bits = raw
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| PgstError::BadPrecisionSetting(raw.clone()))?;
                Precision::new(bits)
            }
            Err(env::VarError::NotPresent) => Ok(Precision::default()),
            Err(env::VarError::NotUnicode(s)) => {
                Err(PgstError::BadPrecisionSetting(s.to_string_lossy().into_owned()))
            }
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION_BITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

pub struct HpContext {
    p: usize,
    cc: Consts,
}

impl HpContext {
    pub fn new(precision: Precision) -> Self {
        let cc = Consts::new().expect("allocating the astro-float constant cache");
        HpContext {
            p: precision.bits(),
            cc,
        }
    }

    pub fn precision(&self) -> Precision {
        Precision(self.p)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_u8(0, self.p)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    pub fn from_u64(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.p)
    }

    /// Exact conversion: every finite `f64` fits in 64 significand bits.
    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    pub fn add(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.add(y, self.p, RM)
    }

    pub fn sub(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.sub(y, self.p, RM)
    }

    pub fn mul(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.mul(y, self.p, RM)
    }

    pub fn div(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.div(y, self.p, RM)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.p, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    /// Library sine with the library's own argument reduction.
    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, RM, &mut self.cc)
    }

    /// Library cosine with the library's own argument reduction.
    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.p, RM, &mut self.cc)
    }

    /// `sin(num * pi / den)`, reducing the rational multiple of pi exactly
    /// into `[0, pi/2]` before any floating-point work. Multiples of pi give
    /// an exact zero.
    pub fn sin_pi_ratio(&mut self, num: i64, den: u64) -> BigFloat {
        assert!(den > 0, "zero denominator");
        let period = 2 * den as i128;
        let mut r = (num as i128).rem_euclid(period) as u64;
        let mut negate = false;
        if r >= den {
            r -= den;
            negate = true;
        }
        // sin(pi - x) = sin(x)
        let r = r.min(den - r);
        if r == 0 {
            return self.zero();
        }
        let wp = self.p + GUARD_BITS;
        let x = self
            .cc
            .pi(wp, RM)
            .mul(&BigFloat::from_u64(r, wp), wp, RM)
            .div(&BigFloat::from_u64(den, wp), wp, RM);
        let mut s = x.sin(self.p, RM, &mut self.cc);
        if negate {
            s.inv_sign();
        }
        s
    }

    /// `cos(num * pi / den)` via `sin(x + pi/2)`.
    pub fn cos_pi_ratio(&mut self, num: i64, den: u64) -> BigFloat {
        self.sin_pi_ratio(2 * num + den as i64, 2 * den)
    }

    /// `exp(i * phase)` with the phase first reduced modulo `2 pi` at
    /// working precision plus guard bits (plus the bits of the integer part,
    /// so large times keep their accuracy).
    pub fn cis(&mut self, phase: &BigFloat) -> HpComplex {
        let int_bits = phase.exponent().map_or(0, |e| e.max(0) as usize);
        let wp = self.p + GUARD_BITS + int_bits;
        let mut two_pi = self.cc.pi(wp, RM);
        two_pi.set_exponent(two_pi.exponent().expect("pi is finite") + 1);
        let turns = phase.div(&two_pi, wp, RM).floor();
        let reduced = phase.sub(&turns.mul(&two_pi, wp, RM), wp, RM);
        HpComplex {
            re: reduced.cos(self.p, RM, &mut self.cc),
            im: reduced.sin(self.p, RM, &mut self.cc),
        }
    }
}

/// Nearest `f64` (truncating beyond the top 128 mantissa bits).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let (words, _, sign, exponent, _) = x.as_raw_parts().expect("finite value");
    // mantissa is 0.1xxx in binary; words are least significant first
    let mut value = 0.0f64;
    let mut scale = 1.0f64;
    for w in words.iter().rev().take(2) {
        scale /= 18_446_744_073_709_551_616.0;
        value += *w as f64 * scale;
    }
    let value = value * 2f64.powi(exponent);
    if sign == Sign::Neg {
        -value
    } else {
        value
    }
}

#[derive(Debug, Clone)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn zero(ctx: &HpContext) -> Self {
        HpComplex {
            re: ctx.zero(),
            im: ctx.zero(),
        }
    }

    pub fn norm_sqr(&self, ctx: &HpContext) -> BigFloat {
        ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im))
    }

    pub fn mul(&self, other: &HpComplex, ctx: &HpContext) -> HpComplex {
        HpComplex {
            re: ctx.sub(&ctx.mul(&self.re, &other.re), &ctx.mul(&self.im, &other.im)),
            im: ctx.add(&ctx.mul(&self.re, &other.im), &ctx.mul(&self.im, &other.re)),
        }
    }

    pub fn add(&self, other: &HpComplex, ctx: &HpContext) -> HpComplex {
        HpComplex {
            re: ctx.add(&self.re, &other.re),
            im: ctx.add(&self.im, &other.im),
        }
    }

    pub fn scale(&self, k: &BigFloat, ctx: &HpContext) -> HpComplex {
        HpComplex {
            re: ctx.mul(&self.re, k),
            im: ctx.mul(&self.im, k),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}
