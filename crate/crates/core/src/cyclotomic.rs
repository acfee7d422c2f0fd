//! Integer polynomials, cyclotomic polynomials and exact coordinates in the
//! power basis `{1, z, ..., z^(phi(N)-1)}` of the cyclotomic field of order `N`.
//!
//! The path eigenvalue `2 cos(j pi / m)` is `z^j + z^(2m - j)` for a primitive
//! `2m`-th root of unity `z`, so its coordinates are the remainder of
//! `x^j + x^(2m-j)` modulo `Phi_{2m}`. `Phi_N` is monic with integer
//! coefficients, hence every remainder stays integral.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{PgstError, Result};
use crate::hp::{HpComplex, HpContext};

/// Dense integer polynomial, coefficient `k` multiplies `x^k`. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Quotient and remainder by a monic divisor; stays over the integers.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().expect("monic implies nonzero");
        let Some(deg) = self.degree() else {
            return (IntPoly::zero(), IntPoly::zero());
        };
        if deg < d {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); deg - d + 1];
        for k in (d..=deg).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            let shift = k - d;
            for (i, dc) in divisor.coeffs[..d].iter().enumerate() {
                if !dc.is_zero() {
                    rem[shift + i] -= &c * dc;
                }
            }
            quot[shift] = c;
        }
        rem.truncate(d);
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Euler's totient by trial division.
pub fn euler_totient(n: usize) -> usize {
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_N`, computed as `(x^N - 1) / prod_{d | N, d < N} Phi_d` by exact
/// division and memoized process-wide. The cache is write-once per order.
pub fn cyclotomic_poly(order: usize) -> Result<Arc<IntPoly>> {
    if order == 0 {
        return Err(PgstError::ZeroOrder);
    }
    if let Some(hit) = cache().read().expect("cyclotomic cache poisoned").get(&order) {
        return Ok(Arc::clone(hit));
    }
    let mut poly = &IntPoly::monomial(BigInt::one(), order) - &IntPoly::one();
    for d in (1..order).filter(|d| order % d == 0) {
        let phi_d = cyclotomic_poly(d)?;
        poly = poly.div_exact(&phi_d).ok_or_else(|| {
            PgstError::Invariant(format!("Phi_{d} does not divide x^{order} - 1 quotient"))
        })?;
    }
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    Ok(Arc::clone(guard.entry(order).or_insert_with(|| Arc::new(poly))))
}

/// Integer coordinates in the power basis of the cyclotomic field of order
/// `N`; always `phi(N)` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloCoordinates {
    order: usize,
    coords: Vec<BigInt>,
}

impl CycloCoordinates {
    pub fn zero(order: usize) -> Self {
        CycloCoordinates {
            order,
            coords: vec![BigInt::zero(); euler_totient(order)],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `self += k * other`; both must share the field order.
    pub fn add_scaled(&mut self, other: &CycloCoordinates, k: &BigInt) {
        assert_eq!(self.order, other.order, "mixing cyclotomic fields");
        for (c, o) in self.coords.iter_mut().zip(&other.coords) {
            *c += k * o;
        }
    }

    /// Value at `z = exp(2 pi i / N)`.
    pub fn evaluate(&self, ctx: &mut HpContext) -> HpComplex {
        let mut acc = HpComplex::zero(ctx);
        let n = self.order as u64;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ck = ctx.from_i64(i64::try_from(c).expect("coordinate fits in i64"));
            let term = HpComplex {
                re: ctx.cos_pi_ratio(2 * k as i64, n),
                im: ctx.sin_pi_ratio(2 * k as i64, n),
            };
            acc = acc.add(&term.scale(&ck, ctx), ctx);
        }
        acc
    }
}

/// Remainder of `poly` modulo `Phi_N`, padded to `phi(N)` coordinates.
pub fn reduce_mod_cyclotomic(poly: &IntPoly, order: usize) -> Result<CycloCoordinates> {
    let phi = cyclotomic_poly(order)?;
    let (_, rem) = poly.div_rem_monic(&phi);
    let mut coords = rem.coeffs;
    coords.resize(phi.degree().expect("Phi_N is nonzero"), BigInt::zero());
    Ok(CycloCoordinates { order, coords })
}

/// Coordinates of `theta_j = z^j + z^(2m - j)` over the field of order `2m`.
pub fn theta_coordinates(m: usize, j: usize) -> Result<CycloCoordinates> {
    if m < 2 || j == 0 || j >= m {
        return Err(PgstError::IndexOutOfRange {
            index: j,
            max: m.saturating_sub(1),
        });
    }
    let poly = &IntPoly::monomial(BigInt::one(), j) + &IntPoly::monomial(BigInt::one(), 2 * m - j);
    reduce_mod_cyclotomic(&poly, 2 * m)
}

/// Table of `x^k mod Phi_N` for `k = 0..N`, built by repeated multiplication
/// by `x`. Used to assemble all eigenvalue coordinates of one path at once.
#[derive(Debug, Clone)]
pub struct PowerTable {
    order: usize,
    powers: Vec<Vec<BigInt>>,
}

impl PowerTable {
    pub fn new(order: usize) -> Result<Self> {
        let phi = cyclotomic_poly(order)?;
        let d = phi.degree().expect("Phi_N is nonzero");
        let mut powers = Vec::with_capacity(order);
        let mut current = vec![BigInt::zero(); d];
        if d > 0 {
            current[0] = BigInt::one();
        }
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by x, then fold x^d = -(lower part of Phi_N)
            let top = current.pop().unwrap_or_default();
            current.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, p) in current.iter_mut().zip(phi.coeffs()) {
                    *c -= &top * p;
                }
            }
        }
        Ok(PowerTable { order, powers })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x^k mod Phi_N`, with `k` taken modulo `N`.
    pub fn power(&self, k: usize) -> CycloCoordinates {
        CycloCoordinates {
            order: self.order,
            coords: self.powers[k % self.order].clone(),
        }
    }

    /// `theta_j` for a table of order `2m`.
    pub fn theta(&self, j: usize) -> CycloCoordinates {
        let m = self.order / 2;
        let mut c = self.power(j);
        c.add_scaled(&self.power(2 * m - j), &BigInt::one());
        c
    }
}
