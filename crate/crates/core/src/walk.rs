//! Continuous-time quantum walk `exp(i t A)` on `P_n`, evaluated through the
//! closed-form spectral decomposition
//!
//! ```text
//! <b| exp(i t A) |a> = (2/m) sum_j exp(i t theta_j) sin(a j pi/m) sin(b j pi/m)
//! ```
//!
//! at a configurable multiprecision working precision (128 bits by default).
//!
//! Time scans use a folded form of the same sum. Since
//! `theta_{m-j} = -theta_j` and the weight of `m - j` is `(-1)^(a+b)` times
//! the weight of `j`, the amplitude is `w_c + sum_{2j<m} 2 w_j cos(t theta_j)`
//! when `a + b` is even and `w_c + i sum_{2j<m} 2 w_j sin(t theta_j)` when it
//! is odd (`w_c` is the weight of the zero eigenvalue, present when `m` is
//! even). Along an evenly spaced grid each cosine/sine obeys the three-term
//! recurrence `f_{k+1} = 2 cos(h theta) f_k - f_{k-1}`, re-seeded from a
//! direct evaluation every [`SCAN_CHUNK`] points.

use std::f64::consts::PI;

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use crate::error::{PgstError, Result};
use crate::hp::{to_f64, HpComplex, HpContext, Precision};
use crate::spectrum::PathSpec;

pub const DEFAULT_REFINE_ITERATIONS: usize = 60;

/// Grid points between two direct re-evaluations of the phases.
pub const SCAN_CHUNK: u64 = 1024;

/// Fidelities closer than this count as equal; the earlier time wins.
pub const TIE_TOLERANCE: f64 = 1e-15;

const MAX_GRID_POINTS: u64 = 1 << 34;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelitySample {
    pub t: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub best_t: f64,
    pub best_fidelity: f64,
    pub samples_evaluated: u64,
    pub t_max: f64,
    pub step: f64,
}

/// `min(0.01, pi / (8 theta_1))`: several samples per period of the fastest
/// phase.
pub fn default_step(spec: &PathSpec) -> f64 {
    let theta1 = spec.eigenvalues()[0].to_f64();
    if theta1 > 0.0 {
        (PI / (8.0 * theta1)).min(0.01)
    } else {
        0.01
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fold {
    /// `a + b` even: amplitude is real.
    Cos,
    /// `a + b` odd: amplitude is `w_c + i * (sine sum)`.
    Sin,
}

/// Precomputed spectral data for one ordered vertex pair.
pub struct TransferWalk {
    spec: PathSpec,
    a: usize,
    b: usize,
    ctx: HpContext,
    /// `(theta_j, w_j)` for every `j` with `w_j != 0`.
    terms: Vec<(BigFloat, BigFloat)>,
    fold: Fold,
    constant: BigFloat,
    /// `(theta_j, 2 w_j)` for `2j < m`.
    folded: Vec<(BigFloat, BigFloat)>,
}

impl TransferWalk {
    pub fn new(spec: &PathSpec, a: usize, b: usize, precision: Precision) -> Result<Self> {
        spec.check_vertex(a)?;
        spec.check_vertex(b)?;
        let mut ctx = HpContext::new(precision);
        let m = spec.m();
        let norm = ctx.div(&ctx.from_u64(2), &ctx.from_u64(m as u64));
        let mut terms = Vec::with_capacity(spec.n());
        let mut folded = Vec::new();
        let mut constant = ctx.zero();
        for ev in spec.eigenvalues() {
            let j = ev.index();
            let sa = ctx.sin_pi_ratio((a * j) as i64, m as u64);
            let sb = ctx.sin_pi_ratio((b * j) as i64, m as u64);
            let w = ctx.mul(&norm, &ctx.mul(&sa, &sb));
            if w.is_zero() {
                continue;
            }
            let theta = ev.value(&mut ctx);
            if 2 * j == m {
                constant = w.clone();
            } else if 2 * j < m {
                folded.push((theta.clone(), ctx.add(&w, &w)));
            }
            terms.push((theta, w));
        }
        let fold = if (a + b) % 2 == 0 { Fold::Cos } else { Fold::Sin };
        Ok(TransferWalk {
            spec: *spec,
            a,
            b,
            ctx,
            terms,
            fold,
            constant,
            folded,
        })
    }

    pub fn spec(&self) -> &PathSpec {
        &self.spec
    }

    pub fn vertices(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn context(&self) -> &HpContext {
        &self.ctx
    }

    pub fn time(&self, t: f64) -> Result<BigFloat> {
        if !t.is_finite() || t < 0.0 {
            return Err(PgstError::InvalidTime(t));
        }
        Ok(self.ctx.from_f64(t))
    }

    /// The full spectral sum `sum_j w_j exp(i t theta_j)`.
    pub fn amplitude(&mut self, t: &BigFloat) -> HpComplex {
        let mut acc = HpComplex::zero(&self.ctx);
        for (theta, w) in &self.terms {
            let z = self.ctx.cis(&self.ctx.mul(t, theta));
            acc = acc.add(&z.scale(w, &self.ctx), &self.ctx);
        }
        acc
    }

    fn fold_to_fidelity(&self, sum: &BigFloat) -> BigFloat {
        let ctx = &self.ctx;
        match self.fold {
            Fold::Cos => {
                let re = ctx.add(&self.constant, sum);
                ctx.mul(&re, &re)
            }
            Fold::Sin => ctx.add(&ctx.mul(&self.constant, &self.constant), &ctx.mul(sum, sum)),
        }
    }

    /// `|<b| exp(i t A) |a>|^2` through the folded sum.
    pub fn fidelity_at(&mut self, t: &BigFloat) -> BigFloat {
        let mut sum = self.ctx.zero();
        for (theta, coeff) in &self.folded {
            let z = self.ctx.cis(&self.ctx.mul(t, theta));
            let f = match self.fold {
                Fold::Cos => &z.re,
                Fold::Sin => &z.im,
            };
            sum = self.ctx.add(&sum, &self.ctx.mul(coeff, f));
        }
        self.fold_to_fidelity(&sum)
    }

    /// Fidelity on the grid `{0, step, ..., t_max}`, followed by
    /// `refine_iterations` rounds of three-point bracket shrinking around the
    /// best grid point. Every grid sample is passed to `on_sample` in time
    /// order.
    pub fn scan<F>(
        &mut self,
        t_max: f64,
        step: f64,
        refine_iterations: usize,
        mut on_sample: F,
    ) -> Result<ScanResult>
    where
        F: FnMut(FidelitySample),
    {
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(PgstError::InvalidGrid(format!("t_max must be positive, got {t_max}")));
        }
        if !step.is_finite() || step <= 0.0 || step > t_max {
            return Err(PgstError::InvalidGrid(format!(
                "step must lie in (0, t_max], got {step}"
            )));
        }
        let last = ((t_max / step) * (1.0 + 1e-12)).floor() as u64;
        if last >= MAX_GRID_POINTS {
            return Err(PgstError::InvalidGrid(format!("{} grid points is too many", last + 1)));
        }

        let h = self.ctx.from_f64(step);
        // per folded term: (2 cos(h theta), cos(h theta), sin(h theta))
        let mut rot = Vec::with_capacity(self.folded.len());
        for (theta, _) in &self.folded {
            let z = self.ctx.cis(&self.ctx.mul(&h, theta));
            let two_c = self.ctx.add(&z.re, &z.re);
            rot.push((two_c, z.re, z.im));
        }

        let mut best_k = 0u64;
        let mut best_f = f64::NEG_INFINITY;
        let mut start = 0u64;
        while start <= last {
            let end = (start + SCAN_CHUNK - 1).min(last);
            let t0 = self.ctx.mul(&self.ctx.from_u64(start), &h);
            // (f_k, f_{k+1}) per folded term
            let mut state: Vec<(BigFloat, BigFloat)> = Vec::with_capacity(self.folded.len());
            for ((theta, _), (_, ch, sh)) in self.folded.iter().zip(&rot) {
                let z = self.ctx.cis(&self.ctx.mul(&t0, theta));
                let ctx = &self.ctx;
                let pair = match self.fold {
                    Fold::Cos => {
                        let next = ctx.sub(&ctx.mul(&z.re, ch), &ctx.mul(&z.im, sh));
                        (z.re, next)
                    }
                    Fold::Sin => {
                        let next = ctx.add(&ctx.mul(&z.im, ch), &ctx.mul(&z.re, sh));
                        (z.im, next)
                    }
                };
                state.push(pair);
            }
            for k in start..=end {
                let ctx = &self.ctx;
                let mut sum = ctx.zero();
                for ((_, coeff), (cur, _)) in self.folded.iter().zip(&state) {
                    sum = ctx.add(&sum, &ctx.mul(coeff, cur));
                }
                if k < end {
                    for ((two_c, _, _), (cur, next)) in rot.iter().zip(state.iter_mut()) {
                        let after = ctx.sub(&ctx.mul(two_c, next), cur);
                        *cur = std::mem::replace(next, after);
                    }
                }
                let fid = to_f64(&self.fold_to_fidelity(&sum));
                let t = to_f64(&ctx.mul(&ctx.from_u64(k), &h));
                on_sample(FidelitySample { t, fidelity: fid });
                if fid > best_f + TIE_TOLERANCE {
                    best_f = fid;
                    best_k = k;
                }
            }
            start = end + 1;
        }

        let grid_points = last + 1;
        let t_max_big = self.ctx.from_f64(t_max);
        let centre = self.ctx.mul(&self.ctx.from_u64(best_k), &h);
        let (best_t, best_fidelity, refined) =
            self.refine(centre, best_f, &h, &t_max_big, refine_iterations);
        Ok(ScanResult {
            best_t: to_f64(&best_t),
            best_fidelity,
            samples_evaluated: grid_points + refined,
            t_max,
            step,
        })
    }

    fn refine(
        &mut self,
        centre: BigFloat,
        centre_f: f64,
        h: &BigFloat,
        t_max: &BigFloat,
        iterations: usize,
    ) -> (BigFloat, f64, u64) {
        let zero = self.ctx.zero();
        let lo = self.ctx.sub(&centre, h);
        let hi = self.ctx.add(&centre, h);
        let mut lo = if lo < zero { zero } else { lo };
        let mut hi = if hi > *t_max { t_max.clone() } else { hi };
        let mut mid = centre;
        let mut mid_f = centre_f;
        let (mut best_t, mut best_f) = (mid.clone(), mid_f);
        let half = self.ctx.from_f64(0.5);
        let mut evaluations = 0;
        for _ in 0..iterations {
            let left = self.ctx.mul(&self.ctx.add(&lo, &mid), &half);
            let right = self.ctx.mul(&self.ctx.add(&mid, &hi), &half);
            let left_f = to_f64(&self.fidelity_at(&left));
            let right_f = to_f64(&self.fidelity_at(&right));
            evaluations += 2;
            if left_f + TIE_TOLERANCE >= mid_f && left_f + TIE_TOLERANCE >= right_f {
                hi = std::mem::replace(&mut mid, left);
                mid_f = left_f;
            } else if mid_f + TIE_TOLERANCE >= right_f {
                lo = left;
                hi = right;
            } else {
                lo = std::mem::replace(&mut mid, right);
                mid_f = right_f;
            }
            if mid_f > best_f + TIE_TOLERANCE {
                best_f = mid_f;
                best_t = mid.clone();
            }
        }
        (best_t, best_f, evaluations)
    }
}

/// `<b| exp(i t A) |a>`.
pub fn transfer_amplitude(
    spec: &PathSpec,
    a: usize,
    b: usize,
    t: f64,
    precision: Precision,
) -> Result<HpComplex> {
    let mut walk = TransferWalk::new(spec, a, b, precision)?;
    let t = walk.time(t)?;
    Ok(walk.amplitude(&t))
}

pub fn fidelity(spec: &PathSpec, a: usize, b: usize, t: f64, precision: Precision) -> Result<f64> {
    let amp = transfer_amplitude(spec, a, b, t, precision)?;
    let walk_ctx = HpContext::new(precision);
    Ok(to_f64(&amp.norm_sqr(&walk_ctx)))
}

/// Best fidelity over `[0, t_max]` at the default 128-bit precision.
pub fn max_fidelity_scan(
    spec: &PathSpec,
    a: usize,
    b: usize,
    t_max: f64,
    step: f64,
    refine_iterations: usize,
) -> Result<ScanResult> {
    TransferWalk::new(spec, a, b, Precision::default())?.scan(t_max, step, refine_iterations, |_| {})
}

pub fn fidelity_curve(
    spec: &PathSpec,
    a: usize,
    b: usize,
    grid: &[f64],
    precision: Precision,
) -> Result<Vec<FidelitySample>> {
    if grid.is_empty() {
        return Err(PgstError::InvalidGrid("empty time grid".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(PgstError::InvalidGrid("times must be strictly increasing".into()));
    }
    let mut walk = TransferWalk::new(spec, a, b, precision)?;
    grid.iter()
        .map(|&t| {
            let tb = walk.time(t)?;
            let amp = walk.amplitude(&tb);
            Ok(FidelitySample {
                t,
                fidelity: to_f64(&amp.norm_sqr(walk.context())),
            })
        })
        .collect()
}

/// Amplitudes `<b| exp(i t A) |a>` for every `b = 1..=n`.
pub fn evolve(spec: &PathSpec, a: usize, t: f64, precision: Precision) -> Result<Vec<HpComplex>> {
    spec.check_vertex(a)?;
    if !t.is_finite() || t < 0.0 {
        return Err(PgstError::InvalidTime(t));
    }
    let mut ctx = HpContext::new(precision);
    let n = spec.n();
    let m = spec.m() as u64;
    let tb = ctx.from_f64(t);
    let norm = ctx.div(&ctx.from_u64(2), &ctx.from_u64(m));
    // phase_j * (2/m) sin(a j pi/m)
    let mut weighted = Vec::with_capacity(n);
    for ev in spec.eigenvalues() {
        let j = ev.index();
        let theta = ev.value(&mut ctx);
        let z = ctx.cis(&ctx.mul(&tb, &theta));
        let sa = ctx.sin_pi_ratio((a * j) as i64, m);
        let sa = ctx.mul(&norm, &sa);
        weighted.push(z.scale(&sa, &ctx));
    }
    let mut out = Vec::with_capacity(n);
    for b in 1..=n {
        let mut acc = HpComplex::zero(&ctx);
        for (idx, z) in weighted.iter().enumerate() {
            let sb = ctx.sin_pi_ratio((b * (idx + 1)) as i64, m);
            if !sb.is_zero() {
                acc = acc.add(&z.scale(&sb, &ctx), &ctx);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn spec(n: usize) -> PathSpec {
        PathSpec::new(n).unwrap()
    }

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn p2_perfect_transfer() {
        let amp = transfer_amplitude(&spec(2), 1, 2, FRAC_PI_2, p()).unwrap();
        let (re, im) = amp.to_f64_pair();
        assert!((re * re + im * im - 1.0).abs() < 1e-10);
        assert!((fidelity(&spec(2), 1, 2, FRAC_PI_2, p()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn p3_perfect_transfer() {
        let f = fidelity(&spec(3), 1, 3, PI / SQRT_2, p()).unwrap();
        assert!((f - 1.0).abs() < 1e-10);
    }

    #[test]
    fn identity_at_time_zero() {
        for n in 1..=12usize {
            for a in 1..=n {
                for b in 1..=n {
                    let (re, im) = transfer_amplitude(&spec(n), a, b, 0.0, p()).unwrap().to_f64_pair();
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((re - expected).abs() < 1e-15 && im.abs() < 1e-15, "n={n} a={a} b={b}");
                }
            }
        }
        assert!(fidelity(&spec(11), 2, 10, 0.0, p()).unwrap() < 1e-30);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(transfer_amplitude(&spec(3), 0, 1, 1.0, p()).is_err());
        assert!(transfer_amplitude(&spec(3), 1, 4, 1.0, p()).is_err());
        assert_eq!(
            transfer_amplitude(&spec(3), 1, 3, -1.0, p()).unwrap_err(),
            PgstError::InvalidTime(-1.0)
        );
        assert!(max_fidelity_scan(&spec(3), 1, 3, 0.0, 0.1, 0).is_err());
        assert!(max_fidelity_scan(&spec(3), 1, 3, 1.0, 2.0, 0).is_err());
        assert!(max_fidelity_scan(&spec(3), 1, 3, 1.0, -0.1, 0).is_err());
        assert!(fidelity_curve(&spec(3), 1, 3, &[], p()).is_err());
        assert!(fidelity_curve(&spec(3), 1, 3, &[0.0, 1.0, 1.0], p()).is_err());
    }

    #[test]
    fn p2_curve_is_sin_squared() {
        let c = fidelity_curve(&spec(2), 1, 2, &[0.0, FRAC_PI_4, FRAC_PI_2], p()).unwrap();
        let expected = [0.0, 0.5, 1.0];
        for (s, e) in c.iter().zip(expected) {
            assert!((s.fidelity - e).abs() < 1e-15, "{s:?}");
        }
    }

    #[test]
    fn p3_curve() {
        let c = fidelity_curve(&spec(3), 1, 3, &[0.0, PI / SQRT_2], p()).unwrap();
        assert!(c[0].fidelity.abs() < 1e-15);
        assert!((c[1].fidelity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn p5_curve_is_bounded() {
        let grid: Vec<f64> = (0..100).map(|k| k as f64 * 50.0 / 99.0).collect();
        for s in fidelity_curve(&spec(5), 1, 5, &grid, p()).unwrap() {
            assert!(s.fidelity >= 0.0 && s.fidelity <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn p2_scan_finds_pi_over_two() {
        let r = max_fidelity_scan(&spec(2), 1, 2, 4.0, 0.01, DEFAULT_REFINE_ITERATIONS).unwrap();
        assert!(r.best_fidelity >= 1.0 - 1e-6);
        assert!((r.best_t - FRAC_PI_2).abs() < 1e-6, "{r:?}");
        assert_eq!(r.samples_evaluated, 401 + 2 * DEFAULT_REFINE_ITERATIONS as u64);
    }

    #[test]
    fn p3_scan_finds_pi_over_root_two() {
        let r = max_fidelity_scan(&spec(3), 1, 3, 5.0, 0.01, DEFAULT_REFINE_ITERATIONS).unwrap();
        assert!(r.best_fidelity >= 1.0 - 1e-6);
        assert!((r.best_t - 2.2214414690791831).abs() < 1e-6, "{r:?}");
    }

    /// The recurrence-driven grid agrees with the direct spectral sum, for
    /// both folds and across chunk boundaries.
    #[test]
    fn grid_scan_matches_direct_evaluation() {
        for (n, a, b) in [(11usize, 2usize, 10usize), (11, 1, 11), (6, 2, 5), (7, 3, 4), (9, 5, 5)] {
            let s = spec(n);
            let step = 0.37;
            let mut grid = Vec::new();
            TransferWalk::new(&s, a, b, p())
                .unwrap()
                .scan(800.0, step, 0, |smp| grid.push(smp))
                .unwrap();
            assert_eq!(grid.len(), 2163);
            let mut walk = TransferWalk::new(&s, a, b, p()).unwrap();
            let h = walk.context().from_f64(step);
            for (k, smp) in grid.iter().enumerate().step_by(97).chain([(grid.len() - 1, &grid[grid.len() - 1])]) {
                let t = walk.context().mul(&walk.context().from_u64(k as u64), &h);
                let direct = to_f64(&walk.amplitude(&t).norm_sqr(walk.context()));
                assert!((direct - smp.fidelity).abs() < 1e-14, "n={n} a={a} b={b} t={}", smp.t);
            }
        }
    }

    #[test]
    fn refinement_never_loses_to_grid() {
        let s = spec(7);
        let mut grid_best = 0.0f64;
        let r = TransferWalk::new(&s, 1, 7, p())
            .unwrap()
            .scan(60.0, 0.05, 40, |smp| grid_best = grid_best.max(smp.fidelity))
            .unwrap();
        assert!(r.best_fidelity >= grid_best);
        assert!(r.best_t <= 60.0);
    }

    #[test]
    fn unitarity_and_symmetry() {
        let times = [0.7, 13.25, 1234.5];
        for n in 1..=30usize {
            let s = spec(n);
            let a = 1 + (n - 1) / 3;
            for &t in &times {
                let amps = evolve(&s, a, t, p()).unwrap();
                let total: f64 = amps
                    .iter()
                    .map(|z| {
                        let (re, im) = z.to_f64_pair();
                        re * re + im * im
                    })
                    .sum();
                assert!((total - 1.0).abs() < 1e-10, "n={n} t={t}");
            }
        }
        for (n, a, b, t) in [(9usize, 2usize, 7usize, 3.3), (12, 1, 4, 41.0), (5, 5, 2, 0.9)] {
            let s = spec(n);
            let f = fidelity(&s, a, b, t, p()).unwrap();
            assert!((f - fidelity(&s, b, a, t, p()).unwrap()).abs() < 1e-12);
            assert!((f - fidelity(&s, n + 1 - a, n + 1 - b, t, p()).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn default_steps() {
        assert_eq!(default_step(&spec(1)), 0.01);
        assert_eq!(default_step(&spec(11)), 0.01);
    }
}
