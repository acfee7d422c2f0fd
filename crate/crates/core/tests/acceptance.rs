//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pgst_core::cyclotomic::{cyclotomic_poly, IntPoly};
use pgst_core::decider::{sigma_parity, theorem2_family};
use pgst_core::hp::to_f64;
use pgst_core::oracle::{brute_force_relations, coefficient_identity_check, verify_relation};
use pgst_core::walk::{evolve, fidelity, max_fidelity_scan, DEFAULT_REFINE_ITERATIONS};
use pgst_core::{
    decide_pgst, end_vertex_rule, relation_lattice, theorem2_predicate, Answer, HpContext, PathSpec,
    Precision,
};

type Outcome = Result<String, String>;

const PST_TOLERANCE: f64 = 1e-10;
const UNITARITY_TOLERANCE: f64 = 1e-10;
const SYMMETRY_TOLERANCE: f64 = 1e-12;
const COMPLETENESS_TOLERANCE: f64 = 1e-12;

/// Horizons and threshold frozen after the pre-build scan of (11, 2, 10):
/// running maxima about 0.759, 0.957, 0.993.
const PGST_HORIZONS: [f64; 3] = [1e2, 1e3, 1e4];
const PGST_STEP: f64 = 0.01;
const PGST_THRESHOLD: f64 = 0.9;

fn spec(n: usize) -> PathSpec {
    PathSpec::new(n).expect("n >= 1")
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn end_vertex_classification() -> Outcome {
    let mut agree = 0;
    for n in 2..=64usize {
        let verdict = decide_pgst(&spec(n), 1, n).map_err(|e| e.to_string())?;
        let rule = end_vertex_rule(n).map_err(|e| e.to_string())?;
        ensure(verdict.answer.is_yes() == rule, || {
            format!("n = {n}: decider says {}, rule says {rule}", verdict.answer.as_str())
        })?;
        agree += 1;
    }
    Ok(format!("{agree}/63 end pairs agree with the rule"))
}

fn theorem2_sufficiency() -> Outcome {
    let mut families = Vec::new();
    let mut pairs = 0;
    for n in 2..=100usize {
        if theorem2_family(n).is_none() {
            continue;
        }
        families.push(n);
        for a in (1..=n / 2).filter(|&a| theorem2_predicate(n, a)) {
            let v = decide_pgst(&spec(n), a, n + 1 - a).map_err(|e| e.to_string())?;
            ensure(v.answer == Answer::Yes, || format!("n = {n}, a = {a} decided no"))?;
            pairs += 1;
        }
    }
    ensure(pairs > 0, || "no covered pairs".into())?;
    Ok(format!("{pairs} covered pairs yes across n in {families:?}"))
}

fn headline_exhibit() -> Outcome {
    for (n, a) in [(11usize, 2usize), (23, 4), (47, 8)] {
        let s = spec(n);
        let inner = decide_pgst(&s, a, n + 1 - a).map_err(|e| e.to_string())?;
        let ends = decide_pgst(&s, 1, n).map_err(|e| e.to_string())?;
        ensure(inner.answer == Answer::Yes, || format!("({n}, {a}, {}) is not yes", n + 1 - a))?;
        ensure(ends.answer == Answer::No, || format!("({n}, 1, {n}) is not no"))?;
    }
    Ok("internal yes, ends no for n = 11, 23, 47".into())
}

fn negative_certificate() -> Outcome {
    let s = spec(8);
    let v = decide_pgst(&s, 1, 8).map_err(|e| e.to_string())?;
    ensure(v.answer == Answer::No, || "n = 8 ends decided yes".into())?;
    let w = v.witness.ok_or("no witness attached")?;
    let bits = s.sigma_vector(1).map_err(|e| e.to_string())?.bits();
    let ok = verify_relation(&s, 1, &w.coefficients).map_err(|e| e.to_string())?;
    ensure(ok, || format!("witness {:?} fails verification", w.coefficients))?;
    ensure(sigma_parity(&bits, &w.coefficients) == 1, || "witness parity is even".into())?;
    let hand = ints(&[2, 0, -3, 0, 2, -3, 2, 0]);
    let ok = verify_relation(&s, 1, &hand).map_err(|e| e.to_string())?;
    ensure(ok, || "hand-derived vector fails verification".into())?;
    ensure(sigma_parity(&bits, &hand) == 1, || "hand-derived vector parity is even".into())?;
    let shown: Vec<String> = w.coefficients.iter().map(ToString::to_string).collect();
    Ok(format!("witness ({}) verified, odd parity", shown.join(", ")))
}

fn oracle_equivalence() -> Outcome {
    let bound = 3;
    let mut relations = 0usize;
    for n in 1..=12usize {
        let s = spec(n);
        for a in 1..=n {
            let brute = brute_force_relations(&s, a, bound).map_err(|e| e.to_string())?;
            let lattice = relation_lattice(&s, a).map_err(|e| e.to_string())?;
            let bits = s.sigma_vector(a).map_err(|e| e.to_string())?.bits();
            let basis_parity: Vec<u8> = lattice.basis().iter().map(|v| sigma_parity(&bits, v)).collect();
            for r in &brute {
                ensure(r.verified, || format!("n = {n}, a = {a}: {:?} unverified", r.vector))?;
                let coeffs = lattice
                    .coefficients_of(&r.vector)
                    .ok_or_else(|| format!("n = {n}, a = {a}: {:?} outside the lattice", r.vector))?;
                let predicted = coeffs
                    .iter()
                    .zip(&basis_parity)
                    .filter(|(c, &p)| p == 1 && (*c % 2u32) != BigInt::zero())
                    .count()
                    % 2;
                ensure(predicted as u8 == sigma_parity(&bits, &r.vector), || {
                    format!("n = {n}, a = {a}: parity disagrees on {:?}", r.vector)
                })?;
            }
            for v in lattice.basis() {
                if v.iter().all(|x| x <= &BigInt::from(bound) && x >= &BigInt::from(-(bound as i64))) {
                    ensure(brute.iter().any(|r| &r.vector == v), || {
                        format!("n = {n}, a = {a}: basis vector {v:?} missing from the oracle")
                    })?;
                }
            }
            relations += brute.len();
        }
    }
    Ok(format!("{relations} bounded relations inside the lattice with matching parity"))
}

fn pst_reproduction() -> Outcome {
    let p = Precision::default();
    let f2 = fidelity(&spec(2), 1, 2, FRAC_PI_2, p).map_err(|e| e.to_string())?;
    let f3 = fidelity(&spec(3), 1, 3, PI / SQRT_2, p).map_err(|e| e.to_string())?;
    ensure(f2 >= 1.0 - PST_TOLERANCE, || format!("P2 fidelity {f2}"))?;
    ensure(f3 >= 1.0 - PST_TOLERANCE, || format!("P3 fidelity {f3}"))?;
    let mut maxima = Vec::new();
    for n in 4..=10usize {
        let r = max_fidelity_scan(&spec(n), 1, n, 100.0, 1e-3, DEFAULT_REFINE_ITERATIONS)
            .map_err(|e| e.to_string())?;
        ensure(r.best_fidelity < 1.0 - PST_TOLERANCE, || {
            format!("n = {n} reaches {} at t = {}", r.best_fidelity, r.best_t)
        })?;
        maxima.push(format!("{:.5}", r.best_fidelity));
    }
    Ok(format!("P2, P3 perfect; n = 4..10 end maxima on [0, 100]: {}", maxima.join(" ")))
}

fn pgst_evidence() -> Outcome {
    let s = spec(11);
    let mut best = Vec::new();
    for &t_max in &PGST_HORIZONS {
        let r = max_fidelity_scan(&s, 2, 10, t_max, PGST_STEP, DEFAULT_REFINE_ITERATIONS)
            .map_err(|e| e.to_string())?;
        best.push(r.best_fidelity);
    }
    ensure(best.windows(2).all(|w| w[0] <= w[1]), || format!("running maxima {best:?} decrease"))?;
    let last = *best.last().expect("horizons");
    ensure(last > PGST_THRESHOLD, || format!("max {last} at T = 1e4 not above {PGST_THRESHOLD}"))?;
    let shown: Vec<String> = best.iter().map(|f| format!("{f:.6}")).collect();
    Ok(format!("maxima at T = 1e2, 1e3, 1e4: {}", shown.join(", ")))
}

fn numerical_invariants() -> Outcome {
    let p = Precision::default();
    // unitarity
    for n in 1..=30usize {
        for a in [1, (n + 1) / 2, n] {
            for t in [0.5, 7.25, 333.0] {
                let amps = evolve(&spec(n), a, t, p).map_err(|e| e.to_string())?;
                let total: f64 = amps
                    .iter()
                    .map(|z| {
                        let (re, im) = z.to_f64_pair();
                        re * re + im * im
                    })
                    .sum();
                ensure((total - 1.0).abs() < UNITARITY_TOLERANCE, || {
                    format!("n = {n}, a = {a}, t = {t}: total probability {total}")
                })?;
            }
        }
    }
    // symmetry and reflection
    for n in [5usize, 8, 13, 20] {
        let s = spec(n);
        for (a, b) in [(1, 2), (2, n - 1), (3, n)] {
            for t in [1.3, 42.0] {
                let f = fidelity(&s, a, b, t, p).map_err(|e| e.to_string())?;
                let swapped = fidelity(&s, b, a, t, p).map_err(|e| e.to_string())?;
                let reflected = fidelity(&s, n + 1 - a, n + 1 - b, t, p).map_err(|e| e.to_string())?;
                ensure((f - swapped).abs() < SYMMETRY_TOLERANCE && (f - reflected).abs() < SYMMETRY_TOLERANCE, || {
                    format!("n = {n}, ({a}, {b}), t = {t}: {f} {swapped} {reflected}")
                })?;
            }
        }
    }
    // sum_j E_j = I
    let mut ctx = HpContext::new(p);
    for n in 1..=16usize {
        let s = spec(n);
        for a in 1..=n {
            for b in a..=n {
                let mut acc = ctx.zero();
                for j in 1..=n {
                    let e = s.idempotent_entry(j, a, b, &mut ctx).map_err(|e| e.to_string())?;
                    acc = ctx.add(&acc, &e);
                }
                let expected = if a == b { 1.0 } else { 0.0 };
                let got = to_f64(&acc);
                ensure((got - expected).abs() < COMPLETENESS_TOLERANCE, || {
                    format!("n = {n}: (sum E_j)[{a}][{b}] = {got}")
                })?;
            }
        }
    }
    // Phi_{2^(k+1) p}(x) = sum_i (-1)^i x^(2^k i)
    for k in 0..=5u32 {
        for p in [3usize, 5, 7, 11, 13] {
            let step = 1usize << k;
            let mut coeffs = vec![BigInt::zero(); step * (p - 1) + 1];
            for i in 0..p {
                coeffs[step * i] = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
            let expected = IntPoly::from_coeffs(coeffs);
            let order = 2 * step * p;
            let phi = cyclotomic_poly(order).map_err(|e| e.to_string())?;
            ensure(*phi == expected, || format!("Phi_{order} = {phi}, expected {expected}"))?;
        }
    }
    Ok("unitarity, symmetry, idempotent completeness, cyclotomic closed form".into())
}

fn coefficient_identity() -> Outcome {
    for (n, a) in [(11usize, 2usize), (11, 4), (19, 2), (23, 4), (47, 8)] {
        let ok = coefficient_identity_check(&spec(n), a).map_err(|e| e.to_string())?;
        ensure(ok, || format!("identity fails for n = {n}, a = {a}"))?;
    }
    Ok("l_j = l_(m-j) on even j for all five pairs".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("end-vertex classification", end_vertex_classification),
        ("2^t p - 1 sufficiency", theorem2_sufficiency),
        ("internal-yes / ends-no exhibit", headline_exhibit),
        ("negative certificate", negative_certificate),
        ("oracle equivalence", oracle_equivalence),
        ("perfect transfer reproduction", pst_reproduction),
        ("pretty good transfer evidence", pgst_evidence),
        ("numerical invariants", numerical_invariants),
        ("coefficient identity", coefficient_identity),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
