//! Exact decision of pretty good state transfer between two vertices of a path.
//!
//! Transfer from `a` to `b` needs `a + b = n + 1` (strong cospectrality) and
//! that every integer relation `l` among the eigenvalues in the support of `a`
//! (`sum l_j theta_j = 0`, `sum l_j = 0`) has `sum l_j sigma_j` even. The map
//! `l -> sum l_j sigma_j mod 2` is additive, so it vanishes on the lattice iff
//! it vanishes on a basis; the verdict only inspects the computed basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{PgstError, Result};
use crate::lattice::{relation_lattice, RelationLattice};
use crate::spectrum::{PathSpec, SigmaVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    NotCospectral,
    ParityViolation,
    AllParitiesEven,
    TrivialSameVertex,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::NotCospectral => "not_cospectral",
            Reason::ParityViolation => "parity_violation",
            Reason::AllParitiesEven => "all_parities_even",
            Reason::TrivialSameVertex => "trivial_same_vertex",
        }
    }
}

/// A relation vector together with the eigenvalue indices it is written over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub support: Vec<usize>,
    #[serde(with = "crate::report::exact_ints")]
    pub coefficients: Vec<BigInt>,
}

impl Witness {
    /// Full-length vector over `1..=n`, zero off the support.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); n];
        for (&j, x) in self.support.iter().zip(&self.coefficients) {
            full[j - 1] = x.clone();
        }
        full
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisParity {
    pub vector: Vec<BigInt>,
    pub parity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgstVerdict {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub answer: Answer,
    pub reason: Reason,
    /// Present exactly when `reason` is [`Reason::ParityViolation`].
    pub witness: Option<Witness>,
    /// Parity of every lattice basis vector, whenever the lattice was computed.
    pub parities: Vec<BasisParity>,
}

/// `sum_j l_j sigma_j mod 2`, both vectors in support order.
pub fn sigma_parity(sigma_bits: &[u8], relation: &[BigInt]) -> u8 {
    let odd = sigma_bits
        .iter()
        .zip(relation)
        .filter(|(&s, l)| s == 1 && l.is_odd())
        .count();
    (odd % 2) as u8
}

/// Parity verdict for `a -> b = n + 1 - a` from an explicit lattice basis.
pub fn verdict_from_lattice(lattice: &RelationLattice, sigma: &SigmaVector) -> PgstVerdict {
    let bits = sigma.bits();
    let parities: Vec<BasisParity> = lattice
        .basis()
        .iter()
        .map(|v| BasisParity {
            vector: v.clone(),
            parity: sigma_parity(&bits, v),
        })
        .collect();
    let witness = parities.iter().find(|p| p.parity == 1).map(|p| Witness {
        support: lattice.support().to_vec(),
        coefficients: p.vector.clone(),
    });
    let (answer, reason) = if witness.is_some() {
        (Answer::No, Reason::ParityViolation)
    } else {
        (Answer::Yes, Reason::AllParitiesEven)
    };
    let n = lattice.n();
    PgstVerdict {
        n,
        a: lattice.vertex(),
        b: n + 1 - lattice.vertex(),
        answer,
        reason,
        witness,
        parities,
    }
}

pub fn decide_pgst(spec: &PathSpec, a: usize, b: usize) -> Result<PgstVerdict> {
    spec.check_vertex(a)?;
    spec.check_vertex(b)?;
    let n = spec.n();
    let short = |answer, reason| PgstVerdict {
        n,
        a,
        b,
        answer,
        reason,
        witness: None,
        parities: Vec::new(),
    };
    if a == b {
        return Ok(short(Answer::Yes, Reason::TrivialSameVertex));
    }
    if !spec.strong_cospectral(a, b)? {
        return Ok(short(Answer::No, Reason::NotCospectral));
    }
    let lattice = relation_lattice(spec, a)?;
    let sigma = spec.sigma_vector(a)?;
    Ok(verdict_from_lattice(&lattice, &sigma))
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Known classification of end-to-end transfer: `n + 1` is a prime, twice an
/// odd prime, or a power of two.
pub fn end_vertex_rule(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(PgstError::EndRuleDomain(n));
    }
    let m = n + 1;
    Ok(is_prime(m) || (m % 2 == 0 && is_prime(m / 2)) || m.is_power_of_two())
}

/// `(t, p)` with `n + 1 = 2^t p`, `t >= 1` and `p` an odd prime.
pub fn theorem2_family(n: usize) -> Option<(u32, usize)> {
    let m = n.checked_add(1)?;
    let t = m.trailing_zeros();
    let p = m >> t;
    (t >= 1 && p > 2 && is_prime(p)).then_some((t, p))
}

/// True when `n = 2^t p - 1` and `2^(t-1)` divides `a`: the pair
/// `(a, n + 1 - a)` is then guaranteed to admit transfer.
pub fn theorem2_predicate(n: usize, a: usize) -> bool {
    match theorem2_family(n) {
        Some((t, _)) => a >= 1 && a <= n && a % (1usize << (t - 1)) == 0,
        None => false,
    }
}
