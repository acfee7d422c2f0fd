//! Exhaustive bounded search for eigenvalue relations, kept independent of
//! the Hermite/LLL kernel so the two can check each other.
//!
//! The constraint system is assembled straight from [`theta_coordinates`]
//! and brought to reduced row echelon form over the rationals. Every bounded
//! integer solution has bounded free coordinates, so walking the free
//! coordinates through `[-bound, bound]` in lexicographic order and solving
//! for the pivots finds all of them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::{theta_coordinates, CycloCoordinates};
use crate::decider::theorem2_predicate;
use crate::error::{PgstError, Result};
use crate::lattice::relation_lattice;
use crate::rational::Rref;
use crate::spectrum::PathSpec;

pub const ENUMERATION_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceRelation {
    pub support: Vec<usize>,
    pub vector: Vec<BigInt>,
    /// Result of [`verify_relation`] on `vector`.
    pub verified: bool,
}

fn constraint_rows(m: usize, support: &[usize]) -> Result<Vec<Vec<BigInt>>> {
    let columns = support
        .iter()
        .map(|&j| theta_coordinates(m, j))
        .collect::<Result<Vec<_>>>()?;
    let dim = columns.first().map_or(0, |c| c.coords().len());
    let mut rows: Vec<Vec<BigInt>> = (0..dim)
        .map(|r| columns.iter().map(|c| c.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![BigInt::one(); support.len()]);
    Ok(rows)
}

/// `sum l_j theta_j = 0` exactly and `sum l_j = 0`, with `l` indexed by the
/// support of `a`.
pub fn verify_relation(spec: &PathSpec, a: usize, relation: &[BigInt]) -> Result<bool> {
    let support = spec.eigenvalue_support(a)?;
    if relation.len() != support.len() {
        return Err(PgstError::IndexMismatch {
            expected: support.len(),
            got: relation.len(),
        });
    }
    if !relation.iter().sum::<BigInt>().is_zero() {
        return Ok(false);
    }
    let m = spec.m();
    let mut acc = CycloCoordinates::zero(2 * m);
    for (&j, l) in support.indices().iter().zip(relation) {
        if !l.is_zero() {
            acc.add_scaled(&theta_coordinates(m, j)?, l);
        }
    }
    Ok(acc.is_zero())
}

/// Pivot row `x_p = -(sum_f num_f x_f) / den` with integer data.
struct PivotRow {
    column: usize,
    den: i64,
    terms: Vec<(usize, i64)>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| PgstError::Invariant(format!("echelon entry {x} exceeds 64 bits")))
}

/// Every relation on the support of `a` with entries in `[-bound, bound]`,
/// the zero vector included, in lexicographic order.
pub fn brute_force_relations(spec: &PathSpec, a: usize, bound: u32) -> Result<Vec<BruteForceRelation>> {
    if bound == 0 {
        return Err(PgstError::ZeroBound);
    }
    let support = spec.eigenvalue_support(a)?.indices().to_vec();
    let cols = support.len();
    let rref = Rref::of_integer_rows(&constraint_rows(spec.m(), &support)?, cols);
    let free = rref.free_columns();

    let width = 2 * u128::from(bound) + 1;
    let candidates = u32::try_from(free.len())
        .ok()
        .and_then(|k| width.checked_pow(k))
        .unwrap_or(u128::MAX);
    if candidates > ENUMERATION_LIMIT {
        return Err(PgstError::EnumerationTooLarge {
            candidates,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mut pivot_rows = Vec::with_capacity(rref.rank());
    for (i, &column) in rref.pivots().iter().enumerate() {
        let row = rref.row(i);
        let den = free
            .iter()
            .fold(BigInt::one(), |acc, &f| acc.lcm(row[f].denom()));
        let terms = free
            .iter()
            .enumerate()
            .filter(|&(_, &f)| !row[f].is_zero())
            .map(|(slot, &f)| Ok((slot, small(&(row[f].numer() * (&den / row[f].denom())))?)))
            .collect::<Result<Vec<_>>>()?;
        pivot_rows.push(PivotRow {
            column,
            den: small(&den)?,
            terms,
        });
    }

    let b = i64::from(bound);
    let mut values = vec![-b; free.len()];
    let mut full = vec![0i64; cols];
    let mut found = Vec::new();
    'outer: loop {
        let solvable = pivot_rows.iter().all(|row| {
            let num: i64 = -row.terms.iter().map(|&(slot, c)| c * values[slot]).sum::<i64>();
            if num % row.den != 0 || (num / row.den).abs() > b {
                return false;
            }
            full[row.column] = num / row.den;
            true
        });
        if solvable {
            for (slot, &f) in free.iter().enumerate() {
                full[f] = values[slot];
            }
            let vector: Vec<BigInt> = full.iter().map(|&x| BigInt::from(x)).collect();
            let verified = verify_relation(spec, a, &vector)?;
            found.push(BruteForceRelation {
                support: support.clone(),
                vector,
                verified,
            });
        }
        // odometer, last free coordinate fastest
        for slot in (0..values.len()).rev() {
            if values[slot] < b {
                values[slot] += 1;
                continue 'outer;
            }
            values[slot] = -b;
        }
        break;
    }
    found.sort_by(|x, y| x.vector.cmp(&y.vector));
    Ok(found)
}

/// Every lattice basis vector satisfies `l_j = l_{m-j}` for every even `j` in
/// the support, with `l` read as zero off the support.
pub fn coefficient_identity_check(spec: &PathSpec, a: usize) -> Result<bool> {
    let n = spec.n();
    spec.check_vertex(a)?;
    if !theorem2_predicate(n, a) {
        return Err(PgstError::NotTheoremFamily { n, a });
    }
    let m = spec.m();
    let lattice = relation_lattice(spec, a)?;
    let even: Vec<usize> = lattice.support().iter().copied().filter(|j| j % 2 == 0).collect();
    Ok(lattice.basis().iter().all(|v| {
        let full = lattice.expand(v);
        even.iter().all(|&j| full[j - 1] == full[m - j - 1])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> PathSpec {
        PathSpec::new(n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn p2_has_only_zero() {
        let r = brute_force_relations(&spec(2), 1, 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].vector, ints(&[0, 0]));
        assert!(r[0].verified);
    }

    #[test]
    fn p3_bound_two() {
        let r = brute_force_relations(&spec(3), 1, 2).unwrap();
        let vs: Vec<_> = r.iter().map(|x| x.vector.clone()).collect();
        assert_eq!(vs, vec![ints(&[-1, 2, -1]), ints(&[0, 0, 0]), ints(&[1, -2, 1])]);
        assert!(r.iter().all(|x| x.verified && x.support == vec![1, 2, 3]));
    }

    #[test]
    fn p8_contains_hand_relation() {
        let r = brute_force_relations(&spec(8), 1, 3).unwrap();
        let hand = ints(&[2, 0, -3, 0, 2, -3, 2, 0]);
        let neg: Vec<BigInt> = hand.iter().map(|x| -x).collect();
        assert!(r.iter().any(|x| x.vector == hand));
        assert!(r.iter().any(|x| x.vector == neg));
        assert!(r.iter().all(|x| x.verified));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_relation(&spec(3), 1, &ints(&[1, -2, 1])).unwrap());
        assert!(!verify_relation(&spec(3), 1, &ints(&[1, -1, 0])).unwrap());
        for n in 1..=15 {
            let s = spec(n);
            let len = s.eigenvalue_support(1).unwrap().len();
            assert!(verify_relation(&s, 1, &vec![BigInt::zero(); len]).unwrap());
        }
        assert_eq!(
            verify_relation(&spec(3), 1, &ints(&[1, -1])),
            Err(PgstError::IndexMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn guards() {
        assert_eq!(brute_force_relations(&spec(3), 1, 0), Err(PgstError::ZeroBound));
        assert!(matches!(
            brute_force_relations(&spec(60), 1, 3),
            Err(PgstError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn coefficient_identity_examples() {
        for (n, a) in [(11, 2), (11, 4), (23, 4)] {
            assert!(coefficient_identity_check(&spec(n), a).unwrap(), "n={n} a={a}");
        }
        assert_eq!(
            coefficient_identity_check(&spec(11), 3),
            Err(PgstError::NotTheoremFamily { n: 11, a: 3 })
        );
    }
}
