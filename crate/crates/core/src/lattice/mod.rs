//! The lattice of integer relations among path eigenvalues.
//!
//! For a vertex `a` with support `S`, a relation is an integer vector
//! `(l_j)_{j in S}` with `sum l_j theta_j = 0` and `sum l_j = 0`. Writing each
//! `theta_j` in integer power-basis coordinates turns both conditions into a
//! homogeneous integer linear system, whose integer kernel is the lattice.

mod hnf;
mod lll;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::PowerTable;
use crate::error::{PgstError, Result};
use crate::rational::solve_combination;
use crate::spectrum::PathSpec;

/// Dense integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PgstError::RaggedMatrix);
        }
        Ok(IntMatrix { cols, rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn row_slices(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Basis of the integer kernel `{v : M v = 0}`: Hermite-form kernel, then
/// LLL size reduction, then each vector's first nonzero entry made positive.
/// Empty when the kernel is trivial.
pub fn integer_kernel(matrix: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut basis = hnf::hermite_kernel(matrix);
    lll::lll_reduce(&mut basis);
    for v in basis.iter_mut() {
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in v.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    basis
}

/// Constraint matrix over the support of `a`: one row per nonzero power-basis
/// coordinate of the eigenvalues, plus the all-ones row.
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    support: Vec<usize>,
    matrix: IntMatrix,
}

impl RelationMatrix {
    pub fn assemble(spec: &PathSpec, a: usize) -> Result<Self> {
        let support = spec.eigenvalue_support(a)?.indices().to_vec();
        let m = spec.m();
        let table = PowerTable::new(2 * m)?;
        let columns: Vec<Vec<BigInt>> = support.iter().map(|&j| table.theta(j).coords().to_vec()).collect();
        let dim = columns.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<BigInt>> = (0..dim)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect::<Vec<_>>())
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        rows.push(vec![BigInt::one(); support.len()]);
        let matrix = IntMatrix::new(support.len(), rows)?;
        Ok(RelationMatrix { support, matrix })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    n: usize,
    a: usize,
    support: Vec<usize>,
    basis: Vec<Vec<BigInt>>,
}

impl RelationLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex(&self) -> usize {
        self.a
    }

    /// Eigenvalue indices labelling the coordinates of every basis vector.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The same lattice presented by another basis. The caller vouches that
    /// `basis` is a unimodular recombination of the current one.
    pub fn with_basis(&self, basis: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != self.support.len()) {
            return Err(PgstError::IndexMismatch {
                expected: self.support.len(),
                got: v.len(),
            });
        }
        Ok(RelationLattice { basis, ..self.clone() })
    }

    /// Integer coefficients expressing `v` in the basis, if `v` lies in the
    /// lattice.
    pub fn coefficients_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.support.len() {
            return None;
        }
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let coeffs = solve_combination(&self.basis, v)?;
        coeffs
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coefficients_of(v).is_some()
    }

    /// Full-length vector over `1..=n`, zero off the support.
    pub fn expand(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); self.n];
        for (&j, x) in self.support.iter().zip(v) {
            full[j - 1] = x.clone();
        }
        full
    }
}

pub fn relation_lattice(spec: &PathSpec, a: usize) -> Result<RelationLattice> {
    let rel = RelationMatrix::assemble(spec, a)?;
    let basis = integer_kernel(rel.matrix());
    for v in &basis {
        if rel.matrix().mul_vec(v).iter().any(|x| !x.is_zero()) {
            return Err(PgstError::Invariant(format!(
                "kernel vector fails the relation system for n = {}, a = {a}",
                spec.n()
            )));
        }
    }
    Ok(RelationLattice {
        n: spec.n(),
        a,
        support: rel.support,
        basis,
    })
}
