//! Closed-form spectral data of the path `P_n`.
//!
//! Vertices are `1..=n`, eigenvalues are indexed `1..=n` in decreasing order
//! (`theta_j = 2 cos(pi j / m)` with `m = n + 1`), and the `j`-th eigenvector
//! has unnormalized entries `sin(k j pi / m)`. Its squared norm is `m / 2`, so
//! the spectral idempotent has entries
//! `(E_j)_{ab} = (2/m) sin(a j pi / m) sin(b j pi / m)`.
//!
//! Everything combinatorial here (supports, signs, cospectrality) is decided
//! with integer arithmetic only.

use std::collections::BTreeMap;

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use crate::error::{PgstError, Result};
use crate::hp::{to_f64, HpContext};

/// The path graph on `n >= 1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathSpec {
    n: usize,
}

impl PathSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(PgstError::EmptyPath(n));
        }
        Ok(PathSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m = n + 1`, the denominator of every spectral angle.
    pub fn m(&self) -> usize {
        self.n + 1
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex == 0 || vertex > self.n {
            return Err(PgstError::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(PgstError::IndexOutOfRange { index: j, max: self.n });
        }
        Ok(())
    }

    /// Mirror image `n + 1 - a` of a vertex.
    pub fn partner(&self, a: usize) -> Result<usize> {
        self.check_vertex(a)?;
        Ok(self.m() - a)
    }

    pub fn eigenvalues(&self) -> Vec<PathEigenvalue> {
        (1..=self.n)
            .map(|j| PathEigenvalue { j, m: self.m() })
            .collect()
    }

    pub fn eigenvalue(&self, j: usize) -> Result<PathEigenvalue> {
        self.check_index(j)?;
        Ok(PathEigenvalue { j, m: self.m() })
    }

    /// Unnormalized eigenvector entry `sin(k j pi / m)`.
    pub fn eigenvector_entry(&self, j: usize, k: usize, ctx: &mut HpContext) -> Result<BigFloat> {
        self.check_index(j)?;
        self.check_vertex(k)?;
        Ok(ctx.sin_pi_ratio((k * j) as i64, self.m() as u64))
    }

    /// Entry `(E_j)_{ab}` of the spectral idempotent.
    pub fn idempotent_entry(
        &self,
        j: usize,
        a: usize,
        b: usize,
        ctx: &mut HpContext,
    ) -> Result<BigFloat> {
        let sa = self.eigenvector_entry(j, a, ctx)?;
        let sb = self.eigenvector_entry(j, b, ctx)?;
        let norm = ctx.div(&ctx.from_u64(2), &ctx.from_u64(self.m() as u64));
        Ok(ctx.mul(&norm, &ctx.mul(&sa, &sb)))
    }

    /// Indices `j` with `E_j |a> != 0`, i.e. `m` does not divide `a j`.
    pub fn eigenvalue_support(&self, a: usize) -> Result<SupportSet> {
        self.check_vertex(a)?;
        let m = self.m();
        let indices = (1..=self.n).filter(|&j| (a * j) % m != 0).collect();
        Ok(SupportSet { a, m, indices })
    }

    pub fn strong_cospectral(&self, a: usize, b: usize) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(a + b == self.m())
    }

    /// Sign bits comparing `E_j|a>` with `E_j|n+1-a>` over the support of `a`.
    ///
    /// `sin((m - a) j pi / m) = (-1)^(j+1) sin(a j pi / m)`, so the images
    /// agree for odd `j` and are opposite for even `j`.
    pub fn sigma_vector(&self, a: usize) -> Result<SigmaVector> {
        let support = self.eigenvalue_support(a)?;
        let entries = support
            .indices
            .iter()
            .map(|&j| (j, if j % 2 == 0 { 1 } else { 0 }))
            .collect();
        Ok(SigmaVector { a, entries })
    }
}

/// Exact descriptor of `theta_j = 2 cos(pi j / m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathEigenvalue {
    j: usize,
    m: usize,
}

impl PathEigenvalue {
    pub fn index(&self) -> usize {
        self.j
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn value(&self, ctx: &mut HpContext) -> BigFloat {
        let c = ctx.cos_pi_ratio(self.j as i64, self.m as u64);
        ctx.add(&c, &c)
    }

    pub fn to_f64(&self) -> f64 {
        // reuse the exact reduction; 64 bits is plenty for a double
        let mut ctx = HpContext::new(crate::hp::Precision::new(64).expect("64 bits is valid"));
        to_f64(&self.value(&mut ctx))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    a: usize,
    m: usize,
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn vertex(&self) -> usize {
        self.a
    }

    /// Ascending eigenvalue indices in the support.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        j >= 1 && j < self.m && (self.a * j) % self.m != 0
    }

    /// Position of `j` within [`SupportSet::indices`].
    pub fn position(&self, j: usize) -> Option<usize> {
        self.indices.binary_search(&j).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVector {
    a: usize,
    entries: BTreeMap<usize, u8>,
}

impl SigmaVector {
    pub fn vertex(&self) -> usize {
        self.a
    }

    pub fn get(&self, j: usize) -> Option<u8> {
        self.entries.get(&j).copied()
    }

    pub fn entries(&self) -> &BTreeMap<usize, u8> {
        &self.entries
    }

    /// Bits in support order.
    pub fn bits(&self) -> Vec<u8> {
        self.entries.values().copied().collect()
    }
}
