//! Reduced row echelon form over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form of a rational matrix. Pivot rows come first and
/// have a leading one; zero rows are dropped.
#[derive(Debug, Clone)]
pub struct Rref {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Rref {
    pub fn of_integer_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                debug_assert_eq!(r.len(), cols);
                r.iter().map(|x| BigRational::from_integer(x.clone())).collect()
            })
            .collect();
        Rref::new(rows, cols)
    }

    pub fn new(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for k in c..cols {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Rref { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.rows[i]
    }
}

/// Solves `sum_i c_i * vectors[i] = target` over the rationals; `None` when
/// the target is outside the span. Coefficients of a dependent family are not
/// unique; free ones are set to zero.
pub fn solve_combination(vectors: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = vectors.len();
    let dim = target.len();
    // augmented system: one row per coordinate, columns = vectors + target
    let rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| {
            vectors
                .iter()
                .map(|v| BigRational::from_integer(v[r].clone()))
                .chain(std::iter::once(BigRational::from_integer(target[r].clone())))
                .collect()
        })
        .collect();
    let rref = Rref::new(rows, k + 1);
    if rref.pivots().last() == Some(&k) {
        return None;
    }
    let mut coeffs = vec![BigRational::zero(); k];
    for (i, &p) in rref.pivots().iter().enumerate() {
        debug_assert!(rref.row(i)[p].is_one());
        coeffs[p] = rref.row(i)[k].clone();
    }
    Some(coeffs)
}
