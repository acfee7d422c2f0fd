//! Integer kernel through a Hermite normal form with transformation.
//!
//! For an `r x c` matrix `M` we row-reduce `B = M^T` (one row per column of
//! `M`) by unimodular operations `U B = H`, tracking `U`. Rows of `U` whose
//! image in `H` vanishes span the left kernel of `B`, i.e. the right kernel of
//! `M`. Because `U` is invertible over the integers and the nonzero rows of
//! `H` are in echelon form, those rows generate every integer solution, not
//! just a full-rank sublattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

struct WorkRow {
    image: Vec<BigInt>,
    transform: Vec<BigInt>,
}

impl WorkRow {
    fn sub_scaled(&mut self, other: &WorkRow, q: &BigInt, from: usize) {
        for (x, y) in self.image[from..].iter_mut().zip(&other.image[from..]) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        for (x, y) in self.transform.iter_mut().zip(&other.transform) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    fn negate(&mut self) {
        for x in self.image.iter_mut().chain(self.transform.iter_mut()) {
            *x = -std::mem::take(x);
        }
    }
}

/// `round(a / b)` for `b != 0`, halves rounded up.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (num, den) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    (&num * &two + &den).div_floor(&(&den * &two))
}

/// Generating set of `{v in Z^cols : M v = 0}` with the row-reduced
/// echelon image. Returns the kernel rows of the transformation matrix.
pub(crate) fn hermite_kernel(matrix: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut work: Vec<WorkRow> = (0..cols)
        .map(|i| {
            let mut transform = vec![BigInt::zero(); cols];
            transform[i] = BigInt::from(1);
            WorkRow {
                image: (0..rows).map(|k| matrix.entry(k, i).clone()).collect(),
                transform,
            }
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..rows {
        if pivot_row == cols {
            break;
        }
        let mut has_pivot = false;
        loop {
            // smallest nonzero magnitude, earliest row on ties
            let best = (pivot_row..cols)
                .filter(|&i| !work[i].image[col].is_zero())
                .min_by(|&i, &j| work[i].image[col].abs().cmp(&work[j].image[col].abs()));
            let Some(best) = best else { break };
            work.swap(pivot_row, best);
            has_pivot = true;

            let (head, tail) = work.split_at_mut(pivot_row + 1);
            let pivot = &head[pivot_row];
            let mut cleared = true;
            for row in tail.iter_mut() {
                if row.image[col].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&row.image[col], &pivot.image[col]);
                row.sub_scaled(pivot, &q, col);
                if !row.image[col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if work[pivot_row].image[col].is_negative() {
            work[pivot_row].negate();
        }
        // reduce entries above the pivot into [0, pivot)
        let (head, tail) = work.split_at_mut(pivot_row);
        let pivot = &tail[0];
        for row in head.iter_mut() {
            let q = row.image[col].div_floor(&pivot.image[col]);
            if !q.is_zero() {
                row.sub_scaled(pivot, &q, 0);
            }
        }
        pivot_row += 1;
    }

    work.into_iter()
        .skip(pivot_row)
        .map(|row| {
            debug_assert!(row.image.iter().all(Zero::is_zero));
            row.transform
        })
        .collect()
}
