// Integral LLL (Lovasz constant 3/4) following H. Cohen, "A Course in
// Computational Algebraic Number Theory", Algorithm 2.6.7. All Gram-Schmidt
// data is kept as integers (d_i are Gram determinants, lambda_{k,j} = d_j mu_{k,j}),
// so every division below is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

struct Reducer<'a> {
    // 1-based views: b[k - 1] is Cohen's b_k
    b: &'a mut Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
    k_max: usize,
}

impl Reducer<'_> {
    fn size_reduce(&mut self, k: usize, l: usize) {
        let two_lambda: BigInt = &self.lambda[k][l] * 2;
        if two_lambda.abs() <= self.d[l] {
            return;
        }
        // q = round(lambda / d_l)
        let q = (&two_lambda + &self.d[l]).div_floor(&(&self.d[l] * 2));
        let bl = self.b[l - 1].clone();
        for (x, y) in self.b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        let dl = self.d[l].clone();
        self.lambda[k][l] -= &q * &dl;
        for i in 1..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize) {
        self.b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let big_b = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=self.k_max {
            let t = self.lambda[i][k].clone();
            let new_ik = (&self.d[k] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k - 1];
            let new_ik1 = (&big_b * &t + &lam * &new_ik) / &self.d[k];
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k - 1] = big_b;
    }

    fn extend_gram_schmidt(&mut self, k: usize) {
        for j in 1..=k {
            let mut u = dot(&self.b[k - 1], &self.b[j - 1]);
            for i in 1..j {
                u = (&self.d[i] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i - 1];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                assert!(!u.is_zero(), "LLL input vectors are linearly dependent");
                self.d[k] = u;
            }
        }
    }

    fn lovasz_fails(&self, k: usize) -> bool {
        let lhs = &self.d[k] * &self.d[k - 2] * 4;
        let lam = &self.lambda[k][k - 1];
        let rhs = &self.d[k - 1] * &self.d[k - 1] * 3 - lam * lam * 4;
        lhs < rhs
    }
}

/// LLL-reduces a basis of linearly independent integer vectors in place.
pub(crate) fn lll_reduce(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&basis[0], &basis[0]);
    let mut r = Reducer {
        b: basis,
        d,
        lambda: vec![vec![BigInt::zero(); n + 1]; n + 1],
        k_max: 1,
    };
    let mut k = 2;
    while k <= n {
        if k > r.k_max {
            r.k_max = k;
            r.extend_gram_schmidt(k);
        }
        loop {
            r.size_reduce(k, k - 1);
            if r.lovasz_fails(k) {
                r.swap(k);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    r.size_reduce(k, l);
                }
                k += 1;
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn textbook_example() {
        // Cohen's worked example; the reduced basis starts with (0, 1, 0)
        let mut b = ints(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        lll_reduce(&mut b);
        let norms: Vec<BigInt> = b.iter().map(|v| dot(v, v)).collect();
        assert_eq!(norms[0], BigInt::from(1));
        // determinant preserved up to sign: |det| = 3
        let det = |m: &Vec<Vec<BigInt>>| {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        };
        assert_eq!(det(&b).abs(), BigInt::from(3));
    }

    #[test]
    fn shrinks_skewed_basis() {
        let mut b = ints(&[&[1, 0], &[1_000_001, 1]]);
        lll_reduce(&mut b);
        assert!(b.iter().all(|v| dot(v, v) <= BigInt::from(2)));
    }
}
