//! Small exact integer linear algebra: determinants, rank, Cramer solving
//! and integer kernel bases. Everything is fraction-free over `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn to_bigint(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by the Bareiss fraction-free algorithm.
pub fn det_bigint(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn det_i64(a: &[Vec<i64>]) -> BigInt {
    det_bigint(to_bigint(a))
}

/// Rank over the rationals, computed fraction-free.
pub fn rank_i64(a: &[Vec<i64>]) -> usize {
    let mut m = to_bigint(a);
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let f1 = m[r][c].clone();
                let f2 = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = &m[i][j] * &f1 - &m[r][j] * &f2;
                }
            }
            r += 1;
        }
    }
    r
}

/// Solves `x * mat = rhs` for a row vector with integer entries, assuming
/// `mat` is square and invertible. Returns `None` when the rational solution
/// is not integral.
pub fn solve_integral_row(mat: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let m = mat.len();
    // x * mat = rhs  <=>  mat^T x^T = rhs^T.
    let at: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from(mat[j][i])).collect())
        .collect();
    let det = det_bigint(at.clone());
    if det.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut aj = at.clone();
        for (i, row) in aj.iter_mut().enumerate() {
            row[j] = BigInt::from(rhs[i]);
        }
        let dj = det_bigint(aj);
        let (q, r) = num_integer::div_rem(dj, det.clone());
        if !r.is_zero() {
            return None;
        }
        out.push(i64::try_from(&q).expect("solution entry exceeds i64"));
    }
    Some(out)
}

/// Basis of the integer kernel lattice {x : A x = 0} of an r-by-c matrix,
/// obtained by Hermite-style row reduction of A^T with a tracked unimodular
/// transform. The returned vectors generate the full (saturated) kernel.
pub fn integer_kernel(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let r = a.len();
    let c = cols;
    debug_assert!(a.iter().all(|row| row.len() == c));
    let mut m: Vec<Vec<BigInt>> = (0..c)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|j| BigInt::from(a[j][i])).collect();
            row.extend((0..c).map(|k| {
                if k == i {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let width = r + c;
    let mut row = 0;
    for col in 0..r {
        if row >= c {
            break;
        }
        loop {
            let piv = (row..c)
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].abs());
            let Some(p) = piv else { break };
            m.swap(row, p);
            let mut cleared = true;
            for i in row + 1..c {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = &m[i][col] / &m[row][col];
                if !q.is_zero() {
                    for j in 0..width {
                        let t = &m[row][j] * &q;
                        m[i][j] -= t;
                    }
                }
                if !m[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                row += 1;
                break;
            }
        }
    }
    m[row..]
        .iter()
        .map(|mr| {
            mr[r..]
                .iter()
                .map(|b| i64::try_from(b).expect("kernel entry exceeds i64"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det_i64(&[vec![0, 1], vec![-1, 0]]), BigInt::from(1));
        assert_eq!(det_i64(&[vec![0, 2], vec![-2, 0]]), BigInt::from(4));
        assert_eq!(det_i64(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        assert_eq!(
            det_i64(&[vec![2, 0, 1], vec![1, 3, 2], vec![0, 1, 4]]),
            BigInt::from(2 * (3 * 4 - 2) - 0 + (1 - 0))
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_i64(&[vec![0, 1], vec![-1, 0]]), 2);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_i64(&[vec![0, 1], vec![-1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn cramer_solving() {
        // x * [[0,1],[-1,0]] = (0,1) has solution x = (1,0).
        let lam = vec![vec![0, 1], vec![-1, 0]];
        assert_eq!(solve_integral_row(&lam, &[0, 1]), Some(vec![1, 0]));
        assert_eq!(solve_integral_row(&lam, &[-1, 0]), Some(vec![0, 1]));
        // Non-integral solution is rejected.
        let two = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(solve_integral_row(&two, &[1, 0]), None);
        assert_eq!(solve_integral_row(&two, &[2, 4]), Some(vec![1, 2]));
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of (2 1 1) contains (1,0,-2), which is not in the span of
        // naive cleared-denominator vectors; the HNF kernel must produce it.
        let a = vec![vec![2, 1, 1]];
        let basis = integer_kernel(&a, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert_eq!(2 * v[0] + v[1] + v[2], 0);
        }
        // (1,0,-2) must be an integer combination of the basis.
        let target = [1i64, 0, -2];
        let found = (-3..=3).any(|x: i64| {
            (-3..=3).any(|y: i64| {
                (0..3).all(|k| x * basis[0][k] + y * basis[1][k] == target[k])
            })
        });
        assert!(found);

        let full_rank = vec![vec![0, 1], vec![-1, 0]];
        assert!(integer_kernel(&full_rank, 2).is_empty());
    }
}
