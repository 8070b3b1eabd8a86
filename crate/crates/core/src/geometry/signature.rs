//! Signature of a symmetric matrix by congruence diagonalization.

use crate::error::{Error, Result};
use crate::symbolic::JetCoeff;

/// Counts positive and negative squares of a nondegenerate symmetric matrix.
/// Uses symmetric Gaussian elimination; a zero diagonal with a nonzero
/// off-diagonal entry is resolved by the congruence `e_i ← e_i + e_j`.
pub fn signature<C: JetCoeff>(m: &[Vec<C>]) -> Result<(usize, usize)> {
    let mut a: Vec<Vec<C>> = m.to_vec();
    let n = a.len();
    let (mut plus, mut minus) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                swap(&mut a, k, p);
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // row/column k += row/column p gives diagonal 2 a_kp
                for j in 0..n {
                    let v = a[k][j].add(&a[p][j]);
                    a[k][j] = v;
                }
                for i in 0..n {
                    let v = a[i][k].add(&a[i][p]);
                    a[i][k] = v;
                }
            } else {
                return Err(Error::Degenerate(format!("metric is degenerate in direction {k}")));
            }
        }
        let piv = a[k][k].clone();
        let inv = piv.inv().ok_or_else(|| Error::Degenerate("zero pivot".into()))?;
        if piv.to_f64() > 0.0 {
            plus += 1;
        } else {
            minus += 1;
        }
        for i in k + 1..n {
            let f = a[i][k].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a[i][j].sub(&f.mul(&a[k][j]));
                a[i][j] = v;
            }
        }
        for i in k + 1..n {
            a[k][i] = C::zero();
            a[i][k] = C::zero();
        }
        // restore symmetry of the trailing block
        for i in k + 1..n {
            for j in i + 1..n {
                let v = a[i][j].clone();
                a[j][i] = v;
            }
        }
    }
    Ok((plus, minus))
}

fn swap<C: Clone>(a: &mut [Vec<C>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(signature(&m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])).unwrap(), (2, 1));
        assert!(signature(&m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_err());
    }

    #[test]
    fn example_metric_at_base_point() {
        // g at (1,1,0): [[1,0,-1],[0,-1,3],[-1,3,-7]]
        assert_eq!(signature(&m(&[&[1, 0, -1], &[0, -1, 3], &[-1, 3, -7]])).unwrap(), (2, 1));
    }

    #[test]
    fn zero_diagonal_block() {
        assert_eq!(signature(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap(), (2, 1));
        assert_eq!(signature(&m(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1));
        let f: Vec<Vec<f64>> = vec![vec![0.0, 2.0], vec![2.0, 0.0]];
        assert_eq!(signature(&f).unwrap(), (1, 1));
    }
}
