//! Numeric pseudo-orthonormal frames at a point.

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

fn pair(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let d = u.len();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            acc += g[i][j] * u[i] * v[j];
        }
    }
    acc
}

/// Frame `e_1..e_d` with `g(e_i, e_j) = ε_i δ_ij`, `ε_i = ±1`, by Gram–Schmidt
/// in the indefinite metric. Candidates start as the coordinate basis; a null
/// candidate is replaced by its sum with a partner it pairs with.
pub fn pseudo_orthonormal_frame(g: &[Vec<f64>]) -> Result<Vec<(Vec<f64>, f64)>> {
    let d = g.len();
    let mut cand: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut out: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d);
    while !cand.is_empty() {
        let scale = cand
            .iter()
            .map(|v| v.iter().map(|x| x * x).sum::<f64>())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let pick = (0..cand.len()).find(|&k| pair(g, &cand[k], &cand[k]).abs() > TOL * scale);
        let k = match pick {
            Some(k) => k,
            None => {
                let (a, b) = (0..cand.len())
                    .flat_map(|a| (a + 1..cand.len()).map(move |b| (a, b)))
                    .find(|&(a, b)| pair(g, &cand[a], &cand[b]).abs() > TOL * scale)
                    .ok_or_else(|| Error::Degenerate("metric is degenerate at the sample point".into()))?;
                let sum: Vec<f64> = cand[a].iter().zip(&cand[b]).map(|(x, y)| x + y).collect();
                cand[a] = sum;
                a
            }
        };
        let v = cand.remove(k);
        let n = pair(g, &v, &v);
        let eps = n.signum();
        let e: Vec<f64> = v.iter().map(|x| x / n.abs().sqrt()).collect();
        for c in cand.iter_mut() {
            let p = pair(g, c, &e) * eps;
            for (ci, ei) in c.iter_mut().zip(&e) {
                *ci -= p * ei;
            }
        }
        out.push((e, eps));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &[Vec<f64>]) {
        let f = pseudo_orthonormal_frame(g).unwrap();
        for (i, (ei, epsi)) in f.iter().enumerate() {
            for (j, (ej, _)) in f.iter().enumerate() {
                let want = if i == j { *epsi } else { 0.0 };
                assert!((pair(g, ei, ej) - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn frames_for_indefinite_metrics() {
        check(&[vec![1.0, 0.0, -1.0], vec![0.0, -1.0, 3.0], vec![-1.0, 3.0, -7.0]]);
        check(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 2.0]]);
        check(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(pseudo_orthonormal_frame(&[vec![0.0, 0.0], vec![0.0, 1.0]]).is_err());
    }
}
