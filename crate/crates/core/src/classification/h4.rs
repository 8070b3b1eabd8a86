//! Exact linear algebra behind the exclusion of the nilpotent 3-block type.
//!
//! Matrices act on coordinates in a basis `{e1, e2, e3}`; column `j` holds
//! the components of `h e_j`.

use crate::symbolic::{int, Rational};
use num_traits::Zero;

pub type Mat3 = [[Rational; 3]; 3];

/// Metric of a pseudo-orthonormal basis: `g(e1,e2) = g(e3,e3) = 1`.
pub fn pseudo_orthonormal_metric() -> Mat3 {
    let z = || int(0);
    [[z(), int(1), z()], [int(1), z(), z()], [z(), z(), int(1)]]
}

/// `h e1 = λe1 + e3`, `h e2 = λe2`, `h e3 = e2 + λe3`.
pub fn h4_template(lambda: &Rational) -> Mat3 {
    let l = || lambda.clone();
    let z = || int(0);
    [[l(), z(), z()], [z(), l(), int(1)], [int(1), z(), l()]]
}

/// `h e1 = e2` and `h e2 = h e3 = 0`.
pub fn h2_template() -> Mat3 {
    let z = || int(0);
    [[z(), z(), z()], [int(1), z(), z()], [z(), z(), z()]]
}

/// `diag(λ, −λ, 0)` in an orthonormal φ-basis.
pub fn h1_template(lambda: &Rational) -> Mat3 {
    let z = || int(0);
    [[lambda.clone(), z(), z()], [z(), -lambda, z()], [z(), z(), z()]]
}

pub fn orthonormal_phi_metric() -> Mat3 {
    let z = || int(0);
    [[int(-1), z(), z()], [z(), int(1), z()], [z(), z(), int(1)]]
}

/// Basis of the kernel of `m`, by reduced row echelon form.
pub fn kernel(m: &Mat3) -> Vec<[Rational; 3]> {
    let mut rows: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..3 {
        let Some(p) = (r..3).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..3 {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..3 {
                    let d = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [int(0), int(0), int(0)];
            v[free] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

fn quad(g: &Mat3, u: &[Rational; 3], v: &[Rational; 3]) -> Rational {
    let mut acc = int(0);
    for i in 0..3 {
        for j in 0..3 {
            acc += &g[i][j] * &u[i] * &v[j];
        }
    }
    acc
}

fn trace(m: &Mat3) -> Rational {
    &m[0][0] + &m[1][1] + &m[2][2]
}

/// Whether `ker h` contains a vector with `g(v,v) ≠ 0`, which can then be
/// rescaled into a unit ξ with `hξ = 0`.
pub fn admits_unit_xi(h: &Mat3, g: &Mat3) -> bool {
    let k = kernel(h);
    // the quadratic form vanishes on the span iff it vanishes on every pair
    k.iter()
        .enumerate()
        .any(|(i, u)| k[i..].iter().any(|v| !quad(g, u, v).is_zero()))
}

/// Outcome of running the argument on the 3-block template.
#[derive(Clone, Debug)]
pub struct H4Outcome {
    /// The value forced by `tr h = 0`.
    pub lambda: Rational,
    pub kernel: Vec<[Rational; 3]>,
    /// Every kernel vector is null, so no unit ξ exists.
    pub contradiction: bool,
}

/// `tr h` is affine in λ; solve `tr h = 0`, then inspect `ker h`.
pub fn h4_impossibility() -> H4Outcome {
    let t0 = trace(&h4_template(&int(0)));
    let t1 = trace(&h4_template(&int(1)));
    let lambda = -(&t0 / &(&t1 - &t0));
    let h = h4_template(&lambda);
    let g = pseudo_orthonormal_metric();
    H4Outcome {
        kernel: kernel(&h),
        contradiction: !admits_unit_xi(&h, &g),
        lambda,
    }
}
