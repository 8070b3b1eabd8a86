//! Differential forms as antisymmetric covariant tensors.
//!
//! Components follow the determinant convention: `(dx∧dy)(∂x,∂y) = 1` and
//! `(α∧β)_{I} = Σ_shuffles sign · α_{I1} β_{I2}`.

use super::tensor::TensorField;
use crate::error::{Error, Result};
use crate::symbolic::Scalar;

/// Sorts `idx`, returning the parity of the permutation, or `None` on a repeat.
fn sort_parity(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// Builds an antisymmetric `(0,k)`-tensor from its values on increasing index tuples.
pub fn from_sorted<S: Scalar>(ctx: &S::Ctx, k: usize, f: impl Fn(&[usize]) -> S + Sync + Send) -> TensorField<S> {
    TensorField::from_fn(ctx, 0, k, |idx| match sort_parity(idx) {
        None => S::zero(ctx),
        Some((sorted, odd)) => {
            let v = f(&sorted);
            if odd {
                v.neg()
            } else {
                v
            }
        }
    })
}

pub fn is_antisymmetric<S: Scalar>(w: &TensorField<S>) -> bool {
    let (r, k) = w.valence();
    if r != 0 {
        return false;
    }
    let d = w.dim();
    super::tensor::all_indices(d, k).all(|idx| match sort_parity(&idx) {
        None => w.get(&idx).is_zero(),
        Some((sorted, odd)) => {
            let v = w.get(&sorted);
            if odd {
                w.get(&idx).add(v).is_zero()
            } else {
                w.get(&idx).sub(v).is_zero()
            }
        }
    })
}

fn check_form<S: Scalar>(w: &TensorField<S>, what: &str) -> Result<()> {
    if is_antisymmetric(w) {
        Ok(())
    } else {
        Err(Error::Valence(format!("{what} is not an antisymmetric covariant tensor")))
    }
}

/// Subsets of `0..n` of size `k` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn wedge<S: Scalar>(a: &TensorField<S>, b: &TensorField<S>) -> Result<TensorField<S>> {
    check_form(a, "left wedge factor")?;
    check_form(b, "right wedge factor")?;
    let ctx = a.ctx();
    let p = a.valence().1;
    let q = b.valence().1;
    let shuffles = combinations(p + q, p);
    Ok(from_sorted(ctx, p + q, |idx| {
        let mut acc = S::zero(ctx);
        for left in &shuffles {
            let right: Vec<usize> = (0..p + q).filter(|i| !left.contains(i)).collect();
            // sign of the permutation (left, right) of 0..p+q
            let inversions: usize = left
                .iter()
                .map(|&l| right.iter().filter(|&&r| r < l).count())
                .sum();
            let ai: Vec<usize> = left.iter().map(|&i| idx[i]).collect();
            let bi: Vec<usize> = right.iter().map(|&i| idx[i]).collect();
            let x = a.get(&ai);
            if x.is_zero() {
                continue;
            }
            let y = b.get(&bi);
            if y.is_zero() {
                continue;
            }
            let t = x.mul(y);
            acc = if inversions % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }))
}

/// `(dω)_{i0..ik} = Σ_p (−1)^p ∂_{ip} ω_{i0..î_p..ik}`.
pub fn exterior_derivative<S: Scalar>(w: &TensorField<S>) -> Result<TensorField<S>> {
    check_form(w, "exterior derivative operand")?;
    let ctx = w.ctx();
    let k = w.valence().1;
    Ok(from_sorted(ctx, k + 1, |idx| {
        let mut acc = S::zero(ctx);
        for p in 0..=k {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, &v)| v)
                .collect();
            let c = w.get(&rest);
            if c.is_zero() {
                continue;
            }
            let t = c.partial(idx[p]);
            acc = if p % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }))
}

/// Interior product `i_V ω`, contracting the first slot.
pub fn interior<S: Scalar>(v: &TensorField<S>, w: &TensorField<S>) -> TensorField<S> {
    let ctx = w.ctx();
    let d = w.dim();
    let k = w.valence().1;
    TensorField::from_fn(ctx, 0, k - 1, |idx| {
        let mut full = Vec::with_capacity(k);
        full.push(0);
        full.extend_from_slice(idx);
        (0..d).fold(S::zero(ctx), |acc, a| {
            full[0] = a;
            let c = v.at(a);
            if c.is_zero() {
                acc
            } else {
                acc.add(&c.mul(w.get(&full)))
            }
        })
    })
}

/// `d f` of a scalar as a covector.
pub fn differential<S: Scalar>(f: &S) -> TensorField<S> {
    let ctx = f.context();
    TensorField::from_fn(&ctx, 0, 1, |i| f.partial(i[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{Context, ScalarField};

    fn dx(ctx: &crate::symbolic::Ctx, i: usize) -> TensorField<ScalarField> {
        differential(&ScalarField::coord(ctx, i))
    }

    #[test]
    fn wedge_normalization() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let w = wedge(&dx(&ctx, 0), &dx(&ctx, 1)).unwrap();
        assert!(w.at2(0, 1).is_one());
        assert_eq!(w.at2(1, 0), &ScalarField::int(&ctx, -1));
        assert!(wedge(&dx(&ctx, 2), &dx(&ctx, 2)).unwrap().is_zero());
        assert!(exterior_derivative(&w).unwrap().is_zero());
    }

    #[test]
    fn graded_commutativity() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let x = ScalarField::coord(&ctx, 0);
        let a = dx(&ctx, 0).mul_scalar(&x).add(&dx(&ctx, 2));
        let b = wedge(&dx(&ctx, 1), &dx(&ctx, 2)).unwrap().mul_scalar(&x);
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        assert_eq!(ab, ba);
        let aa = wedge(&a, &a).unwrap();
        assert!(aa.is_zero());
    }

    #[test]
    fn non_antisymmetric_input() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let g = TensorField::<ScalarField>::from_fn(&ctx, 0, 2, |_| ScalarField::one(&ctx));
        assert!(matches!(exterior_derivative(&g), Err(Error::Valence(_))));
    }
}
