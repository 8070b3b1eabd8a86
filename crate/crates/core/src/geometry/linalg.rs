//! Pointwise linear algebra on tensor components.

use std::collections::HashMap;

use super::tensor::TensorField;
use crate::error::{Error, Result};
use crate::symbolic::{JetCoeff, Scalar};

pub type Matrix<S> = Vec<Vec<S>>;

/// Determinant by Laplace expansion along the first remaining row,
/// memoized over (row set, column set).
pub fn determinant<S: Scalar>(ctx: &S::Ctx, m: &Matrix<S>) -> S {
    let n = m.len();
    let full = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    minor(ctx, m, full, full, &mut memo)
}

fn minor<S: Scalar>(
    ctx: &S::Ctx,
    m: &Matrix<S>,
    rows: u32,
    cols: u32,
    memo: &mut HashMap<(u32, u32), S>,
) -> S {
    if rows == 0 {
        return S::one(ctx);
    }
    if let Some(v) = memo.get(&(rows, cols)) {
        return v.clone();
    }
    let r = rows.trailing_zeros() as usize;
    let rest = rows & !(1 << r);
    let mut acc = S::zero(ctx);
    let mut sign = false;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &m[r][c];
        if !e.is_zero() {
            let sub = minor(ctx, m, rest, cols & !(1 << c), memo);
            let t = e.mul(&sub);
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
        }
        sign = !sign;
    }
    memo.insert((rows, cols), acc.clone());
    acc
}

/// Inverse by adjugate over determinant.
pub fn inverse<S: Scalar>(ctx: &S::Ctx, m: &Matrix<S>) -> Result<Matrix<S>> {
    let n = m.len();
    let full = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    let det = minor(ctx, m, full, full, &mut memo);
    if det.is_zero() {
        return Err(Error::Singular(format!("{det:?}")));
    }
    let inv_det = det.inv()?;
    let mut out = vec![vec![S::zero(ctx); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = minor(ctx, m, full & !(1 << i), full & !(1 << j), &mut memo);
            let c = if (i + j) % 2 == 1 { c.neg() } else { c };
            out[j][i] = c.mul(&inv_det);
        }
    }
    Ok(out)
}

pub fn to_matrix<S: Scalar>(t: &TensorField<S>) -> Matrix<S> {
    assert_eq!(t.rank(), 2);
    let d = t.dim();
    (0..d).map(|i| (0..d).map(|j| t.at2(i, j).clone()).collect()).collect()
}

fn sum<S: Scalar>(ctx: &S::Ctx, terms: impl Iterator<Item = S>) -> S {
    terms.fold(S::zero(ctx), |a, b| a.add(&b))
}

fn dot<S: Scalar>(ctx: &S::Ctx, a: impl Iterator<Item = S>) -> S {
    sum(ctx, a)
}

/// `(a∘b)^i_j = a^i_k b^k_j`.
pub fn compose<S: Scalar>(a: &TensorField<S>, b: &TensorField<S>) -> TensorField<S> {
    let ctx = a.ctx();
    let d = a.dim();
    TensorField::from_fn(ctx, 1, 1, |ix| {
        dot(ctx, (0..d).filter(|&k| !a.at2(ix[0], k).is_zero()).map(|k| a.at2(ix[0], k).mul(b.at2(k, ix[1]))))
    })
}

/// `a(v)` for a (1,1)-tensor `a`.
pub fn apply<S: Scalar>(a: &TensorField<S>, v: &TensorField<S>) -> TensorField<S> {
    let ctx = a.ctx();
    let d = a.dim();
    TensorField::from_fn(ctx, 1, 0, |ix| dot(ctx, (0..d).map(|k| a.at2(ix[0], k).mul(v.at(k)))))
}

/// `ω(v)`.
pub fn pair<S: Scalar>(w: &TensorField<S>, v: &TensorField<S>) -> S {
    let ctx = w.ctx();
    dot(ctx, (0..w.dim()).map(|k| w.at(k).mul(v.at(k))))
}

/// `ω∘a` as a covector.
pub fn pullback<S: Scalar>(w: &TensorField<S>, a: &TensorField<S>) -> TensorField<S> {
    let ctx = w.ctx();
    let d = w.dim();
    TensorField::from_fn(ctx, 0, 1, |ix| dot(ctx, (0..d).map(|k| w.at(k).mul(a.at2(k, ix[0])))))
}

/// The (1,1)-tensor `X ↦ ω(X) v`.
pub fn outer<S: Scalar>(v: &TensorField<S>, w: &TensorField<S>) -> TensorField<S> {
    TensorField::from_fn(v.ctx(), 1, 1, |ix| v.at(ix[0]).mul(w.at(ix[1])))
}

pub fn trace<S: Scalar>(a: &TensorField<S>) -> S {
    sum(a.ctx(), (0..a.dim()).map(|i| a.at2(i, i).clone()))
}

/// `g(x, y)`.
pub fn inner<S: Scalar>(g: &TensorField<S>, x: &TensorField<S>, y: &TensorField<S>) -> S {
    let ctx = g.ctx();
    let d = g.dim();
    let mut acc = S::zero(ctx);
    for i in 0..d {
        if x.at(i).is_zero() {
            continue;
        }
        for j in 0..d {
            let c = g.at2(i, j);
            if c.is_zero() || y.at(j).is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(x.at(i)).mul(y.at(j)));
        }
    }
    acc
}

/// `g(v, ·)`.
pub fn lower<S: Scalar>(g: &TensorField<S>, v: &TensorField<S>) -> TensorField<S> {
    let ctx = g.ctx();
    let d = g.dim();
    TensorField::from_fn(ctx, 0, 1, |ix| dot(ctx, (0..d).map(|k| g.at2(k, ix[0]).mul(v.at(k)))))
}

/// `(X, Y) ↦ g(aX, Y)`.
pub fn bilinear_of<S: Scalar>(g: &TensorField<S>, a: &TensorField<S>) -> TensorField<S> {
    let ctx = g.ctx();
    let d = g.dim();
    TensorField::from_fn(ctx, 0, 2, |ix| dot(ctx, (0..d).map(|k| a.at2(k, ix[0]).mul(g.at2(k, ix[1])))))
}

/// Operator `Q` with `g(QX, Y) = b(X, Y)`, i.e. `Q^i_j = g^{ik} b_{jk}`.
pub fn raise_bilinear<S: Scalar>(ginv: &TensorField<S>, b: &TensorField<S>) -> TensorField<S> {
    let ctx = ginv.ctx();
    let d = ginv.dim();
    TensorField::from_fn(ctx, 1, 1, |ix| dot(ctx, (0..d).map(|k| ginv.at2(ix[0], k).mul(b.at2(ix[1], k)))))
}

/// `g^{ij} ω_j`.
pub fn raise<S: Scalar>(ginv: &TensorField<S>, w: &TensorField<S>) -> TensorField<S> {
    let ctx = ginv.ctx();
    let d = ginv.dim();
    TensorField::from_fn(ctx, 1, 0, |ix| dot(ctx, (0..d).map(|k| ginv.at2(ix[0], k).mul(w.at(k)))))
}

/// The g-adjoint `a*` with `g(a*X, Y) = g(X, aY)`.
pub fn adjoint<S: Scalar>(g: &TensorField<S>, ginv: &TensorField<S>, a: &TensorField<S>) -> TensorField<S> {
    // b(X, Y) = g(X, aY)
    let ctx = g.ctx();
    let d = g.dim();
    let b = TensorField::from_fn(ctx, 0, 2, |ix| dot(ctx, (0..d).map(|k| g.at2(ix[0], k).mul(a.at2(k, ix[1])))));
    raise_bilinear(ginv, &b)
}

/// Rank of a numeric matrix by Gaussian elimination.
pub fn rank<C: JetCoeff>(m: &[Vec<C>]) -> usize {
    let mut a: Vec<Vec<C>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            let f = a[i][c].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a[i][j].sub(&f.mul(&a[r][j]));
                a[i][j] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn metric_inverse<S: Scalar>(g: &TensorField<S>) -> Result<TensorField<S>> {
    if g.valence() != (0, 2) {
        return Err(Error::Valence("metric must be a (0,2)-tensor".into()));
    }
    let inv = inverse(g.ctx(), &to_matrix(g))?;
    TensorField::from_components(g.ctx(), 2, 0, inv.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_field;
    use crate::symbolic::{int, Context, ScalarField};

    fn example_metric() -> TensorField<ScalarField> {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let rows = [
            ["1", "0", "-x"],
            ["0", "-1", "y + 2*x"],
            ["-x", "y + 2*x", "1 - 3*x^2 - 4*x*y - y^2"],
        ];
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_field(s, &ctx).unwrap()).collect())
            .collect();
        TensorField::bilinear(&ctx, m).unwrap()
    }

    #[test]
    fn example_determinant_and_inverse() {
        let g = example_metric();
        let det = determinant(g.ctx(), &to_matrix(&g));
        assert_eq!(det.constant_value(), Some(int(-1)));
        let ginv = metric_inverse(&g).unwrap();
        // every entry is polynomial because det is constant
        assert!(ginv.comps().iter().all(|c| c.den().is_one()));
        let prod = TensorField::from_fn(g.ctx(), 1, 1, |ix| {
            (0..3).fold(ScalarField::zero(g.ctx()), |a, k| a + ginv.at2(ix[0], k) * g.at2(k, ix[1]))
        });
        assert_eq!(prod, TensorField::identity(g.ctx()));
    }

    #[test]
    fn singular_metric() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let z = ScalarField::zero(&ctx);
        let o = ScalarField::one(&ctx);
        let g = TensorField::bilinear(
            &ctx,
            vec![vec![z.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z, o]],
        )
        .unwrap();
        assert!(matches!(metric_inverse(&g), Err(Error::Singular(_))));
    }
}
