//! Levi-Civita connection and covariant derivatives in coordinates.

use super::linalg::metric_inverse;
use super::tensor::TensorField;
use crate::error::{Error, Result};
use crate::symbolic::{rat, Scalar};

/// Christoffel symbols `Γ^l_{ij}` stored as a (1,2)-tensor at `[l][i][j]`,
/// so that `∇_{∂i} ∂j = Γ^l_{ij} ∂l`.
#[derive(Clone, Debug)]
pub struct Connection<S: Scalar> {
    pub gamma: TensorField<S>,
}

impl<S: Scalar> Connection<S> {
    pub fn levi_civita(g: &TensorField<S>) -> Result<Self> {
        let ginv = metric_inverse(g)?;
        Ok(Self::from_metric(g, &ginv))
    }

    pub fn from_metric(g: &TensorField<S>, ginv: &TensorField<S>) -> Self {
        let ctx = g.ctx();
        let d = g.dim();
        let dg: Vec<TensorField<S>> = (0..d).map(|k| g.map(|c| c.partial(k))).collect();
        // first kind: [ij,k] = ½(∂i g_jk + ∂j g_ik − ∂k g_ij)
        let first = TensorField::from_fn(ctx, 0, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            dg[i]
                .at2(j, k)
                .add(dg[j].at2(i, k))
                .sub(dg[k].at2(i, j))
                .scale(&rat(1, 2))
        });
        let gamma = TensorField::from_fn(ctx, 1, 2, |ix| {
            let (l, i, j) = (ix[0], ix[1], ix[2]);
            (0..d).fold(S::zero(ctx), |acc, k| {
                let a = ginv.at2(l, k);
                if a.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(first.at3(i, j, k)))
                }
            })
        });
        Connection { gamma }
    }

    pub fn at(&self, l: usize, i: usize, j: usize) -> &S {
        self.gamma.at3(l, i, j)
    }

    /// `∇T` with the differentiation index as the first covariant slot:
    /// `(∇T)^{a..}_{k b..} = (∇_{∂k} T)^{a..}_{b..}`.
    pub fn covariant_derivative(&self, t: &TensorField<S>) -> TensorField<S> {
        let ctx = t.ctx();
        let d = t.dim();
        let (r, s) = t.valence();
        let partials: Vec<TensorField<S>> = (0..d).map(|k| t.map(|c| c.partial(k))).collect();
        TensorField::from_fn(ctx, r, s + 1, |ix| {
            let k = ix[r];
            let mut src: Vec<usize> = Vec::with_capacity(r + s);
            src.extend_from_slice(&ix[..r]);
            src.extend_from_slice(&ix[r + 1..]);
            let mut acc = partials[k].get(&src).clone();
            for p in 0..r {
                let a = src[p];
                let mut idx = src.clone();
                for m in 0..d {
                    let c = self.at(a, k, m);
                    if c.is_zero() {
                        continue;
                    }
                    idx[p] = m;
                    acc = acc.add(&c.mul(t.get(&idx)));
                }
            }
            for p in r..r + s {
                let b = src[p];
                let mut idx = src.clone();
                for m in 0..d {
                    let c = self.at(m, k, b);
                    if c.is_zero() {
                        continue;
                    }
                    idx[p] = m;
                    acc = acc.sub(&c.mul(t.get(&idx)));
                }
            }
            acc
        })
    }

    /// `∇_X Y` for vector fields.
    pub fn nabla_vector(&self, x: &TensorField<S>, y: &TensorField<S>) -> TensorField<S> {
        let ctx = x.ctx();
        let d = x.dim();
        TensorField::from_fn(ctx, 1, 0, |ix| {
            let l = ix[0];
            let mut acc = S::zero(ctx);
            for k in 0..d {
                let xk = x.at(k);
                if xk.is_zero() {
                    continue;
                }
                let mut term = y.at(l).partial(k);
                for j in 0..d {
                    let c = self.at(l, k, j);
                    if !c.is_zero() {
                        term = term.add(&c.mul(y.at(j)));
                    }
                }
                acc = acc.add(&xk.mul(&term));
            }
            acc
        })
    }

    /// Witness of a violated torsion-free or metric condition, if any.
    pub fn check(&self, g: &TensorField<S>) -> Result<()> {
        let d = g.dim();
        for l in 0..d {
            for i in 0..d {
                for j in i + 1..d {
                    if !self.at(l, i, j).sub(self.at(l, j, i)).is_zero() {
                        return Err(Error::Internal(format!("torsion at ({l},{i},{j})")));
                    }
                }
            }
        }
        if let Some((idx, _)) = self.covariant_derivative(g).first_nonzero() {
            return Err(Error::Internal(format!("∇g nonzero at {idx:?}")));
        }
        Ok(())
    }
}

/// Lie bracket `[X, Y]` of vector fields.
pub fn bracket<S: Scalar>(x: &TensorField<S>, y: &TensorField<S>) -> TensorField<S> {
    let ctx = x.ctx();
    let d = x.dim();
    TensorField::from_fn(ctx, 1, 0, |ix| {
        let l = ix[0];
        let mut acc = S::zero(ctx);
        for k in 0..d {
            if !x.at(k).is_zero() {
                acc = acc.add(&x.at(k).mul(&y.at(l).partial(k)));
            }
            if !y.at(k).is_zero() {
                acc = acc.sub(&y.at(k).mul(&x.at(l).partial(k)));
            }
        }
        acc
    })
}
