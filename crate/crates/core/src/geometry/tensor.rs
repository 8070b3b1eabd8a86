use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symbolic::{Rational, Scalar};

/// Components of an `(r, s)`-tensor in the coordinate frame, stored row-major
/// with the `r` contravariant indices first.
#[derive(Clone)]
pub struct TensorField<S: Scalar> {
    ctx: S::Ctx,
    dim: usize,
    contra: usize,
    co: usize,
    comps: Vec<S>,
}

const PARALLEL_THRESHOLD: usize = 64;

impl<S: Scalar> TensorField<S> {
    pub fn from_fn<F>(ctx: &S::Ctx, contra: usize, co: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> S + Sync + Send,
    {
        let dim = S::dim(ctx);
        let rank = contra + co;
        let len = dim.pow(rank as u32);
        let make = |flat: usize| {
            let idx = unflatten(flat, dim, rank);
            f(&idx)
        };
        let comps: Vec<S> = if len >= PARALLEL_THRESHOLD {
            (0..len).into_par_iter().map(make).collect()
        } else {
            (0..len).map(make).collect()
        };
        TensorField {
            ctx: ctx.clone(),
            dim,
            contra,
            co,
            comps,
        }
    }

    pub fn from_components(ctx: &S::Ctx, contra: usize, co: usize, comps: Vec<S>) -> Result<Self> {
        let dim = S::dim(ctx);
        let len = dim.pow((contra + co) as u32);
        if comps.len() != len {
            return Err(Error::Shape(format!(
                "({contra},{co})-tensor in dimension {dim} needs {len} components, got {}",
                comps.len()
            )));
        }
        Ok(TensorField {
            ctx: ctx.clone(),
            dim,
            contra,
            co,
            comps,
        })
    }

    pub fn zero(ctx: &S::Ctx, contra: usize, co: usize) -> Self {
        Self::from_fn(ctx, contra, co, |_| S::zero(ctx))
    }

    pub fn scalar(s: S) -> Self {
        let ctx = s.context();
        TensorField {
            dim: S::dim(&ctx),
            ctx,
            contra: 0,
            co: 0,
            comps: vec![s],
        }
    }

    pub fn vector(ctx: &S::Ctx, v: Vec<S>) -> Result<Self> {
        Self::from_components(ctx, 1, 0, v)
    }

    pub fn covector(ctx: &S::Ctx, v: Vec<S>) -> Result<Self> {
        Self::from_components(ctx, 0, 1, v)
    }

    /// `(1,1)`-tensor from a matrix `m[i][j]` = component `^i_j`.
    pub fn operator(ctx: &S::Ctx, m: Vec<Vec<S>>) -> Result<Self> {
        Self::from_components(ctx, 1, 1, m.into_iter().flatten().collect())
    }

    /// `(0,2)`-tensor from a matrix.
    pub fn bilinear(ctx: &S::Ctx, m: Vec<Vec<S>>) -> Result<Self> {
        Self::from_components(ctx, 0, 2, m.into_iter().flatten().collect())
    }

    pub fn identity(ctx: &S::Ctx) -> Self {
        Self::from_fn(ctx, 1, 1, |i| {
            if i[0] == i[1] {
                S::one(ctx)
            } else {
                S::zero(ctx)
            }
        })
    }

    /// Coordinate basis vector `∂_i`.
    pub fn basis_vector(ctx: &S::Ctx, i: usize) -> Self {
        Self::from_fn(ctx, 1, 0, |k| if k[0] == i { S::one(ctx) } else { S::zero(ctx) })
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.contra, self.co)
    }

    pub fn rank(&self) -> usize {
        self.contra + self.co
    }

    pub fn comps(&self) -> &[S] {
        &self.comps
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.comps[self.flat_index(idx)]
    }

    pub fn at(&self, i: usize) -> &S {
        &self.comps[i]
    }

    pub fn at2(&self, i: usize, j: usize) -> &S {
        &self.comps[i * self.dim + j]
    }

    pub fn at3(&self, i: usize, j: usize, k: usize) -> &S {
        &self.comps[(i * self.dim + j) * self.dim + k]
    }

    pub fn at4(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.comps[((i * self.dim + j) * self.dim + k) * self.dim + l]
    }

    pub fn scalar_value(&self) -> &S {
        assert_eq!(self.rank(), 0);
        &self.comps[0]
    }

    fn check_valence(&self, other: &Self, what: &str) {
        assert_eq!(
            self.valence(),
            other.valence(),
            "{what}: valence mismatch"
        );
    }

    pub fn map(&self, f: impl Fn(&S) -> S + Sync + Send) -> Self {
        let comps = if self.comps.len() >= PARALLEL_THRESHOLD {
            self.comps.par_iter().map(&f).collect()
        } else {
            self.comps.iter().map(&f).collect()
        };
        TensorField {
            ctx: self.ctx.clone(),
            dim: self.dim,
            contra: self.contra,
            co: self.co,
            comps,
        }
    }

    pub fn try_map<T: Scalar>(&self, ctx: &T::Ctx, f: impl Fn(&S) -> Result<T>) -> Result<TensorField<T>> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        TensorField::from_components(ctx, self.contra, self.co, comps)
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S + Sync + Send) -> Self {
        let comps = if self.comps.len() >= PARALLEL_THRESHOLD {
            self.comps
                .par_iter()
                .zip(other.comps.par_iter())
                .map(|(a, b)| f(a, b))
                .collect()
        } else {
            self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect()
        };
        TensorField {
            ctx: self.ctx.clone(),
            dim: self.dim,
            contra: self.contra,
            co: self.co,
            comps,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_valence(other, "add");
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_valence(other, "sub");
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|a| a.scale(q))
    }

    pub fn mul_scalar(&self, s: &S) -> Self {
        self.map(|a| a.mul(s))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// First nonzero component with its multi-index.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, S)> {
        self.comps
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| (unflatten(k, self.dim, self.rank()), self.comps[k].clone()))
    }

    /// Applies the (1,1)-tensor `m` to the covariant slot `slot`:
    /// `T'(.., X, ..) = T(.., mX, ..)`.
    pub fn apply_in_slot(&self, slot: usize, m: &Self) -> Self {
        assert_eq!(m.valence(), (1, 1));
        assert!(slot < self.co);
        let pos = self.contra + slot;
        let d = self.dim;
        Self::from_fn(&self.ctx, self.contra, self.co, |idx| {
            let k = idx[pos];
            let mut src = idx.to_vec();
            let mut acc = S::zero(&self.ctx);
            for a in 0..d {
                let c = m.at2(a, k);
                if c.is_zero() {
                    continue;
                }
                src[pos] = a;
                acc = acc.add(&self.get(&src).mul(c));
            }
            acc
        })
    }

    /// Applies the (1,1)-tensor `m` to the first contravariant index.
    pub fn map_output(&self, m: &Self) -> Self {
        assert_eq!(m.valence(), (1, 1));
        assert!(self.contra >= 1);
        let d = self.dim;
        Self::from_fn(&self.ctx, self.contra, self.co, |idx| {
            let i = idx[0];
            let mut src = idx.to_vec();
            let mut acc = S::zero(&self.ctx);
            for a in 0..d {
                let c = m.at2(i, a);
                if c.is_zero() {
                    continue;
                }
                src[0] = a;
                acc = acc.add(&c.mul(self.get(&src)));
            }
            acc
        })
    }

    /// Tensor product, indices of `self` first within each variance group.
    pub fn tensor(&self, other: &Self) -> Self {
        let (r1, s1) = self.valence();
        let (r2, s2) = other.valence();
        Self::from_fn(&self.ctx, r1 + r2, s1 + s2, |idx| {
            let mut a = Vec::with_capacity(r1 + s1);
            let mut b = Vec::with_capacity(r2 + s2);
            a.extend_from_slice(&idx[..r1]);
            b.extend_from_slice(&idx[r1..r1 + r2]);
            a.extend_from_slice(&idx[r1 + r2..r1 + r2 + s1]);
            b.extend_from_slice(&idx[r1 + r2 + s1..]);
            self.get(&a).mul(other.get(&b))
        })
    }

    /// Contracts contravariant index `up` with covariant index `down`.
    pub fn contract(&self, up: usize, down: usize) -> Self {
        assert!(up < self.contra && down < self.co);
        let d = self.dim;
        let pos = self.contra + down;
        Self::from_fn(&self.ctx, self.contra - 1, self.co - 1, |idx| {
            let mut full = Vec::with_capacity(self.rank());
            let mut it = idx.iter();
            for p in 0..self.rank() {
                if p == up || p == pos {
                    full.push(0);
                } else {
                    full.push(*it.next().expect("index count"));
                }
            }
            let mut acc = S::zero(&self.ctx);
            for a in 0..d {
                full[up] = a;
                full[pos] = a;
                acc = acc.add(self.get(&full));
            }
            acc
        })
    }

    /// Reorders covariant slots: slot `p` of the result is slot `perm[p]` of `self`.
    pub fn permute_covariant(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.co);
        let r = self.contra;
        Self::from_fn(&self.ctx, self.contra, self.co, |idx| {
            let mut src = idx.to_vec();
            for (p, &q) in perm.iter().enumerate() {
                src[r + q] = idx[r + p];
            }
            self.get(&src).clone()
        })
    }
}

pub fn unflatten(mut flat: usize, dim: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for p in (0..rank).rev() {
        idx[p] = flat % dim;
        flat /= dim;
    }
    idx
}

/// All multi-indices of the given rank, in storage order.
pub fn all_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..dim.pow(rank as u32)).map(move |k| unflatten(k, dim, rank))
}

impl<S: Scalar> PartialEq for TensorField<S>
where
    S: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.valence() == other.valence() && self.comps == other.comps
    }
}

impl<S: Scalar> fmt::Debug for TensorField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorField({},{}) {:?}", self.contra, self.co, self.comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{int, Context, ScalarField};

    #[test]
    fn slots_and_contraction() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let x = ScalarField::coord(&ctx, 0);
        let m = TensorField::<ScalarField>::from_fn(&ctx, 1, 1, |i| {
            ScalarField::int(&ctx, (3 * i[0] + i[1]) as i64).mul(&x)
        });
        let id = TensorField::identity(&ctx);
        assert_eq!(m.apply_in_slot(0, &id), m);
        assert_eq!(m.map_output(&id), m);
        let tr = m.contract(0, 0);
        assert_eq!(tr.scalar_value(), &x.scale(&int(12)));
        let v = TensorField::basis_vector(&ctx, 1);
        let w = m.tensor(&v).contract(1, 0);
        // m(∂y) as a vector
        assert_eq!(w.at(2), m.at2(2, 1));
        assert_eq!(unflatten(5, 3, 2), vec![1, 2]);
    }
}
