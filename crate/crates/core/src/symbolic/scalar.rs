use std::fmt;

use super::context::Ctx;
use super::field::ScalarField;
use super::Rational;
use crate::error::Result;

/// Scalar ring used by the tensor code. Implemented by exact rational
/// functions and by truncated Taylor jets at a point.
pub trait Scalar: Clone + Send + Sync + fmt::Debug + Sized {
    type Ctx: Clone + Send + Sync;

    fn context(&self) -> Self::Ctx;
    fn dim(ctx: &Self::Ctx) -> usize;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_rational(ctx, &num_traits::Zero::zero())
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_rational(ctx, &num_traits::One::one())
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(n.into()))
    }

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
    /// Partial derivative along coordinate `i`.
    fn partial(&self, i: usize) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for ScalarField {
    type Ctx = Ctx;

    fn context(&self) -> Ctx {
        self.ctx().clone()
    }
    fn dim(ctx: &Ctx) -> usize {
        ctx.dim()
    }
    fn from_rational(ctx: &Ctx, q: &Rational) -> Self {
        ScalarField::constant(ctx, q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        ScalarField::scale(self, q)
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
    fn partial(&self, i: usize) -> Self {
        ScalarField::partial(self, i)
    }
    fn is_zero(&self) -> bool {
        ScalarField::is_zero(self)
    }
}
