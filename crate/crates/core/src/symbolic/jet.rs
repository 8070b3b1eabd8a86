//! Truncated multivariate Taylor expansions at a fixed point.
//!
//! A jet of order `k` stores the Taylor coefficients of total degree `<= k`
//! in the displacement `t = x - p`. Differentiation lowers the order by one,
//! so products and sums keep the smaller order of their operands.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::ScalarField;
use super::polynomial::{rational_to_f64, render_rational};
use super::scalar::Scalar;
use super::Rational;
use crate::error::{Error, Result};

/// Coefficient ring of a jet.
pub trait JetCoeff: Clone + Send + Sync + fmt::Debug + PartialEq + 'static {
    fn from_rational(q: &Rational) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn sqrt(&self) -> Option<Self>;
    /// `exp(q)` when it lies in the ring.
    fn exp_of_rational(q: &Rational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl JetCoeff for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
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
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn exp_of_rational(q: &Rational) -> Option<Self> {
        if Zero::is_zero(q) {
            Some(One::one())
        } else {
            None
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Exact square root of a nonnegative rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

const F64_ZERO: f64 = 1e-11;

impl JetCoeff for f64 {
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
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
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn exp_of_rational(q: &Rational) -> Option<Self> {
        Some(rational_to_f64(q).exp())
    }
    fn is_zero(&self) -> bool {
        self.abs() < F64_ZERO
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Index bookkeeping shared by all jets at one point.
#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    max_order: u32,
    point: Vec<Rational>,
    indices: Vec<Vec<u32>>,
    // number of multi-indices of total degree <= k
    count: Vec<usize>,
    lookup: HashMap<Vec<u32>, usize>,
    // (i, j, k) with index_i + index_j = index_k
    products: Vec<(usize, usize, usize)>,
    // shift[v][a] = index of a + e_v, when within max order
    shift: Vec<Vec<Option<usize>>>,
}

impl JetSpace {
    pub fn new(point: Vec<Rational>, max_order: u32) -> Arc<JetSpace> {
        let nvars = point.len();
        let mut indices: Vec<Vec<u32>> = vec![vec![0; nvars]];
        let mut count = vec![1];
        let mut layer = vec![vec![0u32; nvars]];
        for _ in 1..=max_order {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for a in &layer {
                // extend only at or after the last nonzero slot to avoid repeats
                let start = a.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..nvars {
                    let mut b = a.clone();
                    b[v] += 1;
                    next.push(b);
                }
            }
            indices.extend(next.iter().cloned());
            count.push(indices.len());
            layer = next;
        }
        let lookup: HashMap<Vec<u32>, usize> = indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let mut products = Vec::new();
        for (i, a) in indices.iter().enumerate() {
            for (j, b) in indices.iter().enumerate() {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&k) = lookup.get(&s) {
                    products.push((i, j, k));
                }
            }
        }
        products.sort_by_key(|p| p.2);
        let shift = (0..nvars)
            .map(|v| {
                indices
                    .iter()
                    .map(|a| {
                        let mut b = a.clone();
                        b[v] += 1;
                        lookup.get(&b).copied()
                    })
                    .collect()
            })
            .collect();
        Arc::new(JetSpace {
            nvars,
            max_order,
            point,
            indices,
            count,
            lookup,
            products,
            shift,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn multi_index(&self, k: usize) -> &[u32] {
        &self.indices[k]
    }

    pub fn index_of(&self, a: &[u32]) -> Option<usize> {
        self.lookup.get(a).copied()
    }
}

#[derive(Clone)]
pub struct Jet<C: JetCoeff> {
    space: Arc<JetSpace>,
    order: u32,
    coeffs: Vec<C>,
}

impl<C: JetCoeff> Jet<C> {
    pub fn constant(space: &Arc<JetSpace>, c: C) -> Self {
        let n = space.count[space.max_order as usize];
        let mut coeffs = vec![C::zero(); n];
        coeffs[0] = c;
        Jet {
            space: space.clone(),
            order: space.max_order,
            coeffs,
        }
    }

    /// The coordinate function `x_i` expanded at the point.
    pub fn variable(space: &Arc<JetSpace>, i: usize) -> Self {
        let mut j = Self::constant(space, C::from_rational(&space.point[i]));
        if space.max_order > 0 {
            let mut a = vec![0; space.nvars];
            a[i] = 1;
            j.coeffs[space.lookup[&a]] = C::one();
        }
        j
    }

    /// `exp(rate * x_i)` expanded at the point.
    pub fn exponential(space: &Arc<JetSpace>, i: usize, rate: &Rational) -> Result<Self> {
        let base = C::exp_of_rational(&(rate * &space.point[i])).ok_or_else(|| {
            Error::GeneratorValue(format!(
                "exp({}) at {} is not representable",
                render_rational(rate),
                render_rational(&space.point[i])
            ))
        })?;
        let mut j = Self::constant(space, base.clone());
        let mut a = vec![0; space.nvars];
        let mut term = base;
        let r = C::from_rational(rate);
        for m in 1..=space.max_order {
            a[i] = m;
            term = term
                .mul(&r)
                .mul(&C::from_rational(&Rational::new(BigInt::one(), BigInt::from(m))));
            j.coeffs[space.lookup[&a]] = term.clone();
        }
        Ok(j)
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self) -> &C {
        &self.coeffs[0]
    }

    /// Taylor coefficient of `t^a`.
    pub fn coeff(&self, a: &[u32]) -> Option<&C> {
        self.space.index_of(a).and_then(|k| self.coeffs.get(k))
    }

    /// Drops terms above `order`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Jet {
            space: self.space.clone(),
            order,
            coeffs: self.coeffs[..self.space.count[order as usize]].to_vec(),
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let order = self.order.min(o.order);
        let n = self.space.count[order as usize];
        Jet {
            space: self.space.clone(),
            order,
            coeffs: (0..n).map(|k| f(&self.coeffs[k], &o.coeffs[k])).collect(),
        }
    }

    pub fn map_coeffs<D: JetCoeff>(&self, f: impl Fn(&C) -> D) -> Jet<D> {
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    // sum_k coeffs[k] * g^k with g lacking a constant term
    fn compose_series(&self, g: &Self, series: &[C]) -> Self {
        let mut out = Jet::constant(&self.space, series[0].clone()).truncate(g.order);
        let mut power = Jet::constant(&self.space, C::one()).truncate(g.order);
        for c in series.iter().skip(1) {
            power = power.mul_jet(g);
            out = out.zip(&power.scale_c(c), |a, b| a.add(b));
        }
        out
    }

    fn scale_c(&self, c: &C) -> Self {
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    fn mul_jet(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let n = self.space.count[order as usize];
        let mut out = vec![C::zero(); n];
        for &(i, j, k) in &self.space.products {
            if k >= n {
                break;
            }
            if self.coeffs[i].is_zero() || o.coeffs[j].is_zero() {
                continue;
            }
            out[k] = out[k].add(&self.coeffs[i].mul(&o.coeffs[j]));
        }
        Jet {
            space: self.space.clone(),
            order,
            coeffs: out,
        }
    }

    fn unit_tail(&self, c0: &C) -> Option<(C, Self)> {
        let inv0 = c0.inv()?;
        let mut g = self.scale_c(&inv0);
        g.coeffs[0] = C::zero();
        Some((inv0, g))
    }

    pub fn try_inv(&self) -> Option<Self> {
        let (inv0, g) = self.unit_tail(&self.coeffs[0])?;
        // 1/(1+g) = sum (-g)^k
        let series: Vec<C> = (0..=self.order)
            .map(|k| if k % 2 == 0 { C::one() } else { C::one().neg() })
            .collect();
        Some(self.compose_series(&g, &series).scale_c(&inv0))
    }

    pub fn sqrt(&self) -> Option<Self> {
        let s0 = self.coeffs[0].sqrt()?;
        if s0.is_zero() {
            return None;
        }
        let (_, g) = self.unit_tail(&self.coeffs[0])?;
        // binomial(1/2, k)
        let mut series = vec![C::one()];
        let mut b = <Rational as One>::one();
        for k in 1..=self.order {
            let k = Rational::from_integer(BigInt::from(k));
            b = b * (Rational::new(BigInt::one(), BigInt::from(2)) - (&k - <Rational as One>::one())) / k;
            series.push(C::from_rational(&b));
        }
        Some(self.compose_series(&g, &series).scale_c(&s0))
    }

    /// Expands an exact rational function at the jet point.
    pub fn from_field(space: &Arc<JetSpace>, f: &ScalarField) -> Result<Self> {
        let ctx = f.ctx();
        if ctx.dim() != space.nvars {
            return Err(Error::Shape(format!(
                "jet space has {} variables, field has {}",
                space.nvars,
                ctx.dim()
            )));
        }
        let mut vars: Vec<Jet<C>> = (0..ctx.dim()).map(|i| Jet::variable(space, i)).collect();
        for g in ctx.generators() {
            vars.push(Jet::exponential(space, g.coord, &g.rate)?);
        }
        let mut cache: HashMap<(usize, u32), Jet<C>> = HashMap::new();
        let mut poly = |p: &super::polynomial::Polynomial| -> Jet<C> {
            let mut acc = Jet::constant(space, C::zero());
            for (m, c) in p.terms() {
                let mut t = Jet::constant(space, C::from_rational(c));
                for (v, e) in m.pairs() {
                    let pw = cache
                        .entry((v, e))
                        .or_insert_with(|| {
                            let mut r = vars[v].clone();
                            for _ in 1..e {
                                r = r.mul_jet(&vars[v]);
                            }
                            r
                        })
                        .clone();
                    t = t.mul_jet(&pw);
                }
                acc = acc.zip(&t, |a, b| a.add(b));
            }
            acc
        };
        let num = poly(f.num());
        if f.den().is_one() {
            return Ok(num);
        }
        let den = poly(f.den());
        let inv = den.try_inv().ok_or_else(|| Error::Pole {
            point: space.point.iter().map(render_rational).collect(),
        })?;
        Ok(num.mul_jet(&inv))
    }
}

impl<C: JetCoeff> fmt::Debug for Jet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet[o{}]{:?}", self.order, self.coeffs)
    }
}

impl<C: JetCoeff> Scalar for Jet<C> {
    type Ctx = Arc<JetSpace>;

    fn context(&self) -> Arc<JetSpace> {
        self.space.clone()
    }
    fn dim(ctx: &Arc<JetSpace>) -> usize {
        ctx.nvars
    }
    fn from_rational(ctx: &Arc<JetSpace>, q: &Rational) -> Self {
        Jet::constant(ctx, C::from_rational(q))
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }
    fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_jet(o)
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|a| a.neg())
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale_c(&C::from_rational(q))
    }
    fn inv(&self) -> Result<Self> {
        self.try_inv().ok_or(Error::DivisionByZero)
    }
    fn partial(&self, v: usize) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let n = self.space.count[order as usize];
        let coeffs = (0..n)
            .map(|a| {
                let k = self.space.shift[v][a].expect("within max order");
                let f = self.space.indices[a][v] + 1;
                self.coeffs[k].mul(&C::from_rational(&Rational::from_integer(BigInt::from(f))))
            })
            .collect();
        Jet {
            space: self.space.clone(),
            order,
            coeffs,
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::context::{Context, Generator};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn index_layout() {
        let s = JetSpace::new(vec![q(0, 1); 3], 2);
        assert_eq!(s.count, vec![1, 4, 10]);
    }

    #[test]
    fn derivatives_match_symbolic() {
        let ctx = Context::coordinates(&["x", "y"]);
        let x = ScalarField::coord(&ctx, 0);
        let y = ScalarField::coord(&ctx, 1);
        let f = (&(&x * &x) * &y + ScalarField::one(&ctx))
            .checked_div(&(&x + &ScalarField::int(&ctx, 2)))
            .unwrap();
        let p = vec![q(1, 2), q(-3, 1)];
        let space = JetSpace::new(p.clone(), 3);
        let j: Jet<Rational> = Jet::from_field(&space, &f).unwrap();
        assert_eq!(j.value(), &f.eval(&p).unwrap());
        let dxy = j.partial(0).partial(1);
        assert_eq!(dxy.value(), &f.partial(0).partial(1).eval(&p).unwrap());
        let dxx = j.partial(0).partial(0);
        assert_eq!(dxx.value(), &f.partial(0).partial(0).eval(&p).unwrap());
        let inv = Scalar::inv(&j).unwrap();
        assert_eq!(
            inv.partial(0).value(),
            &f.recip().unwrap().partial(0).eval(&p).unwrap()
        );
    }

    #[test]
    fn square_root_series() {
        let space = JetSpace::new(vec![q(3, 1)], 3);
        let x: Jet<Rational> = Jet::variable(&space, 0);
        let one = Jet::constant(&space, q(1, 1));
        let f = x.mul(&x).add(&one.scale(&q(7, 1))); // x^2 + 7 = 16 at x = 3
        let s = f.sqrt().unwrap();
        assert_eq!(s.value(), &q(4, 1));
        // d/dx sqrt(x^2+7) = x / sqrt(x^2+7)
        assert_eq!(s.partial(0).value(), &q(3, 4));
        assert!(s.mul(&s).sub(&f).is_zero());
    }

    #[test]
    fn exponential_generator() {
        let ctx = Context::new(
            vec!["t".into()],
            vec![Generator {
                name: "E".into(),
                coord: 0,
                rate: q(2, 1),
            }],
        )
        .unwrap();
        let e = ScalarField::generator(&ctx, 0);
        let exact: Jet<Rational> = Jet::from_field(&JetSpace::new(vec![q(0, 1)], 2), &e).unwrap();
        assert_eq!(exact.partial(0).partial(0).value(), &q(4, 1));
        let space = JetSpace::new(vec![q(1, 2)], 2);
        assert!(Jet::<Rational>::from_field(&space, &e).is_err());
        let float: Jet<f64> = Jet::from_field(&space, &e).unwrap();
        assert!((float.partial(0).value() - 2.0 * 1f64.exp()).abs() < 1e-12);
    }
}
