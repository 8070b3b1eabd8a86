use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::context::{Context, Ctx};
use super::gcd::gcd;
use super::monomial::Monomial;
use super::polynomial::{rational_to_f64, render_rational, Polynomial};
use super::Rational;
use crate::error::{Error, Result};

/// Reduced rational function in the coordinates and exponential generators
/// of a context.
#[derive(Clone)]
pub struct ScalarField {
    ctx: Ctx,
    num: Polynomial,
    den: Polynomial,
}

impl ScalarField {
    /// Builds `num / den` in reduced form.
    pub fn new(ctx: &Ctx, num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(ctx.clone(), num, den))
    }

    fn reduced(ctx: Ctx, num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero(&ctx);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Self::normalized(ctx, num, den)
    }

    // assumes coprime inputs; fixes the leading coefficient of den to 1
    fn normalized(ctx: Ctx, num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            ScalarField { ctx, num, den }
        } else {
            let inv = lc.recip();
            ScalarField {
                ctx,
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_polynomial(ctx: &Ctx, p: Polynomial) -> Self {
        ScalarField {
            ctx: ctx.clone(),
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::from_polynomial(ctx, Polynomial::zero())
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_polynomial(ctx, Polynomial::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        Self::from_polynomial(ctx, Polynomial::constant(c))
    }

    pub fn int(ctx: &Ctx, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    pub fn coord(ctx: &Ctx, i: usize) -> Self {
        assert!(i < ctx.dim(), "coordinate index {i} out of range");
        Self::from_polynomial(ctx, Polynomial::var(i))
    }

    /// The generator with index `k` in the context.
    pub fn generator(ctx: &Ctx, k: usize) -> Self {
        assert!(k < ctx.generators().len(), "generator index {k} out of range");
        Self::from_polynomial(ctx, Polynomial::var(ctx.generator_var(k)))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn has_generators(&self) -> bool {
        let n = self.ctx.dim();
        self.num
            .variables()
            .into_iter()
            .chain(self.den.variables())
            .any(|v| v >= n)
    }

    /// Re-tags the field with an extension of its context.
    pub fn lift(&self, ctx: &Ctx) -> Result<Self> {
        if !ctx.extends(&self.ctx) {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: ctx.to_string(),
            });
        }
        Ok(ScalarField {
            ctx: ctx.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Context::check_same(&self.ctx, &other.ctx)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Context::check_same(&self.ctx, &other.ctx)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ctx = self.ctx.clone();
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return ScalarField {
                    ctx,
                    num,
                    den: Polynomial::one(),
                };
            }
            return Self::reduced(ctx, num, self.den.clone());
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return ScalarField {
                ctx,
                num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return ScalarField {
                ctx,
                num,
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return Self::normalized(ctx, num, den);
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero(&ctx);
        }
        let den = b1.mul(&d1).mul(&g);
        let h = gcd(&num, &g);
        if h.is_one() {
            Self::normalized(ctx, num, den)
        } else {
            Self::normalized(
                ctx,
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let ctx = self.ctx.clone();
        if self.den.is_one() && other.den.is_one() {
            return ScalarField {
                ctx,
                num: self.num.mul(&other.num),
                den: Polynomial::one(),
            };
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let div = |p: &Polynomial, g: &Polynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&other.den, &g1));
        Self::normalized(ctx, num, den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        ScalarField {
            ctx: self.ctx.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.ctx.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Context::check_same(&self.ctx, &other.ctx)?;
        Ok(self.mul_unchecked(&other.recip()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(ScalarField {
            ctx: self.ctx.clone(),
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    fn raw_partial(&self, p: &Polynomial, i: usize) -> Polynomial {
        let mut d = p.derivative_var(i);
        let n = self.ctx.dim();
        for (k, g) in self.ctx.generators().iter().enumerate() {
            if g.coord != i {
                continue;
            }
            let var = n + k;
            let rate = g.rate.clone();
            let chain = p.weighted(|m: &Monomial| {
                rate.clone() * Rational::from_integer(BigInt::from(m.exponent(var)))
            });
            d = d.add(&chain);
        }
        d
    }

    /// Partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.ctx.dim(), "coordinate index {i} out of range");
        let dn = self.raw_partial(&self.num, i);
        if self.den.is_constant() {
            return ScalarField {
                ctx: self.ctx.clone(),
                num: dn,
                den: self.den.clone(),
            };
        }
        let dd = self.raw_partial(&self.den, i);
        if dd.is_zero() {
            return Self::reduced(self.ctx.clone(), dn, self.den.clone());
        }
        // with g = gcd(d, d'), d = g·e and d' = g·f:
        // (n/d)' = (n'e − nf)/(d·e), which keeps repeated factors of d from piling up
        let g = gcd(&self.den, &dd);
        let (e, f) = if g.is_one() {
            (self.den.clone(), dd)
        } else {
            (
                self.den.exact_div(&g).expect("gcd divides"),
                dd.exact_div(&g).expect("gcd divides"),
            )
        };
        let num = dn.mul(&e).sub(&self.num.mul(&f));
        Self::reduced(self.ctx.clone(), num, self.den.mul(&e))
    }

    /// Exact value at a point; only for generator-free fields.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if self.has_generators() {
            return Err(Error::GeneratorValue(self.to_string()));
        }
        self.eval_vars(point)
    }

    fn eval_vars(&self, vals: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            return Err(Error::Pole {
                point: vals[..self.ctx.dim()].iter().map(render_rational).collect(),
            });
        }
        Ok(self.num.eval(vals) / d)
    }

    /// Exact value at a point where every generator has rational value,
    /// which happens when `rate * coordinate = 0` there (the generator is 1).
    pub fn eval_with_generators(&self, point: &[Rational]) -> Result<Rational> {
        let mut vals = point.to_vec();
        let used: Vec<usize> = self.num.variables().into_iter().chain(self.den.variables()).collect();
        for (k, g) in self.ctx.generators().iter().enumerate() {
            if (&g.rate * &point[g.coord]).is_zero() {
                vals.push(Rational::one());
            } else if used.contains(&self.ctx.generator_var(k)) {
                return Err(Error::GeneratorValue(self.to_string()));
            } else {
                vals.push(Rational::zero());
            }
        }
        self.eval_vars(&vals)
    }

    /// Floating-point value; generators are evaluated with `exp`.
    pub fn numeric_eval(&self, point: &[f64]) -> Result<f64> {
        let mut vals = point.to_vec();
        for g in self.ctx.generators() {
            vals.push((rational_to_f64(&g.rate) * point[g.coord]).exp());
        }
        let d = self.den.eval_f64(&vals);
        if d == 0.0 {
            return Err(Error::Pole {
                point: point.iter().map(|v| v.to_string()).collect(),
            });
        }
        Ok(self.num.eval_f64(&vals) / d)
    }

    /// Parser-compatible rendering.
    pub fn render(&self) -> String {
        let names = self.ctx.names();
        let n = self.num.render(&names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.render(&names);
        let n = if self.num.len() > 1 || self.num.leading_coefficient().is_negative() {
            format!("({n})")
        } else {
            n
        };
        if self.den.len() == 1 && self.den.leading_coefficient().is_one() {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        Context::same(&self.ctx, &other.ctx) && self.num == other.num && self.den == other.den
    }
}

impl Eq for ScalarField {}

impl Hash for ScalarField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn assert_same(a: &ScalarField, b: &ScalarField) {
    if let Err(e) = Context::check_same(&a.ctx, &b.ctx) {
        panic!("{e}");
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        assert_same(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        assert_same(self, rhs);
        self.add_unchecked(&-rhs)
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        assert_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField {
            ctx: self.ctx.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: &ScalarField) -> ScalarField {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::context::Generator;

    fn ctx() -> Ctx {
        Context::coordinates(&["x", "y", "z"])
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn additive_inverse_and_like_terms() {
        let c = ctx();
        let x = ScalarField::coord(&c, 0);
        assert!((&x + &-&x).is_zero());
        let inv = x.recip().unwrap();
        let two_over_x = &inv + &inv;
        assert_eq!(two_over_x.num(), &Polynomial::from_int(2));
        assert_eq!(two_over_x.den(), &Polynomial::var(0));
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let c = ctx();
        let x = ScalarField::coord(&c, 0);
        let y = ScalarField::coord(&c, 1);
        let s = &x + &y;
        let d = &(&x * &x) - &(&y * &y);
        let r = s.checked_div(&d).unwrap();
        assert_eq!(r, (&x - &y).recip().unwrap());
        assert!((&r * &d.checked_div(&s).unwrap()).is_one());
    }

    #[test]
    fn denominator_is_normalized() {
        let c = ctx();
        let x = ScalarField::coord(&c, 0);
        let f = ScalarField::one(&c).checked_div(&x.scale(&q(-2, 3))).unwrap();
        assert!(f.den().leading_coefficient().is_one());
        assert_eq!(f.num(), &Polynomial::constant(q(-3, 2)));
    }

    #[test]
    fn quotient_rule() {
        let c = ctx();
        let x = ScalarField::coord(&c, 0);
        let f = x.recip().unwrap();
        let expect = -x.pow(-2).unwrap();
        assert_eq!(f.partial(0), expect);
        assert!(f.partial(1).is_zero());
    }

    #[test]
    fn generator_rule() {
        let c = Context::new(
            vec!["t".into(), "x".into(), "y".into()],
            vec![Generator {
                name: "E".into(),
                coord: 0,
                rate: q(2, 1),
            }],
        )
        .unwrap();
        let e = ScalarField::generator(&c, 0);
        assert_eq!(e.partial(0), e.scale(&q(2, 1)));
        assert!(e.partial(1).is_zero());
        let inv = e.recip().unwrap();
        assert_eq!(inv.partial(0), inv.scale(&q(-2, 1)));
        assert!(e.eval(&[q(0, 1), q(0, 1), q(0, 1)]).is_err());
        assert_eq!(
            e.eval_with_generators(&[q(0, 1), q(5, 1), q(0, 1)]).unwrap(),
            q(1, 1)
        );
        assert!((e.numeric_eval(&[0.5, 0.0, 0.0]).unwrap() - 1f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn pole_error() {
        let c = ctx();
        let f = ScalarField::coord(&c, 0).recip().unwrap();
        assert!(matches!(
            f.eval(&[q(0, 1), q(1, 1), q(1, 1)]),
            Err(Error::Pole { .. })
        ));
        assert!(ScalarField::zero(&c).recip().is_err());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = ScalarField::coord(&ctx(), 0);
        let b = ScalarField::coord(&Context::coordinates(&["u", "v", "w"]), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch { .. })));
    }
}
