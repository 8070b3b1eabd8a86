//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive-remainder-sequence algorithm: pick a main variable,
//! split off contents (computed recursively in the remaining variables), and
//! run pseudo-division on primitive parts. Results are normalized to leading
//! coefficient one.

use num_traits::Zero;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::Rational;

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let ap = a.div_monomial(&ma).expect("content divides");
    let bp = b.div_monomial(&mb).expect("content divides");
    let core = gcd_core(&ap, &bp);
    core.mul_term(&mg, &num_traits::One::one()).monic()
}

/// Gcd of many polynomials, stopping early once it reaches one.
pub fn gcd_many<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    let mut g = Polynomial::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

// Inputs carry no monomial content.
fn gcd_core(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    let va = a.variables();
    let vb = b.variables();
    if !va.iter().any(|v| vb.binary_search(v).is_ok()) {
        return Polynomial::one();
    }
    // a variable present in only one operand can be eliminated via content
    if let Some(&v) = va.iter().find(|v| vb.binary_search(v).is_err()) {
        let c = content(a, v);
        return gcd(&c, b);
    }
    if let Some(&v) = vb.iter().find(|v| va.binary_search(v).is_err()) {
        let c = content(b, v);
        return gcd(a, &c);
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.exact_div(small).is_some() {
        return small.monic();
    }
    if certainly_coprime(a, b, &va) {
        return Polynomial::one();
    }

    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .expect("nonconstant");

    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.degree_in(v) == 0 {
            // q is a nonzero element of the coefficient ring, primitive parts are coprime
            return c;
        }
        let r = pseudo_remainder(&p, &q, v);
        if r.is_zero() {
            let g = primitive_part(&q, v);
            return c.mul(&g).monic();
        }
        p = q;
        q = primitive_part(&r, v);
    }
}

/// Exact certificate that `gcd(a, b)` is constant. Both operands carry the
/// same variables `vars`. For each `v`, the other variables are replaced by
/// integers at which neither leading coefficient in `v` vanishes; the true
/// gcd then maps to a divisor of the image gcd with the same degree in `v`.
/// A constant image gcd for every `v` proves the gcd is constant. `false`
/// means only "not proven".
fn certainly_coprime(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> bool {
    let nvars = vars.iter().max().map_or(0, |m| m + 1);
    for &v in vars {
        let mut proven = false;
        // a few deterministic points; unlucky ones only cost a retry
        for attempt in 0..3i64 {
            let point: Vec<Rational> = (0..nvars)
                .map(|k| Rational::from_integer((2 + 3 * k as i64 + 7 * attempt).into()))
                .collect();
            let ua = image(a, v, &point);
            let ub = image(b, v, &point);
            let (Some(ua), Some(ub)) = (ua, ub) else { continue };
            proven = univariate_gcd_degree(ua, ub) == 0;
            break;
        }
        if !proven {
            return false;
        }
    }
    true
}

/// Coefficients in `v` evaluated at `point`, or `None` if the leading one vanishes.
fn image(p: &Polynomial, v: usize, point: &[Rational]) -> Option<Vec<Rational>> {
    let coeffs: Vec<Rational> = p.to_univariate(v).iter().map(|c| c.eval(point)).collect();
    if coeffs.last().map_or(true, |c| c.is_zero()) {
        None
    } else {
        Some(coeffs)
    }
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let trim = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a mod b, with b made monic
        let inv = b.last().expect("nonempty").recip();
        for c in b.iter_mut() {
            *c *= &inv;
        }
        while a.len() >= b.len() {
            let lead = a.last().expect("nonempty").clone();
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] -= &lead * bk;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &Polynomial, v: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .to_univariate(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.len(), c.total_degree()));
    gcd_many(coeffs.iter())
}

pub fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content(p, v);
    p.exact_div(&c).expect("content divides").monic()
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let bs = b.to_univariate(v);
    let n = bs.len() - 1;
    let lb = &bs[n];
    let mut r = a.to_univariate(v);
    while r.len() > n && r.len() > 0 {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in bs.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&lr.mul(bk));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    let out = Polynomial::from_univariate(v, &r);
    // drop any monomial content to keep the sequence small
    let mc = out.monomial_content();
    if mc.is_one() {
        out
    } else {
        let mut only_v = Monomial::one();
        for (var, e) in mc.pairs() {
            if var != v {
                only_v = only_v.mul(&Monomial::from_pairs([(var, e)]));
            }
        }
        out.div_monomial(&only_v).expect("content divides")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Rational;
    use num_bigint::BigInt;
    use num_traits::One;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }
    fn z() -> Polynomial {
        Polynomial::var(2)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn shared_linear_factor() {
        let f = x().add(&y());
        let a = f.mul(&x().sub(&c(1)));
        let b = f.mul(&y().add(&c(2)));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_inputs() {
        let a = x().mul(&x()).add(&y());
        let b = x().add(&y().mul(&y()));
        assert!(gcd(&a, &b).is_one());
        assert!(gcd(&x(), &y()).is_one());
    }

    #[test]
    fn monomial_factors() {
        let a = x().mul(&x()).mul(&y());
        let b = x().mul(&y()).mul(&y()).scale(&Rational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(gcd(&a, &b), x().mul(&y()));
    }

    #[test]
    fn trivariate_square() {
        let f = x().mul(&y()).sub(&z()).add(&c(1));
        let g = x().sub(&z().mul(&z()));
        let a = f.mul(&f).mul(&g);
        let b = f.mul(&g.add(&c(3)));
        assert_eq!(gcd(&a, &b), f.monic());
        let d = gcd(&a, &f.mul(&g).mul(&x()));
        assert_eq!(d, f.mul(&g).monic());
    }

    #[test]
    fn coprimality_certificate() {
        let a = x().mul(&x()).add(&y().mul(&y())).add(&c(1));
        let b = x().mul(&y()).add(&c(3));
        assert!(certainly_coprime(&a, &b, &[0, 1]));
        let f = x().add(&y());
        assert!(!certainly_coprime(&a.mul(&f), &b.mul(&f), &[0, 1]));
        let one = Rational::one();
        assert_eq!(univariate_gcd_degree(vec![-one.clone(), Rational::zero(), one.clone()], vec![one.clone(), one]), 1);
    }

    #[test]
    fn zero_operands() {
        let a = x().scale(&Rational::from_integer(BigInt::from(4)));
        assert_eq!(gcd(&a, &Polynomial::zero()), x());
        assert!(gcd(&Polynomial::zero(), &Polynomial::zero()).is_zero());
    }
}
