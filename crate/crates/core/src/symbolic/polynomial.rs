use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::Rational;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in strictly descending graded-lex order with nonzero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(v), Rational::one())],
        }
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        // multiplying by a monomial preserves the term order
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), b * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Power-rule derivative in variable `v`, treating every variable as free.
    pub fn derivative_var(&self, v: usize) -> Polynomial {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.lower(v)
                .map(|(e, rest)| (rest, c * Rational::from_integer(BigInt::from(e))))
        }))
    }

    /// Sum of `c_t * m_t` where each term is first multiplied by `factor(m_t)`.
    pub(crate) fn weighted(&self, factor: impl Fn(&Monomial) -> Rational) -> Polynomial {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let w = factor(m);
                if w.is_zero() {
                    None
                } else {
                    Some((m.clone(), c * w))
                }
            })
            .collect();
        Polynomial { terms }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Sorted list of variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.pairs().map(|p| p.0))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.0.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, c) in &self.terms {
            terms.push((a.checked_div(m)?, c.clone()));
        }
        Some(Polynomial { terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading()?;
        if d.terms.len() == 1 {
            let inv = lc.recip();
            return self.div_monomial(lm).map(|p| p.scale(&inv));
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lm)?;
            let qc = c / lc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // quotient terms are produced in descending order
        Some(Polynomial { terms: quot })
    }

    /// Coefficients in `v`: `result[k]` multiplies `v^k`.
    pub fn to_univariate(&self, v: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    pub fn from_univariate(v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vk = Monomial::from_pairs([(v, k as u32)]);
            for (m, c) in &p.terms {
                terms.push((m.mul(&vk), c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t *= num_traits::pow(values[v].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (v, e) in m.pairs() {
                    t *= values[v].powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Renders in the expression syntax accepted by the parser.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = render_monomial(m, names);
            if m.is_one() {
                s.push_str(&render_rational(&a));
            } else if a.is_one() {
                s.push_str(&body);
            } else {
                let _ = write!(s, "{}*{}", render_rational(&a), body);
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .pairs()
        .map(|(v, e)| {
            let name = names.get(v).cloned().unwrap_or_else(|| format!("v{v}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge operands before converting
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }

    #[test]
    fn like_terms_and_inverse() {
        assert!(x().add(&x().neg()).is_zero());
        let s = y().add(&x().scale(&q(2, 1))).add(&x());
        assert_eq!(s, Polynomial::from_terms([(Monomial::var(0), q(3, 1)), (Monomial::var(1), q(1, 1))]));
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(p, x().mul(&x()).sub(&y().mul(&y())));
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y()).add(&Polynomial::one());
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a));
        assert_eq!(x().exact_div(&y()), None);
        assert_eq!(p.add(&Polynomial::one()).exact_div(&b), None);
    }

    #[test]
    fn univariate_round_trip() {
        let p = x().mul(&x()).mul(&y()).add(&x().scale(&q(-3, 2))).add(&y());
        let cs = p.to_univariate(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_univariate(0, &cs), p);
    }

    #[test]
    fn render_matches_expression_syntax() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = Polynomial::one()
            .sub(&x().mul(&x()).scale(&q(3, 1)))
            .sub(&x().mul(&y()).scale(&q(4, 1)))
            .sub(&y().mul(&y()));
        assert_eq!(p.render(&names), "-3*x^2 - 4*x*y - y^2 + 1");
        assert_eq!(x().scale(&q(-1, 2)).render(&names), "-1/2*x");
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::one()
            .sub(&x().mul(&x()).scale(&q(3, 1)))
            .sub(&x().mul(&y()).scale(&q(4, 1)))
            .sub(&y().mul(&y()));
        assert_eq!(p.eval(&[q(1, 1), q(1, 1), q(0, 1)]), q(-7, 1));
        assert!((p.eval_f64(&[1.0, 1.0, 0.0]) + 7.0).abs() < 1e-12);
    }
}
