use std::cmp::Ordering;
use std::fmt;

/// Power product over variable indices. Coordinates occupy the low indices and
/// generators follow, so lexicographic tie-breaking puts coordinates first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // sorted by variable, exponents strictly positive
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: usize) -> Self {
        Monomial {
            exps: vec![(v as u32, 1)],
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&(v as u32), |p| p.0) {
                Ok(i) => exps[i].1 += e,
                Err(i) => exps.insert(i, (v as u32, e)),
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        match self.exps.binary_search_by_key(&(v as u32), |p| p.0) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|p| p.0 as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v as usize) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let d = other.exps[j].1;
                j += 1;
                if d > e {
                    return None;
                }
                if d < e {
                    out.push((v, e - d));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.exps {
            let f = other.exponent(v as usize);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial { exps: out }
    }

    /// Lowers the exponent of `v` by one, returning the old exponent.
    pub fn lower(&self, v: usize) -> Option<(u32, Monomial)> {
        let i = self.exps.binary_search_by_key(&(v as u32), |p| p.0).ok()?;
        let e = self.exps[i].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some((e, Monomial { exps }))
    }

    /// Splits off the power of `v`: returns `(exponent, rest)`.
    pub fn split(&self, v: usize) -> (u32, Monomial) {
        match self.exps.binary_search_by_key(&(v as u32), |p| p.0) {
            Ok(i) => {
                let mut exps = self.exps.clone();
                let (_, e) = exps.remove(i);
                (e, Monomial { exps })
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a.0 != b.0 {
                // the smaller variable index is present only in one of them
                return if a.0 < b.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| if e == 1 { format!("v{v}") } else { format!("v{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    #[test]
    fn graded_lex_order() {
        // x^2 > x*y > y^2 > x > y > 1
        let seq = [
            m(&[(0, 2)]),
            m(&[(0, 1), (1, 1)]),
            m(&[(1, 2)]),
            m(&[(0, 1)]),
            m(&[(1, 1)]),
            Monomial::one(),
        ];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{:?} > {:?}", w[0], w[1]);
        }
        // coordinates before generators at equal degree
        assert!(m(&[(0, 1)]) > m(&[(3, 1)]));
    }

    #[test]
    fn zero_exponents_are_dropped() {
        assert_eq!(m(&[(0, 0), (1, 2)]), m(&[(1, 2)]));
        assert!(m(&[(2, 0)]).is_one());
    }

    #[test]
    fn division() {
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(0, 1)]);
        assert_eq!(a.checked_div(&b), Some(m(&[(0, 1), (1, 1)])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(m(&[(1, 1)]).checked_div(&b), None);
        assert_eq!(a.gcd(&m(&[(0, 5), (2, 1)])), m(&[(0, 2)]));
        assert_eq!(a.mul(&b), m(&[(0, 3), (1, 1)]));
    }
}
