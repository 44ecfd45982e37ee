//! Graded multivariate polynomials with exact rational coefficients over the
//! formal deformation symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational coefficient.
pub type Q = Ratio<i64>;

/// Products whose total grade exceeds this are dropped.
pub const MAX_GRADE: u32 = 2;

/// Formal symbols, declared in display order (most significant first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Beta2,
    Beta1,
    B,
    Alpha1,
    Alpha2,
    A,
    Alpha,
    N,
}

pub const SYMBOLS: [Symbol; 8] = [
    Symbol::Beta2,
    Symbol::Beta1,
    Symbol::B,
    Symbol::Alpha1,
    Symbol::Alpha2,
    Symbol::A,
    Symbol::Alpha,
    Symbol::N,
];

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Beta2 => "beta2",
            Symbol::Beta1 => "beta1",
            Symbol::B => "b",
            Symbol::Alpha1 => "alpha1",
            Symbol::Alpha2 => "alpha2",
            Symbol::A => "a",
            Symbol::Alpha => "alpha",
            Symbol::N => "n",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        SYMBOLS.iter().copied().find(|sym| sym.name() == s)
    }

    /// α-like symbols have grade 1, β-like grade 2, the integer n grade 0.
    pub fn grade(self) -> u32 {
        match self {
            Symbol::Beta2 | Symbol::Beta1 | Symbol::B => 2,
            Symbol::Alpha1 | Symbol::Alpha2 | Symbol::A | Symbol::Alpha => 1,
            Symbol::N => 0,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Exponent vector indexed by [`Symbol`] discriminant.
pub type Monomial = [u8; 8];

pub fn monomial_grade(m: &Monomial) -> u32 {
    SYMBOLS.iter().map(|s| m[s.slot()] as u32 * s.grade()).sum()
}

fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = [0u8; 8];
    for k in 0..8 {
        out[k] = a[k] + b[k];
    }
    out
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(q: Q) -> Self {
        Poly::monomial([0; 8], q)
    }

    pub fn integer(k: i64) -> Self {
        Poly::constant(Q::from_integer(k))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut m = [0u8; 8];
        m[s.slot()] = 1;
        Poly::monomial(m, Q::one())
    }

    pub fn monomial(m: Monomial, q: Q) -> Self {
        let mut p = Poly::zero();
        if !q.is_zero() && monomial_grade(&m) <= MAX_GRADE {
            p.terms.insert(m, q);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order (descending lexicographic, constants last).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, m: Monomial, q: Q) {
        if q.is_zero() || monomial_grade(&m) > MAX_GRADE {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Q::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.accumulate(*m, *q);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(-Q::one())
    }

    pub fn scale(&self, k: Q) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.accumulate(*m, *q * k);
        }
        out
    }

    /// Product truncated at [`MAX_GRADE`].
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &other.terms {
                out.accumulate(monomial_mul(ma, mb), *qa * *qb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: Symbol, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            let e = m[s.slot()];
            let mut rest = *m;
            rest[s.slot()] = 0;
            let piece = Poly::monomial(rest, *q).mul(&value.pow(e as u32));
            out = out.add(&piece);
        }
        out
    }

    /// Drops monomials of grade above `max`.
    pub fn truncate_grade(&self, max: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            if monomial_grade(m) <= max {
                out.terms.insert(*m, *q);
            }
        }
        out
    }

    /// Sets every symbol to zero (keeps the constant term).
    pub fn constant_part(&self) -> Q {
        self.terms.get(&[0; 8]).copied().unwrap_or_else(Q::zero)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m[s.slot()] > 0)
    }

    /// Leading (most significant) term.
    pub fn leading(&self) -> Option<(Monomial, Q)> {
        self.terms.iter().next_back().map(|(m, q)| (*m, *q))
    }

    /// Divides by the rational content and makes the leading coefficient
    /// positive.
    pub fn primitive(&self) -> Poly {
        let Some((_, lead)) = self.leading() else {
            return Poly::zero();
        };
        let mut g_num = 0i64;
        let mut l_den = 1i64;
        for q in self.terms.values() {
            g_num = gcd(g_num, *q.numer());
            l_den = lcm(l_den, *q.denom());
        }
        let mut k = Q::new(l_den, g_num.abs());
        if lead.is_negative() {
            k = -k;
        }
        self.scale(k)
    }

    /// Exact quotient by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut out = Poly::zero();
        for (t, q) in &self.terms {
            let mut r = [0u8; 8];
            for k in 0..8 {
                r[k] = t[k].checked_sub(m[k])?;
            }
            out.terms.insert(r, *q);
        }
        Some(out)
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return [0; 8];
        };
        let mut g = *first;
        for m in it {
            for k in 0..8 {
                g[k] = g[k].min(m[k]);
            }
        }
        g
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

pub fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for s in SYMBOLS {
        match m[s.slot()] {
            0 => {}
            1 => parts.push(s.name().to_string()),
            e => parts.push(format!("{}^{}", s.name(), e)),
        }
    }
    parts.join("*")
}

fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats one signed term; the sign is returned separately.
fn format_term(m: &Monomial, q: &Q) -> (bool, String) {
    let neg = q.is_negative();
    let a = q.abs();
    let mono = format_monomial(m);
    let body = if mono.is_empty() {
        format_rational(&a)
    } else if a.is_one() {
        mono
    } else {
        format!("{}*{}", format_rational(&a), mono)
    };
    (neg, body)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, q)) in self.terms().enumerate() {
            let (neg, body) = format_term(m, q);
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, "+{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: Symbol) -> Poly {
        Poly::symbol(x)
    }

    #[test]
    fn grading_truncates() {
        let a = s(Symbol::Alpha1);
        assert_eq!(a.pow(2).len(), 1);
        assert!(a.pow(3).is_zero());
        assert!(a.mul(&s(Symbol::Beta1)).is_zero());
        assert_eq!(s(Symbol::N).pow(5).len(), 1);
    }

    #[test]
    fn display_order() {
        let p = s(Symbol::Beta2).sub(&s(Symbol::Beta1).scale(Q::from_integer(2))).sub(&s(Symbol::Alpha1).pow(2));
        assert_eq!(p.to_string(), "beta2-2*beta1-alpha1^2");
        assert_eq!(Poly::integer(-3).to_string(), "-3");
        assert_eq!(s(Symbol::Alpha).scale(Q::new(1, 2)).to_string(), "1/2*alpha");
    }

    #[test]
    fn primitive_form() {
        let p = s(Symbol::Alpha1).scale(Q::new(-2, 3)).add(&s(Symbol::Alpha2).scale(Q::new(2, 3)));
        assert_eq!(p.primitive().to_string(), "alpha1-alpha2");
    }

    #[test]
    fn substitution() {
        let p = s(Symbol::B).sub(&s(Symbol::A).pow(2));
        let q = p.substitute(Symbol::A, &s(Symbol::Alpha).neg());
        assert_eq!(q.to_string(), "b-alpha^2");
    }
}
