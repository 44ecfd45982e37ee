//! Plain-text operator format used by fixtures and the CLI.
//!
//! A sum is `term (('+'|'-') term)*`; a term is `factor ('*' factor)*` with
//! factors drawn from
//! - rational numbers (`3`, `1/2`) and symbols (`alpha1`, `beta2`, `a`, `b`,
//!   `alpha`, `n`), optionally raised to a power (`alpha1^2`) or grouped in
//!   parentheses (`(alpha1+alpha2)`),
//! - `i`, `h`, `ih` (the imaginary unit and ħ, powers allowed: `h^2`),
//! - Kronecker deltas `d_ij`,
//! - momentum components `p_i` (deformed) and `p0_i` (canonical),
//! - momentum norms `p`, `p^2`, `p^-1`, `p0^-3`.
//!
//! An index letter repeated inside one term is summed (Einstein convention).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed};

use super::poly::{Poly, Symbol, Q};
use super::term::{Idx, MomentumTerm, Species, TermSum};
use crate::error::{GupError, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(GupError::Parse(msg.into()))
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected integer at offset {start}"));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|e| GupError::Parse(format!("{e}")))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b'a'..=b'z' | b'0'..=b'9')) {
            self.pos += 1;
        }
        String::from_utf8(self.s[start..self.pos].to_vec()).unwrap()
    }

    fn power(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn index_letters(&mut self) -> Result<Vec<char>> {
        if !self.eat(b'_') {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        while let Some(c @ (b'a'..=b'z' | b'0'..=b'9')) = self.peek() {
            out.push(c as char);
            self.pos += 1;
        }
        if out.is_empty() {
            return err("expected index letters after '_'");
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let mut t = self.term()?;
            if sign < 0 {
                t.coeff = t.coeff.neg();
            }
            out.push(t);
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut t = RawTerm::default();
        self.factor(&mut t)?;
        while self.eat(b'*') {
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn factor(&mut self, t: &mut RawTerm) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return err("unbalanced parenthesis");
                }
                let mut poly = Poly::zero();
                for r in inner {
                    if r.i_pow != 0 || r.hbar_pow != 0 || !r.deltas.is_empty() || !r.comps.is_empty() || r.pnorm != 0 {
                        return err("parenthesised groups may only contain scalar coefficients");
                    }
                    poly = poly.add(&r.coeff);
                }
                let k = self.power()?;
                if k < 0 {
                    return err("negative power of a coefficient group");
                }
                t.coeff = t.coeff.mul(&poly.pow(k as u32));
            }
            Some(b'0'..=b'9') => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { 1 };
                if den == 0 {
                    return err("zero denominator");
                }
                t.coeff = t.coeff.scale(Ratio::new(num, den));
            }
            Some(b'a'..=b'z') => {
                let start = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "i" | "h" | "ih" => {
                        let k = self.power()?;
                        if k < 0 {
                            return err("negative power of i or h");
                        }
                        if name.contains('i') {
                            t.i_pow += k as u32;
                        }
                        if name.contains('h') {
                            t.hbar_pow += k as u32;
                        }
                    }
                    "d" => {
                        let ix = self.index_letters()?;
                        if ix.len() != 2 {
                            return err(format!("delta needs two indices at offset {start}"));
                        }
                        t.deltas.push((ix[0], ix[1]));
                    }
                    "p" | "p0" => {
                        let species = if name == "p0" { Species::Canonical } else { Species::Deformed };
                        t.set_species(species)?;
                        let ix = self.index_letters()?;
                        match ix.len() {
                            0 => t.pnorm += self.power()? as i32,
                            1 => {
                                let k = self.power()?;
                                if k < 0 {
                                    return err("negative power of a momentum component");
                                }
                                for _ in 0..k {
                                    t.comps.push(ix[0]);
                                }
                            }
                            _ => return err("momentum component takes one index"),
                        }
                    }
                    other => {
                        let Some(sym) = Symbol::from_name(other) else {
                            return err(format!("unknown factor '{other}' at offset {start}"));
                        };
                        let k = self.power()?;
                        if k < 0 {
                            return err("negative power of a symbol");
                        }
                        t.coeff = t.coeff.mul(&Poly::symbol(sym).pow(k as u32));
                    }
                }
            }
            other => {
                return err(format!(
                    "unexpected {} at offset {}",
                    other.map_or("end of input".to_string(), |c| format!("'{}'", c as char)),
                    self.pos
                ))
            }
        }
        Ok(())
    }
}

struct RawTerm {
    coeff: Poly,
    i_pow: u32,
    hbar_pow: u32,
    species: Option<Species>,
    deltas: Vec<(char, char)>,
    comps: Vec<char>,
    pnorm: i32,
}

impl Default for RawTerm {
    fn default() -> Self {
        RawTerm {
            coeff: Poly::one(),
            i_pow: 0,
            hbar_pow: 0,
            species: None,
            deltas: Vec::new(),
            comps: Vec::new(),
            pnorm: 0,
        }
    }
}

impl RawTerm {
    fn set_species(&mut self, s: Species) -> Result<()> {
        match self.species {
            Some(old) if old != s => err("a term cannot mix p and p0 factors"),
            _ => {
                self.species = Some(s);
                Ok(())
            }
        }
    }

    fn into_term(self) -> Result<MomentumTerm> {
        let mut counts: BTreeMap<char, usize> = BTreeMap::new();
        for c in self.deltas.iter().flat_map(|(a, b)| [*a, *b]).chain(self.comps.iter().copied()) {
            *counts.entry(c).or_default() += 1;
        }
        let mut dummies: BTreeMap<char, u32> = BTreeMap::new();
        for (c, n) in &counts {
            match n {
                1 => {}
                2 => {
                    let id = dummies.len() as u32;
                    dummies.insert(*c, id);
                }
                _ => return err(format!("index '{c}' appears {n} times in one term")),
            }
        }
        let map = |c: char| dummies.get(&c).map_or(Idx::Free(c), |d| Idx::Dummy(*d));
        Ok(MomentumTerm {
            coeff: self.coeff,
            i_pow: (self.i_pow % 4) as u8,
            hbar_pow: self.hbar_pow,
            species: self.species.unwrap_or(Species::Deformed),
            deltas: self.deltas.iter().map(|(a, b)| (map(*a), map(*b))).collect(),
            components: self.comps.iter().map(|c| map(*c)).collect(),
            pnorm_power: self.pnorm,
        })
    }
}

impl FromStr for TermSum {
    type Err = GupError;

    /// Parses without normalizing, so fixtures can exercise [`super::normalize`].
    fn from_str(text: &str) -> Result<TermSum> {
        let cleaned: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        if cleaned.is_empty() || cleaned == b"0" {
            return Ok(TermSum::zero());
        }
        let mut p = Parser { s: &cleaned, pos: 0 };
        let raw = p.sum()?;
        if p.pos != cleaned.len() {
            return err(format!("trailing input at offset {}", p.pos));
        }
        Ok(TermSum::from_terms(raw.into_iter().map(RawTerm::into_term).collect::<Result<_>>()?))
    }
}

fn idx_str(i: Idx) -> String {
    match i {
        Idx::Free(c) => c.to_string(),
        Idx::Dummy(d) => char::from_digit(d % 10, 10).unwrap().to_string(),
    }
}

/// Coefficient rendering: returns (negative, body) where body is empty for
/// a unit coefficient.
fn coeff_parts(c: &Poly) -> (bool, String) {
    if c.len() == 1 {
        let (m, q) = c.terms().next().map(|(m, q)| (*m, *q)).unwrap();
        let neg = q.is_negative();
        let a: Q = q.abs();
        let mono = super::poly::format_monomial(&m);
        let num = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
        let body = match (mono.is_empty(), a.is_one()) {
            (true, true) => String::new(),
            (true, false) => num,
            (false, true) => mono,
            (false, false) => format!("{num}*{mono}"),
        };
        (neg, body)
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for MomentumTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, coeff) = coeff_parts(&self.coeff);
        let mut factors: Vec<String> = Vec::new();
        if !coeff.is_empty() {
            factors.push(coeff);
        }
        match (self.i_pow, self.hbar_pow) {
            (0, 0) => {}
            (1, 1) => factors.push("ih".into()),
            (i, h) => {
                if i > 0 {
                    factors.push(if i == 1 { "i".into() } else { format!("i^{i}") });
                }
                if h > 0 {
                    factors.push(if h == 1 { "h".into() } else { format!("h^{h}") });
                }
            }
        }
        for (a, b) in &self.deltas {
            factors.push(format!("d_{}{}", idx_str(*a), idx_str(*b)));
        }
        let p = if self.species == Species::Canonical { "p0" } else { "p" };
        for c in &self.components {
            factors.push(format!("{p}_{}", idx_str(*c)));
        }
        match self.pnorm_power {
            0 => {}
            1 => factors.push(p.to_string()),
            k => factors.push(format!("{p}^{k}")),
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        write!(f, "{}{}", if neg { "-" } else { "" }, factors.join("*"))
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let s = t.to_string();
            if k > 0 && !s.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::normalize;

    fn parse(s: &str) -> TermSum {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip() {
        for s in [
            "a*p0*p0_j",
            "ih*d_ij*p^2",
            "p^-1",
            "-ih*p_i*p^-3",
            "(alpha1+alpha2)*ih*p_i",
            "1/2*alpha^2*p_i*p_j*p^-1",
        ] {
            let t = normalize(&parse(s));
            let again = normalize(&parse(&t.to_string()));
            assert_eq!(t, again, "{s} -> {t}");
        }
    }

    #[test]
    fn einstein_convention() {
        let t = parse("p_k*p_k");
        assert_eq!(t.terms[0].components, vec![Idx::Dummy(0), Idx::Dummy(0)]);
        assert_eq!(normalize(&t).to_string(), "p^2");
        assert!("p_k*p_k*d_kj".parse::<TermSum>().is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!("p_i*p0_j".parse::<TermSum>().is_err());
        assert!("foo".parse::<TermSum>().is_err());
        assert!("(p_i)".parse::<TermSum>().is_err());
        assert!("d_i".parse::<TermSum>().is_err());
    }
}
