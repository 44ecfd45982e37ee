//! Operator monomials in commuting momentum factors and their normal form.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{Poly, Q};

/// Tensor index: a named free index or a summed (dummy) one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Idx {
    Free(char),
    Dummy(u32),
}

/// Which momentum the factors refer to: the deformed p or the canonical p₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Species {
    Deformed,
    Canonical,
}

/// coeff · i^{i_pow} · ħ^{hbar_pow} · Πδ · Πp_c · |p|^{pnorm_power}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentumTerm {
    pub coeff: Poly,
    pub i_pow: u8,
    pub hbar_pow: u32,
    pub species: Species,
    pub deltas: Vec<(Idx, Idx)>,
    pub components: Vec<Idx>,
    pub pnorm_power: i32,
}

/// Everything except the coefficient; like terms share a signature.
pub type Signature = (Species, u8, u32, Vec<(Idx, Idx)>, Vec<Idx>, i32);

impl MomentumTerm {
    pub fn scalar(coeff: Poly) -> Self {
        MomentumTerm {
            coeff,
            i_pow: 0,
            hbar_pow: 0,
            species: Species::Deformed,
            deltas: Vec::new(),
            components: Vec::new(),
            pnorm_power: 0,
        }
    }

    pub fn one() -> Self {
        Self::scalar(Poly::one())
    }

    pub fn with_ihbar(mut self) -> Self {
        self.i_pow += 1;
        self.hbar_pow += 1;
        self
    }

    pub fn with_species(mut self, s: Species) -> Self {
        self.species = s;
        self
    }

    pub fn with_delta(mut self, a: Idx, b: Idx) -> Self {
        self.deltas.push((a, b));
        self
    }

    pub fn with_component(mut self, a: Idx) -> Self {
        self.components.push(a);
        self
    }

    pub fn with_pnorm(mut self, k: i32) -> Self {
        self.pnorm_power += k;
        self
    }

    pub fn times_coeff(mut self, c: &Poly) -> Self {
        self.coeff = self.coeff.mul(c);
        self
    }

    pub fn signature(&self) -> Signature {
        (
            self.species,
            self.i_pow,
            self.hbar_pow,
            self.deltas.clone(),
            self.components.clone(),
            self.pnorm_power,
        )
    }

    /// Momentum degree: number of components plus the |p| power.
    pub fn momentum_degree(&self) -> i32 {
        self.components.len() as i32 + self.pnorm_power
    }

    pub fn has_momentum(&self) -> bool {
        !self.components.is_empty() || self.pnorm_power != 0
    }

    fn max_dummy(&self) -> Option<u32> {
        self.indices()
            .filter_map(|i| match i {
                Idx::Dummy(d) => Some(d),
                Idx::Free(_) => None,
            })
            .max()
    }

    fn indices(&self) -> impl Iterator<Item = Idx> + '_ {
        self.deltas.iter().flat_map(|(a, b)| [*a, *b]).chain(self.components.iter().copied())
    }

    fn rename(&mut self, from: Idx, to: Idx) {
        for (a, b) in self.deltas.iter_mut() {
            if *a == from {
                *a = to;
            }
            if *b == from {
                *b = to;
            }
        }
        for c in self.components.iter_mut() {
            if *c == from {
                *c = to;
            }
        }
    }

    fn shift_dummies(&mut self, offset: u32) {
        let shift = |i: &mut Idx| {
            if let Idx::Dummy(d) = i {
                *d += offset;
            }
        };
        for (a, b) in self.deltas.iter_mut() {
            shift(a);
            shift(b);
        }
        self.components.iter_mut().for_each(shift);
    }

    /// Product of commuting monomials; dummies of `other` are renamed apart.
    pub fn mul(&self, other: &MomentumTerm) -> MomentumTerm {
        let mut rhs = other.clone();
        if let Some(m) = self.max_dummy() {
            rhs.shift_dummies(m + 1);
        }
        self.join(&rhs)
    }

    /// Product that keeps index names as they are, so a dummy shared by both
    /// factors stays contracted.
    pub fn join(&self, rhs: &MomentumTerm) -> MomentumTerm {
        let rhs = rhs.clone();
        let species = match (self.has_momentum(), rhs.has_momentum()) {
            (true, true) => {
                assert_eq!(self.species, rhs.species, "mixed momentum species in one monomial");
                self.species
            }
            (true, false) => self.species,
            _ => rhs.species,
        };
        let mut deltas = self.deltas.clone();
        deltas.extend(rhs.deltas);
        let mut components = self.components.clone();
        components.extend(rhs.components);
        MomentumTerm {
            coeff: self.coeff.mul(&rhs.coeff),
            i_pow: self.i_pow + rhs.i_pow,
            hbar_pow: self.hbar_pow + rhs.hbar_pow,
            species,
            deltas,
            components,
            pnorm_power: self.pnorm_power + rhs.pnorm_power,
        }
    }

    /// Contraction, i-power reduction and canonical ordering of one term.
    pub fn normalized(&self) -> MomentumTerm {
        let mut t = self.clone();
        // i^k with k reduced mod 4, the sign folded into the coefficient.
        let k = t.i_pow % 4;
        if k >= 2 {
            t.coeff = t.coeff.neg();
        }
        t.i_pow = k % 2;

        // Delta contraction to a fixed point.
        loop {
            let mut changed = false;
            let mut idx = 0;
            while idx < t.deltas.len() {
                let (a, b) = t.deltas[idx];
                if a == b {
                    t.deltas.remove(idx);
                    if let Idx::Dummy(_) = a {
                        t.coeff = t.coeff.scale(Ratio::from_integer(3));
                    }
                    changed = true;
                    continue;
                }
                let (dummy, other) = match (a, b) {
                    (_, Idx::Dummy(_)) => (b, a),
                    (Idx::Dummy(_), _) => (a, b),
                    _ => {
                        idx += 1;
                        continue;
                    }
                };
                t.deltas.remove(idx);
                t.rename(dummy, other);
                changed = true;
            }
            if !changed {
                break;
            }
        }

        // Paired dummy components contract to |p|².
        let mut counts: BTreeMap<Idx, usize> = BTreeMap::new();
        for c in &t.components {
            *counts.entry(*c).or_default() += 1;
        }
        for (c, n) in counts {
            if let Idx::Dummy(_) = c {
                let pairs = n / 2;
                if pairs > 0 {
                    let mut removed = 0;
                    t.components.retain(|x| {
                        if *x == c && removed < 2 * pairs {
                            removed += 1;
                            false
                        } else {
                            true
                        }
                    });
                    t.pnorm_power += 2 * pairs as i32;
                }
            }
        }

        // Canonical dummy names in order of first appearance.
        let mut order: Vec<Idx> = Vec::new();
        for i in t.indices() {
            if matches!(i, Idx::Dummy(_)) && !order.contains(&i) {
                order.push(i);
            }
        }
        let base = order.iter().filter_map(|i| if let Idx::Dummy(d) = i { Some(*d) } else { None }).max().map_or(0, |m| m + 1);
        for (k, old) in order.iter().enumerate() {
            t.rename(*old, Idx::Dummy(base + k as u32));
        }
        for (k, _) in order.iter().enumerate() {
            t.rename(Idx::Dummy(base + k as u32), Idx::Dummy(k as u32));
        }

        for d in t.deltas.iter_mut() {
            if d.1 < d.0 {
                *d = (d.1, d.0);
            }
        }
        t.deltas.sort();
        t.components.sort();
        if !t.has_momentum() {
            t.species = Species::Deformed;
        }
        t
    }
}

/// Sum of momentum monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermSum {
    pub terms: Vec<MomentumTerm>,
}

impl TermSum {
    pub fn zero() -> Self {
        TermSum::default()
    }

    pub fn from_terms(terms: Vec<MomentumTerm>) -> Self {
        TermSum { terms }
    }

    pub fn single(t: MomentumTerm) -> Self {
        TermSum { terms: vec![t] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TermSum { terms }
    }

    pub fn neg(&self) -> TermSum {
        self.scale(&Poly::constant(-Q::one()))
    }

    pub fn sub(&self, other: &TermSum) -> TermSum {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Poly) -> TermSum {
        TermSum { terms: self.terms.iter().map(|t| t.clone().times_coeff(c)).collect() }
    }

    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        TermSum { terms }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&Poly) -> Poly>(&self, f: F) -> TermSum {
        TermSum {
            terms: self
                .terms
                .iter()
                .map(|t| MomentumTerm { coeff: f(&t.coeff), ..t.clone() })
                .collect(),
        }
    }

    /// Keeps only terms satisfying the predicate.
    pub fn filter<F: Fn(&MomentumTerm) -> bool>(&self, f: F) -> TermSum {
        TermSum { terms: self.terms.iter().filter(|t| f(t)).cloned().collect() }
    }
}

/// Contracts indices, collects like terms, drops zeros and sorts canonically.
/// Idempotent; two normalized sums are equal iff they are structurally equal.
pub fn normalize(s: &TermSum) -> TermSum {
    let mut collected: BTreeMap<Signature, Poly> = BTreeMap::new();
    for t in &s.terms {
        let n = t.normalized();
        if n.coeff.is_zero() {
            continue;
        }
        let slot = collected.entry(n.signature()).or_insert_with(Poly::zero);
        *slot = slot.add(&n.coeff);
    }
    let terms = collected
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((species, i_pow, hbar_pow, deltas, components, pnorm_power), coeff)| MomentumTerm {
            coeff,
            i_pow,
            hbar_pow,
            species,
            deltas,
            components,
            pnorm_power,
        })
        .collect();
    TermSum { terms }
}

/// Drops terms whose momentum degree exceeds `max_degree`.
pub fn truncate_momentum_degree(s: &TermSum, max_degree: i32) -> TermSum {
    s.filter(|t| t.momentum_degree() <= max_degree)
}

impl MomentumTerm {
    /// True when the coefficient is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Coefficient as a single rational when it is a pure constant.
    pub fn constant_coeff(&self) -> Option<Q> {
        if self.coeff.len() == 1 && !self.coeff.constant_part().is_zero() {
            Some(self.coeff.constant_part())
        } else if self.coeff.is_zero() {
            Some(Q::zero())
        } else {
            None
        }
    }
}

/// Renames a free index throughout a sum (result normalized).
pub fn rename_free(s: &TermSum, from: char, to: char) -> TermSum {
    let terms = s
        .terms
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.rename(Idx::Free(from), Idx::Free(to));
            t
        })
        .collect();
    normalize(&TermSum { terms })
}
