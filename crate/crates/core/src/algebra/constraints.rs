//! Polynomial constraints extracted from commutator identities.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::commutator::{representation_commutator, target_commutator};
use super::poly::{format_monomial, Monomial, Poly, Symbol, Q};
use super::term::{normalize, Idx, MomentumTerm, TermSum};
use crate::error::{GupError, Result};

/// `poly = 0`, stored in primitive form (content removed, leading
/// coefficient positive).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Equation {
    poly: Poly,
}

impl Equation {
    pub fn new(poly: &Poly) -> Self {
        Equation { poly: poly.primitive() }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Splits into leading term (lhs) and the negated rest (rhs).
    fn sides(&self) -> (Poly, Poly) {
        match self.poly.leading() {
            None => (Poly::zero(), Poly::zero()),
            Some((m, q)) => {
                let lhs = Poly::monomial(m, q);
                (lhs.clone(), lhs.sub(&self.poly))
            }
        }
    }

    /// `lhs=rhs` with the rhs in expanded form.
    pub fn display(&self) -> String {
        let (l, r) = self.sides();
        format!("{l}={r}")
    }

    /// `lhs=rhs` with a common monomial factor pulled out of a multi-term rhs,
    /// e.g. `b=(n+1)*alpha^2`. `rename` relabels the lhs symbol.
    pub fn display_factored(&self, rename: Option<&str>) -> String {
        let (l, r) = self.sides();
        let lhs = match rename {
            Some(name) => name.to_string(),
            None => l.to_string(),
        };
        let g: Monomial = r.monomial_content();
        let rhs = if r.len() > 1 && g != [0; 8] {
            let rest = r.div_monomial(&g).expect("content divides every term");
            format!("({rest})*{}", format_monomial(&g))
        } else {
            r.to_string()
        };
        format!("{lhs}={rhs}")
    }

    /// Solves for `s` when the equation is `s + (terms free of s) = 0` with a
    /// unit coefficient on `s`.
    pub fn solve_for(&self, s: Symbol) -> Option<Poly> {
        let sp = Poly::symbol(s);
        let (m, _) = sp.leading()?;
        let mut coeff = Q::zero();
        let mut rest = Poly::zero();
        for (tm, tq) in self.poly.terms() {
            if *tm == m {
                coeff = *tq;
            } else {
                rest = rest.add(&Poly::monomial(*tm, *tq));
            }
        }
        if coeff.is_zero() || rest.contains(s) {
            return None;
        }
        Some(rest.scale(-Q::from_integer(1) / coeff))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Serialize for Equation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.display())
    }
}

/// Ordered, duplicate-free list of constraints.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ConstraintSet {
    pub equations: Vec<Equation>,
}

impl ConstraintSet {
    pub fn push(&mut self, poly: &Poly) {
        if poly.is_zero() {
            return;
        }
        let e = Equation::new(poly);
        if !self.equations.contains(&e) {
            self.equations.push(e);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn strings(&self) -> Vec<String> {
        self.equations.iter().map(Equation::display).collect()
    }
}

fn structure(t: &MomentumTerm) -> (Vec<(Idx, Idx)>, Vec<Idx>, i32, u8, u32) {
    (t.deltas.clone(), t.components.clone(), t.pnorm_power, t.i_pow, t.hbar_pow)
}

/// Extracts the constraints from a residual proportional to
/// (p_i δ_jk − p_j δ_ik): the coefficient of the p⁻¹ structure first, then
/// that of the p⁰ structure.
pub fn solve_jacobi_constraints(residual: &TermSum) -> Result<ConstraintSet> {
    let r = normalize(residual);
    let (i, j, k) = (Idx::Free('i'), Idx::Free('j'), Idx::Free('k'));
    let mut set = ConstraintSet::default();
    let mut seen = vec![false; r.terms.len()];
    let mut pairs: Vec<(i32, Poly)> = Vec::new();
    for (a, t) in r.terms.iter().enumerate() {
        let (deltas, comps, pn, ip, hp) = structure(t);
        if deltas == vec![(j, k)] && comps == vec![i] {
            // Its antisymmetric partner must carry the negated coefficient.
            let partner = r.terms.iter().position(|u| {
                structure(u) == (vec![(i, k)], vec![j], pn, ip, hp)
            });
            let Some(b) = partner else {
                return Err(GupError::Structure(format!("no (i<->j) partner for term {t}")));
            };
            if !r.terms[b].coeff.add(&t.coeff).is_zero() {
                return Err(GupError::Structure(format!("term {t} is not antisymmetric under i<->j")));
            }
            seen[a] = true;
            seen[b] = true;
            pairs.push((pn, t.coeff.clone()));
        }
    }
    if let Some(a) = seen.iter().position(|s| !s) {
        return Err(GupError::Structure(format!("unexpected residual term {}", r.terms[a])));
    }
    pairs.sort_by_key(|(pn, _)| *pn);
    for (_, c) in pairs {
        set.push(&c);
    }
    Ok(set)
}

/// Result of matching the canonical-variable representation to the target
/// algebra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationMatch {
    /// Coefficient-wise matching conditions.
    pub equations: ConstraintSet,
    /// a expressed through α.
    pub a_solution: Equation,
    /// b expressed through α and n.
    pub b_solution: Equation,
}

impl RepresentationMatch {
    /// `b=(n+1)*alpha^2`.
    pub fn b_relation(&self) -> String {
        self.b_solution.display_factored(None)
    }

    /// The relation with b identified as β, optionally at a fixed integer n
    /// (e.g. `beta=2*alpha^2` at n = 1).
    pub fn beta_relation(&self, n: Option<i64>) -> String {
        let eq = match n {
            None => self.b_solution.clone(),
            Some(n) => Equation::new(&self.b_solution.poly().substitute(Symbol::N, &Poly::integer(n))),
        };
        eq.display_factored(Some("beta"))
    }
}

/// Matches [q_i, p_j] from p_j = p0_j + a p0 p0_j + b p0² p0_j against the
/// target algebra with β1 = nα², β2 = (2n+1)α² and solves for a and b.
pub fn match_representation() -> Result<RepresentationMatch> {
    let diff = normalize(&representation_commutator().sub(&target_commutator()));
    let mut raw = ConstraintSet::default();
    for t in &diff.terms {
        raw.push(&t.coeff);
    }
    // Order: the a-condition first, then the b-conditions by size.
    let mut equations = raw.equations.clone();
    equations.sort_by_key(|e| (e.poly().contains(Symbol::B), e.poly().len()));
    let equations = ConstraintSet { equations };

    let a_eq = equations
        .equations
        .iter()
        .find(|e| e.solve_for(Symbol::A).is_some() && !e.poly().contains(Symbol::B))
        .cloned()
        .ok_or_else(|| GupError::Inconsistent("no equation determines a".into()))?;
    let a_val = a_eq.solve_for(Symbol::A).expect("checked above");

    let reduced: Vec<Poly> = equations
        .equations
        .iter()
        .map(|e| e.poly().substitute(Symbol::A, &a_val))
        .filter(|p| !p.is_zero())
        .collect();
    let b_poly = reduced
        .iter()
        .find(|p| Equation::new(p).solve_for(Symbol::B).is_some())
        .ok_or_else(|| GupError::Inconsistent("no equation determines b".into()))?;
    let b_val = Equation::new(b_poly).solve_for(Symbol::B).expect("checked above");
    for p in &reduced {
        let left = p.substitute(Symbol::B, &b_val);
        if !left.is_zero() {
            return Err(GupError::Inconsistent(format!("residual condition {left} = 0")));
        }
    }
    Ok(RepresentationMatch {
        equations,
        a_solution: Equation::new(&Poly::symbol(Symbol::A).sub(&a_val)),
        b_solution: Equation::new(&Poly::symbol(Symbol::B).sub(&b_val)),
    })
}
