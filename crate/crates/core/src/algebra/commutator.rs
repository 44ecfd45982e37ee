//! Commutators [q_i, ·] acting as a derivation on functions of momentum.

use num_rational::Ratio;

use super::poly::{Poly, Symbol};
use super::term::{normalize, truncate_momentum_degree, Idx, MomentumTerm, Species, TermSum};

fn sym(s: Symbol) -> Poly {
    Poly::symbol(s)
}

/// Fresh dummies start far above anything a normalized input can contain.
const FRESH_BASE: u32 = 1 << 20;

/// [q_i, p_j] for the given momentum species.
fn base_bracket(i: Idx, j: Idx, species: Species) -> TermSum {
    let unit = MomentumTerm::one().with_ihbar().with_species(species);
    match species {
        Species::Canonical => TermSum::single(unit.with_delta(i, j)),
        Species::Deformed => TermSum::from_terms(vec![
            unit.clone().with_delta(i, j),
            unit.clone().with_delta(i, j).with_pnorm(1).times_coeff(&sym(Symbol::Alpha1)),
            unit.clone()
                .with_component(i)
                .with_component(j)
                .with_pnorm(-1)
                .times_coeff(&sym(Symbol::Alpha2)),
            unit.clone().with_delta(i, j).with_pnorm(2).times_coeff(&sym(Symbol::Beta1)),
            unit.with_component(i).with_component(j).times_coeff(&sym(Symbol::Beta2)),
        ]),
    }
}

fn join(t: &MomentumTerm, s: &TermSum) -> TermSum {
    TermSum::from_terms(s.terms.iter().map(|u| t.join(u)).collect())
}

/// [q_i, t] for one monomial, by the Leibniz rule over its momentum factors.
fn commutator_term(i: Idx, t: &MomentumTerm, fresh: &mut u32) -> TermSum {
    let mut out = TermSum::zero();
    for k in 0..t.components.len() {
        let mut rest = t.clone();
        let c = rest.components.remove(k);
        out = out.add(&join(&rest, &base_bracket(i, c, t.species)));
    }
    if t.pnorm_power != 0 {
        // ∂|p|^k/∂p_d = k |p|^{k-2} p_d.
        let d = Idx::Dummy(*fresh);
        *fresh += 1;
        let mut rest = t.clone();
        rest.pnorm_power -= 2;
        rest.components.push(d);
        rest.coeff = rest.coeff.scale(Ratio::from_integer(t.pnorm_power as i64));
        out = out.add(&join(&rest, &base_bracket(i, d, t.species)));
    }
    out
}

/// [q_i, s], normalized.
pub fn commutator_q(i: Idx, s: &TermSum) -> TermSum {
    let s = normalize(s);
    let mut fresh = FRESH_BASE;
    let mut out = TermSum::zero();
    for t in &s.terms {
        out = out.add(&commutator_term(i, t, &mut fresh));
    }
    normalize(&out)
}

pub fn free(c: char) -> Idx {
    Idx::Free(c)
}

/// iħ(δ_ij + α1 δ_ij p + α2 p_i p_j p⁻¹ + β1 δ_ij p² + β2 p_i p_j).
pub fn commutator_qi_pj(i: char, j: char) -> TermSum {
    normalize(&base_bracket(free(i), free(j), Species::Deformed))
}

/// [q_i, p] kept to first relative order in momentum:
/// iħ{p_i p⁻¹ + (α1 + α2) p_i}.
pub fn commutator_qi_pnorm(i: char) -> TermSum {
    let p = TermSum::single(MomentumTerm::one().with_pnorm(1));
    truncate_momentum_degree(&commutator_q(free(i), &p), 1)
}

/// [q_i, p⁻¹] kept to first relative order: −iħ{p_i p⁻³ + (α1 + α2) p_i p⁻²}.
pub fn commutator_qi_pinv(i: char) -> TermSum {
    let p = TermSum::single(MomentumTerm::one().with_pnorm(-1));
    truncate_momentum_degree(&commutator_q(free(i), &p), -1)
}

/// [[q_j,p_k],q_i] + [[p_k,q_i],q_j] = −[q_i,[q_j,p_k]] + [q_j,[q_i,p_k]].
pub fn jacobi_residual() -> TermSum {
    let (i, j) = (free('i'), free('j'));
    let left = commutator_q(i, &commutator_qi_pj('j', 'k'));
    let right = commutator_q(j, &commutator_qi_pj('i', 'k'));
    normalize(&right.sub(&left))
}

/// Substitutes coefficient symbols throughout a sum.
pub fn substitute(s: &TermSum, subs: &[(Symbol, Poly)]) -> TermSum {
    normalize(&s.map_coeffs(|c| subs.iter().fold(c.clone(), |acc, (k, v)| acc.substitute(*k, v))))
}

/// The canonical-variable expression p_j = p0_j + a p0 p0_j + b p0² p0_j.
pub fn momentum_map(j: char) -> TermSum {
    let base = MomentumTerm::one().with_species(Species::Canonical).with_component(free(j));
    TermSum::from_terms(vec![
        base.clone(),
        base.clone().with_pnorm(1).times_coeff(&sym(Symbol::A)),
        base.with_pnorm(2).times_coeff(&sym(Symbol::B)),
    ])
}

/// Rewrites a canonical-variable sum in deformed variables using the
/// inverse map p0_c = p_c(1+x), |p0| = |p|(1+x) with x = −a p + (2a² − b) p²,
/// truncated at grade 2.
pub fn canonical_to_deformed(s: &TermSum) -> TermSum {
    let a = sym(Symbol::A);
    let b = sym(Symbol::B);
    let mut out = TermSum::zero();
    for t in &normalize(s).terms {
        if t.species == Species::Deformed {
            out = out.add(&TermSum::single(t.clone()));
            continue;
        }
        // (1+x)^N = 1 − N a p + [N(2a² − b) + N(N−1)/2 a²] p².
        let n = (t.components.len() as i64) + t.pnorm_power as i64;
        let nq = Ratio::from_integer(n);
        let first = a.scale(-nq);
        let second = a
            .pow(2)
            .scale(Ratio::from_integer(2))
            .sub(&b)
            .scale(nq)
            .add(&a.pow(2).scale(Ratio::new(n * (n - 1), 2)));
        let deformed = t.clone().with_species(Species::Deformed);
        out = out.add(&TermSum::from_terms(vec![
            deformed.clone(),
            deformed.clone().with_pnorm(1).times_coeff(&first),
            deformed.with_pnorm(2).times_coeff(&second),
        ]));
    }
    normalize(&out)
}

/// [q_i, p_j] computed from the momentum map and the canonical relation
/// [q0_i, p0_j] = iħδ_ij, expressed in deformed variables.
pub fn representation_commutator() -> TermSum {
    let canonical = commutator_q(free('i'), &momentum_map('j'));
    canonical_to_deformed(&canonical)
}

/// Target algebra with α1 = α2 = −α, β1 = nα², β2 = (2n+1)α²:
/// iħ[δ_ij − α(pδ_ij + p_i p_j p⁻¹) + nα² p² δ_ij + (2n+1)α² p_i p_j].
pub fn target_commutator() -> TermSum {
    let alpha = sym(Symbol::Alpha);
    let n = sym(Symbol::N);
    let a2 = alpha.pow(2);
    substitute(
        &commutator_qi_pj('i', 'j'),
        &[
            (Symbol::Alpha1, alpha.neg()),
            (Symbol::Alpha2, alpha.neg()),
            (Symbol::Beta1, n.mul(&a2)),
            (Symbol::Beta2, n.scale(Ratio::from_integer(2)).add(&Poly::one()).mul(&a2)),
        ],
    )
}
