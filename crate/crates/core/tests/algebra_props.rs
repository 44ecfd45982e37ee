use gup_core::algebra::{commutator_q, normalize, Idx, MomentumTerm, Poly, Species, Symbol, TermSum, Q};
use proptest::prelude::*;

const SYMS: [Symbol; 4] = [Symbol::Alpha1, Symbol::Alpha2, Symbol::Beta1, Symbol::Beta2];

fn coeff() -> impl Strategy<Value = Poly> {
    (-5i64..=5, 1i64..=3, prop::option::of(0usize..4)).prop_map(|(n, d, s)| {
        let c = Poly::constant(Q::new(n, d));
        match s {
            Some(k) => c.mul(&Poly::symbol(SYMS[k])),
            None => c,
        }
    })
}

fn index() -> impl Strategy<Value = Idx> {
    prop_oneof![
        Just(Idx::Free('i')),
        Just(Idx::Free('j')),
        Just(Idx::Free('k')),
        (0u32..3).prop_map(Idx::Dummy),
    ]
}

fn term() -> impl Strategy<Value = MomentumTerm> {
    (
        coeff(),
        0u8..4,
        0u32..3,
        prop::collection::vec((index(), index()), 0..2),
        prop::collection::vec(index(), 0..3),
        -3i32..=3,
    )
        .prop_map(|(c, ip, hp, deltas, comps, pn)| {
            let mut t = MomentumTerm::scalar(c).with_pnorm(pn);
            t.i_pow = ip;
            t.hbar_pow = hp;
            for (a, b) in deltas {
                t = t.with_delta(a, b);
            }
            for a in comps {
                t = t.with_component(a);
            }
            t
        })
}

fn sum() -> impl Strategy<Value = TermSum> {
    prop::collection::vec(term(), 0..5).prop_map(TermSum::from_terms)
}

/// Deformed-species sums without dummy indices, as the commutator expects
/// well-formed inputs.
fn momentum_sum() -> impl Strategy<Value = TermSum> {
    let idx = prop_oneof![Just(Idx::Free('j')), Just(Idx::Free('k'))];
    let t = (coeff(), prop::collection::vec(idx, 0..3), -2i32..=2).prop_map(|(c, comps, pn)| {
        let mut t = MomentumTerm::scalar(c).with_pnorm(pn).with_species(Species::Deformed);
        for a in comps {
            t = t.with_component(a);
        }
        t
    });
    prop::collection::vec(t, 0..3).prop_map(TermSum::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalize_is_idempotent(s in sum()) {
        let once = normalize(&s);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn normalize_cancels_negation(s in sum()) {
        prop_assert!(normalize(&s.sub(&s)).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commutator_is_linear(a in momentum_sum(), b in momentum_sum(), k in -4i64..=4) {
        let i = Idx::Free('i');
        let kq = Poly::integer(k);
        let lhs = commutator_q(i, &a.add(&b.scale(&kq)));
        let rhs = normalize(&commutator_q(i, &a).add(&commutator_q(i, &b).scale(&kq)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_obeys_product_rule(a in momentum_sum(), b in momentum_sum()) {
        let i = Idx::Free('i');
        let lhs = commutator_q(i, &a.mul(&b));
        let rhs = normalize(&commutator_q(i, &a).mul(&b).add(&a.mul(&commutator_q(i, &b))));
        prop_assert_eq!(lhs, rhs);
    }
}
