use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use sigmacert::group::{Character, Group, GroupElement, Letter};
use sigmacert::rips::{Chain, Simplex, Valuation};
use std::sync::OnceLock;

fn groups() -> &'static [(Group, Character)] {
    static GROUPS: OnceLock<Vec<(Group, Character)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let z2 = Group::from_template("Z^2").unwrap();
        let f2 = Group::from_template("F_2").unwrap();
        let bs = Group::from_template("BS(1,2)").unwrap();
        let chi_z2 = Character::parse(&z2, "a=1,b=-1/2").unwrap();
        let chi_f2 = Character::parse(&f2, "a=2/3,b=1").unwrap();
        // characters of BS(1,2) vanish on a
        let chi_bs = Character::parse(&bs, "a=0,t=1").unwrap();
        vec![(z2, chi_z2), (f2, chi_f2), (bs, chi_bs)]
    })
}

fn word() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..5)
}

fn element(group: &Group, w: &[(usize, bool)]) -> GroupElement {
    let letters: Vec<Letter> = w
        .iter()
        .map(|&(i, inv)| {
            let l = Letter::generator(i);
            if inv {
                l.inverse()
            } else {
                l
            }
        })
        .collect();
    group.normal_form(&letters)
}

fn simplex(group: &Group, ws: &[Vec<(usize, bool)>]) -> Simplex {
    Simplex::new(ws.iter().map(|w| element(group, w)).collect())
}

type Words = Vec<(usize, bool)>;
type ChainWords = Vec<(Vec<Words>, i64)>;

/// A q-chain with up to four terms.
fn chain_words(q: usize) -> impl Strategy<Value = ChainWords> {
    prop::collection::vec(
        (prop::collection::vec(word(), q + 1), -3i64..=3),
        0..4,
    )
}

fn chain(group: &Group, q: usize, terms: &[(Vec<Words>, i64)]) -> Chain {
    let mut c = Chain::zero(q);
    for (ws, k) in terms {
        c.add_term(simplex(group, ws), BigInt::from(*k));
    }
    c
}

fn finite(v: Valuation) -> Option<BigRational> {
    match v {
        Valuation::Finite(x) => Some(x),
        Valuation::Infinite => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boundary_of_boundary_vanishes(gi in 0usize..3, ws in (2usize..5).prop_flat_map(|q| prop::collection::vec(word(), q + 1))) {
        let (g, _) = &groups()[gi];
        let s = Chain::simplex(simplex(g, &ws));
        prop_assert!(s.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn augmentation_kills_boundaries(gi in 0usize..3, terms in chain_words(1)) {
        let (g, _) = &groups()[gi];
        let c = chain(g, 1, &terms);
        prop_assert_eq!(c.boundary().unwrap().augmentation().unwrap(), BigInt::zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn boundary_is_equivariant(
        gi in 0usize..3,
        (q, terms) in (1usize..4).prop_flat_map(|q| (Just(q), chain_words(q))),
        h in word(),
    ) {
        let (g, _) = &groups()[gi];
        let c = chain(g, q, &terms);
        let h = element(g, &h);
        prop_assert_eq!(c.translate(g, &h).boundary().unwrap(), c.boundary().unwrap().translate(g, &h));
    }

    #[test]
    fn valuation_shifts_under_translation(gi in 0usize..3, terms in chain_words(2), h in word()) {
        let (g, chi) = &groups()[gi];
        let c = chain(g, 2, &terms);
        let h = element(g, &h);
        match (finite(c.translate(g, &h).valuation(g, chi)), finite(c.valuation(g, chi))) {
            (Some(a), Some(b)) => prop_assert_eq!(a, chi.eval(g, &h) + b),
            (None, None) => {}
            _ => prop_assert!(false, "translation changed whether the chain is zero"),
        }
    }

    #[test]
    fn valuation_of_sum_is_at_least_the_min(gi in 0usize..3, x in chain_words(1), y in chain_words(1)) {
        let (g, chi) = &groups()[gi];
        let (c, d) = (chain(g, 1, &x), chain(g, 1, &y));
        prop_assert!(c.plus(&d).valuation(g, chi) >= c.valuation(g, chi).min(d.valuation(g, chi)));
    }

    #[test]
    fn simplex_valuation_is_min_vertex_value(gi in 0usize..3, ws in prop::collection::vec(word(), 1..4)) {
        let (g, chi) = &groups()[gi];
        let s = simplex(g, &ws);
        let brute = s.vertices().iter().map(|v| chi.eval(g, v)).min().unwrap();
        prop_assert_eq!(s.valuation(g, chi), brute);
    }
}

#[test]
fn zero_chain_has_infinite_valuation() {
    let (g, chi) = &groups()[0];
    assert_eq!(Chain::zero(1).valuation(g, chi), Valuation::Infinite);
}
