//! Randomized algebraic invariants.

use gtalg::combinat::{Composition, Partition};
use gtalg::qsym::{deconcatenation, pairing, pairing_tensor, quasi_shuffle, symm_into_qsymm, NSymm, QSymm};
use gtalg::rational::{int, rat};
use gtalg::symm::{convert, coproduct, counit_left, is_coassociative_on, SymmBasis, SymmFn};
use gtalg::{GradedPolynomial, Rational, UniSeries};
use proptest::prelude::*;

fn composition(max_len: usize, max_part: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|p| Composition::new(p).unwrap())
}

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::new)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn qsymm(max_terms: usize) -> impl Strategy<Value = QSymm> {
    prop::collection::vec((composition(3, 3), small_rational()), 0..=max_terms).prop_map(QSymm::from_terms)
}

fn nsymm(max_terms: usize) -> impl Strategy<Value = NSymm> {
    prop::collection::vec((composition(2, 3), small_rational()), 0..=max_terms).prop_map(NSymm::from_terms)
}

fn symm(basis: SymmBasis) -> impl Strategy<Value = SymmFn> {
    prop::collection::vec((partition(3, 3), small_rational()), 0..=3)
        .prop_map(move |terms| SymmFn::from_terms(basis, terms))
}

fn basis() -> impl Strategy<Value = SymmBasis> {
    prop_oneof![Just(SymmBasis::E), Just(SymmBasis::P), Just(SymmBasis::H), Just(SymmBasis::M)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quasi_shuffle_is_commutative(a in qsymm(3), b in qsymm(3)) {
        prop_assert_eq!(quasi_shuffle(&a, &b), quasi_shuffle(&b, &a));
    }

    #[test]
    fn quasi_shuffle_is_associative(a in qsymm(2), b in qsymm(2), c in qsymm(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn deconcatenation_is_multiplicative(a in qsymm(2), b in qsymm(2)) {
        prop_assert_eq!(deconcatenation(&a.mul(&b)), deconcatenation(&a).mul(&deconcatenation(&b)));
    }

    #[test]
    fn symm_embeds_multiplicatively(f in symm(SymmBasis::M), g in symm(SymmBasis::E)) {
        let product = f.mul(&convert(&g, SymmBasis::M)).unwrap();
        prop_assert_eq!(symm_into_qsymm(&product), symm_into_qsymm(&f).mul(&symm_into_qsymm(&g)));
    }

    #[test]
    fn pairing_is_a_hopf_duality(a in nsymm(2), b in nsymm(2), x in qsymm(3)) {
        prop_assert_eq!(pairing(&a.mul(&b), &x), pairing_tensor(&a, &b, &deconcatenation(&x)));
    }

    #[test]
    fn basis_changes_round_trip(f in symm(SymmBasis::E), b in basis(), c in basis()) {
        let there = convert(&convert(&f, b), c);
        prop_assert_eq!(convert(&there, SymmBasis::E), f);
    }

    #[test]
    fn products_agree_across_bases(f in symm(SymmBasis::H), g in symm(SymmBasis::P), b in basis()) {
        let direct = convert(&f.mul(&convert(&g, SymmBasis::H)).unwrap(), b);
        let via = convert(&f, b).mul(&convert(&g, b)).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn coproduct_axioms(f in symm(SymmBasis::E), g in symm(SymmBasis::P)) {
        prop_assert!(is_coassociative_on(&f));
        prop_assert_eq!(counit_left(&coproduct(&f)), convert(&f, SymmBasis::E));
        let fg = f.mul(&convert(&g, SymmBasis::E)).unwrap();
        prop_assert_eq!(coproduct(&fg), coproduct(&f).mul(&coproduct(&g)));
    }

    #[test]
    fn series_inverse_and_log(coeffs in prop::collection::vec(small_rational(), 1..7)) {
        let mut c = vec![int(1)];
        c.extend(coeffs);
        let s = UniSeries::new(c);
        let one = s.mul(&s.inv().unwrap()).unwrap();
        prop_assert_eq!(one, UniSeries::<Rational>::one(s.bound()));
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn compositional_inverse_round_trips(coeffs in prop::collection::vec(small_rational(), 1..7)) {
        let mut c = vec![int(0), int(1)];
        c.extend(coeffs);
        let f = UniSeries::new(c);
        let g = f.compose_inverse().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), UniSeries::<Rational>::x(f.bound()));
        prop_assert_eq!(g.compose(&f).unwrap(), UniSeries::<Rational>::x(f.bound()));
    }

    #[test]
    fn polynomial_text_round_trips(terms in prop::collection::vec((1u32..4, 0u32..3, small_rational()), 0..5)) {
        let mut p = GradedPolynomial::zero();
        for (i, e, c) in terms {
            let v = gtalg::Var::weighted('c', i);
            p.add_term(gtalg::Monomial::power(v, e), c);
        }
        let back: GradedPolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
