mod common;

use asseq::hilbert::{e_invariants, hs_values};
use asseq::module::PresentedModule;
use asseq::oracle::MonomialIdeal;
use asseq::polyring::{Monomial, PolyRing, Polynomial};
use asseq::rees::verify_rees_sym;
use asseq::sequence::{check_as_condition_iv, check_as_condition_v, check_regular, SequenceContext};
use proptest::prelude::*;

use common::corpus;

/// Pure powers of distinct variables, in a random order: a regular sequence in `k[x1..xn]`.
fn arb_regular() -> impl Strategy<Value = SequenceContext> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), order, prop::collection::vec(1u32..=2, n), 1..=n)
        })
        .prop_map(|(n, order, exps, len)| {
            let ring = PolyRing::standard(n);
            let seq = order
                .iter()
                .take(len)
                .map(|&v| Polynomial::monomial(&ring, Monomial::var(n, v).pow(exps[v]), 1))
                .collect();
            SequenceContext::new(PresentedModule::free(&ring), seq).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn regular_sequences_are_of_linear_type(ctx in arb_regular(), d_max in 2u32..=3) {
        prop_assert!(check_regular(&ctx).unwrap().holds);
        let rep = verify_rees_sym(&ctx, d_max, None).unwrap();
        prop_assert!(rep.holds && rep.stable, "{:?}", rep);
    }

    #[test]
    fn corpus_slices_are_coherent(seed in any::<u64>()) {
        for ctx in corpus(seed, 8) {
            let v = check_as_condition_v(&ctx).unwrap().holds;
            prop_assert_eq!(v, check_as_condition_iv(&ctx).unwrap().holds);
            if ctx.is_system_of_parameters().unwrap() {
                let e = e_invariants(&ctx).unwrap();
                let hs = hs_values(&ctx, 4).unwrap();
                for (n, &l) in hs.iter().enumerate() {
                    prop_assert!(l as i64 <= e.bound(n));
                }
            }
        }
    }
}

#[test]
fn variables_form_a_regular_sequence() {
    let ring = PolyRing::standard(3);
    let ctx = SequenceContext::new(PresentedModule::free(&ring), ring.variables_as_polys()).unwrap();
    assert!(check_regular(&ctx).unwrap().holds);
    assert_eq!(MonomialIdeal::maximal(3).power(2).colength().finite(), Some(4));
    assert_eq!(hs_values(&ctx, 3).unwrap(), vec![1, 4, 10, 20]);
}
