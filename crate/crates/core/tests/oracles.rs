//! Engine results against brute-force oracles on randomly assembled modules.

mod common;

use common::{all_linear_functions, cogenerates_by_embedding_search, fully_invariant_by_brute_force, power_set_submodules};
use preradlab::modules::{cogenerates, hom_set, FiniteModule};
use preradlab::{Caps, RingSpec};
use proptest::prelude::*;
use std::sync::Arc;

/// A module over cyclic(n) or product(c2,c2): a quotient of R, or a sum of two.
fn module(ring: usize, picks: &[usize]) -> Arc<FiniteModule> {
    let spec = match ring % 4 {
        0 => RingSpec::Cyclic(4),
        1 => RingSpec::Cyclic(6),
        2 => RingSpec::Cyclic(8),
        _ => RingSpec::Product(vec![RingSpec::Cyclic(2), RingSpec::Cyclic(2)]),
    };
    let r = spec.build(&Caps::default()).unwrap();
    let reg = FiniteModule::regular(&r).unwrap();
    let quotients: Vec<Arc<FiniteModule>> = reg
        .submodules()
        .iter()
        .map(|s| reg.quotient(s).unwrap().module)
        .filter(|q| !q.is_zero_module())
        .collect();
    let parts: Vec<_> = picks.iter().map(|&p| Arc::clone(&quotients[p % quotients.len()])).collect();
    if parts.len() == 1 || parts.iter().map(|p| p.order()).product::<usize>() > 16 {
        return Arc::clone(&parts[0]);
    }
    FiniteModule::direct_sum(&parts).unwrap().module
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn submodules_match_power_set(ring in 0usize..4, picks in prop::collection::vec(0usize..6, 1..3)) {
        let m = module(ring, &picks);
        let fast: Vec<Vec<usize>> = m.submodules().iter().map(|s| s.elements()).collect();
        prop_assert_eq!(fast, power_set_submodules(&m));
    }

    #[test]
    fn homs_match_all_functions(ring in 0usize..4, a in prop::collection::vec(0usize..6, 1..2), b in prop::collection::vec(0usize..6, 1..3)) {
        let (s, t) = (module(ring, &a), module(ring, &b));
        prop_assume!((t.order() as f64).powi(s.order() as i32) <= 70_000.0);
        let mut fast: Vec<Vec<usize>> = hom_set(&s, &t).unwrap().iter().map(|f| f.table().to_vec()).collect();
        fast.sort();
        prop_assert_eq!(fast, all_linear_functions(&s, &t));
    }

    #[test]
    fn cogeneration_matches_embedding_search(ring in 0usize..4, a in prop::collection::vec(0usize..6, 1..3), b in prop::collection::vec(0usize..6, 1..3)) {
        let (n, m) = (module(ring, &a), module(ring, &b));
        prop_assert_eq!(cogenerates(&n, &m).unwrap(), cogenerates_by_embedding_search(&n, &m));
    }

    #[test]
    fn full_invariance_matches_brute_force(ring in 0usize..4, picks in prop::collection::vec(0usize..6, 1..3)) {
        let m = module(ring, &picks);
        prop_assume!(m.order() <= 6);
        for s in m.submodules() {
            prop_assert_eq!(m.is_fully_invariant(s), fully_invariant_by_brute_force(&m, &s.elements()));
        }
    }
}
