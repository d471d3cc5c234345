mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use common::{build_mod, mod_recipe};
use lieshadow::lie::{is_solvable, LieAlgebra};
use lieshadow::linalg::Subspace;
use lieshadow::modification::{
    check_all, graph_algebra, invariant_complement, kernel_is_nilradical, lemma_upgrade, shadow_roundtrip,
    sigma_identities,
};

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn derived(g: &LieAlgebra) -> Subspace {
    g.bracket_spaces(&g.full(), &g.full())
}

proptest! {
    #![proptest_config(config(48, 0x41))]

    #[test]
    fn valid_maps_have_abelian_image_and_kill_the_derived_algebra(r in mod_recipe()) {
        let s = build_mod(&r);
        prop_assert!(check_all(&s).all_ok());
        let n = s.dim();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(s.images()[i].commutator(&s.images()[j]).is_zero());
            }
        }
        prop_assert!(derived(s.base()).is_subspace_of(&s.kernel()));
    }

    #[test]
    fn invariant_complement_splits_the_base(r in mod_recipe()) {
        let s = build_mod(&r);
        let w = invariant_complement(&s).expect("complement exists");
        let k = s.kernel();
        prop_assert_eq!(k.dim() + w.dim(), s.dim());
        prop_assert!(k.sum(&w).is_full());
        for m in s.images() {
            for v in w.basis() {
                prop_assert!(m.apply(v).iter().all(|x| x == &lieshadow::linalg::rational::rat(0)));
            }
        }
    }

    #[test]
    fn graph_algebra_theorems_hold(r in mod_recipe(), seed in 0u64..1000) {
        let s = build_mod(&r);
        let g = graph_algebra(&s).unwrap();
        prop_assert!(is_solvable(&g));
        prop_assert!(kernel_is_nilradical(&s).unwrap());
        prop_assert!(shadow_roundtrip(&s, seed).unwrap());
        prop_assert!(sigma_identities(&s).ok);
        prop_assert!(lemma_upgrade(&s).unwrap().theorem_violation.is_none());
    }
}
