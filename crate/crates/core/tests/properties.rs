mod common;

use common::{exactly_one, instance};
use proptest::prelude::*;
use temporal_jr::axioms::lattice::SOLID_ARROWS;
use temporal_jr::axioms::replay::replay;
use temporal_jr::axioms::{check_ejr_plus, check_with, Analysis, Family, Limits};
use temporal_jr::oracle::bruteforce::{check_ejr_plus_bruteforce, jr_family_bruteforce};
use temporal_jr::oracle::{exists_satisfying, OutcomeSpace};
use temporal_jr::{AxiomId, RoundSet, Variant, VoterSet};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn satisfaction_is_monotone_and_bounded((e, o) in instance(6, 5, 4), s in 1u64..64, extra in 0u64..64, r in 0u64..32, more in 0u64..32) {
        let s = VoterSet::from_bits(s).intersection(e.voters());
        let bigger = s.union(VoterSet::from_bits(extra).intersection(e.voters()));
        let rounds = RoundSet::from_bits(r).intersection(e.rounds());
        let wider = rounds.union(RoundSet::from_bits(more).intersection(e.rounds()));
        let (sub, sub_wide) = (o.restrict(rounds), o.restrict(wider));
        prop_assert!(e.satisfaction(s, &sub) <= e.satisfaction(bigger, &sub));
        prop_assert!(e.satisfaction(s, &sub) <= e.satisfaction(s, &sub_wide));
        prop_assert!(e.satisfaction(bigger, &sub) <= rounds.len());
        for q in 0..e.ell() {
            prop_assert!(e.agreement_candidates(bigger, q).is_subset(e.agreement_candidates(s, q)));
        }
    }

    #[test]
    fn exactly_one_full_agreement_means_equal_ballots(e in exactly_one(5, 4, 3), s in 1u64..32) {
        let s = VoterSet::from_bits(s).intersection(e.voters());
        prop_assume!(!s.is_empty());
        if e.agreement_rounds(s) == e.rounds() {
            let first = s.first().unwrap();
            for i in s.iter() {
                for r in 0..e.ell() {
                    prop_assert_eq!(e.ballot(i, r), e.ballot(first, r));
                }
            }
        }
    }

    #[test]
    fn rho_chain_and_mu_bound((e, _) in instance(5, 4, 3)) {
        let a = Analysis::new(&e, Limits::default());
        let (n, ell) = (e.n(), e.ell());
        for bits in 1..1u64 << n {
            let s = VoterSet::from_bits(bits);
            let (weak, standard, strong) = (a.rho(s, Variant::Weak), a.rho(s, Variant::Standard), a.rho(s, Variant::Strong));
            prop_assert!(weak <= standard && standard <= strong, "{s}: {weak} {standard} {strong}");
            prop_assert!(strong as usize <= ell * s.len() / n);
            for t in e.rounds().subsets() {
                let t = RoundSet::from_bits(t);
                prop_assert!(a.mu(s, t, false) as usize <= t.len() * s.len() / n);
            }
        }
    }

    #[test]
    fn ejr_plus_matches_bruteforce((e, o) in instance(6, 5, 4)) {
        for v in [Variant::Weak, Variant::Standard, Variant::Strong] {
            let fast = check_ejr_plus(&e, &o, v).unwrap();
            let slow = check_ejr_plus_bruteforce(&e, &o, v).unwrap();
            prop_assert_eq!(fast.holds, slow.holds, "{:?}", v);
        }
    }

    #[test]
    fn jr_families_match_bruteforce((e, o) in instance(6, 4, 3)) {
        let a = Analysis::new(&e, Limits::default());
        for axiom in AxiomId::ALL {
            if !matches!(axiom.family(), Family::Jr | Family::Pjr | Family::Ejr | Family::DroopEjr) {
                continue;
            }
            let fast = check_with(&a, &o, axiom).unwrap();
            let slow = jr_family_bruteforce(&e, &o, axiom).unwrap();
            prop_assert_eq!(fast.holds, slow.is_none(), "{}", axiom);
        }
    }

    #[test]
    fn witnesses_replay((e, o) in instance(5, 4, 3)) {
        let a = Analysis::new(&e, Limits::default());
        for axiom in AxiomId::ALL {
            let r = check_with(&a, &o, axiom).unwrap();
            prop_assert_eq!(r.holds, r.witness.is_none());
            if let Some(w) = &r.witness {
                prop_assert!(replay(&e, &o, axiom, w).is_ok(), "{}: {:?}", axiom, replay(&e, &o, axiom, w));
            }
        }
    }

    #[test]
    fn solid_arrows_hold((e, o) in instance(5, 4, 3)) {
        let a = Analysis::new(&e, Limits::default());
        for (x, y) in SOLID_ARROWS {
            if check_with(&a, &o, x).unwrap().holds {
                prop_assert!(check_with(&a, &o, y).unwrap().holds, "{} holds but {} fails", x, y);
            }
        }
    }

    #[test]
    fn wpjr_equals_wejr_on_single_approvals((e, o) in exactly_one(5, 4, 3).prop_flat_map(common::outcome_for)) {
        let a = Analysis::new(&e, Limits::default());
        let pjr = check_with(&a, &o, AxiomId::WPjr).unwrap().holds;
        prop_assert_eq!(pjr, check_with(&a, &o, AxiomId::WEjr).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn found_outcomes_satisfy((e, _) in instance(4, 3, 3)) {
        let a = Analysis::new(&e, Limits::default());
        for axiom in AxiomId::ALL {
            let restricted = exists_satisfying(&a, axiom, true).unwrap();
            if let Some(o) = &restricted {
                prop_assert!(check_with(&a, o, axiom).unwrap().holds);
            }
            if OutcomeSpace::new(&e, false).count() <= 64 {
                let full = exists_satisfying(&a, axiom, false).unwrap();
                prop_assert_eq!(full.is_some(), restricted.is_some(), "{}", axiom);
            }
        }
    }
}
