mod common;

use common::instance;
use proptest::prelude::*;
use temporal_jr::axioms::{check_with, Analysis, Limits};
use temporal_jr::rules::{dictator, gcr_with, harmonic_score, is_local_optimum, lspav, sdr, swap_bound, LsPavConfig};
use temporal_jr::{AxiomId, Rational, TemporalElection, VoterSet};

/// Non-empty ballots with `n | ell`; `single` forces one candidate per ballot.
fn divisible(single: bool) -> impl Strategy<Value = TemporalElection> {
    (1usize..=4, 1usize..=2, 1usize..=3).prop_flat_map(move |(n, k, m)| {
        let ell = n * k;
        let ballot = if single {
            (0..m).prop_map(|c| 1u64 << c).boxed()
        } else {
            (1u64..1 << m).boxed()
        };
        proptest::collection::vec(proptest::collection::vec(ballot, ell), n).prop_map(move |rows| {
            let names = (0..m).map(|c| ((b'a' + c as u8) as char).to_string()).collect();
            let approvals = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&mask| (0..m).filter(|c| mask >> c & 1 == 1).collect())
                        .collect()
                })
                .collect();
            TemporalElection::new(names, approvals).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn lspav_output_is_a_local_optimum_with_ejr_plus((e, start) in instance(6, 5, 4)) {
        let config = LsPavConfig { initial: Some(start), ..LsPavConfig::guaranteed(&e) };
        let (o, trace) = lspav(&e, &config).unwrap();
        prop_assert!(is_local_optimum(&e, &o, &config.epsilon));
        prop_assert!(trace.steps.len() as u64 <= swap_bound(&e, &config.epsilon));
        prop_assert_eq!(&trace.replay(), &o);
        let mut score: Rational = harmonic_score(&e, &trace.initial);
        for s in &trace.steps {
            prop_assert!(s.gain > config.epsilon);
            score += s.gain;
        }
        prop_assert_eq!(score, harmonic_score::<Rational>(&e, &o));
        let a = Analysis::new(&e, Limits::default());
        prop_assert!(check_with(&a, &o, AxiomId::EjrPlus).unwrap().holds);
    }

    #[test]
    fn gcr_provides_fjr((e, _) in instance(5, 4, 3)) {
        let a = Analysis::new(&e, Limits::default());
        let (o, trace) = gcr_with(&a).unwrap();
        prop_assert_eq!(trace.verify(&e), Ok(()));
        prop_assert_eq!(&trace.replay(e.ell()), &o);
        prop_assert!(check_with(&a, &o, AxiomId::Fjr).unwrap().holds);
    }

    #[test]
    fn sdr_shares_rounds_evenly(e in divisible(false)) {
        let (o, trace) = sdr(&e).unwrap();
        let (n, ell) = (e.n(), e.ell());
        for i in 0..n {
            prop_assert_eq!(trace.dictators.iter().filter(|&&d| d == i).count(), ell / n);
        }
        for r in 0..ell {
            prop_assert_eq!(trace.dictators[r], dictator(r, n));
        }
        for bits in 1..1u64 << n {
            let s = VoterSet::from_bits(bits);
            prop_assert!(e.outcome_satisfaction(s, &o) >= ell * s.len() / n);
        }
        let a = Analysis::new(&e, Limits::default());
        prop_assert!(check_with(&a, &o, AxiomId::SFpjr).unwrap().holds);
    }

    #[test]
    fn sdr_provides_wejr_on_single_approvals(e in divisible(true)) {
        let (o, _) = sdr(&e).unwrap();
        let a = Analysis::new(&e, Limits::default());
        prop_assert!(check_with(&a, &o, AxiomId::WEjr).unwrap().holds);
    }
}
