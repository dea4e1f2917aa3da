//! Proptest strategies shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use temporal_jr::{ElectionClass, Outcome, TemporalElection};

fn names(m: usize) -> Vec<String> {
    (0..m).map(|c| ((b'a' + c as u8) as char).to_string()).collect()
}

/// Elections up to the given sizes; 0.0..1.0 density per voter.
pub fn election(max_n: usize, max_ell: usize, max_m: usize) -> impl Strategy<Value = TemporalElection> {
    (1..=max_n, 1..=max_ell, 1..=max_m).prop_flat_map(|(n, ell, m)| {
        proptest::collection::vec(proptest::collection::vec(0u64..(1 << m), ell), n).prop_map(move |rows| {
            let approvals = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&mask| (0..m).filter(|c| mask >> c & 1 == 1).collect())
                        .collect()
                })
                .collect();
            TemporalElection::new(names(m), approvals).unwrap()
        })
    })
}

/// Elections where every ballot is a single candidate.
pub fn exactly_one(max_n: usize, max_ell: usize, max_m: usize) -> impl Strategy<Value = TemporalElection> {
    (1..=max_n, 1..=max_ell, 1..=max_m).prop_flat_map(|(n, ell, m)| {
        proptest::collection::vec(proptest::collection::vec(0..m, ell), n).prop_map(move |rows| {
            let approvals = rows.iter().map(|row| row.iter().map(|&c| vec![c]).collect()).collect();
            let e = TemporalElection::new(names(m), approvals).unwrap();
            assert_eq!(e.election_class(), ElectionClass::ExactlyOne);
            e
        })
    })
}

/// An election together with an outcome, biased toward approved picks.
pub fn instance(max_n: usize, max_ell: usize, max_m: usize) -> impl Strategy<Value = (TemporalElection, Outcome)> {
    election(max_n, max_ell, max_m).prop_flat_map(outcome_for)
}

pub fn outcome_for(e: TemporalElection) -> impl Strategy<Value = (TemporalElection, Outcome)> {
    let choices: Vec<Vec<usize>> = (0..e.ell())
        .map(|r| {
            let approved: Vec<usize> = e.approved_candidates(r).iter().collect();
            if approved.is_empty() {
                (0..e.m()).collect()
            } else {
                approved
            }
        })
        .collect();
    let m = e.m();
    let picks: Vec<BoxedStrategy<usize>> = choices
        .into_iter()
        .map(|c| prop_oneof![4 => proptest::sample::select(c), 1 => 0..m].boxed())
        .collect();
    (Just(e), picks).prop_map(|(e, picks)| (e, Outcome::new(picks)))
}
