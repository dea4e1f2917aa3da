//! Serial Dictatorship: round `r` goes to voter `((r - 1) mod n) + 1`.

use crate::axioms::precondition;
use crate::error::Result;
use crate::model::{Outcome, TemporalElection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdrTrace {
    /// 0-based dictator per round.
    pub dictators: Vec<usize>,
}

/// The 0-based voter deciding 0-based `round`.
pub fn dictator(round: usize, n: usize) -> usize {
    round % n
}

/// Each dictator takes their lowest-index approved candidate.
pub fn sdr(e: &TemporalElection) -> Result<(Outcome, SdrTrace)> {
    let mut picks = Vec::with_capacity(e.ell());
    let mut dictators = Vec::with_capacity(e.ell());
    for r in 0..e.ell() {
        let d = dictator(r, e.n());
        let c = e.ballot(d, r).first().ok_or_else(|| {
            precondition(format!(
                "voter {} approves no candidate in round {}; serial dictatorship needs non-empty ballots",
                d + 1,
                r + 1
            ))
        })?;
        picks.push(c);
        dictators.push(d);
    }
    Ok((Outcome::new(picks), SdrTrace { dictators }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn dictators_cycle_from_voter_one() {
        assert_eq!((0..5).map(|r| dictator(r, 2)).collect::<Vec<_>>(), vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn empty_ballot_is_rejected() {
        let e = TemporalElection::new(vec!["a".into()], vec![vec![vec![0], vec![]]]).unwrap();
        match sdr(&e) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("voter 1") && msg.contains("round 2")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
