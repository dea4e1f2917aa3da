//! Exhaustive search over the outcome space.
//!
//! Outcomes are ordered lexicographically by candidate index with round 1
//! most significant. With `restrict` set, each round ranges only over
//! candidates someone approves there (candidate 0 if nobody approves
//! anything). Unapproved picks satisfy nobody, so replacing one by an
//! approved pick never lowers a satisfaction; existence and for-all
//! questions about the axioms here have the same answer on either space.

use crate::axioms::{check_with, check_work, Analysis, AxiomId, CheckReport};
use crate::error::Result;
use crate::model::{Outcome, TemporalElection};
use rayon::prelude::*;

const CHUNK: u128 = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeSpace {
    choices: Vec<Vec<usize>>,
}

impl OutcomeSpace {
    pub fn new(e: &TemporalElection, restrict: bool) -> Self {
        let choices = (0..e.ell())
            .map(|r| {
                if !restrict {
                    return (0..e.m()).collect();
                }
                let approved: Vec<usize> = e.approved_candidates(r).iter().collect();
                if approved.is_empty() {
                    vec![0]
                } else {
                    approved
                }
            })
            .collect();
        Self { choices }
    }

    pub fn choices(&self, round: usize) -> &[usize] {
        &self.choices[round]
    }

    pub fn count(&self) -> u128 {
        self.choices
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Digits of outcome number `index`, round 1 most significant.
    fn digits(&self, mut index: u128) -> Vec<usize> {
        let mut digits = vec![0; self.choices.len()];
        for (r, c) in self.choices.iter().enumerate().rev() {
            let base = c.len() as u128;
            digits[r] = (index % base) as usize;
            index /= base;
        }
        digits
    }

    pub fn nth(&self, index: u128) -> Option<Outcome> {
        (index < self.count()).then(|| self.outcome(&self.digits(index)))
    }

    fn outcome(&self, digits: &[usize]) -> Outcome {
        Outcome::new(digits.iter().zip(&self.choices).map(|(&d, c)| c[d]).collect())
    }

    /// Visits outcomes `start..start + len` in order until `f` returns `Some`.
    fn scan<T>(&self, start: u128, len: u128, mut f: impl FnMut(&Outcome) -> Option<T>) -> Option<T> {
        let end = (start + len).min(self.count());
        if start >= end {
            return None;
        }
        let mut digits = self.digits(start);
        let mut o = self.outcome(&digits);
        for _ in start..end {
            if let Some(hit) = f(&o) {
                return Some(hit);
            }
            for r in (0..digits.len()).rev() {
                digits[r] += 1;
                if digits[r] < self.choices[r].len() {
                    o.set(r, self.choices[r][digits[r]]);
                    break;
                }
                digits[r] = 0;
                o.set(r, self.choices[r][0]);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Outcome> + '_ {
        (0..self.count()).map(move |k| self.nth(k).expect("index in range"))
    }

    /// First outcome in order for which `f` returns `Some`, in parallel.
    fn find_first<T: Send>(&self, f: impl Fn(&Outcome) -> Option<T> + Sync) -> Option<T> {
        let chunks = self.count().div_ceil(CHUNK);
        let chunks = usize::try_from(chunks).expect("outcome space fits in memory-indexed chunks");
        (0..chunks)
            .into_par_iter()
            .find_map_first(|k| self.scan(k as u128 * CHUNK, CHUNK, &f))
    }
}

/// Work estimate for checking `axiom` on every outcome of `space`; builds
/// any tables the check needs and fails if the total exceeds the cap.
pub fn search_work(analysis: &Analysis<'_>, axiom: AxiomId, space: &OutcomeSpace) -> Result<u128> {
    let per = check_work(analysis, axiom)?;
    let total = space.count().saturating_mul(per);
    analysis.ensure_work(&format!("{axiom} over {} outcomes", space.count()), total)?;
    Ok(total)
}

/// The first outcome that satisfies `axiom`, if any.
pub fn exists_satisfying(analysis: &Analysis<'_>, axiom: AxiomId, restrict: bool) -> Result<Option<Outcome>> {
    let space = OutcomeSpace::new(analysis.election(), restrict);
    search_work(analysis, axiom, &space)?;
    space
        .find_first(|o| match check_with(analysis, o, axiom) {
            Ok(r) if r.holds => Some(Ok(o.clone())),
            Ok(_) => None,
            Err(err) => Some(Err(err)),
        })
        .transpose()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForAllReport {
    pub axiom: AxiomId,
    pub checked: u128,
    /// The first outcome violating the axiom, with its report.
    pub failure: Option<(Outcome, CheckReport)>,
}

impl ForAllReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `axiom` on every outcome, stopping at the first violation.
pub fn check_all(analysis: &Analysis<'_>, axiom: AxiomId, restrict: bool) -> Result<ForAllReport> {
    let space = OutcomeSpace::new(analysis.election(), restrict);
    search_work(analysis, axiom, &space)?;
    let failure = space
        .find_first(|o| match check_with(analysis, o, axiom) {
            Ok(r) if r.holds => None,
            Ok(r) => Some(Ok((o.clone(), r))),
            Err(err) => Some(Err(err)),
        })
        .transpose()?;
    Ok(ForAllReport {
        axiom,
        checked: space.count(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Limits;

    fn election() -> TemporalElection {
        // Round 2 has no approvals at all.
        TemporalElection::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![vec![1, 2], vec![], vec![0]], vec![vec![2], vec![], vec![0, 1]]],
        )
        .unwrap()
    }

    #[test]
    fn counts_and_order() {
        let e = election();
        let full = OutcomeSpace::new(&e, false);
        assert_eq!(full.count(), 27);
        let restricted = OutcomeSpace::new(&e, true);
        assert_eq!(restricted.count(), 4);
        let all: Vec<Outcome> = restricted.iter().collect();
        assert_eq!(all[0].picks(), &[1, 0, 0]);
        assert_eq!(all[1].picks(), &[1, 0, 1]);
        assert_eq!(all[3].picks(), &[2, 0, 1]);
        assert!(restricted.nth(4).is_none());
    }

    #[test]
    fn scan_matches_nth() {
        let e = election();
        let space = OutcomeSpace::new(&e, false);
        let mut seen = Vec::new();
        space.scan(5, 9, |o| {
            seen.push(o.clone());
            None::<()>
        });
        let expected: Vec<Outcome> = (5..14).map(|k| space.nth(k).unwrap()).collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn restriction_does_not_change_existence() {
        let e = election();
        let a = Analysis::new(&e, Limits::default());
        for axiom in AxiomId::ALL {
            let full = exists_satisfying(&a, axiom, false).unwrap().is_some();
            let restricted = exists_satisfying(&a, axiom, true).unwrap().is_some();
            assert_eq!(full, restricted, "{axiom}");
        }
    }

    #[test]
    fn single_round_space() {
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![0]]]).unwrap();
        assert_eq!(OutcomeSpace::new(&e, false).count(), 2);
        let a = Analysis::new(&e, Limits::default());
        assert_eq!(
            exists_satisfying(&a, AxiomId::Jr, false).unwrap().unwrap().picks(),
            &[0]
        );
        let all = check_all(&a, AxiomId::Jr, false).unwrap();
        assert_eq!(all.failure.unwrap().0.picks(), &[1]);
    }
}
