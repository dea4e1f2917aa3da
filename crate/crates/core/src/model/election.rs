use crate::error::{Error, Result};
use crate::sets::{CandidateSet, RoundSet, VoterSet, MAX_SET_BITS};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Which per-round ballot shape every voter respects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElectionClass {
    General,
    AtLeastOne,
    ExactlyOne,
}

impl ElectionClass {
    /// Whether an election of class `self` also belongs to `other`.
    pub fn is_within(self, other: ElectionClass) -> bool {
        match other {
            ElectionClass::General => true,
            ElectionClass::AtLeastOne => self != ElectionClass::General,
            ElectionClass::ExactlyOne => self == ElectionClass::ExactlyOne,
        }
    }
}

/// An election `(C, N, ell, A)`.
///
/// Ballots are stored twice: per voter and round as a candidate mask, and
/// per round and candidate as the mask of approving voters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalElection {
    candidates: Vec<String>,
    n: usize,
    ell: usize,
    ballots: Vec<Vec<CandidateSet>>,
    approvers: Vec<Vec<VoterSet>>,
}

impl TemporalElection {
    /// Builds an election from per-voter, per-round lists of candidate indices.
    pub fn new(candidates: Vec<String>, approvals: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let m = candidates.len();
        let n = approvals.len();
        if m == 0 {
            return Err(Error::Structural("at least one candidate is required".into()));
        }
        if n == 0 {
            return Err(Error::Structural("at least one voter is required".into()));
        }
        let ell = approvals[0].len();
        if ell == 0 {
            return Err(Error::Structural("at least one round is required".into()));
        }
        for (what, size) in [("candidates", m), ("voters", n), ("rounds", ell)] {
            if size > MAX_SET_BITS {
                return Err(Error::Structural(format!(
                    "{size} {what} exceeds the hard limit of {MAX_SET_BITS}"
                )));
            }
        }
        let mut seen = HashSet::new();
        for name in &candidates {
            if !seen.insert(name.as_str()) {
                return Err(Error::Structural(format!("duplicate candidate `{name}`")));
            }
        }
        let mut ballots = Vec::with_capacity(n);
        for (i, row) in approvals.iter().enumerate() {
            if row.len() != ell {
                return Err(Error::Structural(format!(
                    "voter {} has {} rounds, expected {ell}",
                    i + 1,
                    row.len()
                )));
            }
            let mut masks = Vec::with_capacity(ell);
            for (r, cell) in row.iter().enumerate() {
                let mut mask = CandidateSet::EMPTY;
                for &c in cell {
                    if c >= m {
                        return Err(Error::Structural(format!(
                            "voter {} round {} approves candidate index {c}, but there are {m} candidates",
                            i + 1,
                            r + 1
                        )));
                    }
                    mask.insert(c);
                }
                masks.push(mask);
            }
            ballots.push(masks);
        }
        Ok(Self::from_masks(candidates, ballots))
    }

    fn from_masks(candidates: Vec<String>, ballots: Vec<Vec<CandidateSet>>) -> Self {
        let n = ballots.len();
        let ell = ballots[0].len();
        let m = candidates.len();
        let mut approvers = vec![vec![VoterSet::EMPTY; m]; ell];
        for (i, row) in ballots.iter().enumerate() {
            for (r, cell) in row.iter().enumerate() {
                for c in cell.iter() {
                    approvers[r][c].insert(i);
                }
            }
        }
        Self {
            candidates,
            n,
            ell,
            ballots,
            approvers,
        }
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn candidate_index(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    /// Number of candidates, `m`.
    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    /// Number of voters.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rounds.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn voters(&self) -> VoterSet {
        VoterSet::full(self.n)
    }

    pub fn rounds(&self) -> RoundSet {
        RoundSet::full(self.ell)
    }

    /// `a_{i,r}` as a candidate mask (0-based indices).
    pub fn ballot(&self, voter: usize, round: usize) -> CandidateSet {
        self.ballots[voter][round]
    }

    /// Voters approving `candidate` in `round`.
    pub fn approvers(&self, round: usize, candidate: usize) -> VoterSet {
        self.approvers[round][candidate]
    }

    /// Voters approving at least one candidate in `round`.
    pub fn active_voters(&self, round: usize) -> VoterSet {
        self.approvers[round]
            .iter()
            .fold(VoterSet::EMPTY, |acc, &s| acc.union(s))
    }

    /// Candidates approved by at least one voter in `round`.
    pub fn approved_candidates(&self, round: usize) -> CandidateSet {
        (0..self.m())
            .filter(|&c| !self.approvers[round][c].is_empty())
            .collect()
    }

    /// Whether voter `i` approves `candidate` in `round`.
    pub fn approves(&self, voter: usize, round: usize, candidate: usize) -> bool {
        self.ballots[voter][round].contains(candidate)
    }

    /// Candidates every member of `group` approves in `round`.
    pub fn agreement_candidates(&self, group: VoterSet, round: usize) -> CandidateSet {
        group.iter().fold(CandidateSet::full(self.m()), |acc, i| {
            acc.intersection(self.ballots[i][round])
        })
    }

    /// Rounds in which `group` agrees on some candidate.
    pub fn agreement_rounds(&self, group: VoterSet) -> RoundSet {
        (0..self.ell)
            .filter(|&r| !self.agreement_candidates(group, r).is_empty())
            .collect()
    }

    /// Rounds of `sub` whose pick is approved by some member of `group`.
    pub fn satisfaction(&self, group: VoterSet, sub: &Suboutcome) -> usize {
        sub.iter()
            .filter(|&(r, c)| !self.approvers[r][c].intersection(group).is_empty())
            .count()
    }

    /// Satisfaction of a group from a full outcome.
    pub fn outcome_satisfaction(&self, group: VoterSet, outcome: &Outcome) -> usize {
        outcome
            .picks()
            .iter()
            .enumerate()
            .filter(|&(r, &c)| !self.approvers[r][c].intersection(group).is_empty())
            .count()
    }

    /// Rounds in which voter `i` approves the selected candidate.
    pub fn voter_coverage(&self, voter: usize, outcome: &Outcome) -> RoundSet {
        outcome
            .picks()
            .iter()
            .enumerate()
            .filter(|&(r, &c)| self.ballots[voter][r].contains(c))
            .map(|(r, _)| r)
            .collect()
    }

    pub fn election_class(&self) -> ElectionClass {
        let cells = self.ballots.iter().flatten();
        if cells.clone().all(|a| a.len() == 1) {
            ElectionClass::ExactlyOne
        } else if cells.clone().all(|a| !a.is_empty()) {
            ElectionClass::AtLeastOne
        } else {
            ElectionClass::General
        }
    }

    /// Checks that `outcome` has one valid pick per round.
    pub fn validate_outcome(&self, outcome: &Outcome) -> Result<()> {
        if outcome.len() != self.ell {
            return Err(Error::Structural(format!(
                "outcome has {} picks, election has {} rounds",
                outcome.len(),
                self.ell
            )));
        }
        self.validate_picks(outcome.picks().iter().copied())
    }

    pub fn validate_suboutcome(&self, sub: &Suboutcome) -> Result<()> {
        if sub.rounds().span() > self.ell {
            return Err(Error::Structural(format!(
                "suboutcome uses round {} but the election has {} rounds",
                sub.rounds().span(),
                self.ell
            )));
        }
        self.validate_picks(sub.picks().iter().copied())
    }

    fn validate_picks(&self, picks: impl Iterator<Item = usize>) -> Result<()> {
        for c in picks {
            if c >= self.m() {
                return Err(Error::Structural(format!(
                    "candidate index {c} out of range for {} candidates",
                    self.m()
                )));
            }
        }
        Ok(())
    }
}

/// One pick per round, as 0-based candidate indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    picks: Vec<usize>,
}

impl Outcome {
    pub fn new(picks: Vec<usize>) -> Self {
        Self { picks }
    }

    pub fn constant(candidate: usize, ell: usize) -> Self {
        Self {
            picks: vec![candidate; ell],
        }
    }

    pub fn picks(&self) -> &[usize] {
        &self.picks
    }

    pub fn pick(&self, round: usize) -> usize {
        self.picks[round]
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn set(&mut self, round: usize, candidate: usize) {
        self.picks[round] = candidate;
    }

    /// The suboutcome over `rounds`.
    pub fn restrict(&self, rounds: RoundSet) -> Suboutcome {
        Suboutcome {
            rounds,
            picks: rounds.iter().map(|r| self.picks[r]).collect(),
        }
    }

    /// The whole outcome viewed as a suboutcome over every round.
    pub fn as_suboutcome(&self) -> Suboutcome {
        self.restrict(RoundSet::full(self.picks.len()))
    }
}

/// Picks on a subset of rounds; `picks[k]` belongs to the `k`-th smallest round.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Suboutcome {
    rounds: RoundSet,
    picks: Vec<usize>,
}

impl Suboutcome {
    pub fn new(rounds: RoundSet, picks: Vec<usize>) -> Result<Self> {
        if rounds.len() != picks.len() {
            return Err(Error::Structural(format!(
                "suboutcome over {} rounds has {} picks",
                rounds.len(),
                picks.len()
            )));
        }
        Ok(Self { rounds, picks })
    }

    pub fn empty() -> Self {
        Self {
            rounds: RoundSet::EMPTY,
            picks: Vec::new(),
        }
    }

    pub fn rounds(&self) -> RoundSet {
        self.rounds
    }

    pub fn picks(&self) -> &[usize] {
        &self.picks
    }

    /// `(round, candidate)` pairs in ascending round order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rounds.iter().zip(self.picks.iter().copied())
    }

    pub fn get(&self, round: usize) -> Option<usize> {
        self.iter().find(|&(r, _)| r == round).map(|(_, c)| c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn tiny() -> TemporalElection {
        // Two voters, two rounds; voter 2 abstains in round 2.
        TemporalElection::new(
            names(&["a", "b"]),
            vec![vec![vec![0], vec![0, 1]], vec![vec![0, 1], vec![]]],
        )
        .unwrap()
    }

    #[test]
    fn approver_masks_mirror_ballots() {
        let e = tiny();
        assert_eq!(e.approvers(0, 0).bits(), 0b11);
        assert_eq!(e.approvers(0, 1).bits(), 0b10);
        assert_eq!(e.approvers(1, 1).bits(), 0b01);
        assert_eq!(e.election_class(), ElectionClass::General);
    }

    #[test]
    fn satisfaction_counts_rounds_covered_by_the_group() {
        let e = tiny();
        let o = Outcome::new(vec![1, 1]);
        assert_eq!(e.outcome_satisfaction(VoterSet::from_bits(0b01), &o), 1);
        assert_eq!(e.outcome_satisfaction(VoterSet::from_bits(0b10), &o), 1);
        assert_eq!(e.outcome_satisfaction(VoterSet::from_bits(0b11), &o), 2);
        assert_eq!(e.satisfaction(VoterSet::from_bits(0b11), &Suboutcome::empty()), 0);
    }

    #[test]
    fn agreement() {
        let e = tiny();
        let both = VoterSet::from_bits(0b11);
        assert_eq!(e.agreement_candidates(both, 0).bits(), 0b01);
        assert!(e.agreement_candidates(both, 1).is_empty());
        assert_eq!(e.agreement_rounds(both).bits(), 0b01);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(TemporalElection::new(names(&["a"]), vec![]).is_err());
        assert!(TemporalElection::new(names(&["a", "a"]), vec![vec![vec![0]]]).is_err());
        assert!(TemporalElection::new(names(&["a"]), vec![vec![vec![1]]]).is_err());
        assert!(TemporalElection::new(names(&["a"]), vec![vec![vec![0]], vec![]]).is_err());
    }

    #[test]
    fn class_containment() {
        assert!(ElectionClass::ExactlyOne.is_within(ElectionClass::AtLeastOne));
        assert!(!ElectionClass::General.is_within(ElectionClass::AtLeastOne));
    }
}
