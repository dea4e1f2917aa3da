//! Outcome-independent guarantee computations shared by the checkers and GCR.
//!
//! Everything here depends only on the election: the max-min value a group
//! can secure on a round set, `mu`, the three `rho` aggregates, and tables
//! of every group with a positive guarantee. Results are memoized in
//! thread-safe maps so one [`Analysis`] can serve many outcomes (for example
//! during outcome enumeration).

use crate::error::{Error, Result};
use crate::model::{Outcome, Suboutcome, TemporalElection};
use crate::sets::{binomial, RoundSet, VoterSet};
use crate::Variant;
use dashmap::DashMap;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Size and work caps for exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_voters: usize,
    pub max_rounds: usize,
    /// Rough budget in elementary steps (subset visits, table cells).
    pub max_work: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_voters: 24,
            max_rounds: 24,
            max_work: 1 << 34,
        }
    }
}

/// Which per-group guarantee a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Guarantee {
    /// `rho^s`: best round set of size `floor(ell*|S|/n)`.
    Strong,
    /// `rho`: `max_T mu_S(T)`.
    Standard,
    /// `rho^w`: worst round set of size `floor(ell*|S|/n)`.
    Weak,
    /// `max_T` of the Droop variant of `mu`.
    Droop,
}

impl Guarantee {
    pub fn from_variant(variant: Variant) -> Self {
        match variant {
            Variant::Strong => Guarantee::Strong,
            Variant::Standard => Guarantee::Standard,
            Variant::Weak => Guarantee::Weak,
        }
    }
}

/// A group with a positive guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupValue {
    pub group: VoterSet,
    pub value: u32,
}

/// A `(S, T)` pair with `mu_S(T) >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairValue {
    pub group: VoterSet,
    pub scope: RoundSet,
    pub value: u32,
}

/// Per-voter view of one outcome.
#[derive(Clone, Debug)]
pub struct Profile {
    pub sat: Vec<u32>,
    pub coverage: Vec<RoundSet>,
}

impl Profile {
    pub fn new(e: &TemporalElection, o: &Outcome) -> Self {
        let coverage: Vec<RoundSet> = (0..e.n()).map(|i| e.voter_coverage(i, o)).collect();
        let sat = coverage.iter().map(|c| c.len() as u32).collect();
        Self { sat, coverage }
    }

    /// `sat_S(o)`.
    pub fn group_sat(&self, group: VoterSet) -> u32 {
        group
            .iter()
            .fold(RoundSet::EMPTY, |acc, i| acc.union(self.coverage[i]))
            .len() as u32
    }

    pub fn max_sat(&self, group: VoterSet) -> u32 {
        group.iter().map(|i| self.sat[i]).max().unwrap_or(0)
    }

    pub fn min_sat(&self, group: VoterSet) -> u32 {
        group.iter().map(|i| self.sat[i]).min().unwrap_or(0)
    }

    /// Voters with zero satisfaction.
    pub fn unsatisfied(&self) -> VoterSet {
        self.sat
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// `floor(t * s / n)`.
pub fn quota(t: usize, s: usize, n: usize) -> u32 {
    (t * s / n) as u32
}

/// `ceil((t + 1) * s / n) - 1`.
pub fn droop_quota(t: usize, s: usize, n: usize) -> u32 {
    (((t + 1) * s).div_ceil(n) as u32).saturating_sub(1)
}

pub struct Analysis<'e> {
    election: &'e TemporalElection,
    limits: Limits,
    maxmin: DashMap<(u64, u64), u32>,
    mu: DashMap<(u64, u64, bool), u32>,
    tables: [OnceLock<Vec<GroupValue>>; 4],
    pairs: OnceLock<Vec<PairValue>>,
}

impl<'e> Analysis<'e> {
    pub fn new(election: &'e TemporalElection, limits: Limits) -> Self {
        Self {
            election,
            limits,
            maxmin: DashMap::new(),
            mu: DashMap::new(),
            tables: Default::default(),
            pairs: OnceLock::new(),
        }
    }

    pub fn election(&self) -> &'e TemporalElection {
        self.election
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Refuses elections beyond the configured voter and round caps.
    pub fn ensure_size(&self, what: &str) -> Result<()> {
        let e = self.election;
        if e.n() > self.limits.max_voters {
            return Err(Error::ResourceCap {
                what: format!("{what} with {} voters (voter cap {})", e.n(), self.limits.max_voters),
                estimated: 1u128 << e.n().min(127),
                limit: self.limits.max_work,
            });
        }
        if e.ell() > self.limits.max_rounds {
            return Err(Error::ResourceCap {
                what: format!("{what} with {} rounds (round cap {})", e.ell(), self.limits.max_rounds),
                estimated: 1u128 << e.ell().min(127),
                limit: self.limits.max_work,
            });
        }
        Ok(())
    }

    pub fn ensure_work(&self, what: &str, estimated: u128) -> Result<()> {
        if estimated > self.limits.max_work {
            return Err(Error::ResourceCap {
                what: what.to_string(),
                estimated,
                limit: self.limits.max_work,
            });
        }
        Ok(())
    }

    /// Work estimate for a table of the given kind.
    pub fn table_work(&self, kind: Guarantee) -> u128 {
        let groups = 1u128 << self.election.n();
        let ell = self.election.ell();
        let per_group = match kind {
            Guarantee::Strong | Guarantee::Weak => binomial(ell, ell / 2).max(1),
            Guarantee::Standard | Guarantee::Droop => 3u128.saturating_pow(ell as u32),
        };
        groups.saturating_mul(per_group)
    }

    pub fn quota(&self, group: VoterSet, rounds: usize) -> u32 {
        quota(rounds, group.len(), self.election.n())
    }

    /// Size of the inner round set for `mu_S(T)` (or its Droop variant).
    pub fn share(&self, group: VoterSet, scope_len: usize, droop: bool) -> usize {
        let n = self.election.n();
        if droop {
            (droop_quota(scope_len, group.len(), n) as usize).min(scope_len)
        } else {
            quota(scope_len, group.len(), n) as usize
        }
    }

    /// `max_{o'_R} min_{j in S} sat_j(o'_R)`.
    pub fn maxmin(&self, group: VoterSet, rounds: RoundSet) -> u32 {
        if group.is_empty() || rounds.is_empty() {
            return 0;
        }
        let key = (group.bits(), rounds.bits());
        if let Some(v) = self.maxmin.get(&key) {
            return *v;
        }
        let search = Search::new(self.election, group, rounds);
        let value = search.maxmin();
        self.maxmin.insert(key, value);
        value
    }

    /// Lex-first suboutcome on `rounds` giving every member `demand(i)` or more.
    pub fn reach(&self, group: VoterSet, rounds: RoundSet, demand: impl Fn(usize) -> u32) -> Option<Suboutcome> {
        let search = Search::new(self.election, group, rounds);
        let demands: Vec<u32> = search.members.iter().map(|&i| demand(i)).collect();
        search.reach(&demands)
    }

    /// The max-min value on `rounds` and the lex-first suboutcome attaining it.
    pub fn best_suboutcome(&self, group: VoterSet, rounds: RoundSet) -> (u32, Suboutcome) {
        let value = self.maxmin(group, rounds);
        let sub = self
            .reach(group, rounds, |_| value)
            .expect("the max-min value is attainable");
        (value, sub)
    }

    /// `mu_S(T)`, or its Droop variant with `|R| = ceil((|T|+1)|S|/n) - 1`.
    pub fn mu(&self, group: VoterSet, scope: RoundSet, droop: bool) -> u32 {
        let k = self.share(group, scope.len(), droop);
        if k == 0 || group.is_empty() {
            return 0;
        }
        let key = (group.bits(), scope.bits(), droop);
        if let Some(v) = self.mu.get(&key) {
            return *v;
        }
        let mut best = u32::MAX;
        for r in scope.subsets_of_size(k) {
            best = best.min(self.maxmin(group, RoundSet::from_bits(r)));
            if best == 0 {
                break;
            }
        }
        self.mu.insert(key, best);
        best
    }

    /// `rho^s`, `rho` or `rho^w` of a group.
    pub fn rho(&self, group: VoterSet, variant: Variant) -> u32 {
        self.guarantee(group, Guarantee::from_variant(variant))
    }

    pub fn guarantee(&self, group: VoterSet, kind: Guarantee) -> u32 {
        let e = self.election;
        let cap = self.quota(group, e.ell());
        match kind {
            Guarantee::Strong | Guarantee::Weak => {
                let k = cap as usize;
                if k == 0 {
                    return 0;
                }
                let mut best: Option<u32> = None;
                for r in e.rounds().subsets_of_size(k) {
                    let v = self.maxmin(group, RoundSet::from_bits(r));
                    best = Some(match (best, kind) {
                        (None, _) => v,
                        (Some(b), Guarantee::Strong) => b.max(v),
                        (Some(b), _) => b.min(v),
                    });
                    match kind {
                        Guarantee::Strong if v as usize == k => break,
                        Guarantee::Weak if v == 0 => break,
                        _ => {}
                    }
                }
                best.unwrap_or(0)
            }
            Guarantee::Standard | Guarantee::Droop => {
                let droop = kind == Guarantee::Droop;
                let ceiling = if droop { e.ell() as u32 } else { cap };
                let mut best = 0;
                for t in e.rounds().subsets() {
                    best = best.max(self.mu(group, RoundSet::from_bits(t), droop));
                    if best >= ceiling {
                        break;
                    }
                }
                best
            }
        }
    }

    /// Every group with a positive guarantee of the given kind, ascending by bitmask.
    pub fn table(&self, kind: Guarantee) -> Result<&[GroupValue]> {
        let slot = &self.tables[kind as usize];
        if let Some(t) = slot.get() {
            return Ok(t);
        }
        self.ensure_size("guarantee table")?;
        self.ensure_work("guarantee table", self.table_work(kind))?;
        Ok(slot.get_or_init(|| {
            let n = self.election.n();
            (1usize..1 << n)
                .into_par_iter()
                .filter_map(|bits| {
                    let group = VoterSet::from_bits(bits as u64);
                    let value = self.guarantee(group, kind);
                    (value > 0).then_some(GroupValue { group, value })
                })
                .collect()
        }))
    }

    /// Every `(S, T)` with `mu_S(T) >= 1`, ascending by `S` then `T`.
    pub fn core_pairs(&self) -> Result<&[PairValue]> {
        if let Some(t) = self.pairs.get() {
            return Ok(t);
        }
        self.ensure_size("core pair table")?;
        self.ensure_work("core pair table", self.table_work(Guarantee::Standard))?;
        Ok(self.pairs.get_or_init(|| {
            let e = self.election;
            let n = e.n();
            let per_group: Vec<Vec<PairValue>> = (1usize..1 << n)
                .into_par_iter()
                .map(|bits| {
                    let group = VoterSet::from_bits(bits as u64);
                    if self.quota(group, e.ell()) == 0 {
                        return Vec::new();
                    }
                    e.rounds()
                        .subsets()
                        .filter_map(|t| {
                            let scope = RoundSet::from_bits(t);
                            let value = self.mu(group, scope, false);
                            (value > 0).then_some(PairValue { group, scope, value })
                        })
                        .collect()
                })
                .collect();
            per_group.into_iter().flatten().collect()
        }))
    }
}

/// Branch-and-bound search over suboutcomes of one `(S, R)`.
///
/// Candidates in a round are grouped by which members of `S` approve them;
/// only the lowest-index candidate of each class is tried, which keeps the
/// lexicographically first solution reachable.
struct Search {
    members: Vec<usize>,
    rounds: Vec<usize>,
    /// Per round: `(candidate, compact member mask)` in ascending candidate order.
    options: Vec<Vec<(usize, u64)>>,
    /// `avail[k][j]`: rounds at or after position `k` where member `j` can be covered.
    avail: Vec<Vec<u32>>,
    /// Sum over rounds at or after `k` of the largest class size.
    cover: Vec<u32>,
}

impl Search {
    fn new(e: &TemporalElection, group: VoterSet, rounds: RoundSet) -> Self {
        let members: Vec<usize> = group.iter().collect();
        let rounds: Vec<usize> = rounds.iter().collect();
        let compact = |mask: VoterSet| -> u64 {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &i)| mask.contains(i))
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        };
        let options: Vec<Vec<(usize, u64)>> = rounds
            .iter()
            .map(|&r| {
                let mut opts: Vec<(usize, u64)> = Vec::new();
                for c in 0..e.m() {
                    let cov = compact(e.approvers(r, c).intersection(group));
                    if !opts.iter().any(|&(_, seen)| seen == cov) {
                        opts.push((c, cov));
                    }
                }
                opts
            })
            .collect();
        let s = members.len();
        let mut avail = vec![vec![0u32; s]; rounds.len() + 1];
        let mut cover = vec![0u32; rounds.len() + 1];
        for k in (0..rounds.len()).rev() {
            let union = options[k].iter().fold(0u64, |acc, &(_, cov)| acc | cov);
            let widest = options[k].iter().map(|&(_, cov)| cov.count_ones()).max().unwrap_or(0);
            avail[k] = (0..s).map(|j| avail[k + 1][j] + (union >> j & 1) as u32).collect();
            cover[k] = cover[k + 1] + widest;
        }
        Self {
            members,
            rounds,
            options,
            avail,
            cover,
        }
    }

    fn upper_bound(&self) -> u32 {
        let s = self.members.len() as u32;
        let by_voter = self.avail[0].iter().copied().min().unwrap_or(0);
        by_voter.min(self.cover[0] / s).min(self.rounds.len() as u32)
    }

    fn maxmin(&self) -> u32 {
        let mut v = self.upper_bound();
        while v > 0 {
            let demands = vec![v; self.members.len()];
            if self.reach(&demands).is_some() {
                return v;
            }
            v -= 1;
        }
        0
    }

    fn reach(&self, demands: &[u32]) -> Option<Suboutcome> {
        let mut need = demands.to_vec();
        let total: u32 = need.iter().sum();
        let mut picks = Vec::with_capacity(self.rounds.len());
        if self.dfs(0, &mut need, total, &mut picks) {
            let rounds: RoundSet = self.rounds.iter().copied().collect();
            Some(Suboutcome::new(rounds, picks).expect("one pick per round"))
        } else {
            None
        }
    }

    fn dfs(&self, k: usize, need: &mut [u32], unmet: u32, picks: &mut Vec<usize>) -> bool {
        if unmet == 0 {
            picks.extend(self.options[k..].iter().map(|opts| opts[0].0));
            return true;
        }
        if k == self.rounds.len() || unmet > self.cover[k] {
            return false;
        }
        if need.iter().zip(&self.avail[k]).any(|(&d, &a)| d > a) {
            return false;
        }
        for &(c, cov) in &self.options[k] {
            let mut served = 0u64;
            let mut mask = cov;
            while mask != 0 {
                let j = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                if need[j] > 0 {
                    need[j] -= 1;
                    served |= 1 << j;
                }
            }
            picks.push(c);
            if self.dfs(k + 1, need, unmet - served.count_ones(), picks) {
                return true;
            }
            picks.pop();
            let mut mask = served;
            while mask != 0 {
                let j = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                need[j] += 1;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn election(approvals: Vec<Vec<Vec<usize>>>, m: usize) -> TemporalElection {
        let names = (0..m).map(|c| format!("c{c}")).collect();
        TemporalElection::new(names, approvals).unwrap()
    }

    /// Odometer over every suboutcome; the reference for the search above.
    fn naive_maxmin(e: &TemporalElection, group: VoterSet, rounds: RoundSet) -> u32 {
        let rs: Vec<usize> = rounds.iter().collect();
        let mut picks = vec![0usize; rs.len()];
        let mut best = 0;
        loop {
            let worst = group
                .iter()
                .map(|i| rs.iter().zip(&picks).filter(|&(&r, &c)| e.approves(i, r, c)).count())
                .min()
                .unwrap_or(0) as u32;
            best = best.max(worst);
            let mut k = 0;
            while k < picks.len() {
                picks[k] += 1;
                if picks[k] < e.m() {
                    break;
                }
                picks[k] = 0;
                k += 1;
            }
            if k == picks.len() {
                return best;
            }
        }
    }

    #[test]
    fn maxmin_matches_odometer() {
        // Three voters, three rounds; each voter dislikes `a` in one round.
        let e = election(
            vec![
                vec![vec![1], vec![0], vec![0]],
                vec![vec![0], vec![1], vec![0]],
                vec![vec![0], vec![0], vec![1]],
            ],
            2,
        );
        let a = Analysis::new(&e, Limits::default());
        for s in 1u64..8 {
            for r in 0u64..8 {
                let (g, rr) = (VoterSet::from_bits(s), RoundSet::from_bits(r));
                assert_eq!(a.maxmin(g, rr), naive_maxmin(&e, g, rr), "S={g} R={rr}");
            }
        }
        let all = e.voters();
        assert_eq!(a.maxmin(all, e.rounds()), 2);
        let (v, sub) = a.best_suboutcome(all, e.rounds());
        assert_eq!(v, 2);
        assert_eq!(sub.picks(), &[0, 0, 0]);
    }

    #[test]
    fn reach_is_lexicographically_first() {
        let e = election(vec![vec![vec![0, 1], vec![1]], vec![vec![1], vec![0]]], 2);
        let a = Analysis::new(&e, Limits::default());
        let sub = a.reach(e.voters(), e.rounds(), |_| 1).unwrap();
        // (a, a) serves voter 1 in round 1 and voter 2 in round 2.
        assert_eq!(sub.picks(), &[0, 0]);
        assert!(a.reach(e.voters(), e.rounds(), |_| 2).is_none());
    }

    #[test]
    fn droop_share_never_exceeds_scope() {
        for n in 1..8 {
            for s in 1..=n {
                for t in 0..10 {
                    assert!(droop_quota(t, s, n) as usize <= t);
                }
            }
        }
    }

    #[test]
    fn unanimous_mu_is_full() {
        let e = election(vec![vec![vec![0]; 3]; 2], 2);
        let a = Analysis::new(&e, Limits::default());
        assert_eq!(a.mu(e.voters(), e.rounds(), false), 3);
        assert_eq!(a.rho(e.voters(), Variant::Standard), 3);
    }

    #[test]
    fn tables_respect_the_work_cap() {
        let e = election(vec![vec![vec![0]; 3]; 4], 1);
        let tight = Limits {
            max_work: 10,
            ..Limits::default()
        };
        let a = Analysis::new(&e, tight);
        assert!(matches!(a.table(Guarantee::Standard), Err(Error::ResourceCap { .. })));
    }
}
