//! JR, PJR, EJR (all three strengths) and Droop-EJR.
//!
//! Apart from sJR, these are decided by a depth-first search over groups
//! that visits subsets in ascending bitmask order. The search decides the
//! highest voter first and tries "exclude" before "include", so leaves come
//! out in numeric order and the first violation found is the canonical one.
//! Subtrees are cut when even the largest completion cannot raise the
//! threshold above what the included members already have.

use super::analysis::{droop_quota, quota, Analysis, Profile};
use super::{AxiomId, CheckReport, Variant, Witness, Work};
use crate::error::Result;
use crate::model::{Outcome, TemporalElection};
use crate::sets::{CandidateSet, RoundSet, VoterSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Measure {
    /// Group satisfaction `sat_S(o)`.
    Group,
    /// Best single member `max_i sat_i(o)`.
    Member,
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    /// `min(1, q)` where `q` is the proportional quota.
    Unit,
    /// The quota itself.
    Quota,
    /// `ceil((t+1)|S|/n) - 1`.
    Droop,
}

#[derive(Clone, Copy, Debug)]
struct Rule {
    variant: Variant,
    shape: Shape,
    measure: Measure,
}

impl Rule {
    /// Threshold for a group of size `s` agreeing in `t` rounds; monotone in both.
    fn threshold(&self, t: usize, s: usize, n: usize, ell: usize) -> u32 {
        let base = match self.variant {
            Variant::Weak if t < ell => return 0,
            Variant::Weak => quota(ell, s, n),
            Variant::Standard => match self.shape {
                Shape::Droop if t > 0 => droop_quota(t, s, n),
                Shape::Droop => 0,
                _ => quota(t, s, n),
            },
            Variant::Strong if t == 0 => return 0,
            Variant::Strong => quota(ell, s, n).min(t as u32),
        };
        match self.shape {
            Shape::Unit => base.min(1),
            _ => base,
        }
    }
}

struct GroupSearch<'a> {
    e: &'a TemporalElection,
    profile: &'a Profile,
    rule: Rule,
    pool: Vec<usize>,
    /// `agree[level]`: per-round agreement masks after including `pool[level]`.
    agree: Vec<Vec<CandidateSet>>,
    leaves: u64,
}

#[derive(Clone, Copy)]
struct Node {
    members: VoterSet,
    /// Level whose `agree` buffer holds this node's masks (`pool.len()` = root).
    frame: usize,
    t: usize,
    covered: RoundSet,
    max_sat: u32,
}

impl<'a> GroupSearch<'a> {
    fn new(e: &'a TemporalElection, profile: &'a Profile, rule: Rule, pool: VoterSet) -> Self {
        let pool: Vec<usize> = pool.iter().collect();
        let mut agree = vec![vec![CandidateSet::EMPTY; e.ell()]; pool.len() + 1];
        agree[pool.len()] = vec![CandidateSet::full(e.m()); e.ell()];
        Self {
            e,
            profile,
            rule,
            pool,
            agree,
            leaves: 0,
        }
    }

    fn measure(&self, node: &Node) -> u32 {
        match self.rule.measure {
            Measure::Group => node.covered.len() as u32,
            Measure::Member => node.max_sat,
        }
    }

    fn run(&mut self) -> Option<Witness> {
        let root = Node {
            members: VoterSet::EMPTY,
            frame: self.pool.len(),
            t: self.e.ell(),
            covered: RoundSet::EMPTY,
            max_sat: 0,
        };
        self.visit(self.pool.len(), root)
    }

    /// Decides `pool[level - 1]`, then lower levels.
    fn visit(&mut self, level: usize, node: Node) -> Option<Witness> {
        let (n, ell) = (self.e.n(), self.e.ell());
        let best_size = node.members.len() + level;
        if self.measure(&node) >= self.rule.threshold(node.t, best_size, n, ell) {
            return None;
        }
        if level == 0 {
            self.leaves += 1;
            if node.members.is_empty() {
                return None;
            }
            let threshold = self.rule.threshold(node.t, node.members.len(), n, ell);
            let rounds = self.frame_rounds(node.frame);
            return Some(Witness::group(node.members, rounds, threshold));
        }
        let level = level - 1;
        if let Some(w) = self.visit(level, node) {
            return Some(w);
        }
        let voter = self.pool[level];
        let (lower, upper) = self.agree.split_at_mut(level + 1);
        let parent = &upper[node.frame - level - 1];
        let mut t = 0;
        for (r, slot) in lower[level].iter_mut().enumerate() {
            *slot = parent[r].intersection(self.e.ballot(voter, r));
            t += usize::from(!slot.is_empty());
        }
        let mut members = node.members;
        members.insert(voter);
        let child = Node {
            members,
            frame: level,
            t,
            covered: node.covered.union(self.profile.coverage[voter]),
            max_sat: node.max_sat.max(self.profile.sat[voter]),
        };
        self.visit(level, child)
    }

    fn frame_rounds(&self, frame: usize) -> RoundSet {
        self.agree[frame]
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_empty())
            .map(|(r, _)| r)
            .collect()
    }
}

fn search(
    analysis: &Analysis<'_>,
    o: &Outcome,
    axiom: AxiomId,
    rule: Rule,
    pool: impl FnOnce(&Profile) -> VoterSet,
) -> Result<CheckReport> {
    let e = analysis.election();
    analysis.ensure_size(axiom.name())?;
    analysis.ensure_work(axiom.name(), (1u128 << e.n()).saturating_mul(e.ell() as u128))?;
    let profile = Profile::new(e, o);
    let pool = pool(&profile);
    let mut gs = GroupSearch::new(e, &profile, rule, pool);
    let witness = gs.run();
    let work = Work {
        groups: gs.leaves,
        suboutcomes: 0,
    };
    Ok(CheckReport::verdict(axiom, witness, work))
}

/// wJR, JR or sJR.
pub fn check_jr_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let axiom = match variant {
        Variant::Weak => AxiomId::WJr,
        Variant::Standard => AxiomId::Jr,
        Variant::Strong => return Ok(check_sjr(analysis.election(), o)),
    };
    let rule = Rule {
        variant,
        shape: Shape::Unit,
        measure: Measure::Group,
    };
    // A violating group has zero satisfaction, so only unsatisfied voters matter.
    search(analysis, o, axiom, rule, Profile::unsatisfied)
}

/// sJR in polynomial time.
///
/// A violating group agrees on some `c` in some round `r` and is unserved, so
/// it sits inside `approvers(r, c)` restricted to unsatisfied voters. Any
/// subset of that set of size at least `ceil(n/ell)` violates, and the
/// smallest such bitmask is its lowest members.
fn check_sjr(e: &TemporalElection, o: &Outcome) -> CheckReport {
    let profile = Profile::new(e, o);
    let zero = profile.unsatisfied();
    let needed = e.n().div_ceil(e.ell());
    let mut best: Option<VoterSet> = None;
    let mut work = Work::default();
    for r in 0..e.ell() {
        for c in 0..e.m() {
            work.groups += 1;
            let pool = e.approvers(r, c).intersection(zero);
            if pool.len() >= needed {
                let group = pool.lowest(needed);
                if best.is_none_or(|b| group < b) {
                    best = Some(group);
                }
            }
        }
    }
    let witness = best.map(|g| Witness::group(g, e.agreement_rounds(g), 1));
    CheckReport::verdict(AxiomId::SJr, witness, work)
}

/// wPJR, PJR or sPJR.
pub fn check_pjr_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let axiom = match variant {
        Variant::Weak => AxiomId::WPjr,
        Variant::Standard => AxiomId::Pjr,
        Variant::Strong => AxiomId::SPjr,
    };
    let rule = Rule {
        variant,
        shape: Shape::Quota,
        measure: Measure::Group,
    };
    search(analysis, o, axiom, rule, |_| analysis.election().voters())
}

/// wEJR, EJR or sEJR.
pub fn check_ejr_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let axiom = match variant {
        Variant::Weak => AxiomId::WEjr,
        Variant::Standard => AxiomId::Ejr,
        Variant::Strong => AxiomId::SEjr,
    };
    let rule = Rule {
        variant,
        shape: Shape::Quota,
        measure: Measure::Member,
    };
    search(analysis, o, axiom, rule, |_| analysis.election().voters())
}

pub fn check_droop_ejr(analysis: &Analysis<'_>, o: &Outcome) -> Result<CheckReport> {
    let rule = Rule {
        variant: Variant::Standard,
        shape: Shape::Droop,
        measure: Measure::Member,
    };
    search(analysis, o, AxiomId::DroopEjr, rule, |_| analysis.election().voters())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Limits;

    fn election(approvals: Vec<Vec<Vec<usize>>>, m: usize) -> TemporalElection {
        let names = (0..m).map(|c| ((b'a' + c as u8) as char).to_string()).collect();
        TemporalElection::new(names, approvals).unwrap()
    }

    /// Definition-literal scan in ascending bitmask order.
    fn literal_first(e: &TemporalElection, o: &Outcome, rule: Rule) -> Option<VoterSet> {
        let p = Profile::new(e, o);
        (1u64..1 << e.n()).map(VoterSet::from_bits).find(|&s| {
            let t = e.agreement_rounds(s).len();
            let thr = rule.threshold(t, s.len(), e.n(), e.ell());
            let have = match rule.measure {
                Measure::Group => p.group_sat(s),
                Measure::Member => p.max_sat(s),
            };
            have < thr
        })
    }

    #[test]
    fn search_finds_the_first_group() {
        // Voters 1 and 2 agree in every round and get nothing.
        let e = election(
            vec![
                vec![vec![0], vec![0], vec![1]],
                vec![vec![0], vec![0], vec![1]],
                vec![vec![0], vec![0, 1], vec![0]],
                vec![vec![1], vec![1], vec![1]],
            ],
            2,
        );
        let o = Outcome::new(vec![1, 1, 0]);
        let a = Analysis::new(&e, Limits::default());
        for variant in [Variant::Weak, Variant::Standard, Variant::Strong] {
            for (shape, measure) in [
                (Shape::Unit, Measure::Group),
                (Shape::Quota, Measure::Group),
                (Shape::Quota, Measure::Member),
                (Shape::Droop, Measure::Member),
            ] {
                if matches!(shape, Shape::Droop) && variant != Variant::Standard {
                    continue;
                }
                let rule = Rule {
                    variant,
                    shape,
                    measure,
                };
                let expect = literal_first(&e, &o, rule);
                let profile = Profile::new(&e, &o);
                let mut gs = GroupSearch::new(&e, &profile, rule, e.voters());
                let got = gs.run().map(|w| w.group);
                assert_eq!(got, expect, "{variant:?} {shape:?} {measure:?}");
            }
        }
        let report = check_ejr_family(&a, &o, Variant::Standard).unwrap();
        let w = report.witness.unwrap();
        assert_eq!(w.group, VoterSet::from_bits(0b0011));
        assert_eq!((w.rounds.len(), w.threshold), (3, 1));
    }

    #[test]
    fn sjr_reduction_returns_smallest_bitmask() {
        // n = 4, ell = 2: any two unserved voters agreeing once violate sJR;
        // voters 1 and 2 never agree, so {2, 3} comes first.
        let e = election(
            vec![
                vec![vec![1], vec![0]],
                vec![vec![0], vec![1]],
                vec![vec![0], vec![1]],
                vec![vec![0], vec![0]],
            ],
            3,
        );
        let o = Outcome::new(vec![2, 2]);
        let r = check_sjr(&e, &o);
        assert_eq!(r.witness.unwrap().group, VoterSet::from_bits(0b0110));
        let rule = Rule {
            variant: Variant::Strong,
            shape: Shape::Unit,
            measure: Measure::Group,
        };
        assert_eq!(literal_first(&e, &o, rule), Some(VoterSet::from_bits(0b0110)));
    }
}
