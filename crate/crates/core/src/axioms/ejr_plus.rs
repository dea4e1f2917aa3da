//! EJR+, sEJR+ and wEJR+ in polynomial time.
//!
//! Any violating group can be grown to `S(r, c, lambda)`: every voter who
//! approves `c` in round `r` and has satisfaction below `lambda`. Growing
//! keeps the common candidate `c`, keeps some member disapproving `o_r`, only
//! raises cohesion, and leaves every member below `lambda`. So it suffices to
//! test those `m * ell^2` maximal groups.

use super::analysis::{quota, Profile};
use super::{AxiomId, CheckReport, Variant, Witness, Work};
use crate::error::Result;
use crate::model::{Outcome, TemporalElection};
use crate::sets::{RoundSet, VoterSet};

pub fn check_ejr_plus(e: &TemporalElection, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    e.validate_outcome(o)?;
    let axiom = match variant {
        Variant::Weak => AxiomId::WEjrPlus,
        Variant::Standard => AxiomId::EjrPlus,
        Variant::Strong => AxiomId::SEjrPlus,
    };
    let profile = Profile::new(e, o);
    let (n, ell) = (e.n(), e.ell());
    let mut work = Work::default();
    for r in 0..ell {
        let served = e.approvers(r, o.pick(r));
        for c in (0..e.m()).filter(|&c| c != o.pick(r)) {
            let fans = e.approvers(r, c);
            if fans.is_subset(served) {
                continue;
            }
            for lambda in 1..=ell as u32 {
                let group: VoterSet = fans.iter().filter(|&i| profile.sat[i] < lambda).collect();
                work.groups += 1;
                if group.is_subset(served) || quota(ell, group.len(), n) < lambda {
                    continue;
                }
                let found = match variant {
                    Variant::Strong => Some(Witness {
                        pivot: Some((r, c)),
                        ..Witness::group(group, RoundSet::singleton(r), quota(ell, group.len(), n))
                    }),
                    Variant::Standard => cohesive_rounds(e, group, lambda),
                    Variant::Weak => fully_cohesive(e, group, lambda),
                };
                if let Some(mut w) = found {
                    w.pivot = Some((r, c));
                    return Ok(CheckReport::verdict(axiom, Some(w), work));
                }
            }
        }
    }
    Ok(CheckReport::verdict(axiom, None, work))
}

/// Largest count of `group` members sharing one candidate in round `r`.
fn alpha(e: &TemporalElection, group: VoterSet, r: usize) -> u32 {
    (0..e.m())
        .map(|c| e.approvers(r, c).intersection(group).len() as u32)
        .max()
        .unwrap_or(0)
}

/// Looks for `(sigma, tau)` with `floor(tau * sigma / n) >= lambda`.
fn cohesive_rounds(e: &TemporalElection, group: VoterSet, lambda: u32) -> Option<Witness> {
    let mut ranked: Vec<(u32, usize)> = (0..e.ell()).map(|r| (alpha(e, group, r), r)).collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for tau in 1..=ranked.len() {
        let sigma = ranked[tau - 1].0;
        let guarantee = quota(tau, sigma as usize, e.n());
        if sigma > 0 && guarantee >= lambda {
            let rounds: RoundSet = ranked[..tau].iter().map(|&(_, r)| r).collect();
            return Some(Witness {
                cohesion: Some((sigma, tau as u32)),
                ..Witness::group(group, rounds, guarantee)
            });
        }
    }
    None
}

/// `(sigma, ell)`-cohesion with `sigma` the weakest round.
fn fully_cohesive(e: &TemporalElection, group: VoterSet, lambda: u32) -> Option<Witness> {
    let sigma = (0..e.ell()).map(|r| alpha(e, group, r)).min().unwrap_or(0);
    let guarantee = quota(e.ell(), sigma as usize, e.n());
    (sigma > 0 && guarantee >= lambda).then(|| Witness {
        cohesion: Some((sigma, e.ell() as u32)),
        ..Witness::group(group, e.rounds(), guarantee)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unanimous_outcome_holds() {
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![0]; 3]; 3]).unwrap();
        let o = Outcome::constant(0, 3);
        for v in [Variant::Weak, Variant::Standard, Variant::Strong] {
            assert!(check_ejr_plus(&e, &o, v).unwrap().holds);
        }
        let bad = Outcome::constant(1, 3);
        let r = check_ejr_plus(&e, &bad, Variant::Standard).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.group, e.voters());
        assert_eq!(w.pivot, Some((0, 0)));
        assert_eq!(w.cohesion, Some((3, 1)));
    }
}
