//! Re-validates witnesses straight from the definitions.
//!
//! Nothing here touches the search code in the checkers: satisfactions,
//! agreement and cohesion are recomputed from the ballots, and any claim
//! quantified over round sets or suboutcomes is verified by plain
//! enumeration. Meant for tests and for small instances.

use super::{AxiomId, Family, Variant, Witness};
use crate::model::{Outcome, TemporalElection};
use crate::sets::{RoundSet, VoterSet};

pub type ReplayResult = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> ReplayResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn floor_share(t: usize, s: usize, n: usize) -> u32 {
    (t * s / n) as u32
}

fn sat_voter(e: &TemporalElection, o: &Outcome, i: usize) -> u32 {
    (0..e.ell()).filter(|&r| e.ballot(i, r).contains(o.pick(r))).count() as u32
}

fn sat_group(e: &TemporalElection, o: &Outcome, s: VoterSet) -> u32 {
    (0..e.ell())
        .filter(|&r| s.iter().any(|i| e.ballot(i, r).contains(o.pick(r))))
        .count() as u32
}

fn common(e: &TemporalElection, s: VoterSet, r: usize) -> Vec<usize> {
    (0..e.m())
        .filter(|&c| s.iter().all(|i| e.ballot(i, r).contains(c)))
        .collect()
}

fn masks_of_size(scope: RoundSet, k: usize) -> Vec<RoundSet> {
    let top = scope.span();
    (0u64..1 << top)
        .map(RoundSet::from_bits)
        .filter(|r| r.is_subset(scope) && r.len() == k)
        .collect()
}

/// Calls `f` on every suboutcome on `rounds` built from candidates some
/// member approves (candidate 0 where nobody does); stops when `f` is true.
fn any_suboutcome(
    e: &TemporalElection,
    s: VoterSet,
    rounds: RoundSet,
    mut f: impl FnMut(&[(usize, usize)]) -> bool,
) -> bool {
    let rs: Vec<usize> = rounds.iter().collect();
    let choices: Vec<Vec<usize>> = rs
        .iter()
        .map(|&r| {
            let c: Vec<usize> = (0..e.m())
                .filter(|&c| s.iter().any(|i| e.ballot(i, r).contains(c)))
                .collect();
            if c.is_empty() {
                vec![0]
            } else {
                c
            }
        })
        .collect();
    let mut idx = vec![0usize; rs.len()];
    loop {
        let sub: Vec<(usize, usize)> = rs
            .iter()
            .zip(&idx)
            .enumerate()
            .map(|(k, (&r, &j))| (r, choices[k][j]))
            .collect();
        if f(&sub) {
            return true;
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return false;
        }
    }
}

fn sub_sat(e: &TemporalElection, i: usize, sub: &[(usize, usize)]) -> u32 {
    sub.iter().filter(|&&(r, c)| e.ballot(i, r).contains(c)).count() as u32
}

fn maxmin_at_least(e: &TemporalElection, s: VoterSet, rounds: RoundSet, value: u32) -> bool {
    any_suboutcome(e, s, rounds, |sub| s.iter().all(|i| sub_sat(e, i, sub) >= value))
}

fn deviation_exists(e: &TemporalElection, o: &Outcome, s: VoterSet, rounds: RoundSet) -> bool {
    any_suboutcome(e, s, rounds, |sub| {
        s.iter().all(|i| sub_sat(e, i, sub) > sat_voter(e, o, i))
    })
}

/// Checks that `w` proves `o` violates `axiom`.
pub fn replay(e: &TemporalElection, o: &Outcome, axiom: AxiomId, w: &Witness) -> ReplayResult {
    let s = w.group;
    let (n, ell) = (e.n(), e.ell());
    ensure(!s.is_empty() && s.span() <= n, || {
        format!("group {s} is empty or out of range")
    })?;
    ensure(w.threshold >= 1, || "threshold must be positive".into())?;
    if let Some(d) = &w.deviation {
        ensure(d.rounds() == w.rounds, || {
            "deviation domain differs from the round set".into()
        })?;
    }
    let member_best = s.iter().map(|i| sat_voter(e, o, i)).max().unwrap_or(0);
    let group_sat = sat_group(e, o, s);
    let variant = axiom.variant();
    match axiom.family() {
        Family::Jr | Family::Pjr | Family::Ejr | Family::DroopEjr => {
            let agree: RoundSet = (0..ell).filter(|&r| !common(e, s, r).is_empty()).collect();
            let t = agree.len();
            ensure(w.rounds == agree, || {
                format!("rounds {} are not the agreement rounds {agree}", w.rounds)
            })?;
            ensure(t > 0, || "group agrees in no round".into())?;
            let q = match (axiom.family(), variant) {
                (Family::DroopEjr, _) => (((t + 1) * s.len()).div_ceil(n) - 1) as u32,
                (_, Variant::Weak) => {
                    ensure(t == ell, || "weak axioms need agreement in every round".into())?;
                    floor_share(ell, s.len(), n)
                }
                (_, Variant::Standard) => floor_share(t, s.len(), n),
                (_, Variant::Strong) => floor_share(ell, s.len(), n).min(t as u32),
            };
            let q = if axiom.family() == Family::Jr { q.min(1) } else { q };
            ensure(q == w.threshold, || format!("threshold {} should be {q}", w.threshold))?;
            let have = match axiom.family() {
                Family::Jr | Family::Pjr => group_sat,
                _ => member_best,
            };
            ensure(have < q, || format!("satisfaction {have} meets the threshold {q}"))
        }
        Family::EjrPlus => {
            let (r, c) = w.pivot.ok_or("missing pivot")?;
            ensure(r < ell && c < e.m(), || "pivot out of range".into())?;
            ensure(common(e, s, r).contains(&c), || {
                "pivot candidate is not common to the group".into()
            })?;
            ensure(s.iter().any(|i| !e.ballot(i, r).contains(o.pick(r))), || {
                "every member approves the pick in the pivot round".into()
            })?;
            let q = match variant {
                Variant::Strong => floor_share(ell, s.len(), n),
                _ => {
                    let (sigma, tau) = w.cohesion.ok_or("missing cohesion")?;
                    ensure(w.rounds.len() == tau as usize, || {
                        "cohesion rounds differ from tau".into()
                    })?;
                    if variant == Variant::Weak {
                        ensure(tau as usize == ell, || "weak cohesion must span every round".into())?;
                    }
                    for q in w.rounds.iter() {
                        let best = (0..e.m())
                            .map(|c| s.iter().filter(|&i| e.ballot(i, q).contains(c)).count())
                            .max()
                            .unwrap_or(0);
                        ensure(best >= sigma as usize, || {
                            format!("round {} is not {sigma}-cohesive", q + 1)
                        })?;
                    }
                    floor_share(tau as usize, sigma as usize, n)
                }
            };
            ensure(q == w.threshold, || format!("threshold {} should be {q}", w.threshold))?;
            ensure(member_best < q, || format!("a member reaches {member_best} >= {q}"))
        }
        Family::Fjr | Family::Fpjr | Family::DroopFjr => {
            let dev = w.deviation.as_ref().ok_or("missing deviation")?;
            let pairs: Vec<(usize, usize)> = dev.iter().collect();
            let worst = s.iter().map(|i| sub_sat(e, i, &pairs)).min().unwrap_or(0);
            ensure(worst >= w.threshold, || format!("deviation gives only {worst}"))?;
            let have = if axiom.family() == Family::Fpjr {
                group_sat
            } else {
                member_best
            };
            ensure(have < w.threshold, || {
                format!("satisfaction {have} meets {}", w.threshold)
            })?;
            let droop = axiom.family() == Family::DroopFjr;
            match (variant, droop) {
                (Variant::Strong, _) => {
                    let k = floor_share(ell, s.len(), n) as usize;
                    ensure(w.rounds.len() == k, || format!("round set must have {k} rounds"))
                }
                (Variant::Weak, _) => {
                    let k = floor_share(ell, s.len(), n) as usize;
                    ensure(w.rounds.len() == k, || format!("round set must have {k} rounds"))?;
                    for r in masks_of_size(e.rounds(), k) {
                        ensure(maxmin_at_least(e, s, r, w.threshold), || {
                            format!("round set {r} blocks")
                        })?;
                    }
                    Ok(())
                }
                (Variant::Standard, _) => {
                    let t = w.scope.ok_or("missing scope")?;
                    ensure(w.rounds.is_subset(t), || "round set leaves the scope".into())?;
                    let k = if droop {
                        ((((t.len() + 1) * s.len()).div_ceil(n)) - 1).min(t.len())
                    } else {
                        floor_share(t.len(), s.len(), n) as usize
                    };
                    for r in masks_of_size(t, k) {
                        ensure(maxmin_at_least(e, s, r, w.threshold), || {
                            format!("round set {r} blocks")
                        })?;
                    }
                    Ok(())
                }
            }
        }
        Family::Core => {
            let dev = w.deviation.as_ref().ok_or("missing deviation")?;
            let pairs: Vec<(usize, usize)> = dev.iter().collect();
            for i in s.iter() {
                let (gain, base) = (sub_sat(e, i, &pairs), sat_voter(e, o, i));
                ensure(gain > base, || {
                    format!("voter {} does not gain ({gain} vs {base})", i + 1)
                })?;
            }
            let scope = match variant {
                Variant::Standard => w.scope.ok_or("missing scope")?,
                _ => e.rounds(),
            };
            let k = floor_share(scope.len(), s.len(), n) as usize;
            ensure(w.rounds.len() == k && w.rounds.is_subset(scope), || {
                format!("round set must be {k} rounds inside {scope}")
            })?;
            if variant != Variant::Strong {
                for r in masks_of_size(scope, k) {
                    ensure(deviation_exists(e, o, s, r), || {
                        format!("round set {r} blocks every deviation")
                    })?;
                }
            }
            Ok(())
        }
    }
}
