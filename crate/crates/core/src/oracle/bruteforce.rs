//! Literal, exponential checkers used as references for the fast ones.
//!
//! These quantify exactly as the definitions read: over every group, every
//! `(sigma, tau)` pair, and every size-`t` set of agreement rounds. They share
//! nothing with the checkers in `axioms` beyond the election model.

use crate::axioms::{AxiomId, CheckReport, Family, Variant, Witness, Work};
use crate::error::{Error, Result};
use crate::model::{Outcome, TemporalElection};
use crate::sets::{RoundSet, VoterSet};

/// Largest `n` the literal checkers accept.
pub const MAX_VOTERS: usize = 12;

fn ensure_small(e: &TemporalElection) -> Result<()> {
    if e.n() > MAX_VOTERS {
        return Err(Error::ResourceCap {
            what: format!("brute-force check with {} voters", e.n()),
            estimated: 1u128 << e.n(),
            limit: 1u128 << MAX_VOTERS,
        });
    }
    Ok(())
}

fn sat(e: &TemporalElection, o: &Outcome, i: usize) -> usize {
    (0..e.ell()).filter(|&r| e.approves(i, r, o.pick(r))).count()
}

fn common(e: &TemporalElection, s: VoterSet, r: usize) -> Vec<usize> {
    (0..e.m()).filter(|&c| s.iter().all(|i| e.approves(i, r, c))).collect()
}

/// Rounds where at least `sigma` members of `s` share a candidate.
fn rounds_with(e: &TemporalElection, s: VoterSet, sigma: usize) -> Vec<usize> {
    (0..e.ell())
        .filter(|&q| (0..e.m()).any(|c| s.iter().filter(|&i| e.approves(i, q, c)).count() >= sigma))
        .collect()
}

/// EJR+, sEJR+ or wEJR+ straight from the definition.
pub fn check_ejr_plus_bruteforce(e: &TemporalElection, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    ensure_small(e)?;
    e.validate_outcome(o)?;
    let axiom = match variant {
        Variant::Weak => AxiomId::WEjrPlus,
        Variant::Standard => AxiomId::EjrPlus,
        Variant::Strong => AxiomId::SEjrPlus,
    };
    let (n, ell) = (e.n(), e.ell());
    let sats: Vec<usize> = (0..n).map(|i| sat(e, o, i)).collect();
    let mut work = Work::default();
    for bits in 1u64..1 << n {
        let s = VoterSet::from_bits(bits);
        work.groups += 1;
        let best = s.iter().map(|i| sats[i]).max().unwrap_or(0);
        // Excluded rounds: non-empty intersection missing the pick.
        let pivot = (0..ell).find_map(|r| {
            let shared = common(e, s, r);
            (!shared.is_empty() && !shared.contains(&o.pick(r))).then(|| (r, shared[0]))
        });
        let Some((r, c)) = pivot else { continue };
        let found = match variant {
            Variant::Strong => {
                let q = ell * s.len() / n;
                (best < q).then(|| Witness {
                    pivot: Some((r, c)),
                    ..Witness::group(s, RoundSet::singleton(r), q as u32)
                })
            }
            _ => {
                let taus: Vec<usize> = match variant {
                    Variant::Weak => vec![ell],
                    _ => (1..=ell).collect(),
                };
                (1..=s.len()).find_map(|sigma| {
                    let good = rounds_with(e, s, sigma);
                    taus.iter().copied().find_map(|tau| {
                        let q = tau * sigma / n;
                        (good.len() >= tau && best < q).then(|| Witness {
                            cohesion: Some((sigma as u32, tau as u32)),
                            pivot: Some((r, c)),
                            ..Witness::group(s, good[..tau].iter().copied().collect(), q as u32)
                        })
                    })
                })
            }
        };
        if let Some(w) = found {
            return Ok(CheckReport::verdict(axiom, Some(w), work));
        }
    }
    Ok(CheckReport::verdict(axiom, None, work))
}

/// First group violating a JR, PJR, EJR or Droop-EJR axiom, quantifying
/// over every non-empty set of rounds the group agrees on.
pub fn jr_family_bruteforce(e: &TemporalElection, o: &Outcome, axiom: AxiomId) -> Result<Option<VoterSet>> {
    ensure_small(e)?;
    e.validate_outcome(o)?;
    let family = axiom.family();
    assert!(
        matches!(family, Family::Jr | Family::Pjr | Family::Ejr | Family::DroopEjr),
        "{axiom} is not a JR-type axiom"
    );
    let (n, ell) = (e.n(), e.ell());
    let sats: Vec<usize> = (0..n).map(|i| sat(e, o, i)).collect();
    for bits in 1u64..1 << n {
        let s = VoterSet::from_bits(bits);
        let agree: RoundSet = (0..ell).filter(|&r| !common(e, s, r).is_empty()).collect();
        let total = (0..ell)
            .filter(|&r| s.iter().any(|i| e.approves(i, r, o.pick(r))))
            .count();
        let best = s.iter().map(|i| sats[i]).max().unwrap_or(0);
        for t_bits in agree.subsets().filter(|&b| b != 0) {
            let t = t_bits.count_ones() as usize;
            let q = match (family, axiom.variant()) {
                (Family::DroopEjr, _) => ((t + 1) * s.len()).div_ceil(n) - 1,
                (_, Variant::Weak) if t < ell => continue,
                (_, Variant::Weak) | (_, Variant::Standard) => t * s.len() / n,
                (_, Variant::Strong) => (ell * s.len() / n).min(t),
            };
            let q = if family == Family::Jr { q.min(1) } else { q };
            let have = match family {
                Family::Jr | Family::Pjr => total,
                _ => best,
            };
            if have < q {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}
