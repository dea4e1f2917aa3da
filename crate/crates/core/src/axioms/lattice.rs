//! Known implications between the axioms.

use super::AxiomId::{self, *};

/// Every direct implication `A => B`.
pub const SOLID_ARROWS: [(AxiomId, AxiomId); 37] = [
    (SEjrPlus, SEjr),
    (SEjr, SPjr),
    (SEjr, Ejr),
    (SPjr, SJr),
    (SPjr, Pjr),
    (SJr, Jr),
    (SEjrPlus, EjrPlus),
    (EjrPlus, Ejr),
    (EjrPlus, WEjrPlus),
    (WEjrPlus, WEjr),
    (SCore, SFjr),
    (SCore, Core),
    (SFjr, SEjr),
    (SFjr, Fjr),
    (SFjr, SFpjr),
    (Core, Fjr),
    (Core, WCore),
    (Fjr, Ejr),
    (Fjr, WFjr),
    (Fjr, Fpjr),
    (WCore, WFjr),
    (WFjr, WEjr),
    (WFjr, WFpjr),
    (SFpjr, SPjr),
    (SFpjr, Fpjr),
    (Fpjr, Pjr),
    (Fpjr, WFpjr),
    (WFpjr, WPjr),
    (Ejr, Pjr),
    (Ejr, WEjr),
    (Pjr, Jr),
    (Pjr, WPjr),
    (Jr, WJr),
    (WEjr, WPjr),
    (WPjr, WJr),
    (DroopEjr, Ejr),
    (DroopFjr, Fjr),
];

/// Whether `a` implies `b` through a chain of solid arrows (reflexive).
pub fn implies(a: AxiomId, b: AxiomId) -> bool {
    let mut seen = vec![a];
    let mut frontier = vec![a];
    while let Some(x) = frontier.pop() {
        if x == b {
            return true;
        }
        for &(from, to) in &SOLID_ARROWS {
            if from == x && !seen.contains(&to) {
                seen.push(to);
                frontier.push(to);
            }
        }
    }
    false
}

/// Axioms implied by `a`, including `a`.
pub fn consequences(a: AxiomId) -> Vec<AxiomId> {
    AxiomId::ALL.into_iter().filter(|&b| implies(a, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure() {
        assert!(implies(SCore, WJr));
        assert!(implies(DroopFjr, WPjr));
        assert!(!implies(WCore, Jr));
        assert!(!implies(SFpjr, Ejr));
        assert_eq!(consequences(WJr), vec![WJr]);
    }

    #[test]
    fn no_duplicate_arrows() {
        for (k, a) in SOLID_ARROWS.iter().enumerate() {
            assert!(!SOLID_ARROWS[k + 1..].contains(a));
        }
    }
}
