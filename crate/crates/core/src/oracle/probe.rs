//! Randomized search for counterexamples to implications between axioms.
//!
//! Outcomes are sampled from a mix of sources: random picks, approved picks,
//! and the outputs of the three rules, so that strong antecedents hold often
//! enough for the probe to say something.

use super::generate::{Generator, GeneratorParams};
use crate::axioms::lattice::SOLID_ARROWS;
use crate::axioms::{check_with, Analysis, AxiomId, CheckReport, Limits};
use crate::error::Result;
use crate::model::{ElectionClass, Outcome, TemporalElection};
use crate::rules::{gcr_with, lspav, sdr, LsPavConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub election: TemporalElection,
    pub outcome: Outcome,
    pub antecedent: CheckReport,
    pub consequent: CheckReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub arrow: (AxiomId, AxiomId),
    pub trials: usize,
    /// Trials where the antecedent held, so the consequent was tested.
    pub antecedent_held: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
}

/// Per-arrow tallies from [`probe_lattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowTally {
    pub arrow: (AxiomId, AxiomId),
    pub antecedent_held: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub trials: usize,
    pub seed: u64,
    pub arrows: Vec<ArrowTally>,
    /// The first violation of any arrow.
    pub counterexample: Option<Counterexample>,
}

/// Picks an outcome for trial `k`, cycling through the samplers.
fn sample(g: &mut Generator, analysis: &Analysis<'_>, k: usize) -> Result<Outcome> {
    let e = analysis.election();
    Ok(match k % 6 {
        0 | 1 => g.approved_outcome(e),
        2 => g.outcome(e),
        3 => {
            let config = LsPavConfig {
                initial: Some(g.approved_outcome(e)),
                ..LsPavConfig::guaranteed(e)
            };
            lspav(e, &config)?.0
        }
        4 if e.election_class().is_within(ElectionClass::AtLeastOne) => sdr(e)?.0,
        5 => gcr_with(analysis)?.0,
        _ => g.approved_outcome(e),
    })
}

fn verdicts(
    analysis: &Analysis<'_>,
    o: &Outcome,
    a: AxiomId,
    b: AxiomId,
) -> Result<Option<(CheckReport, CheckReport)>> {
    let first = check_with(analysis, o, a)?;
    if !first.holds {
        return Ok(None);
    }
    Ok(Some((first, check_with(analysis, o, b)?)))
}

/// Samples `trials` pairs and tests `a => b` on each, after the `injected` pairs.
pub fn probe_implication(
    a: AxiomId,
    b: AxiomId,
    params: GeneratorParams,
    trials: usize,
    injected: &[(TemporalElection, Outcome)],
) -> Result<ProbeReport> {
    let mut report = ProbeReport {
        arrow: (a, b),
        trials: 0,
        antecedent_held: 0,
        seed: params.seed,
        counterexample: None,
    };
    let test = |e: &TemporalElection, analysis: &Analysis<'_>, o: &Outcome, report: &mut ProbeReport| -> Result<bool> {
        report.trials += 1;
        if let Some((antecedent, consequent)) = verdicts(analysis, o, a, b)? {
            report.antecedent_held += 1;
            if !consequent.holds {
                report.counterexample = Some(Counterexample {
                    election: e.clone(),
                    outcome: o.clone(),
                    antecedent,
                    consequent,
                });
                return Ok(true);
            }
        }
        Ok(false)
    };
    for (e, o) in injected {
        let analysis = Analysis::new(e, Limits::default());
        if test(e, &analysis, o, &mut report)? {
            return Ok(report);
        }
    }
    let mut g = Generator::new(params);
    for k in 0..trials {
        let e = g.election();
        let analysis = Analysis::new(&e, Limits::default());
        let o = sample(&mut g, &analysis, k)?;
        if test(&e, &analysis, &o, &mut report)? {
            break;
        }
    }
    Ok(report)
}

/// Tests every solid arrow on each of `trials` sampled pairs.
pub fn probe_lattice(params: GeneratorParams, trials: usize) -> Result<LatticeReport> {
    let mut arrows: Vec<ArrowTally> = SOLID_ARROWS
        .iter()
        .map(|&arrow| ArrowTally {
            arrow,
            antecedent_held: 0,
            violations: 0,
        })
        .collect();
    let mut counterexample = None;
    let mut g = Generator::new(params);
    for k in 0..trials {
        let e = g.election();
        let analysis = Analysis::new(&e, Limits::default());
        let o = sample(&mut g, &analysis, k)?;
        let reports = AxiomId::ALL
            .iter()
            .map(|&axiom| check_with(&analysis, &o, axiom))
            .collect::<Result<Vec<_>>>()?;
        let report = |x: AxiomId| &reports[AxiomId::ALL.iter().position(|&y| y == x).expect("listed axiom")];
        for tally in &mut arrows {
            let (a, b) = tally.arrow;
            if report(a).holds {
                tally.antecedent_held += 1;
                if !report(b).holds {
                    tally.violations += 1;
                    counterexample.get_or_insert_with(|| Counterexample {
                        election: e.clone(),
                        outcome: o.clone(),
                        antecedent: report(a).clone(),
                        consequent: report(b).clone(),
                    });
                }
            }
        }
    }
    Ok(LatticeReport {
        trials,
        seed: params.seed,
        arrows,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_counterexample_is_found() {
        // Both voters want `a` twice but get it once: JR holds, PJR fails.
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![0], vec![0]]; 2]).unwrap();
        let o = Outcome::new(vec![0, 1]);
        let r = probe_implication(AxiomId::Jr, AxiomId::Pjr, GeneratorParams::default(), 0, &[(e, o)]).unwrap();
        let ce = r.counterexample.unwrap();
        assert!(ce.antecedent.holds);
        assert!(!ce.consequent.holds);
    }

    #[test]
    fn short_lattice_probe_is_clean() {
        let r = probe_lattice(GeneratorParams::default(), 30).unwrap();
        assert!(r.counterexample.is_none());
        assert_eq!(r.arrows.len(), SOLID_ARROWS.len());
    }
}
