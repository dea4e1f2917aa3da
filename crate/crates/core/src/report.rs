//! JSON renderings of reports and traces.
//!
//! Voter and round indices are 1-based and candidates appear by name, so a
//! rendered witness can be read against the election file directly.

use crate::axioms::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::model::io::outcome_names;
use crate::model::{Outcome, Suboutcome, TemporalElection};
use crate::oracle::{Counterexample, ForAllReport, LatticeReport, ProbeReport};
use crate::rules::{GcrTrace, LsPavTrace, SdrTrace};
use crate::sets::{RoundSet, VoterSet};
use crate::Rational;
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn name(e: &TemporalElection, c: usize) -> &str {
    &e.candidates()[c]
}

/// `{"3": "a", ...}` keyed by 1-based round.
pub fn suboutcome_value(e: &TemporalElection, sub: &Suboutcome) -> Value {
    let map = sub
        .iter()
        .map(|(r, c)| ((r + 1).to_string(), Value::from(name(e, c))))
        .collect();
    Value::Object(map)
}

pub fn outcome_value(e: &TemporalElection, o: &Outcome) -> Value {
    json!(outcome_names(o, e))
}

pub fn witness_value(e: &TemporalElection, w: &Witness) -> Value {
    let mut v = json!({
        "group": w.group,
        "rounds": w.rounds,
        "threshold": w.threshold,
    });
    let obj = v.as_object_mut().expect("object literal");
    if let Some(scope) = w.scope {
        obj.insert("scope".into(), json!(scope));
    }
    if let Some(dev) = &w.deviation {
        obj.insert("deviation".into(), suboutcome_value(e, dev));
    }
    if let Some((sigma, tau)) = w.cohesion {
        obj.insert("sigma".into(), json!(sigma));
        obj.insert("tau".into(), json!(tau));
    }
    if let Some((r, c)) = w.pivot {
        obj.insert("pivot".into(), json!({"round": r + 1, "candidate": name(e, c)}));
    }
    v
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PivotDoc {
    round: usize,
    candidate: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    group: VoterSet,
    rounds: RoundSet,
    threshold: u32,
    scope: Option<RoundSet>,
    deviation: Option<BTreeMap<String, String>>,
    sigma: Option<u32>,
    tau: Option<u32>,
    pivot: Option<PivotDoc>,
}

fn candidate(e: &TemporalElection, name: &str) -> Result<usize> {
    e.candidate_index(name)
        .ok_or_else(|| Error::parse("witness", format!("unknown candidate `{name}`")))
}

fn round(e: &TemporalElection, key: &str, one_based: usize) -> Result<usize> {
    if one_based == 0 || one_based > e.ell() {
        return Err(Error::parse(key, format!("round {one_based} out of range")));
    }
    Ok(one_based - 1)
}

/// Reads a witness back from [`witness_value`] output, or from a check
/// report carrying one.
pub fn witness_from_value(e: &TemporalElection, v: &Value) -> Result<Witness> {
    let v = match v.get("witness") {
        Some(w) if !w.is_null() => w,
        Some(_) => return Err(Error::parse("witness", "the report carries no witness")),
        None => v,
    };
    let doc: WitnessDoc = serde_json::from_value(v.clone()).map_err(|err| Error::parse("witness", err.to_string()))?;
    let deviation = match doc.deviation {
        None => None,
        Some(map) => {
            let mut picks: Vec<(usize, usize)> = map
                .iter()
                .map(|(k, c)| {
                    let r: usize = k
                        .parse()
                        .map_err(|_| Error::parse("deviation", format!("bad round `{k}`")))?;
                    Ok((round(e, "deviation", r)?, candidate(e, c)?))
                })
                .collect::<Result<_>>()?;
            picks.sort_unstable();
            let rounds = picks.iter().map(|&(r, _)| r).collect();
            Some(Suboutcome::new(rounds, picks.into_iter().map(|(_, c)| c).collect())?)
        }
    };
    let cohesion = match (doc.sigma, doc.tau) {
        (Some(s), Some(t)) => Some((s, t)),
        (None, None) => None,
        _ => return Err(Error::parse("witness", "sigma and tau come together")),
    };
    let pivot = doc
        .pivot
        .map(|p| Ok::<_, Error>((round(e, "pivot", p.round)?, candidate(e, &p.candidate)?)))
        .transpose()?;
    Ok(Witness {
        group: doc.group,
        rounds: doc.rounds,
        scope: doc.scope,
        deviation,
        threshold: doc.threshold,
        cohesion,
        pivot,
    })
}

/// The report, with the witness only when `with_witness` is set.
pub fn check_value(e: &TemporalElection, report: &CheckReport, with_witness: bool) -> Value {
    let mut v = json!({
        "axiom": report.axiom,
        "holds": report.holds,
        "work": report.work,
    });
    if with_witness {
        let w = report.witness.as_ref().map(|w| witness_value(e, w));
        v.as_object_mut()
            .expect("object literal")
            .insert("witness".into(), w.into());
    }
    v
}

fn rational(x: &Rational) -> Value {
    json!(x.to_string())
}

pub fn lspav_trace_value(e: &TemporalElection, trace: &LsPavTrace<Rational>) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "round": s.round + 1,
                "from": name(e, s.from),
                "to": name(e, s.to),
                "gain": rational(&s.gain),
            })
        })
        .collect();
    json!({"initial": outcome_value(e, &trace.initial), "steps": steps})
}

pub fn gcr_trace_value(e: &TemporalElection, trace: &GcrTrace) -> Value {
    let groups: Vec<Value> = trace
        .groups
        .iter()
        .map(|g| {
            json!({
                "group": g.group,
                "scope": g.scope,
                "value": g.value,
                "available": g.available,
                "rounds": g.rounds,
                "assignment": suboutcome_value(e, &g.assignment),
            })
        })
        .collect();
    let order: Vec<usize> = trace.order.iter().map(|k| k + 1).collect();
    json!({"groups": groups, "order": order})
}

pub fn sdr_trace_value(trace: &SdrTrace) -> Value {
    let dictators: Vec<usize> = trace.dictators.iter().map(|d| d + 1).collect();
    json!({ "dictators": dictators })
}

pub fn for_all_value(e: &TemporalElection, report: &ForAllReport, with_witness: bool) -> Value {
    let failure = report
        .failure
        .as_ref()
        .map(|(o, r)| json!({"outcome": outcome_value(e, o), "report": check_value(e, r, with_witness)}));
    json!({
        "axiom": report.axiom,
        "holds": report.holds(),
        "checked": report.checked,
        "failure": failure,
    })
}

pub fn counterexample_value(ce: &Counterexample) -> Value {
    let e = &ce.election;
    json!({
        "election": serde_json::to_value(crate::model::io::ElectionDoc::from_election(e)).expect("documents serialize"),
        "outcome": outcome_value(e, &ce.outcome),
        "antecedent": check_value(e, &ce.antecedent, true),
        "consequent": check_value(e, &ce.consequent, true),
    })
}

pub fn probe_value(report: &ProbeReport) -> Value {
    json!({
        "antecedent": report.arrow.0,
        "consequent": report.arrow.1,
        "trials": report.trials,
        "antecedent_held": report.antecedent_held,
        "seed": report.seed,
        "counterexample": report.counterexample.as_ref().map(counterexample_value),
    })
}

pub fn lattice_value(report: &LatticeReport) -> Value {
    let arrows: Vec<Value> = report
        .arrows
        .iter()
        .map(|t| {
            json!({
                "antecedent": t.arrow.0,
                "consequent": t.arrow.1,
                "antecedent_held": t.antecedent_held,
                "violations": t.violations,
            })
        })
        .collect();
    json!({
        "trials": report.trials,
        "seed": report.seed,
        "arrows": arrows,
        "counterexample": report.counterexample.as_ref().map(counterexample_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check, AxiomId};

    #[test]
    fn witness_uses_one_based_indices_and_names() {
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![0]; 2], vec![vec![1]; 2]]).unwrap();
        let o = Outcome::constant(0, 2);
        let r = check(&e, &o, AxiomId::WJr).unwrap();
        let v = check_value(&e, &r, true);
        assert_eq!(v["holds"], json!(false));
        assert_eq!(v["witness"]["group"], json!([2]));
        assert_eq!(v["witness"]["rounds"], json!([1, 2]));
        assert_eq!(check_value(&e, &r, false).get("witness"), None);
    }

    #[test]
    fn witnesses_read_back() {
        let e = TemporalElection::new(
            vec!["a".into(), "b".into()],
            vec![vec![vec![0], vec![0], vec![1]], vec![vec![0], vec![0], vec![0]]],
        )
        .unwrap();
        let o = Outcome::constant(1, 3);
        for axiom in AxiomId::ALL {
            let r = check(&e, &o, axiom).unwrap();
            if let Some(w) = &r.witness {
                let v = check_value(&e, &r, true);
                assert_eq!(&witness_from_value(&e, &v).unwrap(), w, "{axiom}");
                assert_eq!(&witness_from_value(&e, &v["witness"]).unwrap(), w, "{axiom}");
            }
        }
        let held = check_value(&e, &check(&e, &Outcome::constant(0, 3), AxiomId::Jr).unwrap(), true);
        assert!(witness_from_value(&e, &held).is_err());
    }

    #[test]
    fn suboutcomes_are_keyed_by_round() {
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![0]; 3]]).unwrap();
        let sub = Outcome::new(vec![0, 1, 0]).restrict([0usize, 2].into_iter().collect());
        assert_eq!(suboutcome_value(&e, &sub), json!({"1": "a", "3": "a"}));
    }
}
