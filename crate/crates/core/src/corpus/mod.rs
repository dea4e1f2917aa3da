//! Fixture elections with known verdicts.
//!
//! Each entry is a JSON document under `corpus/` at the repository root,
//! embedded at compile time. An expectation is scoped to the entry's
//! designated outcome, to the existence of some satisfying outcome, or to
//! every outcome. Existence and for-all expectations are decided over the
//! approved-candidates outcome space (see [`crate::oracle::OutcomeSpace`]).

use crate::axioms::{check_with, Analysis, AxiomId, Limits};
use crate::error::{Error, Result};
use crate::model::io::{election_json, outcome_from_names, outcome_names, picks_json, ElectionDoc};
use crate::model::{Outcome, TemporalElection};
use crate::oracle::{check_all, exists_satisfying, Generator, GeneratorParams};
use serde::{Deserialize, Serialize};

const SOURCES: [(&str, &str); 12] = [
    (
        "sjr_unsatisfiable",
        include_str!("../../../../corpus/sjr_unsatisfiable.json"),
    ),
    (
        "sejr_unsatisfiable",
        include_str!("../../../../corpus/sejr_unsatisfiable.json"),
    ),
    ("droop_gap", include_str!("../../../../corpus/droop_gap.json")),
    ("E1", include_str!("../../../../corpus/E1.json")),
    ("E3", include_str!("../../../../corpus/E3.json")),
    ("E4", include_str!("../../../../corpus/E4.json")),
    ("E5", include_str!("../../../../corpus/E5.json")),
    ("E6", include_str!("../../../../corpus/E6.json")),
    ("E7", include_str!("../../../../corpus/E7.json")),
    ("E8", include_str!("../../../../corpus/E8.json")),
    ("E9", include_str!("../../../../corpus/E9.json")),
    ("E0", include_str!("../../../../corpus/E0.json")),
];

/// Unrestricted outcomes sampled to back up for-all Core expectations.
const CORE_SAMPLE: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// The entry's designated outcome.
    Designated,
    /// Some outcome.
    Exists,
    /// Every outcome.
    All,
}

impl Scope {
    fn name(self) -> &'static str {
        match self {
            Scope::Designated => "designated",
            Scope::Exists => "exists",
            Scope::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub axiom: AxiomId,
    pub scope: Scope,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub notes: String,
    pub election: TemporalElection,
    pub outcome: Option<Outcome>,
    pub expectations: Vec<Expectation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    name: String,
    notes: String,
    election: ElectionDoc,
    outcome: Option<Vec<String>>,
    expectations: Vec<Expectation>,
}

impl CorpusEntry {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: EntryDoc = serde_json::from_str(text).map_err(|e| Error::parse("corpus entry", e.to_string()))?;
        let election = doc.election.into_election()?;
        let outcome = doc
            .outcome
            .map(|names| outcome_from_names(&names, &election))
            .transpose()?;
        if doc.expectations.is_empty() {
            return Err(Error::parse("expectations", "at least one expectation is required"));
        }
        if outcome.is_none() && doc.expectations.iter().any(|x| x.scope == Scope::Designated) {
            return Err(Error::parse("outcome", "designated expectations need an outcome"));
        }
        Ok(Self {
            name: doc.name,
            notes: doc.notes,
            election,
            outcome,
            expectations: doc.expectations,
        })
    }

    /// The canonical document, newline-terminated.
    pub fn to_json(&self) -> String {
        let quoted = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let outcome = match &self.outcome {
            Some(o) => picks_json(o, &self.election),
            None => "null".into(),
        };
        let expectations: Vec<String> = self
            .expectations
            .iter()
            .map(|x| {
                format!(
                    "    {{\"axiom\": {}, \"scope\": {}, \"holds\": {}}}",
                    quoted(x.axiom.name()),
                    quoted(x.scope.name()),
                    x.holds
                )
            })
            .collect();
        format!(
            "{{\n  \"name\": {},\n  \"notes\": {},\n  \"election\": {},\n  \"outcome\": {outcome},\n  \"expectations\": [\n{}\n  ]\n}}\n",
            quoted(&self.name),
            quoted(&self.notes),
            election_json(&self.election, 2),
            expectations.join(",\n"),
        )
    }
}

/// Raw embedded documents, by entry name.
pub fn sources() -> impl Iterator<Item = (&'static str, &'static str)> {
    SOURCES.iter().copied()
}

pub fn entries() -> Vec<CorpusEntry> {
    SOURCES
        .iter()
        .map(|(name, text)| CorpusEntry::parse(text).unwrap_or_else(|e| panic!("corpus entry {name}: {e}")))
        .collect()
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| CorpusEntry::parse(text).expect("embedded entries parse"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationResult {
    pub entry: String,
    pub axiom: AxiomId,
    pub scope: Scope,
    pub expected: bool,
    pub observed: bool,
    /// Outcomes examined (1 for designated checks).
    pub checked: u128,
    /// Outcome names behind the verdict, when there is one.
    pub outcome: Option<Vec<String>>,
}

impl ExpectationResult {
    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub results: Vec<ExpectationResult>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(ExpectationResult::passed)
    }
}

fn names(e: &TemporalElection, o: &Outcome) -> Vec<String> {
    outcome_names(o, e)
}

/// Runs every expectation of `entry`.
pub fn verify_entry(entry: &CorpusEntry, limits: Limits) -> Result<Vec<ExpectationResult>> {
    let e = &entry.election;
    let analysis = Analysis::new(e, limits);
    let mut results = Vec::with_capacity(entry.expectations.len());
    for x in &entry.expectations {
        let (observed, checked, outcome) = match x.scope {
            Scope::Designated => {
                let o = entry.outcome.as_ref().expect("checked when parsing");
                (check_with(&analysis, o, x.axiom)?.holds, 1, Some(names(e, o)))
            }
            Scope::Exists => {
                let space = crate::oracle::OutcomeSpace::new(e, true);
                let found = exists_satisfying(&analysis, x.axiom, true)?;
                let outcome = found.as_ref().map(|o| names(e, o));
                (found.is_some(), space.count(), outcome)
            }
            Scope::All => {
                let report = check_all(&analysis, x.axiom, true)?;
                let mut holds = report.holds();
                let mut outcome = report.failure.as_ref().map(|(o, _)| names(e, o));
                let mut checked = report.checked;
                if holds && x.axiom.family() == crate::axioms::Family::Core {
                    let mut g = Generator::new(GeneratorParams::default());
                    for _ in 0..CORE_SAMPLE {
                        let o = g.outcome(e);
                        checked += 1;
                        if !check_with(&analysis, &o, x.axiom)?.holds {
                            holds = false;
                            outcome = Some(names(e, &o));
                            break;
                        }
                    }
                }
                (holds, checked, outcome)
            }
        };
        results.push(ExpectationResult {
            entry: entry.name.clone(),
            axiom: x.axiom,
            scope: x.scope,
            expected: x.holds,
            observed,
            checked,
            outcome,
        });
    }
    Ok(results)
}

/// Verifies one named entry, or all of them.
pub fn verify_corpus(name: Option<&str>, limits: Limits) -> Result<CorpusReport> {
    let selected: Vec<CorpusEntry> = match name {
        Some(n) => vec![entry(n).ok_or_else(|| Error::parse("entry", format!("no corpus entry named `{n}`")))?],
        None => entries(),
    };
    let mut results = Vec::new();
    for entry in &selected {
        results.extend(verify_entry(entry, limits)?);
    }
    Ok(CorpusReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_round_trip_byte_for_byte() {
        for (name, text) in sources() {
            let entry = CorpusEntry::parse(text).unwrap();
            assert_eq!(entry.name, name);
            assert_eq!(entry.to_json(), text, "{name}");
        }
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(entry("e7").unwrap().election.n(), 3);
        assert!(entry("E2").is_none());
    }

    #[test]
    fn small_entry_verifies() {
        let report = verify_corpus(Some("E7"), Limits::default()).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
