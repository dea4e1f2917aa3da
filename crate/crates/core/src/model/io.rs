//! JSON documents for elections and outcomes.
//!
//! Elections are written in a canonical layout (one voter per line) so that
//! fixture files re-serialize byte for byte.

use super::{Outcome, TemporalElection};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectionDoc {
    pub candidates: Vec<String>,
    pub voters: usize,
    pub rounds: usize,
    pub approvals: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDoc {
    pub picks: Vec<String>,
}

impl ElectionDoc {
    pub fn from_election(e: &TemporalElection) -> Self {
        let approvals = (0..e.n())
            .map(|i| {
                (0..e.ell())
                    .map(|r| e.ballot(i, r).iter().map(|c| e.candidates()[c].clone()).collect())
                    .collect()
            })
            .collect();
        Self {
            candidates: e.candidates().to_vec(),
            voters: e.n(),
            rounds: e.ell(),
            approvals,
        }
    }

    pub fn into_election(self) -> Result<TemporalElection> {
        if self.candidates.is_empty() {
            return Err(Error::parse("candidates", "at least one candidate is required"));
        }
        if self.voters == 0 {
            return Err(Error::parse("voters", "must be at least 1"));
        }
        if self.rounds == 0 {
            return Err(Error::parse("rounds", "must be at least 1"));
        }
        if self.approvals.len() != self.voters {
            return Err(Error::parse(
                "approvals",
                format!("{} voter rows for {} voters", self.approvals.len(), self.voters),
            ));
        }
        let mut indices = Vec::with_capacity(self.voters);
        for (i, row) in self.approvals.iter().enumerate() {
            if row.len() != self.rounds {
                return Err(Error::parse(
                    format!("approvals[{}]", i + 1),
                    format!("{} rounds listed, expected {}", row.len(), self.rounds),
                ));
            }
            let mut cells = Vec::with_capacity(self.rounds);
            for (r, cell) in row.iter().enumerate() {
                let mut ids = Vec::with_capacity(cell.len());
                for name in cell {
                    let c = self.candidates.iter().position(|x| x == name).ok_or_else(|| {
                        Error::parse(
                            format!("approvals[{}][{}]", i + 1, r + 1),
                            format!("unknown candidate `{name}`"),
                        )
                    })?;
                    ids.push(c);
                }
                cells.push(ids);
            }
            indices.push(cells);
        }
        TemporalElection::new(self.candidates, indices).map_err(|err| match err {
            Error::Structural(message) => Error::parse("candidates", message),
            other => other,
        })
    }
}

pub fn load_election(bytes: &[u8]) -> Result<TemporalElection> {
    let doc: ElectionDoc = serde_json::from_slice(bytes).map_err(|e| Error::parse("election", e.to_string()))?;
    doc.into_election()
}

/// Canonical election document, newline-terminated.
pub fn save_election(e: &TemporalElection) -> Vec<u8> {
    let mut out = election_json(e, 0);
    out.push('\n');
    out.into_bytes()
}

pub fn load_outcome(bytes: &[u8], e: &TemporalElection) -> Result<Outcome> {
    let doc: OutcomeDoc = serde_json::from_slice(bytes).map_err(|err| Error::parse("outcome", err.to_string()))?;
    outcome_from_names(&doc.picks, e)
}

pub fn save_outcome(o: &Outcome, e: &TemporalElection) -> Vec<u8> {
    let mut out = outcome_json(o, e);
    out.push('\n');
    out.into_bytes()
}

/// Parses an inline `a,b,c` pick list.
pub fn parse_picks(text: &str, e: &TemporalElection) -> Result<Outcome> {
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    outcome_from_names(&names, e)
}

pub fn outcome_from_names(names: &[String], e: &TemporalElection) -> Result<Outcome> {
    if names.len() != e.ell() {
        return Err(Error::parse(
            "picks",
            format!("{} picks for {} rounds", names.len(), e.ell()),
        ));
    }
    let picks = names
        .iter()
        .enumerate()
        .map(|(r, name)| {
            e.candidate_index(name)
                .ok_or_else(|| Error::parse(format!("picks[{}]", r + 1), format!("unknown candidate `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::new(picks))
}

pub fn outcome_names(o: &Outcome, e: &TemporalElection) -> Vec<String> {
    o.picks().iter().map(|&c| e.candidates()[c].clone()).collect()
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn name_list<'a>(names: impl Iterator<Item = &'a str>) -> String {
    let items: Vec<String> = names.map(quoted).collect();
    format!("[{}]", items.join(", "))
}

/// The picks as a one-line JSON list of names.
pub fn picks_json(o: &Outcome, e: &TemporalElection) -> String {
    let names = outcome_names(o, e);
    name_list(names.iter().map(String::as_str))
}

/// Compact single-line `{"picks": [...]}`.
pub fn outcome_json(o: &Outcome, e: &TemporalElection) -> String {
    format!("{{\"picks\": {}}}", picks_json(o, e))
}

/// Canonical election object whose closing brace sits at `indent` spaces.
pub fn election_json(e: &TemporalElection, indent: usize) -> String {
    let pad = " ".repeat(indent + 2);
    let names = e.candidates();
    let mut rows = Vec::with_capacity(e.n());
    for i in 0..e.n() {
        let cells: Vec<String> = (0..e.ell())
            .map(|r| name_list(e.ballot(i, r).iter().map(|c| names[c].as_str())))
            .collect();
        rows.push(format!("{pad}  [{}]", cells.join(", ")));
    }
    format!(
        "{{\n{pad}\"candidates\": {},\n{pad}\"voters\": {},\n{pad}\"rounds\": {},\n{pad}\"approvals\": [\n{}\n{pad}]\n{}}}",
        name_list(names.iter().map(String::as_str)),
        e.n(),
        e.ell(),
        rows.join(",\n"),
        " ".repeat(indent),
    )
}
