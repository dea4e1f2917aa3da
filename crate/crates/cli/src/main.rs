//! `tjr`: check proportionality axioms, run rules and probe implications on
//! temporal approval elections.

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use temporal_jr::axioms::{check_with, Analysis};
use temporal_jr::corpus::{self, CorpusReport};
use temporal_jr::model::io::{load_election, load_outcome, parse_picks};
use temporal_jr::oracle::{check_all, exists_satisfying, probe_implication, probe_lattice, GeneratorParams};
use temporal_jr::report;
use temporal_jr::rules::{gcr_with, lspav, sdr, LsPavConfig, RuleName};
use temporal_jr::{AxiomId, ElectionClass, Error, Limits, Outcome, Rational, TemporalElection};

#[derive(Parser)]
#[command(
    name = "tjr",
    version,
    about = "Proportionality checks for temporal approval elections"
)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Work budget for exhaustive computations.
    #[arg(long, global = true)]
    max_work: Option<u128>,
    /// Plain-text output instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one axiom on one outcome.
    Check {
        #[command(flatten)]
        election: ElectionArg,
        #[command(flatten)]
        outcome: OutcomeArg,
        #[arg(long)]
        axiom: AxiomId,
        /// Include the violation witness, if any.
        #[arg(long)]
        witness: bool,
        /// Re-validate a reported witness against the definition instead.
        #[arg(long, value_name = "PATH", conflicts_with = "witness")]
        replay: Option<PathBuf>,
    },
    /// Run a voting rule.
    Solve {
        #[command(flatten)]
        election: ElectionArg,
        #[arg(long)]
        rule: RuleName,
        /// lsPAV swap threshold as NUM/DEN (default 1/(2 ell^2)).
        #[arg(long, value_parser = parse_ratio)]
        epsilon: Option<Rational>,
        /// Include the rule's trace.
        #[arg(long)]
        trace: bool,
    },
    /// Search the outcome space for an outcome satisfying an axiom.
    Enumerate {
        #[command(flatten)]
        election: ElectionArg,
        #[arg(long)]
        axiom: AxiomId,
        /// Check that every outcome satisfies the axiom instead.
        #[arg(long)]
        all: bool,
        /// Let every round range over all candidates, approved or not.
        #[arg(long)]
        unrestricted: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Work with the built-in fixture corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Search random elections for a counterexample to `A => B`, or to every
    /// solid lattice arrow when `--implies` is omitted.
    Probe {
        #[arg(long)]
        axiom: Option<AxiomId>,
        #[arg(long, requires = "axiom")]
        implies: Option<AxiomId>,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[command(flatten)]
        generator: GeneratorArgs,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Verify the expectations of one entry, or of all of them.
    Verify { entry: Option<String> },
    /// List entry names.
    List,
    /// Print an entry's document.
    Show { entry: String },
}

#[derive(Args)]
struct ElectionArg {
    /// Election JSON document, or a corpus entry.
    #[arg(long = "election", value_name = "PATH")]
    path: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OutcomeArg {
    /// Outcome JSON document, or a corpus entry with a designated outcome.
    #[arg(long, value_name = "PATH")]
    outcome: Option<PathBuf>,
    /// Inline candidate names, one per round.
    #[arg(long, value_name = "a,b,c")]
    picks: Option<String>,
}

#[derive(Args)]
struct GeneratorArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    max_voters: usize,
    #[arg(long, default_value_t = 4)]
    max_rounds: usize,
    #[arg(long, default_value_t = 3)]
    max_candidates: usize,
    /// Approval probability per voter, round and candidate.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Ballot constraint: general, at-least-one or exactly-one.
    #[arg(long, value_parser = parse_class)]
    class: Option<ElectionClass>,
}

fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i128 = num.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: i128 = den.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if den == 0 {
        return Err("denominator must be non-zero".into());
    }
    Ok(Ratio::new(num, den))
}

fn parse_class(s: &str) -> Result<ElectionClass, String> {
    match s.to_ascii_lowercase().as_str() {
        "general" => Ok(ElectionClass::General),
        "at-least-one" => Ok(ElectionClass::AtLeastOne),
        "exactly-one" => Ok(ElectionClass::ExactlyOne),
        _ => Err(format!(
            "unknown class `{s}` (expected general, at-least-one or exactly-one)"
        )),
    }
}

/// A finished command: what to print and how to exit.
struct Done {
    value: Value,
    text: String,
    success: bool,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } | Error::IterationLimit(_) => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// The bytes themselves, or the `key` member when they hold a corpus entry.
fn unwrap_entry(bytes: Vec<u8>, key: &str) -> Vec<u8> {
    match serde_json::from_slice::<Value>(&bytes) {
        Ok(Value::Object(doc)) if doc.contains_key("expectations") => {
            let inner = doc.get(key).cloned().unwrap_or(Value::Null);
            let inner = match (key, inner) {
                ("outcome", Value::Array(picks)) => json!({ "picks": picks }),
                (_, v) => v,
            };
            serde_json::to_vec(&inner).expect("values serialize")
        }
        _ => bytes,
    }
}

fn election(arg: &ElectionArg) -> Result<TemporalElection, Failure> {
    Ok(load_election(&unwrap_entry(read(&arg.path)?, "election"))?)
}

fn outcome(arg: &OutcomeArg, e: &TemporalElection) -> Result<Outcome, Failure> {
    let o = match (&arg.outcome, &arg.picks) {
        (Some(path), _) => load_outcome(&unwrap_entry(read(path)?, "outcome"), e)?,
        (None, Some(picks)) => parse_picks(picks, e)?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    e.validate_outcome(&o)?;
    Ok(o)
}

fn names(e: &TemporalElection, o: &Outcome) -> String {
    temporal_jr::model::io::outcome_names(o, e).join(",")
}

fn witness_text(v: &Value) -> String {
    match v.get("witness") {
        Some(w) if !w.is_null() => format!("\nwitness: {w}"),
        _ => String::new(),
    }
}

fn run(cli: &Cli) -> Result<Done, Failure> {
    let mut limits = Limits::default();
    if let Some(w) = cli.max_work {
        limits.max_work = w;
    }
    match &cli.command {
        Command::Check {
            election: ea,
            outcome: oa,
            axiom,
            witness,
            replay,
        } => {
            let e = election(ea)?;
            let o = outcome(oa, &e)?;
            if let Some(path) = replay {
                let doc: Value = serde_json::from_slice(&read(path)?)
                    .map_err(|err| Failure::Usage(format!("{}: {err}", path.display())))?;
                let w = report::witness_from_value(&e, &doc)?;
                let verdict = temporal_jr::axioms::replay::replay(&e, &o, *axiom, &w);
                let text = match &verdict {
                    Ok(()) => format!("witness confirms that ({}) violates {axiom}", names(&e, &o)),
                    Err(why) => format!("witness rejected: {why}"),
                };
                return Ok(Done {
                    value: json!({"axiom": axiom, "replayed": verdict.is_ok(), "reason": verdict.as_ref().err()}),
                    text,
                    success: verdict.is_ok(),
                });
            }
            let analysis = Analysis::new(&e, limits);
            let r = check_with(&analysis, &o, *axiom)?;
            let value = report::check_value(&e, &r, *witness);
            let verdict = if r.holds { "holds" } else { "violated" };
            Ok(Done {
                text: format!("{axiom} {verdict} on ({}){}", names(&e, &o), witness_text(&value)),
                value,
                success: r.holds,
            })
        }
        Command::Solve {
            election: ea,
            rule,
            epsilon,
            trace,
        } => {
            let e = election(ea)?;
            if epsilon.is_some() && *rule != RuleName::Lspav {
                return Err(Failure::Usage("--epsilon applies only to lspav".into()));
            }
            let (o, trace_value) = match rule {
                RuleName::Lspav => {
                    let config = match epsilon {
                        Some(eps) => LsPavConfig::new(*eps),
                        None => LsPavConfig::guaranteed(&e),
                    };
                    let (o, t) = lspav(&e, &config)?;
                    (o, report::lspav_trace_value(&e, &t))
                }
                RuleName::Gcr => {
                    let (o, t) = gcr_with(&Analysis::new(&e, limits))?;
                    (o, report::gcr_trace_value(&e, &t))
                }
                RuleName::Sdr => {
                    let (o, t) = sdr(&e)?;
                    (o, report::sdr_trace_value(&t))
                }
            };
            let mut value = json!({"rule": rule, "picks": report::outcome_value(&e, &o)});
            if *trace {
                value["trace"] = trace_value;
            }
            let mut text = format!("{rule}: ({})", names(&e, &o));
            if *trace {
                text.push_str(&format!("\ntrace: {}", value["trace"]));
            }
            Ok(Done {
                value,
                text,
                success: true,
            })
        }
        Command::Enumerate {
            election: ea,
            axiom,
            all,
            unrestricted,
            witness,
        } => {
            let e = election(ea)?;
            let analysis = Analysis::new(&e, limits);
            if *all {
                let r = check_all(&analysis, *axiom, !unrestricted)?;
                let value = report::for_all_value(&e, &r, *witness);
                let text = match &r.failure {
                    None => format!("{axiom} holds on all {} outcomes", r.checked),
                    Some((o, _)) => format!(
                        "{axiom} fails on ({}){}",
                        names(&e, o),
                        witness_text(&value["failure"]["report"])
                    ),
                };
                return Ok(Done {
                    value,
                    text,
                    success: r.holds(),
                });
            }
            let found = exists_satisfying(&analysis, *axiom, !unrestricted)?;
            let value = json!({
                "axiom": axiom,
                "found": found.as_ref().map(|o| report::outcome_value(&e, o)),
            });
            let text = match &found {
                Some(o) => format!("{axiom} holds on ({})", names(&e, o)),
                None => format!("no outcome provides {axiom}"),
            };
            Ok(Done {
                value,
                text,
                success: found.is_some(),
            })
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let list: Vec<&str> = corpus::sources().map(|(n, _)| n).collect();
                Ok(Done {
                    text: list.join("\n"),
                    value: json!(list),
                    success: true,
                })
            }
            CorpusAction::Show { entry } => {
                let (_, text) = corpus::sources()
                    .find(|(n, _)| n.eq_ignore_ascii_case(entry))
                    .ok_or_else(|| Failure::Usage(format!("no corpus entry named `{entry}`")))?;
                let value: Value = serde_json::from_str(text).expect("embedded entries are JSON");
                Ok(Done {
                    value,
                    text: text.trim_end().to_string(),
                    success: true,
                })
            }
            CorpusAction::Verify { entry } => {
                let r = corpus::verify_corpus(entry.as_deref(), limits)?;
                Ok(Done {
                    text: corpus_text(&r),
                    value: serde_json::to_value(&r).expect("reports serialize"),
                    success: r.passed(),
                })
            }
        },
        Command::Probe {
            axiom,
            implies,
            trials,
            generator: g,
        } => {
            if !(0.0..=1.0).contains(&g.density) {
                return Err(Failure::Usage("density must lie in [0, 1]".into()));
            }
            if g.max_voters == 0 || g.max_rounds == 0 || g.max_candidates == 0 {
                return Err(Failure::Usage("size bounds must be at least 1".into()));
            }
            let params = GeneratorParams {
                max_voters: g.max_voters,
                max_rounds: g.max_rounds,
                max_candidates: g.max_candidates,
                density: g.density,
                class: g.class,
                seed: g.seed,
            };
            match (axiom, implies) {
                (Some(a), Some(b)) => {
                    let r = probe_implication(*a, *b, params, *trials, &[])?;
                    let text = match &r.counterexample {
                        None => format!(
                            "{a} => {b}: no counterexample in {} trials ({} tested)",
                            r.trials, r.antecedent_held
                        ),
                        Some(ce) => format!("{a} => {b}: counterexample ({})", names(&ce.election, &ce.outcome)),
                    };
                    Ok(Done {
                        value: report::probe_value(&r),
                        text,
                        success: r.counterexample.is_none(),
                    })
                }
                (None, None) => {
                    let r = probe_lattice(params, *trials)?;
                    let mut lines: Vec<String> = r
                        .arrows
                        .iter()
                        .map(|t| {
                            format!(
                                "{} => {}: {} tested, {} violations",
                                t.arrow.0, t.arrow.1, t.antecedent_held, t.violations
                            )
                        })
                        .collect();
                    lines.push(format!("{} trials, seed {}", r.trials, r.seed));
                    Ok(Done {
                        value: report::lattice_value(&r),
                        text: lines.join("\n"),
                        success: r.counterexample.is_none(),
                    })
                }
                _ => Err(Failure::Usage(
                    "--axiom needs --implies; omit both to probe the whole lattice".into(),
                )),
            }
        }
    }
}

fn corpus_text(r: &CorpusReport) -> String {
    let mut lines: Vec<String> = r
        .results
        .iter()
        .map(|x| {
            let mark = if x.passed() { "ok  " } else { "FAIL" };
            let verdict = if x.observed { "holds" } else { "fails" };
            format!(
                "{mark} {:<11} {:<10} {:<10} {verdict}",
                x.entry,
                x.axiom.name(),
                format!("{:?}", x.scope).to_lowercase()
            )
        })
        .collect();
    let failed = r.results.iter().filter(|x| !x.passed()).count();
    lines.push(format!("{} expectations, {failed} failed", r.results.len()));
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(done) => {
            if cli.human {
                println!("{}", done.text);
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&done.value).expect("values serialize")
                );
            }
            ExitCode::from(if done.success { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
