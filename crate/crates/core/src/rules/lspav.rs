//! Local-search PAV.
//!
//! Steepest ascent on the harmonic score: each step applies the single-round
//! swap with the largest gain, provided the gain exceeds `epsilon`. Ties go
//! to the lowest round, then the lowest candidate. The result is a local
//! optimum in the sense that no single-round swap gains more than `epsilon`.

use crate::axioms::precondition;
use crate::error::{Error, Result};
use crate::model::{Outcome, TemporalElection};
use crate::scalar::{harmonic, Scalar};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct LsPavConfig<S> {
    pub epsilon: S,
    /// Start point; defaults to the most approved candidate of each round.
    pub initial: Option<Outcome>,
    /// Safety cap on accepted swaps; defaults to [`swap_bound`].
    pub max_iterations: Option<u64>,
    /// Refuse `epsilon >= 1/ell^2`, where the EJR+ guarantee no longer applies.
    pub require_guarantee: bool,
}

impl<S: Scalar> LsPavConfig<S> {
    pub fn new(epsilon: S) -> Self {
        Self {
            epsilon,
            initial: None,
            max_iterations: None,
            require_guarantee: false,
        }
    }
}

impl LsPavConfig<Rational> {
    /// `epsilon = 1/(2 ell^2)` with the guarantee check on.
    pub fn guaranteed(e: &TemporalElection) -> Self {
        Self {
            require_guarantee: true,
            ..Self::new(default_epsilon(e))
        }
    }
}

/// `1 / (2 ell^2)`.
pub fn default_epsilon(e: &TemporalElection) -> Rational {
    Rational::new(1, 2 * (e.ell() as i128).pow(2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Swap<S> {
    pub round: usize,
    pub from: usize,
    pub to: usize,
    pub gain: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LsPavTrace<S> {
    pub initial: Outcome,
    pub steps: Vec<Swap<S>>,
}

impl<S: Scalar> LsPavTrace<S> {
    /// Re-applies the swaps to the initial outcome.
    pub fn replay(&self) -> Outcome {
        let mut o = self.initial.clone();
        for s in &self.steps {
            o.set(s.round, s.to);
        }
        o
    }
}

/// `sum_i H(sat_i(o))`.
pub fn harmonic_score<S: Scalar>(e: &TemporalElection, o: &Outcome) -> S {
    (0..e.n()).fold(S::zero(), |acc, i| {
        acc + harmonic::<S>(e.voter_coverage(i, o).len() as u64)
    })
}

/// Most approved candidate per round, lowest index on ties.
pub fn default_initial(e: &TemporalElection) -> Outcome {
    let picks = (0..e.ell())
        .map(|r| {
            let mut best = (0, 0);
            for c in 0..e.m() {
                let k = e.approvers(r, c).len();
                if k > best.1 {
                    best = (c, k);
                }
            }
            best.0
        })
        .collect();
    Outcome::new(picks)
}

/// Score change from setting round `round` to `to`, given current satisfactions.
pub fn swap_gain<S: Scalar>(e: &TemporalElection, o: &Outcome, sat: &[u64], round: usize, to: usize) -> S {
    let from = o.pick(round);
    if from == to {
        return S::zero();
    }
    let winners = e.approvers(round, to).difference(e.approvers(round, from));
    let losers = e.approvers(round, from).difference(e.approvers(round, to));
    let up = winners.iter().fold(S::zero(), |acc, i| acc + S::reciprocal(sat[i] + 1));
    losers.iter().fold(up, |acc, i| acc - S::reciprocal(sat[i]))
}

fn satisfactions(e: &TemporalElection, o: &Outcome) -> Vec<u64> {
    (0..e.n()).map(|i| e.voter_coverage(i, o).len() as u64).collect()
}

/// `ceil(n (1 + ln ell) / epsilon)`: no run accepts more swaps than this.
pub fn swap_bound<S: Scalar>(e: &TemporalElection, epsilon: &S) -> u64 {
    let total = e.n() as f64 * (1.0 + (e.ell() as f64).ln());
    (total / epsilon.as_f64()).ceil() as u64
}

/// No single-round swap gains more than `epsilon`.
pub fn is_local_optimum<S: Scalar>(e: &TemporalElection, o: &Outcome, epsilon: &S) -> bool {
    let base: S = harmonic_score(e, o);
    let mut other = o.clone();
    for r in 0..e.ell() {
        for c in 0..e.m() {
            other.set(r, c);
            let score: S = harmonic_score(e, &other);
            if base.clone() + epsilon.clone() < score {
                return false;
            }
        }
        other.set(r, o.pick(r));
    }
    true
}

pub fn lspav<S: Scalar>(e: &TemporalElection, config: &LsPavConfig<S>) -> Result<(Outcome, LsPavTrace<S>)> {
    let eps = &config.epsilon;
    if *eps <= S::zero() {
        return Err(precondition("epsilon must be positive"));
    }
    if config.require_guarantee {
        let limit = S::reciprocal((e.ell() * e.ell()) as u64);
        if *eps >= limit {
            return Err(precondition(format!(
                "epsilon must be below 1/{} for the EJR+ guarantee",
                e.ell() * e.ell()
            )));
        }
    }
    let initial = match &config.initial {
        Some(o) => {
            e.validate_outcome(o)?;
            o.clone()
        }
        None => default_initial(e),
    };
    let cap = config.max_iterations.unwrap_or_else(|| swap_bound(e, eps));
    let mut o = initial.clone();
    let mut sat = satisfactions(e, &o);
    let mut steps = Vec::new();
    loop {
        let mut best: Option<(usize, usize, S)> = None;
        for r in 0..e.ell() {
            for c in 0..e.m() {
                if c == o.pick(r) {
                    continue;
                }
                let gain: S = swap_gain(e, &o, &sat, r, c);
                if best.as_ref().is_none_or(|(_, _, g)| gain > *g) {
                    best = Some((r, c, gain));
                }
            }
        }
        match best {
            Some((r, c, gain)) if gain > *eps => {
                if steps.len() as u64 >= cap {
                    return Err(Error::IterationLimit(cap));
                }
                steps.push(Swap {
                    round: r,
                    from: o.pick(r),
                    to: c,
                    gain,
                });
                o.set(r, c);
                sat = satisfactions(e, &o);
            }
            _ => break,
        }
    }
    Ok((o, LsPavTrace { initial, steps }))
}
