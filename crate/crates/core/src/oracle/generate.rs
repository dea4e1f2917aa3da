//! Seeded random elections and outcomes.
//!
//! The stream comes from ChaCha8, so a seed reproduces the same elections on
//! every platform.

use crate::model::{ElectionClass, Outcome, TemporalElection};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub max_voters: usize,
    pub max_rounds: usize,
    pub max_candidates: usize,
    /// Probability that a voter approves a given candidate in a given round.
    pub density: f64,
    /// Class every generated election must belong to; `None` for any.
    pub class: Option<ElectionClass>,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            max_voters: 5,
            max_rounds: 4,
            max_candidates: 3,
            density: 0.5,
            class: None,
            seed: 0,
        }
    }
}

pub struct Generator {
    params: GeneratorParams,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(params: GeneratorParams) -> Self {
        assert!((0.0..=1.0).contains(&params.density), "density must lie in [0, 1]");
        assert!(params.max_voters >= 1 && params.max_rounds >= 1 && params.max_candidates >= 1);
        Self {
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            params,
        }
    }

    pub fn params(&self) -> &GeneratorParams {
        &self.params
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// An election with sizes drawn uniformly up to the bounds.
    pub fn election(&mut self) -> TemporalElection {
        let n = self.rng.random_range(1..=self.params.max_voters);
        let ell = self.rng.random_range(1..=self.params.max_rounds);
        let m = self.rng.random_range(1..=self.params.max_candidates);
        self.election_of(n, ell, m)
    }

    pub fn election_of(&mut self, n: usize, ell: usize, m: usize) -> TemporalElection {
        let density = self.params.density;
        let class = self.params.class.unwrap_or(ElectionClass::General);
        let approvals = (0..n)
            .map(|_| {
                (0..ell)
                    .map(|_| {
                        let forced = match class {
                            ElectionClass::General => None,
                            _ => Some(self.rng.random_range(0..m)),
                        };
                        if class == ElectionClass::ExactlyOne {
                            return forced.into_iter().collect();
                        }
                        (0..m)
                            .filter(|&c| forced == Some(c) || self.rng.random_bool(density))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let names = (0..m).map(candidate_name).collect();
        TemporalElection::new(names, approvals).expect("generated elections are well formed")
    }

    /// Uniform over all candidates in every round.
    pub fn outcome(&mut self, e: &TemporalElection) -> Outcome {
        Outcome::new((0..e.ell()).map(|_| self.rng.random_range(0..e.m())).collect())
    }

    /// Uniform over the candidates approved in each round (candidate 0 if none).
    pub fn approved_outcome(&mut self, e: &TemporalElection) -> Outcome {
        let picks = (0..e.ell())
            .map(|r| {
                let approved: Vec<usize> = e.approved_candidates(r).iter().collect();
                approved.choose(&mut self.rng).copied().unwrap_or(0)
            })
            .collect();
        Outcome::new(picks)
    }
}

/// `a`, `b`, ..., `z`, then `c26`, `c27`, ...
fn candidate_name(c: usize) -> String {
    if c < 26 {
        ((b'a' + c as u8) as char).to_string()
    } else {
        format!("c{c}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_elections() {
        let p = GeneratorParams {
            seed: 7,
            ..GeneratorParams::default()
        };
        let (mut a, mut b) = (Generator::new(p), Generator::new(p));
        for _ in 0..20 {
            assert_eq!(a.election(), b.election());
        }
    }

    #[test]
    fn class_constraints_hold() {
        for class in [ElectionClass::ExactlyOne, ElectionClass::AtLeastOne] {
            let mut g = Generator::new(GeneratorParams {
                class: Some(class),
                density: 0.3,
                ..GeneratorParams::default()
            });
            for _ in 0..50 {
                assert!(g.election().election_class().is_within(class));
            }
        }
        let mut g = Generator::new(GeneratorParams {
            class: Some(ElectionClass::ExactlyOne),
            ..GeneratorParams::default()
        });
        assert_eq!(g.election_of(3, 3, 3).election_class(), ElectionClass::ExactlyOne);
    }

    #[test]
    fn full_density_approves_everything() {
        let mut g = Generator::new(GeneratorParams {
            density: 1.0,
            ..GeneratorParams::default()
        });
        let e = g.election_of(3, 2, 4);
        for i in 0..3 {
            for r in 0..2 {
                assert_eq!(e.ballot(i, r).len(), 4);
            }
        }
    }
}
