//! Generators for the worked examples and seeded drivers that check the
//! stability theorems on finite instances.

pub mod generators;
pub mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::extended_real;

pub use generators::{gen_example, ExampleParams, ExampleSpec, Generated, TreeSpec, WitnessExample};
pub use verify::*;

/// Outcome of one check: the two sides of an inequality (or equality),
/// whether it held, and enough input to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    #[serde(with = "extended_real")]
    pub lhs: f64,
    #[serde(with = "extended_real")]
    pub rhs: f64,
    pub passed: bool,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub details: serde_json::Value,
}

impl VerificationReport {
    pub(crate) fn new(name: &str, lhs: f64, rhs: f64, passed: bool, details: serde_json::Value) -> Self {
        Self { name: name.to_string(), lhs, rhs, passed, seed: None, trial: None, details }
    }

    pub(crate) fn with_seed(mut self, seed: u64, trial: u64) -> Self {
        self.seed = Some(seed);
        self.trial = Some(trial);
        self
    }
}

/// RNG for trial `trial` of a batch seeded with `seed`; each trial draws
/// from its own stream so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
