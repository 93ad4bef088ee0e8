//! Abstract orbit models: alternating flight times and crossing parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerKind {
    SyntheticUniform,
    SyntheticConfigured,
    Traced,
}

/// Synthetic sampler: flights uniform in `[t_min, t_min + t_spread]`, crossings
/// uniform in `w_fraction·(−ε, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub t_min: f64,
    pub t_spread: f64,
    pub w_fraction: f64,
    pub length: usize,
}

impl SamplerSpec {
    pub fn uniform(t_min: f64, length: usize) -> Self {
        SamplerSpec { t_min, t_spread: 5.0, w_fraction: 1.0, length }
    }

    pub fn kind(&self) -> SamplerKind {
        if *self == Self::uniform(self.t_min, self.length) {
            SamplerKind::SyntheticUniform
        } else {
            SamplerKind::SyntheticConfigured
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0) || !self.t_min.is_finite() {
            return Err(invalid("t_min", "must be positive"));
        }
        if !(self.t_spread >= 0.0) || !self.t_spread.is_finite() {
            return Err(invalid("t_spread", "must be nonnegative"));
        }
        if !(self.w_fraction > 0.0 && self.w_fraction <= 1.0) {
            return Err(invalid("w_fraction", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnSequence {
    /// `(flight time, crossing w)`, flight first.
    pub steps: Vec<(f64, f64)>,
    pub t_min: f64,
    pub seed: u64,
    pub generator: SamplerKind,
}

impl ReturnSequence {
    /// Sequence `index` of the ensemble with master `seed`; one ChaCha stream per index.
    pub fn sample(spec: &SamplerSpec, epsilon: f64, seed: u64, index: u64) -> Result<Self> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let half = spec.w_fraction * epsilon;
        let steps = (0..spec.length)
            .map(|_| {
                let t = spec.t_min + spec.t_spread * rng.gen::<f64>();
                let w = if half > 0.0 { rng.gen_range(-half..half) } else { 0.0 };
                (t, w)
            })
            .collect();
        Ok(ReturnSequence { steps, t_min: spec.t_min, seed, generator: spec.kind() })
    }

    /// Sequence recorded from a traced orbit; `t_min` is the shortest flight.
    pub fn traced(steps: Vec<(f64, f64)>) -> Result<Self> {
        let t_min = steps.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
        if steps.is_empty() || !(t_min > 0.0) {
            return Err(invalid("steps", "traced sequence needs positive flight times"));
        }
        Ok(ReturnSequence { steps, t_min, seed: 0, generator: SamplerKind::Traced })
    }

    /// Flights only, no shear (every crossing outside the twist region).
    pub fn without_crossings(flights: &[f64], epsilon: f64) -> Self {
        let steps = flights.iter().map(|&t| (t, 2.0 * epsilon)).collect();
        let t_min = flights.iter().copied().fold(f64::INFINITY, f64::min);
        ReturnSequence { steps, t_min, seed: 0, generator: SamplerKind::SyntheticConfigured }
    }

    pub fn total_time(&self) -> f64 {
        self.steps.iter().map(|s| s.0).sum()
    }
}
