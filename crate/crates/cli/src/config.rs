//! Run configuration: one JSON document, every field defaulted.

use std::path::{Path, PathBuf};

use anosov_lab::cocycle::SamplerSpec;
use anosov_lab::entropy::BoundSequenceParams;
use anosov_lab::surgery::{SurgeryConfig, SurgeryParams};
use anosov_lab::LabError;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Systole of the regular-octagon surface, the shortest flight between crossings.
pub const DEFAULT_T_MIN: f64 = 3.0571418389619955;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceSection,
    pub surgery: SurgeryParams,
    pub census: CensusSection,
    pub cones: ConesSection,
    pub entropy: EntropySection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurfaceSection {
    pub genus: u32,
}

impl Default for SurfaceSection {
    fn default() -> Self {
        SurfaceSection { genus: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CensusSection {
    /// Longest closed geodesic enumerated.
    pub max_length: f64,
    /// Lower end of the `log N_T` regression window; the upper end is `max_length`.
    pub fit_from: f64,
    /// Longest class whose orbit type relative to `c = axis(g₀)` is computed.
    pub orbit_type_length: f64,
    pub max_letters: usize,
    pub farey_t: f64,
    pub critical_points: u64,
}

impl Default for CensusSection {
    fn default() -> Self {
        CensusSection {
            max_length: 12.0,
            fit_from: 8.0,
            orbit_type_length: 7.0,
            max_letters: 13,
            farey_t: 1e4,
            critical_points: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConesSection {
    pub n_sequences: usize,
    pub seq_length: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub seed: u64,
    pub sweep_qs: Vec<i64>,
    pub sweep_epsilons: Vec<f64>,
}

impl Default for ConesSection {
    fn default() -> Self {
        ConesSection {
            n_sequences: 100_000,
            seq_length: 50,
            t_min: DEFAULT_T_MIN,
            t_max: DEFAULT_T_MIN + 5.0,
            seed: 0,
            sweep_qs: (-3..=3).collect(),
            sweep_epsilons: vec![0.05, 1.0, 10.0],
        }
    }
}

impl ConesSection {
    pub fn sampler(&self) -> SamplerSpec {
        SamplerSpec { t_spread: self.t_max - self.t_min, ..SamplerSpec::uniform(self.t_min, self.seq_length) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EntropySection {
    pub bounds: BoundSequenceParams,
    /// Seed period of the bound sequence.
    pub t1: f64,
    pub t_max: f64,
}

impl Default for EntropySection {
    fn default() -> Self {
        EntropySection {
            bounds: BoundSequenceParams { a1: 1.0, c1: 0.0, a2: 2.0, c2: 0.0, big_e: 2.0, small_e: 1.0 },
            t1: DEFAULT_T_MIN,
            t_max: 1e100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: PathBuf::from("out"), format: Format::Json }
    }
}

fn field(path: &str, reason: impl Into<String>) -> CliError {
    CliError::Config { path: path.to_string(), reason: reason.into() }
}

/// Prefixes a core parameter error with its section.
fn in_section(section: &str, err: LabError) -> CliError {
    match err {
        LabError::InvalidParameter { field: f, reason } => field(&format!("{section}.{f}"), reason),
        other => field(section, other.to_string()),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| field("config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| field("config", e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.surface.genus != 2 {
            return Err(field("surface.genus", "only genus 2 is supported"));
        }
        SurgeryConfig::new(self.surgery).map_err(|e| in_section("surgery", e))?;
        let c = &self.census;
        if !(c.max_length > 0.0 && c.max_length <= anosov_lab::census::MAX_CENSUS_LENGTH) {
            return Err(field("census.max_length", "must lie in (0, 14]"));
        }
        if !(c.fit_from > 0.0 && c.fit_from < c.max_length) {
            return Err(field("census.fit_from", "must lie in (0, max_length)"));
        }
        if !(c.orbit_type_length >= 0.0 && c.orbit_type_length <= c.max_length) {
            return Err(field("census.orbit_type_length", "must lie in [0, max_length]"));
        }
        if c.max_letters == 0 || c.max_letters > anosov_lab::census::MAX_LETTERS {
            return Err(field("census.max_letters", "must lie in [1, 16]"));
        }
        if !(c.farey_t >= 100.0 && c.farey_t <= 1e6) {
            return Err(field("census.farey_t", "must lie in [1e2, 1e6]"));
        }
        let k = &self.cones;
        if k.n_sequences == 0 || k.seq_length == 0 {
            return Err(field("cones.n_sequences", "ensemble and sequences must be nonempty"));
        }
        if !(k.t_max >= k.t_min) {
            return Err(field("cones.t_max", "must be at least t_min"));
        }
        k.sampler().validate().map_err(|e| in_section("cones", e))?;
        if k.sweep_qs.is_empty() || k.sweep_epsilons.iter().any(|e| !(*e > 0.0)) {
            return Err(field("cones.sweep_epsilons", "need q values and positive epsilons"));
        }
        let e = &self.entropy;
        e.bounds.validate().map_err(|err| in_section("entropy.bounds", err))?;
        if !(e.t1 > 1.0 && e.t_max >= e.t1) {
            return Err(field("entropy.t1", "need 1 < t1 <= t_max"));
        }
        Ok(())
    }
}
