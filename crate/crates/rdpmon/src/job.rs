use serde::Serialize;

use rdpmon_core::fp::is_prime;
use rdpmon_core::scalar::{ScalarConfig, Uniformizer};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Classify,
    Deform,
    Monodromy,
    Weyl,
    Slice,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Abstract,
    Prime,
}

impl From<Model> for Uniformizer {
    fn from(m: Model) -> Self {
        match m {
            Model::Abstract => Uniformizer::Abstract,
            Model::Prime => Uniformizer::Prime,
        }
    }
}

/// Exponent grid for `y^(n+1) + Σ_{i<n} π^(a_i) y^i` with every `a_i` in `1..=max_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub rank: u32,
    pub max_exponent: u32,
    pub max_points: u64,
}

impl Grid {
    /// `max_exponent^rank`, saturating.
    pub fn size(&self) -> u64 {
        (0..self.rank).fold(1u64, |acc, _| acc.saturating_mul(self.max_exponent as u64))
    }
}

/// Everything needed to reproduce a run; embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JobSpec {
    pub prime: u64,
    pub precision: u32,
    pub model: Model,
    pub input: String,
    pub analyses: Vec<Analysis>,
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    /// Type A Weyl element requested by partition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_type: Option<Vec<usize>>,
}

impl JobSpec {
    pub fn new(
        prime: u64,
        precision: u32,
        model: Model,
        input: impl Into<String>,
        analyses: Vec<Analysis>,
    ) -> Result<Self, CliError> {
        if prime < 3 || !is_prime(prime) {
            return Err(CliError::Job(format!("p = {prime} must be a prime at least 3")));
        }
        if precision < 4 {
            return Err(CliError::Job(format!("precision {precision} must be at least 4")));
        }
        Ok(JobSpec {
            prime,
            precision,
            model,
            input: input.into(),
            analyses,
            output: None,
            grid: None,
            cycle_type: None,
        })
    }

    pub fn config(&self) -> Result<ScalarConfig, CliError> {
        Ok(ScalarConfig::with_uniformizer(self.prime, self.precision, self.model.into())?)
    }
}
