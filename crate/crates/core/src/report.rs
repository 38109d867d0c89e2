use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use serde::Serialize;

use crate::budget::Meter;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Kmeans,
    Ga,
    Sa,
    GaSa,
    KGa,
    KGaSa,
    Nn,
    RandomWalk,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Kmeans,
        Algorithm::Ga,
        Algorithm::Sa,
        Algorithm::GaSa,
        Algorithm::KGa,
        Algorithm::KGaSa,
        Algorithm::Nn,
        Algorithm::RandomWalk,
        Algorithm::Exact,
    ];

    /// Identifier used in reports (`ga_sa`, `k_ga`, ...).
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Kmeans => "kmeans",
            Algorithm::Ga => "ga",
            Algorithm::Sa => "sa",
            Algorithm::GaSa => "ga_sa",
            Algorithm::KGa => "k_ga",
            Algorithm::KGaSa => "k_ga_sa",
            Algorithm::Nn => "nn",
            Algorithm::RandomWalk => "random_walk",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Accepts both the report ids and their dashed command-line spellings.
impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == wanted)
            .ok_or_else(|| alloc::format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub instance_name: String,
    pub seed: u64,
    /// The evaluation cap the run was given, if it had one.
    pub max_evaluations: Option<u64>,
    pub evaluations_used: u64,
    pub elapsed_millis: u64,
    pub best: Tour,
}

impl SolveReport {
    pub(crate) fn from_meter(
        algorithm: Algorithm,
        instance_name: &str,
        seed: u64,
        max_evaluations: Option<u64>,
        meter: &Meter,
        best: Tour,
    ) -> Self {
        SolveReport {
            algorithm,
            instance_name: instance_name.into(),
            seed,
            max_evaluations,
            evaluations_used: meter.used(),
            elapsed_millis: meter.elapsed_millis(),
            best,
        }
    }

    pub fn cost(&self) -> crate::Cost {
        self.best.cost()
    }
}
