//! Pairwise improvement percentages used by the pilot comparison table.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::instance::Cost;
use crate::report::Algorithm;

/// The six algorithms of the pilot table, in its column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PilotAlgorithm {
    KMeans,
    Ga,
    Sa,
    GaSa,
    KGaSa,
    KGa,
}

pub const PILOT_ALGORITHMS: [PilotAlgorithm; 6] = [
    PilotAlgorithm::KMeans,
    PilotAlgorithm::Ga,
    PilotAlgorithm::Sa,
    PilotAlgorithm::GaSa,
    PilotAlgorithm::KGaSa,
    PilotAlgorithm::KGa,
];

impl PilotAlgorithm {
    /// Column position in the raw-cost block.
    pub fn column(self) -> usize {
        PILOT_ALGORITHMS.iter().position(|&a| a == self).expect("listed")
    }

    pub fn algorithm(self) -> Algorithm {
        match self {
            PilotAlgorithm::KMeans => Algorithm::Kmeans,
            PilotAlgorithm::Ga => Algorithm::Ga,
            PilotAlgorithm::Sa => Algorithm::Sa,
            PilotAlgorithm::GaSa => Algorithm::GaSa,
            PilotAlgorithm::KGaSa => Algorithm::KGaSa,
            PilotAlgorithm::KGa => Algorithm::KGa,
        }
    }

    pub fn id(self) -> &'static str {
        self.algorithm().id()
    }

    pub fn label(self) -> &'static str {
        match self {
            PilotAlgorithm::KMeans => "K-Means",
            PilotAlgorithm::Ga => "GA",
            PilotAlgorithm::Sa => "SA",
            PilotAlgorithm::GaSa => "GA-SA",
            PilotAlgorithm::KGaSa => "K-GA-SA",
            PilotAlgorithm::KGa => "K-GA",
        }
    }
}

impl fmt::Display for PilotAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// "`better` over `baseline`": positive when `better` is cheaper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImprovementPair {
    pub better: PilotAlgorithm,
    pub baseline: PilotAlgorithm,
}

impl ImprovementPair {
    pub fn label(&self) -> alloc::string::String {
        format!("{} over {}", self.better.label(), self.baseline.label())
    }

    /// Column id such as `k_ga_over_k_ga_sa`.
    pub fn id(&self) -> alloc::string::String {
        format!("{}_over_{}", self.better.id(), self.baseline.id())
    }

    pub fn evaluate(&self, raw: &[Cost; 6]) -> Result<f64> {
        improvement(raw[self.better.column()], raw[self.baseline.column()])
    }
}

const fn pair(better: PilotAlgorithm, baseline: PilotAlgorithm) -> ImprovementPair {
    ImprovementPair { better, baseline }
}

/// The eight percentage columns of the pilot table, in order.
pub const IMPROVEMENT_PAIRS: [ImprovementPair; 8] = {
    use PilotAlgorithm::*;
    [
        pair(Ga, Sa),
        pair(Ga, GaSa),
        pair(GaSa, Sa),
        pair(KMeans, Ga),
        pair(KMeans, GaSa),
        pair(KGa, KMeans),
        pair(KGa, KGaSa),
        pair(KGaSa, KMeans),
    ]
};

/// `100 * (baseline - cost) / baseline`.
pub fn improvement(cost: Cost, baseline: Cost) -> Result<f64> {
    if baseline <= 0 {
        return Err(Error::Domain(format!("baseline cost must be positive, got {baseline}")));
    }
    Ok(100.0 * (baseline - cost) as f64 / baseline as f64)
}
