//! Solvers for the single-depot asymmetric traveling salesman problem.
//!
//! The crate is `no_std` (it needs `alloc`) and does no IO. It holds the
//! domain types, tour evaluation, a seeded random source, the exact
//! Held-Karp oracle, the constructive baselines, the genetic and annealing
//! metaheuristics, k-means clustering and the cluster-seeded hybrids built
//! from them. File formats, timing and the command line live in the `atsp`
//! companion crate.
//!
//! Every solver consumes an evaluation [`Budget`]: one evaluation is one
//! full tour pricing or one O(1) neighbour-move delta. With no wall-clock cap
//! set, solver output depends only on the instance, the parameters, the
//! budget and the seed.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod budget;
pub mod construct;
pub mod error;
pub mod exact;
pub mod ga;
pub mod generate;
pub mod hybrids;
pub mod instance;
pub mod kmeans;
pub mod metrics;
pub mod moves;
pub mod report;
pub mod rng;
pub mod sa;
pub mod sites;
pub mod tour;

pub use budget::{Budget, Clock};
pub use construct::{solve_nearest_neighbor, solve_random_walk};
pub use error::{Error, Result};
pub use exact::{solve_exact, MAX_EXACT_CITIES};
pub use ga::{crossover_swap, crossover_uniform_order, solve_ga, GaParams};
pub use generate::{generate_instance, GeneratorConfig};
pub use hybrids::{solve_cluster_heuristic, solve_ga_sa, solve_k_ga, solve_k_ga_sa};
pub use instance::{validate_instance, Cost, Instance, Point, Violation};
pub use kmeans::{kmeans, Clustering, KMeansParams};
pub use metrics::{improvement, ImprovementPair, PilotAlgorithm, IMPROVEMENT_PAIRS, PILOT_ALGORITHMS};
pub use report::{Algorithm, SolveReport};
pub use rng::RandomSource;
pub use sa::{solve_sa, SaParams};
pub use sites::{build_instance_from_events, ReadEvent, Site, SiteMap};
pub use tour::{evaluate_tour, Tour};
