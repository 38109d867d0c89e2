//! Cluster-first route-second construction and the hybrids built on it.
//!
//! The cluster heuristic groups the customers with k-means, visits the
//! clusters by the polar angle of their centroids around the depot, routes
//! each cluster by nearest neighbour on the (asymmetric) costs, and finishes
//! with a budget-free insertion/swap descent. K-GA and K-GA-SA seed their
//! population with that tour.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::budget::{Budget, Meter};
use crate::construct::{cheapest_from, nearest_neighbor_walk};
use crate::error::{Error, Result};
use crate::ga::{evolve, GaParams, Variant};
use crate::instance::{Cost, Instance};
use crate::kmeans::{default_k, kmeans, Clustering, KMeansParams};
use crate::moves::descend;
use crate::report::{Algorithm, SolveReport};
use crate::rng::RandomSource;
use crate::sa::SaParams;
use crate::tour::{tour_cost, Tour};

/// The cluster heuristic's tour before and after descent, with the clustering
/// that produced it.
#[derive(Debug, Clone)]
pub struct ClusterRoute {
    /// Customer cities, one list per cluster, in visiting order.
    pub clusters: Vec<Vec<usize>>,
    pub clustering: Option<Clustering>,
    pub stitched: Tour,
    pub improved: Tour,
    pub evaluations: u64,
}

/// Builds the cluster-first route-second tour. Draws from `source` only for
/// the k-means seeding.
pub fn cluster_route(instance: &Instance, params: &KMeansParams, source: &mut RandomSource) -> Result<ClusterRoute> {
    let coords = instance.coords().ok_or(Error::MissingCoordinates)?;
    let depot = instance.depot();
    let customers: Vec<usize> = instance.customers().collect();
    let m = customers.len();
    let mut meter = Meter::unlimited();

    let (clusters, clustering) = if m == 0 {
        (Vec::new(), None)
    } else {
        let k = match params.k {
            Some(k) if k == 0 || k > m => {
                return Err(Error::InvalidParams(format!("k = {k} must lie in [1, {m}] customers")));
            }
            Some(k) => k,
            None => default_k(instance.len()).min(m),
        };
        let points: Vec<_> = customers.iter().map(|&c| coords[c]).collect();
        let clustering = kmeans(&points, &KMeansParams { k: Some(k), ..params.clone() }, source)?;

        let origin = coords[depot];
        let mut by_angle: Vec<(f64, usize)> = clustering
            .centroids
            .iter()
            .enumerate()
            .map(|(id, c)| {
                let a = libm::atan2(c.y - origin.y, c.x - origin.x);
                (if a < 0.0 { a + TAU } else { a }, id)
            })
            .collect();
        by_angle.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut prev = depot;
        let mut clusters = Vec::with_capacity(k);
        for &(_, id) in &by_angle {
            let mut pool: Vec<usize> = clustering.members(id).map(|i| customers[i]).collect();
            let first = cheapest_from(instance, prev, &pool).expect("clusters are non-empty");
            let start = pool.remove(first);
            let route = nearest_neighbor_walk(instance, start, &mut pool);
            prev = *route.last().expect("route holds its start");
            clusters.push(route);
        }
        (clusters, Some(clustering))
    };

    let mut order = Vec::with_capacity(instance.len());
    order.push(depot);
    order.extend(clusters.iter().flatten().copied());
    meter.charge();
    let stitched_cost = tour_cost(instance, &order);
    let stitched = Tour::from_parts(order.clone(), stitched_cost);
    let change = descend(instance, &mut order, &mut meter);
    let improved = Tour::from_parts(order, stitched_cost + change);

    Ok(ClusterRoute { clusters, clustering, stitched, improved, evaluations: meter.used() })
}

pub fn solve_cluster_heuristic(instance: &Instance, params: &KMeansParams, source: &mut RandomSource) -> Result<SolveReport> {
    let route = cluster_route(instance, params, source)?;
    Ok(SolveReport {
        algorithm: Algorithm::Kmeans,
        instance_name: instance.name().into(),
        seed: source.seed(),
        max_evaluations: None,
        evaluations_used: route.evaluations,
        elapsed_millis: 0,
        best: route.improved,
    })
}

/// Memetic GA: the best offspring of every generation are refined by one
/// annealing epoch at a shared, geometrically cooled temperature.
pub fn solve_ga_sa(
    instance: &Instance,
    ga: &GaParams,
    sa: &SaParams,
    budget: &Budget,
    source: &mut RandomSource,
) -> Result<SolveReport> {
    let variant = Variant { algorithm: Algorithm::GaSa, memetic: Some(sa), seed_order: None };
    evolve(instance, ga, budget, source, variant).map(|run| run.report)
}

/// GA seeded with the cluster heuristic's tour. The construction and its
/// descent are not charged to `budget`.
pub fn solve_k_ga(
    instance: &Instance,
    km: &KMeansParams,
    ga: &GaParams,
    budget: &Budget,
    source: &mut RandomSource,
) -> Result<SolveReport> {
    seeded(instance, km, ga, None, budget, source, Algorithm::KGa)
}

/// Memetic GA seeded with the cluster heuristic's tour.
pub fn solve_k_ga_sa(
    instance: &Instance,
    km: &KMeansParams,
    ga: &GaParams,
    sa: &SaParams,
    budget: &Budget,
    source: &mut RandomSource,
) -> Result<SolveReport> {
    seeded(instance, km, ga, Some(sa), budget, source, Algorithm::KGaSa)
}

fn seeded(
    instance: &Instance,
    km: &KMeansParams,
    ga: &GaParams,
    sa: Option<&SaParams>,
    budget: &Budget,
    source: &mut RandomSource,
    algorithm: Algorithm,
) -> Result<SolveReport> {
    // Check parameters before spending time on the construction.
    ga.validate()?;
    budget.validate()?;
    let route = cluster_route(instance, km, source)?;
    let seed = route.improved.order();
    let variant = Variant { algorithm, memetic: sa, seed_order: Some(seed) };
    let report = evolve(instance, ga, budget, source, variant)?.report;
    debug_assert!(report.cost() <= route.improved.cost());
    Ok(report)
}

/// Cost of the cluster heuristic's tour for the given seed, as used to seed
/// K-GA and K-GA-SA.
pub fn cluster_seed_cost(instance: &Instance, km: &KMeansParams, seed: u64) -> Result<Cost> {
    Ok(cluster_route(instance, km, &mut RandomSource::new(seed))?.improved.cost())
}
