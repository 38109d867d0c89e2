//! Constructive baselines: nearest neighbour and best-of-random-permutations.

use alloc::vec::Vec;

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::instance::Instance;
use crate::report::{Algorithm, SolveReport};
use crate::rng::RandomSource;
use crate::tour::{tour_cost, Tour};

/// Greedy tour from the depot; ties go to the lowest city index.
pub fn solve_nearest_neighbor(instance: &Instance) -> SolveReport {
    let mut meter = Meter::unlimited();
    let mut unvisited: Vec<usize> = instance.customers().collect();
    let order = nearest_neighbor_walk(instance, instance.depot(), &mut unvisited);
    meter.charge();
    let cost = tour_cost(instance, &order);
    SolveReport::from_meter(Algorithm::Nn, instance.name(), 0, None, &meter, Tour::from_parts(order, cost))
}

/// Walks greedily from `start` through every city in `pool` (which is
/// drained). `start` leads the returned sequence.
pub(crate) fn nearest_neighbor_walk(instance: &Instance, start: usize, pool: &mut Vec<usize>) -> Vec<usize> {
    let mut order = Vec::with_capacity(pool.len() + 1);
    order.push(start);
    let mut here = start;
    while let Some(k) = cheapest_from(instance, here, pool) {
        here = pool.remove(k);
        order.push(here);
    }
    order
}

/// Position in `pool` of the city cheapest to reach from `from`, lowest city
/// index on ties.
pub(crate) fn cheapest_from(instance: &Instance, from: usize, pool: &[usize]) -> Option<usize> {
    pool.iter()
        .enumerate()
        .min_by_key(|&(_, &c)| (instance.cost(from, c), c))
        .map(|(k, _)| k)
}

pub(crate) fn random_order(instance: &Instance, source: &mut RandomSource) -> Vec<usize> {
    let mut order = Vec::with_capacity(instance.len());
    order.push(instance.depot());
    order.extend(instance.customers());
    source.shuffle(&mut order[1..]);
    order
}

/// Samples uniform depot-rooted permutations until the budget is spent and
/// keeps the cheapest.
pub fn solve_random_walk(instance: &Instance, budget: &Budget, source: &mut RandomSource) -> Result<SolveReport> {
    budget.validate()?;
    let mut meter = Meter::new(budget);
    let mut best_order = random_order(instance, source);
    meter.charge();
    let mut best_cost = tour_cost(instance, &best_order);
    // With two or fewer cities there is only one tour.
    while instance.len() > 2 && !meter.exhausted() {
        let order = random_order(instance, source);
        meter.charge();
        let cost = tour_cost(instance, &order);
        if cost < best_cost {
            best_cost = cost;
            best_order = order;
        }
    }
    Ok(SolveReport::from_meter(
        Algorithm::RandomWalk,
        instance.name(),
        source.seed(),
        Some(budget.max_evaluations),
        &meter,
        Tour::from_parts(best_order, best_cost),
    ))
}
