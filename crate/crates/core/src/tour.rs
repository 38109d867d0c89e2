use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cost, Instance};

/// A closed tour anchored at the depot together with its cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tour {
    order: Vec<usize>,
    cost: Cost,
}

impl Tour {
    /// Validates `order` against `instance` and prices it.
    pub fn new(instance: &Instance, order: Vec<usize>) -> Result<Self> {
        check_permutation(instance.len(), &order)?;
        if order[0] != instance.depot() {
            return Err(Error::InvalidTour(format!(
                "tour starts at city {} instead of depot {}",
                order[0],
                instance.depot()
            )));
        }
        let cost = tour_cost(instance, &order);
        Ok(Tour { order, cost })
    }

    /// Builds a tour whose order is already known to be a depot-rooted
    /// permutation and whose cost was computed from it.
    pub(crate) fn from_parts(order: Vec<usize>, cost: Cost) -> Self {
        Tour { order, cost }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

/// Prices the closed walk `order[0] -> ... -> order[n-1] -> order[0]` and
/// bumps `evaluations` by one.
pub fn evaluate_tour(instance: &Instance, order: &[usize], evaluations: &mut u64) -> Result<Cost> {
    check_permutation(instance.len(), order)?;
    *evaluations += 1;
    Ok(tour_cost(instance, order))
}

/// Unchecked pricing for orders the caller has already validated.
#[inline]
pub(crate) fn tour_cost(instance: &Instance, order: &[usize]) -> Cost {
    let closing = instance.cost(order[order.len() - 1], order[0]);
    order.windows(2).map(|w| instance.cost(w[0], w[1])).sum::<Cost>() + closing
}

pub(crate) fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidTour(format!(
            "expected {n} cities, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &city in order {
        if city >= n {
            return Err(Error::InvalidTour(format!("city {city} out of range")));
        }
        if seen[city] {
            return Err(Error::InvalidTour(format!("city {city} visited twice")));
        }
        seen[city] = true;
    }
    // With the length right and no duplicates nothing can be missing, but name
    // the gap anyway should the two checks ever drift apart.
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidTour(format!("city {missing} missing")));
    }
    Ok(())
}
