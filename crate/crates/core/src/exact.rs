//! Held-Karp dynamic program over subsets of customers, anchored at the depot.
//!
//! `best[S][j]` is the cheapest path that leaves the depot, visits exactly the
//! customers in `S` and ends at customer `j`. O(2^m * m^2) time and
//! O(2^m * m) memory for `m = n - 1` customers.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::instance::{Cost, Instance};
use crate::report::{Algorithm, SolveReport};
use crate::tour::{tour_cost, Tour};

/// Largest instance the exact solver accepts. The 2^17 x 17 table for 18
/// cities stays well under 100 MB.
pub const MAX_EXACT_CITIES: usize = 18;

const UNREACHED: Cost = Cost::MAX;

/// Provably optimal tour. Ignores the evaluation cap (the report counts the
/// single pricing of the reconstructed tour) and any seed.
pub fn solve_exact(instance: &Instance, budget: &Budget) -> Result<SolveReport> {
    let n = instance.len();
    if n > MAX_EXACT_CITIES {
        return Err(Error::TooLarge { n, limit: MAX_EXACT_CITIES });
    }
    budget.validate()?;
    let mut meter = Meter::new(budget);
    let order = optimal_order(instance);
    meter.charge();
    let cost = tour_cost(instance, &order);
    Ok(SolveReport::from_meter(
        Algorithm::Exact,
        instance.name(),
        0,
        Some(budget.max_evaluations),
        &meter,
        Tour::from_parts(order, cost),
    ))
}

fn optimal_order(instance: &Instance) -> Vec<usize> {
    let depot = instance.depot();
    let customers: Vec<usize> = instance.customers().collect();
    let m = customers.len();
    if m <= 1 {
        let mut order = vec![depot];
        order.extend(customers);
        return order;
    }

    let full = (1usize << m) - 1;
    let mut best = vec![UNREACHED; (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for (j, &c) in customers.iter().enumerate() {
        best[(1 << j) * m + j] = instance.cost(depot, c);
    }

    for set in 1..=full {
        for last in 0..m {
            let here = best[set * m + last];
            if set & (1 << last) == 0 || here == UNREACHED {
                continue;
            }
            let from = customers[last];
            let mut rest = full & !set;
            while rest != 0 {
                let next = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let slot = (set | (1 << next)) * m + next;
                let candidate = here + instance.cost(from, customers[next]);
                // Strict comparison keeps the lowest predecessor on ties.
                if candidate < best[slot] {
                    best[slot] = candidate;
                    parent[slot] = last as u8;
                }
            }
        }
    }

    let mut last = 0;
    let mut best_total = UNREACHED;
    for j in 0..m {
        let total = best[full * m + j] + instance.cost(customers[j], depot);
        if total < best_total {
            best_total = total;
            last = j;
        }
    }

    let mut reversed = Vec::with_capacity(m);
    let mut set = full;
    loop {
        reversed.push(customers[last]);
        let prev = parent[set * m + last];
        set &= !(1 << last);
        if set == 0 {
            break;
        }
        last = prev as usize;
    }
    let mut order = Vec::with_capacity(m + 1);
    order.push(depot);
    order.extend(reversed.into_iter().rev());
    order
}
