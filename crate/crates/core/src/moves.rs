//! Neighbourhood moves on depot-rooted orders with O(1) cost deltas.
//!
//! Only insertion and swap moves are offered. A segment reversal would flip
//! the direction of every arc inside the segment, so under asymmetric costs
//! its delta is O(segment) rather than O(1).

use crate::budget::Meter;
use crate::instance::{Cost, Instance};
use crate::rng::RandomSource;

/// Positions are indices into the order; position 0 (the depot) never moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Exchange the cities at two positions.
    Swap(usize, usize),
    /// Remove the city at `from` and reinsert it so that it ends up at `to`.
    Insert { from: usize, to: usize },
}

impl Move {
    /// Draws a non-trivial move; needs at least three cities.
    pub fn random(n: usize, insertion_probability: f64, source: &mut RandomSource) -> Move {
        debug_assert!(n >= 3);
        let a = 1 + source.below(n - 1);
        let mut b = 1 + source.below(n - 2);
        if b >= a {
            b += 1;
        }
        if source.chance(insertion_probability) {
            Move::Insert { from: a, to: b }
        } else {
            Move::Swap(a.min(b), a.max(b))
        }
    }

    /// Cost of the order after the move minus the cost before.
    pub fn delta(&self, instance: &Instance, order: &[usize]) -> Cost {
        match *self {
            Move::Swap(i, j) => swap_delta(instance, order, i, j),
            Move::Insert { from, to } => insert_delta(instance, order, from, to),
        }
    }

    pub fn apply(&self, order: &mut [usize]) {
        match *self {
            Move::Swap(i, j) => order.swap(i, j),
            Move::Insert { from, to } => {
                if from < to {
                    order[from..=to].rotate_left(1);
                } else {
                    order[to..=from].rotate_right(1);
                }
            }
        }
    }
}

fn swap_delta(instance: &Instance, order: &[usize], i: usize, j: usize) -> Cost {
    if i == j {
        return 0;
    }
    let n = order.len();
    let swapped = |k: usize| {
        if k == i {
            order[j]
        } else if k == j {
            order[i]
        } else {
            order[k]
        }
    };
    // Arcs leaving positions i-1, i, j-1, j; duplicates collapse when adjacent.
    let mut arcs = [(i + n - 1) % n, i, (j + n - 1) % n, j];
    arcs.sort_unstable();
    let mut delta = 0;
    for (k, &p) in arcs.iter().enumerate() {
        if k > 0 && arcs[k - 1] == p {
            continue;
        }
        let q = (p + 1) % n;
        delta += instance.cost(swapped(p), swapped(q)) - instance.cost(order[p], order[q]);
    }
    delta
}

fn insert_delta(instance: &Instance, order: &[usize], from: usize, to: usize) -> Cost {
    if from == to {
        return 0;
    }
    let n = order.len();
    let city = order[from];
    let prev = order[from - 1];
    let next = order[(from + 1) % n];
    let removal = instance.cost(prev, city) + instance.cost(city, next) - instance.cost(prev, next);
    // Position k of the order with `city` taken out.
    let reduced = |k: usize| if k < from { order[k] } else { order[k + 1] };
    let before = reduced(to - 1);
    let after = reduced(to % (n - 1));
    let insertion = instance.cost(before, city) + instance.cost(city, after) - instance.cost(before, after);
    insertion - removal
}

/// First-improvement descent over every insertion and swap move until none
/// improves, or until `meter` runs out. Each delta is one evaluation.
/// Returns the total cost change (never positive).
pub(crate) fn descend(instance: &Instance, order: &mut [usize], meter: &mut Meter) -> Cost {
    let n = order.len();
    let mut total = 0;
    if n < 3 {
        return 0;
    }
    'scan: loop {
        for from in 1..n {
            for to in 1..n {
                if from == to {
                    continue;
                }
                if meter.exhausted() {
                    return total;
                }
                let mv = Move::Insert { from, to };
                meter.charge();
                let d = mv.delta(instance, order);
                if d < 0 {
                    mv.apply(order);
                    total += d;
                    continue 'scan;
                }
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                if meter.exhausted() {
                    return total;
                }
                let mv = Move::Swap(i, j);
                meter.charge();
                let d = mv.delta(instance, order);
                if d < 0 {
                    mv.apply(order);
                    total += d;
                    continue 'scan;
                }
            }
        }
        return total;
    }
}
