#![allow(dead_code)]

use atsp_core::{Cost, Instance, Point, RandomSource};

/// Cheapest depot-rooted tour by enumerating all (n-1)! orders.
pub fn brute_force(instance: &Instance) -> Cost {
    let depot = instance.depot();
    let mut rest: Vec<usize> = (0..instance.len()).filter(|&c| c != depot).collect();
    let mut best = Cost::MAX;
    permute(&mut rest, 0, &mut |perm| {
        let mut cost = 0;
        let mut here = depot;
        for &c in perm {
            cost += instance.cost(here, c);
            here = c;
        }
        cost += instance.cost(here, depot);
        best = best.min(cost);
    });
    best
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Independent pricing of a closed walk.
pub fn walk_cost(instance: &Instance, order: &[usize]) -> Cost {
    let n = order.len();
    (0..n).map(|k| instance.cost(order[k], order[(k + 1) % n])).sum()
}

pub fn is_depot_rooted_permutation(instance: &Instance, order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted == (0..instance.len()).collect::<Vec<_>>() && order.first() == Some(&instance.depot())
}

/// Arbitrary asymmetric costs in 0..max, no coordinates.
pub fn uniform_instance(n: usize, max: usize, seed: u64) -> Instance {
    let mut s = RandomSource::new(seed);
    let costs = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { s.below(max) as Cost }).collect())
        .collect();
    Instance::new(format!("u{n}-{seed}"), costs, None, 0).unwrap()
}

#[allow(clippy::needless_range_loop)]
pub fn symmetric_instance(n: usize, seed: u64) -> Instance {
    let mut s = RandomSource::new(seed);
    let mut costs = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = s.below(100) as Cost;
            costs[i][j] = c;
            costs[j][i] = c;
        }
    }
    Instance::new("sym", costs, None, 0).unwrap()
}

pub fn generated(n: usize, seed: u64) -> Instance {
    atsp_core::generate_instance(&atsp_core::GeneratorConfig::new(n, seed), &mut RandomSource::new(seed)).unwrap()
}

pub fn line_instance(n: usize) -> Instance {
    let pts: Vec<Point> = (0..n).map(|i| Point::new(10.0 * i as f64, 0.0)).collect();
    let costs = pts
        .iter()
        .map(|a| pts.iter().map(|b| a.distance(b).round() as Cost).collect())
        .collect();
    Instance::new("line", costs, Some(pts), 0).unwrap()
}
