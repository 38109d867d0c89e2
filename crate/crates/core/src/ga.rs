//! Generational genetic algorithm over depot-rooted permutations.
//!
//! Each mating picks one of two permutation-safe crossovers: uniform-order
//! crossover (a random position mask keeps cities from the first parent, the
//! rest are filled in the second parent's relative order) or swap crossover
//! (the child starts as the first parent and, position by position, is
//! aligned with the second parent by swapping). Children may then receive a
//! single swap mutation. The same loop drives the memetic and
//! cluster-seeded hybrids in [`crate::hybrids`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::construct::random_order;
use crate::error::{Error, Result};
use crate::instance::{Cost, Instance};
use crate::report::{Algorithm, SolveReport};
use crate::rng::RandomSource;
use crate::sa::{self, Annealer, SaParams};
use crate::tour::{check_permutation, tour_cost, Tour};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaParams {
    pub population_size: usize,
    pub tournament_size: usize,
    pub elite_count: usize,
    pub crossover_rate: f64,
    /// Probability that a child gets one swap mutation.
    pub mutation_rate: f64,
    /// Probability of uniform-order crossover (otherwise swap crossover).
    pub operator_mix: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 100,
            tournament_size: 3,
            elite_count: 2,
            crossover_rate: 0.9,
            mutation_rate: 0.9,
            operator_mix: 0.5,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidParams(format!(
                "population_size must be at least 2, got {}",
                self.population_size
            )));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::InvalidParams(format!(
                "elite_count {} must be below population_size {}",
                self.elite_count, self.population_size
            )));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidParams("tournament_size must be at least 1".into()));
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
            ("operator_mix", self.operator_mix),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidParams(format!("{name} must lie in [0, 1], got {rate}")));
            }
        }
        Ok(())
    }
}

fn check_parents(a: &[usize], b: &[usize]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidTour(format!(
            "parent lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    check_permutation(a.len(), a)?;
    check_permutation(b.len(), b)?;
    if a.first() != b.first() {
        return Err(Error::InvalidTour("parents start at different depots".into()));
    }
    Ok(())
}

/// Uniform-order crossover with a random mask over positions `1..n`.
pub fn crossover_uniform_order(a: &[usize], b: &[usize], source: &mut RandomSource) -> Result<Vec<usize>> {
    check_parents(a, b)?;
    let keep: Vec<bool> = (1..a.len()).map(|_| source.chance(0.5)).collect();
    Ok(uniform_order(a, b, &keep))
}

/// Uniform-order crossover with an explicit mask; `keep[p - 1]` decides
/// whether position `p` keeps `a[p]`.
pub fn crossover_uniform_order_masked(a: &[usize], b: &[usize], keep: &[bool]) -> Result<Vec<usize>> {
    check_parents(a, b)?;
    if keep.len() + 1 != a.len().max(1) {
        return Err(Error::InvalidParams(format!(
            "mask covers {} positions, expected {}",
            keep.len(),
            a.len().saturating_sub(1)
        )));
    }
    Ok(uniform_order(a, b, keep))
}

fn uniform_order(a: &[usize], b: &[usize], keep: &[bool]) -> Vec<usize> {
    let n = a.len();
    let mut child = vec![usize::MAX; n];
    let mut kept = vec![false; n];
    if n > 0 {
        child[0] = a[0];
        kept[a[0]] = true;
    }
    for p in 1..n {
        if keep[p - 1] {
            child[p] = a[p];
            kept[a[p]] = true;
        }
    }
    let mut fill = b.iter().copied().filter(|&c| !kept[c]);
    for slot in child.iter_mut().skip(1) {
        if *slot == usize::MAX {
            *slot = fill.next().expect("fill supplies exactly the unkept cities");
        }
    }
    child
}

/// Swap crossover with fair coin flips per position.
pub fn crossover_swap(a: &[usize], b: &[usize], source: &mut RandomSource) -> Result<Vec<usize>> {
    check_parents(a, b)?;
    let flips: Vec<bool> = (1..a.len()).map(|_| source.chance(0.5)).collect();
    Ok(swap_align(a, b, &flips))
}

/// Swap crossover with explicit flips; `flips[p - 1]` decides whether
/// position `p` of the child is aligned with `b[p]`.
pub fn crossover_swap_with_flips(a: &[usize], b: &[usize], flips: &[bool]) -> Result<Vec<usize>> {
    check_parents(a, b)?;
    if flips.len() + 1 != a.len().max(1) {
        return Err(Error::InvalidParams(format!(
            "flips cover {} positions, expected {}",
            flips.len(),
            a.len().saturating_sub(1)
        )));
    }
    Ok(swap_align(a, b, flips))
}

fn swap_align(a: &[usize], b: &[usize], flips: &[bool]) -> Vec<usize> {
    let mut child = a.to_vec();
    let mut position = vec![0; a.len()];
    for (p, &c) in child.iter().enumerate() {
        position[c] = p;
    }
    for p in 1..a.len() {
        if !flips[p - 1] {
            continue;
        }
        let q = position[b[p]];
        if q != p {
            child.swap(p, q);
            position[child[p]] = p;
            position[child[q]] = q;
        }
    }
    child
}

/// Exchanges two distinct non-depot positions. No-op below three cities.
pub(crate) fn swap_mutation(order: &mut [usize], source: &mut RandomSource) {
    let n = order.len();
    if n < 3 {
        return;
    }
    let i = 1 + source.below(n - 1);
    let mut j = 1 + source.below(n - 2);
    if j >= i {
        j += 1;
    }
    order.swap(i, j);
}

#[derive(Debug, Clone)]
struct Member {
    order: Vec<usize>,
    cost: Cost,
}

/// Outcome of one evolutionary run.
#[derive(Debug, Clone)]
pub struct GaRun {
    pub report: SolveReport,
    /// Best cost in the population after initialisation and after every
    /// generation.
    pub generation_best: Vec<Cost>,
}

/// How a run deviates from the plain GA.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Variant<'a> {
    pub algorithm: Algorithm,
    /// Refine the best offspring with short annealing chains each generation.
    pub memetic: Option<&'a SaParams>,
    /// Seed the population with this order plus mutated copies of it.
    pub seed_order: Option<&'a [usize]>,
}

pub fn solve_ga(instance: &Instance, params: &GaParams, budget: &Budget, source: &mut RandomSource) -> Result<SolveReport> {
    run_ga(instance, params, budget, source).map(|run| run.report)
}

/// [`solve_ga`] that also returns the per-generation best costs.
pub fn run_ga(instance: &Instance, params: &GaParams, budget: &Budget, source: &mut RandomSource) -> Result<GaRun> {
    let variant = Variant { algorithm: Algorithm::Ga, memetic: None, seed_order: None };
    evolve(instance, params, budget, source, variant)
}

pub(crate) fn evolve(
    instance: &Instance,
    params: &GaParams,
    budget: &Budget,
    source: &mut RandomSource,
    variant: Variant<'_>,
) -> Result<GaRun> {
    params.validate()?;
    budget.validate()?;
    if let Some(sa) = variant.memetic {
        sa.validate()?;
    }
    if params.population_size as u64 > budget.max_evaluations {
        return Err(Error::BudgetTooSmall {
            budget: budget.max_evaluations,
            population: params.population_size,
        });
    }
    let n = instance.len();
    let mut meter = Meter::new(budget);

    let mut population: Vec<Member> = Vec::with_capacity(params.population_size);
    for k in 0..params.population_size {
        let order = match variant.seed_order {
            Some(seed) if k == 0 => seed.to_vec(),
            Some(seed) => {
                let mut copy = seed.to_vec();
                for _ in 0..1 + source.below(3) {
                    swap_mutation(&mut copy, source);
                }
                copy
            }
            None => random_order(instance, source),
        };
        meter.charge();
        let cost = tour_cost(instance, &order);
        population.push(Member { order, cost });
    }

    let mut best = population[best_index(&population)].clone();
    let mut generation_best = vec![best.cost];

    let mut temperature = 0.0;
    let mut floor = 0.0;
    let memetic = variant.memetic.filter(|_| n >= 3);
    if let Some(sa) = memetic {
        temperature = sa::calibrate_temperature(instance, &best.order, sa, &mut meter, source);
        floor = temperature * sa.min_temperature_ratio;
    }

    // Every depot-rooted order is the same tour below three cities.
    while n >= 3 && !meter.exhausted() {
        let ranked = ranking(&population);
        let mut next: Vec<Member> = ranked[..params.elite_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();
        let first_child = next.len();

        while next.len() < params.population_size && !meter.exhausted() {
            let a = &population[tournament(&population, params.tournament_size, source)].order;
            let b = &population[tournament(&population, params.tournament_size, source)].order;
            let mut child = if source.chance(params.crossover_rate) {
                if source.chance(params.operator_mix) {
                    let keep: Vec<bool> = (1..n).map(|_| source.chance(0.5)).collect();
                    uniform_order(a, b, &keep)
                } else {
                    let flips: Vec<bool> = (1..n).map(|_| source.chance(0.5)).collect();
                    swap_align(a, b, &flips)
                }
            } else {
                a.clone()
            };
            if source.chance(params.mutation_rate) {
                swap_mutation(&mut child, source);
            }
            meter.charge();
            let cost = tour_cost(instance, &child);
            next.push(Member { order: child, cost });
        }

        if let Some(sa) = memetic {
            let offspring = ranking(&next[first_child..]);
            let epoch = sa.epoch_for(n);
            let chain_temperature = if temperature < floor { 0.0 } else { temperature };
            for &k in offspring.iter().take(params.elite_count.max(1)) {
                if meter.exhausted() {
                    break;
                }
                let member = &mut next[first_child + k];
                let mut chain = Annealer::new(instance, core::mem::take(&mut member.order), member.cost);
                chain.run(chain_temperature, epoch, sa.move_mix, &mut meter, source, None);
                let (order, cost) = chain.into_best();
                member.order = order;
                member.cost = cost;
            }
            temperature *= sa.cooling_ratio;
        }

        population = next;
        let gen_best = &population[best_index(&population)];
        if gen_best.cost < best.cost {
            best = gen_best.clone();
        }
        generation_best.push(gen_best.cost);
    }

    let report = SolveReport::from_meter(
        variant.algorithm,
        instance.name(),
        source.seed(),
        Some(budget.max_evaluations),
        &meter,
        Tour::from_parts(best.order, best.cost),
    );
    Ok(GaRun { report, generation_best })
}

fn best_index(population: &[Member]) -> usize {
    population
        .iter()
        .enumerate()
        .min_by_key(|&(i, m)| (m.cost, i))
        .map(|(i, _)| i)
        .expect("population is never empty")
}

/// Indices sorted by cost, ties by index.
fn ranking(population: &[Member]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..population.len()).collect();
    idx.sort_by_key(|&i| (population[i].cost, i));
    idx
}

/// Best of `size` draws with replacement; the earliest draw wins ties.
fn tournament(population: &[Member], size: usize, source: &mut RandomSource) -> usize {
    let mut winner = source.below(population.len());
    for _ in 1..size {
        let challenger = source.below(population.len());
        if population[challenger].cost < population[winner].cost {
            winner = challenger;
        }
    }
    winner
}
