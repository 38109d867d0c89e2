//! Simulated annealing with Metropolis acceptance and geometric cooling.
//!
//! The starting temperature is calibrated from the instance: 100 random
//! neighbour moves are priced and `T0 = mean_uphill / -ln(p0)`, so that an
//! average uphill move is accepted with probability `p0` at the start.

use alloc::format;
use alloc::vec::Vec;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::construct::random_order;
use crate::error::{Error, Result};
use crate::instance::{Cost, Instance};
use crate::moves::Move;
use crate::report::{Algorithm, SolveReport};
use crate::rng::RandomSource;
use crate::tour::{tour_cost, Tour};

const CALIBRATION_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaParams {
    /// Acceptance probability of a mean uphill move at the start.
    pub initial_acceptance: f64,
    /// Temperature multiplier applied after every epoch.
    pub cooling_ratio: f64,
    /// Proposals per temperature; `None` means `100 * n`.
    pub epoch_length: Option<usize>,
    /// Stop once the temperature falls below `T0` times this ratio.
    pub min_temperature_ratio: f64,
    /// Probability of proposing an insertion move (otherwise a swap).
    pub move_mix: f64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            initial_acceptance: 0.8,
            cooling_ratio: 0.95,
            epoch_length: None,
            min_temperature_ratio: 1e-4,
            move_mix: 0.5,
        }
    }
}

impl SaParams {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(self.initial_acceptance) {
            return Err(Error::InvalidParams(format!(
                "initial_acceptance must lie in (0, 1), got {}",
                self.initial_acceptance
            )));
        }
        if !open_unit(self.cooling_ratio) {
            return Err(Error::InvalidParams(format!(
                "cooling ratio must lie in (0, 1), got {}",
                self.cooling_ratio
            )));
        }
        if self.epoch_length == Some(0) {
            return Err(Error::InvalidParams("epoch_length must be at least 1".into()));
        }
        if !(self.min_temperature_ratio >= 0.0 && self.min_temperature_ratio < 1.0) {
            return Err(Error::InvalidParams(format!(
                "min_temperature_ratio must lie in [0, 1), got {}",
                self.min_temperature_ratio
            )));
        }
        if !(0.0..=1.0).contains(&self.move_mix) {
            return Err(Error::InvalidParams(format!("move_mix must lie in [0, 1], got {}", self.move_mix)));
        }
        Ok(())
    }

    pub fn epoch_for(&self, n: usize) -> usize {
        self.epoch_length.unwrap_or(100 * n)
    }
}

/// Current and best-ever state of one annealing chain.
#[derive(Debug)]
pub(crate) struct Annealer<'a> {
    instance: &'a Instance,
    order: Vec<usize>,
    cost: Cost,
    best_order: Vec<usize>,
    best_cost: Cost,
}

impl<'a> Annealer<'a> {
    pub(crate) fn new(instance: &'a Instance, order: Vec<usize>, cost: Cost) -> Self {
        Annealer { instance, best_order: order.clone(), best_cost: cost, order, cost }
    }

    /// Makes up to `proposals` Metropolis proposals at `temperature`. A
    /// temperature of zero accepts only non-worsening moves. Each proposal
    /// is one evaluation; accepted deltas are appended to `accepted`.
    pub(crate) fn run(
        &mut self,
        temperature: f64,
        proposals: usize,
        move_mix: f64,
        meter: &mut Meter,
        source: &mut RandomSource,
        mut accepted: Option<&mut Vec<Cost>>,
    ) {
        let n = self.order.len();
        if n < 3 {
            return;
        }
        for _ in 0..proposals {
            if meter.exhausted() {
                return;
            }
            let mv = Move::random(n, move_mix, source);
            meter.charge();
            let delta = mv.delta(self.instance, &self.order);
            let accept = delta <= 0
                || (temperature > 0.0 && source.unit() < libm::exp(-(delta as f64) / temperature));
            if !accept {
                continue;
            }
            mv.apply(&mut self.order);
            self.cost += delta;
            if let Some(log) = accepted.as_deref_mut() {
                log.push(delta);
            }
            if self.cost < self.best_cost {
                self.best_cost = self.cost;
                self.best_order.clone_from(&self.order);
            }
        }
    }

    pub(crate) fn cost(&self) -> Cost {
        self.cost
    }

    pub(crate) fn best_cost(&self) -> Cost {
        self.best_cost
    }

    pub(crate) fn into_best(self) -> (Vec<usize>, Cost) {
        (self.best_order, self.best_cost)
    }

    fn into_parts(self) -> ((Vec<usize>, Cost), (Vec<usize>, Cost)) {
        ((self.order, self.cost), (self.best_order, self.best_cost))
    }
}

/// Starting temperature from up to 100 sampled moves around `order`.
pub(crate) fn calibrate_temperature(
    instance: &Instance,
    order: &[usize],
    params: &SaParams,
    meter: &mut Meter,
    source: &mut RandomSource,
) -> f64 {
    let n = order.len();
    if n < 3 {
        return 0.0;
    }
    let (mut uphill_sum, mut uphill) = (0.0, 0u32);
    let (mut abs_sum, mut nonzero) = (0.0, 0u32);
    for _ in 0..CALIBRATION_SAMPLES {
        if meter.exhausted() {
            break;
        }
        let mv = Move::random(n, params.move_mix, source);
        meter.charge();
        let delta = mv.delta(instance, order);
        if delta > 0 {
            uphill_sum += delta as f64;
            uphill += 1;
        }
        if delta != 0 {
            abs_sum += libm::fabs(delta as f64);
            nonzero += 1;
        }
    }
    // Fall back to mean |delta| when no sample went uphill, and to 1 when
    // every sample was flat.
    let mean = if uphill > 0 {
        uphill_sum / f64::from(uphill)
    } else if nonzero > 0 {
        abs_sum / f64::from(nonzero)
    } else {
        1.0
    };
    mean / -libm::log(params.initial_acceptance)
}

/// Outcome of [`run_sa`].
#[derive(Debug, Clone)]
pub struct SaRun {
    pub report: SolveReport,
    pub initial_temperature: f64,
    /// Best-ever cost at the end of each epoch.
    pub epoch_best: Vec<Cost>,
    /// Current cost at the end of each epoch.
    pub epoch_current: Vec<Cost>,
}

pub fn solve_sa(
    instance: &Instance,
    params: &SaParams,
    budget: &Budget,
    source: &mut RandomSource,
    initial: Option<&Tour>,
) -> Result<SolveReport> {
    run_sa(instance, params, budget, source, initial).map(|run| run.report)
}

/// [`solve_sa`] that also returns the per-epoch trace.
pub fn run_sa(
    instance: &Instance,
    params: &SaParams,
    budget: &Budget,
    source: &mut RandomSource,
    initial: Option<&Tour>,
) -> Result<SaRun> {
    params.validate()?;
    budget.validate()?;
    if let Some(t) = initial {
        // Re-validate: the tour may belong to another instance.
        Tour::new(instance, t.order().to_vec())?;
    }
    let n = instance.len();
    let mut meter = Meter::new(budget);
    let order = match initial {
        Some(t) => t.order().to_vec(),
        None => random_order(instance, source),
    };
    meter.charge();
    let cost = tour_cost(instance, &order);
    let mut chain = Annealer::new(instance, order, cost);

    let t0 = calibrate_temperature(instance, &chain.best_order, params, &mut meter, source);
    let floor = t0 * params.min_temperature_ratio;
    let epoch = params.epoch_for(n);
    let mut temperature = t0;
    let mut epoch_best = Vec::new();
    let mut epoch_current = Vec::new();
    while n >= 3 && !meter.exhausted() && temperature >= floor {
        chain.run(temperature, epoch, params.move_mix, &mut meter, source, None);
        epoch_best.push(chain.best_cost());
        epoch_current.push(chain.cost());
        temperature *= params.cooling_ratio;
    }

    let (best_order, best_cost) = chain.into_best();
    let report = SolveReport::from_meter(
        Algorithm::Sa,
        instance.name(),
        source.seed(),
        Some(budget.max_evaluations),
        &meter,
        Tour::from_parts(best_order, best_cost),
    );
    Ok(SaRun { report, initial_temperature: t0, epoch_best, epoch_current })
}

/// Result of a single fixed-temperature chain, see [`run_chain`].
#[derive(Debug, Clone)]
pub struct ChainOutcome {
    pub best: Tour,
    pub last: Tour,
    pub accepted_deltas: Vec<Cost>,
}

/// Runs `proposals` Metropolis proposals at a fixed temperature from `start`.
/// At temperature zero this is a strict descent.
pub fn run_chain(
    instance: &Instance,
    start: &Tour,
    temperature: f64,
    proposals: usize,
    move_mix: f64,
    source: &mut RandomSource,
) -> Result<ChainOutcome> {
    let start = Tour::new(instance, start.order().to_vec())?;
    let mut chain = Annealer::new(instance, start.order().to_vec(), start.cost());
    let mut accepted = Vec::new();
    let mut meter = Meter::unlimited();
    chain.run(temperature, proposals, move_mix, &mut meter, source, Some(&mut accepted));
    let ((order, cost), (best_order, best_cost)) = chain.into_parts();
    Ok(ChainOutcome {
        best: Tour::from_parts(best_order, best_cost),
        last: Tour::from_parts(order, cost),
        accepted_deltas: accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn budget(n: u64) -> Budget {
        Budget::new(n).unwrap()
    }

    #[test]
    fn two_cities() {
        let inst = Instance::new("two", vec![vec![0, 3], vec![4, 0]], None, 0).unwrap();
        let r = solve_sa(&inst, &SaParams::default(), &budget(1000), &mut RandomSource::new(1), None).unwrap();
        assert_eq!(r.best.order(), &[0, 1]);
    }

    #[test]
    fn invalid_params_rejected() {
        let bad = [
            SaParams { cooling_ratio: 1.0, ..SaParams::default() },
            SaParams { initial_acceptance: 0.0, ..SaParams::default() },
            SaParams { epoch_length: Some(0), ..SaParams::default() },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn initial_tour_from_other_instance_rejected() {
        let three = Instance::new("t", vec![vec![0, 1, 5], vec![5, 0, 1], vec![1, 5, 0]], None, 0).unwrap();
        let two = Instance::new("two", vec![vec![0, 3], vec![4, 0]], None, 0).unwrap();
        let tour = Tour::new(&two, vec![0, 1]).unwrap();
        assert!(solve_sa(&three, &SaParams::default(), &budget(100), &mut RandomSource::new(1), Some(&tour)).is_err());
    }

    #[test]
    fn calibrated_temperature_matches_formula() {
        // Every swap or insertion on this 3-city instance turns cost 3 into 15.
        let inst = Instance::new("t", vec![vec![0, 1, 5], vec![5, 0, 1], vec![1, 5, 0]], None, 0).unwrap();
        let mut meter = Meter::unlimited();
        let t0 = calibrate_temperature(&inst, &[0, 1, 2], &SaParams::default(), &mut meter, &mut RandomSource::new(1));
        assert!((t0 - 12.0 / -libm::log(0.8)).abs() < 1e-9);
        assert_eq!(meter.used(), 100);
    }
}
