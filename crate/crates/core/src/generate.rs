//! Random instance generation: uniform points in a square, Euclidean
//! distances inflated by an independent factor per ordered pair.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Cost, Instance, Point};
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    /// Side of the square coordinates are drawn from.
    pub coord_box: f64,
    /// Upper bound of the per-arc relative perturbation, in `[0, 1]`.
    pub asymmetry_alpha: f64,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GeneratorConfig { n, seed, coord_box: 1000.0, asymmetry_alpha: 0.3 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("city count must be at least 1".into()));
        }
        check_alpha(self.asymmetry_alpha)?;
        if !(self.coord_box.is_finite() && self.coord_box >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "coord_box must be finite and non-negative, got {}",
                self.coord_box
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("asymmetry_alpha must lie in [0, 1], got {alpha}")))
    }
}

/// Draws an instance. `source` is used as given; `config.seed` is only
/// recorded in the instance name, so callers normally pass
/// `RandomSource::new(config.seed)`.
pub fn generate_instance(config: &GeneratorConfig, source: &mut RandomSource) -> Result<Instance> {
    config.validate()?;
    let coords: Vec<Point> = (0..config.n)
        .map(|_| {
            let x = quantize(source.unit() * config.coord_box);
            let y = quantize(source.unit() * config.coord_box);
            Point::new(x, y)
        })
        .collect();
    let costs = perturbed_costs(&coords, config.asymmetry_alpha, source);
    let name = format!("rand-n{}-s{}", config.n, config.seed);
    Instance::new(name, costs, Some(coords), 0)
}

/// `round(d(i, j) * (1 + eps_ij))` with `eps_ij ~ U[0, alpha)` drawn per
/// ordered pair in row-major order. Rounding is half away from zero.
pub(crate) fn perturbed_costs(coords: &[Point], alpha: f64, source: &mut RandomSource) -> Vec<Vec<Cost>> {
    let n = coords.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return 0;
                    }
                    let eps = alpha * source.unit();
                    libm::round(coords[i].distance(&coords[j]) * (1.0 + eps)) as Cost
                })
                .collect()
        })
        .collect()
}

/// Snaps a coordinate to the micro-unit grid the instance file stores, so
/// written instances read back bit-for-bit.
pub(crate) fn quantize(v: f64) -> f64 {
    libm::round(v * 1e6) / 1e6
}
