//! Lloyd's k-means on planar points.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Point;
use crate::rng::RandomSource;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansParams {
    /// Cluster count; `None` means `round(sqrt(n / 2))` clamped to `[1, n]`.
    pub k: Option<usize>,
    pub max_iterations: usize,
}

impl Default for KMeansParams {
    fn default() -> Self {
        KMeansParams { k: None, max_iterations: 100 }
    }
}

impl KMeansParams {
    pub fn cluster_count(&self, n: usize) -> usize {
        self.k.unwrap_or_else(|| default_k(n))
    }
}

pub(crate) fn default_k(n: usize) -> usize {
    (libm::round(libm::sqrt(n as f64 / 2.0)) as usize).clamp(1, n.max(1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clustering {
    /// Cluster id of every point.
    pub assignments: Vec<usize>,
    pub centroids: Vec<Point>,
    pub wcss: f64,
    /// WCSS after every assignment/update round; non-increasing.
    pub wcss_history: Vec<f64>,
    /// True when the loop stopped at an assignment fixpoint rather than at
    /// `max_iterations`.
    pub converged: bool,
}

impl Clustering {
    pub fn members(&self, cluster: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignments.iter().enumerate().filter(move |&(_, &c)| c == cluster).map(|(i, _)| i)
    }
}

pub fn kmeans(points: &[Point], params: &KMeansParams, source: &mut RandomSource) -> Result<Clustering> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidParams("k-means needs at least one point".into()));
    }
    let k = params.cluster_count(n);
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("k = {k} must lie in [1, {n}]")));
    }
    if params.max_iterations == 0 {
        return Err(Error::InvalidParams("max_iterations must be at least 1".into()));
    }

    let mut centroids: Vec<Point> = rand::seq::index::sample(source, n, k)
        .into_iter()
        .map(|i| points[i])
        .collect();
    let mut assignments = nearest(points, &centroids);
    repair_empty(points, &mut assignments, &mut centroids);
    update_means(points, &assignments, &mut centroids);
    let mut wcss_history = vec![wcss(points, &assignments, &centroids)];

    let mut converged = false;
    for _ in 1..params.max_iterations {
        let next = nearest(points, &centroids);
        if next == assignments {
            converged = true;
            break;
        }
        assignments = next;
        repair_empty(points, &mut assignments, &mut centroids);
        update_means(points, &assignments, &mut centroids);
        wcss_history.push(wcss(points, &assignments, &centroids));
    }
    if !converged {
        converged = nearest(points, &centroids) == assignments;
    }

    Ok(Clustering {
        wcss: *wcss_history.last().expect("at least one round"),
        assignments,
        centroids,
        wcss_history,
        converged,
    })
}

/// Index of the closest centroid for every point; lowest id on ties.
pub(crate) fn nearest(points: &[Point], centroids: &[Point]) -> Vec<usize> {
    points
        .iter()
        .map(|p| {
            let mut best = 0;
            let mut best_d = p.squared_distance(&centroids[0]);
            for (c, centroid) in centroids.iter().enumerate().skip(1) {
                let d = p.squared_distance(centroid);
                if d < best_d {
                    best = c;
                    best_d = d;
                }
            }
            best
        })
        .collect()
}

/// Gives each empty cluster the point farthest from its current centroid,
/// taken from a cluster that keeps at least one member.
fn repair_empty(points: &[Point], assignments: &mut [usize], centroids: &mut [Point]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &c in assignments.iter() {
        sizes[c] += 1;
    }
    while let Some(empty) = sizes.iter().position(|&s| s == 0) {
        let mut donor = None;
        let mut far = -1.0;
        for (i, p) in points.iter().enumerate() {
            let c = assignments[i];
            if sizes[c] < 2 {
                continue;
            }
            let d = p.squared_distance(&centroids[c]);
            if d > far {
                far = d;
                donor = Some(i);
            }
        }
        let i = donor.expect("k <= n leaves a cluster with two or more points");
        sizes[assignments[i]] -= 1;
        assignments[i] = empty;
        sizes[empty] = 1;
        centroids[empty] = points[i];
    }
}

fn update_means(points: &[Point], assignments: &[usize], centroids: &mut [Point]) {
    let k = centroids.len();
    let mut sums = vec![(0.0, 0.0, 0usize); k];
    for (p, &c) in points.iter().zip(assignments) {
        sums[c].0 += p.x;
        sums[c].1 += p.y;
        sums[c].2 += 1;
    }
    for (centroid, (sx, sy, count)) in centroids.iter_mut().zip(sums) {
        if count > 0 {
            *centroid = Point::new(sx / count as f64, sy / count as f64);
        }
    }
}

pub(crate) fn wcss(points: &[Point], assignments: &[usize], centroids: &[Point]) -> f64 {
    points.iter().zip(assignments).map(|(p, &c)| p.squared_distance(&centroids[c])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let pts = [Point::new(3.0, 4.0)];
        let c = kmeans(&pts, &KMeansParams { k: Some(1), max_iterations: 10 }, &mut RandomSource::new(1)).unwrap();
        assert_eq!(c.centroids, [Point::new(3.0, 4.0)]);
        assert_eq!(c.wcss, 0.0);
    }

    #[test]
    fn k_equal_n_isolates_every_point() {
        let pts = [Point::new(0.0, 0.0), Point::new(5.0, 1.0), Point::new(2.0, 9.0), Point::new(7.0, 7.0)];
        let c = kmeans(&pts, &KMeansParams { k: Some(4), max_iterations: 10 }, &mut RandomSource::new(2)).unwrap();
        assert_eq!(c.wcss, 0.0);
        let mut ids = c.assignments.clone();
        ids.sort_unstable();
        assert_eq!(ids, [0, 1, 2, 3]);
    }

    #[test]
    fn k_above_n_rejected() {
        let pts = [Point::new(0.0, 0.0)];
        assert!(kmeans(&pts, &KMeansParams { k: Some(2), max_iterations: 10 }, &mut RandomSource::new(1)).is_err());
    }

    #[test]
    fn duplicate_points_still_fill_every_cluster() {
        let pts = [Point::new(1.0, 1.0); 5];
        let c = kmeans(&pts, &KMeansParams { k: Some(3), max_iterations: 10 }, &mut RandomSource::new(4)).unwrap();
        for cluster in 0..3 {
            assert!(c.members(cluster).next().is_some());
        }
        assert_eq!(c.wcss, 0.0);
    }

    #[test]
    fn default_k_rounds_sqrt_half_n() {
        assert_eq!(default_k(14), 3);
        assert_eq!(default_k(1), 1);
        assert_eq!(default_k(2), 1);
        assert_eq!(default_k(8), 2);
    }
}
