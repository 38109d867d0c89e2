use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Arc and tour costs are integers so that oracle comparisons are exact.
pub type Cost = i64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        libm::sqrt(self.squared_distance(other))
    }

    pub fn squared_distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A broken instance invariant, as reported by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NonSquare { row: usize, len: usize, expected: usize },
    NegativeEntry { row: usize, col: usize, value: Cost },
    NonzeroDiagonal { index: usize, value: Cost },
    CoordsLengthMismatch { coords: usize, cities: usize },
    NonFiniteCoord { index: usize },
    DepotOutOfRange { depot: usize, cities: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "instance has no cities"),
            Violation::NonSquare { row, len, expected } => {
                write!(f, "non-square matrix: row {row} has {len} entries, expected {expected}")
            }
            Violation::NegativeEntry { row, col, value } => {
                write!(f, "negative entry {value} at ({row}, {col})")
            }
            Violation::NonzeroDiagonal { index, .. } => write!(f, "nonzero diagonal at {index}"),
            Violation::CoordsLengthMismatch { coords, cities } => {
                write!(f, "coords length mismatch: {coords} points for {cities} cities")
            }
            Violation::NonFiniteCoord { index } => write!(f, "non-finite coordinate at {index}"),
            Violation::DepotOutOfRange { depot, cities } => {
                write!(f, "depot {depot} out of range for {cities} cities")
            }
        }
    }
}

/// Returns every violated invariant of the raw parts of an instance.
pub fn validate_instance(
    costs: &[Vec<Cost>],
    coords: Option<&[Point]>,
    depot: usize,
) -> core::result::Result<(), Vec<Violation>> {
    let n = costs.len();
    let mut found = Vec::new();
    if n == 0 {
        found.push(Violation::Empty);
    }
    for (row, entries) in costs.iter().enumerate() {
        if entries.len() != n {
            found.push(Violation::NonSquare { row, len: entries.len(), expected: n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value < 0 {
                found.push(Violation::NegativeEntry { row, col, value });
            } else if row == col && value != 0 {
                found.push(Violation::NonzeroDiagonal { index: row, value });
            }
        }
    }
    if let Some(points) = coords {
        if points.len() != n {
            found.push(Violation::CoordsLengthMismatch { coords: points.len(), cities: n });
        }
        for (index, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                found.push(Violation::NonFiniteCoord { index });
            }
        }
    }
    if depot >= n.max(1) {
        found.push(Violation::DepotOutOfRange { depot, cities: n });
    }
    if found.is_empty() {
        Ok(())
    } else {
        Err(found)
    }
}

/// A validated ATSP instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    n: usize,
    depot: usize,
    costs: Vec<Cost>,
    coords: Option<Vec<Point>>,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        costs: Vec<Vec<Cost>>,
        coords: Option<Vec<Point>>,
        depot: usize,
    ) -> Result<Self> {
        validate_instance(&costs, coords.as_deref(), depot).map_err(Error::InvalidInstance)?;
        let n = costs.len();
        Ok(Instance {
            name: name.into(),
            n,
            depot,
            costs: costs.into_iter().flatten().collect(),
            coords,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn depot(&self) -> usize {
        self.depot
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    #[inline]
    pub fn cost(&self, from: usize, to: usize) -> Cost {
        self.costs[from * self.n + to]
    }

    pub fn row(&self, from: usize) -> &[Cost] {
        &self.costs[from * self.n..(from + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cost]> {
        self.costs.chunks(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.cost(i, j) == self.cost(j, i)))
    }

    /// Cities other than the depot, in index order.
    pub fn customers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&c| c != self.depot)
    }
}
