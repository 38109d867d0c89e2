//! Pilot benchmark: fourteen generated instances, six algorithms, eight
//! pairwise improvement percentages per instance.

use std::fmt::Write as _;
use std::str::FromStr;

use atsp_core::{
    generate_instance, improvement, solve_cluster_heuristic, solve_exact, solve_ga, solve_ga_sa, solve_k_ga,
    solve_k_ga_sa, solve_sa, Budget, Cost, GaParams, GeneratorConfig, Instance, KMeansParams, PilotAlgorithm,
    RandomSource, SaParams, SolveReport, IMPROVEMENT_PAIRS, PILOT_ALGORITHMS,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::AppError;

#[derive(Debug, Clone)]
pub struct PilotConfig {
    pub cities: usize,
    pub instances: usize,
    pub base_seed: u64,
    /// Evaluation budget given to every budgeted algorithm alike.
    pub budget: u64,
    pub exact: bool,
    pub coord_box: f64,
    pub asymmetry_alpha: f64,
    pub ga: GaParams,
    pub sa: SaParams,
    pub kmeans: KMeansParams,
}

impl Default for PilotConfig {
    fn default() -> Self {
        PilotConfig {
            cities: 14,
            instances: 14,
            base_seed: 1,
            budget: 50_000,
            exact: false,
            coord_box: 1000.0,
            asymmetry_alpha: 0.3,
            ga: GaParams::default(),
            sa: SaParams::default(),
            kmeans: KMeansParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PilotRow {
    /// 1-based instance number.
    pub index: usize,
    /// Costs in column order K-Means, GA, SA, GA-SA, K-GA-SA, K-GA.
    pub raw: [Cost; 6],
    /// Percentages in `IMPROVEMENT_PAIRS` order.
    pub pct: [f64; 8],
    pub optimum: Option<Cost>,
}

impl PilotRow {
    pub fn from_costs(index: usize, raw: [Cost; 6], optimum: Option<Cost>) -> Result<Self, AppError> {
        let mut pct = [0.0; 8];
        for (cell, pair) in pct.iter_mut().zip(IMPROVEMENT_PAIRS) {
            *cell = pair.evaluate(&raw).map_err(|e| AppError::Solver { context: format!("row {index}"), source: e })?;
        }
        Ok(PilotRow { index, raw, pct, optimum })
    }

    pub fn cost(&self, algorithm: PilotAlgorithm) -> Cost {
        self.raw[algorithm.column()]
    }

    /// `cost - optimum` per algorithm, when the optimum is known.
    pub fn gaps(&self) -> Option<[Cost; 6]> {
        self.optimum.map(|opt| self.raw.map(|c| c - opt))
    }
}

/// The generated instance behind row `index`.
pub fn pilot_instance(config: &PilotConfig, index: usize) -> Result<Instance, AppError> {
    let seed = config.base_seed.wrapping_add(index as u64);
    let generator = GeneratorConfig {
        n: config.cities,
        seed,
        coord_box: config.coord_box,
        asymmetry_alpha: config.asymmetry_alpha,
    };
    let instance = generate_instance(&generator, &mut RandomSource::new(seed))
        .map_err(|e| AppError::Solver { context: format!("pilot-{index}"), source: e })?;
    Ok(instance.with_name(format!("pilot-{index}")))
}

/// Per-cell random stream, fixed by (base seed, instance, algorithm) alone so
/// the schedule of parallel cells cannot change results.
pub fn cell_source(base_seed: u64, index: usize, algorithm: &str) -> RandomSource {
    RandomSource::new(base_seed).derive_child(&format!("instance-{index}")).derive_child(algorithm)
}

pub fn run_algorithm(
    config: &PilotConfig,
    instance: &Instance,
    index: usize,
    algorithm: PilotAlgorithm,
) -> Result<SolveReport, atsp_core::Error> {
    let budget = Budget::new(config.budget)?;
    let source = &mut cell_source(config.base_seed, index, algorithm.id());
    let (ga, sa, km) = (&config.ga, &config.sa, &config.kmeans);
    match algorithm {
        PilotAlgorithm::KMeans => solve_cluster_heuristic(instance, km, source),
        PilotAlgorithm::Ga => solve_ga(instance, ga, &budget, source),
        PilotAlgorithm::Sa => solve_sa(instance, sa, &budget, source, None),
        PilotAlgorithm::GaSa => solve_ga_sa(instance, ga, sa, &budget, source),
        PilotAlgorithm::KGaSa => solve_k_ga_sa(instance, km, ga, sa, &budget, source),
        PilotAlgorithm::KGa => solve_k_ga(instance, km, ga, &budget, source),
    }
}

/// Runs every (instance, algorithm) cell in parallel. Output does not depend
/// on the thread count.
pub fn run_pilot(config: &PilotConfig) -> Result<Vec<PilotRow>, AppError> {
    if config.instances == 0 {
        return Err(AppError::invalid("instances must be at least 1"));
    }
    let instances: Vec<Instance> =
        (1..=config.instances).map(|i| pilot_instance(config, i)).collect::<Result<_, _>>()?;

    let mut cells: Vec<(usize, Option<PilotAlgorithm>)> = Vec::new();
    for index in 1..=config.instances {
        cells.extend(PILOT_ALGORITHMS.iter().map(|&a| (index, Some(a))));
        if config.exact {
            cells.push((index, None));
        }
    }
    let costs: Vec<Cost> = cells
        .par_iter()
        .map(|&(index, algorithm)| {
            let instance = &instances[index - 1];
            let report = match algorithm {
                Some(a) => run_algorithm(config, instance, index, a),
                None => Budget::new(1).and_then(|b| solve_exact(instance, &b)),
            };
            report.map(|r| r.cost()).map_err(|e| AppError::Solver {
                context: format!("{} / {}", instance.name(), algorithm.map_or("exact", PilotAlgorithm::id)),
                source: e,
            })
        })
        .collect::<Result<_, _>>()?;

    let per_row = PILOT_ALGORITHMS.len() + usize::from(config.exact);
    costs
        .chunks(per_row)
        .enumerate()
        .map(|(i, chunk)| {
            let raw: [Cost; 6] = chunk[..6].try_into().expect("six algorithm cells");
            PilotRow::from_costs(i + 1, raw, chunk.get(6).copied())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Column names: index, six raw costs, eight percentages, then `optimum` and
/// one `gap_<algo>` per algorithm when any row carries an optimum.
pub fn report_columns(with_optimum: bool) -> Vec<String> {
    let mut cols = vec!["index".to_string()];
    cols.extend(PILOT_ALGORITHMS.iter().map(|a| a.id().to_string()));
    cols.extend(IMPROVEMENT_PAIRS.iter().map(|p| p.id()));
    if with_optimum {
        cols.push("optimum".into());
        cols.extend(PILOT_ALGORITHMS.iter().map(|a| format!("gap_{}", a.id())));
    }
    cols
}

fn cells(row: &PilotRow, with_optimum: bool) -> Vec<String> {
    let mut out = vec![row.index.to_string()];
    out.extend(row.raw.iter().map(Cost::to_string));
    out.extend(row.pct.iter().map(|p| format!("{p:.5}")));
    if with_optimum {
        out.push(row.optimum.map(|o| o.to_string()).unwrap_or_default());
        match row.gaps() {
            Some(gaps) => out.extend(gaps.iter().map(Cost::to_string)),
            None => out.extend(std::iter::repeat_n(String::new(), 6)),
        }
    }
    out
}

pub fn emit_report(rows: &[PilotRow], format: ReportFormat) -> Result<String, AppError> {
    if rows.is_empty() {
        return Err(AppError::invalid("no rows to report"));
    }
    let with_optimum = rows.iter().any(|r| r.optimum.is_some());
    let columns = report_columns(with_optimum);
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&cells(row, with_optimum).join(","));
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            let _ = writeln!(out, "| {} |", columns.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
            for row in rows {
                let _ = writeln!(out, "| {} |", cells(row, with_optimum).join(" | "));
            }
        }
        ReportFormat::Json => {
            let records: Vec<Value> = rows.iter().map(row_json).collect();
            out = serde_json::to_string_pretty(&records).expect("plain data serialises");
            out.push('\n');
        }
    }
    Ok(out)
}

fn row_json(row: &PilotRow) -> Value {
    let raw: Map<String, Value> = PILOT_ALGORITHMS.iter().map(|a| (a.id().into(), json!(row.cost(*a)))).collect();
    let pct: Map<String, Value> = IMPROVEMENT_PAIRS.iter().zip(row.pct).map(|(p, v)| (p.id(), json!(v))).collect();
    let mut record = json!({ "index": row.index, "costs": raw, "improvements": pct });
    if let (Some(opt), Some(gaps)) = (row.optimum, row.gaps()) {
        record["optimum"] = json!(opt);
        record["gaps"] =
            Value::Object(PILOT_ALGORITHMS.iter().zip(gaps).map(|(a, g)| (a.id().into(), json!(g))).collect());
    }
    record
}

/// Reads back a CSV report written by [`emit_report`].
pub fn parse_report_csv(text: &str) -> Result<Vec<PilotRow>, AppError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| AppError::parse(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let with_optimum = if header == report_columns(false) {
        false
    } else if header == report_columns(true) {
        true
    } else {
        return Err(AppError::parse(1, "unexpected report header"));
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| AppError::invalid(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |i: usize| AppError::parse(line, format!("invalid {} {:?}", header[i], &record[i]));
        let int = |i: usize| record[i].parse::<i64>().map_err(|_| bad(i));
        let index = record[0].parse::<usize>().map_err(|_| bad(0))?;
        let mut raw = [0; 6];
        for (k, cell) in raw.iter_mut().enumerate() {
            *cell = int(1 + k)?;
        }
        let mut pct = [0.0; 8];
        for (k, cell) in pct.iter_mut().enumerate() {
            *cell = record[7 + k].parse::<f64>().map_err(|_| bad(7 + k))?;
        }
        let optimum = if with_optimum && !record[15].is_empty() { Some(int(15)?) } else { None };
        rows.push(PilotRow { index, raw, pct, optimum });
    }
    Ok(rows)
}

/// Largest distance between a stored percentage and its recomputation.
pub fn max_percentage_drift(row: &PilotRow) -> f64 {
    IMPROVEMENT_PAIRS
        .iter()
        .zip(row.pct)
        .map(|(p, v)| {
            let fresh = improvement(row.raw[p.better.column()], row.raw[p.baseline.column()]).unwrap_or(f64::NAN);
            (fresh - v).abs()
        })
        .fold(0.0, f64::max)
}
