//! TSPLIB ATSP files with explicit full-matrix weights.
//!
//! ```text
//! NAME: demo
//! TYPE: ATSP
//! DIMENSION: 2
//! EDGE_WEIGHT_TYPE: EXPLICIT
//! EDGE_WEIGHT_FORMAT: FULL_MATRIX
//! EDGE_WEIGHT_SECTION
//! 0 5
//! 6 0
//! NODE_COORD_SECTION
//! 1 0.000000 0.000000
//! 2 3.000000 4.000000
//! EOF
//! ```
//!
//! `NODE_COORD_SECTION` is optional. A `DEPOT_SECTION` (1-based ids ending
//! in `-1`) is written only when the depot is not city 0.

use std::fmt::Write as _;
use std::path::Path;

use atsp_core::{Cost, Instance, Point};

use crate::error::{read_file, write_file, AppError};

pub fn write_instance(instance: &Instance) -> String {
    let n = instance.len();
    let mut out = String::new();
    let _ = writeln!(out, "NAME: {}", instance.name());
    out.push_str("TYPE: ATSP\n");
    let _ = writeln!(out, "DIMENSION: {n}");
    out.push_str("EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n");
    for row in instance.rows() {
        let line: Vec<String> = row.iter().map(Cost::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    if let Some(coords) = instance.coords() {
        out.push_str("NODE_COORD_SECTION\n");
        for (i, p) in coords.iter().enumerate() {
            let _ = writeln!(out, "{} {:.6} {:.6}", i + 1, p.x, p.y);
        }
    }
    if instance.depot() != 0 {
        let _ = writeln!(out, "DEPOT_SECTION\n{}\n-1", instance.depot() + 1);
    }
    out.push_str("EOF\n");
    out
}

pub fn save_instance(instance: &Instance, path: &Path) -> Result<(), AppError> {
    write_file(path, &write_instance(instance))
}

pub fn load_instance(path: &Path) -> Result<Instance, AppError> {
    parse_instance(&read_file(path)?)
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Header,
    Weights,
    Coords,
    Depot,
    Done,
}

pub fn parse_instance(text: &str) -> Result<Instance, AppError> {
    let mut name = None;
    let mut dimension: Option<usize> = None;
    let mut weights: Vec<Cost> = Vec::new();
    let mut coords: Option<Vec<Point>> = None;
    let mut depot = None;
    let mut section = Section::Header;
    let mut weights_started = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if section == Section::Done {
            return Err(AppError::parse(line_no, "content after EOF"));
        }
        let first = line.split_whitespace().next().unwrap_or_default();
        let is_keyword = first.starts_with(|c: char| c.is_ascii_alphabetic());

        if is_keyword {
            if section == Section::Weights {
                let n = dimension.unwrap_or(0);
                if weights.len() != n * n {
                    return Err(shape_error(line_no, n, weights.len(), weights_started));
                }
            }
            let (key, value) = match line.split_once(':') {
                Some((k, v)) => (k.trim(), Some(v.trim())),
                None => (line, None),
            };
            section = Section::Header;
            match (key, value) {
                ("NAME", Some(v)) => name = Some(v.to_string()),
                ("TYPE", Some(v)) => {
                    if v != "ATSP" {
                        return Err(AppError::parse(line_no, format!("unsupported type {v:?}")));
                    }
                }
                ("DIMENSION", Some(v)) => {
                    let n: usize =
                        v.parse().map_err(|_| AppError::parse(line_no, format!("invalid DIMENSION {v:?}")))?;
                    dimension = Some(n);
                }
                ("EDGE_WEIGHT_TYPE", Some(v)) if v != "EXPLICIT" => {
                    return Err(AppError::parse(line_no, format!("unsupported edge weight type {v:?}")));
                }
                ("EDGE_WEIGHT_FORMAT", Some(v)) if v != "FULL_MATRIX" => {
                    return Err(AppError::parse(line_no, format!("unsupported edge weight format {v:?}")));
                }
                ("EDGE_WEIGHT_TYPE" | "EDGE_WEIGHT_FORMAT" | "COMMENT", Some(_)) => {}
                ("EDGE_WEIGHT_SECTION", None) => {
                    require_dimension(dimension, line_no)?;
                    section = Section::Weights;
                    weights_started = line_no;
                }
                ("NODE_COORD_SECTION", None) => {
                    require_dimension(dimension, line_no)?;
                    coords = Some(Vec::new());
                    section = Section::Coords;
                }
                ("DEPOT_SECTION", None) => section = Section::Depot,
                ("EOF", None) => section = Section::Done,
                _ => return Err(AppError::parse(line_no, format!("unrecognised line {line:?}"))),
            }
            continue;
        }

        match section {
            Section::Weights => {
                let n = dimension.unwrap_or(0);
                for token in line.split_whitespace() {
                    let value: Cost = token
                        .parse()
                        .map_err(|_| AppError::parse(line_no, format!("invalid matrix entry {token:?}")))?;
                    weights.push(value);
                }
                if weights.len() > n * n {
                    return Err(shape_error(line_no, n, weights.len(), weights_started));
                }
            }
            Section::Coords => {
                let list = coords.as_mut().expect("coords section opened");
                let fields: Vec<&str> = line.split_whitespace().collect();
                let [id, x, y] = fields[..] else {
                    return Err(AppError::parse(line_no, "expected `index x y`"));
                };
                if id.parse::<usize>().ok() != Some(list.len() + 1) {
                    return Err(AppError::parse(line_no, format!("expected coordinate index {}", list.len() + 1)));
                }
                let number = |s: &str| {
                    s.parse::<f64>().map_err(|_| AppError::parse(line_no, format!("invalid coordinate {s:?}")))
                };
                list.push(Point::new(number(x)?, number(y)?));
            }
            Section::Depot => {
                let id: i64 =
                    line.parse().map_err(|_| AppError::parse(line_no, format!("invalid depot id {line:?}")))?;
                if id == -1 {
                    section = Section::Header;
                } else if depot.is_some() {
                    return Err(AppError::parse(line_no, "only one depot is supported"));
                } else if id < 1 {
                    return Err(AppError::parse(line_no, format!("depot id {id} must be positive")));
                } else {
                    depot = Some(id as usize - 1);
                }
            }
            Section::Header | Section::Done => {
                return Err(AppError::parse(line_no, format!("unexpected data {line:?}")));
            }
        }
    }

    let n = dimension.ok_or_else(|| AppError::invalid("missing DIMENSION"))?;
    if weights_started == 0 {
        return Err(AppError::invalid("missing EDGE_WEIGHT_SECTION"));
    }
    if weights.len() != n * n {
        return Err(shape_error(last_line + 1, n, weights.len(), weights_started));
    }
    if section != Section::Done {
        return Err(AppError::invalid("missing EOF"));
    }
    let costs: Vec<Vec<Cost>> = weights.chunks(n.max(1)).map(<[Cost]>::to_vec).collect();
    let costs = if n == 0 { Vec::new() } else { costs };
    Ok(Instance::new(name.unwrap_or_else(|| "unnamed".into()), costs, coords, depot.unwrap_or(0))?)
}

fn require_dimension(dimension: Option<usize>, line: usize) -> Result<(), AppError> {
    dimension.map(|_| ()).ok_or_else(|| AppError::parse(line, "DIMENSION must precede data sections"))
}

fn shape_error(line: usize, n: usize, found: usize, section_line: usize) -> AppError {
    AppError::parse(
        line,
        format!(
            "matrix shape error: DIMENSION {n} needs {} entries, section starting on line {section_line} has {found}",
            n * n
        ),
    )
}
