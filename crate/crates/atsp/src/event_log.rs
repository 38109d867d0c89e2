//! RFID read-event logs.
//!
//! The header must be exactly `tag_id,reader_id,timestamp_ms,x_m,y_m`; each
//! row is text, text, unsigned integer, decimal, decimal.

use std::path::Path;

use atsp_core::ReadEvent;

use crate::error::{read_file, AppError};

pub const HEADER: [&str; 5] = ["tag_id", "reader_id", "timestamp_ms", "x_m", "y_m"];

/// Events in file order.
pub fn parse_event_log(text: &str) -> Result<Vec<ReadEvent>, AppError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::None)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        None => return Err(AppError::parse(1, "missing header")),
        Some(r) => r.map_err(|e| csv_error(&e))?,
    };
    if header.iter().ne(HEADER) {
        return Err(AppError::parse(1, format!("header must be exactly {}", HEADER.join(","))));
    }

    let mut events = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != HEADER.len() {
            return Err(AppError::parse(line, format!("expected {} columns, found {}", HEADER.len(), record.len())));
        }
        let field = |i: usize| &record[i];
        let number = |i: usize| -> Result<f64, AppError> {
            field(i).trim().parse().map_err(|_| AppError::parse(line, format!("invalid {} {:?}", HEADER[i], field(i))))
        };
        let event = ReadEvent {
            tag_id: field(0).to_string(),
            reader_id: field(1).to_string(),
            timestamp_ms: field(2)
                .trim()
                .parse()
                .map_err(|_| AppError::parse(line, format!("invalid timestamp_ms {:?}", field(2))))?,
            x_m: number(3)?,
            y_m: number(4)?,
        };
        event.validate().map_err(|e| AppError::parse(line, e.to_string()))?;
        events.push(event);
    }
    Ok(events)
}

pub fn load_event_log(path: &Path) -> Result<Vec<ReadEvent>, AppError> {
    parse_event_log(&read_file(path)?)
}

fn csv_error(e: &csv::Error) -> AppError {
    match e.position() {
        Some(p) => AppError::parse(p.line() as usize, e.to_string()),
        None => AppError::invalid(e.to_string()),
    }
}
