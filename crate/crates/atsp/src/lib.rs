//! File formats, RFID event ingestion and the pilot benchmark harness built
//! on `atsp-core`.

pub mod bench;
pub mod clock;
pub mod error;
pub mod event_log;
pub mod instance_file;
pub mod table_check;

pub use bench::{emit_report, parse_report_csv, run_pilot, PilotConfig, PilotRow, ReportFormat};
pub use error::{AppError, ExitCode};
pub use event_log::{load_event_log, parse_event_log};
pub use instance_file::{load_instance, parse_instance, save_instance, write_instance};
pub use table_check::{verify_table, CellCheck, TableCheck, TableRow};
