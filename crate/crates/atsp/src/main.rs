use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;

use atsp::bench::{emit_report, run_pilot, PilotConfig, ReportFormat};
use atsp::clock::monotonic_millis;
use atsp::error::{AppError, ExitCode};
use atsp::event_log::load_event_log;
use atsp::instance_file::{load_instance, save_instance, write_instance};
use atsp::table_check::{load_table_fixture, verify_table};
use atsp_core::{
    build_instance_from_events, generate_instance, solve_cluster_heuristic, solve_exact, solve_ga, solve_ga_sa,
    solve_k_ga, solve_k_ga_sa, solve_nearest_neighbor, solve_random_walk, solve_sa, Algorithm, Budget, GaParams,
    GeneratorConfig, Instance, KMeansParams, RandomSource, SaParams, SolveReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "atsp", version, about = "Asymmetric TSP solvers and pilot benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance with planar coordinates.
    Generate {
        #[arg(long)]
        cities: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000.0)]
        coord_box: f64,
        #[arg(long, default_value_t = 0.3)]
        asymmetry: f64,
        /// Instance file to write; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an instance from an RFID read-event log.
    Ingest {
        #[arg(long)]
        events: PathBuf,
        /// Reader id of the depot site.
        #[arg(long)]
        depot: String,
        #[arg(long, default_value_t = 0.3)]
        asymmetry: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one instance and write a JSON report.
    Solve(SolveArgs),
    /// Run the pilot comparison over generated instances.
    Bench {
        #[arg(long, default_value_t = 14)]
        cities: usize,
        #[arg(long, default_value_t = 14)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Toggle::Off)]
        exact: Toggle,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a transcribed table's percentages and list disagreeing cells.
    VerifyTable {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Maximum tour evaluations.
    #[arg(long, default_value_t = 50_000)]
    budget: u64,
    /// Wall-clock cap in milliseconds, on top of the evaluation budget.
    #[arg(long)]
    time_limit_ms: Option<u64>,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    elite: Option<usize>,
    #[arg(long)]
    tournament: Option<usize>,
    #[arg(long)]
    crossover: Option<f64>,
    #[arg(long)]
    mutation: Option<f64>,
    /// Geometric cooling ratio.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    acceptance: Option<f64>,
    /// Proposals per temperature.
    #[arg(long)]
    epoch: Option<usize>,
    /// Cluster count for the k-means family.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Exact,
    Nn,
    RandomWalk,
    Ga,
    Sa,
    GaSa,
    Kmeans,
    KGa,
    KGaSa,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
    Json,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Validation as i32 } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        process::exit(e.exit_code() as i32);
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Generate { cities, seed, coord_box, asymmetry, out } => {
            let config = GeneratorConfig { n: cities, seed, coord_box, asymmetry_alpha: asymmetry };
            let instance = generate_instance(&config, &mut RandomSource::new(seed))?;
            write_instance_to(&instance, out.as_deref())
        }
        Command::Ingest { events, depot, asymmetry, seed, out } => {
            let events = load_event_log(&events)?;
            let instance = build_instance_from_events(&events, &depot, asymmetry, &mut RandomSource::new(seed))?;
            write_instance_to(&instance, out.as_deref())
        }
        Command::Solve(args) => {
            let instance = load_instance(&args.instance)?;
            let report = solve(&instance, &args)?;
            let json = serde_json::to_string_pretty(&report).expect("report serialises");
            emit(&(json + "\n"), args.out.as_deref())
        }
        Command::Bench { cities, instances, seed, budget, exact, format, out } => {
            let config = PilotConfig {
                cities,
                instances,
                base_seed: seed,
                budget,
                exact: exact == Toggle::On,
                ..PilotConfig::default()
            };
            let rows = run_pilot(&config)?;
            let format = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Markdown => ReportFormat::Markdown,
                Format::Json => ReportFormat::Json,
            };
            emit(&emit_report(&rows, format)?, out.as_deref())
        }
        Command::VerifyTable { fixture, tolerance } => {
            let rows = load_table_fixture(&fixture)?;
            print!("{}", verify_table(&rows, tolerance));
            Ok(())
        }
    }
}

fn solve(instance: &Instance, args: &SolveArgs) -> Result<SolveReport, AppError> {
    let mut budget = Budget::new(args.budget)?;
    budget = budget.with_clock(monotonic_millis, args.time_limit_ms);
    let defaults = GaParams::default();
    let ga = GaParams {
        population_size: args.pop.unwrap_or(defaults.population_size),
        elite_count: args.elite.unwrap_or(defaults.elite_count),
        tournament_size: args.tournament.unwrap_or(defaults.tournament_size),
        crossover_rate: args.crossover.unwrap_or(defaults.crossover_rate),
        mutation_rate: args.mutation.unwrap_or(defaults.mutation_rate),
        ..defaults
    };
    let defaults = SaParams::default();
    let sa = SaParams {
        cooling_ratio: args.beta.unwrap_or(defaults.cooling_ratio),
        initial_acceptance: args.acceptance.unwrap_or(defaults.initial_acceptance),
        epoch_length: args.epoch.or(defaults.epoch_length),
        ..defaults
    };
    let km = KMeansParams { k: args.k, ..KMeansParams::default() };
    let source = &mut RandomSource::new(args.seed);
    let started = monotonic_millis();
    let mut report = match args.algo {
        Algo::Exact => solve_exact(instance, &budget),
        Algo::Nn => Ok(solve_nearest_neighbor(instance)),
        Algo::RandomWalk => solve_random_walk(instance, &budget, source),
        Algo::Ga => solve_ga(instance, &ga, &budget, source),
        Algo::Sa => solve_sa(instance, &sa, &budget, source, None),
        Algo::GaSa => solve_ga_sa(instance, &ga, &sa, &budget, source),
        Algo::Kmeans => solve_cluster_heuristic(instance, &km, source),
        Algo::KGa => solve_k_ga(instance, &km, &ga, &budget, source),
        Algo::KGaSa => solve_k_ga_sa(instance, &km, &ga, &sa, &budget, source),
    }?;
    if matches!(report.algorithm, Algorithm::Nn | Algorithm::Kmeans | Algorithm::Exact) {
        report.elapsed_millis = monotonic_millis() - started;
    }
    Ok(report)
}

fn write_instance_to(instance: &Instance, out: Option<&Path>) -> Result<(), AppError> {
    match out {
        Some(path) => save_instance(instance, path),
        None => emit(&write_instance(instance), None),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), AppError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| AppError::io(path, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| AppError::io("<stdout>", e)),
    }
}
