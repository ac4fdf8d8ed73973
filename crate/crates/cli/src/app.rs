//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use maxplus_transience::analysis::analyze_instance;
use maxplus_transience::bounds::BoundsReport;
use maxplus_transience::full_reversal::{fr_matrix, fr_run, verify_work_recurrence, FRGraph, FROutcome, Mode};
use maxplus_transience::graph::DEFAULT_NODE_CAP;
use maxplus_transience::oracle::{
    matrix_transient_within, system_transient_within, OracleContext,
};
use maxplus_transience::{Matrix, Rational, Vector, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{parse_graph, parse_instance, parse_vector, write_instance, Instance};
use crate::generate::{irreducible_matrix, parse_range};
use crate::report::{
    render_table, AnalysisDocument, BoundsDocument, BoundsSection, CriticalSection, FullReversalDocument,
    GraphSection, TransientDocument, TransientSection, Q,
};
use crate::verify::{self, Harness, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "maxplus", version, about = "Transients of max-plus linear systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Instance file: `N`, then `N` rows, then optionally a blank line and a vector.
    pub file: PathBuf,
    /// Initial vector, overriding one in the instance file.
    #[arg(long)]
    pub vector: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    /// Largest node count for exponential searches.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parameters, bounds, exact transients and slacks.
    Analyze(InstanceArgs),
    /// Parameters and bounds only.
    Bounds(InstanceArgs),
    /// Exact transients and periods only.
    Transient(InstanceArgs),
    /// Check every property on random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest node count.
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, default_value = "-3..3", value_parser = parse_range)]
        weights: (i64, i64),
        #[arg(long)]
        density: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: usize,
    },
    /// Simulate greedy Full Reversal on an edge-list graph.
    FullReversal {
        file: PathBuf,
        #[arg(long, default_value = "routing")]
        mode: Mode,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: usize,
    },
    /// Print a random irreducible instance.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value = "-3..3", value_parser = parse_range)]
        weights: (i64, i64),
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs the command line, writing to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, document: &T, json: bool) -> CliResult<()> {
    if json {
        let text = serde_json::to_string_pretty(document).map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        write!(out, "{}", render_table(document))?;
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_instance(args: &InstanceArgs) -> CliResult<Instance> {
    let mut instance = parse_instance(&read(&args.file)?)?;
    if let Some(path) = &args.vector {
        instance.vector = Some(parse_vector(&read(path)?)?);
    }
    if let Some(v) = &instance.vector {
        if v.dim() != instance.matrix.rows() {
            return Err(CliError::Input(format!(
                "vector of dimension {} for a {}-node matrix",
                v.dim(),
                instance.matrix.rows()
            )));
        }
    }
    Ok(instance)
}

pub fn analysis_document(a: &Matrix, v: Option<&Vector>, cap: usize) -> CliResult<AnalysisDocument> {
    Ok(AnalysisDocument::new(&analyze_instance(a, v, cap)?))
}

pub fn bounds_document(a: &Matrix, v: Option<&Vector>, cap: usize) -> CliResult<BoundsDocument> {
    let ctx = OracleContext::new(a, cap)?;
    let bounds = BoundsReport::compute(&ctx.critical, &ctx.params, v, ctx.graph.has_integer_weights())?;
    Ok(BoundsDocument {
        graph: GraphSection::from(&ctx.params),
        critical: CriticalSection::from(&ctx.critical),
        bounds: BoundsSection::from(&bounds),
    })
}

pub fn transient_document(a: &Matrix, v: Option<&Vector>, cap: usize) -> CliResult<TransientDocument> {
    let ctx = OracleContext::new(a, cap)?;
    let matrix = matrix_transient_within(a, &ctx, ctx.matrix_horizon()?)?;
    let system = match v {
        Some(v) => Some(system_transient_within(a, v, &ctx, ctx.system_horizon(v)?)?),
        None => None,
    };
    Ok(TransientDocument {
        rho: Q(ctx.critical.rho),
        c_of_a: ctx.c_of_a(),
        transient: TransientSection::new(&matrix, system.as_ref()),
    })
}

pub fn full_reversal_document(g0: &FRGraph, horizon: Option<usize>, cap: usize) -> CliResult<FullReversalDocument> {
    let n = g0.node_count();
    let tree = g0.edges().filter(|(u, v)| u != v).count() == n - 1;
    let horizon = horizon.unwrap_or(n * n * n + 4 * n + 4);
    let trace = fr_run(g0, horizon)?;
    let a: Matrix = fr_matrix(g0);
    let recurrence_holds = verify_work_recurrence(&trace, &a);
    let (bound, bound_name) = match (g0.mode(), tree) {
        (Mode::Routing, true) => (2 * (n - 1), "2(N-1)"),
        (Mode::Routing, false) => ((n - 1) * (n - 1), "(N-1)^2"),
        (Mode::Scheduling, true) if n >= 4 => (6 * (n - 3), "6(N-3)"),
        (Mode::Scheduling, _) => ((n * n * (n - 1)).div_ceil(4).max(n * n), "max(N^2(N-1)/4, N^2)"),
    };
    let (rho, b_system) = if n <= cap {
        let zero = Vector::new(vec![Weight::zero(); n])?;
        let ctx = OracleContext::new(&a, cap)?;
        let bounds = BoundsReport::compute(&ctx.critical, &ctx.params, Some(&zero), true)?;
        (Some(Q(ctx.critical.rho)), bounds.best_system_bound().map(Q))
    } else {
        (None, None)
    };
    let (theta, transient, period) = match trace.outcome {
        FROutcome::Terminated { theta } => (Some(theta), None, None),
        FROutcome::Periodic { transient, period } => (None, Some(transient), Some(period)),
    };
    Ok(FullReversalDocument {
        mode: g0.mode().to_string(),
        nodes: n,
        tree,
        steps: trace.graphs.len() - 1,
        theta,
        transient,
        period,
        final_work: trace.work.last().cloned().unwrap_or_default(),
        destination_oriented: (g0.mode() == Mode::Routing).then(|| trace.final_graph().is_destination_oriented()),
        bound: Some(Q(Rational::from(bound as i64))),
        bound_name: Some(bound_name.to_string()),
        rho,
        b_system,
        recurrence_holds,
    })
}

impl FullReversalDocument {
    pub fn violations(&self) -> Vec<String> {
        let mut found = Vec::new();
        let observed = self.theta.or(self.transient).unwrap_or(0);
        if let (Some(bound), Some(name)) = (&self.bound, &self.bound_name) {
            if Rational::from(observed as i64) > bound.0 {
                found.push(format!("{observed} exceeds {name} = {bound}"));
            }
        }
        if let Some(b) = &self.b_system {
            if observed > maxplus_transience::scalar::ceil_usize(&b.0) {
                found.push(format!("{observed} exceeds the system bound {b}"));
            }
        }
        if !self.recurrence_holds {
            found.push("work vectors do not follow the min-plus recurrence".into());
        }
        if self.destination_oriented == Some(false) {
            found.push("final graph is not destination-oriented".into());
        }
        found
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Analyze(args) => {
            let instance = load_instance(&args)?;
            let document = analysis_document(&instance.matrix, instance.vector.as_ref(), args.cap)?;
            emit(out, &document, args.json)?;
            let violated = document.violated_bounds();
            if violated.is_empty() {
                Ok(0)
            } else {
                Err(CliError::Violation(format!("transient exceeds {}", violated.join(", "))))
            }
        }
        Command::Bounds(args) => {
            let instance = load_instance(&args)?;
            emit(out, &bounds_document(&instance.matrix, instance.vector.as_ref(), args.cap)?, args.json)?;
            Ok(0)
        }
        Command::Transient(args) => {
            let instance = load_instance(&args)?;
            emit(out, &transient_document(&instance.matrix, instance.vector.as_ref(), args.cap)?, args.json)?;
            Ok(0)
        }
        Command::Verify { seed, count, nodes, weights, density, json, cap } => {
            if nodes == 0 {
                return Err(CliError::Input("--nodes must be positive".into()));
            }
            if let Some(p) = density {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(CliError::Input(format!("density must lie in (0, 1], got {p}")));
                }
            }
            let config = VerifyConfig { seed, count, max_nodes: nodes, weights, density, cap, ..VerifyConfig::default() };
            let summary = verify::run(&config, Harness::default());
            if json {
                emit(out, &summary, true)?;
            } else {
                writeln!(
                    out,
                    "seed {}: {} instances, {} checks, {} violations",
                    summary.seed,
                    summary.instances,
                    summary.checks,
                    summary.violations.len()
                )?;
                for v in &summary.violations {
                    writeln!(out, "instance {} failed {}: {}\n{}", v.index, v.check, v.detail, v.instance)?;
                }
            }
            Ok(summary.exit_code())
        }
        Command::FullReversal { file, mode, horizon, json, cap } => {
            let g0 = parse_graph(&read(&file)?, mode)?;
            let document = full_reversal_document(&g0, horizon, cap)?;
            emit(out, &document, json)?;
            let violations = document.violations();
            if violations.is_empty() {
                Ok(0)
            } else {
                Err(CliError::Violation(violations.join("; ")))
            }
        }
        Command::Gen { nodes, density, weights, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let matrix = irreducible_matrix(&mut rng, nodes, density, weights)?;
            write!(out, "{}", write_instance(&Instance { matrix, vector: None }))?;
            Ok(0)
        }
    }
}

