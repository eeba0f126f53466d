//! Command-line surface for the square-root well.
//!
//! Every subcommand prints one artifact (CSV or JSON) to standard output,
//! or to a file with `--out`. Exit codes: 0 success, 2 invalid input or
//! configuration, 3 numerical failure (unconverged mesh, broken fit).

mod config;
mod output;

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sqrtwell::afm::{self, AfmError, PrincipalN};
use sqrtwell::domain::{DomainError, PotentialParams, QuantumNumbers};
use sqrtwell::exact::{self, ExactError, MeshConfig, SpectrumResult};
use sqrtwell::fit::{self, FitError};
use sqrtwell::relmap::{self, RelmapError, SalpeterParams};

use crate::config::{FileConfig, RunConfig};
use crate::output::{Artifact, Cell, Format};

#[derive(Parser)]
#[command(
    name = "sqrtwell",
    version,
    about = "Bound-state energies for the square-root well sqrt(a^2 r^2 + b)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Printed decimal digits (1 to 15)
    #[arg(long, global = true)]
    precision: Option<u8>,
    /// Write the artifact to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Defaults file (JSON); also read from AFM_SQRTWELL_CONFIG
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy of a single level
    Eval(EvalArgs),
    /// Mesh eigenvalue of a single level, with convergence metadata
    Exact(ExactArgs),
    /// Upper/exact/fitted/lower energies on an (n, l) grid
    Table(GridArgs),
    /// Tune the principal-number coefficients against mesh spectra
    Fit(FitArgs),
    /// Bracket each level: lower bound, fitted estimate, exact, upper bound
    Bounds(GridArgs),
    /// Semirelativistic well, solved through its nonrelativistic image
    Salpeter(SalpeterArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Harmonic,
    Coulomb,
    Linear,
    Fitted,
}

impl From<VariantArg> for PrincipalN {
    fn from(v: VariantArg) -> PrincipalN {
        match v {
            VariantArg::Harmonic => PrincipalN::Harmonic,
            VariantArg::Coulomb => PrincipalN::Coulomb,
            VariantArg::Linear => PrincipalN::Linear,
            VariantArg::Fitted => PrincipalN::Fitted,
        }
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    /// Reduced mass parameter
    #[arg(long)]
    m: f64,
    /// Confinement slope
    #[arg(long)]
    a: f64,
    /// Well depth offset
    #[arg(long)]
    b: f64,
    /// Radial quantum number
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Orbital quantum number
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Principal-number prescription
    #[arg(long = "N", value_enum)]
    variant: Option<VariantArg>,
    /// Use the single-radical form; bare flag takes the configured eta
    #[arg(long, num_args = 0..=1)]
    eta: Option<Option<f64>>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ExactArgs {
    /// Reduced well depth (alternative to --m/--a/--b)
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Starting mesh size (refined automatically)
    #[arg(long)]
    mesh_size: Option<usize>,
    /// Mesh step override; omit for automatic placement
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct GridArgs {
    /// Reduced well depth
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    #[arg(long, default_value_t = 4)]
    lmax: u32,
    #[arg(long)]
    mesh_size: Option<usize>,
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FitArgs {
    /// Well depths to fit at (comma separated)
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.2,0.5,1,2,5,10,20,50,100"
    )]
    betas: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    #[arg(long, default_value_t = 4)]
    lmax: u32,
    #[arg(long)]
    mesh_size: Option<usize>,
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SalpeterArgs {
    /// Kinetic weight of the semirelativistic Hamiltonian
    #[arg(long)]
    omega: f64,
    /// Constituent mass
    #[arg(long = "M")]
    mass: f64,
    /// Quadratic confinement strength
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Principal-number prescription
    #[arg(long = "N", value_enum)]
    variant: Option<VariantArg>,
}

/// Terminal failure: message for the error stream plus a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn numerical(message: impl Display) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

fn domain_err(e: DomainError) -> Failure {
    Failure::input(e)
}

fn afm_err(e: AfmError) -> Failure {
    match e {
        AfmError::BrokenRadicand { .. } | AfmError::InvalidAuxiliaryField(_) => {
            Failure::numerical(e)
        }
        _ => Failure::input(e),
    }
}

fn exact_err(e: ExactError) -> Failure {
    match e {
        ExactError::NotConverged { .. } | ExactError::Breakdown { .. } => Failure::numerical(e),
        _ => Failure::input(e),
    }
}

fn fit_err(e: FitError) -> Failure {
    match e {
        FitError::NotAMinimum { .. } | FitError::UnconvergedGrid => Failure::numerical(e),
        FitError::Model(inner) => afm_err(inner),
        _ => Failure::input(e),
    }
}

fn relmap_err(e: RelmapError) -> Failure {
    match e {
        RelmapError::Energy(inner) => afm_err(inner),
        _ => Failure::input(e),
    }
}

fn variant_label(v: PrincipalN) -> &'static str {
    match v {
        PrincipalN::Harmonic => "harmonic",
        PrincipalN::Coulomb => "coulomb",
        PrincipalN::Linear => "linear",
        PrincipalN::Fitted => "fitted",
        PrincipalN::FittedCustom { .. } => "custom",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let file = config::load_file(cli.common.config.as_deref()).map_err(Failure::input)?;
    let cfg = config::resolve(
        &file,
        cli.common.format.map(Into::into),
        cli.common.precision,
    )
    .map_err(Failure::input)?;

    let (artifact, deferred) = match &cli.command {
        Command::Eval(args) => (cmd_eval(args, &cfg)?, None),
        Command::Exact(args) => (cmd_exact(args, &file)?, None),
        Command::Table(args) => (cmd_table(args, &file)?, None),
        Command::Fit(args) => cmd_fit(args, &file)?,
        Command::Bounds(args) => (cmd_bounds(args, &file)?, None),
        Command::Salpeter(args) => (cmd_salpeter(args, &cfg)?, None),
    };

    let text = artifact.render(cfg.format, cfg.precision as usize);
    match cli.common.out.as_deref() {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    match deferred {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn cmd_eval(args: &EvalArgs, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let params = PotentialParams::new(args.m, args.a, args.b).map_err(domain_err)?;
    let state = QuantumNumbers::new(args.n, args.l);
    let variant: PrincipalN = args.variant.map(Into::into).unwrap_or(cfg.variant);
    let beta = params.reduce().beta();
    let principal = variant.value(state, beta);
    let y = afm::offset_parameter(&params, principal);
    let quartic = afm::solve_quartic(y).map_err(afm_err)?;

    let (formula, eta_cell, estimate) = match args.eta {
        None => (
            "full",
            Cell::Empty,
            afm::energy(&params, state, variant).map_err(afm_err)?,
        ),
        Some(inner) => {
            let eta = inner.unwrap_or(cfg.eta);
            (
                "simplified",
                Cell::Num(eta),
                afm::energy_simplified(&params, state, variant, eta).map_err(afm_err)?,
            )
        }
    };

    let mut art = Artifact::new(
        "eval",
        &[
            "m", "a", "b", "n", "l", "variant", "formula", "eta", "n_used", "y", "g", "value",
            "kind",
        ],
    );
    art.parameter("m", json!(args.m));
    art.parameter("a", json!(args.a));
    art.parameter("b", json!(args.b));
    art.parameter("n", json!(args.n));
    art.parameter("l", json!(args.l));
    art.parameter("variant", json!(variant_label(variant)));
    art.parameter("formula", json!(formula));
    art.push_row(vec![
        Cell::Num(args.m),
        Cell::Num(args.a),
        Cell::Num(args.b),
        Cell::Int(i64::from(args.n)),
        Cell::Int(i64::from(args.l)),
        Cell::Text(variant_label(variant)),
        Cell::Text(formula),
        eta_cell,
        Cell::Num(principal),
        Cell::Num(y),
        Cell::Num(quartic.g),
        Cell::Num(estimate.value()),
        Cell::Text(estimate.kind().label()),
    ]);
    Ok(art)
}

fn cmd_exact(args: &ExactArgs, file: &FileConfig) -> Result<Artifact, Failure> {
    let mesh = config::mesh(file, args.mesh_size, args.scale).map_err(exact_err)?;
    let state = QuantumNumbers::new(args.n, args.l);

    let mut art = Artifact::new(
        "exact",
        &[
            "m",
            "a",
            "b",
            "beta",
            "n",
            "l",
            "value",
            "mesh_size",
            "refinement_delta",
        ],
    );
    art.parameter("n", json!(args.n));
    art.parameter("l", json!(args.l));
    art.parameter("mesh_size", json!(mesh.size()));
    art.parameter("scale", json!(mesh.scale()));

    let row = match (args.beta, args.m, args.a, args.b) {
        (Some(beta), None, None, None) => {
            art.parameter("beta", json!(beta));
            let sol = exact::solve_reduced_detailed(beta, state, mesh).map_err(exact_err)?;
            vec![
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Num(beta),
                Cell::Int(i64::from(args.n)),
                Cell::Int(i64::from(args.l)),
                Cell::Num(sol.energy.value()),
                Cell::Int(sol.mesh_size as i64),
                Cell::Sci(sol.refinement_delta),
            ]
        }
        (None, Some(m), Some(a), Some(b)) => {
            art.parameter("m", json!(m));
            art.parameter("a", json!(a));
            art.parameter("b", json!(b));
            let params = PotentialParams::new(m, a, b).map_err(domain_err)?;
            let sol = exact::solve_physical(&params, state, mesh).map_err(exact_err)?;
            vec![
                Cell::Num(m),
                Cell::Num(a),
                Cell::Num(b),
                Cell::Num(params.reduce().beta()),
                Cell::Int(i64::from(args.n)),
                Cell::Int(i64::from(args.l)),
                Cell::Num(sol.energy.value()),
                Cell::Int(sol.mesh_size as i64),
                Cell::Sci(sol.refinement_delta),
            ]
        }
        _ => {
            return Err(Failure::input(
                "pass either --beta alone or all of --m, --a, --b",
            ))
        }
    };
    art.push_row(row);
    Ok(art)
}

/// Shared spectrum-with-gate step for the grid commands.
fn converged_spectrum(args: &GridArgs, mesh: MeshConfig) -> Result<SpectrumResult, Failure> {
    let grid = exact::spectrum(args.beta, args.nmax, args.lmax, mesh).map_err(exact_err)?;
    if !grid.all_converged() {
        let bad: Vec<String> = grid
            .entries()
            .iter()
            .filter(|e| !e.converged)
            .map(|e| format!("(n={}, l={})", e.state.n, e.state.l))
            .collect();
        return Err(Failure::numerical(format!(
            "mesh did not converge at beta = {} for {}; raise --mesh-size",
            args.beta,
            bad.join(", ")
        )));
    }
    Ok(grid)
}

fn grid_parameters(art: &mut Artifact, args: &GridArgs, mesh: MeshConfig) {
    art.parameter("beta", json!(args.beta));
    art.parameter("nmax", json!(args.nmax));
    art.parameter("lmax", json!(args.lmax));
    art.parameter("mesh_size", json!(mesh.size()));
    art.parameter("scale", json!(mesh.scale()));
}

fn cmd_table(args: &GridArgs, file: &FileConfig) -> Result<Artifact, Failure> {
    let mesh = config::mesh(file, args.mesh_size, args.scale).map_err(exact_err)?;
    let grid = converged_spectrum(args, mesh)?;
    let mut art = Artifact::new("table", &["n", "l", "upper", "exact", "fitted", "lower"]);
    grid_parameters(&mut art, args, mesh);
    for entry in grid.entries() {
        let upper =
            afm::energy_reduced(args.beta, entry.state, PrincipalN::Harmonic).map_err(afm_err)?;
        let fitted =
            afm::energy_reduced(args.beta, entry.state, PrincipalN::Fitted).map_err(afm_err)?;
        let lower =
            afm::energy_reduced(args.beta, entry.state, PrincipalN::Coulomb).map_err(afm_err)?;
        art.push_row(vec![
            Cell::Int(i64::from(entry.state.n)),
            Cell::Int(i64::from(entry.state.l)),
            Cell::Num(upper.value()),
            Cell::Num(entry.energy),
            Cell::Num(fitted.value()),
            Cell::Num(lower.value()),
        ]);
    }
    Ok(art)
}

fn cmd_bounds(args: &GridArgs, file: &FileConfig) -> Result<Artifact, Failure> {
    let mesh = config::mesh(file, args.mesh_size, args.scale).map_err(exact_err)?;
    let grid = converged_spectrum(args, mesh)?;
    let mut art = Artifact::new(
        "bounds",
        &["n", "l", "lower", "approx", "exact", "upper", "sandwich"],
    );
    grid_parameters(&mut art, args, mesh);
    for entry in grid.entries() {
        let (lower, upper) = afm::bounds_reduced(args.beta, entry.state).map_err(afm_err)?;
        let approx =
            afm::energy_reduced(args.beta, entry.state, PrincipalN::Fitted).map_err(afm_err)?;
        let sandwich = lower.value() <= entry.energy && entry.energy <= upper.value();
        art.push_row(vec![
            Cell::Int(i64::from(entry.state.n)),
            Cell::Int(i64::from(entry.state.l)),
            Cell::Num(lower.value()),
            Cell::Num(approx.value()),
            Cell::Num(entry.energy),
            Cell::Num(upper.value()),
            Cell::Bool(sandwich),
        ]);
    }
    Ok(art)
}

fn cmd_fit(args: &FitArgs, file: &FileConfig) -> Result<(Artifact, Option<Failure>), Failure> {
    if args.betas.is_empty() {
        return Err(Failure::input("at least one --betas value is required"));
    }
    let mesh = config::mesh(file, args.mesh_size, args.scale).map_err(exact_err)?;

    // Depths that fail to converge or to fit are flagged and reported after
    // the partial artifact is emitted; malformed inputs abort immediately.
    let mut per_beta: Vec<(f64, Option<fit::FitSample>, Option<String>)> = Vec::new();
    for &beta in &args.betas {
        let outcome = match exact::spectrum(beta, args.nmax, args.lmax, mesh) {
            Ok(grid) => match fit::fit_ac(beta, &grid) {
                Ok(sample) => (beta, Some(sample), None),
                Err(
                    e @ (FitError::NotAMinimum { .. }
                    | FitError::UnconvergedGrid
                    | FitError::Model(_)),
                ) => (beta, None, Some(e.to_string())),
                Err(e) => return Err(fit_err(e)),
            },
            Err(e @ ExactError::Breakdown { .. }) => (beta, None, Some(e.to_string())),
            Err(e) => return Err(exact_err(e)),
        };
        per_beta.push(outcome);
    }

    let samples: Vec<fit::FitSample> = per_beta.iter().filter_map(|(_, s, _)| *s).collect();
    let global = match fit::fit_hyperbolic(&samples) {
        Ok(h) => Some(h),
        Err(FitError::DegenerateSamples { .. }) => None,
        Err(e) => return Err(fit_err(e)),
    };

    let mut art = Artifact::new(
        "fit",
        &[
            "beta", "a", "c", "chi", "status", "a_ref", "c_ref", "a_curve", "c_curve", "a_num",
            "a_den", "c_num", "c_den",
        ],
    );
    art.parameter("betas", json!(args.betas));
    art.parameter("nmax", json!(args.nmax));
    art.parameter("lmax", json!(args.lmax));
    art.parameter("mesh_size", json!(mesh.size()));
    art.parameter("scale", json!(mesh.scale()));
    if let Some(h) = &global {
        art.meta(
            "fit",
            json!({
                "a_num": h.a_num,
                "a_den": h.a_den,
                "c_num": h.c_num,
                "c_den": h.c_den,
            }),
        );
    }

    for (beta, sample, _) in &per_beta {
        let (a_ref, c_ref) = fit::hyperbolic_ac(*beta);
        let mut row = match sample {
            Some(s) => vec![
                Cell::Num(*beta),
                Cell::Num(s.a),
                Cell::Num(s.c),
                Cell::Sci(s.chi),
                Cell::Text("ok"),
            ],
            None => vec![
                Cell::Num(*beta),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Text("failed"),
            ],
        };
        row.push(Cell::Num(a_ref));
        row.push(Cell::Num(c_ref));
        match &global {
            Some(h) => {
                row.push(Cell::Num(h.a_at(*beta)));
                row.push(Cell::Num(h.c_at(*beta)));
                row.push(Cell::Num(h.a_num));
                row.push(Cell::Num(h.a_den));
                row.push(Cell::Num(h.c_num));
                row.push(Cell::Num(h.c_den));
            }
            None => row.extend([
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ]),
        }
        art.push_row(row);
    }

    let failed: Vec<String> = per_beta
        .iter()
        .filter_map(|(beta, _, err)| err.as_ref().map(|e| format!("beta = {beta}: {e}")))
        .collect();
    let deferred = if failed.is_empty() {
        None
    } else {
        Some(Failure::numerical(format!(
            "fit incomplete; {}",
            failed.join("; ")
        )))
    };
    Ok((art, deferred))
}

fn cmd_salpeter(args: &SalpeterArgs, cfg: &RunConfig) -> Result<Artifact, Failure> {
    let sp = SalpeterParams::new(args.omega, args.mass, args.sigma).map_err(relmap_err)?;
    if !sp.omega_in_calibrated_window() {
        eprintln!(
            "warning: omega = {} is outside the calibrated window (1 or 2); \
             the mapped spectrum has no direct physical reading",
            args.omega
        );
    }
    let state = QuantumNumbers::new(args.n, args.l);
    let variant: PrincipalN = args.variant.map(Into::into).unwrap_or(cfg.variant);
    let well = relmap::from_salpeter(&sp).map_err(relmap_err)?;
    let estimate = relmap::salpeter_spectrum(&sp, state, variant).map_err(relmap_err)?;

    let mut art = Artifact::new(
        "salpeter",
        &[
            "omega", "mass", "sigma", "m", "a", "b", "n", "l", "variant", "value", "kind",
        ],
    );
    art.parameter("omega", json!(args.omega));
    art.parameter("mass", json!(args.mass));
    art.parameter("sigma", json!(args.sigma));
    art.parameter("n", json!(args.n));
    art.parameter("l", json!(args.l));
    art.parameter("variant", json!(variant_label(variant)));
    art.push_row(vec![
        Cell::Num(args.omega),
        Cell::Num(args.mass),
        Cell::Num(args.sigma),
        Cell::Num(well.m()),
        Cell::Num(well.a()),
        Cell::Num(well.b()),
        Cell::Int(i64::from(args.n)),
        Cell::Int(i64::from(args.l)),
        Cell::Text(variant_label(variant)),
        Cell::Num(estimate.value()),
        Cell::Text(estimate.kind().label()),
    ]);
    Ok(art)
}
