//! Command-line front end.
//!
//! Inputs and outputs are in natural units: energies in `mc^2`, lengths in
//! `hbar/(mc)`. An optional `[units]` section in the config file selects the
//! `m`, `hbar`, `c` the solvers actually run with; results are converted
//! back before printing.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic_square::{square_transmission, BoundState, InteriorCharacter, Parity};
use crate::error::Error;
use crate::numerics::{default_grid, find_bound_states, SolverOptions};
use crate::oracle::{
    dense_scan_spectrum, transfer_matrix_transmission, TransferSlices, DEFAULT_SLICES,
    MIN_SCAN_POINTS,
};
use crate::params::ModelParams;
use crate::potentials::{
    classify_regime, klein_gordon_coefficient, CouplingKind, PotentialProfile, Table,
};
use crate::spectra::{
    compare_couplings, conjugation_report, solve_spectrum, sweep_extent, sweep_strength,
    ShapeFamily, SolverChoice, SweepAxis, SweepRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

const DEFAULT_VERIFY_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(
    name = "kleinwell",
    version,
    about = "Klein-Gordon bound states and scattering in one dimension"
)]
struct Cli {
    /// TOML file with [units], [profile], [solver] and [output] sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound states of a profile.
    Spectrum {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reflection and transmission over an energy range.
    Scatter {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "Emin")]
        e_min: f64,
        #[arg(long = "Emax")]
        e_max: f64,
        #[arg(long = "n-energies", default_value_t = 50)]
        n_energies: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Subcritical, critical or supercritical strength.
    Regime {
        #[arg(long = "V0", allow_negative_numbers = true)]
        v0: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bound-state census over a range of strengths or lengths.
    Sweep {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, value_enum, default_value_t = AxisArg::Strength)]
        axis: AxisArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Vector and scalar spectra of the same shape.
    CompareCoupling {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled wavefunction of the `n`-th state, counted from the lowest energy.
    Wavefunction {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the solvers against the brute-force oracles.
    Verify {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ShapeArg {
    Barrier,
    Well,
    Gaussian,
    Smoothed,
    Tabulated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Strength,
    Extent,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Default)]
struct ProfileArgs {
    #[arg(long, value_enum)]
    shape: Option<ShapeArg>,
    /// Amplitude in units of mc^2.
    #[arg(long = "V0", allow_negative_numbers = true)]
    v0: Option<f64>,
    /// Half width in units of hbar/(mc).
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    diffuseness: Option<f64>,
    /// Two-column CSV with header `x,V`.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, value_parser = parse_coupling)]
    coupling: Option<CouplingKind>,
}

#[derive(Args, Debug, Default)]
struct SolverArgs {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "scan-points")]
    scan_points: Option<usize>,
    /// Use the shooting solver even for square profiles.
    #[arg(long)]
    numerov: bool,
    #[arg(long)]
    slices: Option<usize>,
    /// Cross-check against the oracles and exit 4 on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug, Default)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Written atomically; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_coupling(s: &str) -> Result<CouplingKind, String> {
    match s {
        "vector" => Ok(CouplingKind::Vector),
        "scalar" => Ok(CouplingKind::Scalar),
        other => Err(format!(
            "unknown coupling `{other}` (expected vector or scalar)"
        )),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    units: UnitsSection,
    #[serde(default)]
    profile: ProfileSection,
    #[serde(default)]
    solver: SolverSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitsSection {
    mass: f64,
    hbar: f64,
    c: f64,
}

impl Default for UnitsSection {
    fn default() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileSection {
    shape: Option<ShapeArg>,
    #[serde(rename = "V0")]
    v0: Option<f64>,
    a: Option<f64>,
    sigma: Option<f64>,
    diffuseness: Option<f64>,
    table: Option<PathBuf>,
    coupling: Option<CouplingKind>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    tol: Option<f64>,
    scan_points: Option<usize>,
    numerov: Option<bool>,
    slices: Option<usize>,
    verify: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    format: Option<Format>,
    path: Option<PathBuf>,
}

/// Everything a command needs, validated and converted to solver units.
struct Resolved {
    params: ModelParams,
    profile: Option<PotentialProfile>,
    spec: ProfileSpec,
    options: SolverOptions,
    choice: SolverChoice,
    slices: usize,
    verify: bool,
    verify_tol: f64,
    format: Format,
    output: Option<PathBuf>,
}

/// Profile description in natural units.
#[derive(Clone, Debug)]
struct ProfileSpec {
    shape: Option<ShapeArg>,
    v0: Option<f64>,
    length: Option<f64>,
    diffuseness: Option<f64>,
    table: Option<PathBuf>,
    coupling: CouplingKind,
}

enum Failure {
    Config(String),
    Solver(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InvalidTable(_)
            | Error::NotSquare
            | Error::NotScattering { .. } => Failure::Config(e.to_string()),
            other => Failure::Solver(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn config_err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Config(msg.into()))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            EXIT_SOLVER
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("KLEINWELL_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        // a pool already built by an earlier call in this process stays
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn load_config(path: Option<&Path>) -> CliResult<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = std::fs::read_to_string(path)
        .or_else(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).or_else(|e| config_err(format!("invalid config {}: {e}", path.display())))
}

fn resolve(
    config: &ConfigFile,
    profile: Option<&ProfileArgs>,
    solver: Option<&SolverArgs>,
    output: &OutputArgs,
) -> CliResult<Resolved> {
    let u = &config.units;
    let params = ModelParams::new(u.mass, u.hbar, u.c)?;
    let default_args = ProfileArgs::default();
    let p = profile.unwrap_or(&default_args);
    let f = &config.profile;
    let spec = ProfileSpec {
        shape: p.shape.or(f.shape),
        v0: p.v0.or(f.v0),
        length: p.a.or(p.sigma).or(f.a).or(f.sigma),
        diffuseness: p.diffuseness.or(f.diffuseness),
        table: p.table.clone().or_else(|| f.table.clone()),
        coupling: p.coupling.or(f.coupling).unwrap_or(CouplingKind::Vector),
    };
    let default_solver = SolverArgs::default();
    let s = solver.unwrap_or(&default_solver);
    let fs = &config.solver;
    let mut options = SolverOptions::default();
    if let Some(tol) = s.tol.or(fs.tol) {
        if !(tol > 0.0 && tol.is_finite()) {
            return config_err(format!("--tol must be positive, got {tol}"));
        }
        options.tol = tol;
    }
    if let Some(n) = s.scan_points.or(fs.scan_points) {
        if n < 10 {
            return config_err(format!("--scan-points must be at least 10, got {n}"));
        }
        options.scan_points = n;
    }
    let numerov = s.numerov || fs.numerov.unwrap_or(false);
    Ok(Resolved {
        params,
        profile: None,
        spec,
        options,
        choice: if numerov {
            SolverChoice::Numerov
        } else {
            SolverChoice::Auto
        },
        slices: s.slices.or(fs.slices).unwrap_or(DEFAULT_SLICES),
        verify: s.verify || fs.verify.unwrap_or(false),
        verify_tol: s
            .tol
            .or(fs.tol)
            .map_or(DEFAULT_VERIFY_TOL, |t| t.max(DEFAULT_VERIFY_TOL)),
        format: output.format.or(config.output.format).unwrap_or_default(),
        output: output.output.clone().or_else(|| config.output.path.clone()),
    })
}

impl ProfileSpec {
    fn shape(&self) -> CliResult<ShapeArg> {
        self.shape
            .ok_or_else(|| Failure::Config("missing --shape (or [profile] shape)".into()))
    }

    fn v0(&self) -> CliResult<f64> {
        self.v0
            .ok_or_else(|| Failure::Config("missing --V0 (or [profile] V0)".into()))
    }

    fn length(&self) -> CliResult<f64> {
        self.length
            .ok_or_else(|| Failure::Config("missing --a/--sigma (or [profile] a/sigma)".into()))
    }

    fn family(&self) -> CliResult<ShapeFamily> {
        Ok(match self.shape()? {
            ShapeArg::Barrier => ShapeFamily::SquareBarrier,
            ShapeArg::Well => ShapeFamily::SquareWell,
            ShapeArg::Gaussian => ShapeFamily::Gaussian,
            ShapeArg::Smoothed => ShapeFamily::SmoothedBarrier {
                diffuseness: self.diffuseness.ok_or_else(|| {
                    Failure::Config("smoothed profiles need --diffuseness".into())
                })?,
            },
            ShapeArg::Tabulated => {
                return config_err("tabulated profiles cannot be swept");
            }
        })
    }

    /// Builds the profile in the units of `params`.
    fn build(&self, params: &ModelParams) -> CliResult<PotentialProfile> {
        let e = |v: f64| params.energy_to_physical(v);
        let l = |x: f64| params.length_to_physical(x);
        if self.shape()? == ShapeArg::Tabulated {
            let path = self
                .table
                .as_ref()
                .ok_or_else(|| Failure::Config("tabulated profiles need --table".into()))?;
            let table = Table::from_csv_path(path).map_err(|err| match err {
                Error::Io(io) => Failure::Config(format!("cannot read {}: {io}", path.display())),
                other => Failure::from(other),
            })?;
            let scaled = Table::new(
                table.positions().iter().map(|x| l(*x)).collect(),
                table.values().iter().map(|v| e(*v)).collect(),
            )?;
            return Ok(PotentialProfile::tabulated(scaled).with_coupling(self.coupling));
        }
        let family = self.family()?;
        let diffuseness = self.diffuseness.map(l);
        let family = match family {
            ShapeFamily::SmoothedBarrier { .. } => ShapeFamily::SmoothedBarrier {
                diffuseness: diffuseness.unwrap_or_default(),
            },
            f => f,
        };
        Ok(family.build(e(self.v0()?), l(self.length()?), self.coupling)?)
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let config = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Spectrum {
            profile,
            solver,
            output,
        } => {
            let mut r = resolve(&config, Some(profile), Some(solver), output)?;
            r.profile = Some(r.spec.build(&r.params)?);
            cmd_spectrum(&r)
        }
        Command::Scatter {
            profile,
            e_min,
            e_max,
            n_energies,
            solver,
            output,
        } => {
            let mut r = resolve(&config, Some(profile), Some(solver), output)?;
            r.profile = Some(r.spec.build(&r.params)?);
            cmd_scatter(&r, *e_min, *e_max, *n_energies)
        }
        Command::Regime { v0, output } => {
            let r = resolve(&config, None, None, output)?;
            cmd_regime(&r, *v0)
        }
        Command::Sweep {
            profile,
            axis,
            from,
            to,
            step,
            solver,
            output,
        } => {
            let r = resolve(&config, Some(profile), Some(solver), output)?;
            cmd_sweep(&r, *axis, *from, *to, *step)
        }
        Command::CompareCoupling {
            profile,
            solver,
            output,
        } => {
            let r = resolve(&config, Some(profile), Some(solver), output)?;
            cmd_compare(&r)
        }
        Command::Wavefunction {
            profile,
            n,
            solver,
            output,
        } => {
            let mut r = resolve(&config, Some(profile), Some(solver), output)?;
            r.profile = Some(r.spec.build(&r.params)?);
            cmd_wavefunction(&r, *n)
        }
        Command::Verify {
            profile,
            solver,
            output,
        } => {
            let mut r = resolve(&config, Some(profile), Some(solver), output)?;
            r.profile = Some(r.spec.build(&r.params)?);
            cmd_verify(&r)
        }
    }
}

/// Fixed-width scientific notation with 15 significant digits.
fn num(x: f64) -> String {
    format!("{x:.14e}")
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(Error::from)?;
    for row in rows {
        w.write_record(&row).map_err(Error::from)?;
    }
    w.into_inner()
        .map_err(|e| Failure::Solver(Error::Io(e.into_error())))
}

fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes =
        serde_json::to_vec_pretty(value).map_err(|e| Failure::Solver(Error::Io(e.into())))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn emit(r: &Resolved, bytes: &[u8]) -> CliResult<()> {
    let io = |e: std::io::Error| Failure::Solver(Error::Io(e));
    match &r.output {
        None => std::io::stdout().lock().write_all(bytes).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(bytes).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

/// One bound state as printed by `spectrum`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRow {
    pub index: usize,
    pub energy_mc2: f64,
    pub parity: Parity,
    pub nodes: usize,
    pub residual: f64,
}

/// JSON document printed by `spectrum --format json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub coupling: CouplingKind,
    pub states: Vec<StateRow>,
}

fn state_rows(states: &[BoundState], params: &ModelParams) -> Vec<StateRow> {
    states
        .iter()
        .enumerate()
        .map(|(index, s)| StateRow {
            index,
            energy_mc2: params.energy_to_natural(s.energy),
            parity: s.parity,
            nodes: s.node_count,
            residual: s.matching_residual,
        })
        .collect()
}

fn state_csv(rows: &[StateRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|s| {
            vec![
                s.index.to_string(),
                num(s.energy_mc2),
                s.parity.as_str().to_string(),
                s.nodes.to_string(),
                num(s.residual),
            ]
        })
        .collect()
}

fn profile_of(r: &Resolved) -> &PotentialProfile {
    r.profile.as_ref().expect("profile built before dispatch")
}

fn cmd_spectrum(r: &Resolved) -> CliResult<()> {
    let profile = profile_of(r);
    let states = solve_spectrum(profile, &r.params, r.choice, &r.options)?;
    let rows = state_rows(&states, &r.params);
    let bytes = match r.format {
        Format::Csv => csv_table(
            &["index", "energy_mc2", "parity", "nodes", "residual"],
            state_csv(&rows),
        )?,
        Format::Json => json_bytes(&SpectrumReport {
            coupling: profile.coupling(),
            states: rows,
        })?,
    };
    emit(r, &bytes)?;
    if r.verify {
        let checks = spectrum_checks(r, &states)?;
        report_failures(&checks)?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
struct ScatterRow {
    energy_mc2: f64,
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "T")]
    t: f64,
    interior: InteriorCharacter,
}

/// Evanescent when the local wave number is imaginary anywhere on the slices.
fn interior_character(
    energy: f64,
    profile: &PotentialProfile,
    params: &ModelParams,
    slices: &TransferSlices,
) -> InteriorCharacter {
    let rest = params.rest_energy();
    let evanescent = slices.runs().iter().any(|&(v, _)| {
        let q = match profile.coupling() {
            CouplingKind::Vector => klein_gordon_coefficient(energy, v, params),
            CouplingKind::Scalar => energy * energy - (rest + v) * (rest + v),
        };
        q < 0.0
    });
    if evanescent {
        InteriorCharacter::Evanescent
    } else {
        InteriorCharacter::Propagating
    }
}

fn energies_between(e_min: f64, e_max: f64, n: usize) -> CliResult<Vec<f64>> {
    if !(e_min > 1.0 && e_max >= e_min && e_max.is_finite()) {
        return config_err(format!(
            "scattering needs 1 < Emin <= Emax in units of mc^2, got [{e_min}, {e_max}]"
        ));
    }
    if n == 0 {
        return config_err("--n-energies must be positive");
    }
    if n == 1 {
        return Ok(vec![e_min]);
    }
    Ok((0..n)
        .map(|i| e_min + (e_max - e_min) * i as f64 / (n - 1) as f64)
        .collect())
}

fn cmd_scatter(r: &Resolved, e_min: f64, e_max: f64, n: usize) -> CliResult<()> {
    let profile = profile_of(r);
    let energies = energies_between(e_min, e_max, n)?;
    let slices = TransferSlices::new(profile, r.slices)?;
    let mut rows = Vec::with_capacity(energies.len());
    let mut worst = (0.0f64, 0.0f64);
    for e in energies {
        let energy = r.params.energy_to_physical(e);
        let row = if profile.is_square() {
            let sp = square_transmission(profile, energy, &r.params)?;
            if r.verify {
                let (_, t_tm) = transfer_matrix_transmission(energy, &r.params, &slices)?;
                worst.0 = worst.0.max((t_tm - sp.transmission).abs());
            }
            ScatterRow {
                energy_mc2: e,
                r: sp.reflection,
                t: sp.transmission,
                interior: sp.interior,
            }
        } else {
            let (refl, trans) = transfer_matrix_transmission(energy, &r.params, &slices)?;
            ScatterRow {
                energy_mc2: e,
                r: refl,
                t: trans,
                interior: interior_character(energy, profile, &r.params, &slices),
            }
        };
        worst.1 = worst.1.max((row.r + row.t - 1.0).abs());
        rows.push(row);
    }
    let bytes = match r.format {
        Format::Csv => csv_table(
            &["energy_mc2", "R", "T", "interior"],
            rows.iter()
                .map(|p| {
                    vec![
                        num(p.energy_mc2),
                        num(p.r),
                        num(p.t),
                        p.interior.as_str().into(),
                    ]
                })
                .collect(),
        )?,
        Format::Json => json_bytes(&rows)?,
    };
    emit(r, &bytes)?;
    if r.verify {
        report_failures(&[
            Check::new("transfer_matrix_vs_closed_form", worst.0, r.verify_tol),
            Check::new("unitarity", worst.1, r.verify_tol),
        ])?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RegimeReport {
    #[serde(rename = "V0_mc2")]
    v0: f64,
    regime: crate::potentials::Regime,
}

fn cmd_regime(r: &Resolved, v0: f64) -> CliResult<()> {
    let regime = classify_regime(r.params.energy_to_physical(v0), &r.params)?;
    let bytes = match r.format {
        Format::Csv => format!("{regime}\n").into_bytes(),
        Format::Json => json_bytes(&RegimeReport { v0, regime })?,
    };
    emit(r, &bytes)
}

fn cmd_sweep(r: &Resolved, axis: AxisArg, from: f64, to: f64, step: f64) -> CliResult<()> {
    let family = r.spec.family()?;
    let p = &r.params;
    let family = match family {
        ShapeFamily::SmoothedBarrier { diffuseness } => ShapeFamily::SmoothedBarrier {
            diffuseness: p.length_to_physical(diffuseness),
        },
        f => f,
    };
    let (axis, records) = match axis {
        AxisArg::Strength => {
            let a = p.length_to_physical(r.spec.length()?);
            let range = (p.energy_to_physical(from), p.energy_to_physical(to));
            let records = sweep_strength(
                family,
                a,
                range,
                p.energy_to_physical(step),
                r.spec.coupling,
                p,
                r.choice,
                &r.options,
            )?;
            (SweepAxis::Strength, records)
        }
        AxisArg::Extent => {
            let v0 = p.energy_to_physical(r.spec.v0()?);
            let range = (p.length_to_physical(from), p.length_to_physical(to));
            let records = sweep_extent(
                family,
                v0,
                range,
                p.length_to_physical(step),
                r.spec.coupling,
                p,
                r.choice,
                &r.options,
            )?;
            (SweepAxis::Extent, records)
        }
    };
    let records: Vec<SweepRecord> = records
        .into_iter()
        .map(|mut rec| {
            rec.control = match axis {
                SweepAxis::Strength => p.energy_to_natural(rec.control),
                SweepAxis::Extent => p.length_to_natural(rec.control),
            };
            rec.energies = rec
                .energies
                .iter()
                .map(|e| p.energy_to_natural(*e))
                .collect();
            rec
        })
        .collect();
    let control_header = match axis {
        SweepAxis::Strength => "V0_mc2",
        SweepAxis::Extent => "a",
    };
    let bytes = match r.format {
        Format::Csv => csv_table(
            &[
                control_header,
                "regime",
                "n_bound",
                "n_positive",
                "energies",
            ],
            records
                .iter()
                .map(|rec| {
                    vec![
                        num(rec.control),
                        rec.regime.to_string(),
                        rec.n_bound.to_string(),
                        rec.n_positive.to_string(),
                        rec.energies
                            .iter()
                            .map(|e| num(*e))
                            .collect::<Vec<_>>()
                            .join(";"),
                    ]
                })
                .collect(),
        )?,
        Format::Json => json_bytes(&records)?,
    };
    emit(r, &bytes)
}

#[derive(Serialize)]
struct ComparisonReport {
    vector: Vec<StateRow>,
    scalar: Vec<StateRow>,
}

fn cmd_compare(r: &Resolved) -> CliResult<()> {
    let p = &r.params;
    let family = r.spec.family()?;
    let family = match family {
        ShapeFamily::SmoothedBarrier { diffuseness } => ShapeFamily::SmoothedBarrier {
            diffuseness: p.length_to_physical(diffuseness),
        },
        f => f,
    };
    let cmp = compare_couplings(
        family,
        p.energy_to_physical(r.spec.v0()?),
        p.length_to_physical(r.spec.length()?),
        p,
        r.choice,
        &r.options,
    )?;
    let report = ComparisonReport {
        vector: state_rows(&cmp.vector, p),
        scalar: state_rows(&cmp.scalar, p),
    };
    let bytes = match r.format {
        Format::Csv => {
            let mut rows = Vec::new();
            for (name, states) in [("vector", &report.vector), ("scalar", &report.scalar)] {
                for mut row in state_csv(states) {
                    row.insert(0, name.to_string());
                    rows.push(row);
                }
            }
            csv_table(
                &[
                    "coupling",
                    "index",
                    "energy_mc2",
                    "parity",
                    "nodes",
                    "residual",
                ],
                rows,
            )?
        }
        Format::Json => json_bytes(&report)?,
    };
    emit(r, &bytes)
}

#[derive(Serialize)]
struct WavefunctionReport {
    energy_mc2: f64,
    parity: Parity,
    nodes: usize,
    x: Vec<f64>,
    psi: Vec<f64>,
}

fn cmd_wavefunction(r: &Resolved, n: usize) -> CliResult<()> {
    let p = &r.params;
    let states = solve_spectrum(profile_of(r), p, r.choice, &r.options)?;
    let Some(state) = states.get(n) else {
        return config_err(format!(
            "state index {n} out of range: the profile has {} bound states",
            states.len()
        ));
    };
    // psi is normalized in solver lengths; rescale to unit norm in hbar/(mc)
    let scale = p.length_unit().sqrt();
    let report = WavefunctionReport {
        energy_mc2: p.energy_to_natural(state.energy),
        parity: state.parity,
        nodes: state.node_count,
        x: state.x.iter().map(|x| p.length_to_natural(*x)).collect(),
        psi: state.psi.iter().map(|v| v * scale).collect(),
    };
    let bytes = match r.format {
        Format::Csv => csv_table(
            &["x", "psi"],
            report
                .x
                .iter()
                .zip(&report.psi)
                .map(|(x, v)| vec![num(*x), num(*v)])
                .collect(),
        )?,
        Format::Json => json_bytes(&report)?,
    };
    emit(r, &bytes)
}

#[derive(Clone, Debug, Serialize)]
struct Check {
    check: &'static str,
    deviation: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn new(check: &'static str, deviation: f64, tolerance: f64) -> Self {
        Self {
            check,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

fn report_failures(checks: &[Check]) -> CliResult<()> {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "{} deviates by {:e} (tolerance {:e})",
                c.check, c.deviation, c.tolerance
            )
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failed.join("; ")))
    }
}

/// Largest energy difference in units of `mc^2`, infinite when the counts
/// differ.
fn max_deviation(a: &[f64], b: &[f64], params: &ModelParams) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| params.energy_to_natural((x - y).abs()))
        .fold(0.0, f64::max)
}

fn spectrum_checks(r: &Resolved, states: &[BoundState]) -> CliResult<Vec<Check>> {
    let profile = profile_of(r);
    let p = &r.params;
    let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
    let mut checks = Vec::new();
    if profile.is_square() {
        let oracle = dense_scan_spectrum(profile, p, MIN_SCAN_POINTS)?;
        checks.push(Check::new(
            "spectrum_vs_dense_scan",
            max_deviation(&energies, &oracle, p),
            r.verify_tol,
        ));
        if r.choice == SolverChoice::Auto {
            let shot = find_bound_states(profile, &default_grid(profile, p), p, &r.options)?;
            let shot: Vec<f64> = shot.iter().map(|s| s.energy).collect();
            checks.push(Check::new(
                "numerov_vs_closed_form",
                max_deviation(&shot, &energies, p),
                r.verify_tol,
            ));
        }
    } else {
        let refined =
            find_bound_states(profile, &default_grid(profile, p).refined(), p, &r.options)?;
        let refined: Vec<f64> = refined.iter().map(|s| s.energy).collect();
        checks.push(Check::new(
            "grid_refinement",
            max_deviation(&energies, &refined, p),
            r.verify_tol,
        ));
    }
    Ok(checks)
}

fn cmd_verify(r: &Resolved) -> CliResult<()> {
    let profile = profile_of(r);
    let p = &r.params;
    let states = solve_spectrum(profile, p, r.choice, &r.options)?;
    let mut checks = spectrum_checks(r, &states)?;
    if let (Some((plateau, a)), CouplingKind::Vector) = (profile.plateau(), profile.coupling()) {
        if plateau != 0.0 {
            checks.push(Check::new(
                "conjugation_mirror",
                p.energy_to_natural(conjugation_report(plateau.abs(), a, p)?),
                1e-10,
            ));
        }
    }
    let slices = TransferSlices::new(profile, r.slices)?;
    let mut unitarity = 0.0f64;
    let mut closed_form = 0.0f64;
    for e in energies_between(1.001, 10.0, 20)? {
        let energy = p.energy_to_physical(e);
        let (refl, trans) = transfer_matrix_transmission(energy, p, &slices)?;
        unitarity = unitarity.max((refl + trans - 1.0).abs());
        if profile.is_square() {
            let sp = square_transmission(profile, energy, p)?;
            closed_form = closed_form.max((sp.transmission - trans).abs());
        }
    }
    checks.push(Check::new("transfer_matrix_unitarity", unitarity, 1e-8));
    if profile.is_square() {
        checks.push(Check::new(
            "transfer_matrix_vs_closed_form",
            closed_form,
            1e-8,
        ));
    }
    let bytes = match r.format {
        Format::Csv => csv_table(
            &["check", "deviation", "tolerance", "pass"],
            checks
                .iter()
                .map(|c| {
                    vec![
                        c.check.to_string(),
                        num(c.deviation),
                        num(c.tolerance),
                        c.pass.to_string(),
                    ]
                })
                .collect(),
        )?,
        Format::Json => json_bytes(&checks)?,
    };
    emit(r, &bytes)?;
    report_failures(&checks)
}
