//! Argument parsing and the resolved run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "gup", version, about = "Propagators and spectra of the deformed Heisenberg algebra")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON file with defaults for any option; flags on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Free,
    Ho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Semiclassical,
    Spectral,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Jacobi,
    Mehler,
    EomScaling,
    KernelConsistency,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report which validity regimes a parameter set satisfies.
    Validate(Phys),
    /// Maximum free-particle velocity.
    Vmax(Phys),
    /// Classical action along the perturbative trajectory.
    Action {
        #[arg(value_enum)]
        system: System,
        #[command(flatten)]
        phys: Phys,
        /// Attach a quadrature of the Lagrangian along the trajectory.
        #[arg(long)]
        oracle: bool,
    },
    /// Propagation kernel.
    Kernel {
        #[arg(value_enum)]
        system: System,
        #[command(flatten)]
        phys: Phys,
        #[command(flatten)]
        opts: KernelOpts,
    },
    /// Oscillator levels: first-order closed form against diagonalization.
    Spectrum {
        #[command(flatten)]
        phys: Phys,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Built-in validation suites.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        #[command(flatten)]
        phys: Phys,
        #[arg(long)]
        euclidean: Option<f64>,
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Debug, Clone, Args, Default)]
pub struct Phys {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Integer link β = (n+1)α², used when --beta is absent.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub qf: Option<f64>,
    /// Real (Lorentzian) time.
    #[arg(long = "T")]
    pub t: Option<f64>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct KernelOpts {
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Euclidean time τ; the kernel is evaluated at T = −iτ.
    #[arg(long)]
    pub euclidean: Option<f64>,
    /// Number of retained levels in the spectral sum.
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub slices: Option<usize>,
    /// Monte Carlo samples; without it the lattice route uses quadrature.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Every option in one flat record. Command-line values override a
/// `--config` file, and unset fields take the documented defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    // Unset options are omitted from the echo.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qf: Option<f64>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euclidean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! overlay {
    ($dst:expr, $src:expr, $($f:ident),*) => { $( if $src.$f.is_some() { $dst.$f = $src.$f; } )* };
}

impl RunConfig {
    pub fn from_phys(phys: &Phys) -> Self {
        RunConfig {
            alpha: phys.alpha,
            beta: phys.beta,
            n: phys.n,
            mass: phys.mass,
            hbar: phys.hbar,
            omega: phys.omega,
            q0: phys.q0,
            qf: phys.qf,
            t: phys.t,
            ..Default::default()
        }
    }

    /// `self` with every field set in `top` replaced.
    pub fn overlaid(mut self, top: &RunConfig) -> Self {
        overlay!(
            self, top, alpha, beta, n, mass, hbar, omega, q0, qf, t, method, euclidean, trunc, n_max, levels, slices,
            samples, seed, oracle, format
        );
        self
    }
}

/// Fills a flat record from the parsed command line.
pub fn cli_record(cli: &Cli) -> RunConfig {
    let mut r = match &cli.command {
        Command::Validate(p) | Command::Vmax(p) => RunConfig::from_phys(p),
        Command::Action { phys, oracle, .. } => {
            RunConfig { oracle: oracle.then_some(true), ..RunConfig::from_phys(phys) }
        }
        Command::Kernel { phys, opts, .. } => RunConfig {
            method: opts.method,
            euclidean: opts.euclidean,
            trunc: opts.trunc,
            n_max: opts.n_max,
            slices: opts.slices,
            samples: opts.samples,
            seed: opts.seed,
            ..RunConfig::from_phys(phys)
        },
        Command::Spectrum { phys, n_max, levels } => {
            RunConfig { n_max: *n_max, levels: *levels, ..RunConfig::from_phys(phys) }
        }
        Command::Check { phys, euclidean, trunc, n_max, .. } => {
            RunConfig { euclidean: *euclidean, trunc: *trunc, n_max: *n_max, ..RunConfig::from_phys(phys) }
        }
    };
    r.format = cli.format;
    r
}

pub fn command_name(cmd: &Command) -> String {
    let v = |x: &dyn ValueEnumName| x.name();
    match cmd {
        Command::Validate(_) => "validate".into(),
        Command::Vmax(_) => "vmax".into(),
        Command::Action { system, .. } => format!("action {}", v(system)),
        Command::Kernel { system, .. } => format!("kernel {}", v(system)),
        Command::Spectrum { .. } => "spectrum".into(),
        Command::Check { which, .. } => format!("check {}", v(which)),
    }
}

trait ValueEnumName {
    fn name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn name(&self) -> String {
        self.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
    }
}
