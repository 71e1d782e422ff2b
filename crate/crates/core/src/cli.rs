//! Command-line front end: `index`, `cavity`, `expansion` and `dynamics`
//! sweeps written as CSV.
//!
//! Every command validates its input, computes all rows, and only then
//! writes the output file, so a failed run leaves nothing behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::cavity::{
    decay_ratio, expansion_at, rate_center, size_parameter, CavityConfig, CavityError, Orientation,
};
use crate::config::{load_material, ConfigError};
use crate::dynamics::{
    self_consistent_frequency, spectral_density, step_count, volterra_solve, DynamicsError,
    MemoryKernel,
};
use crate::materials::{is_left_handed, optical_response, uniform_grid, MaterialParams, MaterialsError};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<MaterialsError> for CliError {
    fn from(e: MaterialsError) -> Self {
        match e {
            MaterialsError::InvalidParams(_) | MaterialsError::BadFrequency(_) => Self::Config(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

impl From<CavityError> for CliError {
    fn from(e: CavityError) -> Self {
        match e {
            CavityError::InvalidConfig(_) | CavityError::ExpansionOutOfRange(_) => Self::Config(e.to_string()),
            CavityError::Materials(m) => m.into(),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::InvalidInput(_) | DynamicsError::OutsideBand { .. } => Self::Config(e.to_string()),
            DynamicsError::Cavity(c) => c.into(),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "lhm-decay", version, about = "Spontaneous decay in a cavity inside a magnetodielectric host")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ε, μ and n over a frequency sweep.
    Index {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Γ/Γ0 for an atom in the cavity.
    Cavity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        geometry: Geometry,
        /// Relative truncation tolerance of the multipole series.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Small-cavity expansion of the centre rate against the exact value.
    Expansion {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
        /// Cavity radius in units of λ_ref.
        #[arg(long)]
        radius: f64,
    },
    /// Non-Markovian evolution of the upper-state amplitude.
    Dynamics {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        geometry: Geometry,
        /// Bare transition frequency.
        #[arg(long)]
        omega_a: f64,
        #[arg(long, default_value_t = 0.1)]
        band_lo: f64,
        #[arg(long, default_value_t = 5.0)]
        band_hi: f64,
        /// Intervals of the spectral-density grid.
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        /// End time in units of 1/Γ0(ω_ref); defaults to 5/Γ.
        #[arg(long)]
        tmax: Option<f64>,
        /// Time step; defaults to tmax/1000.
        #[arg(long)]
        dt: Option<f64>,
        /// Γ0(ω_ref)/ω_ref.
        #[arg(long, default_value_t = 1e-6)]
        coupling: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Material config file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Replace both absorption parameters from the config.
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Sweep {
    #[arg(long, default_value_t = 0.8)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 1.4)]
    pub omega_max: f64,
    /// Intervals; the sweep has steps + 1 rows.
    #[arg(long, default_value_t = 600)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct Geometry {
    /// Cavity radius in units of λ_ref.
    #[arg(long)]
    pub radius: f64,
    /// Distance of the atom from the centre.
    #[arg(long, default_value_t = 0.0)]
    pub position: f64,
    #[arg(long, default_value = "radial")]
    pub orientation: Orientation,
}

impl Common {
    fn material(&self) -> Result<MaterialParams> {
        let mut p = load_material(&self.config)?;
        if let Some(g) = self.gamma {
            p = p.with_gamma(g);
            p.validate()?;
        }
        Ok(p)
    }

    fn check_out(&self) -> Result<()> {
        let dir = match self.out.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        if !dir.is_dir() {
            return Err(CliError::Config(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
        if self.out.is_dir() {
            return Err(CliError::Config(format!("{} is a directory", self.out.display())));
        }
        Ok(())
    }
}

impl Sweep {
    fn grid(&self) -> Result<Vec<f64>> {
        let (lo, hi) = (self.omega_min, self.omega_max);
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
            return Err(CliError::Config(format!("need 0 < omega-min < omega-max, got ({lo}, {hi})")));
        }
        if self.steps == 0 {
            return Err(CliError::Config("steps must be at least 1".into()));
        }
        Ok(uniform_grid(lo, hi, self.steps))
    }
}

impl Geometry {
    fn cavity(&self, p: MaterialParams) -> Result<CavityConfig> {
        Ok(CavityConfig::new(self.radius, self.position, self.orientation, p)?)
    }
}

/// A finished table: header plus rows, rendered only once complete.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(usize),
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                match c {
                    Cell::Real(x) => write!(s, "{x:.16e}"),
                    Cell::Int(n) => write!(s, "{n}"),
                }
                .unwrap();
            }
            s.push('\n');
        }
        s
    }
}

pub fn index_table(p: &MaterialParams, grid: &[f64]) -> Result<Table> {
    let rows = grid
        .par_iter()
        .map(|&w| {
            let r = optical_response(p, w)?;
            Ok(vec![
                Cell::Real(w),
                Cell::Real(r.eps.re),
                Cell::Real(r.eps.im),
                Cell::Real(r.mu.re),
                Cell::Real(r.mu.im),
                Cell::Real(r.n.re),
                Cell::Real(r.n.im),
                Cell::Int(is_left_handed(r.n) as usize),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: &["omega", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "left_handed"],
        rows,
    })
}

/// Rows that stop short of the tolerance are kept, with the estimate
/// reported in `truncation_estimate`.
pub fn cavity_table(cfg: &CavityConfig, grid: &[f64], tol: f64) -> Result<Table> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Config(format!("tol must lie in (0, 1), got {tol}")));
    }
    let rows = grid
        .par_iter()
        .map(|&w| {
            let r = match decay_ratio(w, cfg, tol) {
                Ok(r) => r,
                Err(CavityError::NonConvergence { partial }) => partial,
                Err(e) => return Err(e.into()),
            };
            Ok(vec![
                Cell::Real(w),
                Cell::Real(r.ratio),
                Cell::Int(r.terms_used),
                Cell::Real(r.truncation_estimate),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: &["omega", "gamma_ratio", "terms_used", "truncation_estimate"],
        rows,
    })
}

/// Rows where `1 + 2ε` vanishes carry NaN in the expansion columns.
pub fn expansion_table(p: &MaterialParams, radius: f64, grid: &[f64]) -> Result<Table> {
    let cfg = CavityConfig::centered(radius, *p)?;
    let z_max = size_parameter(radius, grid[grid.len() - 1]);
    if z_max >= 1.0 {
        return Err(CliError::Config(format!(
            "expansion needs 2 pi R omega < 1 over the sweep, got {z_max} at omega-max"
        )));
    }
    let rows = grid
        .par_iter()
        .map(|&w| {
            let exact = rate_center(w, &cfg)?.ratio;
            let resp = optical_response(p, w)?;
            let t = match expansion_at(size_parameter(radius, w), resp.eps, resp.mu) {
                Ok(t) => [t.leading, t.term_r3, t.term_r1, t.sum],
                Err(CavityError::ExpansionPole(_)) => [f64::NAN; 4],
                Err(e) => return Err(e.into()),
            };
            Ok(vec![
                Cell::Real(w),
                Cell::Real(exact),
                Cell::Real(t[0]),
                Cell::Real(t[1]),
                Cell::Real(t[2]),
                Cell::Real(t[3]),
                Cell::Real((t[3] - exact).abs()),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: &["omega", "exact", "leading", "term_r3", "term_r1", "sum3", "abs_err"],
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsParams {
    pub omega_a: f64,
    pub band: (f64, f64),
    pub steps: usize,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub coupling: f64,
    pub tol: f64,
}

/// Spectral density, self-consistent `ω̃_A`, then the Volterra solution.
/// `C_u` is the amplitude in the frame rotating at `ω̃_A`.
pub fn dynamics_table(cfg: &CavityConfig, d: &DynamicsParams) -> Result<Table> {
    let (lo, hi) = d.band;
    if !(lo > 0.0 && lo < d.omega_a && d.omega_a < hi && hi.is_finite()) {
        return Err(CliError::Config(format!(
            "need 0 < band-lo < omega-a < band-hi, got {lo}, {}, {hi}",
            d.omega_a
        )));
    }
    if !(d.coupling > 0.0 && d.coupling.is_finite()) {
        return Err(CliError::Config(format!("coupling must be positive, got {}", d.coupling)));
    }
    for (name, v) in [("tmax", d.t_max), ("dt", d.dt)] {
        if let Some(v) = v {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{name} must be positive, got {v}")));
            }
        }
    }
    let sd = spectral_density(cfg, lo, hi, d.steps, d.tol)?;
    let sc = self_consistent_frequency(&sd, d.omega_a, d.coupling, 0.5, 1e-13, 200)?;
    let m = sc.markov;
    let t_max = match d.t_max {
        Some(t) => t,
        None if m.gamma > 0.0 => 5.0 / m.gamma,
        None => {
            return Err(CliError::Config(
                "the rate vanishes at the transition frequency; give --tmax".into(),
            ))
        }
    };
    let dt = d.dt.unwrap_or(t_max / 1000.0);
    let n = step_count(t_max, dt)?;
    let kernel = MemoryKernel::sample(&sd, sc.omega_tilde, d.coupling, dt, n)?;
    let traj = volterra_solve(&kernel, m.delta_omega, m.gamma, t_max)?;
    let rows = traj
        .times
        .iter()
        .zip(&traj.cu)
        .map(|(&t, c)| {
            vec![
                Cell::Real(t),
                Cell::Real(c.re),
                Cell::Real(c.im),
                Cell::Real(c.norm_sqr()),
                Cell::Real(m.gamma),
                Cell::Real(m.delta_omega),
            ]
        })
        .collect();
    Ok(Table {
        header: &["t", "re_cu", "im_cu", "prob", "gamma_markov", "delta_omega"],
        rows,
    })
}

fn execute(cmd: &Command) -> Result<(Table, PathBuf)> {
    match cmd {
        Command::Index { common, sweep } => {
            let p = common.material()?;
            let grid = sweep.grid()?;
            common.check_out()?;
            Ok((index_table(&p, &grid)?, common.out.clone()))
        }
        Command::Cavity {
            common,
            sweep,
            geometry,
            tol,
        } => {
            let cfg = geometry.cavity(common.material()?)?;
            let grid = sweep.grid()?;
            common.check_out()?;
            Ok((cavity_table(&cfg, &grid, *tol)?, common.out.clone()))
        }
        Command::Expansion {
            common,
            sweep,
            radius,
        } => {
            let p = common.material()?;
            let grid = sweep.grid()?;
            common.check_out()?;
            Ok((expansion_table(&p, *radius, &grid)?, common.out.clone()))
        }
        Command::Dynamics {
            common,
            geometry,
            omega_a,
            band_lo,
            band_hi,
            steps,
            tmax,
            dt,
            coupling,
            tol,
        } => {
            let cfg = geometry.cavity(common.material()?)?;
            common.check_out()?;
            let d = DynamicsParams {
                omega_a: *omega_a,
                band: (*band_lo, *band_hi),
                steps: *steps,
                t_max: *tmax,
                dt: *dt,
                coupling: *coupling,
                tol: *tol,
            };
            Ok((dynamics_table(&cfg, &d)?, common.out.clone()))
        }
    }
}

pub fn run(cli: &Cli) -> Result<PathBuf> {
    let (table, out) = execute(&cli.command)?;
    std::fs::write(&out, table.to_csv())
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", out.display())))?;
    Ok(out)
}

/// Parses `args`, runs, reports on stderr, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("lhm-decay: {e}");
            e.exit_code()
        }
    }
}
