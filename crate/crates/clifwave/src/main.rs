//! Command-line interface: analyze / synthesize / admissibility / verify /
//! export-csv over the CWF1 and CWC1 containers.
//!
//! Settings resolve in three layers: built-in defaults, then the --config
//! key=value file, then explicit flags. Exit codes: 0 success, 1 property
//! failure, 2 input error.

use clap::{Args, Parser, Subcommand};
use clifwave::cwt::{analyze_spectral, synthesize, Admissible};
use clifwave::io;
use clifwave::simgroup::{GroupGrid, GroupParams};
use clifwave::verify::{random_band_limited, run_suite, Suite};
use clifwave::wavelets::{GaborParams, GaborWavelet};
use clifwave::{Dimension, Error, GridSpec, Multivector, MultivectorField, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "clifwave", version, about = "Clifford-algebra continuous wavelet transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wavelet-transform a field and write the coefficient volume (CWC1)
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Input field (CWF1); a seeded band-limited field is generated
        /// when omitted
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Invert a coefficient volume (CWC1) back to a field (CWF1)
    Synthesize {
        #[command(flatten)]
        common: CommonArgs,
        /// Input coefficient volume (CWC1)
        #[arg(long)]
        input: PathBuf,
        /// Optional reference field (CWF1) for a reconstruction report
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Print the admissibility constant of the configured wavelet
    Admissibility {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a named property suite
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// plancherel | covariance | norm-relation | kernel | uncertainty
        #[arg(long)]
        suite: String,
        /// Number of randomized trials where the suite supports them
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Export one (scale, angle) slice of |T| as CSV
    ExportCsv {
        #[command(flatten)]
        common: CommonArgs,
        /// Input coefficient volume (CWC1)
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        scale_index: usize,
        #[arg(long, default_value_t = 0)]
        angle_index: usize,
        /// Also emit one column per blade coefficient
        #[arg(long)]
        blades: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// key = value settings file; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algebra dimension (2 or 3)
    #[arg(long)]
    n: Option<usize>,
    /// Grid points per axis (power of two)
    #[arg(long)]
    grid: Option<usize>,
    /// Half-width L of the periodic patch [-L, L)^n
    #[arg(long)]
    half_width: Option<f64>,
    /// Number of log-spaced scales
    #[arg(long)]
    scales: Option<usize>,
    /// Number of angles (per Euler axis for n = 3)
    #[arg(long)]
    angles: Option<usize>,
    /// Seed for generated fields and randomized sweeps
    #[arg(long)]
    seed: Option<u64>,
    /// Rayon thread cap; CLIFWAVE_THREADS is the fallback
    #[arg(long)]
    threads: Option<usize>,
    /// Output path
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Fully resolved run settings.
struct Settings {
    n: usize,
    grid: usize,
    half_width: f64,
    a_min: Option<f64>,
    a_max: Option<f64>,
    scales: Option<usize>,
    angles: Option<usize>,
    seed: u64,
    threads: Option<usize>,
    out: Option<PathBuf>,
    sigma: [f64; 3],
    omega0: [f64; 3],
    amplitude: Option<Vec<f64>>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            n: 2,
            grid: 32,
            half_width: 8.0,
            a_min: None,
            a_max: None,
            scales: None,
            angles: None,
            seed: 7,
            threads: None,
            out: None,
            sigma: [1.5, 1.5, 1.5],
            omega0: [2.0, 0.0, 0.0],
            amplitude: None,
        }
    }
}

fn parse_list(key: &str, value: &str, min: usize, max: usize) -> Result<Vec<f64>> {
    let parts: Vec<f64> = value
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Format(format!("config key {key}: {e}")))?;
    if parts.len() < min || parts.len() > max {
        return Err(Error::Format(format!(
            "config key {key}: expected {min}..={max} comma-separated values"
        )));
    }
    Ok(parts)
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Format(format!("config key {key}: {e}")))
}

impl Settings {
    fn resolve(common: &CommonArgs) -> Result<Self> {
        let mut s = Settings::default();
        if let Some(path) = &common.config {
            let text = std::fs::read_to_string(path)?;
            for (key, value) in io::parse_key_values(&text)? {
                s.apply(&key, &value)?;
            }
        }
        if let Some(n) = common.n {
            s.n = n;
        }
        if let Some(grid) = common.grid {
            s.grid = grid;
        }
        if let Some(l) = common.half_width {
            s.half_width = l;
        }
        if let Some(k) = common.scales {
            s.scales = Some(k);
        }
        if let Some(m) = common.angles {
            s.angles = Some(m);
        }
        if let Some(seed) = common.seed {
            s.seed = seed;
        }
        if let Some(t) = common.threads {
            s.threads = Some(t);
        } else if s.threads.is_none() {
            if let Ok(env) = std::env::var("CLIFWAVE_THREADS") {
                s.threads = Some(parse_scalar("CLIFWAVE_THREADS", &env)?);
            }
        }
        if let Some(out) = &common.out {
            s.out = Some(out.clone());
        }
        Ok(s)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.n = parse_scalar(key, value)?,
            "grid" => self.grid = parse_scalar(key, value)?,
            "half_width" => self.half_width = parse_scalar(key, value)?,
            "a_min" => self.a_min = Some(parse_scalar(key, value)?),
            "a_max" => self.a_max = Some(parse_scalar(key, value)?),
            "scales" => self.scales = Some(parse_scalar(key, value)?),
            "angles" => self.angles = Some(parse_scalar(key, value)?),
            "seed" => self.seed = parse_scalar(key, value)?,
            "threads" => self.threads = Some(parse_scalar(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "sigma" => {
                let v = parse_list(key, value, 1, 3)?;
                for (slot, x) in self.sigma.iter_mut().zip(v.iter().cycle()) {
                    *slot = *x;
                }
            }
            "omega0" => {
                let v = parse_list(key, value, 1, 3)?;
                for (i, slot) in self.omega0.iter_mut().enumerate() {
                    *slot = v.get(i).copied().unwrap_or(0.0);
                }
            }
            "amplitude" => self.amplitude = Some(parse_list(key, value, 1, 8)?),
            other => {
                return Err(Error::Format(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }

    fn dimension(&self) -> Result<Dimension> {
        Dimension::new(self.n)
    }

    fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.dimension()?, self.grid, self.half_width)
    }

    fn wavelet(&self, grid: &GridSpec) -> Result<Admissible<GaborWavelet>> {
        let dim = grid.dim();
        let amplitude = match &self.amplitude {
            None => Multivector::scalar(dim, 1.0),
            Some(coeffs) => {
                let mut m = Multivector::zero(dim);
                if coeffs.len() > dim.blade_count() {
                    return Err(Error::Format(format!(
                        "amplitude has {} blades, Cl_{} has {}",
                        coeffs.len(),
                        dim.n(),
                        dim.blade_count()
                    )));
                }
                for (mask, c) in coeffs.iter().enumerate() {
                    m.set_coeff(mask, *c);
                }
                m
            }
        };
        let psi = GaborWavelet::new(
            dim,
            GaborParams {
                sigma: self.sigma,
                omega0: self.omega0,
                amplitude,
            },
        )?;
        Admissible::new(psi, grid)
    }

    fn group(&self, grid: GridSpec) -> Result<GroupGrid> {
        let defaults = GroupGrid::default_for(grid)?;
        let d = defaults.params();
        let angles = self.angles.map(|m| {
            if grid.dim().n() == 2 {
                [m, 1, 1]
            } else {
                [m, m, m]
            }
        });
        GroupGrid::new(
            grid,
            GroupParams {
                a_min: self.a_min.unwrap_or(d.a_min),
                a_max: self.a_max.unwrap_or(d.a_max),
                n_scales: self.scales.unwrap_or(d.n_scales),
                n_angles: angles.unwrap_or(d.n_angles),
            },
        )
    }

    fn out_path(&self, default_name: &str) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from(default_name))
    }

    fn install_thread_cap(&self) {
        if let Some(t) = self.threads {
            // a pool may already exist in-process; the cap is best-effort
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
}

fn load_input_field(settings: &Settings, input: &Option<PathBuf>, grid: GridSpec) -> Result<MultivectorField> {
    match input {
        Some(path) => {
            let f = io::read_field(path)?;
            if f.grid().dim() != grid.dim() {
                return Err(Error::DimensionMismatch);
            }
            Ok(f)
        }
        None => Ok(random_band_limited(grid, settings.seed, 4)),
    }
}

fn cmd_analyze(common: &CommonArgs, input: &Option<PathBuf>) -> Result<u8> {
    let settings = Settings::resolve(common)?;
    settings.install_thread_cap();
    let grid = settings.grid_spec()?;
    let f = load_input_field(&settings, input, grid)?;
    let grid = *f.grid();
    let psi = settings.wavelet(&grid)?;
    let gg = settings.group(grid)?;
    let start = Instant::now();
    let t = analyze_spectral(&f, &psi, &gg)?;
    let elapsed = start.elapsed();
    let out = settings.out_path("out.cwc");
    io::write_volume(&out, &t)?;
    println!(
        "analyzed {} group nodes in {:.3}s; max |T| = {:.6e}; wrote {}",
        gg.node_count(),
        elapsed.as_secs_f64(),
        t.max_modulus(),
        out.display()
    );
    Ok(0)
}

fn cmd_synthesize(common: &CommonArgs, input: &Path, reference: &Option<PathBuf>) -> Result<u8> {
    let settings = Settings::resolve(common)?;
    settings.install_thread_cap();
    let t = io::read_volume(input)?;
    let grid = *t.group().translations();
    let psi = settings.wavelet(&grid)?;
    let start = Instant::now();
    let f = synthesize(&t, &psi)?;
    let elapsed = start.elapsed();
    let out = settings.out_path("out.cwf");
    io::write_field(&out, &f)?;
    println!(
        "synthesized {} samples in {:.3}s; wrote {}",
        grid.total_points(),
        elapsed.as_secs_f64(),
        out.display()
    );
    if let Some(ref_path) = reference {
        let reference = io::read_field(ref_path)?;
        let err = f.sub(&reference)?.l2_norm() / reference.l2_norm();
        println!("reconstruction relative L2 error = {err:.6e}");
    }
    Ok(0)
}

fn cmd_admissibility(common: &CommonArgs) -> Result<u8> {
    let settings = Settings::resolve(common)?;
    let grid = settings.grid_spec()?;
    let psi = settings.wavelet(&grid)?;
    let c = psi.constant();
    let dim = grid.dim();
    print!("C_psi =");
    for mask in 0..dim.blade_count() {
        print!(" {:.12e}", c.coeff(mask));
    }
    println!();
    println!("scalar part  = {:.12e}", c.scalar_part());
    println!(
        "inverse scalar part = {:.12e}",
        psi.constant_inverse().scalar_part()
    );
    Ok(0)
}

fn cmd_verify(common: &CommonArgs, suite: &str, trials: usize) -> Result<u8> {
    let settings = Settings::resolve(common)?;
    settings.install_thread_cap();
    let suite: Suite = suite.parse()?;
    let results = run_suite(suite, settings.seed, trials)?;
    let mut all = true;
    for r in &results {
        println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
        all &= r.pass;
    }
    Ok(if all { 0 } else { 1 })
}

fn cmd_export_csv(
    common: &CommonArgs,
    input: &Path,
    scale_index: usize,
    angle_index: usize,
    blades: bool,
) -> Result<u8> {
    let settings = Settings::resolve(common)?;
    let t = io::read_volume(input)?;
    match &settings.out {
        Some(path) => {
            let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
            io::export_csv(&mut w, &t, scale_index, angle_index, blades)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            io::export_csv(&mut w, &t, scale_index, angle_index, blades)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze { common, input } => cmd_analyze(common, input),
        Command::Synthesize {
            common,
            input,
            reference,
        } => cmd_synthesize(common, input, reference),
        Command::Admissibility { common } => cmd_admissibility(common),
        Command::Verify {
            common,
            suite,
            trials,
        } => cmd_verify(common, suite, *trials),
        Command::ExportCsv {
            common,
            input,
            scale_index,
            angle_index,
            blades,
        } => cmd_export_csv(common, input, *scale_index, *angle_index, *blades),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
