//! The `qwalk` command line.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::compare::{compare, DEFAULT_BIN_WIDTH};
use super::output::{emit, Cell, RunManifest, Table};
use super::parse::{j_from_states, parse_j, parse_list, resolve_qudit, Angle, Grid, QuditSource};
use crate::analysis::{critical_j, h_scaled, h_table, rescaled_density, ScanParity};
use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::limit::{LimitDensity, LimitSpec};
use crate::qudit::Qudit;
use crate::walk::{evolve, position_distribution, pseudovelocity_moment};
use crate::wigner::EulerAngles;

fn angle_arg(s: &str) -> std::result::Result<Angle, String> {
    s.parse().map_err(|e: WalkError| e.to_string())
}

fn j_arg(s: &str) -> std::result::Result<HalfInt, String> {
    parse_j(s).map_err(|e| e.to_string())
}

fn grid_arg(s: &str) -> std::result::Result<Grid, String> {
    s.parse().map_err(|e: WalkError| e.to_string())
}

fn parse_states(s: &str) -> Result<Vec<HalfInt>> {
    let n: Vec<usize> = parse_list(s)?;
    n.into_iter().map(j_from_states).collect()
}

fn parse_js(s: &str) -> Result<Vec<HalfInt>> {
    s.split(',').map(|p| parse_j(p.trim())).collect()
}

fn positive_width(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(w) if w > 0.0 && w.is_finite() => Ok(w),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Quantum walks with Wigner coins: simulation, exact limit densities and scans"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Position distribution P(x, t) of a simulated walk.
    Simulate(SimulateArgs),
    /// Continuous part of the limit density on a grid of pseudovelocities.
    Density(DensityArgs),
    /// Limit moments, optionally next to simulated ones.
    Moments(MomentsArgs),
    /// Simulation against the limit: moments and binned densities.
    Compare(CompareArgs),
    /// Tables of curvature, critical j, pike weights and rescaled densities.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
}

#[derive(Debug, Args)]
struct CoinArgs {
    /// Spin label, "11/2" or "5"; optional when --qudit names a file.
    #[arg(long, value_parser = j_arg)]
    j: Option<HalfInt>,
    #[arg(long, value_parser = angle_arg, default_value = "0", allow_hyphen_values = true)]
    alpha: Angle,
    #[arg(long, value_parser = angle_arg, allow_hyphen_values = true)]
    beta: Angle,
    #[arg(long, value_parser = angle_arg, default_value = "0", allow_hyphen_values = true)]
    gamma: Angle,
    /// Preset (up, paper-sym, fig1b, center) or a file of `re,im` lines.
    #[arg(long, default_value = "paper-sym")]
    qudit: String,
}

struct Coin {
    qudit: Qudit,
    source: QuditSource,
    angles: EulerAngles,
}

impl CoinArgs {
    fn resolve(&self) -> Result<Coin> {
        let (qudit, source) = resolve_qudit(&self.qudit, self.j)?;
        let angles = EulerAngles::new(self.alpha.radians, self.beta.radians, self.gamma.radians)?;
        Ok(Coin { qudit, source, angles })
    }

    fn record(&self, coin: &Coin, m: &mut RunManifest) {
        let amps: Vec<[f64; 2]> = coin.qudit.amplitudes().iter().map(|z| [z.re, z.im]).collect();
        m.param("j2", coin.qudit.j().doubled())
            .param("alpha", &self.alpha)
            .param("beta", &self.beta)
            .param("gamma", &self.gamma)
            .param("qudit", &coin.source)
            .param("qudit_amplitudes", amps);
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    coin: CoinArgs,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    coin: CoinArgs,
    /// lo:hi:n
    #[arg(long, value_parser = grid_arg, allow_hyphen_values = true)]
    grid: Grid,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    coin: CoinArgs,
    #[arg(long, default_value_t = 4)]
    rmax: u32,
    /// Also simulate to this time and report the finite-time moments.
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    coin: CoinArgs,
    #[arg(long, default_value_t = 200)]
    t: u32,
    #[arg(long, value_parser = positive_width, default_value_t = DEFAULT_BIN_WIDTH)]
    bin_width: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SpinSet {
    /// Comma-separated spin labels.
    #[arg(long, conflicts_with = "states")]
    j: Option<String>,
    /// Comma-separated numbers of states 2j+1.
    #[arg(long)]
    states: Option<String>,
}

impl SpinSet {
    fn list(&self) -> Result<Vec<HalfInt>> {
        match (&self.j, &self.states) {
            (Some(j), _) => parse_js(j),
            (None, Some(s)) => parse_states(s),
            (None, None) => Err(WalkError::usage("one of --j or --states is required")),
        }
    }
}

#[derive(Debug, Subcommand)]
enum ScanKind {
    /// Closed-form curvature of the limit density at the origin over j.
    D2 {
        #[arg(long, value_parser = angle_arg)]
        beta: Angle,
        #[arg(long, value_parser = j_arg)]
        jmax: HalfInt,
        /// Include integer j (odd 2j+1) in the scan.
        #[arg(long)]
        all_parity: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Critical j for several coin angles.
    Jc {
        /// Comma-separated angles.
        #[arg(long)]
        betas: String,
        #[arg(long, value_parser = j_arg)]
        jmax: HalfInt,
        #[arg(long)]
        all_parity: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pike weights H(m).
    Hfun {
        #[command(flatten)]
        spins: SpinSet,
        #[arg(long, value_parser = angle_arg)]
        beta: Angle,
        #[arg(long)]
        out: PathBuf,
    },
    /// sigma_j H(m) against m / sigma_j.
    Hscaled {
        #[command(flatten)]
        spins: SpinSet,
        #[arg(long, value_parser = angle_arg)]
        beta: Angle,
        #[arg(long)]
        out: PathBuf,
    },
    /// Densities of X / (2j cos(beta/2)) for the symmetric preset qudit.
    Rescaled {
        #[command(flatten)]
        spins: SpinSet,
        #[arg(long, value_parser = angle_arg)]
        beta: Angle,
        #[arg(long, value_parser = angle_arg, default_value = "0", allow_hyphen_values = true)]
        gamma: Angle,
        #[arg(long, value_parser = grid_arg, default_value = "-1:1:401", allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qwalk: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &WalkError) -> i32 {
    match e {
        WalkError::Usage(_) => 2,
        _ => 1,
    }
}

fn dispatch(cli: Cli, argv: &[String]) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => simulate(a, argv),
        Command::Density(a) => density(a, argv),
        Command::Moments(a) => moments(a, argv),
        Command::Compare(a) => compare_cmd(a, argv),
        Command::Scan { kind } => scan(kind, argv),
    }
}

fn announce(path: &Path, manifest: &Path) {
    println!("wrote {} and {}", path.display(), manifest.display());
}

fn simulate(a: SimulateArgs, argv: &[String]) -> Result<()> {
    let coin = a.coin.resolve()?;
    let dist = position_distribution(&evolve(&coin.qudit, coin.angles, a.t));
    let mut table = Table::new(&["x", "p"]);
    for &(x, p) in &dist.points {
        table.push(vec![Cell::Int(x), Cell::Real(p)]);
    }
    let mut m = RunManifest::new("simulate", argv);
    a.coin.record(&coin, &mut m);
    m.param("t", a.t).result("total_probability", dist.total());
    let mpath = emit(&table, &a.out, &mut m)?;
    announce(&a.out, &mpath);
    Ok(())
}

fn limit_density(coin: &Coin) -> Result<LimitDensity> {
    LimitDensity::new(LimitSpec::new(coin.qudit.clone(), coin.angles.beta, coin.angles.gamma)?)
}

fn record_limit(density: &LimitDensity, m: &mut RunManifest) -> Result<()> {
    let spec = density.spec();
    m.result("delta_mass", density.delta_mass()?)
        .result("support_half_width", spec.reach())
        .result("degeneracy", spec.degeneracy());
    Ok(())
}

fn density(a: DensityArgs, argv: &[String]) -> Result<()> {
    let coin = a.coin.resolve()?;
    let density = limit_density(&coin)?;
    let mut m = RunManifest::new("density", argv);
    a.coin.record(&coin, &mut m);
    m.param("grid", a.grid);
    record_limit(&density, &mut m)?;
    let mut table = Table::new(&["v", "nu"]);
    for v in a.grid.points() {
        table.push(vec![Cell::Real(v), Cell::Real(density.nu_continuous(v)?)]);
    }
    let mpath = emit(&table, &a.out, &mut m)?;
    announce(&a.out, &mpath);
    Ok(())
}

fn moments(a: MomentsArgs, argv: &[String]) -> Result<()> {
    let coin = a.coin.resolve()?;
    let density = limit_density(&coin)?;
    let mut m = RunManifest::new("moments", argv);
    a.coin.record(&coin, &mut m);
    m.param("rmax", a.rmax).param("t", a.t);
    record_limit(&density, &mut m)?;
    let dist = match a.t {
        Some(0) => return Err(WalkError::domain("pseudovelocity moments need t >= 1")),
        Some(t) => Some((t, position_distribution(&evolve(&coin.qudit, coin.angles, t)))),
        None => None,
    };
    let mut table = if dist.is_some() {
        Table::new(&["r", "limit", "simulated", "abs_error"])
    } else {
        Table::new(&["r", "limit"])
    };
    for r in 0..=a.rmax {
        let limit = density.limit_moment(r)?;
        let mut row = vec![Cell::Int(r as i64), Cell::Real(limit)];
        if let Some((t, d)) = &dist {
            let sim = pseudovelocity_moment(d, *t, r)?;
            row.push(Cell::Real(sim));
            row.push(Cell::Real((sim - limit).abs()));
        }
        table.push(row);
    }
    let mpath = emit(&table, &a.out, &mut m)?;
    announce(&a.out, &mpath);
    Ok(())
}

fn compare_cmd(a: CompareArgs, argv: &[String]) -> Result<()> {
    let coin = a.coin.resolve()?;
    let (report, bins) = compare(&coin.qudit, coin.angles, a.t, a.bin_width)?;
    let mut table = Table::new(&["v", "simulated_density", "limit_density"]);
    let w = bins.bins.width;
    for k in 0..bins.bins.count {
        table.push(vec![
            Cell::Real(bins.bins.center(k)),
            Cell::Real(bins.simulated[k] / w),
            Cell::Real(bins.limit[k] / w),
        ]);
    }
    let mut m = RunManifest::new("compare", argv);
    a.coin.record(&coin, &mut m);
    m.param("t", a.t).param("bin_width", a.bin_width).result("report", &report);
    let mpath = emit(&table, &a.out, &mut m)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    announce(&a.out, &mpath);
    Ok(())
}

fn parity(all: bool) -> ScanParity {
    if all {
        ScanParity::All
    } else {
        ScanParity::EvenStates
    }
}

fn scan(kind: ScanKind, argv: &[String]) -> Result<()> {
    let (table, out, mut m) = match kind {
        ScanKind::D2 {
            beta,
            jmax,
            all_parity,
            out,
        } => {
            let report = critical_j(beta.radians, jmax, parity(all_parity))?;
            let mut table = Table::new(&["j2", "states", "d2"]);
            for &(j, d2) in &report.rows {
                table.push(vec![Cell::Int(j.doubled() as i64), j.dim().into(), Cell::Real(d2)]);
            }
            let mut m = RunManifest::new("scan d2", argv);
            m.param("beta", &beta)
                .param("jmax2", jmax.doubled())
                .param("parity", report.parity)
                .result("j_critical2", report.j_critical.map(HalfInt::doubled));
            (table, out, m)
        }
        ScanKind::Jc {
            betas,
            jmax,
            all_parity,
            out,
        } => {
            let betas: Vec<Angle> = parse_list(&betas)?;
            let mut table = Table::new(&["beta", "j_critical2", "states_critical"]);
            for beta in &betas {
                let report = critical_j(beta.radians, jmax, parity(all_parity))?;
                let (j2, states) = match report.j_critical {
                    Some(j) => (Cell::Int(j.doubled() as i64), j.dim().into()),
                    None => (Cell::Empty, Cell::Empty),
                };
                table.push(vec![Cell::Real(beta.radians), j2, states]);
            }
            let mut m = RunManifest::new("scan jc", argv);
            m.param("betas", &betas)
                .param("jmax2", jmax.doubled())
                .param("parity", parity(all_parity));
            (table, out, m)
        }
        ScanKind::Hfun { spins, beta, out } => {
            let js = spins.list()?;
            let mut table = Table::new(&["states", "m2", "m", "H"]);
            for &j in &js {
                for (mm, hv) in h_table(j, beta.radians)? {
                    table.push(vec![
                        j.dim().into(),
                        Cell::Int(mm.doubled() as i64),
                        Cell::Real(mm.value()),
                        Cell::Real(hv),
                    ]);
                }
            }
            let mut m = RunManifest::new("scan hfun", argv);
            m.param("beta", &beta)
                .param("j2", js.iter().map(|j| j.doubled()).collect::<Vec<_>>());
            (table, out, m)
        }
        ScanKind::Hscaled { spins, beta, out } => {
            let js = spins.list()?;
            let mut table = Table::new(&["states", "m_over_sigma", "sigma_H"]);
            for &j in &js {
                for (x, y) in h_scaled(j, beta.radians)? {
                    table.push(vec![j.dim().into(), Cell::Real(x), Cell::Real(y)]);
                }
            }
            let mut m = RunManifest::new("scan hscaled", argv);
            m.param("beta", &beta)
                .param("j2", js.iter().map(|j| j.doubled()).collect::<Vec<_>>());
            (table, out, m)
        }
        ScanKind::Rescaled {
            spins,
            beta,
            gamma,
            grid,
            out,
        } => {
            let js = spins.list()?;
            let mut table = Table::new(&["states", "u", "density"]);
            let mut deltas = Vec::new();
            for &j in &js {
                let spec = LimitSpec::new(Qudit::symmetric(j), beta.radians, gamma.radians)?;
                let density = LimitDensity::new(spec)?;
                deltas.push(json!({ "states": j.dim(), "delta_mass": density.delta_mass()? }));
                for u in grid.points() {
                    table.push(vec![j.dim().into(), Cell::Real(u), Cell::Real(rescaled_density(&density, u)?)]);
                }
            }
            let mut m = RunManifest::new("scan rescaled", argv);
            m.param("beta", &beta)
                .param("gamma", &gamma)
                .param("grid", grid)
                .param("qudit", QuditSource::Preset {
                    name: "paper-sym".into(),
                })
                .param("j2", js.iter().map(|j| j.doubled()).collect::<Vec<_>>())
                .result("delta_masses", deltas);
            (table, out, m)
        }
    };
    let mpath = emit(&table, &out, &mut m)?;
    announce(&out, &mpath);
    Ok(())
}
