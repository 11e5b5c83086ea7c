//! Command-line front end: synthesize shapes, analyze fields, reconstruct,
//! compute SHE curves, select reconstruction orders, dump spectra, and
//! benchmark the two basis-evaluation strategies.
//!
//! Exit codes: 0 success, 2 validation/domain, 3 I/O or parse,
//! 4 numerical (degenerate input, budget), 5 no convergence.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sphentropy::entropy::{
    level_spectrum, select_order_with, she_curve_with, SelectionCriterion, SheOptions,
};
use sphentropy::error::Error;
use sphentropy::io;
use sphentropy::shapes::{self, BumpTerm, GridSpec, OutputForm, ShapeKind, ShapeSpec};
use sphentropy::transform::{
    analyze, real_ab_coefficients, reconstruct_surface, residual_norm, synthesize,
    CoefficientPyramid,
};
use sphentropy::{basis_matrix, LogBase, SphereGrid, Strategy};

#[derive(Parser)]
#[command(
    name = "sphentropy",
    version,
    about = "Spherical-harmonic analysis with entropy-guided order selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic shape and write it as a field file
    Synth(SynthArgs),
    /// Project a field onto the basis; write coefficients (and spectra)
    Analyze(AnalyzeArgs),
    /// Reconstruct a field at a truncation order and report the residual
    Reconstruct(ReconstructArgs),
    /// Compute the SHE curve of a field or coefficient file
    Entropy(EntropyArgs),
    /// Pick the optimal reconstruction order from the SHE curve
    SelectOrder(SelectOrderArgs),
    /// Write the coefficient spectrum as plot-ready CSV
    Spectrum(SpectrumArgs),
    /// Time the direct vs recursive basis evaluation across sizes
    Bench(BenchArgs),
}

/// `gauss:<L>` or `equiangular:<NT>x<NP>`.
#[derive(Debug, Clone, Copy)]
struct GridArg(GridSpec);

impl FromStr for GridArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| format!("expected 'gauss:<L>' or 'equiangular:<NT>x<NP>', got '{s}'"))?;
        match kind {
            "gauss" => {
                let parameter = params
                    .parse::<u32>()
                    .map_err(|_| format!("bad gauss parameter '{params}'"))?;
                Ok(GridArg(GridSpec::Gauss { parameter }))
            }
            "equiangular" => {
                let (nt, np) = params
                    .split_once('x')
                    .ok_or_else(|| format!("expected '<NT>x<NP>', got '{params}'"))?;
                let n_theta = nt.parse().map_err(|_| format!("bad n_theta '{nt}'"))?;
                let n_phi = np.parse().map_err(|_| format!("bad n_phi '{np}'"))?;
                Ok(GridArg(GridSpec::Equiangular { n_theta, n_phi }))
            }
            other => Err(format!("unknown grid kind '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShapeArg {
    UnitSphere,
    Bump,
    Random,
}

#[derive(Args)]
struct SynthArgs {
    /// Shape family
    #[arg(long, value_enum)]
    shape: ShapeArg,
    /// Bump term as 'l,m,amplitude'; repeatable (shape = bump)
    #[arg(long = "bump", value_name = "L,M,AMP")]
    bumps: Vec<String>,
    /// Maximum degree of a random shape
    #[arg(long)]
    lmax: Option<u32>,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling grid
    #[arg(long, default_value = "gauss:16")]
    grid: GridArg,
    /// Emit the 3-channel surface embedding instead of the radial samples
    #[arg(long)]
    surface: bool,
    /// Output field file (CSV; a .json sidecar is written next to it)
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input field file
    #[arg(long)]
    input: PathBuf,
    /// Band limit of the analysis
    #[arg(long)]
    lmax: u32,
    /// Output coefficient file (JSON)
    #[arg(long)]
    output: PathBuf,
    /// Also write the spectrum CSV here
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Also write real cosine/sine pairs here (CSV)
    #[arg(long = "real-ab")]
    real_ab: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Input field file
    #[arg(long)]
    input: PathBuf,
    /// Truncation order of the reconstruction
    #[arg(long)]
    order: u32,
    /// Analysis band limit (defaults to --order)
    #[arg(long)]
    lmax: Option<u32>,
    /// Output field file
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct EntropyArgs {
    /// Input field (.csv) or coefficient (.json) file
    #[arg(long)]
    input: PathBuf,
    /// Band limit (required for field inputs)
    #[arg(long)]
    lmax: Option<u32>,
    /// Logarithm base for entropy values
    #[arg(long = "log-base", default_value = "e")]
    log_base: String,
    /// Output SHE-curve CSV
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct SelectOrderArgs {
    /// Input field (.csv) or coefficient (.json) file
    #[arg(long)]
    input: PathBuf,
    /// Band limit (required for field inputs)
    #[arg(long)]
    lmax: Option<u32>,
    /// Stabilization tolerance on |SHE(J) - SHE(J-1)|
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Number of consecutive stable steps required
    #[arg(long, default_value_t = 2)]
    window: u32,
    /// Stopping rule
    #[arg(long, default_value = "stabilization")]
    criterion: String,
    /// Logarithm base for entropy values
    #[arg(long = "log-base", default_value = "e")]
    log_base: String,
    /// Output report file (JSON)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Input field (.csv) or coefficient (.json) file
    #[arg(long)]
    input: PathBuf,
    /// Band limit (required for field inputs)
    #[arg(long)]
    lmax: Option<u32>,
    /// Output spectrum CSV
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Output CSV of timings
    #[arg(long)]
    output: PathBuf,
    /// Restrict to one strategy (default: both)
    #[arg(long)]
    strategy: Option<String>,
    /// Smaller size grid for smoke testing
    #[arg(long)]
    quick: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Validation(_)
        | Error::Domain(_)
        | Error::BandLimit { .. }
        | Error::OrderExceedsBandLimit { .. }
        | Error::ShapeMismatch(_) => 2,
        Error::Io(_) | Error::Parse { .. } => 3,
        Error::DegenerateInput(_) | Error::ResourceBudget { .. } => 4,
        Error::NoConvergence(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Entropy(args) => cmd_entropy(args),
        Command::SelectOrder(args) => cmd_select_order(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn parse_bump(s: &str) -> Result<BumpTerm, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Validation(format!(
            "bump term must be 'l,m,amplitude', got '{s}'"
        )));
    }
    let l = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("bad bump degree '{}'", parts[0])))?;
    let m = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("bad bump order '{}'", parts[1])))?;
    let amplitude = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("bad bump amplitude '{}'", parts[2])))?;
    Ok(BumpTerm { l, m, amplitude })
}

fn cmd_synth(args: SynthArgs) -> Result<(), Error> {
    let kind = match args.shape {
        ShapeArg::UnitSphere => ShapeKind::UnitSphere,
        ShapeArg::Bump => {
            if args.bumps.is_empty() {
                return Err(Error::Validation(
                    "shape 'bump' needs at least one --bump l,m,amplitude".into(),
                ));
            }
            ShapeKind::RadialHarmonicBump {
                terms: args
                    .bumps
                    .iter()
                    .map(|s| parse_bump(s))
                    .collect::<Result<_, _>>()?,
            }
        }
        ShapeArg::Random => ShapeKind::RandomBandlimited {
            max_degree: args.lmax.ok_or_else(|| {
                Error::Validation("shape 'random' needs --lmax <max degree>".into())
            })?,
            seed: args.seed,
        },
    };
    let spec = ShapeSpec {
        kind,
        grid: args.grid.0,
        form: if args.surface {
            OutputForm::Surface
        } else {
            OutputForm::Radial
        },
    };
    let field = shapes::generate(&spec)?;
    io::write_field(&args.output, &field)?;
    println!(
        "wrote {} ({} nodes x {} channel(s), band limit {})",
        args.output.display(),
        field.grid().n_nodes(),
        field.channels(),
        spec.band_limit()
    );
    Ok(())
}

fn warn_if_aliasing(grid: &SphereGrid, l_max: u32) {
    if !grid.supports_band_limit(l_max) {
        eprintln!(
            "warning: band limit {l_max} exceeds what this grid resolves exactly \
             (degree {}); coefficients may alias",
            grid.max_exact_degree()
        );
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Error> {
    let field = io::read_field(&args.input)?;
    warn_if_aliasing(field.grid(), args.lmax);
    let pyramid = analyze(&field, args.lmax)?;
    io::write_coefficients(&args.output, &pyramid)?;
    println!("wrote {}", args.output.display());
    if let Some(path) = &args.spectrum {
        io::write_spectrum(path, &pyramid)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &args.real_ab {
        io::write_real_ab(path, &real_ab_coefficients(&pyramid))?;
        println!("wrote {}", path.display());
    }
    let energy = pyramid.total_energy();
    let norm2 = field.norm().powi(2);
    let gap = (energy - norm2).abs() / energy.max(norm2).max(f64::MIN_POSITIVE);
    println!(
        "parseval check: coefficient energy {energy:.6e}, field norm^2 {norm2:.6e}, \
         relative gap {gap:.3e}"
    );
    Ok(())
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<(), Error> {
    let field = io::read_field(&args.input)?;
    let l_max = args.lmax.unwrap_or(args.order);
    if l_max < args.order {
        return Err(Error::Validation(format!(
            "--lmax {l_max} is below --order {}",
            args.order
        )));
    }
    warn_if_aliasing(field.grid(), l_max);
    let recon = if field.channels() == 3 && l_max == args.order {
        reconstruct_surface(&field, args.order)?
    } else {
        let pyramid = analyze(&field, l_max)?;
        synthesize(&pyramid, field.grid(), args.order)?
    };
    let residual = residual_norm(&field, &recon)?;
    io::write_field(&args.output, &recon)?;
    println!("wrote {}", args.output.display());
    println!(
        "residual |f - f_J| = {residual:.6e} at order {} (field norm {:.6e})",
        args.order,
        field.norm()
    );
    Ok(())
}

/// Field inputs are analyzed at --lmax; coefficient inputs load directly.
fn load_pyramid(input: &std::path::Path, l_max: Option<u32>) -> Result<CoefficientPyramid, Error> {
    if input.extension().is_some_and(|e| e == "json") {
        let pyramid = io::read_coefficients(input)?;
        if let Some(l) = l_max {
            if l != pyramid.l_max() {
                return Err(Error::Validation(format!(
                    "--lmax {l} does not match the coefficient file band limit {}",
                    pyramid.l_max()
                )));
            }
        }
        Ok(pyramid)
    } else {
        let field = io::read_field(input)?;
        let l_max = l_max.ok_or_else(|| {
            Error::Validation("--lmax is required when the input is a field file".into())
        })?;
        warn_if_aliasing(field.grid(), l_max);
        analyze(&field, l_max)
    }
}

fn she_options(log_base: &str) -> Result<SheOptions, Error> {
    Ok(SheOptions {
        log_base: LogBase::from_str(log_base)?,
        ..SheOptions::default()
    })
}

fn print_she_table(values: &[f64]) {
    println!("{:>4}  {:>12}", "J", "SHE");
    for (j, v) in values.iter().enumerate() {
        println!("{j:>4}  {v:>12.6}");
    }
}

fn cmd_entropy(args: EntropyArgs) -> Result<(), Error> {
    let pyramid = load_pyramid(&args.input, args.lmax)?;
    let opts = she_options(&args.log_base)?;
    let curve = she_curve_with(&pyramid, &opts);
    let spectrum = level_spectrum(&pyramid)?;
    io::write_she_curve(&args.output, &curve, &spectrum)?;
    print_she_table(curve.values());
    println!("wrote {}", args.output.display());
    Ok(())
}

fn cmd_select_order(args: SelectOrderArgs) -> Result<(), Error> {
    let pyramid = load_pyramid(&args.input, args.lmax)?;
    let opts = she_options(&args.log_base)?;
    let criterion = SelectionCriterion::from_str(&args.criterion)?;
    let report = select_order_with(&pyramid, args.epsilon, args.window, criterion, &opts)?;
    print_she_table(&report.trace.iter().map(|t| t.she).collect::<Vec<_>>());
    println!(
        "selected order: {}   ({}, epsilon = {:.1e}, window = {})",
        report.selected_order, report.criterion, report.epsilon, report.window
    );
    if let Some(path) = &args.output {
        io::write_selection_report(path, &report)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Error> {
    let pyramid = load_pyramid(&args.input, args.lmax)?;
    io::write_spectrum(&args.output, &pyramid)?;
    println!(
        "wrote {} ({} rows per channel x {} channel(s))",
        args.output.display(),
        sphentropy::coefficient_count(pyramid.l_max()),
        pyramid.channels()
    );
    Ok(())
}

struct BenchCell {
    section: &'static str,
    strategy: Strategy,
    l_max: u32,
    n_nodes: usize,
    seconds: f64,
    ops: u64,
}

fn time_cell(
    section: &'static str,
    l_max: u32,
    grid: &SphereGrid,
    strategy: Strategy,
) -> Result<BenchCell, Error> {
    // accumulate at least 0.2 s or 20 runs, whichever first, then average;
    // keeps microsecond cells out of timer-noise territory without
    // re-running second-scale cells
    let started = Instant::now();
    let first = basis_matrix(l_max, grid, strategy)?;
    std::hint::black_box(&first);
    let ops = first.ops();
    let mut reps = 1u32;
    while started.elapsed().as_secs_f64() < 0.2 && reps < 20 {
        let m = basis_matrix(l_max, grid, strategy)?;
        std::hint::black_box(&m);
        reps += 1;
    }
    Ok(BenchCell {
        section,
        strategy,
        l_max,
        n_nodes: grid.n_nodes(),
        seconds: started.elapsed().as_secs_f64() / f64::from(reps),
        ops,
    })
}

fn fit_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let strategies: Vec<Strategy> = match args.strategy.as_deref() {
        None => vec![Strategy::Recursive, Strategy::Direct],
        Some(s) => vec![Strategy::from_str(s)?],
    };
    // L values for the per-point exponent fit, equiangular side lengths for
    // the N sweep, and the head-to-head cell
    let (l_sweep, n_sweep, head_l, head_n): (&[u32], &[usize], u32, usize) = if args.quick {
        (&[4, 8, 16], &[12, 17, 24], 8, 24)
    } else {
        (&[8, 16, 32, 64], &[24, 34, 48, 68], 32, 91)
    };
    let n_fixed_l = if args.quick { 8 } else { 16 };

    let mut cells: Vec<BenchCell> = Vec::new();

    // L-scaling at a fixed small grid: per-point cost exponent per strategy
    let fit_grid = sphentropy::equiangular_grid(10, 10)?;
    for &strategy in &strategies {
        let mut points = Vec::new();
        for &l in l_sweep {
            let cell = time_cell("l-scaling", l, &fit_grid, strategy)?;
            points.push((f64::from(l), cell.seconds / cell.n_nodes as f64));
            cells.push(cell);
        }
        let slope = fit_log_slope(&points);
        println!("{strategy}: per-point cost ~ L^{slope:.2} over L in {l_sweep:?}");
    }

    // N-scaling at fixed L: both methods stream over nodes
    for &strategy in &strategies {
        let mut points = Vec::new();
        for &n in n_sweep {
            let grid = sphentropy::equiangular_grid(n, n)?;
            let cell = time_cell("n-scaling", n_fixed_l, &grid, strategy)?;
            points.push((cell.n_nodes as f64, cell.seconds));
            cells.push(cell);
        }
        let slope = fit_log_slope(&points);
        println!("{strategy}: wall time ~ N^{slope:.2} at fixed L = {n_fixed_l}");
    }

    // head-to-head at the large tabulated grid
    if strategies.len() == 2 {
        let grid = sphentropy::equiangular_grid(head_n, head_n)?;
        let direct = time_cell("head-to-head", head_l, &grid, Strategy::Direct)?;
        let recursive = time_cell("head-to-head", head_l, &grid, Strategy::Recursive)?;
        println!(
            "head-to-head at L = {head_l}, N = {}: direct {:.3} s, recursive {:.3} s \
             ({:.1}x speedup)",
            grid.n_nodes(),
            direct.seconds,
            recursive.seconds,
            direct.seconds / recursive.seconds
        );
        cells.push(direct);
        cells.push(recursive);
    }

    let mut out = String::from("section,strategy,l_max,n_nodes,seconds,ops,seconds_per_node\n");
    for c in &cells {
        out.push_str(&format!(
            "{},{},{},{},{:.6e},{},{:.6e}\n",
            c.section,
            c.strategy,
            c.l_max,
            c.n_nodes,
            c.seconds,
            c.ops,
            c.seconds / c.n_nodes as f64
        ));
    }
    std::fs::write(&args.output, out)?;
    println!("wrote {}", args.output.display());
    Ok(())
}
