use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use golaybeam::golay::{cataloged_lengths, CATALOG_TOL};
use golaybeam::heatmap;
use golaybeam::io::{
    self, ArrayPairFile, ConfigSource, ConstructSpec, PairFile, Scenario, SequenceFile,
};
use golaybeam::sweep::{make_grid_degrees, ripple_stats, Quantity as SweepQuantity};
use golaybeam::{is_golay_array_pair, search_golay_pairs, Alphabet, Error, Layout};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "golaybeam", version, about = "Golay-pair broad-beam configurations for dual-polarized reflecting surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphabetArg {
    Binary,
    Quaternary,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Binary => Alphabet::Binary,
            AlphabetArg::Quaternary => Alphabet::Quaternary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Stacked,
    Concat,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    TotalAf,
    AfH,
    AfV,
    TotalPattern,
}

impl From<QuantityArg> for SweepQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::TotalAf => SweepQuantity::TotalAf,
            QuantityArg::AfH => SweepQuantity::AfH,
            QuantityArg::AfV => SweepQuantity::AfV,
            QuantityArg::TotalPattern => SweepQuantity::TotalPattern,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Db,
    Linear,
}

/// `az0,az1,naz,el0,el1,nel` in degrees.
#[derive(Clone, Copy, Debug)]
struct GridSpec {
    az: (f64, f64, usize),
    el: (f64, f64, usize),
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            az: (-60.0, 60.0, 181),
            el: (-30.0, 30.0, 61),
        }
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err("expected az0,az1,naz,el0,el1,nel".into());
    }
    let num = |i: usize| parts[i].parse::<f64>().map_err(|e| format!("'{}': {e}", parts[i]));
    let count = |i: usize| parts[i].parse::<usize>().map_err(|e| format!("'{}': {e}", parts[i]));
    Ok(GridSpec {
        az: (num(0)?, num(1)?, count(2)?),
        el: (num(3)?, num(4)?, count(5)?),
    })
}

#[derive(Subcommand)]
enum Command {
    /// Build a Golay complementary array pair from cataloged seeds.
    Construct {
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        /// Alphabet for both seeds.
        #[arg(long, value_enum, default_value = "binary")]
        alphabet: AlphabetArg,
        /// Overrides --alphabet for the first seed.
        #[arg(long, value_enum)]
        alphabet1: Option<AlphabetArg>,
        /// Overrides --alphabet for the second seed.
        #[arg(long, value_enum)]
        alphabet2: Option<AlphabetArg>,
        #[arg(long, value_enum, default_value = "stacked")]
        layout: LayoutArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that an array-pair file is complementary.
    Verify {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, default_value_t = CATALOG_TOL)]
        tol: f64,
    },
    /// Evaluate a pattern over an angular grid.
    Sweep {
        /// Scenario JSON; defaults to the 16x16 reference surface.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "total-af")]
        quantity: QuantityArg,
        /// az0,az1,naz,el0,el1,nel in degrees.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Option<GridSpec>,
        #[arg(long, value_enum, default_value = "db")]
        scale: ScaleArg,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        png: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exhaustively enumerate Golay pairs of one length.
    Search {
        #[arg(long)]
        length: usize,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "4"]))]
        alphabet_size: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show the seed catalog, or describe a pair or scenario file.
    Info {
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn verification_failed(message: String) -> Failure {
    Failure {
        code: EXIT_VERIFY_FAILED,
        message,
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("GOLAYBEAM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure {
        code: EXIT_INPUT,
        message: format!("GOLAYBEAM_THREADS must be a positive integer, got '{value}'"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("cannot configure worker pool: {e}"),
        })
}

fn construct_cmd(spec: ConstructSpec, out: Option<&Path>) -> Result<(), Failure> {
    let (u, w) = spec.build()?;
    let report = is_golay_array_pair(&u, &w, CATALOG_TOL)?;
    let (n1, n2) = u.dims();
    println!("constructed {} pair: {n1}x{n2}", spec.id());
    println!("max off-peak |R_U + R_W| = {:.3e}", report.max_off_peak);
    let file = ArrayPairFile::from_arrays(&u, &w);
    match out {
        Some(path) => {
            io::write_json(path, &file)?;
            println!("wrote {}", path.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&file).map_err(Error::from)?),
    }
    if report.complementary {
        println!("verdict: PASS");
        Ok(())
    } else {
        Err(verification_failed("verdict: FAIL".into()))
    }
}

fn verify_cmd(pair: &Path, tol: f64) -> Result<(), Failure> {
    let file: ArrayPairFile = io::read_json(pair)?;
    let (u, w) = file.to_arrays()?;
    let report = is_golay_array_pair(&u, &w, tol)?;
    let (n1, n2) = u.dims();
    println!("dims: {n1}x{n2}");
    println!("max off-peak |R_U + R_W| = {:.3e}", report.max_off_peak);
    println!("peak deviation |R_U[0,0] + R_W[0,0] - 2N1N2| = {:.3e}", report.peak_deviation);
    if report.complementary {
        println!("verdict: PASS (tol {tol:e})");
        Ok(())
    } else {
        Err(verification_failed(format!("verdict: FAIL (tol {tol:e})")))
    }
}

fn load_scenario(path: Option<&Path>) -> Result<(Scenario, PathBuf), Failure> {
    match path {
        Some(p) => {
            let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok((Scenario::load(p)?, base))
        }
        None => Ok((Scenario::default(), PathBuf::from("."))),
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_cmd(
    scenario: Option<&Path>,
    quantity: SweepQuantity,
    grid: GridSpec,
    scale: ScaleArg,
    csv: Option<&Path>,
    json: Option<&Path>,
    png: Option<&Path>,
    svg: Option<&Path>,
) -> Result<(), Failure> {
    let (scenario, base) = load_scenario(scenario)?;
    let r = scenario.resolve(&base)?;
    let grid = make_grid_degrees(grid.az.0, grid.az.1, grid.az.2, grid.el.0, grid.el.1, grid.el.2)?;
    let mut map = golaybeam::sweep(quantity, &r.config, &r.geometry, &grid, &r.aoa, &r.element_gain)?;
    map.config_id = r.config_id.clone();
    let stats = ripple_stats(&map)?;
    let out = match scale {
        ScaleArg::Db => map.to_db(),
        ScaleArg::Linear => map.clone(),
    };

    println!("quantity: {quantity}, config: {}, {} points", r.config_id, out.values.len());
    println!(
        "linear min {:.9e} max {:.9e} mean {:.9e} relative ripple {:.3e}",
        stats.min, stats.max, stats.mean, stats.relative_ripple
    );
    match stats.ripple_db {
        Some(db) => println!(
            "dB min {:.6} max {:.6} ripple {:.3e} dB",
            10.0 * stats.min.log10(),
            10.0 * stats.max.log10(),
            db
        ),
        None => println!("dB ripple undefined (nonpositive samples)"),
    }
    if matches!(quantity, SweepQuantity::TotalAf | SweepQuantity::AfH | SweepQuantity::AfV) {
        println!("note: the array factor is a dimensionless power gain; dB values are 10*log10 of it");
    }
    if let Some(p) = csv {
        io::write_pattern_csv(p, &out)?;
    }
    if let Some(p) = json {
        io::write_pattern_json(p, &out)?;
    }
    if let Some(p) = png {
        heatmap::write_png(p, &map)?;
    }
    if let Some(p) = svg {
        heatmap::write_svg(p, &map)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SearchListing {
    length: usize,
    alphabet_size: usize,
    count: usize,
    pairs: Vec<PairFile>,
}

fn search_cmd(length: usize, alphabet_size: usize, out: Option<&Path>) -> Result<(), Failure> {
    let alphabet = Alphabet::from_size(alphabet_size).ok_or_else(|| Failure {
        code: EXIT_INPUT,
        message: format!("unsupported alphabet size {alphabet_size}"),
    })?;
    let pairs = search_golay_pairs(length, alphabet_size).map_err(|e| {
        let mut f = Failure::from(e);
        if f.code == EXIT_RESOURCE {
            f.message.push_str(" (binary lengths up to 10 and quaternary up to 5 fit the default budget)");
        }
        f
    })?;
    let listing = SearchListing {
        length,
        alphabet_size,
        count: pairs.len(),
        pairs: pairs
            .iter()
            .map(|(u, w)| PairFile {
                u: SequenceFile::from_sequence(u, alphabet),
                w: SequenceFile::from_sequence(w, alphabet),
            })
            .collect(),
    };
    match out {
        Some(path) => {
            io::write_json(path, &listing)?;
            println!("{} pairs of length {length} over {alphabet_size} phases; wrote {}", listing.count, path.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&listing).map_err(Error::from)?),
    }
    Ok(())
}

fn info_cmd(pair: Option<&Path>, scenario: Option<&Path>) -> Result<(), Failure> {
    if pair.is_none() && scenario.is_none() {
        for alphabet in [Alphabet::Binary, Alphabet::Quaternary] {
            let lengths: Vec<String> = cataloged_lengths(alphabet, 64).iter().map(usize::to_string).collect();
            println!("{alphabet} seed lengths (<= 64): {}", lengths.join(", "));
        }
        let s = Scenario::default();
        println!(
            "default scenario: {}x{} surface, AoA ({}, {}) deg",
            s.geometry.n_y, s.geometry.n_z, s.aoa.azimuth_deg, s.aoa.elevation_deg
        );
        if let ConfigSource::Construct(spec) = &s.config {
            println!("default configuration: {}", spec.id());
        }
        println!("exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource limit");
    }
    if let Some(p) = pair {
        let file: ArrayPairFile = io::read_json(p)?;
        let (u, w) = file.to_arrays()?;
        let report = is_golay_array_pair(&u, &w, CATALOG_TOL)?;
        println!(
            "{}: {}x{}, complementary: {} (max deviation {:.3e})",
            p.display(),
            u.rows(),
            u.cols(),
            report.complementary,
            report.max_deviation()
        );
    }
    if let Some(p) = scenario {
        let (s, base) = load_scenario(Some(p))?;
        let r = s.resolve(&base)?;
        println!(
            "{}: {}x{} surface, configuration {} ({}x{} per polarization)",
            p.display(),
            r.geometry.n_y,
            r.geometry.n_z,
            r.config_id,
            r.config.dims().0,
            r.config.dims().1
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Construct {
            l1,
            l2,
            alphabet,
            alphabet1,
            alphabet2,
            layout,
            out,
        } => {
            let spec = ConstructSpec {
                l1,
                alphabet1: alphabet1.unwrap_or(alphabet).into(),
                l2,
                alphabet2: alphabet2.unwrap_or(alphabet).into(),
                layout: match layout {
                    LayoutArg::Stacked => Layout::Stacked,
                    LayoutArg::Concat => Layout::Concat,
                },
            };
            construct_cmd(spec, out.as_deref())
        }
        Command::Verify { pair, tol } => verify_cmd(&pair, tol),
        Command::Sweep {
            scenario,
            quantity,
            grid,
            scale,
            csv,
            json,
            png,
            svg,
        } => sweep_cmd(
            scenario.as_deref(),
            quantity.into(),
            grid.unwrap_or_default(),
            scale,
            csv.as_deref(),
            json.as_deref(),
            png.as_deref(),
            svg.as_deref(),
        ),
        Command::Search {
            length,
            alphabet_size,
            out,
        } => search_cmd(length, alphabet_size.parse().expect("validated by clap"), out.as_deref()),
        Command::Info { pair, scenario } => info_cmd(pair.as_deref(), scenario.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
