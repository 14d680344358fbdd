//! Command-line front end: every computation of the library as a
//! reproducible, scriptable command emitting CSV or JSON artifacts.
//!
//! Artifacts embed the full run configuration: CSV files carry it as a
//! leading `#`-prefixed JSON comment line, JSON files as a `config` field.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use quadvoronoi::celllaw::{self, IltConfig, IltMethod};
use quadvoronoi::extrapolate::RichardsonConfig;
use quadvoronoi::locallimit::{contour_integral, phi_mgf, ContourKind, ContourSpec};
use quadvoronoi::mapgf;
use quadvoronoi::real::{real, Real};
use quadvoronoi::rug::{Float, Rational};
use quadvoronoi::scaling;
use quadvoronoi::verify::run_verify;

const PRECISION_ENV: &str = "QUADVORONOI_PRECISION_BITS";

#[derive(Parser)]
#[command(
    name = "quadvoronoi",
    about = "Voronoi cell volume statistics for bi-pointed random quadrangulations",
    version
)]
struct Cli {
    /// Working precision in bits (env QUADVORONOI_PRECISION_BITS overrides the default)
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for tabular artifacts
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    DeformedContour,
    AcceleratedFourier,
}

impl From<MethodArg> for IltMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::DeformedContour => IltMethod::DeformedContour,
            MethodArg::AcceleratedFourier => IltMethod::AcceleratedFourier,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficient table of the two-volume counting series
    Coeffs(CoeffsArgs),
    /// Large-N counting ratio sequence and its extrapolated limit
    Profile(ProfileArgs),
    /// Scaling-function evaluation, coefficient extraction, table dump
    Scaling(ScalingArgs),
    /// The volume-law transform E(sigma) and density P(V) tables
    Law(LawArgs),
    /// Density against its closed-form large- and small-volume equivalents
    Asympt(AsymptArgs),
    /// Escape probability of the biased cell
    Asym(AsymArgs),
    /// The tree comparison law
    Tree(TreeArgs),
    /// Local-limit contour integrals and the volume-fraction transform
    Contour(ContourArgs),
    /// Run the cross-check suite; nonzero exit on any failure
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    /// half the distance between the marked vertices
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// doubled total-volume truncation of the table
    #[arg(long, default_value_t = 24)]
    order2: u32,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// largest coefficient index used
    #[arg(long, default_value_t = 120)]
    max_n: usize,
    /// correction orders eliminated by the extrapolation
    #[arg(long, default_value_t = 14)]
    richardson_order: usize,
}

#[derive(Args)]
struct ScalingArgs {
    #[command(subcommand)]
    action: ScalingAction,
}

#[derive(Subcommand)]
enum ScalingAction {
    /// Evaluate F(S,a,b)
    Eval {
        #[arg(long)]
        s_value: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Extract [S^{2i-3}] of F(S, sqrt6, tau/S), cross-checked two ways
    Extract {
        /// coefficient index i in {0, 2, 3}
        #[arg(long)]
        index: u32,
        #[arg(long)]
        tau: f64,
    },
    /// Dump the exact coefficient tables as JSON for auditing
    DumpTables,
}

#[derive(Args)]
struct LawArgs {
    /// linear sigma grid lo:hi:step for the transform table
    #[arg(long)]
    sigma_grid: Option<String>,
    /// log-spaced V grid for the density table: lo:hi:points
    #[arg(long)]
    v_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::DeformedContour)]
    method: MethodArg,
    #[arg(long, default_value_t = 48)]
    nodes: usize,
    /// skip the second-method comparison on each density point
    #[arg(long, default_value_t = false)]
    no_cross_check: bool,
}

#[derive(Args)]
struct AsymptArgs {
    /// log-spaced V grid: lo:hi:points
    #[arg(long, default_value = "0.01:10000:41")]
    v_grid: String,
    #[arg(long, default_value_t = 48)]
    nodes: usize,
}

#[derive(Args)]
struct AsymArgs {
    /// number of evenly spaced omega points on [-1, 1]
    #[arg(long, default_value_t = 101)]
    grid: usize,
}

#[derive(Args)]
struct TreeArgs {
    /// linear sigma grid lo:hi:step
    #[arg(long)]
    sigma_grid: Option<String>,
    /// log-spaced V grid lo:hi:points
    #[arg(long)]
    v_grid: Option<String>,
}

#[derive(Args)]
struct ContourArgs {
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// ray truncation length
    #[arg(long, default_value_t = 12.0)]
    ray_length: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// run the trimmed suite
    #[arg(long, default_value_t = false)]
    quick: bool,
}

#[derive(Serialize)]
struct Table {
    config: serde_json::Value,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(config: serde_json::Value, columns: &[&str]) -> Self {
        Table {
            config,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).unwrap(),
            Format::Csv => {
                let mut out = String::new();
                writeln!(out, "# {}", self.config).unwrap();
                writeln!(out, "{}", self.columns.join(",")).unwrap();
                for row in &self.rows {
                    writeln!(out, "{}", row.join(",")).unwrap();
                }
                out
            }
        }
    }
}

fn fmt_real(v: &Real) -> String {
    let s = v.to_string_radix(10, Some(30));
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn parse_linear_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid `{s}` is not of the form lo:hi:step"));
    }
    let lo: f64 = parts[0].parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = parts[1].parse().map_err(|e| format!("{e}"))?;
    let step: f64 = parts[2].parse().map_err(|e| format!("{e}"))?;
    if step <= 0.0 || hi < lo {
        return Err(format!("grid `{s}` is empty or descending"));
    }
    let mut v = Vec::new();
    let mut x = lo;
    while x <= hi + step * 1e-9 {
        v.push(x);
        x += step;
    }
    Ok(v)
}

fn parse_log_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid `{s}` is not of the form lo:hi:points"));
    }
    let lo: f64 = parts[0].parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = parts[1].parse().map_err(|e| format!("{e}"))?;
    let n: usize = parts[2].parse().map_err(|e| format!("{e}"))?;
    if lo <= 0.0 || hi <= lo || n < 2 {
        return Err(format!("log grid `{s}` needs 0 < lo < hi and points >= 2"));
    }
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    Ok((0..n).map(|k| lo * ratio.powi(k as i32)).collect())
}

fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let precision = cli
        .precision_bits
        .or_else(|| {
            std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(256);
    let err = |e: quadvoronoi::Error| e.to_string();

    match &cli.command {
        Command::Coeffs(a) => {
            let ctx = mapgf::MapGfContext::new(a.order2);
            let table = mapgf::coeff_table(&ctx, a.s).map_err(err)?;
            let doc = json!({
                "config": run_config(&cli, precision, json!({"s": a.s, "order2": a.order2})),
                "table": table,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&doc).unwrap())
                .map_err(|e| e.to_string())?;
        }
        Command::Profile(a) => {
            let ratios = mapgf::profile_ratios(a.s, a.max_n, 640).map_err(err)?;
            let rcfg = RichardsonConfig {
                order: a.richardson_order,
                min_points: 10,
            };
            let (limit, est) = mapgf::profile_limit(a.s, a.max_n, 640, &rcfg).map_err(err)?;
            let f3 = mapgf::profile_constant(a.s);
            let config = run_config(
                &cli,
                precision,
                json!({
                    "s": a.s, "max_n": a.max_n, "richardson_order": a.richardson_order,
                    "extrapolated": limit.to_f64(), "error_estimate": est.to_f64(),
                    "target": f3.f3.to_f64(),
                }),
            );
            let mut t = Table::new(config, &["n", "ratio", "error_estimate"]);
            for (n, r) in ratios {
                t.push(vec![n.to_string(), fmt_real(&r), "0".into()]);
            }
            emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
        }
        Command::Scaling(a) => match &a.action {
            ScalingAction::Eval { s_value, a: av, b } => {
                let v = scaling::eval_f(
                    &real(precision, *s_value),
                    &real(precision, *av),
                    &real(precision, *b),
                    precision,
                )
                .map_err(err)?;
                let config = run_config(
                    &cli,
                    precision,
                    json!({"s_value": s_value, "a": av, "b": b}),
                );
                let mut t = Table::new(config, &["s_value", "value", "error_estimate"]);
                t.push(vec![
                    s_value.to_string(),
                    fmt_real(&v),
                    format!(
                        "{:.3e}",
                        v.to_f64().abs() * 2f64.powi(-(precision as i32) + 8)
                    ),
                ]);
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            }
            ScalingAction::Extract { index, tau } => {
                let p = precision.max(512);
                let v = scaling::extract_phi_coeff(*index, &real(p, *tau), p).map_err(err)?;
                let config = run_config(&cli, precision, json!({"index": index, "tau": tau}));
                let mut t = Table::new(config, &["tau", "coefficient", "error_estimate"]);
                t.push(vec![
                    tau.to_string(),
                    fmt_real(&v),
                    format!("{:.3e}", v.to_f64().abs() * 2f64.powi(-(p as i32) / 2)),
                ]);
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            }
            ScalingAction::DumpTables => {
                let doc = json!({
                    "config": run_config(&cli, precision, json!({})),
                    "tables": scaling::dump_tables(),
                });
                emit(&cli.out, &serde_json::to_string_pretty(&doc).unwrap())
                    .map_err(|e| e.to_string())?;
            }
        },
        Command::Law(a) => {
            let ilt_cfg = IltConfig {
                method: a.method.into(),
                node_count: a.nodes,
                precision_bits: precision.max(320),
                target_tol: 1e-6,
                cross_check: !a.no_cross_check,
            };
            if let Some(grid) = &a.sigma_grid {
                let sigmas = parse_linear_grid(grid)?;
                let config = run_config(
                    &cli,
                    precision,
                    json!({"sigma_grid": grid, "quantity": "transform"}),
                );
                let mut t = Table::new(config, &["sigma", "e_sigma", "error_estimate"]);
                for sv in sigmas {
                    let v = celllaw::e_sigma(&real(precision, sv), precision).map_err(err)?;
                    t.push(vec![
                        format!("{sv}"),
                        fmt_real(&v),
                        format!(
                            "{:.3e}",
                            v.to_f64().abs() * 2f64.powi(-(precision as i32) + 8)
                        ),
                    ]);
                }
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            } else if let Some(grid) = &a.v_grid {
                let vs = parse_log_grid(grid)?;
                let config = run_config(
                    &cli,
                    precision,
                    json!({
                        "v_grid": grid, "quantity": "density",
                        "method": format!("{:?}", ilt_cfg.method),
                        "node_count": a.nodes, "cross_check": !a.no_cross_check,
                    }),
                );
                let mut t = Table::new(config, &["v", "density", "error_estimate"]);
                for vv in vs {
                    let (d, e) =
                        celllaw::p_v(&real(ilt_cfg.precision_bits, vv), &ilt_cfg).map_err(err)?;
                    t.push(vec![
                        format!("{vv}"),
                        fmt_real(&d),
                        format!("{:.3e}", e.to_f64()),
                    ]);
                }
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            } else {
                return Err("law requires --sigma-grid or --v-grid".into());
            }
        }
        Command::Asympt(a) => {
            let vs = parse_log_grid(&a.v_grid)?;
            let ilt_cfg = IltConfig {
                node_count: a.nodes,
                precision_bits: precision.max(320),
                cross_check: false,
                ..IltConfig::default()
            };
            let config = run_config(
                &cli,
                precision,
                json!({"v_grid": a.v_grid, "nodes": a.nodes}),
            );
            let mut t = Table::new(
                config,
                &["v", "density", "error_estimate", "tail_form", "flat_form"],
            );
            for vv in vs {
                let p = ilt_cfg.precision_bits;
                let (d, e) = celllaw::p_v(&real(p, vv), &ilt_cfg).map_err(err)?;
                let tail = celllaw::asympt_tail(&real(p, vv)).map_err(err)?;
                let flat = celllaw::asympt_flat(&real(p, vv)).map_err(err)?;
                t.push(vec![
                    format!("{vv}"),
                    fmt_real(&d),
                    format!("{:.3e}", e.to_f64()),
                    fmt_real(&tail),
                    fmt_real(&flat),
                ]);
            }
            emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
        }
        Command::Asym(a) => {
            if a.grid < 2 {
                return Err("asym --grid needs at least 2 points".into());
            }
            let config = run_config(&cli, precision, json!({"grid": a.grid}));
            let mut t = Table::new(config, &["omega", "pi", "error_estimate"]);
            for k in 0..a.grid {
                // exact rational grid on [-1, 1]
                let denom = a.grid as i64 - 1;
                let omega = Rational::from((2 * k as i64 - denom, denom));
                let v = quadvoronoi::asym::pi_rational(&omega).map_err(err)?;
                t.push(vec![
                    format!("{}", Float::with_val(64, &omega).to_f64()),
                    format!("{}", Float::with_val(64, &v).to_f64()),
                    "0".into(),
                ]);
            }
            emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
        }
        Command::Tree(a) => {
            if let Some(grid) = &a.sigma_grid {
                let sigmas = parse_linear_grid(grid)?;
                let config = run_config(&cli, precision, json!({"sigma_grid": grid}));
                let mut t = Table::new(config, &["sigma", "tree_transform", "error_estimate"]);
                for sv in sigmas {
                    let v = celllaw::tree_e(&real(precision, sv)).map_err(err)?;
                    t.push(vec![format!("{sv}"), fmt_real(&v), "0".into()]);
                }
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            } else if let Some(grid) = &a.v_grid {
                let vs = parse_log_grid(grid)?;
                let config = run_config(&cli, precision, json!({"v_grid": grid}));
                let mut t = Table::new(config, &["v", "tree_density", "error_estimate"]);
                for vv in vs {
                    let v = celllaw::tree_p(&real(precision, vv)).map_err(err)?;
                    t.push(vec![format!("{vv}"), fmt_real(&v), "0".into()]);
                }
                emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
            } else {
                return Err("tree requires --sigma-grid or --v-grid".into());
            }
        }
        Command::Contour(a) => {
            let spec = ContourSpec {
                ray_length: a.ray_length,
                precision_bits: precision.max(320),
                ..ContourSpec::default()
            };
            let p = spec.precision_bits;
            let mu = real(p, a.mu);
            let config = run_config(
                &cli,
                precision,
                json!({"mu": a.mu, "ray_length": a.ray_length}),
            );
            let mut t = Table::new(config, &["kind", "value", "error_estimate"]);
            for (label, kind) in [
                ("sixth_moment", ContourKind::A6),
                ("shifted_quartic", ContourKind::QuarticShift),
            ] {
                let (v, e) = contour_integral(kind, &mu, &spec).map_err(err)?;
                t.push(vec![
                    label.into(),
                    fmt_real(&v),
                    format!("{:.3e}", e.to_f64()),
                ]);
            }
            let v = phi_mgf(&mu, &spec).map_err(err)?;
            t.push(vec![
                "volume_fraction_transform".into(),
                fmt_real(&v),
                "0".into(),
            ]);
            emit(&cli.out, &t.render(cli.format)).map_err(|e| e.to_string())?;
        }
        Command::Verify(a) => {
            let report = run_verify(a.quick, precision).map_err(err)?;
            let doc = json!({
                "config": run_config(&cli, precision, json!({"quick": a.quick})),
                "report": report,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&doc).unwrap())
                .map_err(|e| e.to_string())?;
            if !report.all_passed {
                let failed: Vec<String> = report.failed().iter().map(|c| c.name.clone()).collect();
                eprintln!("verification failed: {}", failed.join(", "));
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn run_config(cli: &Cli, precision: u32, args: serde_json::Value) -> serde_json::Value {
    json!({
        "command": command_name(&cli.command),
        "precision_bits": precision,
        "format": match cli.format { Format::Csv => "csv", Format::Json => "json" },
        "args": args,
        "package_version": env!("CARGO_PKG_VERSION"),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Coeffs(_) => "coeffs",
        Command::Profile(_) => "profile",
        Command::Scaling(_) => "scaling",
        Command::Law(_) => "law",
        Command::Asympt(_) => "asympt",
        Command::Asym(_) => "asym",
        Command::Tree(_) => "tree",
        Command::Contour(_) => "contour",
        Command::Verify(_) => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
