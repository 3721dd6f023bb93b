//! `funk`: evaluate Funk metrics, sphere curvatures and their expansions.
//!
//! Exit status 0 on success, 1 when a check fails, 2 on input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use funk_core::curvature::curvature_set;
use funk_core::harness::checks::expected_limit;
use funk_core::harness::{run_sweep, verify_all, SweepConfig, VerifyConfig};
use funk_core::metric::{funk_distance, hilbert_metric, metric_tensor, okada_residual, theta};
use funk_core::normalization::normalize;
use funk_core::series::expansions::{exact_reports, reports, ExactExpansions, Expansions, GraphJets, Quantity};
use funk_core::spheres::{SphereCurve, SphereSpec};
use funk_core::{shipped_specs, BoundaryCurve, DomainSpec, FunkError, PointedVector};
use nalgebra::Vector2;
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "funk", version, about = "Funk geometry on strictly convex planar domains")]
struct Cli {
    /// Domain spec file (JSON); the centred unit disk when omitted. `verify`
    /// accepts it several times and defaults to the shipped set.
    #[arg(long, global = true)]
    domain: Vec<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed of the random samples drawn by `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    /// Pretty-printed JSON document.
    Doc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Forward,
    Backward,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metric value at a point and direction.
    Eval {
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        x: Vector2<f64>,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        y: Vector2<f64>,
        /// Include the fundamental tensor.
        #[arg(long)]
        tensor: bool,
        /// Include the residual of `Θ_x = Θ Θ_y`.
        #[arg(long)]
        okada: bool,
    },
    /// Funk distances between two points, both ways, and the Hilbert distance.
    Distance {
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        p: Vector2<f64>,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        q: Vector2<f64>,
    },
    /// Fundamental tensor `g_ij(x, y)`.
    Tensor {
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        x: Vector2<f64>,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        y: Vector2<f64>,
    },
    /// Affine normalization at the boundary point in polar direction `phi`.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
    },
    /// Sample a geodesic sphere about the base point.
    Sphere {
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value = "forward")]
        orientation: OrientationArg,
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
    /// Curvatures of a sphere at polar angle `phi`.
    Curvature {
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, value_enum, default_value = "forward")]
        orientation: OrientationArg,
        /// Comma-separated subset of inner, outer, finsler, rund.
        #[arg(long, default_value = "inner,outer,finsler,rund")]
        which: String,
    },
    /// Half-power expansions for given normalized jets, against the printed ones.
    Series {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        f3: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        f4: f64,
        /// Support height of the normalized domain.
        #[arg(long = "H", default_value_t = 2.0)]
        h: f64,
        /// One quantity (e.g. kR, kn_inner, t_plus); all when omitted.
        #[arg(long)]
        quantity: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: i32,
        /// Rational arithmetic (over Q(√2) for the Rund quantities).
        #[arg(long)]
        exact: bool,
    },
    /// Curvatures over a range of radii with series predictions and fits.
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        /// `a..b` (unit steps) or a comma-separated list.
        #[arg(long, default_value = "2..14")]
        r_values: String,
        #[arg(long, default_value = "kn_inner,kn_outer,kF,kR")]
        quantities: String,
        /// Half-powers kept beyond the leading term; chosen per quantity when omitted.
        #[arg(long)]
        retained: Option<i32>,
    },
    /// Run the invariant suite.
    Verify,
}

enum CliError {
    Input(String),
    Check(String),
}

impl From<FunkError> for CliError {
    fn from(e: FunkError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_vec2(s: &str) -> Result<Vector2<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    }
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Vector2::new(num(parts[0])?, num(parts[1])?))
}

fn parse_radii(s: &str) -> CliResult<Vec<f64>> {
    let bad = |m: String| CliError::Input(format!("--r-values: {m}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|e| bad(format!("{a:?}: {e}")))?;
        let b: i64 = b.trim().parse().map_err(|e| bad(format!("{b:?}: {e}")))?;
        return Ok((a..=b).map(|r| r as f64).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| bad(format!("{t:?}: {e}"))))
        .collect()
}

fn parse_quantities(s: &str) -> CliResult<Vec<Quantity>> {
    s.split(',')
        .map(|t| Quantity::parse(t.trim()).ok_or_else(|| CliError::Input(format!("unknown quantity {t:?}"))))
        .collect()
}

fn orientation(o: OrientationArg, r: f64) -> SphereSpec {
    match o {
        OrientationArg::Forward => SphereSpec::forward(r),
        OrientationArg::Backward => SphereSpec::backward(r),
    }
}

fn load_domain(paths: &[PathBuf]) -> CliResult<BoundaryCurve> {
    match paths {
        [] => Ok(BoundaryCurve::unit_disk()),
        [p] => {
            let spec = DomainSpec::load(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            spec.build().map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        _ => Err(CliError::Input("this command takes a single --domain".into())),
    }
}

fn doc<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain values serialize") + "\n"
}

fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",") + "\n";
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out += &cells.join(",");
        out.push('\n');
    }
    out
}

/// Output text and whether every check passed.
struct Output {
    text: String,
    failure: Option<String>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self { text, failure: None }
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    let fmt = cli.format;
    let want_csv = |default_csv: bool| fmt.map_or(default_csv, |f| f == Format::Csv);
    match &cli.command {
        Command::Eval { x, y, tensor, okada } => {
            let d = load_domain(&cli.domain)?;
            let pv = PointedVector::new(*x, *y);
            let th = theta(&d, &pv)?;
            let back = theta(&d, &PointedVector::new(*x, -*y))?;
            let mut out = json!({
                "x": [x.x, x.y],
                "y": [y.x, y.y],
                "theta": th,
                "theta_reverse": back,
                "hilbert": hilbert_metric(&d, &pv)?,
            });
            let mut row = vec![th, back];
            if *tensor {
                let g = metric_tensor(&d, &pv)?;
                out["g"] = json!([[g.g[(0, 0)], g.g[(0, 1)]], [g.g[(1, 0)], g.g[(1, 1)]]]);
                out["g_eigenvalues"] = json!(g.eigenvalues());
                row.extend([g.g[(0, 0)], g.g[(0, 1)], g.g[(1, 1)]]);
            }
            if *okada {
                let r = okada_residual(&d, &pv)?;
                out["okada_residual"] = json!([r.x, r.y]);
                row.extend([r.x, r.y]);
            }
            if want_csv(false) {
                let mut header = vec!["theta", "theta_reverse"];
                if *tensor {
                    header.extend(["g11", "g12", "g22"]);
                }
                if *okada {
                    header.extend(["okada1", "okada2"]);
                }
                return Ok(csv_table(&header, &[row]).into());
            }
            Ok(doc(&out).into())
        }
        Command::Distance { p, q } => {
            let d = load_domain(&cli.domain)?;
            let fwd = funk_distance(&d, p, q)?;
            let bwd = funk_distance(&d, q, p)?;
            let hilbert = 0.5 * (fwd + bwd);
            if want_csv(false) {
                return Ok(csv_table(&["forward", "backward", "hilbert"], &[vec![fwd, bwd, hilbert]]).into());
            }
            Ok(doc(&json!({ "p": [p.x, p.y], "q": [q.x, q.y], "forward": fwd, "backward": bwd, "hilbert": hilbert }))
                .into())
        }
        Command::Tensor { x, y } => {
            let d = load_domain(&cli.domain)?;
            let pv = PointedVector::new(*x, *y);
            let g = metric_tensor(&d, &pv)?;
            let th = theta(&d, &pv)?;
            if want_csv(false) {
                return Ok(csv_table(&["g11", "g12", "g22"], &[vec![g.g[(0, 0)], g.g[(0, 1)], g.g[(1, 1)]]]).into());
            }
            Ok(doc(&json!({
                "g": [[g.g[(0, 0)], g.g[(0, 1)]], [g.g[(1, 0)], g.g[(1, 1)]]],
                "eigenvalues": g.eigenvalues(),
                "positive_definite": g.is_positive_definite(),
                "theta_squared": th * th,
                "g_yy": g.form(y, y),
            }))
            .into())
        }
        Command::Normalize { phi } => {
            let d = load_domain(&cli.domain)?;
            let n = normalize(&d, *phi)?;
            if want_csv(false) {
                let header = ["phi", "alpha", "omega_u", "lambda", "chord_length", "support_height", "f3", "f4"];
                let row = vec![n.phi, n.alpha, n.omega_u, n.lambda, n.chord_length, n.support_width, n.f3(), n.f4()];
                return Ok(csv_table(&header, &[row]).into());
            }
            let mut v = serde_json::to_value(&n).expect("serializable");
            v["f3"] = json!(n.f3());
            v["f4"] = json!(n.f4());
            Ok(doc(&v).into())
        }
        Command::Sphere { r, orientation: o, samples } => {
            let d = load_domain(&cli.domain)?;
            if *samples == 0 {
                return Err(CliError::Input("--samples must be positive".into()));
            }
            let sphere = SphereCurve::new(&d, orientation(*o, *r))?;
            let pts: Vec<_> = (0..*samples)
                .map(|i| sphere.point(std::f64::consts::TAU * i as f64 / *samples as f64))
                .collect();
            if want_csv(true) {
                let rows: Vec<Vec<f64>> = pts.iter().map(|p| vec![p.phi, p.rho, p.c.x, p.c.y]).collect();
                return Ok(csv_table(&["phi", "rho", "x", "y"], &rows).into());
            }
            Ok(doc(&pts).into())
        }
        Command::Curvature { r, phi, orientation: o, which } => {
            let d = load_domain(&cli.domain)?;
            let p = SphereCurve::new(&d, orientation(*o, *r))?.point(*phi);
            let k = curvature_set(&d, &p.curve_point(), &(d.base_point() - p.c))?;
            let mut names = Vec::new();
            let mut values = Vec::new();
            for w in which.split(',').map(str::trim) {
                let v = match w {
                    "inner" => k.kn_inner,
                    "outer" => k.kn_outer,
                    "finsler" => k.k_finsler,
                    "rund" => k.k_rund,
                    other => return Err(CliError::Input(format!("--which: unknown curvature {other:?}"))),
                };
                names.push(w);
                values.push(v);
            }
            if want_csv(false) {
                return Ok(csv_table(&names, &[values]).into());
            }
            let mut out = json!({ "r": r, "phi": phi, "point": [p.c.x, p.c.y] });
            for (n, v) in names.iter().zip(&values) {
                out[*n] = json!(v);
            }
            Ok(doc(&out).into())
        }
        Command::Series { f3, f4, h, quantity, order, exact } => {
            if !(0..=16).contains(order) {
                return Err(CliError::Input("--order must lie in 0..=16".into()));
            }
            let selected = match quantity {
                Some(q) => vec![Quantity::parse(q).ok_or_else(|| CliError::Input(format!("unknown quantity {q:?}")))?],
                None => Quantity::ALL.to_vec(),
            };
            let all = if *exact {
                exact_reports(&ExactExpansions::from_floats(*f3, *f4, *h, *order)?, *f3, *f4, *h)
            } else {
                let jets = GraphJets::normalized(*f3, *f4);
                reports(&Expansions::new(&jets, *h, *order)?, *f3, *f4, *h)
            };
            let chosen: Vec<_> = all.into_iter().filter(|r| selected.contains(&r.quantity)).collect();
            if want_csv(false) {
                let mut out = String::from("quantity,power,computed,published,misprinted\n");
                for r in &chosen {
                    for (i, c) in r.computed.coeffs.iter().enumerate() {
                        let power = r.computed.lo + i as i32;
                        let refd = r.reference.iter().find(|t| t.power == power);
                        let published = refd.and_then(|t| t.published).map_or(String::new(), |p| format!("{p:?}"));
                        let flagged = refd.is_some_and(|t| t.misprinted);
                        let _ = writeln!(out, "{},{power},{c:?},{published},{flagged}", r.quantity.name());
                    }
                }
                return Ok(out.into());
            }
            Ok(doc(&json!({ "f3": f3, "f4": f4, "H": h, "order": order, "exact": exact, "reports": chosen })).into())
        }
        Command::Sweep { phi, r_values, quantities, retained } => {
            let d = load_domain(&cli.domain)?;
            let cfg = SweepConfig {
                phi: *phi,
                r_values: parse_radii(r_values)?,
                quantities: parse_quantities(quantities)?,
                retained: *retained,
                workers: cli.workers,
                ..SweepConfig::default()
            };
            cfg.validate()?;
            let res = run_sweep(&d, &cfg)?;
            let mut problems: Vec<String> = res.failures().map(|(r, e)| format!("r={r}: {e}")).collect();
            for s in &res.summaries {
                if let Some(want) = expected_limit(s.quantity) {
                    if (s.limit - want).abs().is_nan() || (s.limit - want).abs() >= 1e-3 {
                        problems.push(format!("{} limit {} (expected {want})", s.quantity.name(), s.limit));
                    }
                }
                if !s.order_ok {
                    problems.push(format!(
                        "{} decay order {:?} (predicted {:?})",
                        s.quantity.name(),
                        s.fitted_order,
                        s.predicted_order
                    ));
                }
            }
            let text = if want_csv(true) { res.to_csv() } else { doc(&res) };
            Ok(Output {
                text,
                failure: (!problems.is_empty()).then(|| problems.join("; ")),
            })
        }
        Command::Verify => {
            let specs = if cli.domain.is_empty() {
                shipped_specs()
            } else {
                cli.domain
                    .iter()
                    .map(|p| DomainSpec::load(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))))
                    .collect::<CliResult<Vec<_>>>()?
            };
            let cfg = VerifyConfig {
                seed: cli.seed,
                workers: cli.workers,
                ..VerifyConfig::default()
            };
            let rep = verify_all(&specs, &cfg)?;
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            let failed: Vec<String> = rep.failures().map(|c| format!("{} [{}]: {}", c.name, c.domain, c.detail)).collect();
            let text = if want_csv(false) { rep.to_csv() } else { doc(&rep) };
            Ok(Output {
                text,
                failure: (!failed.is_empty()).then(|| failed.join("\n")),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return ExitCode::from(2);
    }
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        match out.failure {
            Some(f) => Err(CliError::Check(f)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
