//! `cnormals`: experiments on the numbers of normals, equilibria and affine
//! diameters of convex bodies.
//!
//! Exit codes: 0 success, 1 malformed input or failed computation, 2
//! unsupported body/counter combination, 3 a bound of `validate` violated.

mod format;
mod suite;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convex_normals::averaging::{estimate_boundary_average, estimate_interior_average, field_map, Body, Counter, FieldMap};
use convex_normals::bodies2d::Body2;
use convex_normals::bodies3d::Point3;
use convex_normals::bodyspec::BodySpec;
use convex_normals::diameters::{count_diameters, diameter_lengths, DiameterCount};
use convex_normals::discretization::{discretization_race, empirical_k0};
use convex_normals::evolute::{contains_evolute, curvature_profile, rolling_ball_radius};
use convex_normals::flows::{evolve_flow, monotonicity, FlowKind, FlowSpec};
use convex_normals::minkowski::{count_minkowski_normals, hexagon_ratio_tau, normed_width_bound};
use convex_normals::normals::{count_normals3, normal_feet2};
use convex_normals::wedges::{all_wedges, euler_residual, exact_average_normals, Face};
use convex_normals::{GeometryError, Point2};
use format::{csv, json, num};
use serde_json::json as j;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "cnormals", version, about = "Normals, equilibria and affine diameters of convex bodies")]
struct Cli {
    /// Directory for report files (created if missing).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; affects wall time only.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo average of a counter over the body (JSON).
    Estimate {
        #[command(flatten)]
        body: BodyArg,
        #[command(flatten)]
        counter: CounterArgs,
        #[command(flatten)]
        sampling: Sampling,
        /// Also estimate the boundary average.
        #[arg(long)]
        surface: bool,
    },
    /// Counts at grid cell centres (CSV matrix, PGM image).
    Field {
        #[command(flatten)]
        body: BodyArg,
        #[command(flatten)]
        counter: CounterArgs,
        #[arg(long, default_value = "256x256", value_parser = parse_grid)]
        grid: (usize, usize),
    },
    /// Wedge decomposition of a polygon (CSV: face_kind, face_index, area, cumulative_i).
    Wedges {
        #[command(flatten)]
        body: BodyArg,
    },
    /// Radii and centres of curvature (CSV: theta, rho, cx, cy).
    Evolute {
        #[command(flatten)]
        body: BodyArg,
        #[arg(long, default_value_t = 720)]
        points: usize,
    },
    /// n(K(t)) along a flow (CSV: t, n_mean, n_lo, n_hi, n_surf_mean, area, perimeter).
    Flow {
        #[command(flatten)]
        body: BodyArg,
        /// outward_eikonal, inward_eikonal or curvature_power:R[:in|:out]
        #[arg(long, default_value = "outward_eikonal")]
        kind: String,
        #[arg(long, default_value_t = 2.0)]
        t_end: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Inscribed polygons against the body (CSV: k, polygon_n, body_n_mean, body_n_lo, body_n_hi, margin).
    Discretize {
        #[command(flatten)]
        body: BodyArg,
        #[arg(long, default_value = "8,16,32,64", value_delimiter = ',')]
        k: Vec<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Affine diameter lengths by direction (CSV: theta, length).
    Diameters {
        #[command(flatten)]
        body: BodyArg,
        /// Number of chord directions in [0, π).
        #[arg(long, default_value_t = 360)]
        theta_sweep: usize,
    },
    /// Inscribed affine regular hexagon ratio of a norm ball (JSON).
    Tau {
        #[arg(long)]
        norm: PathBuf,
    },
    /// Bound battery over the shipped body corpus (CSV and JSON).
    Validate {
        #[arg(long, value_enum, default_value_t = SuiteName::Standard)]
        suite: SuiteName,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count at one point (JSON).
    Point {
        #[command(flatten)]
        body: BodyArg,
        #[command(flatten)]
        counter: CounterArgs,
        /// x,y or x,y,z
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        at: Vec<f64>,
    },
}

#[derive(Args)]
struct BodyArg {
    /// JSON body spec.
    #[arg(long)]
    body: PathBuf,
}

#[derive(Args)]
struct CounterArgs {
    #[arg(long, value_enum, default_value_t = CounterName::Normals)]
    counter: CounterName,
    /// JSON spec of a centrally symmetric norm ball (minkowski counter).
    #[arg(long)]
    norm: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterName {
    Normals,
    Diameters,
    Minkowski,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Standard,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> (u8, &'static str) {
        match self {
            CliError::Geometry(GeometryError::Unsupported(_)) => (2, "unsupported"),
            CliError::Geometry(GeometryError::Spec(_)) | CliError::Usage(_) => (1, "parse"),
            CliError::Geometry(_) => (1, "geometry"),
            CliError::Io { .. } => (1, "io"),
        }
    }
}

/// A report file; `show` ones are also printed.
struct Artifact {
    file: String,
    bytes: Vec<u8>,
    show: bool,
}

impl Artifact {
    fn shown(file: &str, text: String) -> Self {
        Artifact { file: file.into(), bytes: text.into_bytes(), show: true }
    }

    fn stored(file: &str, bytes: impl Into<Vec<u8>>) -> Self {
        Artifact { file: file.into(), bytes: bytes.into(), show: false }
    }
}

struct Run {
    artifacts: Vec<Artifact>,
    /// Reproducibility header fields.
    seed: Option<u64>,
    hashes: Vec<(&'static str, String)>,
    violated: bool,
}

impl Run {
    fn new(artifacts: Vec<Artifact>) -> Self {
        Run { artifacts, seed: None, hashes: Vec::new(), violated: false }
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn hash(mut self, key: &'static str, spec: &BodySpec) -> Self {
        self.hashes.push((key, format::sha256_hex(&spec.to_json())));
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json(&j!({"error": "threads", "reason": e.to_string()})));
            return ExitCode::from(1);
        }
    }
    let name = command_name(&cli.command);
    match execute(cli.command).and_then(|run| finish(name, run, cli.out.as_deref())) {
        Ok(code) => code,
        Err(e) => {
            let (code, kind) = e.code();
            eprintln!("{}", json(&j!({"error": kind, "reason": e.to_string()})));
            ExitCode::from(code)
        }
    }
}

fn finish(name: &str, run: Run, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let mut header = serde_json::Map::new();
    header.insert("tool".into(), j!("cnormals"));
    header.insert("version".into(), j!(env!("CARGO_PKG_VERSION")));
    header.insert("command".into(), j!(name));
    header.insert("seed".into(), j!(run.seed));
    for (key, hash) in &run.hashes {
        header.insert((*key).into(), j!(hash));
    }
    let header = json(&header);
    eprintln!("# {header}");
    for a in run.artifacts.iter().filter(|a| a.show) {
        print!("{}", String::from_utf8_lossy(&a.bytes));
        if !a.bytes.ends_with(b"\n") {
            println!();
        }
    }
    if let Some(dir) = out {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let mut files = run.artifacts;
        files.push(Artifact::stored("header.json", format!("{header}\n").into_bytes()));
        for a in &mut files {
            if a.file.ends_with(".json") && !a.bytes.ends_with(b"\n") {
                a.bytes.push(b'\n');
            }
            let path = dir.join(&a.file);
            std::fs::write(&path, &a.bytes).map_err(io(&path))?;
        }
    }
    Ok(if run.violated { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Estimate { .. } => "estimate",
        Command::Field { .. } => "field",
        Command::Wedges { .. } => "wedges",
        Command::Evolute { .. } => "evolute",
        Command::Flow { .. } => "flow",
        Command::Discretize { .. } => "discretize",
        Command::Diameters { .. } => "diameters",
        Command::Tau { .. } => "tau",
        Command::Validate { .. } => "validate",
        Command::Point { .. } => "point",
    }
}

fn execute(command: Command) -> Result<Run, CliError> {
    match command {
        Command::Estimate { body, counter, sampling, surface } => {
            let spec = load(&body.body)?;
            let (counter, norm) = counter.resolve()?;
            let built = spec.build()?;
            let interior = estimate_interior_average(&built, &counter, sampling.samples, sampling.seed)?;
            let mut report = serde_json::to_value(interior).expect("reports serialize");
            report["counter"] = j!(counter.name());
            if surface {
                let boundary = estimate_boundary_average(&built, &counter, sampling.samples, sampling.seed)?;
                report["surface"] = serde_json::to_value(boundary).expect("reports serialize");
            }
            let run = Run::new(vec![Artifact::shown("estimate.json", json(&report))]).seed(sampling.seed).hash("body_sha256", &spec);
            Ok(with_norm(run, norm.as_ref()))
        }
        Command::Field { body, counter, grid } => {
            let spec = load(&body.body)?;
            let (counter, norm) = counter.resolve()?;
            let planar = spec.build_planar()?;
            let map = field_map(&planar, grid.0, grid.1, &counter)?;
            let matrix: String = map
                .cells
                .chunks(map.nx)
                .map(|row| row.iter().map(i32::to_string).collect::<Vec<_>>().join(",") + "\n")
                .collect();
            let summary = j!({
                "nx": map.nx,
                "ny": map.ny,
                "lower": [map.lower.x, map.lower.y],
                "upper": [map.upper.x, map.upper.y],
                "outside": FieldMap::OUTSIDE,
                "degenerate": FieldMap::DEGENERATE,
                "counter": counter.name(),
                "histogram": histogram(&map.cells),
            });
            let run = Run::new(vec![
                Artifact::shown("field.csv", matrix),
                Artifact::stored("field.pgm", format::pgm(map.nx, map.ny, &map.cells)),
                Artifact::stored("field.json", json(&summary)),
            ])
            .hash("body_sha256", &spec);
            Ok(with_norm(run, norm.as_ref()))
        }
        Command::Wedges { body } => {
            let spec = load(&body.body)?;
            let Body2::Polygon(poly) = spec.build_planar()? else {
                return Err(GeometryError::Unsupported("wedges needs a polygon".into()).into());
            };
            let mut cumulative = 0.0;
            let rows: Vec<Vec<String>> = all_wedges(&poly)
                .into_iter()
                .map(|w| {
                    cumulative += w.area;
                    let (kind, index) = match w.face {
                        Face::Edge(i) => ("edge", i),
                        Face::Vertex(i) => ("vertex", i),
                    };
                    vec![kind.into(), index.to_string(), num(w.area), num(cumulative)]
                })
                .collect();
            let avg = exact_average_normals(&poly);
            let summary = j!({
                "integral": avg.integral,
                "area": poly.area(),
                "mean": avg.mean,
                "euler_residual": euler_residual(&poly),
            });
            Ok(Run::new(vec![
                Artifact::shown("wedges.csv", csv(&["face_kind", "face_index", "area", "cumulative_i"], rows)),
                Artifact::stored("wedges.json", json(&summary)),
            ])
            .hash("body_sha256", &spec))
        }
        Command::Evolute { body, points } => {
            let spec = load(&body.body)?;
            let smooth = spec.build_smooth()?;
            if points == 0 {
                return Err(CliError::Usage("--points must be positive".into()));
            }
            let rows = curvature_profile(&smooth, points)
                .into_iter()
                .map(|e| vec![num(e.theta), num(e.rho), num(e.center.x), num(e.center.y)]);
            let containment = contains_evolute(&smooth);
            let summary = j!({ "containment": containment, "rolling_ball_radius": rolling_ball_radius(&smooth) });
            Ok(Run::new(vec![
                Artifact::shown("evolute.csv", csv(&["theta", "rho", "cx", "cy"], rows)),
                Artifact::stored("evolute.json", json(&summary)),
            ])
            .hash("body_sha256", &spec))
        }
        Command::Flow { body, kind, t_end, steps, sampling } => {
            let spec = load(&body.body)?;
            let smooth = spec.build_smooth()?;
            let flow = FlowSpec::new(FlowKind::parse(&kind)?, t_end, steps)?;
            let trace = evolve_flow(&smooth, &flow, sampling.samples, sampling.seed)?;
            let rows = (0..trace.times.len()).map(|i| {
                let (n, s, b) = (&trace.n_values[i], &trace.n_surf_values[i], &trace.bodies[i]);
                vec![num(trace.times[i]), num(n.mean), num(n.ci95.0), num(n.ci95.1), num(s.mean), num(b.area()), num(b.perimeter())]
            });
            let summary = j!({
                "flow": flow,
                "truncated": trace.truncated,
                "monotonicity": monotonicity(&trace.n_values),
            });
            if trace.truncated {
                eprintln!("# flow truncated after t = {}: convexity lost", num(*trace.times.last().unwrap_or(&0.0)));
            }
            Ok(Run::new(vec![
                Artifact::shown("flow.csv", csv(&["t", "n_mean", "n_lo", "n_hi", "n_surf_mean", "area", "perimeter"], rows)),
                Artifact::stored("flow.json", json(&summary)),
            ])
            .seed(sampling.seed)
            .hash("body_sha256", &spec))
        }
        Command::Discretize { body, k, sampling } => {
            let spec = load(&body.body)?;
            let smooth = spec.build_smooth()?;
            let rows = discretization_race(&smooth, &k, sampling.samples, sampling.seed)?;
            let table = rows.iter().map(|r| {
                vec![r.k.to_string(), num(r.polygon_n), num(r.body_n.mean), num(r.body_n.ci95.0), num(r.body_n.ci95.1), num(r.margin)]
            });
            let summary = j!({ "empirical_k0": empirical_k0(&rows), "body_n": rows.first().map(|r| r.body_n) });
            Ok(Run::new(vec![
                Artifact::shown("discretize.csv", csv(&["k", "polygon_n", "body_n_mean", "body_n_lo", "body_n_hi", "margin"], table)),
                Artifact::stored("discretize.json", json(&summary)),
            ])
            .seed(sampling.seed)
            .hash("body_sha256", &spec))
        }
        Command::Diameters { body, theta_sweep } => {
            let spec = load(&body.body)?;
            let smooth = spec.build_smooth()?;
            if theta_sweep == 0 {
                return Err(CliError::Usage("--theta-sweep must be positive".into()));
            }
            let rows = diameter_lengths(&smooth, theta_sweep).into_iter().map(|(t, d)| vec![num(t), num(d)]);
            Ok(Run::new(vec![Artifact::shown("diameters.csv", csv(&["theta", "length"], rows))]).hash("body_sha256", &spec))
        }
        Command::Tau { norm } => {
            let spec = load(&norm)?;
            let ball = spec.build_norm()?;
            let report = j!({ "tau": hexagon_ratio_tau(&ball), "width_bound": normed_width_bound(&ball), "area": ball.area() });
            Ok(Run::new(vec![Artifact::shown("tau.json", json(&report))]).hash("norm_sha256", &spec))
        }
        Command::Validate { suite: SuiteName::Standard, samples, seed } => {
            let checks = suite::run(samples, seed)?;
            let rows = checks.iter().map(|c| {
                let value = c.estimate.exact.unwrap_or(c.estimate.mean);
                vec![
                    c.body.clone(),
                    json(&c.class).trim_matches('"').to_string(),
                    num(value),
                    num(c.estimate.ci95.0),
                    num(c.estimate.ci95.1),
                    num(c.bound),
                    c.ok.to_string(),
                ]
            });
            let mut run = Run::new(vec![
                Artifact::shown("validate.csv", csv(&["body", "class", "n", "n_lo", "n_hi", "bound", "ok"], rows)),
                Artifact::stored("validate.json", json(&checks)),
            ])
            .seed(seed);
            run.violated = checks.iter().any(|c| !c.ok);
            Ok(run)
        }
        Command::Point { body, counter, at } => {
            let spec = load(&body.body)?;
            let (counter, norm) = counter.resolve()?;
            let report = match (spec.build()?, at.as_slice()) {
                (Body::Polytope(poly), &[x, y, z]) => {
                    if !matches!(counter, Counter::Normals) {
                        return Err(GeometryError::Unsupported(format!("{} counter on a polytope", counter.name())).into());
                    }
                    let c = count_normals3(&poly, &Point3::new(x, y, z))?;
                    let mut r = j!({
                        "count": c.count,
                        "by_dim": { "0": c.by_dim[0], "1": c.by_dim[1], "2": c.by_dim[2] },
                    });
                    if c.flagged {
                        r["flagged"] = j!(true);
                    }
                    r
                }
                (Body::Planar(planar), &[x, y]) => point2(&planar, &counter, Point2::new(x, y))?,
                (Body::Polytope(_), _) => return Err(CliError::Usage("--at needs x,y,z for a polytope".into())),
                (Body::Planar(_), _) => return Err(CliError::Usage("--at needs x,y for a planar body".into())),
            };
            let run = Run::new(vec![Artifact::shown("point.json", json(&report))]).hash("body_sha256", &spec);
            Ok(with_norm(run, norm.as_ref()))
        }
    }
}

fn point2(body: &Body2, counter: &Counter, p: Point2) -> Result<serde_json::Value, CliError> {
    Ok(match counter {
        Counter::Normals => {
            let feet = normal_feet2(body, p)?;
            let list: Vec<_> = feet.iter().map(|f| j!({ "foot": [f.foot.x, f.foot.y], "index": f.index })).collect();
            j!({ "count": feet.len(), "feet": list })
        }
        Counter::Diameters => match count_diameters(body, p)? {
            DiameterCount::Finite(n) => j!({ "count": n }),
            DiameterCount::Degenerate => j!({ "count": null, "degenerate": true }),
            DiameterCount::Infinite { edges } => j!({ "count": null, "infinite": [edges.0, edges.1] }),
        },
        Counter::Minkowski(m) => {
            let Body2::Smooth(s) = body else {
                return Err(GeometryError::Unsupported("minkowski counter needs a smooth body".into()).into());
            };
            j!({ "count": count_minkowski_normals(m, s, p)? })
        }
    })
}

impl CounterArgs {
    fn resolve(&self) -> Result<(Counter, Option<BodySpec>), CliError> {
        match (self.counter, &self.norm) {
            (CounterName::Normals, None) => Ok((Counter::Normals, None)),
            (CounterName::Diameters, None) => Ok((Counter::Diameters, None)),
            (CounterName::Minkowski, Some(path)) => {
                let spec = load(path)?;
                Ok((Counter::Minkowski(spec.build_norm()?), Some(spec)))
            }
            (CounterName::Minkowski, None) => Err(CliError::Usage("--counter minkowski needs --norm".into())),
            (_, Some(_)) => Err(CliError::Usage("--norm only applies to --counter minkowski".into())),
        }
    }
}

fn with_norm(run: Run, norm: Option<&BodySpec>) -> Run {
    match norm {
        Some(spec) => run.hash("norm_sha256", spec),
        None => run,
    }
}

fn load(path: &Path) -> Result<BodySpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    BodySpec::from_json(&text).map_err(|e| match e {
        GeometryError::Spec(msg) => GeometryError::Spec(format!("{}: {msg}", path.display())).into(),
        other => other.into(),
    })
}

fn histogram(cells: &[i32]) -> serde_json::Map<String, serde_json::Value> {
    let mut counts = std::collections::BTreeMap::<i32, usize>::new();
    for &c in cells {
        *counts.entry(c).or_default() += 1;
    }
    counts.into_iter().map(|(k, v)| (k.to_string(), j!(v))).collect()
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("grid size {v:?}: {e}"));
    Ok((parse(w)?, parse(h)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_parsers() {
        assert_eq!(parse_grid("256x128"), Ok((256, 128)));
        assert!(parse_grid("256").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
