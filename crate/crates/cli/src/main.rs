//! `illum`: construct, solve and verify multiple illuminations from the
//! command line. Results go to standard output as one JSON document, a
//! short summary to standard error.
//!
//! Exit status: 0 when the result is positive, 1 when a verification or
//! condition comes out negative, 2 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use illumination::ball::{
    b3_band_analysis, ball_upper_bound, illumination_to_cover, lift_cover_to_directions,
    recursive_ball_construction,
};
use illumination::cap_body::{
    b2_single_spike_directions, b3_capbody_directions, cap_body_number_top_bottom,
    cap_body_number_top_only, closed_cap_of_ball, incompatible_apexes, run_lemma_suite, CapBody,
};
use illumination::geometry::{Ball, Tolerance};
use illumination::io::{self, SCHEMA};
use illumination::polygon::{
    check_consecutive_angle_condition, check_grouped_angle_condition, equiangular_tangent_polygon,
    find_grouping, illumination_number_polygon, lower_bound, min_mfold_pierce_exhaustive,
    regular_polygon_number, smooth_2d_directions, vertex_arcs, SupportFunctionBody,
};
use illumination::verify::{verify_mfold, verify_polygon, Body, IlluminationReport};
use illumination::{Error, Result};

#[derive(Parser)]
#[command(name = "illum", version, about = "Multiple illumination of convex bodies")]
struct Cli {
    /// Worker threads for sampled verification (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Sampling {
    /// Boundary samples (default depends on the dimension).
    #[arg(long)]
    samples: Option<usize>,
    /// Strict margin a direction must clear to count.
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
}

impl Sampling {
    fn tolerance(&self, d: usize) -> Result<Tolerance<f64>> {
        Tolerance::new(self.margin, self.samples.unwrap_or(Tolerance::<f64>::for_dim(d).samples))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact m-fold illumination number of a polygon, with optimal directions.
    PolygonSolve {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(short)]
        m: usize,
        /// Write the optimal directions to this file.
        #[arg(long)]
        emit_directions: Option<PathBuf>,
        /// Use the enumeration solver (n <= 9, m <= 4).
        #[arg(long)]
        exhaustive: bool,
    },
    /// The closed form for the regular n-gon.
    PolygonFormula {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
    },
    /// Exterior-angle conditions for 2m+1 directions to suffice.
    PolygonCheckCondition {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(short)]
        m: usize,
        /// Group breakpoints, e.g. 0,2,4,6,8 (grouped condition).
        #[arg(long, value_delimiter = ',')]
        breakpoints: Option<Vec<usize>>,
        /// Search all groupings (n <= 12).
        #[arg(long, conflicts_with = "breakpoints")]
        search: bool,
    },
    /// Exact verification of directions on a polygon.
    PolygonVerify {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        dirs: PathBuf,
        #[arg(short)]
        m: usize,
    },
    /// 2m+1 directions for a circle or an ellipse.
    SmoothConstruct {
        /// circle or ellipse
        #[arg(long, default_value = "circle")]
        body: String,
        /// Radius, or semi-axis along x.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Semi-axis along y (ellipse).
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(short)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Illuminating directions for the d-ball.
    BallConstruct {
        #[arg(short)]
        m: usize,
        #[arg(short, default_value_t = 3)]
        d: usize,
        /// Tilt of the 3-ball construction (default: half the admissible maximum).
        #[arg(long)]
        eps: Option<f64>,
        /// Highest dimension that is sampled; above it the size is formula-trusted.
        #[arg(long, default_value_t = 5)]
        verify_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Sampled verification of directions on the d-ball.
    BallVerify {
        #[arg(long)]
        dirs: PathBuf,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Turn directions for the d-ball into a cover and lift it to dimension d+1.
    BallLift {
        #[arg(long)]
        dirs: PathBuf,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Directions for a prism cap body of the 3-ball, or a single spike on the disk.
    CapbodyConstruct {
        #[arg(long)]
        n: Option<usize>,
        #[arg(short)]
        m: usize,
        /// Only the top apex above the ring.
        #[arg(long, conflicts_with = "with_bottom")]
        top_only: bool,
        /// Top and bottom apexes.
        #[arg(long)]
        with_bottom: bool,
        /// Single apex of a disk, e.g. 1.5,0 (instead of a prism).
        #[arg(long, value_delimiter = ',', conflicts_with = "n")]
        spike: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the cap body to this file.
        #[arg(long)]
        spec_out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Sampled verification of directions on a cap body.
    CapbodyVerify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        dirs: PathBuf,
        #[arg(short)]
        m: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Validity, closed caps and incompatible apex pairs of a cap body.
    CapbodyValidate {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Lower bound for every body and, for d >= 3, the ball upper bound.
    Bounds {
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: usize,
    },
    /// Seeded checks of the structural facts about spikes and caps.
    LemmaSuite {
        #[arg(long)]
        seed: u64,
        /// Random trials per check.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Quiet,
    Info,
    Debug,
}

fn log_level() -> Level {
    match std::env::var("ILLUM_LOG").as_deref() {
        Ok("quiet") => Level::Quiet,
        Ok("debug") => Level::Debug,
        _ => Level::Info,
    }
}

struct Outcome {
    positive: bool,
    payload: Value,
    summary: String,
}

impl Outcome {
    fn ok(payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            positive: true,
            payload,
            summary: summary.into(),
        }
    }

    fn verdict(positive: bool, payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            positive,
            payload,
            summary: summary.into(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, doc: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn report_json(r: &IlluminationReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn report_summary(r: &IlluminationReport) -> String {
    format!(
        "{}: worst count {} (need {}), margin {:.3e} over {} samples",
        if r.pass { "pass" } else { "FAIL" },
        r.worst_count,
        r.m,
        r.worst_margin,
        r.samples
    )
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::PolygonSolve {
            polygon,
            m,
            emit_directions,
            exhaustive,
        } => {
            let poly = io::polygon_from_json(&read(&polygon)?)?;
            let sol = if exhaustive {
                min_mfold_pierce_exhaustive(&vertex_arcs(&poly, m), m)?
            } else {
                illumination_number_polygon(&poly, m)?
            };
            let mut out = io::solution_to_json(&sol)?;
            let arcs = vertex_arcs(&poly, m);
            out["arc_lengths"] = arcs.arcs.iter().map(|a| io::format_angle(a.length())).collect();
            out["lower_bound"] = json!(lower_bound(m, 2)?);
            if let Some(path) = emit_directions {
                write(&path, &io::rational_directions_to_json(&sol.directions()?))?;
            }
            let summary = format!("{}-gon, m = {m}: optimum {}", poly.len(), sol.optimum);
            Ok(Outcome::ok(out, summary))
        }
        Command::PolygonFormula { n, m } => {
            let v = regular_polygon_number(n, m)?;
            Ok(Outcome::ok(json!({"value": v}), format!("regular {n}-gon, m = {m}: {v}")))
        }
        Command::PolygonCheckCondition {
            polygon,
            m,
            breakpoints,
            search,
        } => {
            let poly = io::polygon_from_json(&read(&polygon)?)?;
            let (kind, holds, b) = if search {
                let b = find_grouping(&poly, m)?;
                ("grouped", b.is_some(), b)
            } else if let Some(b) = breakpoints {
                ("grouped", check_grouped_angle_condition(&poly, m, &b)?, Some(b))
            } else {
                ("consecutive", check_consecutive_angle_condition(&poly, m)?, None)
            };
            let mut out = json!({"condition": kind, "holds": holds});
            if let Some(b) = b {
                out["breakpoints"] = json!(b);
            }
            Ok(Outcome::verdict(holds, out, format!("{kind} condition, m = {m}: {holds}")))
        }
        Command::PolygonVerify { polygon, dirs, m } => {
            let poly = io::polygon_from_json(&read(&polygon)?)?;
            let u = io::rational_directions_from_json(&read(&dirs)?)?;
            let r = verify_polygon(&poly, &u, m)?;
            Ok(Outcome::verdict(r.pass, report_json(&r), report_summary(&r)))
        }
        Command::SmoothConstruct {
            body,
            a,
            b,
            m,
            out,
            sampling,
        } => {
            let k = match body.as_str() {
                "circle" => SupportFunctionBody::circle(a),
                "ellipse" => SupportFunctionBody::ellipse(a, b),
                other => return Err(Error::Parse(format!("unknown body {other:?}; use circle or ellipse"))),
            };
            let poly = equiangular_tangent_polygon(&k, m)?;
            let dirs = smooth_2d_directions(&k, m)?;
            let r = verify_mfold(&Body::Smooth(k.clone()), &dirs, m, &sampling.tolerance(2)?)?;
            let doc = io::directions_to_json(&dirs);
            if let Some(path) = out {
                write(&path, &doc)?;
            }
            let payload = json!({
                "body": k.name(),
                "tangent_normals": poly.normals.iter().map(|t| io::format_angle(*t)).collect::<Vec<_>>(),
                "tangent_vertices": poly.vertices,
                "directions": doc["entries"],
                "report": report_json(&r),
            });
            Ok(Outcome::verdict(r.pass, payload, format!("{} directions; {}", dirs.total(), report_summary(&r))))
        }
        Command::BallConstruct {
            m,
            d,
            eps,
            verify_limit,
            out,
            sampling,
        } => {
            let tol = sampling.tolerance(d)?;
            let (dirs, report, bands) = if d == 3 {
                let dirs = illumination::ball::b3_direction_multiset(m, eps)?;
                let r = verify_mfold(&Body::Ball(Ball::new(3)?), &dirs, m, &tol)?;
                let bands = b3_band_analysis(m, eps, tol.samples)?;
                (dirs, Some(r), Some(bands))
            } else {
                if eps.is_some() {
                    return Err(Error::Domain("--eps applies to d = 3 only".into()));
                }
                let c = recursive_ball_construction(m, d, &tol, verify_limit)?;
                (c.directions, c.report, None)
            };
            let doc = io::directions_to_json(&dirs);
            if let Some(path) = out {
                write(&path, &doc)?;
            }
            let mut payload = json!({
                "dim": d,
                "m": m,
                "size": dirs.total(),
                "formula": ball_upper_bound(m, d)?,
                "directions": doc["entries"],
                "verified": report.is_some(),
            });
            if let Some(r) = &report {
                payload["report"] = report_json(r);
            }
            if let Some(b) = bands {
                payload["bands"] = serde_json::to_value(b).expect("serializable");
            }
            let pass = report.as_ref().is_none_or(|r| r.pass);
            let summary = match &report {
                Some(r) => format!("{} directions; {}", dirs.total(), report_summary(r)),
                None => format!("{} directions; formula-trusted, not sampled", dirs.total()),
            };
            Ok(Outcome::verdict(pass, payload, summary))
        }
        Command::BallVerify { dirs, m, d, sampling } => {
            let u = io::directions_from_json(&read(&dirs)?)?;
            let r = verify_mfold(&Body::Ball(Ball::new(d)?), &u, m, &sampling.tolerance(d)?)?;
            Ok(Outcome::verdict(r.pass, report_json(&r), report_summary(&r)))
        }
        Command::BallLift {
            dirs,
            m,
            d,
            out,
            sampling,
        } => {
            let u = io::directions_from_json(&read(&dirs)?)?;
            let cover = illumination_to_cover(&u, m, d, &sampling.tolerance(d)?)?;
            let lifted = lift_cover_to_directions(&cover)?;
            let doc = io::directions_to_json(&lifted);
            if let Some(path) = out {
                write(&path, &doc)?;
            }
            let payload = json!({
                "cover": serde_json::to_value(&cover).expect("serializable"),
                "dim": d + 1,
                "directions": doc["entries"],
            });
            let summary = format!("{} translates -> {} directions in dimension {}", cover.translates.len(), lifted.total(), d + 1);
            Ok(Outcome::ok(payload, summary))
        }
        Command::CapbodyConstruct {
            n,
            m,
            top_only,
            with_bottom,
            spike,
            out,
            spec_out,
            sampling,
        } => {
            let (body, dirs, report, formula, tilt) = match (spike, n) {
                (Some(v), _) => {
                    let body = CapBody::new(2, vec![v.clone()])?;
                    let dirs = b2_single_spike_directions(&v, m)?;
                    let r = verify_mfold(&Body::CapBody(body.clone()), &dirs, m, &sampling.tolerance(2)?)?;
                    (body, dirs, r, 2 * m + 1, None)
                }
                (None, Some(n)) => {
                    let _ = top_only;
                    let c = b3_capbody_directions(n, m, with_bottom, &sampling.tolerance(3)?)?;
                    let formula = if with_bottom {
                        cap_body_number_top_bottom(n, m)?
                    } else {
                        cap_body_number_top_only(n, m)?
                    };
                    (c.body, c.directions, c.report, formula, Some(c.tilt))
                }
                (None, None) => return Err(Error::Domain("give --n for a prism or --spike for a disk apex".into())),
            };
            let doc = io::directions_to_json(&dirs);
            if let Some(path) = out {
                write(&path, &doc)?;
            }
            if let Some(path) = spec_out {
                write(&path, &io::cap_body_to_json(&body))?;
            }
            let mut payload = json!({
                "spec": io::cap_body_to_json(&body),
                "size": dirs.total(),
                "formula": formula,
                "directions": doc["entries"],
                "report": report_json(&report),
            });
            if let Some(t) = tilt {
                payload["tilt"] = json!(t);
            }
            let summary = format!("{} directions (formula {formula}); {}", dirs.total(), report_summary(&report));
            Ok(Outcome::verdict(report.pass, payload, summary))
        }
        Command::CapbodyVerify { spec, dirs, m, sampling } => {
            let body = io::cap_body_from_json(&read(&spec)?)?;
            let u = io::directions_from_json(&read(&dirs)?)?;
            let d = body.dim();
            let r = verify_mfold(&Body::CapBody(body), &u, m, &sampling.tolerance(d)?)?;
            Ok(Outcome::verdict(r.pass, report_json(&r), report_summary(&r)))
        }
        Command::CapbodyValidate { spec } => {
            let body = io::cap_body_from_json(&read(&spec)?)?;
            let v = body.apexes();
            let caps = v
                .iter()
                .map(|a| {
                    let c = closed_cap_of_ball(a)?;
                    Ok(json!({"center": c.center, "radius": io::format_angle(c.radius)}))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut pairs = Vec::new();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if incompatible_apexes(&v[i], &v[j]) {
                        pairs.push([i, j]);
                    }
                }
            }
            let valid = body.is_valid();
            let payload = json!({"valid": valid, "caps": caps, "incompatible_pairs": pairs});
            Ok(Outcome::verdict(valid, payload, format!("valid: {valid}; {} incompatible apex pairs", pairs.len())))
        }
        Command::Bounds { m, d } => {
            let lower = lower_bound(m, d)?;
            let mut payload = json!({"lower": lower});
            let mut summary = format!("m = {m}, d = {d}: at least {lower}");
            if d >= 3 {
                let upper = ball_upper_bound(m, d)?;
                payload["upper"] = json!(upper);
                summary += &format!(", ball needs at most {upper}");
            }
            Ok(Outcome::ok(payload, summary))
        }
        Command::LemmaSuite { seed, samples } => {
            let results = run_lemma_suite(seed, samples);
            let pass = results.iter().all(|r| r.pass);
            let lines: Vec<String> = results
                .iter()
                .map(|r| format!("  [{}] {} ({} samples)", if r.pass { "PASS" } else { "FAIL" }, r.name, r.samples))
                .collect();
            let payload = json!({
                "seed": seed,
                "pass": pass,
                "lemmas": serde_json::to_value(&results).expect("serializable"),
            });
            Ok(Outcome::verdict(pass, payload, format!("lemma suite, seed {seed}\n{}", lines.join("\n"))))
        }
    }
}

fn emit(mut payload: Value, status: &str) {
    if let Value::Object(map) = &mut payload {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("status".into(), json!(status));
    }
    // A closed pipe downstream is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string(&payload).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            emit(json!({"message": e.kind().to_string()}), "error");
            return ExitCode::from(2);
        }
    };
    let level = log_level();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            emit(json!({"message": e.to_string()}), "error");
            return ExitCode::from(2);
        }
    }
    let started = std::time::Instant::now();
    match run(cli.command) {
        Ok(out) => {
            if level >= Level::Info {
                eprintln!("{}", out.summary);
            }
            if level >= Level::Debug {
                eprintln!("elapsed {:.3} s", started.elapsed().as_secs_f64());
            }
            let status = if out.positive { "ok" } else { "fail" };
            emit(out.payload, status);
            if out.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if level >= Level::Info {
                eprintln!("error: {e}");
            }
            emit(json!({"message": e.to_string()}), "error");
            ExitCode::from(2)
        }
    }
}
