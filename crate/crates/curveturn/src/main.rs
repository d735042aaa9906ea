use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curveturn::error::Error;
use curveturn::generate::{generate, CurveSpec, Family};
use curveturn::io;
use curveturn::ltb;
use curveturn::regularity;
use curveturn::svg::{render_svg, Marker};
use curveturn::turn;
use curveturn::verify;
use curveturn::SampledCurve;

#[derive(Parser)]
#[command(
    name = "curveturn",
    version,
    about = "Turn, local turn bounds, Lipschitz turn and reach analysis for planar curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Curve CSV file (header `s,x,y`, trailer `# closed=`)
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Curve spec JSON file ({"family", "params", "samples"})
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Generator family: circle|ellipse|ngon|rounded|bone|square
    #[arg(long)]
    family: Option<String>,
    /// Radius (circle, bone half-circles)
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Ellipse semi-axes
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Bone gap
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Bone column separation (default 4r)
    #[arg(long)]
    w: Option<f64>,
    #[arg(long, default_value_t = 6)]
    sides: usize,
    #[arg(long, default_value_t = 1.0)]
    circumradius: f64,
    #[arg(long, default_value_t = 0.3)]
    corner_radius: f64,
    /// Square side length
    #[arg(long, default_value_t = 1.0)]
    side: f64,
    /// Sample count for generated curves
    #[arg(long, default_value_t = 4096)]
    samples: usize,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Tolerance (refinement tolerance for `turn`, slack tolerance for
    /// `verify`); CURVETURN_TOL sets the default, the flag wins
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (stdout when absent)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write an SVG rendering with witness annotations
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a curve and write it as CSV
    Gen {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Turn estimate by inscribed-polygon refinement
    Turn {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Locally-turn-bounded scale scan
    Ltb {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Turn threshold in radians
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
    },
    /// Lipschitz-turn constant scan
    Lipschitz {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Shortest subarc length considered (default: four sample spacings)
        #[arg(long)]
        min_len: Option<f64>,
    },
    /// Reach estimation
    Reach {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// pairwise|bisection|both
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Osculating-disk regularity check at a radius
    Parreg {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Osculating radius to test
        #[arg(long)]
        check_r: f64,
    },
    /// Cumulative turn profile as CSV
    Profile {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a claim: forward|converse|length-bound|schur|turn-containment|eq-bounds|all
    Verify {
        claim: String,
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Osculating radius for forward / length-bound (default derived
        /// from the curve)
        #[arg(long)]
        check_r: Option<f64>,
        /// Turn threshold for the forward claim
        #[arg(long)]
        check_theta: Option<f64>,
    },
}

fn category(e: &Error) -> (&'static str, i32) {
    match e {
        Error::HypothesisFailed(_)
        | Error::LipschitzHypothesisFailed(_)
        | Error::GeometryPreconditionFailed(_)
        | Error::CornerPresent
        | Error::BadBracket(_)
        | Error::NoStraightArc
        | Error::DeltaExceeded { .. }
        | Error::NotConvexInner
        | Error::NoIntersection
        | Error::ChainViolation => ("hypothesis", 2),
        _ => ("input", 3),
    }
}

fn load_curve(args: &CurveArgs) -> Result<SampledCurve, Error> {
    if let Some(path) = &args.input {
        return io::read_curve_csv(path);
    }
    if let Some(path) = &args.spec {
        return generate(&io::read_curve_spec(path)?);
    }
    let family = args.family.as_deref().ok_or_else(|| {
        Error::InvalidSpec("no curve given: pass --in, --spec or --family".to_string())
    })?;
    let family = match family {
        "circle" => Family::Circle { r: args.r },
        "ellipse" => Family::Ellipse {
            a: args.a,
            b: args.b,
        },
        "ngon" | "regular_ngon" => Family::RegularNGon {
            sides: args.sides,
            circumradius: args.circumradius,
        },
        "rounded" | "rounded_polygon" => Family::RoundedPolygon {
            sides: args.sides,
            circumradius: args.circumradius,
            corner_radius: args.corner_radius,
        },
        "bone" => Family::Bone {
            r: args.r,
            delta: args.delta,
            w: args.w,
        },
        "square" => Family::RegularNGon {
            sides: 4,
            circumradius: args.side * std::f64::consts::FRAC_1_SQRT_2,
        },
        other => {
            return Err(Error::InvalidSpec(format!(
                "unknown family '{other}' (circle|ellipse|ngon|rounded|bone|square)"
            )))
        }
    };
    generate(&CurveSpec {
        family,
        samples: args.samples,
    })
}

fn env_tol() -> Option<f64> {
    std::env::var("CURVETURN_TOL").ok()?.parse().ok()
}

fn tol_or(output: &OutputArgs, default: f64) -> f64 {
    output.tol.or_else(env_tol).unwrap_or(default)
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_svg(output: &OutputArgs, curve: &SampledCurve, markers: &[Marker]) -> Result<(), Error> {
    if let Some(path) = &output.svg {
        std::fs::write(path, render_svg(curve, markers))?;
    }
    Ok(())
}

fn json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

fn point_markers(points: &[curveturn::CurvePoint], label: &str) -> Vec<Marker> {
    points
        .iter()
        .enumerate()
        .map(|(i, cp)| Marker {
            at: cp.position,
            radius: 0.0,
            label: if i == 0 {
                label.to_string()
            } else {
                String::new()
            },
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Gen { curve, output } => {
            let c = load_curve(&curve)?;
            emit(&output, &io::write_curve_csv(&c))?;
            emit_svg(&output, &c, &[])?;
            Ok(0)
        }
        Command::Turn { curve, output } => {
            let c = load_curve(&curve)?;
            let report = turn::curve_turn(&c, tol_or(&output, turn::DEFAULT_TURN_TOL));
            let text = match output.format {
                Format::Json => json_pretty(&report),
                Format::Csv => format!(
                    "value,refinement_levels,converged,last_increment\n{},{},{},{}\n",
                    report.value,
                    report.refinement_levels,
                    report.converged,
                    report.last_increment
                ),
            };
            emit(&output, &text)?;
            emit_svg(&output, &c, &[])?;
            Ok(0)
        }
        Command::Ltb {
            curve,
            output,
            theta,
        } => {
            let c = load_curve(&curve)?;
            let report = ltb::max_delta(&c, theta)?;
            let text = match output.format {
                Format::Json => json_pretty(&report),
                Format::Csv => format!(
                    "theta,delta,pairs_scanned,sampling_slack,capped_at_diameter\n{},{},{},{},{}\n",
                    report.theta,
                    report.delta,
                    report.pairs_scanned,
                    report.sampling_slack,
                    report.capped_at_diameter
                ),
            };
            emit(&output, &text)?;
            let markers = report
                .witness_pair
                .map(|(a, b)| point_markers(&[a, b], "delta witness"))
                .unwrap_or_default();
            emit_svg(&output, &c, &markers)?;
            Ok(0)
        }
        Command::Lipschitz {
            curve,
            output,
            min_len,
        } => {
            let c = load_curve(&curve)?;
            let report =
                ltb::lipschitz_constant(&c, min_len.unwrap_or_else(|| ltb::default_min_len(&c)))?;
            let text = match output.format {
                Format::Json => json_pretty(&report),
                Format::Csv => format!(
                    "k,min_arc_length_used\n{},{}\n",
                    if report.k.is_finite() {
                        report.k.to_string()
                    } else {
                        "inf".to_string()
                    },
                    report.min_arc_length_used
                ),
            };
            emit(&output, &text)?;
            let markers = report
                .witness_range
                .and_then(|range| {
                    let a = c.point_at(range.start).ok()?;
                    let b = c.point_at(range.end).ok()?;
                    Some(point_markers(&[a, b], "max turn/length"))
                })
                .unwrap_or_default();
            emit_svg(&output, &c, &markers)?;
            Ok(0)
        }
        Command::Reach {
            curve,
            output,
            method,
        } => {
            let c = load_curve(&curve)?;
            let mut reports = Vec::new();
            match method.as_str() {
                "pairwise" => reports.push(regularity::reach_pairwise(&c)?),
                "bisection" => {
                    reports.push(regularity::reach_bisection_auto(&c, tol_or(&output, 1e-3))?)
                }
                "both" => {
                    reports.push(regularity::reach_pairwise(&c)?);
                    reports.push(regularity::reach_bisection_auto(
                        &c,
                        tol_or(&output, 1e-3),
                    )?);
                }
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown method '{other}' (pairwise|bisection|both)"
                    )))
                }
            }
            let text = match output.format {
                Format::Json => json_pretty(&reports),
                Format::Csv => {
                    let mut s = String::from("method,reach,resolution\n");
                    for r in &reports {
                        s.push_str(&format!("{:?},{},{}\n", r.method, r.reach, r.resolution));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            let mut markers = Vec::new();
            for r in &reports {
                match &r.witness {
                    regularity::ReachWitness::Pair(a, b) => {
                        markers.extend(point_markers(&[*a, *b], "reach pair"));
                    }
                    regularity::ReachWitness::Center { center, .. } => markers.push(Marker {
                        at: *center,
                        radius: r.reach,
                        label: "reach".to_string(),
                    }),
                }
            }
            emit_svg(&output, &c, &markers)?;
            Ok(0)
        }
        Command::Parreg {
            curve,
            output,
            check_r,
        } => {
            let c = load_curve(&curve)?;
            let report = regularity::par_regular_check(&c, check_r)?;
            let text = match output.format {
                Format::Json => json_pretty(&report),
                Format::Csv => {
                    let mut s = format!(
                        "# r={} ok={} tau_osc={}\ns,side,clearance\n",
                        report.r, report.ok, report.tau_osc
                    );
                    for f in &report.failures {
                        s.push_str(&format!("{},{:?},{}\n", f.s, f.side, f.clearance));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            let markers: Vec<Marker> = report
                .failures
                .iter()
                .take(64)
                .filter_map(|f| c.point_at(f.s).ok())
                .map(|cp| Marker {
                    at: cp.position,
                    radius: 0.0,
                    label: String::new(),
                })
                .collect();
            emit_svg(&output, &c, &markers)?;
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Profile { curve, output } => {
            let c = load_curve(&curve)?;
            let profile = turn::turn_profile(&c);
            emit(&output, &io::profile_csv(&profile))?;
            emit_svg(&output, &c, &[])?;
            Ok(0)
        }
        Command::Verify {
            claim,
            curve,
            output,
            check_r,
            check_theta,
        } => {
            let c = load_curve(&curve)?;
            let tol = tol_or(&output, verify::DEFAULT_VERIFY_TOL);
            let run_claim = |name: &str| -> Result<verify::VerificationReport, Error> {
                match (name, check_r) {
                    ("forward", Some(r)) => verify::verify_forward(
                        &c,
                        r,
                        check_theta.unwrap_or(std::f64::consts::FRAC_PI_2),
                        tol,
                    ),
                    ("length-bound", Some(r)) => verify::verify_length_bound(&c, r, tol),
                    _ => verify::verify_claim(&c, name, tol),
                }
            };
            let results: Vec<(String, Result<verify::VerificationReport, Error>)> =
                if claim == "all" {
                    verify::ALL_CLAIMS
                        .iter()
                        .map(|&name| (name.to_string(), run_claim(name)))
                        .collect()
                } else {
                    vec![(claim.clone(), run_claim(&claim))]
                };
            let mut exit = 0;
            let mut rows = Vec::new();
            let mut markers = Vec::new();
            for (name, res) in &results {
                match res {
                    Ok(report) => {
                        match report.status {
                            verify::ClaimStatus::Violated => {
                                eprintln!(
                                    "curveturn: error[verification]: claim '{name}' violated (slack {})",
                                    report.measured_slack
                                );
                                exit = 1;
                            }
                            verify::ClaimStatus::NotApplicable => {
                                eprintln!(
                                    "curveturn: error[hypothesis]: claim '{name}' not applicable"
                                );
                                if exit != 1 {
                                    exit = 2;
                                }
                            }
                            verify::ClaimStatus::Holds => {}
                        }
                        markers.extend(point_markers(&report.worst_witness.points, name));
                        rows.push(serde_json::to_value(report).expect("report to json"));
                    }
                    Err(e) => {
                        let (cat, code) = category(e);
                        eprintln!("curveturn: error[{cat}]: claim '{name}': {e}");
                        if exit != 1 {
                            exit = exit.max(code);
                        }
                        rows.push(serde_json::json!({
                            "claim": name,
                            "status": "hypothesis_failed",
                            "error": e.to_string(),
                        }));
                    }
                }
            }
            let text = match output.format {
                Format::Json => json_pretty(&rows),
                Format::Csv => {
                    let mut s = String::from("claim,status,slack,detail\n");
                    for (row, (name, res)) in rows.iter().zip(&results) {
                        match res {
                            Ok(report) => s.push_str(&format!(
                                "{name},{},{},\n",
                                match report.status {
                                    verify::ClaimStatus::Holds => "holds",
                                    verify::ClaimStatus::Violated => "violated",
                                    verify::ClaimStatus::NotApplicable => "not_applicable",
                                },
                                report.measured_slack
                            )),
                            Err(_) => s.push_str(&format!(
                                "{name},hypothesis_failed,,{}\n",
                                row["error"].as_str().unwrap_or("").replace(',', ";")
                            )),
                        }
                    }
                    s
                }
            };
            emit(&output, &text)?;
            emit_svg(&output, &c, &markers)?;
            Ok(exit)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let (cat, code) = category(&e);
            eprintln!("curveturn: error[{cat}]: {e}");
            std::process::exit(code);
        }
    }
}
