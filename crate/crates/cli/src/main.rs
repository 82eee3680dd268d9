//! `sheltered`: validate three-path instances, trace strongly sheltered
//! paths, compute winding numbers and generate oscillating stages.

mod io;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sheltered_core::arrangement::{build_arrangement, build_faces, Arrangement, FaceStructure};
use sheltered_core::geometry::{parse_rational, validate_general_position, Instance, PathLabel, Point};
use sheltered_core::shelter::{classify_all, verify_parity_lemma, ShelterReport};
use sheltered_core::sine_gen::{generate_stage, oscillation_metrics, GenerationParams};
use sheltered_core::tracer::{sheltered_subgraph, trace, ShelteredSubgraph, TraceResult};
use sheltered_core::winding::{loop_of, winding_number, winding_number_float, WindingError};
use thiserror::Error;

use crate::io::{instance_json, load_instance, point_json, write_json};
use crate::svg::{render, SvgScene};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "sheltered", version, about = "Strongly sheltered paths in three-path arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check general position; prints one JSON line per violation.
    Validate { file: PathBuf },
    /// Run the full pipeline and extract a strongly sheltered path.
    Trace {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the trace report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a stage of the oscillating construction and trace it.
    Counterexample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        generations: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Winding number of a point with respect to the loop of two paths.
    Winding {
        file: PathBuf,
        /// Query point as "x,y"; coordinates may be "p/q".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Two path labels, e.g. "a,b": the loop runs along the first path
        /// and back along the second.
        #[arg(long = "loop")]
        loop_labels: String,
    },
    /// Face counts of the union of all traces and of each pair.
    Faces { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Trace { file, svg, report } => cmd_trace(&file, svg.as_deref(), report.as_deref()),
        Command::Counterexample { generations, out } => cmd_counterexample(generations as usize, &out),
        Command::Winding {
            file,
            point,
            loop_labels,
        } => cmd_winding(&file, &point, &loop_labels),
        Command::Faces { file } => cmd_faces(&file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_validate(file: &Path) -> Result<u8, CliError> {
    let inst = load_instance(file)?;
    let report = validate_general_position(&inst);
    for v in &report.violations {
        println!("{}", serde_json::to_string(v).expect("violations serialize"));
    }
    println!(
        "{}",
        json!({"valid": report.is_valid(), "violations": report.violations.len(), "crossings": report.crossings})
    );
    Ok(if report.is_valid() { 0 } else { 1 })
}

struct Pipeline {
    arr: Arrangement,
    report: ShelterReport,
    sub: ShelteredSubgraph,
    trace: TraceResult,
}

fn run_pipeline(inst: &Instance) -> Result<Pipeline, CliError> {
    let validation = validate_general_position(inst);
    if let Some(v) = validation.violations.first() {
        return Err(CliError::Domain(format!(
            "instance is not in general position: {}",
            serde_json::to_string(v).expect("violations serialize")
        )));
    }
    let arr = build_arrangement(inst).map_err(|e| CliError::Domain(e.to_string()))?;
    let report = classify_all(&arr);
    let parity = verify_parity_lemma(&report, &arr);
    if let Some(f) = parity.failures.first() {
        return Err(CliError::Internal(format!(
            "parity check failed at {} ({}, {} strongly sheltered edges)",
            f.at, f.reason, f.strongly_incident
        )));
    }
    let sub = sheltered_subgraph(&report, &arr).map_err(|e| CliError::Internal(e.to_string()))?;
    let trace = trace(&sub, &arr).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Pipeline {
        arr,
        report,
        sub,
        trace,
    })
}

fn trace_json(p: &Pipeline) -> Value {
    let edges: Vec<Value> = p
        .trace
        .edges
        .iter()
        .map(|&e| {
            let edge = &p.arr.edges[e];
            json!({
                "id": e,
                "path": edge.owner,
                "from": point_json(&edge.segment.p),
                "to": point_json(&edge.segment.q),
            })
        })
        .collect();
    let strongly: Vec<usize> = p.sub.edges.iter().copied().collect();
    json!({
        "vertices": p.arr.vertices.len(),
        "edges": p.arr.edges.len(),
        "strongly_sheltered_edges": strongly,
        "weakly_sheltered_edges": p.report.classes.iter().filter(|c| c.weakly).count(),
        "sheltered_edges": p.report.classes.iter().filter(|c| c.sheltered).count(),
        "trace": {
            "edges": edges,
            "polyline": p.trace.polyline.iter().map(point_json).collect::<Vec<_>>(),
            "switches": p.trace.switches,
        },
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn scene_svg(p: &Pipeline, central_line: Option<(Point, Point)>) -> String {
    render(&SvgScene {
        arrangement: &p.arr,
        strongly: Some(&p.sub.edges),
        trace: Some(&p.trace.polyline),
        central_line,
    })
}

fn cmd_trace(file: &Path, svg: Option<&Path>, report: Option<&Path>) -> Result<u8, CliError> {
    let inst = load_instance(file)?;
    let p = run_pipeline(&inst)?;
    let doc = trace_json(&p);
    match report {
        Some(path) => write_json(path, &doc)?,
        None => println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize")),
    }
    if let Some(path) = svg {
        write_text(path, &scene_svg(&p, None))?;
    }
    Ok(0)
}

fn cmd_counterexample(generations: usize, out: &Path) -> Result<u8, CliError> {
    if generations == 0 {
        return Err(CliError::Usage("at least one generation is required".into()));
    }
    let params = GenerationParams::new(generations);
    let stage = generate_stage(&params).map_err(|e| CliError::Domain(e.to_string()))?;
    let p = run_pipeline(&stage.instance)?;
    let osc = oscillation_metrics(&p.trace, &stage).map_err(|e| CliError::Internal(e.to_string()))?;
    fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;

    let mut inst = instance_json(&stage.instance);
    inst["annotations"] = serde_json::to_value(&stage).expect("stage annotations serialize");
    write_json(&out.join("instance.json"), &inst)?;
    write_json(&out.join("trace.json"), &trace_json(&p))?;
    let osc_json = serde_json::to_value(&osc).expect("report serializes");
    write_json(&out.join("oscillation.json"), &osc_json)?;
    let line = (stage.layout.t.clone(), stage.layout.q.clone());
    write_text(&out.join("stage.svg"), &scene_svg(&p, Some(line)))?;
    println!(
        "{}",
        json!({
            "generations": generations,
            "sweep_count": osc.sweep_count,
            "approach_distances": osc_json["approach_distances"],
            "out": out.display().to_string(),
        })
    );
    Ok(0)
}

fn parse_labels(s: &str) -> Result<(PathLabel, PathLabel), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y] = parts.as_slice() else {
        return Err(CliError::Usage(format!("--loop expects two labels like \"a,b\", got `{s}`")));
    };
    let x: PathLabel = x.parse().map_err(CliError::Usage)?;
    let y: PathLabel = y.parse().map_err(CliError::Usage)?;
    if x == y {
        return Err(CliError::Usage("--loop needs two different paths".into()));
    }
    Ok((x, y))
}

fn parse_query_point(s: &str) -> Result<Point, CliError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("--point expects \"x,y\", got `{s}`")))?;
    let coord = |v: &str| parse_rational(v).map_err(|e| CliError::Parse(e.to_string()));
    Ok(Point::new(coord(x)?, coord(y)?))
}

fn cmd_winding(file: &Path, point: &str, labels: &str) -> Result<u8, CliError> {
    let inst = load_instance(file)?;
    let (first, second) = parse_labels(labels)?;
    let x = parse_query_point(point)?;
    let lp = loop_of(inst.path(first), inst.path(second)).map_err(|e| CliError::Domain(e.to_string()))?;
    let exact = match winding_number(&lp, &x) {
        Ok(w) => w,
        Err(WindingError::PointOnTrace(at, seg)) => {
            return Err(CliError::Domain(format!(
                "point {at} lies exactly on the loop {first},{second} (loop segment {seg})"
            )))
        }
        Err(e) => return Err(CliError::Domain(e.to_string())),
    };
    let float = winding_number_float(&lp, &x).map_err(|e| CliError::Domain(e.to_string()))?;
    println!(
        "{}",
        json!({
            "loop": format!("{first},{second}"),
            "point": point_json(&x),
            "winding": exact.value,
            "float": float,
            "ray": point_json(&exact.ray),
            "crossings": exact.crossings.len(),
        })
    );
    Ok(0)
}

fn face_stats(name: String, fs: &FaceStructure) -> Value {
    json!({
        "traces": name,
        "vertices": fs.points.len(),
        "edges": fs.edges.len(),
        "faces": fs.faces.len(),
        "bounded_faces": fs.bounded_count(),
        "components": fs.components,
        "euler_characteristic": fs.euler_characteristic(),
    })
}

fn cmd_faces(file: &Path) -> Result<u8, CliError> {
    let inst = load_instance(file)?;
    let validation = validate_general_position(&inst);
    if !validation.is_valid() {
        return Err(CliError::Domain("instance is not in general position".into()));
    }
    let all = build_faces(&inst.paths).map_err(|e| CliError::Domain(e.to_string()))?;
    println!("{}", face_stats("a,b,c".into(), &all));
    for label in PathLabel::ALL {
        let (x, y) = label.others();
        let fs = build_faces(&[inst.path(x).clone(), inst.path(y).clone()])
            .map_err(|e| CliError::Domain(e.to_string()))?;
        println!("{}", face_stats(format!("{x},{y}"), &fs));
    }
    Ok(0)
}
