use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bgit::bicorn::{
    bicorn_path, compose_bound, enumerate_bicorns, enumerate_bicorns_between, lemma18_evidence, slim_witness,
    BoundLedger, Strategy,
};
use bgit::diagram::{parse_diagram, IntersectionDiagram};
use bgit::farey::{annular_distance, bgit_farey_sweep, enumerate_geodesics, farey_distance, window_csv, Slope};
use bgit::projection::{Projection, SubsurfaceSpec};
use bgit::verify::{run_and_write, RunConfig, Scale, REPORT_DIR_ENV, SUITES};

type Failure = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "bgit", version, about = "Bicorn curves, subsurface projections and Farey-graph checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Farey graph distances, geodesics and the annular projection sweep.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Bicorn curves and paths between curves of a diagram.
    #[command(subcommand)]
    Bicorn(BicornCmd),
    /// Subsurface projections to a side of the boundary curves.
    #[command(subcommand)]
    Project(ProjectCmd),
    /// Acceptance suites: `all` or one of farey-bgit, bicorn-paths,
    /// slim-triangles, lemma18, projections, ledger.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum FareyCmd {
    Distance { #[arg(allow_hyphen_values = true)] u: Slope, #[arg(allow_hyphen_values = true)] v: Slope },
    Geodesics { #[arg(allow_hyphen_values = true)] u: Slope, #[arg(allow_hyphen_values = true)] v: Slope },
    /// Annular projection distance of `u` and `w` around `pivot`.
    Dv {
        #[arg(allow_hyphen_values = true)] pivot: Slope,
        #[arg(allow_hyphen_values = true)] u: Slope,
        #[arg(allow_hyphen_values = true)] w: Slope,
    },
    Sweep {
        #[arg(long, default_value_t = 30)]
        max_denominator: i64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        with_timing: bool,
    },
    /// Vertex and edge CSVs of the height window, for external plotting.
    Dump {
        #[arg(long, default_value_t = 8)]
        max_denominator: i64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BicornCmd {
    Enumerate { file: PathBuf },
    Path {
        file: PathBuf,
        /// `<crossing id>:<+|->:<+|->`; defaults to the lowest crossing, forward.
        #[arg(long)]
        strategy: Option<Strategy>,
    },
    /// Slim-triangle witnesses for every bicorn of the first two curves.
    Slim { file: PathBuf },
    /// Disjoint surgered arcs along the path between the second and third curves.
    Lemma18 { file: PathBuf },
    Bound {
        #[arg(long, default_value_t = 14)]
        hausdorff: u64,
        #[arg(long, default_value_t = 4)]
        filling: u64,
    },
}

#[derive(Args)]
struct SubsurfaceArgs {
    file: PathBuf,
    /// A face corner `f<id>.<slot>` or free side `<curve>±` inside the subsurface.
    #[arg(long)]
    subsurface: String,
    #[arg(long, value_delimiter = ',', default_value = "C")]
    boundary: Vec<String>,
}

#[derive(Subcommand)]
enum ProjectCmd {
    Arcs {
        #[command(flatten)]
        y: SubsurfaceArgs,
        #[arg(long)]
        curve: String,
    },
    Pi0 {
        #[command(flatten)]
        y: SubsurfaceArgs,
        #[arg(long)]
        curve: String,
        /// Index into the projected arcs of the curve.
        #[arg(long)]
        arc: usize,
    },
    /// Checks both Lipschitz statements for two disjoint curves.
    Lipschitz {
        #[command(flatten)]
        y: SubsurfaceArgs,
        #[arg(long, num_args = 2, value_names = ["C1", "C2"])]
        curves: Vec<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, env = REPORT_DIR_ENV, default_value = "reports")]
    report_dir: PathBuf,
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long)]
    with_timing: bool,
    #[arg(long)]
    max_denominator: Option<i64>,
    #[arg(long)]
    fuzz_count: Option<usize>,
    #[arg(long)]
    max_crossings: Option<usize>,
    #[arg(long)]
    triple_count: Option<usize>,
    #[arg(long)]
    max_per_pair: Option<usize>,
    #[arg(long)]
    host_count: Option<usize>,
}

fn load(path: &Path) -> Result<IntersectionDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_diagram(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn print(v: &Value) {
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).unwrap());
}

fn farey(cmd: FareyCmd) -> Result<bool, Failure> {
    match cmd {
        FareyCmd::Distance { u, v } => print(&json!({ "u": u, "v": v, "distance": farey_distance(u, v)? })),
        FareyCmd::Geodesics { u, v } => {
            let gs = enumerate_geodesics(u, v)?;
            let list: Vec<Vec<String>> = gs.iter().map(|g| g.vertices.iter().map(Slope::to_string).collect()).collect();
            print(&json!({ "u": u, "v": v, "distance": farey_distance(u, v)?, "geodesics": list }));
        }
        FareyCmd::Dv { pivot, u, w } => {
            print(&json!({ "pivot": pivot, "u": u, "w": w, "dv": annular_distance(pivot, u, w)? }))
        }
        FareyCmd::Sweep { max_denominator, report, with_timing } => {
            let start = Instant::now();
            let r = bgit_farey_sweep(max_denominator)?;
            let mut v = serde_json::to_value(&r)?;
            if with_timing {
                v["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            match report {
                Some(p) => fs::write(&p, serde_json::to_string_pretty(&v)? + "\n")?,
                None => print(&v),
            }
            eprintln!(
                "max d_v avoiding the pivot {}, violations {}",
                r.max_dv_avoiding, r.violation_count
            );
            return Ok(r.violation_count == 0);
        }
        FareyCmd::Dump { max_denominator, out } => {
            let (vertices, edges) = window_csv(max_denominator);
            fs::create_dir_all(&out)?;
            fs::write(out.join("farey_vertices.csv"), vertices)?;
            fs::write(out.join("farey_edges.csv"), edges)?;
        }
    }
    Ok(true)
}

fn bicorn(cmd: BicornCmd) -> Result<bool, Failure> {
    match cmd {
        BicornCmd::Enumerate { file } => {
            let d = load(&file)?;
            let all = enumerate_bicorns(&d)?;
            let records: Vec<_> = all.iter().map(|g| g.record(&d)).collect();
            print(&json!({ "count": records.len(), "bicorns": records }));
        }
        BicornCmd::Path { file, strategy } => {
            let d = load(&file)?;
            let p = bicorn_path(&d, 0, 1, strategy)?;
            let v = p.violations(&d);
            print(&json!({
                "strategy": p.strategy.map(|s| s.to_string()),
                "crossings": d.crossings_between(0, 1).len(),
                "steps": p.records(&d),
                "violations": v,
            }));
            return Ok(v.is_empty());
        }
        BicornCmd::Slim { file } => {
            let d = load(&file)?;
            let mut ok = true;
            let mut out = Vec::new();
            for g in enumerate_bicorns_between(&d, 0, 1)? {
                let o = slim_witness(&d, &g, 2)?;
                ok &= o.witness.is_some() || o.meets_gamma <= 3;
                out.push(o.to_json(&d));
            }
            print(&json!({ "outcomes": out }));
            return Ok(ok);
        }
        BicornCmd::Lemma18 { file } => {
            let d = load(&file)?;
            let p = bicorn_path(&d, 1, 2, None)?;
            let e = lemma18_evidence(&d, 0, &p)?;
            print(&e.to_json(&d, &p));
            return Ok(!matches!(e, bgit::bicorn::EvidenceOutcome::NotFound { .. }));
        }
        BicornCmd::Bound { hausdorff, filling } => {
            let l = BoundLedger::new(hausdorff, filling);
            print(&json!({ "ledger": l, "bound": compose_bound(&l)? }));
        }
    }
    Ok(true)
}

fn project(cmd: ProjectCmd) -> Result<bool, Failure> {
    let (ProjectCmd::Arcs { y, .. } | ProjectCmd::Pi0 { y, .. } | ProjectCmd::Lipschitz { y, .. }) = &cmd;
    let d = load(&y.file)?;
    let boundary: Vec<&str> = y.boundary.iter().map(String::as_str).collect();
    let sub = SubsurfaceSpec::from_labels(&d, &boundary, &y.subsurface)?;
    match &cmd {
        ProjectCmd::Arcs { curve, .. } => {
            let p = sub.pi_a(d.curve(curve)?)?;
            print(&json!({ "subsurface": sub.summary_json(), "projection": sub.pi_a_json(&p) }));
        }
        ProjectCmd::Pi0 { curve, arc, .. } => {
            let p = sub.pi_a(d.curve(curve)?)?;
            let Projection::Arcs(arcs) = &p.projection else {
                return Err(format!("{curve} has no arcs in the subsurface").into());
            };
            let a = arcs.get(*arc).ok_or_else(|| format!("arc {arc} out of range (0..{})", arcs.len()))?;
            let curves: Vec<Value> = sub.pi_0(a)?.iter().map(|f| sub.curve_json(f)).collect();
            print(&json!({ "arc": sub.arc_json(a), "pi0": curves }));
        }
        ProjectCmd::Lipschitz { curves, .. } => {
            let (c1, c2) = (d.curve(&curves[0])?, d.curve(&curves[1])?);
            let l = sub.check_arc_lipschitz(c1, c2)?;
            let arcs = |p: &bgit::projection::PiA| match &p.projection {
                Projection::Arcs(a) => a.clone(),
                _ => Vec::new(),
            };
            let all = [arcs(&l.first), arcs(&l.second)].concat();
            let mut chains = Vec::new();
            for (i, x) in all.iter().enumerate() {
                for (j, z) in all.iter().enumerate().skip(i + 1) {
                    let ch = sub.check_pi0_lipschitz(x, z)?;
                    chains.push(json!({ "arcs": [i, j], "length": ch.length, "route": ch.route }));
                }
            }
            print(&json!({
                "subsurface": sub.summary_json(),
                "first": sub.pi_a_json(&l.first),
                "second": sub.pi_a_json(&l.second),
                "pi0_chains": chains,
            }));
        }
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool, Failure> {
    let defaults = Scale::default();
    let cfg = RunConfig {
        seed: args.seed,
        scale: Scale {
            max_denominator: args.max_denominator.unwrap_or(defaults.max_denominator),
            fuzz_count: args.fuzz_count.unwrap_or(defaults.fuzz_count),
            max_crossings: args.max_crossings.unwrap_or(defaults.max_crossings),
            triple_count: args.triple_count.unwrap_or(defaults.triple_count),
            max_per_pair: args.max_per_pair.unwrap_or(defaults.max_per_pair),
            host_count: args.host_count.unwrap_or(defaults.host_count),
            attempt_cap: defaults.attempt_cap,
        },
        fixtures: args.fixtures.unwrap_or_else(bgit::verify::default_fixture_dir),
        with_timing: args.with_timing,
    };
    let suites: Vec<&str> = if args.suite == "all" { SUITES.to_vec() } else { vec![args.suite.as_str()] };
    let mut ok = true;
    for s in suites {
        let r = run_and_write(s, &cfg, &args.report_dir)?;
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{status} {s}: {} violations", r.violations.len());
        for v in r.violations.iter().take(10) {
            println!("  {} [{}] {}", v.case, v.kind, v.detail);
        }
        ok &= r.passed();
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Farey(c) => farey(c),
        Command::Bicorn(c) => bicorn(c),
        Command::Project(c) => project(c),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
