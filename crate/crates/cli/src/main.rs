use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use segcert::certificate::{build_certificate, SegmentEcho};
use segcert::config::{load_config, RunConfig};
use segcert::norms::{norm_bounds, Convention, NormBounds};
use segcert::reference::{ReferenceConfig, CONFIGS};
use segcert::refinement::refine;
use segcert::sandbox::{boundary_sample, ForcingInstance, SampleOptions, SampleReport};
use segcert::serde_repr::fmt_f64;
use segcert::{verify, Segment, VerificationReport};

const EXIT_CERTIFIED: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "segcert", version, about = "Certify periodic isolating segments for the forced Boussinesq equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Common {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the segment given in the config.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Build a segment from the initial guess, refine it and verify it.
    Refine {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        iterations: Option<u32>,
    },
    /// Refine (unless the config has a segment), verify and emit a certificate.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        iterations: Option<u32>,
    },
    /// Run the six built-in configurations and compare with the published tables.
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        iterations: Option<u32>,
    },
    /// Sample the segment faces with the floating-point vector field.
    Sample {
        #[command(flatten)]
        common: Common,
        /// Samples per face family.
        #[arg(long, default_value_t = 1000)]
        points: usize,
        /// Galerkin dimension.
        #[arg(long, default_value_t = 24)]
        modes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn warn(report: &VerificationReport) {
    for d in &report.diagnostics {
        eprintln!("segcert: {d}");
    }
}

fn exit_for(passed: bool) -> u8 {
    if passed {
        EXIT_CERTIFIED
    } else {
        EXIT_FAILED
    }
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = format!("{}\n", if report.passed { "PASSED" } else { "FAILED" });
    let h = &report.high_mode;
    out += &format!("high modes: C = {} vs {}  margin {:e}\n", h.lhs, h.rhs, h.margin);
    for r in &report.low_modes {
        out += &format!(
            "low mode {}: RHS {}  margins {:e} / {:e}{}\n",
            r.k,
            r.rhs_enclosure,
            r.upper_margin,
            r.lower_margin,
            if r.passed { "" } else { "  FAIL" }
        );
    }
    for d in &report.diagnostics {
        out += &format!("! {d}\n");
    }
    out
}

fn segment_text(seg: &Segment) -> String {
    let mut out = format!("M = {}  s = {}  C = {:e}\n", seg.m(), seg.s, seg.c.hi());
    for (i, b) in seg.boxes.iter().enumerate() {
        out += &format!("  u_{}: [{:e}, {:e}]\n", i + 1, b.l.lo(), b.r.hi());
    }
    out
}

fn refined(cfg: &RunConfig, iterations: Option<u32>) -> CliResult<(Segment, VerificationReport)> {
    let mut opts = cfg.refine.clone();
    if let Some(n) = iterations {
        opts.iterations = n;
    }
    Ok(refine(&cfg.problem, cfg.m, &opts)?)
}

fn given_segment(cfg: &RunConfig) -> CliResult<Segment> {
    cfg.segment.clone().ok_or_else(|| CliError("segment: the config has no segment block".into()))
}

fn cmd_verify(common: &Common) -> CliResult<u8> {
    let cfg = load_config(&common.config)?;
    let seg = given_segment(&cfg)?;
    let report = verify(&seg, &cfg.problem)?;
    warn(&report);
    let text = match common.format {
        Format::Json => json(&report),
        Format::Text => report_text(&report),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(exit_for(report.passed))
}

#[derive(Serialize)]
struct RefineOutput {
    segment: SegmentEcho,
    report: VerificationReport,
}

fn cmd_refine(common: &Common, iterations: Option<u32>) -> CliResult<u8> {
    let cfg = load_config(&common.config)?;
    let (seg, report) = refined(&cfg, iterations)?;
    warn(&report);
    let text = match common.format {
        Format::Json => json(&RefineOutput { segment: SegmentEcho::from_segment(&seg), report: report.clone() }),
        Format::Text => segment_text(&seg) + &report_text(&report),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(exit_for(report.passed))
}

fn cmd_certify(common: &Common, iterations: Option<u32>) -> CliResult<u8> {
    let cfg = load_config(&common.config)?;
    let seg = match &cfg.segment {
        Some(seg) => seg.clone(),
        None => refined(&cfg, iterations)?.0,
    };
    let cert = build_certificate(&cfg.problem, &seg)?;
    warn(&cert.report);
    let text = match common.format {
        Format::Json => cert.to_json(),
        Format::Text => cert.to_text(),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(exit_for(cert.passed))
}

fn sample_instance(cfg: &RunConfig) -> (f64, ForcingInstance) {
    const TAU: f64 = 1.0;
    match cfg.family {
        Some(family) => (cfg.epsilon.mag(), ForcingInstance::family(family, TAU)),
        None => (1.0, ForcingInstance::spanning(&cfg.problem, TAU)),
    }
}

#[derive(Serialize)]
struct SampleOutput {
    verified: bool,
    all_positive: bool,
    sample: SampleReport,
}

fn cmd_sample(common: &Common, points: usize, modes: usize, seed: u64) -> CliResult<u8> {
    let cfg = load_config(&common.config)?;
    let (seg, report) = match &cfg.segment {
        Some(seg) => (seg.clone(), verify(seg, &cfg.problem)?),
        None => refined(&cfg, None)?,
    };
    let (eps, instance) = sample_instance(&cfg);
    let opts = SampleOptions { modes, samples_per_family: points, seed };
    let sample = boundary_sample(&seg, &cfg.problem, eps, &instance, &opts)?;
    let all_positive = sample.all_positive();
    let text = match common.format {
        Format::Json => json(&SampleOutput { verified: report.passed, all_positive, sample }),
        Format::Text => {
            let mut out = format!("seed {seed}, n = {modes}, {points} points per face family\n");
            for f in &sample.faces {
                out += &format!("{:<14} min margin {:e} (mode {})\n", f.family, f.min_margin, f.worst_mode);
            }
            out
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(exit_for(all_positive))
}

#[derive(Serialize)]
struct TableRow {
    configuration: String,
    refined_passed: bool,
    refined_s: u32,
    #[serde(with = "segcert::serde_repr::float")]
    refined_u1_r: f64,
    #[serde(with = "segcert::serde_repr::float")]
    refined_c: f64,
    #[serde(with = "segcert::serde_repr::float")]
    published_u1_r: f64,
    #[serde(with = "segcert::serde_repr::float")]
    published_c: f64,
    published_segment_passed: bool,
    /// Norms of the printed segment, table convention.
    norms_published: NormBounds,
    /// Norms of the refined segment, table convention.
    norms_refined: NormBounds,
    /// Printed norm values: L2(u), C0(u), L2(u_t), C0(u_t).
    published_norms: [String; 4],
}

fn table_row(cfg: &ReferenceConfig, iterations: Option<u32>) -> CliResult<TableRow> {
    let problem = cfg.problem()?;
    let mut opts = segcert::RefineOptions::default();
    if let Some(n) = iterations {
        opts.iterations = n;
    }
    let (seg, report) = refine(&problem, segcert::reference::M, &opts)?;
    let published = cfg.published_segment()?;
    let published_report = verify(&published, &problem)?;
    let n = cfg.norms;
    Ok(TableRow {
        configuration: cfg.label(),
        refined_passed: report.passed,
        refined_s: seg.s,
        refined_u1_r: seg.boxes[0].r.hi(),
        refined_c: seg.c.hi(),
        published_u1_r: cfg.published_u1(),
        published_c: cfg.published_c(),
        published_segment_passed: published_report.passed,
        norms_published: norm_bounds(&published, &problem, Convention::Table)?,
        norms_refined: norm_bounds(&seg, &problem, Convention::Table)?,
        published_norms: [n.l2_u, n.c0_u, n.l2_ut, n.c0_ut].map(fmt_f64),
    })
}

fn pct(computed: f64, published: f64) -> String {
    format!("{:+.2}%", 100.0 * (computed / published - 1.0))
}

fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::from("Segment parameters (refined vs published)\n");
    out += &format!(
        "{:<32} {:>6} {:>2} {:>12} {:>12} {:>9} {:>12} {:>12} {:>9}\n",
        "configuration", "passed", "s", "u1_r", "published", "delta", "C", "published", "delta"
    );
    for r in rows {
        out += &format!(
            "{:<32} {:>6} {:>2} {:>12.6} {:>12.6} {:>9} {:>12.6} {:>12.6} {:>9}\n",
            r.configuration,
            r.refined_passed,
            r.refined_s,
            r.refined_u1_r,
            r.published_u1_r,
            pct(r.refined_u1_r, r.published_u1_r),
            r.refined_c,
            r.published_c,
            pct(r.refined_c, r.published_c),
        );
    }
    out += "\nNorm bounds from the published segments (table convention) vs published norms\n";
    out += &format!("{:<32} {:>24} {:>24} {:>24} {:>24}\n", "configuration", "L2(u)", "C0(u)", "L2(u_t)", "C0(u_t)");
    for r in rows {
        let n = &r.norms_published;
        let cells: Vec<String> = [n.l2_u, n.c0_u, n.l2_ut, n.c0_ut]
            .iter()
            .zip(&r.published_norms)
            .map(|(x, p)| format!("{:.8} ({})", x.hi(), pct(x.hi(), p.parse().expect("own output"))))
            .collect();
        out +=
            &format!("{:<32} {:>24} {:>24} {:>24} {:>24}\n", r.configuration, cells[0], cells[1], cells[2], cells[3]);
    }
    out += "\nNorm bounds from the refined segments (table convention)\n";
    for r in rows {
        let n = &r.norms_refined;
        out += &format!(
            "{:<32} {:>24.8} {:>24.8} {:>24.8} {:>24.8}\n",
            r.configuration,
            n.l2_u.hi(),
            n.c0_u.hi(),
            n.l2_ut.hi(),
            n.c0_ut.hi()
        );
    }
    out
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SEGCERT_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError(format!("SEGCERT_THREADS: not a thread count: {v:?}")))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn cmd_table(out: Option<&Path>, format: Format, iterations: Option<u32>) -> CliResult<u8> {
    let pool = thread_pool()?;
    let rows = pool.install(|| CONFIGS.par_iter().map(|c| table_row(c, iterations)).collect::<CliResult<Vec<_>>>())?;
    let text = match format {
        Format::Json => json(&rows),
        Format::Text => table_text(&rows),
    };
    emit(out, &text)?;
    Ok(exit_for(rows.iter().all(|r| r.refined_passed)))
}

fn run(cli: Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Verify { common } => cmd_verify(common),
        Command::Refine { common, iterations } => cmd_refine(common, *iterations),
        Command::Certify { common, iterations } => cmd_certify(common, *iterations),
        Command::Table { out, format, iterations } => cmd_table(out.as_deref(), *format, *iterations),
        Command::Sample { common, points, modes, seed } => cmd_sample(common, *points, *modes, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            eprintln!("segcert: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
