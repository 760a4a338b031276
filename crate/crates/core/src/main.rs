use anyhow::Context;
use axialcurv::fixtures::{self, CORPUS};
use axialcurv::jetcore::{germ::validate, PolyMapGerm};
use axialcurv::locus::{sample_locus, SampleGrid};
use axialcurv::report::{checks_table, AnalysisReport};
use axialcurv::tol::Tol;
use axialcurv::verify::{CheckResult, CheckStatus};
use axialcurv::{analysis, Analysis, Error};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Axial curvatures of corank-1 singular surfaces and 3-manifolds.
#[derive(Parser)]
#[command(name = "axialcurv", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Relative tolerance for rank and vanishing decisions (overrides AXIALCURV_TOL).
    #[arg(long)]
    tol: Option<f64>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline on a germ file and print the report.
    Analyze {
        path: PathBuf,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Sample the curvature locus as a CSV point cloud.
    Locus {
        path: PathBuf,
        /// Theta count, gamma count and (surfaces only) y count.
        #[arg(long, value_name = "T,G,N")]
        grid: Option<String>,
        /// Gamma (or y) sampling range.
        #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
        gamma_range: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the consistency checks on a germ file or on the built-in corpus.
    Verify {
        #[arg(required_unless_present = "corpus")]
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        corpus: bool,
        #[arg(long)]
        pretty: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Corank { .. }) => 2,
            Some(Error::Unsupported { .. }) => 3,
            _ => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn tol(common: &Common) -> Tol {
    common.tol.filter(|t| t.is_finite() && *t > 0.0).map(Tol).unwrap_or_else(Tol::from_env)
}

fn load(path: &PathBuf) -> Result<PolyMapGerm, Failure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    germ_from_str(&text)
}

/// Parses, then rejects unsupported dimensions before the corank test.
fn germ_from_str(text: &str) -> Result<PolyMapGerm, Failure> {
    let g: PolyMapGerm = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if !analysis::supported(g.n, g.k) {
        return Err(Error::Unsupported { n: g.n, k: g.k }.into());
    }
    validate(&g)?;
    Ok(g)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(x: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(x).context("serializing")? + "\n")
}

fn parse_list(s: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad {what} entry {p:?}")))
        .collect()
}

fn grid(n: usize, spec: Option<&str>, range: Option<&str>) -> anyhow::Result<SampleGrid> {
    let mut g = SampleGrid::default();
    if let Some(s) = spec {
        let v = parse_list(s, "--grid")?;
        if v.is_empty() || v.len() > 3 || v.iter().any(|x| *x < 1.0 || x.fract() != 0.0) {
            anyhow::bail!("--grid expects T,G[,N] positive integers");
        }
        g.thetas = v[0] as usize;
        if let Some(x) = v.get(1) {
            g.gammas = *x as usize;
        }
        if let (2, Some(x)) = (n, v.get(2)) {
            g.gammas = *x as usize;
        }
    }
    if let Some(r) = range {
        match parse_list(r, "--gamma-range")?.as_slice() {
            [lo, hi] if lo < hi => g.gamma_range = (*lo, *hi),
            _ => anyhow::bail!("--gamma-range expects LO,HI with LO < HI"),
        }
    }
    Ok(g)
}

#[derive(Serialize)]
struct CorpusEntry {
    fixture: &'static str,
    checks: Vec<CheckResult>,
    mismatches: Vec<String>,
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Analyze { path, pretty, common } => {
            let g = load(&path)?;
            let report = AnalysisReport::new(&Analysis::new(&g, tol(&common))?);
            let text = if pretty { report.table() } else { json(&report)? };
            emit(&common, &text)?;
        }
        Cmd::Locus { path, grid: spec, gamma_range, common } => {
            let g = load(&path)?;
            let a = Analysis::new(&g, tol(&common))?;
            let samples = sample_locus(&a.monge, &grid(g.n, spec.as_deref(), gamma_range.as_deref())?)?;
            emit(&common, &samples.to_csv())?;
        }
        Cmd::Verify { path: Some(path), pretty, common, .. } => {
            let g = load(&path)?;
            let checks = AnalysisReport::new(&Analysis::new(&g, tol(&common))?).checks;
            let text = if pretty { checks_table(&checks) } else { json(&checks)? };
            emit(&common, &text)?;
            if !pretty {
                eprint!("{}", checks_table(&checks));
            }
            if checks.iter().any(|c| c.status == CheckStatus::Fail) {
                return Ok(ExitCode::from(4));
            }
        }
        Cmd::Verify { path: None, pretty, common, .. } => {
            let t = tol(&common);
            let mut entries = vec![];
            let mut summary = String::new();
            for f in CORPUS {
                let a = Analysis::new(&f.parse()?, t)?;
                let mismatches = fixtures::compare(&a, &f.expected()?);
                let checks = AnalysisReport::new(&a).checks;
                let fails = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
                let passes = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
                let ok = fails == 0 && mismatches.is_empty();
                summary += &format!(
                    "{:<22} {}  {passes} pass, {fails} fail, {} mismatches\n",
                    f.name,
                    if ok { "ok  " } else { "FAIL" },
                    mismatches.len()
                );
                for m in &mismatches {
                    summary += &format!("    {m}\n");
                }
                entries.push(CorpusEntry { fixture: f.name, checks, mismatches });
            }
            let bad = entries.iter().any(|e| !e.mismatches.is_empty() || e.checks.iter().any(|c| !c.passed()));
            emit(&common, &if pretty { summary.clone() } else { json(&entries)? })?;
            if !pretty {
                eprint!("{summary}");
            }
            if bad {
                return Ok(ExitCode::from(4));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
