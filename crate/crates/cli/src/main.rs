//! `lsplab` command-line front end.
//!
//! Exit codes: 0 success, 1 an exact check failed, 2 usage or I/O error.

mod input;
mod survey;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lsplab::classify::LS_PLUS_PERFECT;
use lsplab::config::Config;
use lsplab::graph::{catalog, from_graph6, to_graph6, Graph};
use lsplab::hk::HkCertificateBundle;
use lsplab::lift::{lsplus_separate_facet_with, LsPlusOptions};
use lsplab::polyhedra::{stab_facets, LinearInequality};
use lsplab::reduction::{reduce_graph, replay_matches_input};
use lsplab::scalar::{format_rational, parse_rational};
use lsplab::Error;
use serde_json::json;

use input::{read_lines, split_lines, InputLine};
use survey::{run_survey, survey_one, SurveyOptions};

#[derive(Parser)]
#[command(name = "lsplab", version, about = "LS and LS+ relaxations of stable set polytopes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Common {
    /// TOML file with tolerances and caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Numeric tolerance of the semidefinite search.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Node cap for facet enumeration.
    #[arg(long, global = true)]
    hull_cap: Option<usize>,
    /// Write JSON output here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify graphs; one JSON line per input graph.
    Classify {
        #[arg(long)]
        graph6: Vec<String>,
        /// File with one graph6 string per line (`-` for stdin).
        file: Option<PathBuf>,
        /// Also decide LS+-perfection.
        #[arg(long)]
        lsplus: bool,
    },
    /// Build and check the exact certificate bundle for `H^k`.
    CertifyHk {
        #[arg(long)]
        k: usize,
    },
    /// Maximize facets of STAB(G) over LS+(FRAC(G)).
    Separate {
        #[arg(long)]
        graph6: String,
        /// Inequality `a1,a2,...<=beta`; default: every facet beyond
        /// nonnegativity and cliques.
        #[arg(long)]
        facet: Option<String>,
    },
    /// Reduce a hub graph over an odd hole to G_LT or G_EMN.
    Reduce {
        #[arg(long)]
        graph6: String,
    },
    /// Classify a catalog with checkpointing and a summary.
    Survey {
        /// Catalog file (`-` for stdin).
        #[arg(long, conflicts_with = "nodes")]
        catalog: Option<PathBuf>,
        /// Use the bundled catalog of graphs on this many nodes.
        #[arg(long)]
        nodes: Option<usize>,
        /// Comma-separated classes to keep in each record.
        #[arg(long, value_delimiter = ',')]
        predicates: Option<Vec<String>>,
        #[arg(long)]
        lsplus: bool,
        /// Skip perfect graphs.
        #[arg(long)]
        imperfect_only: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Print the bundled catalog of graphs on `n ≤ 7` nodes.
    Catalog {
        #[arg(long)]
        nodes: usize,
    },
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(m) => Failure::Check(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_config(c: &Common) -> Result<Config, Failure> {
    let mut cfg = match &c.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(t) = c.tol {
        cfg.tol = t;
    }
    if let Some(h) = c.hull_cap {
        cfg.hull_cap = h;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("LSPLAB_THREADS") {
        let n: usize = v.parse().map_err(|_| Failure::Usage(format!("LSPLAB_THREADS must be a number, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn open(path: Option<&Path>) -> Result<Self, Failure> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout()),
        };
        Ok(Self { sink })
    }

    fn line(&mut self, v: &impl serde::Serialize) -> Result<(), Failure> {
        let s = serde_json::to_string(v).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(self.sink, "{s}")?;
        Ok(())
    }

    fn pretty(&mut self, v: &impl serde::Serialize) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(self.sink, "{s}")?;
        Ok(())
    }
}

fn parse_graph(s: &str) -> Result<Graph, Failure> {
    from_graph6(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

fn parse_facet(s: &str, n: usize) -> Result<LinearInequality, Failure> {
    let (lhs, rhs) = s.split_once("<=").ok_or_else(|| Failure::Usage(format!("facet {s:?} lacks '<='")))?;
    let a = lhs.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>()?;
    if a.len() != n {
        return Err(Failure::Usage(format!("facet has {} coefficients, graph has {n} nodes", a.len())));
    }
    Ok(LinearInequality::new(a, parse_rational(rhs.trim())?))
}

fn cmd_classify(cfg: &Config, out: &mut Output, graph6: &[String], file: Option<&Path>, lsplus: bool) -> Result<(), Failure> {
    let mut lines: Vec<InputLine> = graph6.iter().map(|s| InputLine { line: 0, text: s.clone() }).collect();
    if let Some(f) = file {
        lines.extend(read_lines(f)?);
    }
    if lines.is_empty() {
        return Err(Failure::Usage("no input graphs".into()));
    }
    let opts = SurveyOptions { lsplus, predicates: None, imperfect_only: false, checkpoint: None, input_name: String::new() };
    for (i, l) in lines.iter().enumerate() {
        if let Some(rec) = survey_one(i, l, cfg, &opts) {
            match (&rec.report, &rec.error) {
                (Some(rep), _) => out.line(&json!({ "graph6": rec.graph6, "report": rep, "certificate_ids": rec.certificate_ids }))?,
                (None, Some(e)) => out.line(&json!({ "graph6": rec.graph6, "error": e }))?,
                _ => {}
            }
        }
    }
    Ok(())
}

fn cmd_certify_hk(out: &mut Output, k: usize) -> Result<(), Failure> {
    if k < 2 {
        return Err(Failure::Usage(format!("k must be at least 2, got {k}")));
    }
    let bundle = HkCertificateBundle::build(k)?;
    let check = bundle.check();
    out.pretty(&json!({ "bundle": bundle, "check": check }))?;
    if !check.passed() {
        return Err(Failure::Check(format!("certificate for k = {k} failed: {:?}", check.failure)));
    }
    Ok(())
}

fn cmd_separate(cfg: &Config, out: &mut Output, g6: &str, facet: Option<&str>) -> Result<(), Failure> {
    let g = parse_graph(g6)?;
    let facets = match facet {
        Some(f) => vec![parse_facet(f, g.n())?],
        None => {
            let all = stab_facets(&g, cfg.hull_cap)?;
            lsplab::classify::split_facets(&g, all).other
        }
    };
    let opts = LsPlusOptions::from_config(cfg);
    for f in facets {
        let r = lsplus_separate_facet_with(&g, &f, &opts)?;
        let witness = r.witness.as_ref().map(|c| c.to_json());
        if let Some(c) = &r.witness {
            if !c.verify().passed {
                return Err(Failure::Check("separation witness failed exact verification".into()));
            }
        }
        out.line(&json!({
            "graph6": to_graph6(&g),
            "inequality": f,
            "beta": format_rational(&f.beta),
            "max_estimate": r.max_estimate,
            "upper_bound": r.upper_bound,
            "holds_within_tol": r.holds_within(cfg.separation_tol),
            "converged": r.converged,
            "violation": r.violation.as_ref().map(format_rational),
            "witness": witness,
        }))?;
    }
    Ok(())
}

fn cmd_reduce(out: &mut Output, g6: &str) -> Result<(), Failure> {
    let g = parse_graph(g6)?;
    let trace = reduce_graph(&g)?;
    let ok = replay_matches_input(&trace)?;
    out.pretty(&json!({ "trace": trace, "replay_matches_input": ok }))?;
    if !ok {
        return Err(Failure::Check("replay does not reproduce the input".into()));
    }
    Ok(())
}

fn cmd_survey(cfg: &Config, common: &Common, cmd: &Command) -> Result<(), Failure> {
    let Command::Survey { catalog: file, nodes, predicates, lsplus, imperfect_only, checkpoint } = cmd else {
        unreachable!("dispatch");
    };
    let (lines, name) = match (file, nodes) {
        (Some(f), _) => (read_lines(f)?, f.display().to_string()),
        (None, Some(n)) => {
            let text: Vec<String> = catalog(*n)?.iter().map(to_graph6).collect();
            (split_lines(&text.join("\n")), format!("bundled:{n}"))
        }
        (None, None) => return Err(Failure::Usage("survey needs --catalog or --nodes".into())),
    };
    let needs_lsplus = *lsplus || predicates.as_ref().is_some_and(|p| p.iter().any(|c| c == LS_PLUS_PERFECT));
    let opts = SurveyOptions {
        lsplus: needs_lsplus,
        predicates: predicates.clone(),
        imperfect_only: *imperfect_only,
        checkpoint: checkpoint.clone(),
        input_name: name,
    };
    let (summary, _) = run_survey(&lines, cfg, &opts, common.json_out.as_deref())?;
    let s = serde_json::to_string(&json!({ "summary": summary })).map_err(|e| Failure::Usage(e.to_string()))?;
    if common.json_out.is_some() {
        println!("{s}");
    } else {
        eprintln!("{s}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let cfg = load_config(&cli.common)?;
    if let Command::Survey { .. } = &cli.cmd {
        return cmd_survey(&cfg, &cli.common, &cli.cmd);
    }
    let mut out = Output::open(cli.common.json_out.as_deref())?;
    match &cli.cmd {
        Command::Classify { graph6, file, lsplus } => cmd_classify(&cfg, &mut out, graph6, file.as_deref(), *lsplus),
        Command::CertifyHk { k } => cmd_certify_hk(&mut out, *k),
        Command::Separate { graph6, facet } => cmd_separate(&cfg, &mut out, graph6, facet.as_deref()),
        Command::Reduce { graph6 } => cmd_reduce(&mut out, graph6),
        Command::Catalog { nodes } => {
            for g in catalog(*nodes)? {
                writeln!(out.sink, "{}", to_graph6(&g))?;
            }
            Ok(())
        }
        Command::Survey { .. } => unreachable!("handled above"),
    }?;
    out.sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
