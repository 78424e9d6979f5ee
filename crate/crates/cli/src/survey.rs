use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use lsplab::classify::{classify, ClassificationReport, Evidence, Verdict};
use lsplab::config::Config;
use lsplab::graph::from_graph6;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::input::InputLine;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub index: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub certificate_ids: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub total: usize,
    pub errors: usize,
    pub counts: BTreeMap<String, BTreeMap<String, usize>>,
    pub ls_plus_imperfect: Vec<String>,
}

impl SurveySummary {
    pub fn add(&mut self, r: &SurveyRecord) {
        self.total += 1;
        let Some(rep) = &r.report else {
            self.errors += 1;
            return;
        };
        for (class, v) in &rep.verdicts {
            let key = serde_json::to_value(v).ok().and_then(|j| j.as_str().map(String::from)).unwrap_or_default();
            *self.counts.entry(class.clone()).or_default().entry(key).or_default() += 1;
        }
        if rep.verdict(lsplab::classify::LS_PLUS_PERFECT) == Some(Verdict::No) {
            self.ls_plus_imperfect.push(r.graph6.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub input: String,
    pub input_len: usize,
    pub next: usize,
}

pub struct SurveyOptions {
    pub lsplus: bool,
    pub predicates: Option<Vec<String>>,
    pub imperfect_only: bool,
    pub checkpoint: Option<PathBuf>,
    pub input_name: String,
}

/// FNV-1a, for stable certificate ids.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn certificate_ids(rep: &ClassificationReport) -> Vec<String> {
    rep.evidence
        .values()
        .filter_map(|e| match e {
            Evidence::LsPlusWitness { certificate, .. } => {
                let s = serde_json::to_string(certificate).ok()?;
                Some(format!("lsplus-{:016x}", fnv1a(s.as_bytes())))
            }
            _ => None,
        })
        .collect()
}

fn restrict(rep: &mut ClassificationReport, keep: &[String]) {
    rep.verdicts.retain(|k, _| keep.contains(k));
    rep.evidence.retain(|k, _| keep.contains(k));
}

pub fn survey_one(index: usize, line: &InputLine, cfg: &Config, opts: &SurveyOptions) -> Option<SurveyRecord> {
    let start = Instant::now();
    let mut rec = SurveyRecord {
        index,
        graph6: line.text.clone(),
        report: None,
        error: None,
        certificate_ids: Vec::new(),
        elapsed_ms: 0,
    };
    let g = match from_graph6(&line.text) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(format!("line {}: {e}", line.line));
            return Some(rec);
        }
    };
    if opts.imperfect_only && lsplab::classify::is_perfect(&g).unwrap_or(false) {
        return None;
    }
    match classify(&g, cfg, opts.lsplus) {
        Ok(mut rep) => {
            if let Some(keep) = &opts.predicates {
                restrict(&mut rep, keep);
            }
            rec.certificate_ids = certificate_ids(&rep);
            rec.report = Some(rep);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    Some(rec)
}

fn load_checkpoint(path: &Path, opts: &SurveyOptions, len: usize) -> std::io::Result<usize> {
    if !path.exists() {
        return Ok(0);
    }
    let text = fs::read_to_string(path)?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(std::io::Error::other)?;
    if cp.input != opts.input_name || cp.input_len != len || cp.next > len {
        return Err(std::io::Error::other("checkpoint does not match this input"));
    }
    Ok(cp.next)
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string(cp).map_err(std::io::Error::other)?)?;
    fs::rename(tmp, path)
}

/// Classify every line, writing records in input order. With a checkpoint
/// file, work resumes after the last completed chunk and records are
/// appended to `out`.
pub fn run_survey(
    lines: &[InputLine],
    cfg: &Config,
    opts: &SurveyOptions,
    out: Option<&Path>,
) -> std::io::Result<(SurveySummary, Vec<SurveyRecord>)> {
    let start = match &opts.checkpoint {
        Some(p) => load_checkpoint(p, opts, lines.len())?,
        None => 0,
    };
    let mut sink: Box<dyn Write> = match out {
        Some(p) => {
            let f = if start > 0 {
                OpenOptions::new().append(true).create(true).open(p)?
            } else {
                File::create(p)?
            };
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(std::io::stdout())),
    };
    let mut summary = SurveySummary::default();
    if start > 0 {
        if let Some(p) = out {
            for l in fs::read_to_string(p)?.lines().filter(|l| !l.trim().is_empty()) {
                if let Ok(r) = serde_json::from_str::<SurveyRecord>(l) {
                    summary.add(&r);
                }
            }
        }
    }
    let mut fresh = Vec::new();
    let chunk = cfg.checkpoint_every.max(1);
    let mut pos = start;
    while pos < lines.len() {
        let end = (pos + chunk).min(lines.len());
        let recs: Vec<SurveyRecord> =
            (pos..end).into_par_iter().filter_map(|i| survey_one(i, &lines[i], cfg, opts)).collect();
        for r in &recs {
            writeln!(sink, "{}", serde_json::to_string(r).map_err(std::io::Error::other)?)?;
            summary.add(r);
        }
        sink.flush()?;
        fresh.extend(recs);
        pos = end;
        if let Some(p) = &opts.checkpoint {
            save_checkpoint(p, &Checkpoint { input: opts.input_name.clone(), input_len: lines.len(), next: pos })?;
        }
    }
    Ok((summary, fresh))
}
