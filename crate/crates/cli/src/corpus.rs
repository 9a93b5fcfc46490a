//! `bhdual corpus`: JSON-lines stream with one record per polynomial and a
//! closing summary record.

use std::io::Write;

use bhdual_core::duality::{
    classify_atomic, generate_corpus, subgroups_to_check, CorpusMode, TransposedFibres,
};
use bhdual_core::intmat::InvertiblePolynomial;
use bhdual_core::Caps;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::{det_value, Outcome};

const SCHEMA: u32 = 1;

pub struct Settings {
    pub seed: u64,
    pub mode: CorpusMode,
    pub count: usize,
    pub n_max: usize,
    pub exp_max: u64,
    pub enumerate_up_to: u64,
    pub random_cyclic: usize,
    pub verify: bool,
    pub caps: Caps,
}

#[derive(Serialize, Default)]
struct Checks {
    group_order: u64,
    subgroups_checked: usize,
    theorem_failures: usize,
    oracle_disagreements: usize,
    /// set when the polynomial could not be checked, e.g. a cap was hit
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    /// set when a computation failed outright
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Checks {
    fn failed(&self) -> bool {
        self.theorem_failures > 0 || self.oracle_disagreements > 0 || self.error.is_some()
    }
}

fn check(f: &InvertiblePolynomial, index: usize, s: &Settings) -> Checks {
    let mut checks = Checks::default();
    let outcome = (|| -> bhdual_core::Result<()> {
        let sides = TransposedFibres::new(f, &s.caps)?;
        checks.group_order = sides.group().order() as u64;
        let seed = s.seed.wrapping_add(index as u64);
        let subs = subgroups_to_check(
            sides.group(),
            s.enumerate_up_to,
            s.random_cyclic,
            seed,
            &s.caps,
        )?;
        checks.subgroups_checked = subs.len();
        for g in &subs {
            let report = sides.verify(g, &s.caps)?;
            checks.theorem_failures += usize::from(!report.theorem_holds);
            checks.oracle_disagreements += usize::from(!report.oracle_agrees);
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => {}
        Err(e) if e.is_cap() => checks.skipped = Some(e.to_string()),
        Err(e) => checks.error = Some(e.to_string()),
    }
    checks
}

pub fn run(s: &Settings, json: bool, out: &mut dyn Write) -> Outcome {
    let corpus = generate_corpus(s.seed, s.mode, s.n_max, s.exp_max, s.count)?;
    let checks: Vec<Option<Checks>> = if s.verify {
        corpus
            .par_iter()
            .enumerate()
            .map(|(i, f)| Some(check(f, i, s)))
            .collect()
    } else {
        corpus.iter().map(|_| None).collect()
    };

    let mode = match s.mode {
        CorpusMode::Atomic => "atomic",
        CorpusMode::Sparse => "sparse",
    };
    let (mut instances, mut failures, mut skipped, mut failed_polys) = (0, 0, 0, 0);
    for (i, (f, c)) in corpus.iter().zip(&checks).enumerate() {
        let verdict = classify_atomic(f).verdict;
        if let Some(c) = c {
            instances += c.subgroups_checked;
            failures += c.theorem_failures + c.oracle_disagreements;
            skipped += usize::from(c.skipped.is_some());
            failed_polys += usize::from(c.failed());
        }
        if json {
            let mut line = json!({
                "schema": SCHEMA,
                "index": i,
                "polynomial": f.to_string(),
                "n": f.n(),
                "E": f.matrix().rows(),
                "det": det_value(f),
                "verdict": verdict,
            });
            if let Some(c) = c {
                line["checks"] = serde_json::to_value(c).map_err(std::io::Error::from)?;
            }
            serde_json::to_writer(&mut *out, &line).map_err(std::io::Error::from)?;
            writeln!(out)?;
        } else {
            write!(out, "{i:>5}  {f}")?;
            if let Some(c) = c {
                let status = if let Some(e) = &c.error {
                    format!("error: {e}")
                } else if let Some(reason) = &c.skipped {
                    format!("skipped: {reason}")
                } else if c.failed() {
                    format!(
                        "FAILED {} of {}",
                        c.theorem_failures + c.oracle_disagreements,
                        c.subgroups_checked
                    )
                } else {
                    format!("ok, {} subgroups", c.subgroups_checked)
                };
                write!(out, "  |G_f| = {}  {status}", c.group_order)?;
            }
            writeln!(out)?;
        }
    }

    let all_hold = failed_polys == 0;
    if json {
        let mut summary = json!({
            "schema": SCHEMA,
            "summary": {
                "seed": s.seed,
                "mode": mode,
                "count": corpus.len(),
                "n_max": s.n_max,
                "exp_max": s.exp_max,
            },
        });
        if s.verify {
            summary["summary"]["instances"] = json!(instances);
            summary["summary"]["failures"] = json!(failures);
            summary["summary"]["failed_polynomials"] = json!(failed_polys);
            summary["summary"]["skipped_polynomials"] = json!(skipped);
            summary["summary"]["all_hold"] = json!(all_hold);
        }
        serde_json::to_writer(&mut *out, &summary).map_err(std::io::Error::from)?;
        writeln!(out)?;
    } else if s.verify {
        writeln!(
            out,
            "{} polynomials ({mode}, seed {}), {instances} (f, G) instances, {failures} failures, {skipped} skipped",
            corpus.len(),
            s.seed
        )?;
    } else {
        writeln!(
            out,
            "{} polynomials ({mode}, seed {})",
            corpus.len(),
            s.seed
        )?;
    }
    Ok(all_hold)
}
