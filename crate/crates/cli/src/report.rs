use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use spanex_core::Rational;

use crate::config::{Check, Checks, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not applicable, or the instance is outside the check's size guard.
    Skipped,
}

impl Verdict {
    pub fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A row that carries verdicts for some of the checks.
pub trait Verdicts {
    fn verdicts(&self) -> Vec<(Check, Verdict)>;

    fn passes(&self, checks: &Checks) -> bool {
        self.verdicts().iter().all(|&(c, v)| v != Verdict::Fail || !checks.enforced(c))
    }
}

/// Advisory float rendering of an exact value.
pub fn float(x: Rational) -> f64 {
    x.to_f64()
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    command: &'a str,
    passed: bool,
    rows: &'a [R],
}

/// Writes `rows` to `path` (standard output when `None`).
pub fn write_rows<R: Serialize>(
    command: &str,
    rows: &[R],
    passed: bool,
    format: Format,
    path: Option<&Path>,
) -> anyhow::Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &Envelope { command, passed, rows })?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    sink.flush()?;
    Ok(())
}
