use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use serde_json::Value;
use thompson_links::trees::{AnyPair, PairRecord};
use thompson_links::{BinaryPair, TernaryPair};

/// Bad invocation, as opposed to bad mathematical input. Exits with 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    /// Upper tree, e.g. "(.(...).)". Repeat together with --minus for several elements.
    #[arg(long)]
    pub plus: Vec<String>,
    /// Lower tree.
    #[arg(long)]
    pub minus: Vec<String>,
    /// JSON file holding one {"arity","plus","minus"} record or an array of them.
    #[arg(long, short, conflicts_with_all = ["plus", "minus"])]
    pub input: Option<PathBuf>,
    /// Tree arity for --plus/--minus.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub arity: Option<u32>,
}

fn read_records(path: &Path) -> Result<Vec<PairRecord>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let records = match value {
        Value::Array(_) => serde_json::from_value(value),
        other => serde_json::from_value(other).map(|r| vec![r]),
    };
    records.with_context(|| format!("{} is not a tree pair record or a list of them", path.display()))
}

pub fn read_generator_file(path: &Path) -> Result<Vec<PairRecord>> {
    read_records(path)
}

impl ElementArgs {
    fn records(&self, default_arity: u32) -> Result<Vec<PairRecord>> {
        if let Some(path) = &self.input {
            return read_records(path);
        }
        if self.plus.is_empty() {
            return Err(usage("no element given: pass --plus and --minus, or --input"));
        }
        if self.plus.len() != self.minus.len() {
            return Err(usage(format!(
                "{} --plus but {} --minus trees",
                self.plus.len(),
                self.minus.len()
            )));
        }
        let arity = self.arity.unwrap_or(default_arity);
        Ok(self
            .plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| PairRecord {
                arity,
                plus: p.clone(),
                minus: m.clone(),
            })
            .collect())
    }

    pub fn elements(&self, default_arity: u32) -> Result<Vec<AnyPair>> {
        let records = self.records(default_arity)?;
        if records.is_empty() {
            return Err(usage("input holds no elements"));
        }
        records
            .iter()
            .map(|r| AnyPair::try_from(r).map_err(anyhow::Error::from))
            .collect()
    }

    pub fn single(&self, default_arity: u32) -> Result<AnyPair> {
        let mut all = self.elements(default_arity)?;
        if all.len() != 1 {
            return Err(usage(format!("expected one element, got {}", all.len())));
        }
        Ok(all.remove(0))
    }

    pub fn ternary(&self) -> Result<TernaryPair> {
        match self.single(3)? {
            AnyPair::Ternary(p) => Ok(p),
            AnyPair::Binary(_) => {
                anyhow::bail!("this command needs a ternary element; map binary ones with `iota` first")
            }
        }
    }

    pub fn binary(&self) -> Result<BinaryPair> {
        match self.single(2)? {
            AnyPair::Binary(p) => Ok(p),
            AnyPair::Ternary(_) => anyhow::bail!("expected a binary element"),
        }
    }
}

/// Reads chords written as `(0,3)(1,5)(2,4)` or as a JSON list `[[0,3],...]`.
pub fn parse_chords(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut numbers = Vec::new();
    let mut current: Option<usize> = None;
    for ch in text.chars() {
        if let Some(d) = ch.to_digit(10) {
            let v = current.unwrap_or(0);
            current = Some(
                v.checked_mul(10)
                    .and_then(|v| v.checked_add(d as usize))
                    .context("number too large")?,
            );
        } else {
            if !matches!(ch, '(' | ')' | '[' | ']' | ',' | ' ' | '\t' | '\n') {
                anyhow::bail!("unexpected character {ch:?} in chord list");
            }
            numbers.extend(current.take());
        }
    }
    numbers.extend(current);
    if numbers.is_empty() || numbers.len() % 2 != 0 {
        anyhow::bail!("chord list needs an even, nonzero number of points");
    }
    Ok(numbers.chunks(2).map(|c| (c[0], c[1])).collect())
}
