//! JSON and CSV serialization of weight distributions.
//!
//! Entries are sorted lexicographically by `(a, b)` and multiplicities are
//! written as decimal strings so that arbitrarily large values survive
//! round trips through JSON consumers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{WeightDistribution, WeylWord};
use crate::error::{Error, Result};
use crate::lattice::{Generator, HighestWeight, LatticePoint};

#[derive(Serialize, Deserialize)]
struct Document {
    highest_weight: HighestWeight,
    word: WordRecord,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
struct WordRecord {
    length: u32,
    first: u32,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    a: i64,
    b: i64,
    mult: String,
}

pub fn to_json(mu: &WeightDistribution, word: &WeylWord) -> String {
    let doc = Document {
        highest_weight: *mu.highest_weight(),
        word: WordRecord {
            length: word.length,
            first: word.first.index(),
        },
        entries: mu
            .sorted_by_ab()
            .into_iter()
            .map(|(p, v)| Entry {
                a: p.a,
                b: p.b,
                mult: v.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("document serializes")
}

pub fn from_json(text: &str) -> Result<(WeightDistribution, WeylWord)> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("bad distribution JSON: {e}")))?;
    let first = Generator::try_from(doc.word.first)?;
    let entries =
        doc.entries
            .into_iter()
            .map(|e| {
                let mult: BigInt = e.mult.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad multiplicity {:?}", e.mult))
                })?;
                Ok((LatticePoint::new(e.a, e.b), mult))
            })
            .collect::<Result<Vec<_>>>()?;
    Ok((
        WeightDistribution::from_entries(doc.highest_weight, entries),
        WeylWord::new(doc.word.length, first),
    ))
}

/// CSV with header `a,b,mult`, LF line endings.
pub fn to_csv(mu: &WeightDistribution) -> String {
    let mut out = String::from("a,b,mult\n");
    for (p, v) in mu.sorted_by_ab() {
        writeln!(out, "{},{},{}", p.a, p.b, v).expect("writing to a String");
    }
    out
}
