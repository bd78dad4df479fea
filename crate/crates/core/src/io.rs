//! Lattice files: `{"label": .., "rank": n, "gram": [...]}` with the Gram
//! matrix either flat row-major or nested.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::linalg::{bigint_to_cell, IntMatrix};

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    rank: usize,
    gram: Vec<Value>,
}

fn cell(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer entry {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
        other => Err(Error::Parse(format!("unexpected Gram entry {other}"))),
    }
}

pub fn parse_lattice(text: &str) -> Result<IntegralLattice> {
    let file: LatticeFile = serde_json::from_str(text)?;
    let n = file.rank;
    let flat: Vec<BigInt> = if file.gram.iter().all(Value::is_array) && !file.gram.is_empty() {
        if file.gram.len() != n {
            return Err(Error::Parse(format!("{} Gram rows for rank {n}", file.gram.len())));
        }
        let mut out = Vec::with_capacity(n * n);
        for row in &file.gram {
            let row = row.as_array().expect("checked above");
            if row.len() != n {
                return Err(Error::Parse(format!("Gram row of length {} for rank {n}", row.len())));
            }
            for v in row {
                out.push(cell(v)?);
            }
        }
        out
    } else {
        file.gram.iter().map(cell).collect::<Result<_>>()?
    };
    if flat.len() != n * n {
        return Err(Error::Parse(format!("{} Gram entries for rank {n}", flat.len())));
    }
    let lattice = IntegralLattice::new(IntMatrix::new(n, n, flat)?)?;
    Ok(match file.label {
        Some(l) => lattice.with_label(l),
        None => lattice,
    })
}

pub fn read_lattice(path: &Path) -> Result<IntegralLattice> {
    parse_lattice(&std::fs::read_to_string(path)?)
}

/// Flat row-major form.
pub fn lattice_to_json(lattice: &IntegralLattice) -> Result<String> {
    let file = LatticeFile {
        label: lattice.label().map(str::to_string),
        rank: lattice.rank(),
        gram: lattice.gram().entries().iter().map(bigint_to_cell).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}
