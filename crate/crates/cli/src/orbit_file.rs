//! Reading and writing orbit record files.
//!
//! A file holds either one record object or an array of records (a
//! continuation writes one per stage). Schema violations surface with the
//! JSON path of the offending field.

use anyhow::{anyhow, bail, Context, Result};
use euler3b::OrbitRecord;
use std::fs;
use std::path::Path;

pub fn read_orbits(path: &Path) -> Result<Vec<OrbitRecord>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;

    let records: Vec<OrbitRecord> =
        match value {
            serde_json::Value::Array(items) => items
                .into_iter()
                .enumerate()
                .map(|(i, item)| {
                    deserialize_record(item)
                        .with_context(|| format!("record {i} in {}", path.display()))
                })
                .collect::<Result<_>>()?,
            other => vec![deserialize_record(other)
                .with_context(|| format!("record in {}", path.display()))?],
        };

    if records.is_empty() {
        bail!("{} holds no orbit records", path.display());
    }
    for (i, record) in records.iter().enumerate() {
        record
            .validate()
            .map_err(|e| anyhow!("record {i} in {}: {e}", path.display()))?;
    }
    Ok(records)
}

fn deserialize_record(value: serde_json::Value) -> Result<OrbitRecord> {
    let mut track = serde_path_to_error::Track::new();
    let de = serde_path_to_error::Deserializer::new(value, &mut track);
    OrbitRecord::deserialize(de).map_err(|e| anyhow!("schema violation at `{}`: {e}", track.path()))
}

use serde::Deserialize;

/// Write one record as an object, several as an array; the decimal
/// serialization round-trips every f64 bit-for-bit.
pub fn write_orbits(path: &Path, records: &[OrbitRecord]) -> Result<()> {
    let text = match records {
        [single] => serde_json::to_string_pretty(single)?,
        many => serde_json::to_string_pretty(many)?,
    };
    fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
