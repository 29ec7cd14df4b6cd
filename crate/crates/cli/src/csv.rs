//! Time-series CSV export: one row per instant, 17 significant digits.

use anyhow::{Context, Result};
use euler3b::OrbitTimeSeries;
use std::io::Write;
use std::path::Path;

pub const HEADER: &str =
    "t,q1x,q1y,q1z,q2x,q2y,q2z,q3x,q3y,q3z,v1x,v1y,v1z,v2x,v2y,v2z,v3x,v3y,v3z";

pub fn format_series(series: &OrbitTimeSeries) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (t, state) in series.times.iter().zip(&series.states) {
        out.push_str(&format!("{t:.16e}"));
        for component in state.to_flat() {
            out.push_str(&format!(",{component:.16e}"));
        }
        out.push('\n');
    }
    out
}

pub fn emit_csv(series: &OrbitTimeSeries, path: &Path) -> Result<()> {
    let mut file =
        std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    file.write_all(format_series(series).as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
