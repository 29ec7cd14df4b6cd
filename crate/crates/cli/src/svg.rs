//! Static SVG plots of the three body traces and the relative curve.
//!
//! Output is a pure function of the record and plane, so repeated emission
//! is byte-identical; coordinates are rounded to fixed decimals to keep the
//! files stable.

use anyhow::{Context, Result};
use euler3b::{CollinearGeometry, FourierLoop, OrbitRecord, Vec3};
use std::fmt::Write as _;
use std::path::Path;

pub const PLOT_SAMPLES: usize = 256;
const CANVAS: f64 = 720.0;
const MARGIN: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Plane {
    Xy,
    Xz,
    Yz,
}

impl Plane {
    fn project(&self, v: Vec3) -> (f64, f64) {
        match self {
            Plane::Xy => (v.x, v.y),
            Plane::Xz => (v.x, v.z),
            Plane::Yz => (v.y, v.z),
        }
    }

    fn axes(&self) -> (&'static str, &'static str) {
        match self {
            Plane::Xy => ("x", "y"),
            Plane::Xz => ("x", "z"),
            Plane::Yz => ("y", "z"),
        }
    }
}

pub fn render_svg(record: &OrbitRecord, plane: Plane) -> Result<String> {
    let lp: FourierLoop = record.to_loop()?;
    let geom = CollinearGeometry::derive(&record.masses, record.lambda0)?;
    let t_step = lp.period() / PLOT_SAMPLES as f64;

    // Four closed traces: the three bodies and the relative curve.
    let mut traces: [Vec<(f64, f64)>; 4] = Default::default();
    for j in 0..=PLOT_SAMPLES {
        let r = lp.evaluate(j as f64 * t_step);
        for (trace, coeff) in traces.iter_mut().zip([geom.c1, geom.c2, geom.c3, 1.0]) {
            trace.push(plane.project(r * coeff));
        }
    }

    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in traces.iter().flatten() {
        min_x = min_x.min(*x);
        max_x = max_x.max(*x);
        min_y = min_y.min(*y);
        max_y = max_y.max(*y);
    }
    // Equal aspect: one scale for both axes, traces centered on the canvas.
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let cx = 0.5 * (min_x + max_x);
    let cy = 0.5 * (min_y + max_y);
    let to_canvas = |(x, y): (f64, f64)| {
        (
            CANVAS / 2.0 + (x - cx) * scale,
            CANVAS / 2.0 - (y - cy) * scale,
        )
    };

    let colors = ["#4c72b0", "#dd8452", "#55a868", "#8172b3"];
    let labels = ["body 1", "body 2", "body 3", "relative"];
    let (ax, ay) = plane.axes();

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\" \
         width=\"{CANVAS}\" height=\"{CANVAS}\">"
    )?;
    writeln!(
        svg,
        "  <rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>"
    )?;
    for (i, trace) in traces.iter().enumerate() {
        let dash = if i == 3 {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        let mut points = String::new();
        for &p in trace {
            let (x, y) = to_canvas(p);
            write!(points, "{x:.3},{y:.3} ")?;
        }
        writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{dash} points=\"{}\"/>",
            colors[i],
            points.trim_end()
        )?;
    }
    // Legend with the ratio and the reduced action.
    writeln!(
        svg,
        "  <text x=\"{MARGIN}\" y=\"28\" font-family=\"monospace\" font-size=\"14\">\
         lambda0 = {:.12}, f1 = {:.12} [{ax}-{ay} plane]</text>",
        record.lambda0, record.diagnostics.f1
    )?;
    for (i, label) in labels.iter().enumerate() {
        let y = 50.0 + 18.0 * i as f64;
        writeln!(
            svg,
            "  <rect x=\"{MARGIN}\" y=\"{:.1}\" width=\"12\" height=\"4\" fill=\"{}\"/>",
            y - 3.0,
            colors[i]
        )?;
        writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{y:.1}\" font-family=\"monospace\" font-size=\"12\">{label}</text>",
            MARGIN + 18.0
        )?;
    }
    writeln!(svg, "</svg>")?;
    Ok(svg)
}

pub fn emit_svg(record: &OrbitRecord, path: &Path, plane: Plane) -> Result<()> {
    let svg = render_svg(record, plane)?;
    std::fs::write(path, svg).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
