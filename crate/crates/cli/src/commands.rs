//! Subcommand implementations. Result tables go to stdout, progress notes
//! to stderr; exit codes are 0 for success, 1 for validation errors, 2 for
//! solver non-convergence and 3 for verification failures.

use crate::csv::emit_csv;
use crate::orbit_file::{read_orbits, write_orbits};
use crate::svg::{emit_svg, Plane};
use crate::verify::verify_record;
use anyhow::{bail, Context, Result};
use euler3b::{
    continuation_in_eps, minimize_f1, random_loop, reconstruct_configuration, rescale_to_energy,
    solve_lambda0, state_v_eps, CollinearGeometry, EnergyParams, FourierLoop, MassTriple,
    MinimizeOptions, MountainPassOptions, OrbitRecord, OrbitTimeSeries, SolveSummary, SolverKind,
    TerminationReason,
};
use std::path::Path;

pub fn parse_masses(text: &str) -> Result<MassTriple, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated masses, got `{text}`"
        ));
    }
    let mut values = [0.0; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("mass `{part}` is not a number: {e}"))?;
    }
    MassTriple::new(values[0], values[1], values[2]).map_err(|e| e.to_string())
}

pub fn run_lambda0(masses: &MassTriple) -> Result<u8> {
    let lambda0 = solve_lambda0(masses)?;
    let geom = CollinearGeometry::derive(masses, lambda0)?;
    println!("{:<10} {:>22}", "quantity", "value");
    for (name, value) in [
        ("lambda0", lambda0),
        ("s", geom.s),
        ("a", geom.a),
        ("b", geom.b),
    ] {
        println!("{name:<10} {value:>22.17}");
    }
    println!(
        "{}",
        serde_json::json!({ "lambda0": lambda0, "s": geom.s, "a": geom.a, "b": geom.b })
    );
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn run_minimize(
    masses: &MassTriple,
    period: f64,
    harmonics: usize,
    grid: usize,
    tol: f64,
    max_iter: usize,
    perturb: f64,
    seed: u64,
    out: &Path,
) -> Result<u8> {
    if period <= 0.0 {
        bail!("period must be positive");
    }
    if harmonics == 0 {
        bail!("need at least one harmonic");
    }
    let required = 4 * (2 * harmonics - 1);
    if grid < required {
        bail!("grid {grid} undersamples {harmonics} harmonics; need at least {required}");
    }

    let lambda0 = solve_lambda0(masses)?;
    let geom = CollinearGeometry::derive(masses, lambda0)?;

    let mut initial = FourierLoop::circle_xy(period, 1.0, harmonics);
    if perturb > 0.0 {
        let noise = random_loop(harmonics, seed, perturb, period);
        let flat: Vec<f64> = initial
            .to_flat()
            .iter()
            .zip(noise.to_flat())
            .map(|(a, b)| a + b)
            .collect();
        initial = FourierLoop::from_flat(period, &flat)?;
    }

    let opts = MinimizeOptions {
        tol,
        max_iter,
        grid,
    };
    let (lp, report) = minimize_f1(&initial, &geom, &opts)?;

    let state = reconstruct_configuration(&geom, lp.evaluate(0.0), lp.derivative(0.0));
    let h =
        state.kinetic_energy(masses) + state_v_eps(&state, masses, &EnergyParams::unperturbed(0.0));
    let params = EnergyParams::unperturbed(h);
    let omega =
        match rescale_to_energy(&lp, &geom, masses, &params, euler3b::verification_grid(&lp)) {
            Ok(r) => r.omega,
            Err(_) => 1.0,
        };

    let summary = SolveSummary {
        kind: SolverKind::Minimizer,
        eps: 0.0,
        h,
        omega,
        iterations: report.iterations,
        gradient_norm: report.final_gradient_norm,
        termination: report.termination,
    };
    let record = OrbitRecord::assemble(&lp, &geom, masses, &summary)?;
    write_orbits(out, std::slice::from_ref(&record))?;
    eprintln!("wrote {}", out.display());

    println!("{:<22} {:>22}", "quantity", "value");
    println!("{:<22} {:>22.17}", "f1", record.diagnostics.f1);
    println!("{:<22} {:>22.17}", "f", record.diagnostics.f);
    println!(
        "{:<22} {:>22.3e}",
        "gradient norm", report.final_gradient_norm
    );
    println!("{:<22} {:>22}", "iterations", report.iterations);
    println!("{:<22} {:>22.17}", "energy", h);
    println!("{:<22} {:>22?}", "termination", report.termination);

    Ok(if report.termination == TerminationReason::Converged {
        0
    } else {
        2
    })
}

#[allow(clippy::too_many_arguments)]
pub fn run_mountain_pass(
    masses: &MassTriple,
    period: f64,
    energy: Option<f64>,
    epsilon: &[f64],
    path_nodes: usize,
    harmonics: usize,
    grid: usize,
    tol: f64,
    max_iter: usize,
    out: &Path,
) -> Result<u8> {
    if period <= 0.0 {
        bail!("period must be positive");
    }
    if epsilon.is_empty() {
        bail!("need at least one perturbation strength");
    }
    let required = 4 * (2 * harmonics - 1);
    if grid < required {
        bail!("grid {grid} undersamples {harmonics} harmonics; need at least {required}");
    }

    let lambda0 = solve_lambda0(masses)?;
    let geom = CollinearGeometry::derive(masses, lambda0)?;
    let h = energy.unwrap_or(-geom.s / 4.0);
    eprintln!(
        "fixed energy h = {h:.12} (admissible range ({:.6}, 0))",
        -geom.s / 2.0
    );

    let opts = MountainPassOptions {
        tol,
        max_iter,
        path_nodes,
        grid,
        ..Default::default()
    };
    let records = continuation_in_eps(epsilon, h, &geom, masses, period, harmonics, &opts)?;
    write_orbits(out, &records)?;
    eprintln!("wrote {}", out.display());

    println!(
        "{:>10} {:>20} {:>12} {:>14} {:>16} {:>12}",
        "eps", "phi_eps", "grad norm", "omega", "rescaled T", "status"
    );
    let mut all_converged = true;
    for record in &records {
        let converged = record.solver.termination == TerminationReason::Converged;
        all_converged &= converged;
        println!(
            "{:>10.3e} {:>20.12} {:>12.3e} {:>14.9} {:>16.9} {:>12}",
            record.solver.eps,
            record.diagnostics.phi_eps,
            record.solver.gradient_norm,
            record.solver.omega,
            record.period / record.solver.omega,
            if converged { "converged" } else { "flagged" },
        );
    }
    Ok(if all_converged { 0 } else { 2 })
}

pub fn run_verify(file: &Path) -> Result<u8> {
    let records = read_orbits(file)?;
    let mut all = true;
    for (i, record) in records.iter().enumerate() {
        all &= verify_record(record, i)?;
    }
    Ok(if all { 0 } else { 3 })
}

/// Pick the record to drive dynamics from: the last stage of a
/// continuation file, or the single stored record.
fn principal_record(file: &Path) -> Result<OrbitRecord> {
    let mut records = read_orbits(file)?;
    if records.len() > 1 {
        eprintln!(
            "{} holds {} records; using the final stage",
            file.display(),
            records.len()
        );
    }
    Ok(records.pop().expect("read_orbits rejects empty files"))
}

pub fn run_integrate(file: &Path, steps: usize, out: Option<&Path>) -> Result<u8> {
    if steps == 0 {
        bail!("step count must be positive");
    }
    let record = principal_record(file)?;
    let geom = CollinearGeometry::derive(&record.masses, record.lambda0)?;
    let lp = record.verification_loop()?;
    let params = record.params()?;
    let initial = reconstruct_configuration(&geom, lp.evaluate(0.0), lp.derivative(0.0));
    let series: OrbitTimeSeries =
        euler3b::integrate(&initial, &record.masses, &params, steps, lp.period())
            .context("time integration failed")?;

    let a = initial.to_flat();
    let b = series.states.last().expect("series holds states").to_flat();
    let closure = {
        let diff: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        let norm: f64 = a.iter().map(|x| x * x).sum();
        (diff / norm).sqrt()
    };
    let energy = euler3b::energy_residual(&series, &record.masses, &params)?;
    let drift = euler3b::collinearity_drift(&series, record.lambda0);

    println!("{:<22} {:>16}", "quantity", "value");
    println!("{:<22} {:>16.6e}", "closure error", closure);
    println!("{:<22} {:>16.6e}", "energy residual", energy);
    println!("{:<22} {:>16.6e}", "collinearity drift", drift);
    println!("{:<22} {:>16}", "steps", steps);
    println!("{:<22} {:>16.12}", "period", lp.period());

    if let Some(csv_path) = out {
        emit_csv(&series, csv_path)?;
        eprintln!("wrote {}", csv_path.display());
    }
    Ok(0)
}

pub fn run_plot(file: &Path, out: &Path, plane: Plane) -> Result<u8> {
    let record = principal_record(file)?;
    emit_svg(&record, out, plane)?;
    eprintln!("wrote {}", out.display());
    Ok(0)
}
