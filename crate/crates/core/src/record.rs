//! Solved orbits with provenance: coefficients, solver metadata and the
//! complete diagnostic block that the verification pipeline recomputes.

use crate::config::{
    central_config_residual, reconstruct_configuration, CollinearGeometry, MassTriple,
};
use crate::dynamics::{closure_error, eom_residual_spectral, OrbitTimeSeries, SeriesMeta};
use crate::error::{Error, Result};
use crate::functionals::{action_f, action_f1, energy_residual, phi_eps, EnergyParams};
use crate::loops::FourierLoop;
use crate::optimize::TerminationReason;
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

/// Schema tag carried by every orbit file.
pub const ORBIT_SCHEMA: &str = "euler-collinear-orbit/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Minimizer,
    MountainPass,
}

/// How the orbit was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveSummary {
    pub kind: SolverKind,
    pub eps: f64,
    pub h: f64,
    /// Frequency rescaling mapping the stored loop to the fixed-energy
    /// orbit; the rescaled period is `period / omega`.
    pub omega: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub termination: TerminationReason,
}

/// Every verification number the pipeline produces for one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostics {
    pub f: f64,
    pub f1: f64,
    pub phi_eps: f64,
    pub central_config_residual: f64,
    pub eom_residual_unperturbed: f64,
    pub eom_residual_perturbed: f64,
    pub energy_residual: f64,
    pub closure_error: f64,
    pub separation_variation: f64,
    pub winding_number: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicEntry {
    pub k: usize,
    pub cos: [f64; 3],
    pub sin: [f64; 3],
}

/// A solved loop plus provenance, the unit of persistence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRecord {
    pub schema: String,
    pub masses: MassTriple,
    /// Period the stored coefficients are read against (the solver's
    /// period; the fixed-energy orbit lives at `period / solver.omega`).
    pub period: f64,
    pub lambda0: f64,
    pub harmonics: Vec<HarmonicEntry>,
    pub solver: SolveSummary,
    pub diagnostics: Diagnostics,
}

impl OrbitRecord {
    /// Rebuild the Fourier loop from the stored harmonics.
    pub fn to_loop(&self) -> Result<FourierLoop> {
        let entries: Vec<(usize, Vec3, Vec3)> = self
            .harmonics
            .iter()
            .map(|h| (h.k, Vec3::from(h.cos), Vec3::from(h.sin)))
            .collect();
        FourierLoop::from_harmonics(self.period, &entries)
    }

    /// Loop used for dynamics checks: the fixed-energy rescaling for
    /// mountain-pass orbits, the stored loop itself for minimizers.
    pub fn verification_loop(&self) -> Result<FourierLoop> {
        let lp = self.to_loop()?;
        Ok(match self.solver.kind {
            SolverKind::MountainPass => lp.with_period(self.period / self.solver.omega),
            SolverKind::Minimizer => lp,
        })
    }

    pub fn params(&self) -> Result<EnergyParams> {
        EnergyParams::new(self.solver.h, self.solver.eps)
    }

    /// Structural checks on a record read from disk: schema tag, odd and
    /// strictly increasing harmonic indices, positive period.
    pub fn validate(&self) -> Result<()> {
        if self.schema != ORBIT_SCHEMA {
            return Err(Error::SchemaMismatch {
                expected: ORBIT_SCHEMA,
                got: self.schema.clone(),
            });
        }
        if self.harmonics.is_empty() {
            return Err(Error::MalformedRecord("no harmonics stored"));
        }
        let mut last = 0usize;
        for h in &self.harmonics {
            if h.k % 2 == 0 || h.k <= last {
                return Err(Error::InvalidHarmonic(h.k));
            }
            last = h.k;
        }
        if self.period.is_nan() || self.period <= 0.0 {
            return Err(Error::MalformedRecord("period is not positive"));
        }
        if !self.solver.omega.is_finite() || self.solver.omega <= 0.0 {
            return Err(Error::MalformedRecord("omega is not positive"));
        }
        Ok(())
    }

    /// Compute every diagnostic for a solved loop and pack the record.
    ///
    /// Diagnostics always use the canonical verification discretization of
    /// [`verification_grid`] and [`crate::dynamics::DEFAULT_INTEGRATION_STEPS`], independent
    /// of whatever grid the solver ran on, so a later verification pass can
    /// reproduce them from the stored coefficients alone.
    pub fn assemble(
        lp: &FourierLoop,
        geom: &CollinearGeometry,
        masses: &MassTriple,
        summary: &SolveSummary,
    ) -> Result<Self> {
        let params = EnergyParams::new(summary.h, summary.eps)?;
        let diagnostics = diagnose(
            lp,
            geom,
            masses,
            &params,
            summary,
            verification_grid(lp),
            crate::dynamics::DEFAULT_INTEGRATION_STEPS,
        )?;
        let harmonics = lp
            .harmonics()
            .iter()
            .enumerate()
            .map(|(i, h)| HarmonicEntry {
                k: FourierLoop::index_of(i),
                cos: h.cos.into(),
                sin: h.sin.into(),
            })
            .collect();
        Ok(Self {
            schema: ORBIT_SCHEMA.to_string(),
            masses: *masses,
            period: lp.period(),
            lambda0: geom.lambda0,
            harmonics,
            solver: *summary,
            diagnostics,
        })
    }
}

/// Canonical quadrature grid for diagnostics of a given loop: the default
/// grid, enlarged when the harmonic content needs more points.
pub fn verification_grid(lp: &FourierLoop) -> usize {
    crate::loops::DEFAULT_GRID.max(lp.min_grid())
}

/// Time series of spectral states at the grid instants of a loop; the
/// states come from the trigonometric representation, not from integration.
pub fn series_from_loop(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    params: &EnergyParams,
    grid: usize,
) -> Result<OrbitTimeSeries> {
    let sampled = lp.sample(grid)?;
    let states = sampled
        .r_values
        .iter()
        .zip(&sampled.r_dot_values)
        .map(|(&r, &rdot)| reconstruct_configuration(geom, r, rdot))
        .collect();
    Ok(OrbitTimeSeries {
        times: sampled.times,
        states,
        meta: SeriesMeta {
            masses: *masses,
            params: *params,
            step: lp.period() / grid as f64,
        },
    })
}

/// Full diagnostic block for one orbit.
///
/// Functional values use the stored loop at its solve period; dynamics
/// checks (equation-of-motion residuals, energy identity, closure) run on
/// the verification loop, which for mountain-pass orbits is the
/// fixed-energy rescaling.
pub fn diagnose(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    params: &EnergyParams,
    summary: &SolveSummary,
    grid: usize,
    steps: usize,
) -> Result<Diagnostics> {
    let f = action_f(lp, geom, masses, grid)?;
    let f1 = action_f1(lp, geom, grid)?.value;
    let phi = phi_eps(lp, geom, params, grid)?.value;

    let sampled = lp.sample(grid)?;
    let separation_variation =
        (sampled.max_radius() - sampled.min_radius()) / sampled.mean_radius();
    let winding_number = lp.winding_number(grid)?;

    let mut central = 0.0f64;
    for (&r, &rdot) in sampled.r_values.iter().zip(&sampled.r_dot_values) {
        let st = reconstruct_configuration(geom, r, rdot);
        central = central.max(central_config_residual(&st, masses)?);
    }

    let verification = match summary.kind {
        SolverKind::MountainPass => lp.with_period(lp.period() / summary.omega),
        SolverKind::Minimizer => lp.clone(),
    };
    let eom = eom_residual_spectral(&verification, geom, masses, params, grid)?;
    let spectral_series = series_from_loop(&verification, geom, masses, params, grid)?;
    let energy = energy_residual(&spectral_series, masses, params)?;
    let closure = closure_error(&verification, geom, masses, params, steps)?;

    Ok(Diagnostics {
        f,
        f1,
        phi_eps: phi,
        central_config_residual: central,
        eom_residual_unperturbed: eom.unperturbed,
        eom_residual_perturbed: eom.perturbed,
        energy_residual: energy,
        closure_error: closure,
        separation_variation,
        winding_number,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn assemble_and_rebuild_the_kepler_circle() {
        let masses = MassTriple::equal();
        let geom = CollinearGeometry::derive(&masses, 0.5).unwrap();
        let r_star = 10f64.powf(1.0 / 3.0);
        let lp = FourierLoop::circle_xy(2.0 * PI, r_star, 4);
        let h = -geom.s / (2.0 * r_star);
        let summary = SolveSummary {
            kind: SolverKind::Minimizer,
            eps: 0.0,
            h,
            omega: 1.0,
            iterations: 0,
            gradient_norm: 0.0,
            termination: TerminationReason::Converged,
        };
        let record = OrbitRecord::assemble(&lp, &geom, &masses, &summary).unwrap();
        assert_eq!(record.schema, ORBIT_SCHEMA);
        assert_eq!(record.harmonics.len(), 4);
        assert_eq!(record.harmonics[1].k, 3);
        assert!(record.validate().is_ok());

        let back = record.to_loop().unwrap();
        assert_eq!(back, lp);

        let d = &record.diagnostics;
        assert!(d.central_config_residual <= 1e-10);
        assert!(d.eom_residual_unperturbed <= 1e-8);
        assert!(d.energy_residual <= 1e-9);
        assert!(d.closure_error <= 1e-6);
        assert_eq!(d.winding_number, Some(1));
        assert!(d.separation_variation < 1e-12);
    }

    #[test]
    fn validation_rejects_even_or_unsorted_harmonics() {
        let masses = MassTriple::equal();
        let geom = CollinearGeometry::derive(&masses, 0.5).unwrap();
        let lp = FourierLoop::circle_xy(2.0 * PI, 1.0, 1);
        let summary = SolveSummary {
            kind: SolverKind::Minimizer,
            eps: 0.0,
            h: -2.5,
            omega: 1.0,
            iterations: 0,
            gradient_norm: 0.0,
            termination: TerminationReason::Converged,
        };
        let mut record = OrbitRecord::assemble(&lp, &geom, &masses, &summary).unwrap();
        record.harmonics[0].k = 2;
        assert!(record.validate().is_err());
        record.harmonics[0].k = 1;
        record.schema = "something-else/9".into();
        assert!(record.validate().is_err());
    }
}
