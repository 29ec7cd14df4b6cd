//! Independent verification of candidate orbits: spectral
//! equation-of-motion residuals, classical time integration, closure and
//! collinearity checks, and the minimizer-vs-saddle distinction metrics.
//!
//! Nothing here touches the variational machinery: the integrator sees only
//! masses, a force law and an initial state, so agreement between a solved
//! loop and its integrated trajectory is evidence, not tautology.

use crate::config::{reconstruct_configuration, CollinearGeometry, ConfigurationState, MassTriple};
use crate::error::{Error, Result};
use crate::functionals::{action_f1, kepler_lower_bound, EnergyParams};
use crate::loops::FourierLoop;
use crate::vec3::Vec3;

/// Default step count for one-period closure checks.
pub const DEFAULT_INTEGRATION_STEPS: usize = 4096;

/// Integrated trajectory of the three bodies.
#[derive(Debug, Clone)]
pub struct OrbitTimeSeries {
    pub times: Vec<f64>,
    pub states: Vec<ConfigurationState>,
    pub meta: SeriesMeta,
}

#[derive(Debug, Clone, Copy)]
pub struct SeriesMeta {
    pub masses: MassTriple,
    pub params: EnergyParams,
    pub step: f64,
}

impl OrbitTimeSeries {
    pub fn single(state: ConfigurationState, masses: MassTriple, params: EnergyParams) -> Self {
        Self {
            times: vec![0.0],
            states: vec![state],
            meta: SeriesMeta {
                masses,
                params,
                step: 0.0,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Acceleration of each body under the (possibly perturbed) pairwise force
/// law. `eps_weight` is eps/h, zero for plain gravity.
fn accelerations(q: &[Vec3; 3], masses: &MassTriple, eps_weight: f64) -> [Vec3; 3] {
    let m = masses.as_array();
    let mut acc = [Vec3::default(); 3];
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let d = q[j] - q[i];
            let dist = d.norm();
            let inv3 = 1.0 / (dist * dist * dist);
            // -grad_i of (-m_i m_j / d + eps_weight m_i m_j / d^2), per unit
            // m_i; eps_weight is negative, so the second term deepens the
            // short-range attraction.
            acc[i] += d * (m[j] * inv3) - d * (2.0 * eps_weight * m[j] * inv3 / dist);
        }
    }
    acc
}

/// Spectral residuals of the equations of motion for both force laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EomResiduals {
    pub unperturbed: f64,
    pub perturbed: f64,
}

/// Differentiate the loop twice spectrally, reconstruct the bodies, and
/// measure how far `m_i r_i''` is from the force, normalized by the largest
/// force magnitude. Both the plain and the perturbed law are reported.
pub fn eom_residual_spectral(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    params: &EnergyParams,
    grid: usize,
) -> Result<EomResiduals> {
    let sampled = lp.sample(grid)?;
    if sampled.min_radius() < crate::functionals::COLLISION_GUARD {
        return Err(Error::Collision {
            min_sep: sampled.min_radius(),
        });
    }
    let eps_weight = if params.eps > 0.0 {
        params.eps / params.h
    } else {
        0.0
    };
    let m = masses.as_array();

    let mut worst = [0.0f64; 2];
    let mut force_scale = [0.0f64; 2];
    for (j, &t) in sampled.times.iter().enumerate() {
        let r = sampled.r_values[j];
        let rddot = lp.second_derivative(t);
        let st = reconstruct_configuration(geom, r, Vec3::default());
        let q = st.positions();
        let qddot = [rddot * geom.c1, rddot * geom.c2, rddot * geom.c3];
        for (law, weight) in [(0usize, 0.0), (1, eps_weight)] {
            let acc = accelerations(&q, masses, weight);
            for i in 0..3 {
                let force = acc[i] * m[i];
                force_scale[law] = force_scale[law].max(force.norm());
                let defect = (qddot[i] * m[i] - force).norm();
                worst[law] = worst[law].max(defect);
            }
        }
    }
    Ok(EomResiduals {
        unperturbed: worst[0] / force_scale[0],
        perturbed: worst[1] / force_scale[1],
    })
}

/// Classical fixed-step 4th-order integration of the first-order system.
///
/// The force law follows `params`: eps = 0 integrates plain gravity,
/// eps > 0 the perturbed law. Aborts when any pairwise distance falls below
/// 1e-9 of the initial configuration scale.
pub fn integrate(
    initial: &ConfigurationState,
    masses: &MassTriple,
    params: &EnergyParams,
    step_count: usize,
    t_final: f64,
) -> Result<OrbitTimeSeries> {
    if step_count == 0 {
        return Err(Error::ZeroSteps);
    }
    let eps_weight = if params.eps > 0.0 {
        params.eps / params.h
    } else {
        0.0
    };
    let scale = initial.max_pairwise_distance();
    let guard = 1e-9 * scale;

    let h = t_final / step_count as f64;
    let mut times = Vec::with_capacity(step_count + 1);
    let mut states = Vec::with_capacity(step_count + 1);
    let mut state = *initial;
    times.push(0.0);
    states.push(state);

    let deriv = |st: &ConfigurationState| -> Result<([Vec3; 3], [Vec3; 3])> {
        let q = st.positions();
        let min_d = st.min_pairwise_distance();
        if min_d < guard {
            return Err(Error::Collision { min_sep: min_d });
        }
        Ok((st.velocities(), accelerations(&q, masses, eps_weight)))
    };

    for step in 1..=step_count {
        let add =
            |st: &ConfigurationState, dq: &[Vec3; 3], dv: &[Vec3; 3], w: f64| ConfigurationState {
                q1: st.q1 + dq[0] * w,
                q2: st.q2 + dq[1] * w,
                q3: st.q3 + dq[2] * w,
                v1: st.v1 + dv[0] * w,
                v2: st.v2 + dv[1] * w,
                v3: st.v3 + dv[2] * w,
            };
        let (k1q, k1v) = deriv(&state)?;
        let s2 = add(&state, &k1q, &k1v, 0.5 * h);
        let (k2q, k2v) = deriv(&s2)?;
        let s3 = add(&state, &k2q, &k2v, 0.5 * h);
        let (k3q, k3v) = deriv(&s3)?;
        let s4 = add(&state, &k3q, &k3v, h);
        let (k4q, k4v) = deriv(&s4)?;

        let mut dq = [Vec3::default(); 3];
        let mut dv = [Vec3::default(); 3];
        for i in 0..3 {
            dq[i] = k1q[i] + (k2q[i] + k3q[i]) * 2.0 + k4q[i];
            dv[i] = k1v[i] + (k2v[i] + k3v[i]) * 2.0 + k4v[i];
        }
        state = add(&state, &dq, &dv, h / 6.0);
        times.push(step as f64 * h);
        states.push(state);
    }

    Ok(OrbitTimeSeries {
        times,
        states,
        meta: SeriesMeta {
            masses: *masses,
            params: *params,
            step: h,
        },
    })
}

/// Spectral residual of the reduced relative-curve equation
/// `a r'' = -grad_r V_eps(r)`, normalized by the largest reduced force.
///
/// This is the equation the collinear-constrained variational principle
/// controls exactly: the full body-sum law preserves the collinear subspace
/// only for the unperturbed potential (or symmetric masses), so a converged
/// saddle at finite perturbation strength satisfies the projected equation
/// to solver precision while its body-sum residual scales with eps.
pub fn reduced_eom_residual(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    params: &EnergyParams,
    grid: usize,
) -> Result<f64> {
    let sampled = lp.sample(grid)?;
    if sampled.min_radius() < crate::functionals::COLLISION_GUARD {
        return Err(Error::Collision { min_sep: sampled.min_radius() });
    }
    let eps_weight = if params.eps > 0.0 { params.eps / params.h } else { 0.0 };
    let mut worst = 0.0f64;
    let mut force_scale = 0.0f64;
    for (j, &t) in sampled.times.iter().enumerate() {
        let r = sampled.r_values[j];
        let d = r.norm();
        // grad_r V_eps = [s/d^3 - 2 (eps/h) p/d^4] r
        let force = r * (-(geom.s / (d * d * d)) + 2.0 * eps_weight * geom.p / (d * d * d * d));
        force_scale = force_scale.max(force.norm());
        let defect = (lp.second_derivative(t) * geom.a - force).norm();
        worst = worst.max(defect);
    }
    Ok(worst / force_scale)
}

/// One-period closure of the reduced relative-curve dynamics under RK4,
/// relative phase-space norm.
pub fn reduced_closure_error(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    params: &EnergyParams,
    step_count: usize,
) -> Result<f64> {
    if step_count == 0 {
        return Err(Error::ZeroSteps);
    }
    let eps_weight = if params.eps > 0.0 { params.eps / params.h } else { 0.0 };
    let guard = 1e-9 * lp.evaluate(0.0).norm();
    // a r'' = -grad_r V_eps = [-s/d^3 + 2 (eps/h) p/d^4] r
    let accel = |r: Vec3| -> Result<Vec3> {
        let d = r.norm();
        if d < guard {
            return Err(Error::Collision { min_sep: d });
        }
        Ok(r * ((-geom.s / (d * d * d) + 2.0 * eps_weight * geom.p / (d * d * d * d)) / geom.a))
    };

    let (r0, v0) = (lp.evaluate(0.0), lp.derivative(0.0));
    let (mut r, mut v) = (r0, v0);
    let h = lp.period() / step_count as f64;
    for _ in 0..step_count {
        let (k1r, k1v) = (v, accel(r)?);
        let (k2r, k2v) = (v + k1v * (0.5 * h), accel(r + k1r * (0.5 * h))?);
        let (k3r, k3v) = (v + k2v * (0.5 * h), accel(r + k2r * (0.5 * h))?);
        let (k4r, k4v) = (v + k3v * h, accel(r + k3r * h)?);
        r += (k1r + (k2r + k3r) * 2.0 + k4r) * (h / 6.0);
        v += (k1v + (k2v + k3v) * 2.0 + k4v) * (h / 6.0);
    }
    let diff = ((r - r0).norm_sq() + (v - v0).norm_sq()).sqrt();
    let norm = (r0.norm_sq() + v0.norm_sq()).sqrt();
    Ok(diff / norm)
}

/// Relative phase-space distance between the integrated end state and the
/// loop's initial state, after one full period.
pub fn closure_error(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    params: &EnergyParams,
    step_count: usize,
) -> Result<f64> {
    let initial = reconstruct_configuration(geom, lp.evaluate(0.0), lp.derivative(0.0));
    let series = integrate(&initial, masses, params, step_count, lp.period())?;
    let last = series
        .states
        .last()
        .expect("integration returns >= 1 state");
    let a = initial.to_flat();
    let b = last.to_flat();
    let mut diff = 0.0;
    let mut norm = 0.0;
    for i in 0..18 {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        norm += a[i] * a[i];
    }
    Ok((diff / norm).sqrt())
}

/// Largest relative defect of the collinearity constraint
/// `q3 - q1 = lambda0 (q2 - q1)` along a series.
pub fn collinearity_drift(series: &OrbitTimeSeries, lambda0: f64) -> f64 {
    series
        .states
        .iter()
        .map(|st| {
            let defect = (st.q3 - st.q1) - (st.q2 - st.q1) * lambda0;
            defect.norm() / st.max_pairwise_distance()
        })
        .fold(0.0f64, f64::max)
}

/// Outcome of the minimizer-vs-saddle distinction checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctionReport {
    /// f1(candidate) minus the Kepler least action for the same coupling and
    /// period.
    pub action_gap_f1: f64,
    /// (max |r| - min |r|) / mean |r| over the grid.
    pub separation_variation: f64,
    /// True when the candidate is indistinguishable from the least-action
    /// Kepler orbit: vanishing action gap and constant separation.
    pub is_kepler_minimizer_like: bool,
}

/// Classify a loop against the action minimizer: equality in the Kepler
/// lower bound forces constant separation, so a genuine saddle must show a
/// positive action gap or separation variation.
pub fn compare_orbits(
    candidate: &FourierLoop,
    geom: &CollinearGeometry,
    grid: usize,
) -> Result<DistinctionReport> {
    let f1 = action_f1(candidate, geom, grid)?.value;
    let bound = kepler_lower_bound(geom.b / geom.a, candidate.period());
    let sampled = candidate.sample(grid)?;
    let separation_variation =
        (sampled.max_radius() - sampled.min_radius()) / sampled.mean_radius();
    let gap = f1 - bound;
    Ok(DistinctionReport {
        action_gap_f1: gap,
        separation_variation,
        is_kepler_minimizer_like: gap <= 1e-6 * bound && separation_variation <= 1e-6,
    })
}
