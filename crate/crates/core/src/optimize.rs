//! Critical-point searches over Fourier coefficients: action minimization,
//! mountain-pass saddle search over a discretized path, continuation in the
//! perturbation strength, and the rescaling that turns a critical point of
//! the fixed-energy functional into a solution with the prescribed energy.
//!
//! Both searches use one line-search policy: backtracking with the Armijo
//! sufficient-decrease test, shrinking any step that would push the relative
//! curve inside the collision guard.
//!
//! The saddle search runs in two phases. First the classical path scheme:
//! locate the node of largest functional value, take one guarded descent
//! step on it, and periodically redistribute the free nodes to equal
//! coefficient-space arclength. That drives the running path maximum down to
//! the min-max level but parks the nodes a grid spacing away from the actual
//! saddle, where the gradient stays order node-spacing. A second phase
//! therefore polishes the worst node by reversing the gradient component
//! along the local path tangent (transverse descent, tangential ascent),
//! which converges to the saddle itself and lets the gradient-norm
//! termination fire.

use crate::config::{CollinearGeometry, MassTriple};
use crate::error::{Error, Result};
use crate::functionals::{action_f1, phi_eps, EnergyParams, GradedValue};
use crate::loops::FourierLoop;
use crate::record::{OrbitRecord, SolveSummary, SolverKind};
use crate::vec3::Vec3;

const ARMIJO_C: f64 = 1e-4;
const BACKTRACK_SHRINK: f64 = 0.5;
const MAX_BACKTRACKS: usize = 60;

/// Gradient norm below which a loop counts as a critical point for
/// rescaling purposes.
pub const CRITICAL_GRADIENT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    Converged,
    MaxIterations,
    CollisionGuard,
}

/// What a search did and where it stopped.
#[derive(Debug, Clone)]
pub struct SolverReport {
    pub iterations: usize,
    pub final_value: f64,
    pub final_gradient_norm: f64,
    /// Objective value per iteration: the current value for a plain descent,
    /// the path maximum for the saddle search.
    pub path_max_history: Vec<f64>,
    pub termination: TerminationReason,
}

#[derive(Debug, Clone, Copy)]
pub struct MinimizeOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub grid: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 100_000,
            grid: crate::loops::DEFAULT_GRID,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MountainPassOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub path_nodes: usize,
    pub grid: usize,
    /// Redistribute free nodes every this many relaxation iterations.
    pub redistribute_every: usize,
    /// Relaxation iterations before the saddle polish takes over.
    pub relax_iters: usize,
}

impl Default for MountainPassOptions {
    fn default() -> Self {
        Self {
            tol: 1e-5,
            max_iter: 100_000,
            path_nodes: 33,
            grid: crate::loops::DEFAULT_GRID,
            redistribute_every: 10,
            relax_iters: 300,
        }
    }
}

fn flat_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Outcome of one backtracking line search.
enum StepOutcome {
    Accepted(FourierLoop, GradedValue, f64),
    /// No acceptable step; true when the collision guard blocked at least
    /// one trial.
    Exhausted(bool),
}

/// One backtracking step along `direction` from `flat`. The `accept`
/// predicate decides whether a trial iterate may be taken (sufficient value
/// decrease for plain descent, gradient-norm decrease for the polish
/// phases); collision errors shrink the step like a rejection.
fn backtracking_step(
    flat: &[f64],
    period: f64,
    direction: &[f64],
    initial_step: f64,
    objective: &dyn Fn(&FourierLoop) -> Result<GradedValue>,
    accept: &dyn Fn(f64, &GradedValue) -> bool,
) -> Result<StepOutcome> {
    let mut t = initial_step;
    let mut saw_collision = false;
    for _ in 0..MAX_BACKTRACKS {
        let candidate: Vec<f64> = flat.iter().zip(direction).map(|(x, d)| x + t * d).collect();
        let lp = FourierLoop::from_flat(period, &candidate).expect("length preserved");
        match objective(&lp) {
            Ok(graded) => {
                if accept(t, &graded) {
                    return Ok(StepOutcome::Accepted(lp, graded, t));
                }
            }
            Err(Error::Collision { .. }) => saw_collision = true,
            Err(e) => return Err(e),
        }
        t *= BACKTRACK_SHRINK;
    }
    Ok(StepOutcome::Exhausted(saw_collision))
}

/// Armijo descent step: accept on sufficient decrease of the value.
fn armijo_step(
    flat: &[f64],
    period: f64,
    value: f64,
    gradient: &[f64],
    direction: &[f64],
    initial_step: f64,
    objective: &dyn Fn(&FourierLoop) -> Result<GradedValue>,
) -> Result<StepOutcome> {
    let slope: f64 = gradient.iter().zip(direction).map(|(g, d)| g * d).sum();
    backtracking_step(
        flat,
        period,
        direction,
        initial_step,
        objective,
        &|t, graded| graded.value <= value + ARMIJO_C * t * slope,
    )
}

/// Steepest descent with backtracking line search on the reduced two-body
/// action. Terminates when the coefficient-gradient norm drops to
/// `opts.tol`; steps that would cross the collision guard are shrunk, and
/// the search reports `CollisionGuard` when no feasible step remains.
///
/// Close to the minimum the measured value decrease drowns in f64 rounding
/// of the action long before the gradient reaches typical tolerances, so
/// when the Armijo search exhausts itself the iteration falls back to
/// accepting steps that shrink the gradient norm instead.
pub fn minimize_f1(
    initial: &FourierLoop,
    geom: &CollinearGeometry,
    opts: &MinimizeOptions,
) -> Result<(FourierLoop, SolverReport)> {
    let objective = |lp: &FourierLoop| action_f1(lp, geom, opts.grid);
    let mut current = initial.clone();
    let mut graded = objective(&current)?;
    let mut history = vec![graded.value];
    let mut trial_step = 1.0;

    let report = |iterations, graded: &GradedValue, history: Vec<f64>, termination| SolverReport {
        iterations,
        final_value: graded.value,
        final_gradient_norm: graded.gradient_norm(),
        path_max_history: history,
        termination,
    };

    // Value-based descent until progress sinks into f64 rounding of the
    // action, then gradient-norm polish.
    let mut polishing = false;
    let mut stagnant = 0usize;
    let mut stalls = 0usize;

    for iter in 0..opts.max_iter {
        let gnorm = graded.gradient_norm();
        if gnorm <= opts.tol {
            let r = report(iter, &graded, history, TerminationReason::Converged);
            return Ok((current, r));
        }
        let direction: Vec<f64> = graded.gradient.iter().map(|g| -g).collect();
        let flat = current.to_flat();
        let outcome = if polishing {
            backtracking_step(
                &flat,
                current.period(),
                &direction,
                trial_step,
                &objective,
                &|_, g| g.gradient_norm() < gnorm,
            )?
        } else {
            armijo_step(
                &flat,
                current.period(),
                graded.value,
                &graded.gradient,
                &direction,
                trial_step,
                &objective,
            )?
        };
        match outcome {
            StepOutcome::Accepted(lp, g, step) => {
                if !polishing {
                    let decrease = graded.value - g.value;
                    if decrease <= 1e-13 * graded.value.abs() {
                        stagnant += 1;
                        if stagnant >= 10 {
                            polishing = true;
                        }
                    } else {
                        stagnant = 0;
                    }
                }
                current = lp;
                graded = g;
                history.push(graded.value);
                trial_step = (step * 2.0).min(1e3);
                stalls = 0;
            }
            StepOutcome::Exhausted(saw_collision) => {
                if !polishing {
                    polishing = true;
                    continue;
                }
                stalls += 1;
                if stalls >= 50 {
                    let termination = if saw_collision {
                        TerminationReason::CollisionGuard
                    } else {
                        TerminationReason::MaxIterations
                    };
                    let r = report(iter, &graded, history, termination);
                    return Ok((current, r));
                }
            }
        }
    }

    let r = report(
        opts.max_iter,
        &graded,
        history,
        TerminationReason::MaxIterations,
    );
    Ok((current, r))
}

/// The three anchor loops of the mountain-pass path.
#[derive(Debug, Clone)]
pub struct MpEndpoints {
    /// Low starting loop, x_theta times the unit circle.
    pub theta: FourierLoop,
    /// Middle anchor, the unit circle itself.
    pub e1: FourierLoop,
    /// Far anchor, mu times the unit circle, with equal functional value to
    /// the middle anchor.
    pub e: FourierLoop,
}

/// Build the canonical endpoint triple on the circle family.
///
/// With u the planar unit relative circle, the far anchor is mu * u with
/// mu = (-s - h)/h > 1, which makes the functional values of u and mu * u
/// match exactly; the start is x_theta * u with x_theta = (h + s)/(2 s),
/// strictly below both on the rising branch.
pub fn build_mp_endpoints(
    geom: &CollinearGeometry,
    params: &EnergyParams,
    period: f64,
    k_count: usize,
    grid: usize,
) -> Result<MpEndpoints> {
    params.check_energy_window(geom)?;
    if params.eps <= 0.0 {
        return Err(Error::PerturbationRequired);
    }
    let mu = (-geom.s - params.h) / params.h;
    let x_theta = (params.h + geom.s) / (2.0 * geom.s);
    debug_assert!(mu > 1.0);
    debug_assert!(x_theta > 0.25 && x_theta < 0.5);

    let e1 = FourierLoop::circle_xy(period, 1.0, k_count);
    let e = e1.scaled(mu);
    let theta = e1.scaled(x_theta);

    let v_theta = phi_eps(&theta, geom, params, grid)?.value;
    let v_e1 = phi_eps(&e1, geom, params, grid)?.value;
    let v_e = phi_eps(&e, geom, params, grid)?.value;
    let scale = v_e1.abs().max(v_e.abs());
    assert!(
        (v_e1 - v_e).abs() <= 1e-10 * scale,
        "endpoint values split: {v_e1} vs {v_e}"
    );
    assert!(
        v_theta < v_e1,
        "start value {v_theta} not below anchors {v_e1}"
    );

    Ok(MpEndpoints { theta, e1, e })
}

/// Discretized path through the three anchors.
#[derive(Debug, Clone)]
pub struct PathOfLoops {
    pub nodes: Vec<FourierLoop>,
    /// Indices of (start, middle, end); never moved by the search.
    pub anchors: [usize; 3],
}

impl PathOfLoops {
    /// Linear interpolation in coefficient space through the anchors, with
    /// the middle anchor at index floor(P/2).
    pub fn from_endpoints(endpoints: &MpEndpoints, node_count: usize) -> Result<Self> {
        if node_count < 5 {
            return Err(Error::PathTooShort {
                min: 5,
                got: node_count,
            });
        }
        let period = endpoints.e1.period();
        let fa = endpoints.theta.to_flat();
        let fb = endpoints.e1.to_flat();
        let fc = endpoints.e.to_flat();
        if fa.len() != fb.len() || fb.len() != fc.len() {
            return Err(Error::BadCoefficientLength(fa.len()));
        }
        if flat_distance(&fa, &fb) == 0.0
            || flat_distance(&fb, &fc) == 0.0
            || flat_distance(&fa, &fc) == 0.0
        {
            return Err(Error::DegenerateAnchors);
        }
        let mid = node_count / 2;
        let last = node_count - 1;
        let mut nodes = Vec::with_capacity(node_count);
        for i in 0..node_count {
            let flat: Vec<f64> = if i <= mid {
                let alpha = i as f64 / mid as f64;
                fa.iter()
                    .zip(&fb)
                    .map(|(a, b)| a + alpha * (b - a))
                    .collect()
            } else {
                let alpha = (i - mid) as f64 / (last - mid) as f64;
                fb.iter()
                    .zip(&fc)
                    .map(|(b, c)| b + alpha * (c - b))
                    .collect()
            };
            nodes.push(FourierLoop::from_flat(period, &flat)?);
        }
        Ok(Self {
            nodes,
            anchors: [0, mid, last],
        })
    }

    fn is_anchor(&self, i: usize) -> bool {
        self.anchors.contains(&i)
    }

    /// Respace the free nodes of each anchor-to-anchor segment to equal
    /// arclength along the current polyline.
    fn redistribute(&mut self) {
        let period = self.nodes[0].period();
        for seg in [
            (self.anchors[0], self.anchors[1]),
            (self.anchors[1], self.anchors[2]),
        ] {
            let (lo, hi) = seg;
            let flats: Vec<Vec<f64>> = self.nodes[lo..=hi].iter().map(|n| n.to_flat()).collect();
            let mut cumulative = vec![0.0];
            for w in flats.windows(2) {
                let step = flat_distance(&w[0], &w[1]);
                cumulative.push(cumulative.last().unwrap() + step);
            }
            let total = *cumulative.last().unwrap();
            if total == 0.0 {
                continue;
            }
            let count = hi - lo;
            for i in 1..count {
                let target = total * i as f64 / count as f64;
                // Locate the polyline segment containing the target length.
                let mut k = 0;
                while k + 1 < cumulative.len() - 1 && cumulative[k + 1] < target {
                    k += 1;
                }
                let span = cumulative[k + 1] - cumulative[k];
                let alpha = if span == 0.0 {
                    0.0
                } else {
                    (target - cumulative[k]) / span
                };
                let flat: Vec<f64> = flats[k]
                    .iter()
                    .zip(&flats[k + 1])
                    .map(|(a, b)| a + alpha * (b - a))
                    .collect();
                self.nodes[lo + i] =
                    FourierLoop::from_flat(period, &flat).expect("length preserved");
            }
        }
    }
}

/// Mountain-pass saddle search over a discretized path through the anchors.
///
/// Relaxation lowers the path maximum toward the min-max level; the polish
/// phase then converges the worst node onto the saddle until its gradient
/// norm reaches `opts.tol`. Ties in the node maximum break toward the lowest
/// index, so runs are deterministic.
pub fn mountain_pass(
    endpoints: &MpEndpoints,
    geom: &CollinearGeometry,
    params: &EnergyParams,
    opts: &MountainPassOptions,
) -> Result<(FourierLoop, SolverReport)> {
    let path = PathOfLoops::from_endpoints(endpoints, opts.path_nodes)?;
    mountain_pass_on_path(path, geom, params, opts)
}

/// Run the saddle search on a caller-prepared path (continuation warm
/// starts replace a node of the default path with a previous saddle).
pub fn mountain_pass_on_path(
    mut path: PathOfLoops,
    geom: &CollinearGeometry,
    params: &EnergyParams,
    opts: &MountainPassOptions,
) -> Result<(FourierLoop, SolverReport)> {
    params.check_energy_window(geom)?;
    if path.nodes.len() < 5 {
        return Err(Error::PathTooShort {
            min: 5,
            got: path.nodes.len(),
        });
    }
    let objective = |lp: &FourierLoop| phi_eps(lp, geom, params, opts.grid);

    let mut values: Vec<f64> = Vec::with_capacity(path.nodes.len());
    for node in &path.nodes {
        values.push(objective(node)?.value);
    }

    let mut history = Vec::new();
    let mut trial_step = 1.0;
    let mut polish_step = 1.0;
    let mut polish_stalls = 0usize;

    let max_free_node = |values: &[f64], path: &PathOfLoops| -> usize {
        let mut best = usize::MAX;
        let mut best_value = f64::NEG_INFINITY;
        for (i, &v) in values.iter().enumerate() {
            if path.is_anchor(i) {
                continue;
            }
            if v > best_value {
                best_value = v;
                best = i;
            }
        }
        best
    };

    let finish = |i: usize,
                  iterations: usize,
                  gnorm: f64,
                  values: &[f64],
                  history: Vec<f64>,
                  path: &PathOfLoops,
                  termination: TerminationReason| {
        (
            path.nodes[i].clone(),
            SolverReport {
                iterations,
                final_value: values[i],
                final_gradient_norm: gnorm,
                path_max_history: history,
                termination,
            },
        )
    };

    for iter in 1..=opts.max_iter {
        let i = max_free_node(&values, &path);
        let graded = objective(&path.nodes[i])?;
        let gnorm = graded.gradient_norm();
        history.push(values.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        if gnorm <= opts.tol {
            return Ok(finish(
                i,
                iter - 1,
                gnorm,
                &values,
                history,
                &path,
                TerminationReason::Converged,
            ));
        }

        let flat = path.nodes[i].to_flat();
        // The functional is unbounded below along scalings, so a free line
        // search would fling nodes off the path; displacement per step is
        // capped at half the gap to the nearest neighbor, which keeps the
        // polyline a polyline.
        let spacing = {
            let prev = path.nodes[i - 1].to_flat();
            let next = path.nodes[i + 1].to_flat();
            0.5 * flat_distance(&flat, &prev).min(flat_distance(&flat, &next))
        };
        let capped = |step: f64, dir_norm: f64| {
            if spacing > 0.0 && dir_norm > 0.0 {
                step.min(spacing / dir_norm)
            } else {
                step
            }
        };
        if iter <= opts.relax_iters {
            // Relaxation: plain guarded descent on the worst node.
            let direction: Vec<f64> = graded.gradient.iter().map(|g| -g).collect();
            match armijo_step(
                &flat,
                path.nodes[i].period(),
                graded.value,
                &graded.gradient,
                &direction,
                capped(trial_step, gnorm),
                &objective,
            )? {
                StepOutcome::Accepted(lp, g, step) => {
                    path.nodes[i] = lp;
                    values[i] = g.value;
                    trial_step = (step * 2.0).min(1e3);
                }
                StepOutcome::Exhausted(_) => {
                    return Ok(finish(
                        i,
                        iter,
                        gnorm,
                        &values,
                        history,
                        &path,
                        TerminationReason::CollisionGuard,
                    ));
                }
            }
            if iter % opts.redistribute_every == 0 {
                path.redistribute();
                for (j, node) in path.nodes.iter().enumerate() {
                    if !path.is_anchor(j) {
                        values[j] = objective(node)?.value;
                    }
                }
            }
        } else {
            // Polish: reverse the tangential gradient component so the worst
            // node climbs along the path and descends across it; accept
            // steps that shrink the gradient norm.
            let prev = path.nodes[i - 1].to_flat();
            let next = path.nodes[i + 1].to_flat();
            let mut tangent: Vec<f64> = next.iter().zip(&prev).map(|(n, p)| n - p).collect();
            let tnorm = tangent.iter().map(|t| t * t).sum::<f64>().sqrt();
            if tnorm > 0.0 {
                for t in &mut tangent {
                    *t /= tnorm;
                }
            }
            let g_dot_t: f64 = graded
                .gradient
                .iter()
                .zip(&tangent)
                .map(|(g, t)| g * t)
                .sum();
            let direction: Vec<f64> = graded
                .gradient
                .iter()
                .zip(&tangent)
                .map(|(g, t)| -g + 2.0 * g_dot_t * t)
                .collect();

            let dir_norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
            match backtracking_step(
                &flat,
                path.nodes[i].period(),
                &direction,
                capped(polish_step, dir_norm),
                &objective,
                &|_, g2| g2.gradient_norm() < gnorm,
            )? {
                StepOutcome::Accepted(lp, g2, step) => {
                    path.nodes[i] = lp;
                    values[i] = g2.value;
                    polish_step = (step * 2.0).min(1e3);
                    polish_stalls = 0;
                }
                StepOutcome::Exhausted(_) => {
                    polish_stalls += 1;
                    if polish_stalls >= 50 {
                        return Ok(finish(
                            i,
                            iter,
                            gnorm,
                            &values,
                            history,
                            &path,
                            TerminationReason::MaxIterations,
                        ));
                    }
                }
            }
        }
    }

    let i = max_free_node(&values, &path);
    let gnorm = objective(&path.nodes[i])?.gradient_norm();
    Ok(finish(
        i,
        opts.max_iter,
        gnorm,
        &values,
        history,
        &path,
        TerminationReason::MaxIterations,
    ))
}

/// Frequency rescaling of a fixed-energy critical point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rescaled {
    pub omega: f64,
    pub rescaled_period: f64,
}

/// Compute omega^2 = int grad V_eps(q) . q dt / ||q||^2 over the
/// reconstructed bodies and return the period of the time-rescaled orbit
/// q(omega t), which solves the equations of motion at energy h.
pub fn rescale_to_energy(
    lp: &FourierLoop,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    params: &EnergyParams,
    grid: usize,
) -> Result<Rescaled> {
    let norm_sq = geom.a * lp.kinetic_integral();
    if norm_sq == 0.0 {
        return Err(Error::ZeroLoop);
    }
    let graded = phi_eps(lp, geom, params, grid)?;
    let gnorm = graded.gradient_norm();
    if gnorm > CRITICAL_GRADIENT_TOL {
        return Err(Error::NotCritical {
            grad_norm: gnorm,
            tol: CRITICAL_GRADIENT_TOL,
        });
    }

    let sampled = lp.sample(grid)?;
    let eps_weight = if params.eps > 0.0 {
        params.eps / params.h
    } else {
        0.0
    };
    let m = masses.as_array();
    let numerator = sampled.quadrature(sampled.r_values.iter().map(|&r| {
        let st = crate::config::reconstruct_configuration(geom, r, Vec3::default());
        let q = st.positions();
        let mut dot = 0.0;
        for i in 0..3 {
            let mut grad_i = Vec3::default();
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let d = q[i] - q[j];
                let dist = d.norm();
                // grad_i of (-m_i m_j / d + eps_weight m_i m_j / d^2)
                grad_i += d * (m[i] * m[j] / (dist * dist * dist))
                    + d * (-2.0 * eps_weight * m[i] * m[j] / (dist * dist * dist * dist));
            }
            dot += grad_i.dot(q[i]);
        }
        dot
    }));

    let omega_sq = numerator / norm_sq;
    if omega_sq <= 0.0 {
        return Err(Error::NonPositiveOmegaSq { omega_sq });
    }
    let omega = omega_sq.sqrt();
    Ok(Rescaled {
        omega,
        rescaled_period: lp.period() / omega,
    })
}

/// Run the saddle search over a strictly decreasing schedule of
/// perturbation strengths, warm-starting each stage from the saddle of the
/// previous one, and record each stage as a full orbit record. Stages that
/// stop on the iteration cap or the collision guard are recorded with that
/// termination and continuation proceeds from their best node.
pub fn continuation_in_eps(
    schedule: &[f64],
    h: f64,
    geom: &CollinearGeometry,
    masses: &MassTriple,
    period: f64,
    k_count: usize,
    opts: &MountainPassOptions,
) -> Result<Vec<OrbitRecord>> {
    if schedule.is_empty() {
        return Ok(Vec::new());
    }
    if schedule.iter().any(|&e| e <= 0.0) || schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::BadSchedule);
    }

    let mut records = Vec::with_capacity(schedule.len());
    let mut warm: Option<FourierLoop> = None;

    for &eps in schedule {
        let params = EnergyParams::new(h, eps)?;
        let endpoints = build_mp_endpoints(geom, &params, period, k_count, opts.grid)?;
        let mut path = PathOfLoops::from_endpoints(&endpoints, opts.path_nodes)?;
        if let Some(prev) = &warm {
            // Drop the previous saddle onto the initial path's worst node.
            let mut worst = 1;
            let mut worst_value = f64::NEG_INFINITY;
            for (i, node) in path.nodes.iter().enumerate() {
                if path.is_anchor(i) {
                    continue;
                }
                let v = phi_eps(node, geom, &params, opts.grid)?.value;
                if v > worst_value {
                    worst_value = v;
                    worst = i;
                }
            }
            path.nodes[worst] = prev.clone();
        }
        let (saddle, report) = mountain_pass_on_path(path, geom, &params, opts)?;

        let rescaled = rescale_to_energy(&saddle, geom, masses, &params, opts.grid);
        let omega = match (&rescaled, report.termination) {
            (Ok(r), _) => r.omega,
            // A stage that did not converge has no meaningful rescaling;
            // record it unrescaled so the stage stays inspectable.
            (Err(_), _) => 1.0,
        };
        let summary = SolveSummary {
            kind: SolverKind::MountainPass,
            eps,
            h,
            omega,
            iterations: report.iterations,
            gradient_norm: report.final_gradient_norm,
            termination: report.termination,
        };
        let record = OrbitRecord::assemble(&saddle, geom, masses, &summary)?;
        records.push(record);
        warm = Some(saddle);
    }
    Ok(records)
}
