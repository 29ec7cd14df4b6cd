//! Masses, the collinear ratio, derived scalar constants, and the
//! central-configuration residual.
//!
//! Three bodies on a moving line with spacing ratio `lambda0` form a central
//! configuration exactly when `lambda0` is the root in (0, 1) of the Euler
//! condition implemented by [`euler_condition_residual`]. Once the ratio is
//! known, the whole configuration is a linear image of the relative curve
//! `r = q2 - q1`: body `i` sits at `c_i * r` with the reconstruction
//! coefficients stored in [`CollinearGeometry`].

use crate::error::{Error, Result};
use crate::vec3::Vec3;
use serde::{Deserialize, Serialize};

/// Relative distance below which two bodies count as collided.
pub const COLLISION_RELATIVE_GUARD: f64 = 1e-12;

/// Three positive point masses and their total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMasses", into = "RawMasses")]
pub struct MassTriple {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    /// Sum of the three masses, fixed at construction.
    pub total: f64,
}

#[derive(Serialize, Deserialize)]
struct RawMasses {
    m1: f64,
    m2: f64,
    m3: f64,
}

impl TryFrom<RawMasses> for MassTriple {
    type Error = Error;
    fn try_from(r: RawMasses) -> Result<Self> {
        MassTriple::new(r.m1, r.m2, r.m3)
    }
}

impl From<MassTriple> for RawMasses {
    fn from(m: MassTriple) -> Self {
        RawMasses {
            m1: m.m1,
            m2: m.m2,
            m3: m.m3,
        }
    }
}

impl MassTriple {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        if !(m1 > 0.0 && m2 > 0.0 && m3 > 0.0)
            || !(m1.is_finite() && m2.is_finite() && m3.is_finite())
        {
            return Err(Error::NonPositiveMass { m1, m2, m3 });
        }
        Ok(Self {
            m1,
            m2,
            m3,
            total: m1 + m2 + m3,
        })
    }

    pub fn equal() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit masses are positive")
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }
}

/// The collinear ratio and every scalar constant derived from it.
///
/// With `r = q2 - q1` the bodies are `q_i = c_i * r`, the pairwise distances
/// are `|r|`, `lambda0 * |r|` and `(1 - lambda0) * |r|`, and the reduced
/// action carries the kinetic weight `a` and potential weight `b = s`.
/// `p` is the matching weight of the inverse-square sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearGeometry {
    pub lambda0: f64,
    /// s = m1 m2 + m1 m3 / lambda0 + m2 m3 / (1 - lambda0)
    pub s: f64,
    /// a = [m1 m2 + m1 m3 lambda0^2 + m2 m3 (1 - lambda0)^2] / M
    pub a: f64,
    /// b = s; kept separate so the potential weight reads as `b / a`.
    pub b: f64,
    /// p = m1 m2 + m1 m3 / lambda0^2 + m2 m3 / (1 - lambda0)^2
    pub p: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CollinearGeometry {
    /// Derive every constant from masses and a ratio already solving the
    /// Euler condition.
    pub fn derive(masses: &MassTriple, lambda0: f64) -> Result<Self> {
        check_lambda(lambda0)?;
        let (m1, m2, m3) = (masses.m1, masses.m2, masses.m3);
        let total = masses.total;
        let s = m1 * m2 + m1 * m3 / lambda0 + m2 * m3 / (1.0 - lambda0);
        let a =
            (m1 * m2 + m1 * m3 * lambda0 * lambda0 + m2 * m3 * (1.0 - lambda0) * (1.0 - lambda0))
                / total;
        let p =
            m1 * m2 + m1 * m3 / (lambda0 * lambda0) + m2 * m3 / ((1.0 - lambda0) * (1.0 - lambda0));
        let c1 = -(m2 + m3 * lambda0) / total;
        let c2 = (m1 + m3 * (1.0 - lambda0)) / total;
        let c3 = c1 + lambda0;
        Ok(Self {
            lambda0,
            s,
            a,
            b: s,
            p,
            c1,
            c2,
            c3,
        })
    }

    /// Solve for the ratio and derive the constants in one step.
    pub fn for_masses(masses: &MassTriple) -> Result<Self> {
        let lambda0 = solve_lambda0(masses)?;
        Self::derive(masses, lambda0)
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// min(lambda0, 1 - lambda0, 1): scales |r| into the smallest pairwise
    /// distance.
    pub fn separation_factor(&self) -> f64 {
        self.lambda0.min(1.0 - self.lambda0).min(1.0)
    }
}

/// Positions and velocities of the three bodies at one instant, center of
/// mass at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigurationState {
    pub q1: Vec3,
    pub q2: Vec3,
    pub q3: Vec3,
    pub v1: Vec3,
    pub v2: Vec3,
    pub v3: Vec3,
}

impl ConfigurationState {
    pub fn positions(&self) -> [Vec3; 3] {
        [self.q1, self.q2, self.q3]
    }

    pub fn velocities(&self) -> [Vec3; 3] {
        [self.v1, self.v2, self.v3]
    }

    pub fn kinetic_energy(&self, masses: &MassTriple) -> f64 {
        0.5 * (masses.m1 * self.v1.norm_sq()
            + masses.m2 * self.v2.norm_sq()
            + masses.m3 * self.v3.norm_sq())
    }

    pub fn max_pairwise_distance(&self) -> f64 {
        let [q1, q2, q3] = self.positions();
        (q2 - q1).norm().max((q3 - q1).norm()).max((q3 - q2).norm())
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let [q1, q2, q3] = self.positions();
        (q2 - q1).norm().min((q3 - q1).norm()).min((q3 - q2).norm())
    }

    /// Flattens to [q1 q2 q3 v1 v2 v3] component order.
    pub fn to_flat(&self) -> [f64; 18] {
        let mut out = [0.0; 18];
        for (i, v) in self
            .positions()
            .iter()
            .chain(self.velocities().iter())
            .enumerate()
        {
            out[3 * i] = v.x;
            out[3 * i + 1] = v.y;
            out[3 * i + 2] = v.z;
        }
        out
    }

    pub fn from_flat(flat: &[f64; 18]) -> Self {
        let v = |i: usize| Vec3::new(flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]);
        Self {
            q1: v(0),
            q2: v(1),
            q3: v(2),
            v1: v(3),
            v2: v(4),
            v3: v(5),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    Ok(())
}

/// Residual of the Euler collinear condition at ratio `lambda`.
///
/// F(lambda) = (m3 lambda^-2 + m2) / (m3 lambda + m2)
///           - (m3 (1-lambda)^-2 + m1) / (m3 (1-lambda) + m1)
///
/// F diverges to +inf at 0 and -inf at 1, so the unique root lies strictly
/// inside the interval.
pub fn euler_condition_residual(lambda: f64, masses: &MassTriple) -> Result<f64> {
    check_lambda(lambda)?;
    let (m1, m2, m3) = (masses.m1, masses.m2, masses.m3);
    let left = (m3 / (lambda * lambda) + m2) / (m3 * lambda + m2);
    let mu = 1.0 - lambda;
    let right = (m3 / (mu * mu) + m1) / (m3 * mu + m1);
    Ok(left - right)
}

/// Solve the Euler condition for the ratio in (0, 1).
///
/// Bracketing bisection on (1e-9, 1 - 1e-9) followed by a secant polish;
/// the returned ratio satisfies |F| <= 1e-13 for well-scaled masses.
pub fn solve_lambda0(masses: &MassTriple) -> Result<f64> {
    let f = |x: f64| euler_condition_residual(x, masses).expect("bracket stays in (0,1)");
    let delta = 1e-9;
    let (mut lo, mut hi) = (delta, 1.0 - delta);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        // Should not happen for positive masses; scan before giving up.
        let n = 1024;
        let mut found = false;
        for i in 1..=n {
            let x = delta + (1.0 - 2.0 * delta) * i as f64 / n as f64;
            let fx = f(x);
            if fx.signum() != flo.signum() {
                hi = x;
                fhi = fx;
                lo = x - (1.0 - 2.0 * delta) / n as f64;
                flo = f(lo);
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::BracketingFailed);
        }
    }

    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval below f64 resolution
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }

    // Secant polish from the final bracket; keep the best iterate seen.
    let (mut x0, mut f0) = (lo, flo);
    let (mut x1, mut f1) = (hi, fhi);
    let mut best = if f0.abs() < f1.abs() {
        (x0, f0)
    } else {
        (x1, f1)
    };
    for _ in 0..8 {
        let denom = f1 - f0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        if !(x2 > 0.0 && x2 < 1.0) || !x2.is_finite() {
            break;
        }
        let f2 = f(x2);
        if f2.abs() < best.1.abs() {
            best = (x2, f2);
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if f2 == 0.0 {
            break;
        }
    }
    Ok(best.0)
}

/// Map a relative curve sample (r, rdot) to the full three-body state.
pub fn reconstruct_configuration(
    geom: &CollinearGeometry,
    r: Vec3,
    rdot: Vec3,
) -> ConfigurationState {
    ConfigurationState {
        q1: r * geom.c1,
        q2: r * geom.c2,
        q3: r * geom.c3,
        v1: rdot * geom.c1,
        v2: rdot * geom.c2,
        v3: rdot * geom.c3,
    }
}

/// Largest relative defect of the central-configuration identity.
///
/// Computes the gravitational force on each body, the ratio
/// `lambda = V / I` (negative, since the potential is negative), and returns
/// `max_i |force_i - lambda m_i (q_i - c0)|` normalized by the largest force
/// magnitude. Zero exactly on central configurations, scale-free by
/// construction.
pub fn central_config_residual(state: &ConfigurationState, masses: &MassTriple) -> Result<f64> {
    let q = state.positions();
    let m = masses.as_array();
    let scale = state.max_pairwise_distance();
    let min_d = state.min_pairwise_distance();
    if min_d < COLLISION_RELATIVE_GUARD * scale {
        return Err(Error::Collision { min_sep: min_d });
    }

    let mut c0 = Vec3::default();
    for i in 0..3 {
        c0 += q[i] * m[i];
    }
    c0 = c0 * (1.0 / masses.total);

    let mut potential = 0.0;
    let mut inertia = 0.0;
    for i in 0..3 {
        inertia += m[i] * (q[i] - c0).norm_sq();
        for j in (i + 1)..3 {
            potential -= m[i] * m[j] / (q[j] - q[i]).norm();
        }
    }
    let lambda = potential / inertia;

    let mut worst = 0.0f64;
    let mut force_scale = 0.0f64;
    for i in 0..3 {
        let mut force = Vec3::default();
        for j in 0..3 {
            if i == j {
                continue;
            }
            let d = q[j] - q[i];
            force += d * (m[i] * m[j] / d.norm().powi(3));
        }
        force_scale = force_scale.max(force.norm());
        let defect = force - (q[i] - c0) * (lambda * m[i]);
        worst = worst.max(defect.norm());
    }
    Ok(worst / force_scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA0_123: f64 = 0.471_425_660_190_382_73;

    fn masses_123() -> MassTriple {
        MassTriple::new(1.0, 2.0, 3.0).unwrap()
    }

    #[test]
    fn euler_condition_vanishes_at_half_for_symmetric_masses() {
        let eq = MassTriple::equal();
        assert!(euler_condition_residual(0.5, &eq).unwrap().abs() < 1e-15);
        let heavy_third = MassTriple::new(1.0, 1.0, 5.0).unwrap();
        assert!(euler_condition_residual(0.5, &heavy_third).unwrap().abs() < 1e-15);
    }

    #[test]
    fn euler_condition_changes_sign_across_the_interval() {
        let m = masses_123();
        let near_zero = euler_condition_residual(0.01, &m).unwrap();
        let near_one = euler_condition_residual(0.99, &m).unwrap();
        assert!(near_zero.signum() != near_one.signum());
    }

    #[test]
    fn euler_condition_rejects_bad_inputs() {
        let m = MassTriple::equal();
        assert!(euler_condition_residual(0.0, &m).is_err());
        assert!(euler_condition_residual(1.0, &m).is_err());
        assert!(euler_condition_residual(-0.3, &m).is_err());
        assert!(MassTriple::new(1.0, -1.0, 1.0).is_err());
        assert!(MassTriple::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn ratio_is_half_when_first_two_masses_match() {
        assert!((solve_lambda0(&MassTriple::equal()).unwrap() - 0.5).abs() < 1e-12);
        let m = MassTriple::new(2.0, 2.0, 7.0).unwrap();
        assert!((solve_lambda0(&m).unwrap() - 0.5).abs() < 1e-12);
    }

    // Fixture pinned from a 10^6-point sign-change scan plus bisection,
    // independent of the production bracketing (see tests/oracles.rs).
    #[test]
    fn ratio_for_1_2_3_matches_scan_fixture() {
        let l = solve_lambda0(&masses_123()).unwrap();
        assert!((l - LAMBDA0_123).abs() < 1e-12, "got {l}");
        assert!(euler_condition_residual(l, &masses_123()).unwrap().abs() <= 1e-13);
    }

    #[test]
    fn derived_constants_equal_masses() {
        let g = CollinearGeometry::derive(&MassTriple::equal(), 0.5).unwrap();
        assert!((g.s - 5.0).abs() < 1e-14);
        assert!((g.a - 0.5).abs() < 1e-14);
        assert!((g.b - 5.0).abs() < 1e-14);
        assert!((g.p - 9.0).abs() < 1e-14);
        assert!((g.c1 + 0.5).abs() < 1e-14);
        assert!((g.c2 - 0.5).abs() < 1e-14);
        assert!(g.c3.abs() < 1e-14);
    }

    #[test]
    fn derived_constants_1_2_3() {
        let m = masses_123();
        let g = CollinearGeometry::derive(&m, LAMBDA0_123).unwrap();
        let l = LAMBDA0_123;
        assert!((g.s - (2.0 + 3.0 / l + 6.0 / (1.0 - l))).abs() < 1e-12);
        assert!((g.a - (2.0 + 3.0 * l * l + 6.0 * (1.0 - l) * (1.0 - l)) / 6.0).abs() < 1e-12);
        // Reconstruction coefficient identities.
        assert!((g.c2 - g.c1 - 1.0).abs() < 1e-14);
        assert!((g.c3 - g.c1 - l).abs() < 1e-14);
        assert!((m.m1 * g.c1 + m.m2 * g.c2 + m.m3 * g.c3).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_places_equal_masses_symmetrically() {
        let g = CollinearGeometry::derive(&MassTriple::equal(), 0.5).unwrap();
        let st = reconstruct_configuration(&g, Vec3::new(1.0, 0.0, 0.0), Vec3::default());
        assert!((st.q1 - Vec3::new(-0.5, 0.0, 0.0)).norm() < 1e-15);
        assert!((st.q2 - Vec3::new(0.5, 0.0, 0.0)).norm() < 1e-15);
        assert!(st.q3.norm() < 1e-15);
    }

    #[test]
    fn reconstruction_of_zero_curve_is_the_origin() {
        let g = CollinearGeometry::derive(&masses_123(), LAMBDA0_123).unwrap();
        let st = reconstruct_configuration(&g, Vec3::default(), Vec3::default());
        assert_eq!(st.q1, Vec3::default());
        assert_eq!(st.q2, Vec3::default());
        assert_eq!(st.q3, Vec3::default());
    }

    #[test]
    fn reconstruction_1_2_3_along_y() {
        let g = CollinearGeometry::derive(&masses_123(), LAMBDA0_123).unwrap();
        let st = reconstruct_configuration(&g, Vec3::new(0.0, 1.0, 0.0), Vec3::default());
        assert!((st.q1.y - g.c1).abs() < 1e-15);
        assert!((st.q2.y - g.c2).abs() < 1e-15);
        assert!((st.q3.y - g.c3).abs() < 1e-15);
        assert!(st.q1.x.abs() + st.q1.z.abs() < 1e-15);
    }

    #[test]
    fn collinear_example_is_central_with_lambda_minus_ten() {
        // Hand check: V = -5, I = 0.5, lambda = -10, force on body 1 is
        // (5, 0, 0) and matches -10 * m1 * q1.
        let m = MassTriple::equal();
        let st = ConfigurationState {
            q1: Vec3::new(-0.5, 0.0, 0.0),
            q2: Vec3::new(0.5, 0.0, 0.0),
            q3: Vec3::default(),
            v1: Vec3::default(),
            v2: Vec3::default(),
            v3: Vec3::default(),
        };
        assert!(central_config_residual(&st, &m).unwrap() < 1e-14);
    }

    #[test]
    fn equilateral_triangle_is_central() {
        let m = MassTriple::equal();
        let h = 3.0f64.sqrt() / 2.0;
        let st = ConfigurationState {
            q1: Vec3::new(-0.5, -h / 3.0, 0.0),
            q2: Vec3::new(0.5, -h / 3.0, 0.0),
            q3: Vec3::new(0.0, 2.0 * h / 3.0, 0.0),
            v1: Vec3::default(),
            v2: Vec3::default(),
            v3: Vec3::default(),
        };
        assert!(central_config_residual(&st, &m).unwrap() < 1e-14);
    }

    #[test]
    fn generic_configuration_is_far_from_central() {
        let m = masses_123();
        let st = ConfigurationState {
            q1: Vec3::new(0.3, -1.1, 0.4),
            q2: Vec3::new(-0.7, 0.2, 1.9),
            q3: Vec3::new(1.4, 0.8, -0.6),
            v1: Vec3::default(),
            v2: Vec3::default(),
            v3: Vec3::default(),
        };
        assert!(central_config_residual(&st, &m).unwrap() > 0.1);
    }

    #[test]
    fn coincident_bodies_report_collision() {
        let m = MassTriple::equal();
        let st = ConfigurationState {
            q1: Vec3::new(1.0, 0.0, 0.0),
            q2: Vec3::new(1.0, 0.0, 0.0),
            q3: Vec3::new(-2.0, 0.0, 0.0),
            v1: Vec3::default(),
            v2: Vec3::default(),
            v3: Vec3::default(),
        };
        assert!(matches!(
            central_config_residual(&st, &m),
            Err(Error::Collision { .. })
        ));
    }
}
