//! Odd-harmonic Fourier loops: the discretized antisymmetric loop space.
//!
//! The relative curve `r(t) = q2(t) - q1(t)` is stored as a truncated Fourier
//! series over odd harmonic indices only,
//!
//! ```text
//! r(t) = sum_k [ cos_k * cos(w_k t) + sin_k * sin(w_k t) ],   w_k = 2 pi k / T,
//! ```
//!
//! with k in {1, 3, ..., 2K-1}. Restricting to odd k makes
//! `r(t + T/2) = -r(t)` hold structurally and forces a zero mean, so loop
//! membership in the antisymmetric class can never be violated by an
//! optimizer step. Even indices and constant terms are rejected at
//! construction.

use crate::config::CollinearGeometry;
use crate::error::{Error, Result};
use crate::vec3::Vec3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Default number of odd harmonics.
pub const DEFAULT_HARMONICS: usize = 16;
/// Default quadrature grid size.
pub const DEFAULT_GRID: usize = 256;

/// One odd harmonic: coefficient vectors of cos(w_k t) and sin(w_k t).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Harmonic {
    pub cos: Vec3,
    pub sin: Vec3,
}

/// Truncated odd-harmonic Fourier representation of the relative curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierLoop {
    period: f64,
    /// harmonics[i] carries index k = 2i + 1.
    harmonics: Vec<Harmonic>,
}

impl FourierLoop {
    /// Zero loop with `k_count` odd harmonics.
    pub fn zero(period: f64, k_count: usize) -> Self {
        assert!(period > 0.0, "period must be positive");
        assert!(k_count > 0, "need at least one harmonic");
        Self {
            period,
            harmonics: vec![Harmonic::default(); k_count],
        }
    }

    /// Planar circle of given radius in the xy-plane at the fundamental
    /// frequency: r(t) = radius * (cos w t, sin w t, 0).
    pub fn circle_xy(period: f64, radius: f64, k_count: usize) -> Self {
        let mut lp = Self::zero(period, k_count);
        lp.harmonics[0].cos = Vec3::new(radius, 0.0, 0.0);
        lp.harmonics[0].sin = Vec3::new(0.0, radius, 0.0);
        lp
    }

    /// Build from explicit (k, cos, sin) entries; k must be odd and strictly
    /// increasing. Missing odd indices below the largest k are zero-filled.
    pub fn from_harmonics(period: f64, entries: &[(usize, Vec3, Vec3)]) -> Result<Self> {
        assert!(period > 0.0, "period must be positive");
        if entries.is_empty() {
            return Err(Error::InvalidHarmonic(0));
        }
        let mut last = 0usize;
        for &(k, _, _) in entries {
            if k % 2 == 0 || k <= last {
                return Err(Error::InvalidHarmonic(k));
            }
            last = k;
        }
        let k_count = last.div_ceil(2);
        let mut lp = Self::zero(period, k_count);
        for &(k, cos, sin) in entries {
            lp.harmonics[(k - 1) / 2] = Harmonic { cos, sin };
        }
        Ok(lp)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Loop with the same coefficients read against a new period.
    pub fn with_period(&self, period: f64) -> Self {
        assert!(period > 0.0, "period must be positive");
        Self {
            period,
            harmonics: self.harmonics.clone(),
        }
    }

    /// Number of stored odd harmonics (K).
    pub fn harmonic_count(&self) -> usize {
        self.harmonics.len()
    }

    /// Largest harmonic index, 2K - 1.
    pub fn max_harmonic_index(&self) -> usize {
        2 * self.harmonics.len() - 1
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    /// Harmonic index for storage slot i.
    pub fn index_of(i: usize) -> usize {
        2 * i + 1
    }

    /// Angular frequency of storage slot i.
    pub fn omega(&self, i: usize) -> f64 {
        2.0 * PI * Self::index_of(i) as f64 / self.period
    }

    /// Smallest grid size with exact quadrature for products of represented
    /// harmonics: 4 (2K - 1).
    pub fn min_grid(&self) -> usize {
        4 * self.max_harmonic_index()
    }

    pub fn evaluate(&self, t: f64) -> Vec3 {
        let mut r = Vec3::default();
        for (i, h) in self.harmonics.iter().enumerate() {
            let phase = self.omega(i) * t;
            r += h.cos * phase.cos() + h.sin * phase.sin();
        }
        r
    }

    /// Exact derivative of the trigonometric polynomial.
    pub fn derivative(&self, t: f64) -> Vec3 {
        let mut v = Vec3::default();
        for (i, h) in self.harmonics.iter().enumerate() {
            let w = self.omega(i);
            let phase = w * t;
            v += (h.sin * phase.cos() - h.cos * phase.sin()) * w;
        }
        v
    }

    pub fn second_derivative(&self, t: f64) -> Vec3 {
        let mut a = Vec3::default();
        for (i, h) in self.harmonics.iter().enumerate() {
            let w = self.omega(i);
            let phase = w * t;
            a += (h.cos * phase.cos() + h.sin * phase.sin()) * (-w * w);
        }
        a
    }

    /// Uniform grid samples with exact spectral derivatives.
    pub fn sample(&self, grid: usize) -> Result<SampledLoop> {
        let required = self.min_grid();
        if grid < required {
            return Err(Error::Undersampled {
                required,
                got: grid,
                harmonics: self.harmonics.len(),
            });
        }
        let dt = self.period / grid as f64;
        let mut times = Vec::with_capacity(grid);
        let mut r_values = Vec::with_capacity(grid);
        let mut r_dot_values = Vec::with_capacity(grid);
        for j in 0..grid {
            let t = j as f64 * dt;
            times.push(t);
            r_values.push(self.evaluate(t));
            r_dot_values.push(self.derivative(t));
        }
        Ok(SampledLoop {
            period: self.period,
            times,
            r_values,
            r_dot_values,
        })
    }

    /// Closed-form integral of |r'|^2 over one period:
    /// (T/2) sum_k w_k^2 (|cos_k|^2 + |sin_k|^2).
    pub fn kinetic_integral(&self) -> f64 {
        let mut sum = 0.0;
        for (i, h) in self.harmonics.iter().enumerate() {
            let w = self.omega(i);
            sum += w * w * (h.cos.norm_sq() + h.sin.norm_sq());
        }
        0.5 * self.period * sum
    }

    /// Weighted loop norm sqrt(a * int |r'|^2 dt): the kinetic norm of the
    /// reconstructed three-body curve.
    pub fn loop_norm(&self, geom: &CollinearGeometry) -> f64 {
        (geom.a * self.kinetic_integral()).sqrt()
    }

    /// Smallest pairwise body distance over the grid.
    pub fn min_separation(&self, geom: &CollinearGeometry, grid: usize) -> Result<f64> {
        let sampled = self.sample(grid)?;
        Ok(geom.separation_factor() * sampled.min_radius())
    }

    /// All coefficients as one flat vector: slot i contributes
    /// [cos.x, cos.y, cos.z, sin.x, sin.y, sin.z] at offset 6i.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(6 * self.harmonics.len());
        for h in &self.harmonics {
            flat.extend_from_slice(&[h.cos.x, h.cos.y, h.cos.z, h.sin.x, h.sin.y, h.sin.z]);
        }
        flat
    }

    pub fn from_flat(period: f64, flat: &[f64]) -> Result<Self> {
        if !flat.len().is_multiple_of(6) || flat.is_empty() {
            return Err(Error::BadCoefficientLength(flat.len()));
        }
        let harmonics = flat
            .chunks_exact(6)
            .map(|c| Harmonic {
                cos: Vec3::new(c[0], c[1], c[2]),
                sin: Vec3::new(c[3], c[4], c[5]),
            })
            .collect();
        Ok(Self { period, harmonics })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let harmonics = self
            .harmonics
            .iter()
            .map(|h| Harmonic {
                cos: h.cos * factor,
                sin: h.sin * factor,
            })
            .collect();
        Self {
            period: self.period,
            harmonics,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.harmonics
            .iter()
            .all(|h| h.cos.norm_sq() == 0.0 && h.sin.norm_sq() == 0.0)
    }

    /// Largest coefficient magnitude, a convenient amplitude scale.
    pub fn coefficient_scale(&self) -> f64 {
        self.to_flat()
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.abs()))
    }

    /// Winding number of a planar loop about the origin; `None` when the
    /// loop is not planar to tolerance or passes too close to the origin.
    ///
    /// Planarity is decided from the sample covariance: the smallest
    /// eigenvalue must not exceed 1e-9 times the largest. The angle of the
    /// projection onto the two dominant principal axes is accumulated around
    /// the grid and divided by 2 pi. A spatial loop carries no canonical
    /// plane orientation, so the count is reported as a magnitude: a simple
    /// circle gives 1 whichever way it is traversed.
    pub fn winding_number(&self, grid: usize) -> Result<Option<i64>> {
        let sampled = self.sample(grid)?;
        let n = sampled.r_values.len() as f64;
        let mut cov = [[0.0f64; 3]; 3];
        for r in &sampled.r_values {
            let v = [r.x, r.y, r.z];
            for (i, vi) in v.iter().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    cov[i][j] += vi * vj / n;
                }
            }
        }
        let (eigenvalues, axes) = symmetric_eigen_3x3(&cov);
        if eigenvalues[0] <= 0.0 || eigenvalues[2] > 1e-9 * eigenvalues[0] {
            return Ok(None);
        }
        let (u, v) = (axes[0], axes[1]);
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for r in sampled
            .r_values
            .iter()
            .chain(std::iter::once(&sampled.r_values[0]))
        {
            let x = r.dot(u);
            let y = r.dot(v);
            if (x * x + y * y).sqrt() < 1e-9 {
                return Ok(None);
            }
            let theta = y.atan2(x);
            if let Some(p) = prev {
                let mut d = theta - p;
                while d > PI {
                    d -= 2.0 * PI;
                }
                while d < -PI {
                    d += 2.0 * PI;
                }
                total += d;
            }
            prev = Some(theta);
        }
        Ok(Some((total.abs() / (2.0 * PI)).round() as i64))
    }
}

/// Uniform samples of a loop and its derivative over one period.
#[derive(Debug, Clone)]
pub struct SampledLoop {
    pub period: f64,
    pub times: Vec<f64>,
    pub r_values: Vec<Vec3>,
    pub r_dot_values: Vec<Vec3>,
}

impl SampledLoop {
    pub fn grid_size(&self) -> usize {
        self.times.len()
    }

    /// Trapezoidal quadrature over the periodic grid; for a periodic
    /// integrand this is the plain mean times the period.
    pub fn quadrature(&self, values: impl Iterator<Item = f64>) -> f64 {
        let sum: f64 = values.sum();
        sum * self.period / self.grid_size() as f64
    }

    pub fn min_radius(&self) -> f64 {
        self.r_values
            .iter()
            .fold(f64::INFINITY, |acc, r| acc.min(r.norm()))
    }

    pub fn max_radius(&self) -> f64 {
        self.r_values
            .iter()
            .fold(0.0f64, |acc, r| acc.max(r.norm()))
    }

    pub fn mean_radius(&self) -> f64 {
        self.r_values.iter().map(|r| r.norm()).sum::<f64>() / self.grid_size() as f64
    }
}

/// Deterministic pseudo-random loop with coefficient decay amplitude / k^2.
pub fn random_loop(k_count: usize, seed: u64, amplitude: f64, period: f64) -> FourierLoop {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lp = FourierLoop::zero(period, k_count);
    for i in 0..k_count {
        let k = FourierLoop::index_of(i) as f64;
        let scale = amplitude / (k * k);
        let mut coeff = || {
            Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ) * scale
        };
        lp.harmonics[i] = Harmonic {
            cos: coeff(),
            sin: coeff(),
        };
    }
    lp
}

/// Eigenvalues (descending) and matching eigenvectors of a symmetric 3x3
/// matrix, by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
fn symmetric_eigen_3x3(m: &[[f64; 3]; 3]) -> ([f64; 3], [Vec3; 3]) {
    let mut a = *m;
    let mut v = [[0.0f64; 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..32 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off < 1e-300 {
            break;
        }
        for p in 0..2usize {
            for q in (p + 1)..3usize {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..3 {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..3 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let eigenvalues = [
        a[order[0]][order[0]],
        a[order[1]][order[1]],
        a[order[2]][order[2]],
    ];
    let axis = |c: usize| {
        let ax = Vec3::new(v[0][c], v[1][c], v[2][c]);
        // Deterministic sign: largest-magnitude component positive.
        let m = [ax.x, ax.y, ax.z];
        let lead = m
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .unwrap();
        if lead < 0.0 {
            -ax
        } else {
            ax
        }
    };
    (
        eigenvalues,
        [axis(order[0]), axis(order[1]), axis(order[2])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle() -> FourierLoop {
        FourierLoop::circle_xy(2.0 * PI, 1.0, 1)
    }

    #[test]
    fn evaluate_circle_endpoints() {
        let lp = unit_circle();
        assert!((lp.evaluate(0.0) - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((lp.evaluate(PI) - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-12);
        assert!(FourierLoop::zero(2.0 * PI, 3).evaluate(0.7).norm() == 0.0);
    }

    #[test]
    fn derivative_of_circle_and_linearity() {
        let lp = unit_circle();
        assert!((lp.derivative(0.0) - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!(FourierLoop::zero(2.0 * PI, 2).derivative(1.3).norm() == 0.0);

        let alpha = 2.5;
        let third = FourierLoop::from_harmonics(
            2.0 * PI,
            &[(3, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0))],
        )
        .unwrap();
        let scaled = third.scaled(alpha);
        let t = 0.4;
        assert!((scaled.derivative(t) - third.derivative(t) * alpha).norm() < 1e-12);
        // Fundamental frequency 1, so the k=3 derivative peaks at 3 alpha.
        assert!((scaled.derivative(0.0).norm() - 3.0 * alpha).abs() < 1e-12);
    }

    #[test]
    fn sampling_the_circle() {
        let lp = unit_circle();
        let s = lp.sample(16).unwrap();
        for r in &s.r_values {
            assert!((r.norm() - 1.0).abs() < 1e-14);
        }
        let quad_r2 = s.quadrature(s.r_values.iter().map(|r| r.norm_sq()));
        assert!((quad_r2 - 2.0 * PI).abs() < 1e-12);
        let quad_v2 = s.quadrature(s.r_dot_values.iter().map(|v| v.norm_sq()));
        assert!((quad_v2 - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn undersampling_is_rejected() {
        let lp = FourierLoop::zero(1.0, 4); // max index 7, need 28
        assert!(matches!(lp.sample(27), Err(Error::Undersampled { .. })));
        assert!(lp.sample(28).is_ok());
    }

    #[test]
    fn loop_norm_of_circle() {
        let geom = CollinearGeometry::derive(&crate::config::MassTriple::equal(), 0.5).unwrap();
        let lp = unit_circle();
        assert!((lp.loop_norm(&geom) - PI.sqrt()).abs() < 1e-13);
        assert!(FourierLoop::zero(2.0 * PI, 1).loop_norm(&geom) == 0.0);
        let alpha = 3.25;
        assert!((lp.scaled(alpha).loop_norm(&geom) - alpha * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn min_separation_scales_with_radius() {
        let geom = CollinearGeometry::derive(&crate::config::MassTriple::equal(), 0.5).unwrap();
        assert!((unit_circle().min_separation(&geom, 16).unwrap() - 0.5).abs() < 1e-13);
        assert!(
            FourierLoop::zero(2.0 * PI, 1)
                .min_separation(&geom, 16)
                .unwrap()
                == 0.0
        );
        let r = 4.5;
        let big = FourierLoop::circle_xy(2.0 * PI, r, 1);
        assert!((big.min_separation(&geom, 16).unwrap() - 0.5 * r).abs() < 1e-12);
    }

    #[test]
    fn winding_numbers_of_circles() {
        assert_eq!(unit_circle().winding_number(64).unwrap(), Some(1));
        let third = FourierLoop::from_harmonics(
            2.0 * PI,
            &[(3, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0))],
        )
        .unwrap();
        assert_eq!(third.winding_number(64).unwrap(), Some(3));
    }

    #[test]
    fn winding_number_undefined_off_plane() {
        let lp = FourierLoop::from_harmonics(
            2.0 * PI,
            &[
                (1, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0)),
                (3, Vec3::new(0.0, 0.0, 0.8), Vec3::new(0.0, 0.0, 0.1)),
            ],
        )
        .unwrap();
        assert_eq!(lp.winding_number(64).unwrap(), None);
    }

    #[test]
    fn even_harmonics_are_rejected() {
        let e = FourierLoop::from_harmonics(1.0, &[(2, Vec3::new(1.0, 0.0, 0.0), Vec3::default())]);
        assert!(matches!(e, Err(Error::InvalidHarmonic(2))));
        let e0 =
            FourierLoop::from_harmonics(1.0, &[(0, Vec3::new(1.0, 0.0, 0.0), Vec3::default())]);
        assert!(e0.is_err());
        let dup = FourierLoop::from_harmonics(
            1.0,
            &[
                (3, Vec3::new(1.0, 0.0, 0.0), Vec3::default()),
                (1, Vec3::default(), Vec3::default()),
            ],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn random_loops_are_deterministic() {
        let a = random_loop(4, 11, 1.0, 2.0 * PI);
        let b = random_loop(4, 11, 1.0, 2.0 * PI);
        assert_eq!(a, b);
        assert!(random_loop(4, 11, 0.0, 2.0 * PI).is_zero());
    }

    #[test]
    fn flat_round_trip() {
        let lp = random_loop(5, 3, 0.7, 4.0);
        let back = FourierLoop::from_flat(lp.period(), &lp.to_flat()).unwrap();
        assert_eq!(lp, back);
        assert!(FourierLoop::from_flat(1.0, &[1.0; 5]).is_err());
    }
}
