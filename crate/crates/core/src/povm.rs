//! Rank-1 three-element qubit POVMs `M_k = μ_k (I + m⁽ᵏ⁾·σ)`.
//!
//! Completeness forces `Σ μ_k m⁽ᵏ⁾ = 0`, so the three weighted directions close
//! a triangle. The directions are laid out in the XY plane from the weights
//! alone and then oriented by a rotation `R_ψ R_θ R_φ`.

use std::f64::consts::TAU;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{DiscordError, Result};
use crate::real::Real;

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];

/// Minimum slack `μ_j + μ_k − μ_i` for every permutation; the edges of the
/// admissible region are excluded.
pub const WEIGHT_MARGIN: f64 = 1e-9;
/// Arccos arguments closer than this to ±1 are rejected.
pub const ARCCOS_MARGIN: f64 = 1e-12;
const SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmWeights<T> {
    mu: [T; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleAngles<T> {
    pub theta12: T,
    pub theta23: T,
    pub theta13: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles<T> {
    psi: T,
    theta: T,
    phi: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Povm3<T> {
    weights: PovmWeights<T>,
    dirs: [Vec3<T>; 3],
}

fn slacks<T: Real>(mu: &[T; 3]) -> [T; 3] {
    [
        mu[1] + mu[2] - mu[0],
        mu[0] + mu[2] - mu[1],
        mu[0] + mu[1] - mu[2],
    ]
}

impl<T: Real> PovmWeights<T> {
    pub fn new(mu1: T, mu2: T, mu3: T) -> Result<Self> {
        let mu = [mu1, mu2, mu3];
        if mu.iter().any(|m| !m.is_finite()) {
            return Err(DiscordError::Domain("POVM weights must be finite".into()));
        }
        let sum = mu1 + mu2 + mu3;
        if (sum - T::one()).abs() > T::tol(SUM_TOL) {
            return Err(DiscordError::Domain(format!(
                "POVM weights sum to {sum}, expected 1"
            )));
        }
        let margin = T::tol(WEIGHT_MARGIN);
        if let Some(s) = slacks(&mu).into_iter().find(|&s| s < margin) {
            return Err(DiscordError::Degenerate(format!(
                "weights ({mu1}, {mu2}, {mu3}) violate the strict triangle inequality (slack {s})"
            )));
        }
        Ok(Self { mu })
    }

    /// Weights `(μ₁, μ₂, 1 − μ₁ − μ₂)`.
    pub fn from_pair(mu1: T, mu2: T) -> Result<Self> {
        Self::new(mu1, mu2, T::one() - mu1 - mu2)
    }

    /// Nearest point (Euclidean, in the `(μ₁, μ₂)` chart) of the admissible
    /// region shrunk by twice [`WEIGHT_MARGIN`].
    pub fn project_interior(mu1: T, mu2: T) -> Self {
        // slack_i ≥ m  ⇔  μ_i ≤ (1 − m)/2, so the region is a triangle in the chart
        let m = T::tol(WEIGHT_MARGIN) * T::lit(2.0);
        let hi = (T::one() - m) * T::lit(0.5);
        let lo = T::one() - hi;
        let corners = [[hi, hi], [hi, lo - hi], [lo - hi, hi]];
        let p = [mu1, mu2];
        let [x, y] = if mu1 <= hi && mu2 <= hi && mu1 + mu2 >= lo {
            p
        } else {
            let mut best = corners[0];
            let mut best_d = T::infinity();
            for i in 0..3 {
                let q = closest_on_segment(p, corners[i], corners[(i + 1) % 3]);
                let d = (q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2);
                if d < best_d {
                    best_d = d;
                    best = q;
                }
            }
            best
        };
        Self {
            mu: [x, y, T::one() - x - y],
        }
    }

    pub fn mu(&self) -> [T; 3] {
        self.mu
    }

    pub fn symmetric() -> Self {
        let third = T::one() / T::lit(3.0);
        Self {
            mu: [third, third, T::one() - third - third],
        }
    }
}

fn closest_on_segment<T: Real>(p: [T; 2], a: [T; 2], b: [T; 2]) -> [T; 2] {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2)
        .max(T::zero())
        .min(T::one());
    [a[0] + t * ab[0], a[1] + t * ab[1]]
}

fn checked_acos<T: Real>(arg: T, label: &str) -> Result<T> {
    let lim = T::one() - T::tol(ARCCOS_MARGIN);
    if !(arg > -lim && arg < lim) {
        return Err(DiscordError::Degenerate(format!(
            "cos {label} = {arg} is on or beyond the edge of (-1, 1)"
        )));
    }
    Ok(arg.acos())
}

/// Pairwise angles between the planar directions for raw weights.
pub fn angles_from_mu<T: Real>(mu: [T; 3]) -> Result<TriangleAngles<T>> {
    let [m1, m2, m3] = mu;
    let two = T::lit(2.0);
    let theta12 = checked_acos((m3 * m3 - m1 * m1 - m2 * m2) / (two * m1 * m2), "θ12")?;
    let theta23 = checked_acos((m1 * m1 - m2 * m2 - m3 * m3) / (two * m2 * m3), "θ23")?;
    let theta13 = checked_acos((m2 * m2 - m1 * m1 - m3 * m3) / (two * m1 * m3), "θ13")?;
    let angles = TriangleAngles {
        theta12,
        theta23,
        theta13,
    };
    debug_assert!((angles.sum() - T::TAU()).abs() < T::tol(1e-9));
    Ok(angles)
}

pub fn angles_from_weights<T: Real>(w: &PovmWeights<T>) -> Result<TriangleAngles<T>> {
    angles_from_mu(w.mu)
}

impl<T: Real> TriangleAngles<T> {
    pub fn sum(&self) -> T {
        self.theta12 + self.theta23 + self.theta13
    }
}

/// `n⁽¹⁾ = (1,0,0)`, `n⁽²⁾ = (cos θ₁₂, sin θ₁₂, 0)`, `n⁽³⁾ = (cos θ₁₃, −sin θ₁₃, 0)`.
pub fn planar_directions<T: Real>(t: &TriangleAngles<T>) -> [Vec3<T>; 3] {
    let z = T::zero();
    [
        [T::one(), z, z],
        [t.theta12.cos(), t.theta12.sin(), z],
        [t.theta13.cos(), -t.theta13.sin(), z],
    ]
}

impl<T: Real> EulerAngles<T> {
    /// Angles reduced into `[0, 2π)`.
    pub fn new(psi: T, theta: T, phi: T) -> Result<Self> {
        if !(psi.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(DiscordError::Domain("Euler angles must be finite".into()));
        }
        Ok(Self {
            psi: reduce_angle(psi),
            theta: reduce_angle(theta),
            phi: reduce_angle(phi),
        })
    }

    pub fn zero() -> Self {
        Self {
            psi: T::zero(),
            theta: T::zero(),
            phi: T::zero(),
        }
    }

    pub fn psi(&self) -> T {
        self.psi
    }
    pub fn theta(&self) -> T {
        self.theta
    }
    pub fn phi(&self) -> T {
        self.phi
    }
}

fn reduce_angle<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let r = x % tau;
    let r = if r < T::zero() { r + tau } else { r };
    // r + tau can round up to exactly tau
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

pub fn mat_mul<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).fold(T::zero(), |acc, k| acc + a[i][k] * b[k][j]);
        }
    }
    out
}

pub fn mat_vec<T: Real>(m: &Mat3<T>, v: &Vec3<T>) -> Vec3<T> {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// `R_ψ R_θ R_φ`: rotation about y by ψ, about x by θ, about z by φ.
pub fn rotation_matrix<T: Real>(e: &EulerAngles<T>) -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    let (sp, cp) = e.psi.sin_cos();
    let (st, ct) = e.theta.sin_cos();
    let (sf, cf) = e.phi.sin_cos();
    let r_psi = [[cp, z, sp], [z, o, z], [-sp, z, cp]];
    let r_theta = [[o, z, z], [z, ct, -st], [z, st, ct]];
    let r_phi = [[cf, -sf, z], [sf, cf, z], [z, z, o]];
    mat_mul(&mat_mul(&r_psi, &r_theta), &r_phi)
}

pub fn build_povm3<T: Real>(w: &PovmWeights<T>, e: &EulerAngles<T>) -> Result<Povm3<T>> {
    let planar = planar_directions(&angles_from_weights(w)?);
    let r = rotation_matrix(e);
    Ok(Povm3 {
        weights: *w,
        dirs: planar.map(|n| mat_vec(&r, &n)),
    })
}

impl<T: Real> Povm3<T> {
    /// Checks unit directions and `Σ μ_k m⁽ᵏ⁾ = 0`.
    pub fn from_parts(weights: PovmWeights<T>, dirs: [Vec3<T>; 3]) -> Result<Self> {
        for m in &dirs {
            let norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
            if (norm - T::one()).abs() > T::tol(1e-12) {
                return Err(DiscordError::Domain(format!(
                    "direction has norm {norm}, expected 1"
                )));
            }
        }
        let p = Self { weights, dirs };
        let r = p.completeness_residual();
        if r > T::tol(1e-10) {
            return Err(DiscordError::Domain(format!(
                "weighted directions do not sum to zero (residual {r})"
            )));
        }
        Ok(p)
    }

    pub fn weights(&self) -> &PovmWeights<T> {
        &self.weights
    }

    pub fn dirs(&self) -> &[Vec3<T>; 3] {
        &self.dirs
    }

    /// `(μ_k, m⁽ᵏ⁾)` pairs.
    pub fn elements(&self) -> impl Iterator<Item = (T, Vec3<T>)> + '_ {
        self.weights
            .mu
            .iter()
            .copied()
            .zip(self.dirs.iter().copied())
    }

    /// Largest component of `|Σ μ_k m⁽ᵏ⁾|`.
    pub fn completeness_residual(&self) -> T {
        let mut s = [T::zero(); 3];
        for (mu, m) in self.elements() {
            for i in 0..3 {
                s[i] = s[i] + mu * m[i];
            }
        }
        s.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    /// Element `k` as a 2×2 matrix `μ_k (I + m·σ)`.
    pub fn operator(&self, k: usize) -> [[Complex<T>; 2]; 2] {
        let mu = self.weights.mu[k];
        let [x, y, z] = self.dirs[k];
        let c = |re: T, im: T| Complex::new(mu * re, mu * im);
        [
            [c(T::one() + z, T::zero()), c(x, -y)],
            [c(x, y), c(T::one() - z, T::zero())],
        ]
    }
}

/// Uniform draw from the admissible weight region by rejection from the
/// uniform simplex.
pub fn sample_weights<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PovmWeights<T> {
    loop {
        let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        let (mu1, mu2) = (T::lit(u), T::lit(v));
        if let Ok(w) = PovmWeights::from_pair(mu1, mu2) {
            return w;
        }
    }
}

/// Uniform draw of `(ψ, θ, φ)` from `[0, 2π)³`.
pub fn sample_euler<T: Real, R: Rng + ?Sized>(rng: &mut R) -> EulerAngles<T> {
    let mut draw = || T::lit(rng.gen::<f64>() * TAU);
    let (psi, theta, phi) = (draw(), draw(), draw());
    EulerAngles::new(psi, theta, phi).expect("finite draws")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn trine_angles() {
        let t = angles_from_weights(&PovmWeights::<f64>::symmetric()).unwrap();
        for a in [t.theta12, t.theta23, t.theta13] {
            assert!(close(a, 2.0 * PI / 3.0, 1e-12));
        }
        let d = planar_directions(&t);
        let s3 = 3f64.sqrt() / 2.0;
        let want = [[1.0, 0.0, 0.0], [-0.5, s3, 0.0], [-0.5, -s3, 0.0]];
        for k in 0..3 {
            for i in 0..3 {
                assert!(close(d[k][i], want[k][i], 1e-12));
            }
        }
    }

    #[test]
    fn caption_weights_angles() {
        let w = PovmWeights::new(0.4209, 0.2938, 0.2853).unwrap();
        let t = angles_from_weights(&w).unwrap();
        assert!(close(t.sum(), TAU, 1e-10));
        let p = build_povm3(&w, &EulerAngles::zero()).unwrap();
        assert!(p.completeness_residual() < 1e-10);
    }

    #[test]
    fn edge_weights_are_degenerate() {
        assert!(matches!(
            PovmWeights::<f64>::new(0.5, 0.25, 0.25),
            Err(DiscordError::Degenerate(_))
        ));
        assert!(matches!(
            angles_from_mu([0.5_f64, 0.25, 0.25]),
            Err(DiscordError::Degenerate(_))
        ));
        assert!(PovmWeights::<f64>::new(0.3, 0.3, 0.3).is_err());
    }

    #[test]
    fn orthogonal_pair_directions() {
        let t = TriangleAngles {
            theta12: FRAC_PI_2,
            theta23: PI,
            theta13: FRAC_PI_2,
        };
        let d = planar_directions(&t);
        let want = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]];
        for k in 0..3 {
            for i in 0..3 {
                assert!(close(d[k][i], want[k][i], 1e-15));
            }
        }
    }

    #[test]
    fn rotation_anchors() {
        let id = rotation_matrix(&EulerAngles::<f64>::zero());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(id[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        let rz = rotation_matrix(&EulerAngles::new(0.0, 0.0, FRAC_PI_2).unwrap());
        let v = mat_vec(&rz, &[1.0, 0.0, 0.0]);
        assert!(close(v[0], 0.0, 1e-15) && close(v[1], 1.0, 1e-15) && v[2] == 0.0);
    }

    #[test]
    fn directions_match_closed_forms() {
        let w = PovmWeights::new(0.4663, 0.2489, 0.2848).unwrap();
        let t = angles_from_weights(&w).unwrap();
        for (psi, theta, phi) in [
            (0.3, FRAC_PI_2, 1.1),
            (2.0, 0.7, 5.5),
            (4.0, 3.0 * FRAC_PI_2, 0.2),
        ] {
            let e = EulerAngles::new(psi, theta, phi).unwrap();
            let p = build_povm3(&w, &e).unwrap();
            let (sps, cps) = (psi.sin(), psi.cos());
            let (st, ct) = (theta.sin(), theta.cos());
            let (sf, cf) = (phi.sin(), phi.cos());
            let a2 = t.theta12 + phi;
            let a3 = t.theta13 - phi;
            let want = [
                [cf * cps + sf * sps * st, ct * sf, sf * cps * st - cf * sps],
                [
                    a2.cos() * cps + a2.sin() * sps * st,
                    a2.sin() * ct,
                    -a2.cos() * sps + a2.sin() * cps * st,
                ],
                [
                    a3.cos() * cps - a3.sin() * sps * st,
                    -a3.sin() * ct,
                    -a3.cos() * sps - a3.sin() * cps * st,
                ],
            ];
            for k in 0..3 {
                for i in 0..3 {
                    assert!(close(p.dirs()[k][i], want[k][i], 1e-12), "k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn euler_reduction() {
        let e = EulerAngles::new(-0.5, 7.0, TAU).unwrap();
        assert!(close(e.psi(), TAU - 0.5, 1e-15));
        assert!(close(e.theta(), 7.0 - TAU, 1e-15));
        assert_eq!(e.phi(), 0.0);
        assert!(EulerAngles::new(f64::INFINITY, 0.0, 0.0).is_err());
    }

    #[test]
    fn projection_lands_inside() {
        for (x, y) in [
            (0.9, 0.05),
            (0.0, 0.0),
            (0.6, 0.6),
            (-1.0, 3.0),
            (0.3, 0.35),
            (0.5, 0.25),
        ] {
            let w = PovmWeights::<f64>::project_interior(x, y);
            let [a, b, c] = w.mu();
            assert!(
                PovmWeights::new(a, b, c).is_ok(),
                "({x},{y}) -> {:?}",
                w.mu()
            );
        }
        let inside = PovmWeights::<f64>::project_interior(0.3, 0.35);
        assert_eq!(inside.mu()[..2], [0.3, 0.35]);
        let w = PovmWeights::<f64>::project_interior(0.7, 0.2);
        assert!(close(w.mu()[0], 0.5, 1e-8) && close(w.mu()[1], 0.2, 1e-8));
    }

    #[test]
    fn sampling_is_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let wa: PovmWeights<f64> = sample_weights(&mut a);
            let wb: PovmWeights<f64> = sample_weights(&mut b);
            assert_eq!(wa, wb);
        }
    }

    #[test]
    fn operators_sum_to_identity() {
        let w = PovmWeights::new(0.4209, 0.2938, 0.2853).unwrap();
        let p = build_povm3(&w, &EulerAngles::new(1.0, 2.0, 3.0).unwrap()).unwrap();
        let mut sum = [[Complex::new(0.0, 0.0); 2]; 2];
        for k in 0..3 {
            let op = p.operator(k);
            for i in 0..2 {
                for j in 0..2 {
                    sum[i][j] += op[i][j];
                }
            }
        }
        assert!((sum[0][0] - 1.0).norm() < 1e-12 && (sum[1][1] - 1.0).norm() < 1e-12);
        assert!(sum[0][1].norm() < 1e-12 && sum[1][0].norm() < 1e-12);
    }
}
