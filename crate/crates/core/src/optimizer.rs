//! Monte-Carlo global search with pattern-search refinement.
//!
//! Projective measurements are searched over a (polar, azimuth) grid of the
//! sphere plus the two axis directions. Three-element POVMs are searched over
//! `(μ₁, μ₂, ψ, θ, φ)`: seeded random candidates, the best few refined
//! locally, plus one start that embeds the projective optimum at the edge of
//! the weight region. Candidate generation is sequential and evaluation is
//! data-parallel; every reduction orders ties by candidate index, so results
//! do not depend on the thread count.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discord::{
    conditional_entropy_povm3_params, conditional_entropy_projective_params, Witness,
};
use crate::entropy::LogBase;
use crate::error::{DiscordError, Result};
use crate::pattern::{pattern_search, PatternResult};
use crate::povm::{build_povm3, sample_euler, sample_weights, EulerAngles, PovmWeights, Vec3};
use crate::qstate::{BlochParams, XState};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Random `(weights, Euler)` candidates in the global phase.
    pub n_global_samples: usize,
    /// How many of the best candidates are refined.
    pub n_refine_starts: usize,
    /// Cap on exploratory sweeps per refinement.
    pub n_refine_iters: usize,
    /// Refinement stops once the step size drops below this.
    pub refine_tol: f64,
    /// Polar resolution of the projective pre-scan; azimuth uses twice as many cells.
    pub angle_grid: usize,
    /// φ values swept by [`phi_invariance_audit`].
    pub phi_audit_points: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 20_100_425,
            n_global_samples: 20_000,
            n_refine_starts: 10,
            n_refine_iters: 100_000,
            refine_tol: 1e-10,
            angle_grid: 64,
            phi_audit_points: 16,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("n_global_samples", self.n_global_samples),
            ("n_refine_starts", self.n_refine_starts),
            ("n_refine_iters", self.n_refine_iters),
            ("angle_grid", self.angle_grid),
            ("phi_audit_points", self.phi_audit_points),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, n)| *n == 0) {
            return Err(DiscordError::Config(format!("{name} must be at least 1")));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return Err(DiscordError::Config(format!(
                "refine_tol must be positive, got {}",
                self.refine_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult<T> {
    /// Minimum conditional entropy found.
    pub best_value: T,
    /// Best value before local refinement.
    pub global_best: T,
    pub witness: Witness<T>,
    pub n_evals: usize,
    pub converged: bool,
}

impl<T: Real> OptResult<T> {
    pub fn best_weights(&self) -> Option<PovmWeights<T>> {
        match self.witness {
            Witness::Povm3 { weights, .. } => Some(weights),
            _ => None,
        }
    }

    pub fn best_euler(&self) -> Option<EulerAngles<T>> {
        match self.witness {
            Witness::Povm3 { euler, .. } => Some(euler),
            _ => None,
        }
    }

    pub fn best_direction(&self) -> Option<Vec3<T>> {
        match self.witness {
            Witness::Projective { direction } => Some(direction),
            _ => None,
        }
    }
}

/// Result of sweeping φ with the other coordinates re-optimized.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiAudit<T> {
    pub best: OptResult<T>,
    pub phis: Vec<T>,
    pub values: Vec<T>,
    pub spread: T,
}

fn by_value_then_index<T: Real>(a: &(T, usize), b: &(T, usize)) -> Ordering {
    a.0.partial_cmp(&b.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.cmp(&b.1))
}

fn sphere_point<T: Real>(polar: T, azimuth: T) -> Vec3<T> {
    let (st, ct) = polar.sin_cos();
    let (sp, cp) = azimuth.sin_cos();
    [st * cp, st * sp, ct]
}

/// Weights for chart coordinates, projected only when they leave the region.
fn chart_weights<T: Real>(mu1: T, mu2: T) -> PovmWeights<T> {
    PovmWeights::from_pair(mu1, mu2).unwrap_or_else(|_| PovmWeights::project_interior(mu1, mu2))
}

fn project_chart<T: Real>(x: &mut [T]) {
    if PovmWeights::from_pair(x[0], x[1]).is_err() {
        let w = PovmWeights::project_interior(x[0], x[1]);
        x[0] = w.mu()[0];
        x[1] = w.mu()[1];
    }
}

fn povm_objective<T: Real>(
    p: &BlochParams<T>,
    w: &PovmWeights<T>,
    e: &EulerAngles<T>,
    base: LogBase,
) -> T {
    match build_povm3(w, e) {
        Ok(povm) => conditional_entropy_povm3_params(p, &povm, base),
        Err(_) => T::infinity(),
    }
}

fn povm_objective_coords<T: Real>(p: &BlochParams<T>, x: &[T; 5], base: LogBase) -> T {
    let w = chart_weights(x[0], x[1]);
    match EulerAngles::new(x[2], x[3], x[4]) {
        Ok(e) => povm_objective(p, &w, &e, base),
        Err(_) => T::infinity(),
    }
}

/// Minimum of the projective conditional entropy over the unit sphere.
pub fn minimize_projective<T: Real>(
    s: &XState<T>,
    cfg: &SearchConfig,
    base: LogBase,
) -> Result<OptResult<T>> {
    cfg.validate()?;
    let p = s.bloch_params();
    let (o, z) = (T::one(), T::zero());

    // Seeds: exact axes first, then the grid. Each carries (polar, azimuth).
    let n_polar = cfg.angle_grid;
    let n_azimuth = 2 * cfg.angle_grid;
    let mut seeds: Vec<(Vec3<T>, [T; 2])> =
        vec![([z, z, o], [z, z]), ([o, z, z], [T::FRAC_PI_2(), z])];
    for i in 0..=n_polar {
        let polar = T::lit(PI * i as f64 / n_polar as f64);
        for j in 0..n_azimuth {
            let azimuth = T::lit(TAU * j as f64 / n_azimuth as f64);
            seeds.push((sphere_point(polar, azimuth), [polar, azimuth]));
            if i == 0 || i == n_polar {
                break;
            }
        }
    }
    let values: Vec<T> = seeds
        .par_iter()
        .map(|(n, _)| conditional_entropy_projective_params(&p, n, base))
        .collect();
    let mut order: Vec<(T, usize)> = values.iter().copied().zip(0..).collect();
    order.sort_by(by_value_then_index);
    let (global_best, global_idx) = order[0];

    let tol = T::tol(cfg.refine_tol);
    let refined: Vec<(usize, PatternResult<T, 2>)> = order
        .iter()
        .take(cfg.n_refine_starts)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&&(_, idx)| {
            let f = |x: &[T; 2]| {
                conditional_entropy_projective_params(&p, &sphere_point(x[0], x[1]), base)
            };
            let step = T::lit(PI / n_polar as f64);
            let r = pattern_search(
                f,
                |_| {},
                seeds[idx].1,
                [step, step],
                tol,
                cfg.n_refine_iters,
            );
            (idx, r)
        })
        .collect();

    let mut n_evals = seeds.len();
    let mut best = (global_best, global_idx, seeds[global_idx].0, true);
    let mut all_converged = true;
    for (idx, r) in &refined {
        n_evals += r.evals;
        all_converged &= r.converged;
        let cand = (r.value, *idx);
        if by_value_then_index(&cand, &(best.0, best.1)) == Ordering::Less {
            best = (r.value, *idx, sphere_point(r.x[0], r.x[1]), r.converged);
        }
    }
    Ok(OptResult {
        best_value: best.0,
        global_best,
        witness: Witness::Projective { direction: best.2 },
        n_evals,
        converged: all_converged,
    })
}

/// Euler angles taking the first planar direction `(1,0,0)` onto `n` (with θ = 0).
fn euler_aligning_first_direction<T: Real>(n: &Vec3<T>) -> [T; 3] {
    let phi = n[1].max(-T::one()).min(T::one()).asin();
    let psi = (-n[2]).atan2(n[0]);
    [psi, T::zero(), phi]
}

fn refine_povm<T: Real>(
    p: &BlochParams<T>,
    x0: [T; 5],
    cfg: &SearchConfig,
    base: LogBase,
) -> PatternResult<T, 5> {
    let f = |x: &[T; 5]| povm_objective_coords(p, x, base);
    let project = |x: &mut [T; 5]| project_chart(&mut x[..2]);
    let tol = T::tol(cfg.refine_tol);
    let steps = [0.05, 0.05, 0.5, 0.5, 0.5].map(T::lit);
    polish(f, project, x0, steps, tol, cfg.n_refine_iters)
}

/// Pattern search restarted from its own optimum with a reduced initial step
/// until a restart no longer improves.
fn polish<T, F, P, const N: usize>(
    f: F,
    project: P,
    x0: [T; N],
    steps: [T; N],
    tol: T,
    max_iters: usize,
) -> PatternResult<T, N>
where
    T: Real,
    F: Fn(&[T; N]) -> T,
    P: Fn(&mut [T; N]),
{
    let mut r = pattern_search(&f, &project, x0, steps, tol, max_iters);
    let mut evals = r.evals;
    let small = steps.map(|s| s * T::lit(1e-3));
    for _ in 0..8 {
        let next = pattern_search(&f, &project, r.x, small, tol, max_iters);
        evals += next.evals;
        if next.value < r.value {
            r = next;
        } else {
            break;
        }
    }
    r.evals = evals;
    r
}

/// Minimum of the three-element POVM conditional entropy.
pub fn minimize_povm3<T: Real>(
    s: &XState<T>,
    cfg: &SearchConfig,
    base: LogBase,
) -> Result<OptResult<T>> {
    cfg.validate()?;
    let p = s.bloch_params();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let candidates: Vec<[T; 5]> = (0..cfg.n_global_samples)
        .map(|_| {
            let w: PovmWeights<T> = sample_weights(&mut rng);
            let e: EulerAngles<T> = sample_euler(&mut rng);
            [w.mu()[0], w.mu()[1], e.psi(), e.theta(), e.phi()]
        })
        .collect();
    let values: Vec<T> = candidates
        .par_iter()
        .map(|x| povm_objective_coords(&p, x, base))
        .collect();
    let mut order: Vec<(T, usize)> = values.iter().copied().zip(0..).collect();
    order.sort_by(by_value_then_index);
    let global_best = order[0].0;

    let mut starts: Vec<[T; 5]> = order
        .iter()
        .take(cfg.n_refine_starts)
        .map(|&(_, i)| candidates[i])
        .collect();

    // Near-antipodal POVM reproducing the projective optimum as closely as the
    // excluded edge allows.
    let proj = minimize_projective(s, cfg, base)?;
    if let Some(n) = proj.best_direction() {
        let [psi, theta, phi] = euler_aligning_first_direction(&n);
        let half = T::lit(0.5);
        let mut x = [half, half, psi, theta, phi];
        project_chart(&mut x[..2]);
        starts.push(x);
    }

    let refined: Vec<PatternResult<T, 5>> = starts
        .par_iter()
        .map(|x0| refine_povm(&p, *x0, cfg, base))
        .collect();

    let mut n_evals = candidates.len() + proj.n_evals;
    let mut best: Option<(T, usize)> = None;
    for (i, r) in refined.iter().enumerate() {
        n_evals += r.evals;
        let cand = (r.value, i);
        if best.is_none_or(|b| by_value_then_index(&cand, &b) == Ordering::Less) {
            best = Some(cand);
        }
    }
    let (best_value, best_idx) = best.expect("at least one refinement start");
    let r = &refined[best_idx];
    let weights = chart_weights(r.x[0], r.x[1]);
    let euler = EulerAngles::new(r.x[2], r.x[3], r.x[4])?;
    Ok(OptResult {
        best_value,
        global_best,
        witness: Witness::Povm3 { weights, euler },
        n_evals,
        converged: refined.iter().all(|r| r.converged),
    })
}

/// Re-optimizes weights, ψ and θ with φ pinned at each point of a uniform
/// grid over `[0, 2π)`, starting from the global optimum, and reports the
/// spread of the resulting minima.
pub fn phi_invariance_audit<T: Real>(
    s: &XState<T>,
    cfg: &SearchConfig,
    base: LogBase,
) -> Result<PhiAudit<T>> {
    let best = minimize_povm3(s, cfg, base)?;
    let (w, e) = match best.witness {
        Witness::Povm3 { weights, euler } => (weights, euler),
        _ => unreachable!("minimize_povm3 returns a POVM witness"),
    };
    let p = s.bloch_params();
    let tol = T::tol(cfg.refine_tol);
    let n = cfg.phi_audit_points;
    let phis: Vec<T> = (0..n).map(|k| T::lit(TAU * k as f64 / n as f64)).collect();

    let values: Vec<T> = phis
        .par_iter()
        .map(|&phi| {
            let f = |x: &[T; 4]| {
                let w = chart_weights(x[0], x[1]);
                match EulerAngles::new(x[2], x[3], phi) {
                    Ok(e) => povm_objective(&p, &w, &e, base),
                    Err(_) => T::infinity(),
                }
            };
            let project = |x: &mut [T; 4]| project_chart(&mut x[..2]);
            let steps = [0.05, 0.05, 0.5, 0.5].map(T::lit);
            // In-plane rotation by φ is matched by ψ ∓ Δφ when the plane contains y.
            let shift = phi - e.phi();
            [e.psi(), e.psi() + shift, e.psi() - shift]
                .into_iter()
                .map(|psi| {
                    let x0 = [w.mu()[0], w.mu()[1], psi, e.theta()];
                    polish(f, project, x0, steps, tol, cfg.n_refine_iters).value
                })
                .fold(T::infinity(), |a, b| a.min(b))
        })
        .collect();
    let (lo, hi) = values
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    Ok(PhiAudit {
        best,
        phis,
        values,
        spread: hi - lo,
    })
}
