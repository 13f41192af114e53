//! Post-measurement conditional entropy and discord for measurements on B.
//!
//! Measuring B with `μ(I + m·σ)` leaves A in a qubit state with Bloch vector
//! `(t₁m_x, t₂m_y, t₃m_z + B) / (1 + A m_z)`, produced with probability
//! `μ(1 + A m_z)`. Its entropy is `h(E)` where `E` is that vector's length.

use serde::{Deserialize, Serialize};

use crate::entropy::{binary_entropy_clamped, marginal_entropy_b, von_neumann_xstate, LogBase};
use crate::error::{DiscordError, Result};
use crate::povm::{EulerAngles, Povm3, PovmWeights, Vec3};
use crate::qstate::{BlochParams, XState};
use crate::real::Real;

/// Outcomes with `1 + A m_z` at or below this never occur.
pub const ZERO_PROB_TOL: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome<T> {
    pub prob: T,
    pub e_value: T,
}

/// The measurement a discord value was obtained with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness<T> {
    /// Two-outcome projective measurement along `±direction`.
    Projective { direction: Vec3<T> },
    /// Three-element POVM built from weights and Euler angles.
    Povm3 {
        weights: PovmWeights<T>,
        euler: EulerAngles<T>,
    },
    /// No particular measurement (e.g. a caller-supplied entropy).
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordValue<T> {
    pub value: T,
    pub conditional_entropy: T,
    pub base: LogBase,
    pub witness: Witness<T>,
}

fn check_unit<T: Real>(m: &Vec3<T>) -> Result<()> {
    let norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
    if !norm.is_finite() || (norm - T::one()).abs() > T::tol(UNIT_TOL) {
        return Err(DiscordError::Domain(format!(
            "measurement direction has norm {norm}, expected 1"
        )));
    }
    Ok(())
}

/// `E(m)` for precomputed Bloch parameters; no unit-norm check.
#[inline]
pub fn e_function_params<T: Real>(p: &BlochParams<T>, m: &Vec3<T>) -> Result<T> {
    let denom = T::one() + p.a_z * m[2];
    if denom <= T::tol(ZERO_PROB_TOL) {
        return Err(DiscordError::ZeroProbability(denom.to_f64_lossy()));
    }
    let x = p.t[0] * m[0];
    let y = p.t[1] * m[1];
    let z = p.t[2] * m[2] + p.b_z;
    let len = (x * x + y * y + z * z).sqrt();
    Ok((len / denom).max(T::zero()).min(T::one()))
}

/// Bloch-vector length of A's post-measurement state for outcome direction `m`.
pub fn e_function<T: Real>(s: &XState<T>, m: &Vec3<T>) -> Result<T> {
    check_unit(m)?;
    e_function_params(&s.bloch_params(), m)
}

/// Probability and `E` of the outcome `μ(I + m·σ)`; `e_value` is zero when the
/// outcome cannot occur.
#[inline]
pub fn outcome<T: Real>(p: &BlochParams<T>, mu: T, m: &Vec3<T>) -> MeasurementOutcome<T> {
    let prob = (mu * (T::one() + p.a_z * m[2])).max(T::zero());
    let e_value = e_function_params(p, m).unwrap_or(T::zero());
    MeasurementOutcome { prob, e_value }
}

#[inline]
fn weighted_entropy<T: Real>(p: &BlochParams<T>, mu: T, m: &Vec3<T>, base: LogBase) -> T {
    match e_function_params(p, m) {
        Ok(e) => mu * (T::one() + p.a_z * m[2]) * binary_entropy_clamped(e, base),
        Err(_) => T::zero(),
    }
}

/// `Σ_k μ_k (1 + A m_z⁽ᵏ⁾) h(E(m⁽ᵏ⁾))` for precomputed Bloch parameters.
#[inline]
pub fn conditional_entropy_povm3_params<T: Real>(
    p: &BlochParams<T>,
    povm: &Povm3<T>,
    base: LogBase,
) -> T {
    povm.elements().fold(T::zero(), |acc, (mu, m)| {
        acc + weighted_entropy(p, mu, &m, base)
    })
}

pub fn conditional_entropy_povm3<T: Real>(s: &XState<T>, povm: &Povm3<T>, base: LogBase) -> T {
    conditional_entropy_povm3_params(&s.bloch_params(), povm, base)
}

/// Projective measurement `{(I ± n·σ)/2}`; `n` is assumed unit.
#[inline]
pub fn conditional_entropy_projective_params<T: Real>(
    p: &BlochParams<T>,
    n: &Vec3<T>,
    base: LogBase,
) -> T {
    let half = T::lit(0.5);
    let neg = [-n[0], -n[1], -n[2]];
    weighted_entropy(p, half, n, base) + weighted_entropy(p, half, &neg, base)
}

pub fn conditional_entropy_projective<T: Real>(
    s: &XState<T>,
    n: &Vec3<T>,
    base: LogBase,
) -> Result<T> {
    check_unit(n)?;
    Ok(conditional_entropy_projective_params(
        &s.bloch_params(),
        n,
        base,
    ))
}

/// δ = S(ρ^B) − S(ρ^AB) + conditional entropy.
pub fn discord_given_conditional_entropy<T: Real>(
    s: &XState<T>,
    ce: T,
    witness: Witness<T>,
    base: LogBase,
) -> DiscordValue<T> {
    let value = marginal_entropy_b(s, base) - von_neumann_xstate(s, base) + ce;
    DiscordValue {
        value,
        conditional_entropy: ce,
        base,
        witness,
    }
}

/// Discord from the better of the two axis measurements, σ_z or σ_x on B.
pub fn ali_candidate<T: Real>(s: &XState<T>, base: LogBase) -> DiscordValue<T> {
    let (o, z) = (T::one(), T::zero());
    let p = s.bloch_params();
    let axes = [[z, z, o], [o, z, z]];
    let (dir, ce) = axes
        .iter()
        .map(|n| (*n, conditional_entropy_projective_params(&p, n, base)))
        .fold((axes[0], T::infinity()), |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        });
    discord_given_conditional_entropy(s, ce, Witness::Projective { direction: dir }, base)
}
