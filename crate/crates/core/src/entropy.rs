//! Binary, Shannon and von Neumann entropies in bits or nats.

use serde::{Deserialize, Serialize};

use crate::error::{DiscordError, Result};
use crate::qstate::XState;
use crate::real::Real;

/// Eigenvalues in `[-NEG_EIG_TOL, 0)` are treated as rounding noise.
pub const NEG_EIG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    /// log₂
    Bits,
    /// logₑ
    Nats,
}

impl LogBase {
    pub fn log<T: Real>(self, x: T) -> T {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for LogBase {
    type Err = DiscordError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" | "log2" => Ok(LogBase::Bits),
            "nats" | "ln" => Ok(LogBase::Nats),
            other => Err(DiscordError::Domain(format!("unknown log base `{other}`"))),
        }
    }
}

/// `-p log p`, zero at `p = 0`.
#[inline]
fn neg_p_log_p<T: Real>(p: T, base: LogBase) -> T {
    if p > T::zero() {
        -p * base.log(p)
    } else {
        T::zero()
    }
}

/// Entropy of the two-point distribution `{(1+x)/2, (1-x)/2}`.
pub fn binary_entropy<T: Real>(x: T, base: LogBase) -> Result<T> {
    if !x.is_finite() || x.abs() > T::one() + T::tol(1e-9) {
        return Err(DiscordError::Domain(format!(
            "binary entropy argument {x} outside [-1, 1]"
        )));
    }
    Ok(binary_entropy_clamped(x, base))
}

/// [`binary_entropy`] for arguments already known to be near `[-1, 1]`; clamps instead of failing.
#[inline]
pub fn binary_entropy_clamped<T: Real>(x: T, base: LogBase) -> T {
    let x = x.max(-T::one()).min(T::one());
    let half = T::lit(0.5);
    let p = (T::one() + x) * half;
    let q = (T::one() - x) * half;
    neg_p_log_p(p, base) + neg_p_log_p(q, base)
}

/// Shannon entropy of a probability vector.
pub fn shannon<T: Real>(probs: &[T], base: LogBase) -> T {
    probs
        .iter()
        .fold(T::zero(), |acc, &p| acc + neg_p_log_p(p, base))
}

/// `-Σ λ log λ` over a spectrum, with rounding-level negatives clamped to zero.
pub fn spectrum_entropy<T: Real>(eigenvalues: &[T], base: LogBase) -> Result<T> {
    let tol = T::tol(NEG_EIG_TOL);
    let mut total = T::zero();
    for &lambda in eigenvalues {
        if lambda < -tol {
            return Err(DiscordError::NegativeEigenvalue(lambda.to_f64_lossy()));
        }
        total = total + neg_p_log_p(lambda.max(T::zero()), base);
    }
    Ok(total)
}

pub fn von_neumann_xstate<T: Real>(s: &XState<T>, base: LogBase) -> T {
    spectrum_entropy(&s.eigenvalues(), base).expect("validated X state has a non-negative spectrum")
}

/// S(ρ^B); ρ^B is diagonal for an X state.
pub fn marginal_entropy_b<T: Real>(s: &XState<T>, base: LogBase) -> T {
    let (p0, p1) = s.marginal_b();
    shannon(&[p0, p1], base)
}

/// S(ρ^A); ρ^A is diagonal for an X state.
pub fn marginal_entropy_a<T: Real>(s: &XState<T>, base: LogBase) -> T {
    let (p0, p1) = s.marginal_a();
    shannon(&[p0, p1], base)
}

/// I(A:B) = S(ρ^A) + S(ρ^B) − S(ρ^AB).
pub fn mutual_information<T: Real>(s: &XState<T>, base: LogBase) -> T {
    marginal_entropy_a(s, base) + marginal_entropy_b(s, base) - von_neumann_xstate(s, base)
}
