//! Two-qubit X states in matrix-entry and Bloch-parameter form.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with the first qubit belonging to
//! subsystem A and the second to subsystem B (the measured side).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{DiscordError, Result};
use crate::real::Real;

/// Accepted deviation of the raw populations' sum from one.
pub const INPUT_TRACE_TOL: f64 = 1e-9;
/// Tolerance for the internal invariants (non-negativity, block positivity).
pub const STATE_TOL: f64 = 1e-12;

/// Real two-qubit X state
///
/// ```text
/// | a  0  0  ε |
/// | 0  b  δ  0 |
/// | 0  δ  c  0 |
/// | ε  0  0  d |
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XState<T> {
    a: T,
    b: T,
    c: T,
    d: T,
    eps: T,
    delta: T,
}

/// Pauli-expansion coefficients of an X state.
///
/// `a_z` multiplies I⊗σ₃ (local Z of subsystem B), `b_z` multiplies σ₃⊗I
/// (local Z of subsystem A) and `t` holds the diagonal correlation tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochParams<T> {
    pub a_z: T,
    pub b_z: T,
    pub t: [T; 3],
}

/// Dense 4×4 complex matrix, used to cross-check the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4<T> {
    pub entries: [[Complex<T>; 4]; 4],
}

impl<T: Real> XState<T> {
    /// Validates the entries and renormalizes them by the trace.
    pub fn from_entries(a: T, b: T, c: T, d: T, eps: T, delta: T) -> Result<Self> {
        let all = [a, b, c, d, eps, delta];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(DiscordError::Domain(
                "X-state entries must be finite".into(),
            ));
        }
        let trace = a + b + c + d;
        if (trace - T::one()).abs() > T::tol(INPUT_TRACE_TOL) {
            return Err(DiscordError::Trace {
                trace: trace.to_f64_lossy(),
            });
        }
        let tol = T::tol(STATE_TOL);
        for (name, p) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if p < -tol {
                return Err(DiscordError::Positivity(format!(
                    "population {name} = {p} is negative"
                )));
            }
        }
        if a * d - eps * eps < -tol {
            return Err(DiscordError::Positivity(format!(
                "outer block: a·d = {} < ε² = {}",
                a * d,
                eps * eps
            )));
        }
        if b * c - delta * delta < -tol {
            return Err(DiscordError::Positivity(format!(
                "inner block: b·c = {} < δ² = {}",
                b * c,
                delta * delta
            )));
        }
        let clamp = |p: T| p.max(T::zero()) / trace;
        Ok(Self {
            a: clamp(a),
            b: clamp(b),
            c: clamp(c),
            d: clamp(d),
            eps: eps / trace,
            delta: delta / trace,
        })
    }

    /// I/4.
    pub fn maximally_mixed() -> Self {
        let q = T::lit(0.25);
        Self {
            a: q,
            b: q,
            c: q,
            d: q,
            eps: T::zero(),
            delta: T::zero(),
        }
    }

    /// (|00⟩ + |11⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let h = T::lit(0.5);
        Self {
            a: h,
            b: T::zero(),
            c: T::zero(),
            d: h,
            eps: h,
            delta: T::zero(),
        }
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn eps(&self) -> T {
        self.eps
    }
    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn bloch_params(&self) -> BlochParams<T> {
        let two = T::lit(2.0);
        BlochParams {
            a_z: self.a - self.b + self.c - self.d,
            b_z: self.a + self.b - self.c - self.d,
            t: [
                two * (self.delta + self.eps),
                two * (self.delta - self.eps),
                self.a - self.b - self.c + self.d,
            ],
        }
    }

    pub fn to_matrix(&self) -> DensityMatrix4<T> {
        let z = Complex::new(T::zero(), T::zero());
        let re = |x: T| Complex::new(x, T::zero());
        let mut m = [[z; 4]; 4];
        m[0][0] = re(self.a);
        m[1][1] = re(self.b);
        m[2][2] = re(self.c);
        m[3][3] = re(self.d);
        m[0][3] = re(self.eps);
        m[3][0] = re(self.eps);
        m[1][2] = re(self.delta);
        m[2][1] = re(self.delta);
        DensityMatrix4 { entries: m }
    }

    /// Computational-basis populations of subsystem B: `(a + c, b + d)`.
    pub fn marginal_b(&self) -> (T, T) {
        (self.a + self.c, self.b + self.d)
    }

    /// Computational-basis populations of subsystem A: `(a + b, c + d)`.
    pub fn marginal_a(&self) -> (T, T) {
        (self.a + self.b, self.c + self.d)
    }

    /// Eigenvalues of the two 2×2 blocks, outer block first, `+` root first.
    pub fn eigenvalues(&self) -> [T; 4] {
        let half = T::lit(0.5);
        let outer_mean = (self.a + self.d) * half;
        let outer_rad = ((self.a - self.d) * half).hypot(self.eps);
        let inner_mean = (self.b + self.c) * half;
        let inner_rad = ((self.b - self.c) * half).hypot(self.delta);
        [
            outer_mean + outer_rad,
            outer_mean - outer_rad,
            inner_mean + inner_rad,
            inner_mean - inner_rad,
        ]
    }
}

impl<T: Real> BlochParams<T> {
    /// Inverts the linear map from entries to Bloch parameters.
    pub fn to_xstate(&self) -> Result<XState<T>> {
        let q = T::lit(0.25);
        let one = T::one();
        let [t1, t2, t3] = self.t;
        let (az, bz) = (self.a_z, self.b_z);
        XState::from_entries(
            (one + az + bz + t3) * q,
            (one - az + bz - t3) * q,
            (one + az - bz - t3) * q,
            (one - az - bz + t3) * q,
            (t1 - t2) * q,
            (t1 + t2) * q,
        )
    }
}

impl<T: Real> DensityMatrix4<T> {
    pub fn trace(&self) -> Complex<T> {
        (0..4).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.entries[i][i]
        })
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        (0..4)
            .all(|i| (0..4).all(|j| (self.entries[i][j] - self.entries[j][i].conj()).norm() <= tol))
    }
}
