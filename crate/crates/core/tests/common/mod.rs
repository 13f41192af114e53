#![allow(dead_code)]
//! Dense-matrix oracles, independent of the closed forms in the library.

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen};
use rand::Rng;
use xdiscord::{LogBase, Povm3, XState};

pub type C = Complex<f64>;

pub fn dense(s: &XState<f64>) -> Matrix4<C> {
    let m = s.to_matrix().entries;
    Matrix4::from_fn(|i, j| m[i][j])
}

fn xlogx_sum(eigs: impl Iterator<Item = f64>, base: LogBase) -> f64 {
    eigs.map(|l| {
        let l = if l < 0.0 && l > -1e-10 { 0.0 } else { l };
        assert!(l >= 0.0, "negative eigenvalue {l}");
        if l > 0.0 {
            -l * match base {
                LogBase::Bits => l.log2(),
                LogBase::Nats => l.ln(),
            }
        } else {
            0.0
        }
    })
    .sum()
}

pub fn dense_eigenvalues(s: &XState<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(dense(s))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn von_neumann_dense(s: &XState<f64>, base: LogBase) -> f64 {
    xlogx_sum(dense_eigenvalues(s).into_iter(), base)
}

fn entropy2(m: &Matrix2<C>, base: LogBase) -> f64 {
    xlogx_sum(SymmetricEigen::new(*m).eigenvalues.iter().copied(), base)
}

/// Tr_B ρ (A is the first qubit).
pub fn trace_b(rho: &Matrix4<C>) -> Matrix2<C> {
    Matrix2::from_fn(|i, j| (0..2).map(|k| rho[(2 * i + k, 2 * j + k)]).sum())
}

/// Tr_A ρ.
pub fn trace_a(rho: &Matrix4<C>) -> Matrix2<C> {
    Matrix2::from_fn(|i, j| (0..2).map(|k| rho[(2 * k + i, 2 * k + j)]).sum())
}

pub fn mutual_information_dense(s: &XState<f64>, base: LogBase) -> f64 {
    let rho = dense(s);
    entropy2(&trace_b(&rho), base) + entropy2(&trace_a(&rho), base) - von_neumann_dense(s, base)
}

/// I ⊗ M for a 2×2 operator on B.
pub fn on_b(m: &Matrix2<C>) -> Matrix4<C> {
    Matrix4::from_fn(|r, c| {
        let (ra, rb) = (r / 2, r % 2);
        let (ca, cb) = (c / 2, c % 2);
        if ra == ca {
            m[(rb, cb)]
        } else {
            C::new(0.0, 0.0)
        }
    })
}

/// `Σ_k p_k S(ρ_k^A)` with `ρ_k^A = Tr_B{(I⊗M_k)ρ}/p_k`, by explicit matrices.
pub fn conditional_entropy_dense(s: &XState<f64>, ops: &[Matrix2<C>], base: LogBase) -> f64 {
    let rho = dense(s);
    ops.iter()
        .map(|m| {
            let unnorm = trace_b(&(on_b(m) * rho));
            let p = unnorm.trace().re;
            if p <= 1e-14 {
                0.0
            } else {
                p * entropy2(&(unnorm / C::new(p, 0.0)), base)
            }
        })
        .sum()
}

/// `μ (I + m·σ)` as a dense matrix.
pub fn rank1(mu: f64, m: [f64; 3]) -> Matrix2<C> {
    Matrix2::new(
        C::new(mu * (1.0 + m[2]), 0.0),
        C::new(mu * m[0], -mu * m[1]),
        C::new(mu * m[0], mu * m[1]),
        C::new(mu * (1.0 - m[2]), 0.0),
    )
}

pub fn povm_ops(p: &Povm3<f64>) -> Vec<Matrix2<C>> {
    p.elements().map(|(mu, m)| rank1(mu, m)).collect()
}

pub fn projective_ops(n: [f64; 3]) -> Vec<Matrix2<C>> {
    vec![rank1(0.5, n), rank1(0.5, [-n[0], -n[1], -n[2]])]
}

/// Random valid X state: populations from normalized exponentials, coherences
/// a uniform fraction of the block-positivity bound.
pub fn random_xstate<R: Rng>(rng: &mut R) -> XState<f64> {
    let w: Vec<f64> = (0..4).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let t: f64 = w.iter().sum();
    let [a, b, c, d] = [w[0] / t, w[1] / t, w[2] / t, w[3] / t];
    let eps = rng.gen_range(-1.0..=1.0) * (a * d).sqrt() * 0.999_999;
    let delta = rng.gen_range(-1.0..=1.0) * (b * c).sqrt() * 0.999_999;
    XState::from_entries(a, b, c, d, eps, delta).expect("constructed inside the valid set")
}

pub fn random_unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x: &f64| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn benchmark(name: &str) -> XState<f64> {
    xdiscord::report::benchmark_states()
        .into_iter()
        .find(|s| s.name == name)
        .expect("bundled benchmark")
        .state
}
