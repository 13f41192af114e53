//! Hooke–Jeeves pattern search with shrinking steps.

use crate::real::Real;

#[derive(Debug, Clone, Copy)]
pub struct PatternResult<T, const N: usize> {
    pub x: [T; N],
    pub value: T,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0`. Each coordinate moves by `scale * steps[i]`; the
/// scale halves whenever no exploratory move improves, and the search stops
/// once `scale * max(steps) < tol` or after `max_iters` exploratory sweeps.
/// `project` maps every trial point back into the feasible set.
pub fn pattern_search<T, F, P, const N: usize>(
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
    let max_step = steps.iter().fold(T::zero(), |m, s| m.max(s.abs()));
    let mut evals = 0usize;
    let mut eval = |x: &[T; N]| {
        evals += 1;
        f(x)
    };

    let mut base = x0;
    project(&mut base);
    let mut f_base = eval(&base);
    let mut scale = T::one();
    let mut converged = false;

    for _ in 0..max_iters {
        if scale * max_step < tol {
            converged = true;
            break;
        }
        let (mut x_new, mut f_new) = explore(&mut eval, &project, base, f_base, &steps, scale);
        if f_new < f_base {
            // pattern moves along the improving direction while they keep paying off
            loop {
                let mut trial = [T::zero(); N];
                for i in 0..N {
                    trial[i] = x_new[i] + (x_new[i] - base[i]);
                }
                project(&mut trial);
                base = x_new;
                f_base = f_new;
                let f_trial = eval(&trial);
                let (x_p, f_p) = explore(&mut eval, &project, trial, f_trial, &steps, scale);
                if f_p < f_base {
                    x_new = x_p;
                    f_new = f_p;
                } else {
                    break;
                }
            }
        } else {
            scale = scale * T::lit(0.5);
        }
    }
    if scale * max_step < tol {
        converged = true;
    }
    PatternResult {
        x: base,
        value: f_base,
        evals,
        converged,
    }
}

fn explore<T, E, P, const N: usize>(
    eval: &mut E,
    project: &P,
    mut x: [T; N],
    mut fx: T,
    steps: &[T; N],
    scale: T,
) -> ([T; N], T)
where
    T: Real,
    E: FnMut(&[T; N]) -> T,
    P: Fn(&mut [T; N]),
{
    for i in 0..N {
        let h = steps[i] * scale;
        if h == T::zero() {
            continue;
        }
        for dir in [h, -h] {
            let mut trial = x;
            trial[i] = trial[i] + dir;
            project(&mut trial);
            let ft = eval(&trial);
            if ft < fx {
                x = trial;
                fx = ft;
                break;
            }
        }
    }
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64; 2]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = pattern_search(f, |_| {}, [-1.2, 1.0], [0.5, 0.5], 1e-12, 1_000_000);
        assert!(r.converged);
        assert!(
            (r.x[0] - 1.0).abs() < 1e-4 && (r.x[1] - 1.0).abs() < 1e-4,
            "{:?}",
            r.x
        );
    }

    #[test]
    fn respects_projection() {
        let f = |x: &[f64; 1]| (x[0] - 3.0).powi(2);
        let r = pattern_search(f, |x| x[0] = x[0].min(1.0), [0.0], [0.25], 1e-12, 10_000);
        assert!((r.x[0] - 1.0).abs() < 1e-12);
        assert!((r.value - 4.0).abs() < 1e-10);
    }

    #[test]
    fn never_worse_than_start() {
        let f = |x: &[f64; 2]| (x[0] * 3.0).sin() + x[1].cos();
        let start = [0.3, -2.0];
        let r = pattern_search(f, |_| {}, start, [0.1, 0.1], 1e-9, 10_000);
        assert!(r.value <= f(&start));
    }

    #[test]
    fn iteration_cap_reports_unconverged() {
        let f = |x: &[f64; 2]| x[0] * x[0] + x[1] * x[1];
        let r = pattern_search(f, |_| {}, [5.0, 5.0], [1.0, 1.0], 1e-12, 3);
        assert!(!r.converged);
    }
}
