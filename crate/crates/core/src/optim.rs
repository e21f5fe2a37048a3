//! Box-constrained Nelder-Mead simplex minimisation.
//!
//! Trial points are projected onto the box before evaluation, so every
//! objective call sees a point inside the bounds. The objective may return
//! `+inf` for infeasible points.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Initial edge length as a fraction of each box side.
    pub initial_step: f64,
    /// Stop when `|f_worst - f_best| <= rel_tol * max(|f_best|, 1)`.
    pub rel_tol: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { initial_step: 0.1, rel_tol: 1e-3, max_iterations: 400 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, lo), hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(*lo, *hi);
    }
}

fn blend(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Minimises `f` over the box `[lower, upper]` starting from `start`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &SimplexOptions,
) -> SimplexResult {
    let dim = start.len();
    assert!(lower.len() == dim && upper.len() == dim, "bounds dimension mismatch");
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut x0 = start.to_vec();
    project(&mut x0, lower, upper);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(&x0, &mut evaluations);
    simplex.push((x0.clone(), f0));
    for i in 0..dim {
        let mut x = x0.clone();
        let step = opts.initial_step * (upper[i] - lower[i]);
        // step inward when the start sits on the upper bound
        x[i] = if x[i] + step <= upper[i] { x[i] + step } else { x[i] - step };
        project(&mut x, lower, upper);
        let fx = eval(&x, &mut evaluations);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if best.is_finite() && worst.is_finite() && (worst - best).abs() <= opts.rel_tol * best.abs().max(1.0) {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let worst_x = simplex[dim].0.clone();
        let second_worst = simplex[dim - 1].1;

        let mut reflected = blend(&centroid, &worst_x, -1.0);
        project(&mut reflected, lower, upper);
        let fr = eval(&reflected, &mut evaluations);

        if fr < best {
            let mut expanded = blend(&centroid, &worst_x, -2.0);
            project(&mut expanded, lower, upper);
            let fe = eval(&expanded, &mut evaluations);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < second_worst {
            simplex[dim] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst {
            let c = blend(&centroid, &reflected, 0.5);
            let fc = eval(&c, &mut evaluations);
            (c, fc)
        } else {
            let c = blend(&centroid, &worst_x, 0.5);
            let fc = eval(&c, &mut evaluations);
            (c, fc)
        };
        if fc < worst.min(fr) {
            simplex[dim] = (contracted, fc);
            continue;
        }
        // shrink towards the best vertex
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = blend(&best_x, &vertex.0, 0.5);
            let fx = eval(&x, &mut evaluations);
            *vertex = (x, fx);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexResult { x, value, iterations, evaluations, converged }
}
