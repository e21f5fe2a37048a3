//! Adaptive Gauss-Kronrod (7/15) integration on finite intervals.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the odd Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 50;

/// Tolerances for [`integrate`]. A panel is accepted when its Kronrod-Gauss
/// difference is below `max(abs, rel * |estimate of the whole integral|)`
/// scaled by the panel's share of the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-18, rel: 1e-6 }
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let (est, err) = gk15(f, a, b);
    if !est.is_finite() {
        return Err(Error::numerical(format!("non-finite integrand on [{a}, {b}]")));
    }
    if err <= tol * (b - a) / whole || depth >= MAX_DEPTH {
        return Ok(est);
    }
    let mid = 0.5 * (a + b);
    Ok(refine(f, a, mid, whole, tol, depth + 1)? + refine(f, mid, b, whole, tol, depth + 1)?)
}

/// Integrates `f` over `[a, b]`, first splitting at any `breakpoints` that
/// fall strictly inside the interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breakpoints: &[f64], tol: Tolerance) -> Result<f64> {
    if !(b > a) {
        return if a == b { Ok(0.0) } else { Err(Error::domain("integration bounds reversed")) };
    }
    let mut edges = vec![a];
    edges.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);

    let rough: f64 = edges.windows(2).map(|w| gk15(&f, w[0], w[1]).0).sum();
    if !rough.is_finite() {
        return Err(Error::numerical("non-finite integrand"));
    }
    let target = tol.abs.max(tol.rel * rough.abs());
    let width = b - a;
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += refine(&f, w[0], w[1], width, target, 0)?;
    }
    Ok(total)
}
