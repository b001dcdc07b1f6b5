//! Post-processing of sweep curves.

use crate::error::{Error, Result};

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Residual sum of squares of the least-squares fit of
/// `a0 + sum_k (a_k cos(k w t) + b_k sin(k w t))`, `k = 1..=harmonics`.
pub fn harmonic_residual(t: &[f64], y: &[f64], w: f64, harmonics: usize) -> Option<f64> {
    let basis = |x: f64| {
        let mut v = vec![1.0];
        for k in 1..=harmonics {
            let a = k as f64 * w * x;
            v.push(a.cos());
            v.push(a.sin());
        }
        v
    };
    let m = 1 + 2 * harmonics;
    let mut ata = vec![vec![0.0; m]; m];
    let mut aty = vec![0.0; m];
    for (&x, &yy) in t.iter().zip(y) {
        let v = basis(x);
        for i in 0..m {
            aty[i] += v[i] * yy;
            for j in 0..m {
                ata[i][j] += v[i] * v[j];
            }
        }
    }
    let c = solve(ata, aty)?;
    Some(
        t.iter()
            .zip(y)
            .map(|(&x, &yy)| {
                let f: f64 = basis(x).iter().zip(&c).map(|(a, b)| a * b).sum();
                (yy - f).powi(2)
            })
            .sum(),
    )
}

/// Fundamental angular frequency in `[lo, hi]` minimizing the harmonic-fit
/// residual, refined by golden-section search around the best grid point.
pub fn fit_frequency(t: &[f64], y: &[f64], lo: f64, hi: f64, harmonics: usize) -> Result<f64> {
    if t.len() != y.len() || t.len() < 2 * harmonics + 2 {
        return Err(Error::InvalidParameter("too few points for the frequency fit".into()));
    }
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!("bad frequency window {lo}..{hi}")));
    }
    let r = |w: f64| harmonic_residual(t, y, w, harmonics).unwrap_or(f64::INFINITY);
    let steps = 2000;
    let dw = (hi - lo) / steps as f64;
    let best = (0..=steps).map(|i| lo + i as f64 * dw).min_by(|a, b| r(*a).total_cmp(&r(*b))).unwrap_or(lo);
    let (mut a, mut b) = ((best - dw).max(lo), (best + dw).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if r(c) < r(d) {
            b = d;
        } else {
            a = c;
        }
    }
    Ok((a + b) / 2.0)
}

/// Half-width of the contiguous region around `center` where `|y|` stays at
/// or above `fraction` of the peak `|y|`.
pub fn half_width(x: &[f64], y: &[f64], center: f64, fraction: f64) -> Result<f64> {
    if x.is_empty() || x.len() != y.len() {
        return Err(Error::InvalidParameter("empty or mismatched curve".into()));
    }
    let v: Vec<f64> = y.iter().map(|a| a.abs()).collect();
    let peak = v.iter().cloned().fold(0.0, f64::max);
    let thr = fraction * peak;
    let i0 = (0..x.len()).min_by(|&i, &j| (x[i] - center).abs().total_cmp(&(x[j] - center).abs())).unwrap_or(0);
    if v[i0] < thr {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (i0, i0);
    while lo > 0 && v[lo - 1] >= thr {
        lo -= 1;
    }
    while hi + 1 < x.len() && v[hi + 1] >= thr {
        hi += 1;
    }
    Ok((x[hi] - x[lo]) / 2.0)
}
