//! Real roots of polynomials up to degree four.
//!
//! Quadratics use the cancellation-free closed form. Cubics and quartics are
//! split at the roots of the derivative and each monotone piece is solved by
//! bracketed Newton, which stays accurate when the roots span many orders of
//! magnitude. Every root is polished on the original coefficients.

use alloc::vec::Vec;

/// Leading coefficients smaller than this fraction of the largest one are
/// dropped before solving.
const DEGREE_CUTOFF: f64 = 1e-14;
/// Roots closer than this (relative to `max(1, |x|)`) are merged.
const CLUSTER_TOL: f64 = 1e-8;

/// Evaluates `c[0] xⁿ + … + c[n]` by Horner's rule.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// `|p(x)| / Σ |cᵢ| |x|ⁱ`, the residual relative to the size of the terms.
pub fn relative_residual(coeffs: &[f64], x: f64) -> f64 {
    let scale = coeffs.iter().fold(0.0, |acc, &c| acc * x.abs() + c.abs());
    if scale == 0.0 {
        return 0.0;
    }
    eval(coeffs, x).abs() / scale
}

fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All real roots of `c[0] xⁿ + … + c[n]` (`n ≤ 4`), sorted ascending.
///
/// Repeated roots are reported once.
///
/// # Panics
///
/// If more than five coefficients are given.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    assert!(coeffs.len() <= 5, "degree above four is not supported");
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return Vec::new();
    }
    let start = coeffs
        .iter()
        .position(|c| c.abs() > DEGREE_CUTOFF * max)
        .unwrap_or(coeffs.len());
    let c = &coeffs[start..];
    let lead = c[0];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();

    let mut roots = match monic.len() {
        0 | 1 => Vec::new(),
        2 => alloc::vec![-monic[1]],
        3 => quadratic(monic[1], monic[2]),
        _ => bracketed(&monic),
    };

    for x in roots.iter_mut() {
        *x = polish(c, *x);
    }
    roots.sort_by(f64::total_cmp);
    dedup_clustered(c, roots)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    let mut best = eval(coeffs, x).abs();
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, x);
        if p == 0.0 || dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        let r = eval(coeffs, next).abs();
        if !(r < best) {
            break;
        }
        best = r;
        x = next;
    }
    x
}

fn dedup_clustered(coeffs: &[f64], roots: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for x in roots {
        match out.last_mut() {
            Some(prev) if (x - *prev).abs() <= CLUSTER_TOL * x.abs().max(1.0) => {
                if eval(coeffs, x).abs() < eval(coeffs, *prev).abs() {
                    *prev = x;
                }
            }
            _ => out.push(x),
        }
    }
    out
}

/// `x² + b x + c`.
fn quadratic(b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * c;
    let scale = b * b + 4.0 * c.abs();
    if disc < 0.0 {
        if disc > -1e-14 * scale {
            return alloc::vec![-0.5 * b];
        }
        return Vec::new();
    }
    let sq = libm::sqrt(disc);
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    if q == 0.0 {
        return alloc::vec![0.0, 0.0];
    }
    alloc::vec![q, c / q]
}

/// Monic `p` of degree at least three. Critical points (roots of `p′`)
/// split `[−B, B]`, with `B` the Cauchy bound, into monotone pieces; each
/// sign change is refined by bracketed Newton. Critical points where `p`
/// touches zero without changing sign are reported as repeated roots.
fn bracketed(p: &[f64]) -> Vec<f64> {
    let n = p.len() - 1;
    let bound = 1.0 + p[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let dp: Vec<f64> = p[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (n - i) as f64)
        .collect();
    let mut knots = alloc::vec![-bound];
    knots.extend(real_roots(&dp).into_iter().filter(|x| x.abs() < bound));
    knots.push(bound);

    let values: Vec<f64> = knots.iter().map(|&x| eval(p, x)).collect();
    let mut crossed = alloc::vec![false; knots.len() - 1];
    let mut out = Vec::new();
    for i in 0..knots.len() - 1 {
        let (flo, fhi) = (values[i], values[i + 1]);
        if flo != 0.0 && fhi != 0.0 && (flo < 0.0) != (fhi < 0.0) {
            out.push(refine(p, knots[i], knots[i + 1], flo));
            crossed[i] = true;
        }
    }
    for i in 1..knots.len() - 1 {
        let touching = values[i] == 0.0
            || (relative_residual(p, knots[i]) < 1e-12 && !crossed[i - 1] && !crossed[i]);
        if touching {
            out.push(knots[i]);
        }
    }
    out
}

/// Root of `p` in `(lo, hi)` given a sign change, `flo = p(lo)`.
fn refine(p: &[f64], mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, df) = eval_with_derivative(p, x);
        if f == 0.0 {
            return x;
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs() || hi - lo <= f64::EPSILON * x.abs() {
            return next;
        }
        x = next;
    }
    x
}
