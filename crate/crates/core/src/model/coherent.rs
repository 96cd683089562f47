use num_complex::Complex64;

use crate::sum::CompensatedSum;

/// Default bound on the discarded Poisson tail.
pub const DEFAULT_TAIL: f64 = 1e-15;

/// Log-magnitudes `ln|q_n|` for `n = 0..=nmax`, or `None` for the vacuum.
fn ln_magnitudes(alpha: Complex64, nmax: u64) -> Option<Vec<f64>> {
    let r2 = alpha.norm_sqr();
    if r2 == 0.0 {
        return None;
    }
    let ln_r = 0.5 * r2.ln();
    let mut acc = CompensatedSum::new();
    acc.add(-0.5 * r2);
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(acc.value());
    for m in 1..=nmax {
        acc.add(ln_r);
        acc.add(-0.5 * (m as f64).ln());
        out.push(acc.value());
    }
    Some(out)
}

fn weight_from_ln(alpha: Complex64, n: u64, ln_mag: f64) -> Complex64 {
    let theta = alpha.arg() * n as f64;
    Complex64::from_polar(ln_mag.exp(), theta)
}

/// Coherent-state amplitude `q_n = exp(-|α|²/2) αⁿ / sqrt(n!)`, evaluated in
/// log space.
pub fn coherent_weight(alpha: Complex64, n: u64) -> Complex64 {
    match ln_magnitudes(alpha, n) {
        None => Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0),
        Some(ln) => weight_from_ln(alpha, n, ln[n as usize]),
    }
}

/// All weights `q_0 ..= q_nmax`.
pub fn coherent_weights(alpha: Complex64, nmax: u64) -> Vec<Complex64> {
    match ln_magnitudes(alpha, nmax) {
        None => (0..=nmax)
            .map(|n| Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0))
            .collect(),
        Some(ln) => ln
            .iter()
            .enumerate()
            .map(|(n, &l)| weight_from_ln(alpha, n as u64, l))
            .collect(),
    }
}

fn safety_floor(mean: f64) -> u64 {
    (mean + 10.0 * (mean + 1.0).sqrt() + 20.0).ceil() as u64
}

/// Smallest `Nmax` whose discarded tail `Σ_{n>Nmax} |q_n|²` is below
/// `epsilon`, but never below a floor of `|α|² + 10 sqrt(|α|²+1) + 20`.
pub fn truncation_bound(alpha: Complex64, epsilon: f64) -> u64 {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    let mean = alpha.norm_sqr();
    let floor = safety_floor(mean);
    // Far enough out that the remaining Poisson mass is far below f64 range.
    let far = (mean + 40.0 * (mean + 1.0).sqrt() + 200.0).ceil() as u64;
    let probs: Vec<f64> = coherent_weights(alpha, far)
        .iter()
        .map(|q| q.norm_sqr())
        .collect();
    let mut tail = CompensatedSum::new();
    let mut best = far;
    for n in (0..far as usize).rev() {
        tail.add(probs[n + 1]);
        if tail.value() < epsilon {
            best = n as u64;
        } else {
            break;
        }
    }
    best.max(floor)
}
