use serde::Serialize;

use super::{CubicCoefficients, ModelError};

/// Real roots of the characteristic cubic, sorted `μ₁ ≥ μ₂ ≥ μ₃`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootTriple {
    pub mu: [f64; 3],
    pub phi: f64,
}

/// Slack allowed when clamping the arccos argument back into [-1, 1].
const ACOS_SLACK: f64 = 1e-12;
/// Relative residual tolerance after Newton polishing.
pub(crate) const RESIDUAL_TOL: f64 = 1e-9;
const NEWTON_STEPS: usize = 2;

impl CubicCoefficients {
    pub fn eval(&self, mu: f64) -> f64 {
        ((mu + self.x1) * mu + self.x2) * mu + self.x3
    }

    fn derivative(&self, mu: f64) -> f64 {
        (3.0 * mu + 2.0 * self.x1) * mu + self.x2
    }

    /// Scale against which root residuals are judged.
    pub fn residual_scale(&self) -> f64 {
        1f64.max(self.x1.abs().powi(3))
            .max(self.x2.abs().powf(1.5))
            .max(self.x3.abs())
    }

    pub fn residual_tolerance(&self) -> f64 {
        RESIDUAL_TOL * self.residual_scale()
    }
}

impl RootTriple {
    pub fn max_abs(&self) -> f64 {
        self.mu.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn polish(c: &CubicCoefficients, mut mu: f64) -> f64 {
    let mut r = c.eval(mu).abs();
    for _ in 0..NEWTON_STEPS {
        let d = c.derivative(mu);
        if d == 0.0 || r == 0.0 {
            break;
        }
        let next = mu - c.eval(mu) / d;
        let rn = c.eval(next).abs();
        if rn <= r {
            mu = next;
            r = rn;
        } else {
            break;
        }
    }
    mu
}

/// Trigonometric (Viète) solution for three real roots, followed by Newton
/// polishing.
pub fn solve_cubic(c: &CubicCoefficients) -> Result<RootTriple, ModelError> {
    let CubicCoefficients { x1, x2, x3 } = *c;
    if !(x1.is_finite() && x2.is_finite() && x3.is_finite()) {
        return Err(ModelError::NumericRange(format!("cubic coefficients {c:?}")));
    }
    let p = x1 * x1 - 3.0 * x2;
    let scale2 = 1f64.max(x1 * x1).max(x2.abs()).max(x3.abs().powf(2.0 / 3.0));
    if p <= 1e-18 * scale2 {
        return Err(ModelError::degenerate(format!(
            "x1^2 - 3 x2 = {p:e}: triple or complex roots"
        )));
    }
    let mut arg = (9.0 * x1 * x2 - 2.0 * x1.powi(3) - 27.0 * x3) / (2.0 * p.powf(1.5));
    if arg.abs() > 1.0 + ACOS_SLACK {
        return Err(ModelError::degenerate(format!(
            "arccos argument {arg} outside [-1, 1]"
        )));
    }
    arg = arg.clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    let amp = 2.0 / 3.0 * p.sqrt();
    let shift = -x1 / 3.0;
    let mut mu = [0.0; 3];
    for (j, m) in mu.iter_mut().enumerate() {
        let raw = shift + amp * (phi + 2.0 * std::f64::consts::PI * j as f64 / 3.0).cos();
        *m = polish(c, raw);
    }
    mu.sort_by(|a, b| b.total_cmp(a));

    let tol = c.residual_tolerance();
    for m in mu {
        let r = c.eval(m).abs();
        if r > tol {
            return Err(ModelError::degenerate(format!(
                "root {m} leaves residual {r:e} > {tol:e}"
            )));
        }
    }
    Ok(RootTriple { mu, phi })
}
