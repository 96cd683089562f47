use nalgebra::SVector;
use num_complex::Complex64;
use ode_solvers::dopri5::Dopri5;
use ode_solvers::{OutputType, System};

use super::{OracleError, OracleParams};
use crate::model::NonlinearityKind;

pub const ODE_RTOL: f64 = 1e-12;
pub const ODE_ATOL: f64 = 1e-14;

type State = SVector<f64, 8>;

/// `√(m!/n!) [f(m)]!/[f(n)]!` as a direct product of `√j f(j)` over `n < j ≤ m`.
fn ladder_product(kind: &NonlinearityKind, n: u64, m: u64) -> Result<f64, OracleError> {
    let mut p = 1.0;
    for j in n + 1..=m {
        p *= (j as f64).sqrt() * kind.ln_value(j)?.exp();
    }
    Ok(p)
}

struct Unreduced {
    f: [f64; 2],
    g: [f64; 2],
    v: [f64; 3],
    d: [f64; 4],
}

impl Unreduced {
    fn new(p: &OracleParams, n: u64) -> Result<Self, OracleError> {
        let k = u64::from(p.k);
        let e = ladder_product(&p.nonlinearity, n, n + k)?;
        let e2 = ladder_product(&p.nonlinearity, n + k, n + 2 * k)?;
        let kerr = |m: u64| p.chi * m as f64 * (m as f64 - 1.0);
        Ok(Self {
            f: [p.lambdas[0] * e, p.lambdas[1] * e],
            g: [p.lambdas[2] * e2, p.lambdas[3] * e2],
            v: [kerr(n), kerr(n + k), kerr(n + 2 * k)],
            d: p.detunings(),
        })
    }
}

fn unpack(y: &State) -> [Complex64; 4] {
    [
        Complex64::new(y[0], y[1]),
        Complex64::new(y[2], y[3]),
        Complex64::new(y[4], y[5]),
        Complex64::new(y[6], y[7]),
    ]
}

impl System<f64, State> for Unreduced {
    fn system(&self, t: f64, y: &State, dy: &mut State) {
        let [a, b, c, d] = unpack(y);
        let ph = |x: f64| Complex64::from_polar(1.0, x * t);
        let [d1, d2, d3, d4] = self.d;
        let rhs = [
            self.v[0] * a + self.f[0] * ph(-d1) * b + self.f[1] * ph(-d2) * c,
            self.v[1] * b + self.f[0] * ph(d1) * a + self.g[0] * ph(-d3) * d,
            self.v[1] * c + self.f[1] * ph(d2) * a + self.g[1] * ph(-d4) * d,
            self.v[2] * d + self.g[0] * ph(d3) * b + self.g[1] * ph(d4) * c,
        ];
        for (j, r) in rhs.iter().enumerate() {
            // dX/dt = -i rhs
            dy[2 * j] = r.im;
            dy[2 * j + 1] = -r.re;
        }
    }
}

/// Integrates the four unreduced amplitude equations for Fock index `n`
/// from `(1, 0, 0, 0)` at `t = 0`, returning `(A, B, C, D)` on `t_grid`.
pub fn integrate_odes(
    params: &OracleParams,
    n: u64,
    t_grid: &[f64],
) -> Result<Vec<[Complex64; 4]>, OracleError> {
    let mut y = State::zeros();
    y[0] = 1.0;
    let mut t = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &target in t_grid {
        if !(target >= t) {
            return Err(OracleError::GridMismatch(format!("grid must be ascending from 0, got {target}")));
        }
        if target > t {
            let sys = Unreduced::new(params, n)?;
            let span = target - t;
            let mut solver = Dopri5::from_param(
                sys, t, target, span, y, ODE_RTOL, ODE_ATOL, 0.9, 0.04, 0.2, 10.0, span, 0.0,
                10_000_000, u32::MAX, OutputType::Sparse,
            );
            solver
                .integrate()
                .map_err(|e| OracleError::Integration(format!("n = {n}: {e}")))?;
            let (&tx, &yx) = solver
                .x_out()
                .last()
                .zip(solver.y_out().last())
                .ok_or_else(|| OracleError::Integration("solver produced no output".into()))?;
            if (tx - target).abs() > 1e-9 * target.max(1.0) {
                return Err(OracleError::Integration(format!("stopped at {tx}, wanted {target}")));
            }
            y = yx;
            t = target;
        }
        out.push(unpack(&y));
    }
    Ok(out)
}
