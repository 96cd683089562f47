//! Brute-force reference path.
//!
//! Two methodologically independent routes are provided: the dense Hamiltonian
//! on a truncated Fock space evolved by eigendecomposition, and direct
//! adaptive integration of the unreduced four-amplitude equations for one
//! Fock index. Neither assumes `B = C`.

mod compare;
mod error;
mod hamiltonian;
mod ode;
mod params;
mod propagate;
mod state;

pub use compare::{compare, ColumnDeviation, ComparisonReport};
pub use error::OracleError;
pub use hamiltonian::{build_hamiltonian, deformed_ladder, HamiltonianMatrix, LEVELS};
pub use ode::{integrate_odes, ODE_ATOL, ODE_RTOL};
pub use params::{OracleParams, DEFAULT_FIELD_OMEGA};
pub use propagate::{eigen_amplitudes, evolve_exact, oracle_series, Propagator};
pub use state::{observables_from_state, reduced_density_from_state, FullState};

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::model::{ClosedFormMode, ModelConfig, NonlinearityKind};
    use crate::observables::{evolve_series, uniform_grid, ClosedFormSolution};

    fn presets() -> Vec<ModelConfig> {
        let mut out = Vec::new();
        for kind in [NonlinearityKind::Constant, NonlinearityKind::Harmonious] {
            for k in [1, 2] {
                for (chi, d1, d3) in [(0.0, 0.0, 0.0), (0.4, 0.0, 0.0), (0.0, 7.0, 15.0), (0.4, 7.0, 15.0)] {
                    out.push(ModelConfig { chi, delta1: d1, delta3: d3, k, nonlinearity: kind.clone(), ..ModelConfig::default() });
                }
            }
        }
        out
    }

    #[test]
    fn ode_and_eigen_routes_agree() {
        let grid: Vec<f64> = (0..=40).map(|i| 0.25 * i as f64).collect();
        for c in presets() {
            let p = OracleParams::from_model(&c, 1.0);
            for n in [0u64, 3, 10] {
                let ode = integrate_odes(&p, n, &grid).unwrap();
                let eig = eigen_amplitudes(&p, n as usize, &grid).unwrap();
                for (x, y) in ode.iter().zip(&eig) {
                    for j in 0..4 {
                        assert!((x[j] - y[j]).norm() < 1e-8, "{c:?} n={n}: {x:?} vs {y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_both_routes() {
        let grid = [0.0, 0.7, 3.0, 10.0];
        for c in presets() {
            let p = OracleParams::from_model(&c, 1.0);
            for n in [0u64, 5, 12] {
                let mode = ClosedFormMode::new(&c, n).unwrap();
                let eig = eigen_amplitudes(&p, n as usize, &grid).unwrap();
                for (t, e) in grid.iter().zip(&eig) {
                    let a = mode.at(*t);
                    assert!((a.a - e[0]).norm() < 1e-9, "{c:?} n={n} t={t}");
                    assert!((a.b - e[1]).norm() < 1e-9);
                    assert!((a.b - e[2]).norm() < 1e-9);
                    assert!((a.d - e[3]).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn degeneracy_forces_equal_middle_amplitudes() {
        let c = ModelConfig { chi: 0.4, delta1: 7.0, delta3: 15.0, ..ModelConfig::default() };
        let p = OracleParams::from_model(&c, 1.0);
        let grid: Vec<f64> = (0..=20).map(|i| 0.5 * i as f64).collect();
        for x in integrate_odes(&p, 4, &grid).unwrap() {
            assert!((x[1] - x[2]).norm() < 1e-9);
        }
    }

    #[test]
    fn broken_coupling_symmetry_splits_middle_amplitudes() {
        let mut p = OracleParams::from_model(&ModelConfig::default(), 1.0);
        p.lambdas[1] *= 1.1;
        let grid: Vec<f64> = (0..=20).map(|i| 0.5 * i as f64).collect();
        let split = integrate_odes(&p, 4, &grid)
            .unwrap()
            .iter()
            .map(|x| (x[1] - x[2]).norm())
            .fold(0.0, f64::max);
        assert!(split > 1e-3, "{split}");
    }

    #[test]
    fn series_agree_at_long_time() {
        let grid = uniform_grid(10.0, 41);
        for c in presets() {
            let closed = evolve_series(&c, &grid).unwrap();
            let nmax = closed.nmax as usize;
            let oracle = oracle_series(&c, &grid, DEFAULT_FIELD_OMEGA, nmax).unwrap();
            let report = compare(&closed, &oracle, 1e-8).unwrap();
            assert!(report.passed(), "{c:?}\n{report}");
        }
    }

    #[test]
    fn field_frequency_does_not_change_observables() {
        let c = ModelConfig { chi: 0.4, k: 2, ..ModelConfig::default() };
        let grid = uniform_grid(5.0, 11);
        let a = oracle_series(&c, &grid, 1.0, 60).unwrap();
        let b = oracle_series(&c, &grid, 2.5, 60).unwrap();
        assert!(compare(&a, &b, 1e-8).unwrap().passed());
    }

    #[test]
    fn perturbed_coupling_is_flagged() {
        let c = ModelConfig::default();
        let grid = uniform_grid(10.0, 41);
        let closed = evolve_series(&c, &grid).unwrap();
        let wrong = ModelConfig { lambda: 1.01, ..c.clone() };
        let oracle = oracle_series(&wrong, &grid, DEFAULT_FIELD_OMEGA, closed.nmax as usize).unwrap();
        let report = compare(&closed, &oracle, 1e-6).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn doubling_truncation_changes_nothing() {
        let c = ModelConfig { chi: 0.4, delta1: 7.0, delta3: 15.0, k: 2, ..ModelConfig::default() };
        let grid = uniform_grid(10.0, 21);
        let a = ClosedFormSolution::new(&c, 64).unwrap().series(&grid).unwrap();
        let b = ClosedFormSolution::new(&c, 128).unwrap().series(&grid).unwrap();
        assert!(compare(&a, &b, 1e-10).unwrap().passed());
    }

    #[test]
    fn complex_alpha_agrees() {
        let c = ModelConfig { alpha: Complex64::from_polar(10f64.sqrt(), 0.8), chi: 0.4, ..ModelConfig::default() };
        let grid = uniform_grid(10.0, 21);
        let closed = evolve_series(&c, &grid).unwrap();
        let oracle = oracle_series(&c, &grid, DEFAULT_FIELD_OMEGA, closed.nmax as usize).unwrap();
        let report = compare(&closed, &oracle, 1e-8).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn linear_coupling_squeezing_is_reproduced() {
        let c = ModelConfig::default();
        let grid = uniform_grid(25.0, 1001);
        let closed = evolve_series(&c, &grid).unwrap();
        let oracle = oracle_series(&c, &grid, DEFAULT_FIELD_OMEGA, closed.nmax as usize).unwrap();
        let min = |s: &crate::observables::TimeSeries| s.column("sx").unwrap().into_iter().fold(f64::INFINITY, f64::min);
        let (a, b) = (min(&closed), min(&oracle));
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        assert!(a < -0.25, "{a}");
    }
}
