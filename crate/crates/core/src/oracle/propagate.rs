use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    build_hamiltonian, observables_from_state, FullState, HamiltonianMatrix, OracleError,
    OracleParams,
};
use crate::model::ModelConfig;
use crate::observables::TimeSeries;

/// `exp(-iHt)` through one eigendecomposition of the real symmetric `H`.
#[derive(Clone, Debug)]
pub struct Propagator {
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(h: &HamiltonianMatrix) -> Result<Self, OracleError> {
        let eig = SymmetricEigen::try_new(h.matrix.clone(), f64::EPSILON, 0)
            .ok_or_else(|| OracleError::Eigen(format!("dimension {} did not converge", h.dim())))?;
        if eig.eigenvalues.iter().any(|e| !e.is_finite()) {
            return Err(OracleError::Eigen("non-finite eigenvalue".into()));
        }
        Ok(Self { energies: eig.eigenvalues, vectors: eig.eigenvectors })
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    /// Eigenbasis coefficients `Vᵀ ψ`.
    pub fn coefficients(&self, psi: &FullState) -> DVector<Complex64> {
        let re = self.vectors.tr_mul(&psi.amps.map(|z| z.re));
        let im = self.vectors.tr_mul(&psi.amps.map(|z| z.im));
        re.zip_map(&im, Complex64::new)
    }

    /// State at `t0 + t` given eigenbasis coefficients at `t0`.
    pub fn state_from(&self, coeffs: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let rotated = coeffs.zip_map(&self.energies, |c, e| c * Complex64::from_polar(1.0, -e * t));
        let re = &self.vectors * rotated.map(|z| z.re);
        let im = &self.vectors * rotated.map(|z| z.im);
        re.zip_map(&im, Complex64::new)
    }

    pub fn evolve(&self, psi0: &FullState, t: f64) -> FullState {
        FullState { amps: self.state_from(&self.coefficients(psi0), t), t: psi0.t + t }
    }
}

pub fn evolve_exact(h: &HamiltonianMatrix, psi0: &FullState, t: f64) -> Result<FullState, OracleError> {
    Ok(Propagator::new(h)?.evolve(psi0, t))
}

/// Raw amplitudes `(A, B, C, D)` for the subspace seeded by `|1, n⟩`, with the
/// free phases `γ_j t` removed.
pub fn eigen_amplitudes(
    params: &OracleParams,
    n: usize,
    t_grid: &[f64],
) -> Result<Vec<[Complex64; 4]>, OracleError> {
    let k = params.k as usize;
    // excitation number is conserved; the seeded subspace needs nothing above n + 2k
    let nmax = n + 2 * k;
    let h = build_hamiltonian(params, nmax)?;
    let prop = Propagator::new(&h)?;
    let coeffs = prop.coefficients(&FullState::basis(1, n, nmax));
    let gammas = params.gammas(n as u64);
    let slots = [
        HamiltonianMatrix::index(1, n),
        HamiltonianMatrix::index(2, n + k),
        HamiltonianMatrix::index(3, n + k),
        HamiltonianMatrix::index(4, n + 2 * k),
    ];
    Ok(t_grid
        .iter()
        .map(|&t| {
            let psi = prop.state_from(&coeffs, t);
            let mut out = [Complex64::new(0.0, 0.0); 4];
            for j in 0..4 {
                out[j] = psi[slots[j]] * Complex64::from_polar(1.0, gammas[j] * t);
            }
            out
        })
        .collect())
}

/// Observables from exact evolution of `|1⟩ ⊗ Σ_{n ≤ n_init} q_n |n⟩`.
///
/// The Fock space is padded by `2k` above `n_init` so no populated subspace
/// touches the truncation edge.
pub fn oracle_series(
    config: &ModelConfig,
    t_grid: &[f64],
    field_omega: f64,
    n_init: usize,
) -> Result<TimeSeries, OracleError> {
    config.validate()?;
    let params = OracleParams::from_model(config, field_omega);
    let nmax = n_init + 2 * config.k as usize;
    let h = build_hamiltonian(&params, nmax)?;
    let prop = Propagator::new(&h)?;
    let psi0 = FullState::upper_level_coherent(config.alpha, n_init, nmax);
    let coeffs = prop.coefficients(&psi0);
    let records = t_grid
        .par_iter()
        .map(|&t| {
            let psi = FullState { amps: prop.state_from(&coeffs, t), t };
            observables_from_state(&psi, config.k, field_omega, t)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TimeSeries { config: config.clone(), nmax: n_init as u64, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NonlinearityKind;

    #[test]
    fn zero_time_is_identity() {
        let p = OracleParams::from_model(&ModelConfig { chi: 0.4, ..ModelConfig::default() }, 1.0);
        let h = build_hamiltonian(&p, 20).unwrap();
        let psi0 = FullState::upper_level_coherent(Complex64::new(2.0, 0.5), 16, 20);
        let psi = evolve_exact(&h, &psi0, 0.0).unwrap();
        assert!((psi.amps - psi0.amps).norm() < 1e-13);
    }

    #[test]
    fn diagonal_hamiltonian_gives_phases() {
        let mut p = OracleParams::from_model(&ModelConfig::default(), 1.3);
        p.lambdas = [0.0; 4];
        p.chi = 0.2;
        let h = build_hamiltonian(&p, 6).unwrap();
        let mut psi0 = FullState::zeros(6);
        for (i, z) in psi0.amps.iter_mut().enumerate() {
            *z = Complex64::new(1.0 + i as f64, -0.5 * i as f64);
        }
        let t = 2.7;
        let psi = evolve_exact(&h, &psi0, t).unwrap();
        for i in 0..h.dim() {
            let want = psi0.amps[i] * Complex64::from_polar(1.0, -h.matrix[(i, i)] * t);
            assert!((psi.amps[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn conserves_norm_and_energy() {
        for kind in [NonlinearityKind::Constant, NonlinearityKind::Harmonious] {
            let c = ModelConfig { chi: 0.4, delta1: 7.0, delta3: 15.0, k: 2, nonlinearity: kind, ..ModelConfig::default() };
            let p = OracleParams::from_model(&c, 1.0);
            let h = build_hamiltonian(&p, 68).unwrap();
            let prop = Propagator::new(&h).unwrap();
            let psi0 = FullState::upper_level_coherent(c.alpha, 64, 68);
            let e0 = psi0.expectation(&h);
            for t in [1.0, 10.0, 25.0, 50.0] {
                let psi = prop.evolve(&psi0, t);
                assert!((psi.norm() - 1.0).abs() < 1e-10);
                assert!((psi.expectation(&h) - e0).abs() < 1e-8 * e0.abs().max(1.0));
            }
        }
    }

    #[test]
    fn resonant_vacuum_amplitudes() {
        let c = ModelConfig::default();
        let p = OracleParams::from_model(&c, 1.0);
        let grid: Vec<f64> = (0..20).map(|i| 0.5 * i as f64).collect();
        let amps = eigen_amplitudes(&p, 0, &grid).unwrap();
        let s6 = 6f64.sqrt();
        for (t, a) in grid.iter().zip(amps) {
            let (sn, cs) = (s6 * t).sin_cos();
            assert!((a[0] - Complex64::new(2.0 / 3.0 + cs / 3.0, 0.0)).norm() < 1e-12);
            assert!((a[1] - Complex64::new(0.0, -sn / s6)).norm() < 1e-12);
            assert!((a[1] - a[2]).norm() < 1e-12);
        }
    }
}
