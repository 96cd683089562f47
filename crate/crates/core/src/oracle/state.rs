use nalgebra::{DVector, Matrix4};
use num_complex::Complex64;

use super::{HamiltonianMatrix, OracleError, LEVELS};
use crate::model::coherent_weights;
use crate::observables::{concurrence, linear_entropy, mandel_q, ObservableRecord, ReducedDensityMatrix};

/// Full atom–field state vector in the Fock-major basis of
/// [`HamiltonianMatrix`].
#[derive(Clone, Debug, PartialEq)]
pub struct FullState {
    pub amps: DVector<Complex64>,
    pub t: f64,
}

impl FullState {
    pub fn zeros(nmax: usize) -> Self {
        Self { amps: DVector::zeros(LEVELS * (nmax + 1)), t: 0.0 }
    }

    /// `|level, n⟩`.
    pub fn basis(level: usize, n: usize, nmax: usize) -> Self {
        let mut s = Self::zeros(nmax);
        s.amps[HamiltonianMatrix::index(level, n)] = Complex64::new(1.0, 0.0);
        s
    }

    /// `|1⟩ ⊗ Σ_{n ≤ n_init} q_n |n⟩` embedded in a space of `nmax ≥ n_init`.
    pub fn upper_level_coherent(alpha: Complex64, n_init: usize, nmax: usize) -> Self {
        assert!(n_init <= nmax);
        let mut s = Self::zeros(nmax);
        for (n, q) in coherent_weights(alpha, n_init as u64).into_iter().enumerate() {
            s.amps[HamiltonianMatrix::index(1, n)] = q;
        }
        s
    }

    pub fn nmax(&self) -> usize {
        self.amps.len() / LEVELS - 1
    }

    pub fn component(&self, level: usize, n: usize) -> Complex64 {
        self.amps[HamiltonianMatrix::index(level, n)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn expectation(&self, h: &HamiltonianMatrix) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, col) in h.matrix.column_iter().enumerate() {
            let mut hpsi = Complex64::new(0.0, 0.0);
            for (i, hij) in col.iter().enumerate() {
                if *hij != 0.0 {
                    hpsi += self.amps[i].conj() * *hij;
                }
            }
            acc += hpsi * self.amps[j];
        }
        acc.re
    }
}

/// Per-level excitation offset in units of `k`, used to move atomic
/// coherences into the frame co-rotating with `k` field quanta.
const LADDER_RANK: [f64; LEVELS] = [2.0, 1.0, 1.0, 0.0];

/// Partial trace over the field, rotated so coherences carry the
/// `exp(iΔt)` phases of the closed-form expressions.
pub fn reduced_density_from_state(psi: &FullState, k: u32, field_omega: f64) -> ReducedDensityMatrix {
    let nmax = psi.nmax();
    let mut rho = Matrix4::<Complex64>::zeros();
    for i in 0..LEVELS {
        for j in 0..LEVELS {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..=nmax {
                acc += psi.component(i + 1, n) * psi.component(j + 1, n).conj();
            }
            let rot = f64::from(k) * field_omega * psi.t * (LADDER_RANK[i] - LADDER_RANK[j]);
            rho[(i, j)] = acc * Complex64::from_polar(1.0, rot);
        }
    }
    ReducedDensityMatrix { rho, t: psi.t }
}

/// Applies `(a e^{iΩt} + a† e^{-iΩt}) / 2` (or the `y` quadrature) to the state.
fn apply_quadrature(psi: &FullState, field_omega: f64, y_quadrature: bool) -> DVector<Complex64> {
    let nmax = psi.nmax();
    let rot = Complex64::from_polar(1.0, field_omega * psi.t);
    // x = (a' + a'†)/2, y = (a' - a'†)/(2i) with a' = a e^{iΩt}
    let (ca, cad) = if y_quadrature {
        (rot / Complex64::new(0.0, 2.0), -rot.conj() / Complex64::new(0.0, 2.0))
    } else {
        (rot * 0.5, rot.conj() * 0.5)
    };
    let mut out = DVector::zeros(psi.amps.len());
    for level in 1..=LEVELS {
        for n in 0..=nmax {
            let src = psi.component(level, n);
            if src == Complex64::new(0.0, 0.0) {
                continue;
            }
            if n >= 1 {
                out[HamiltonianMatrix::index(level, n - 1)] += ca * (n as f64).sqrt() * src;
            }
            if n < nmax {
                out[HamiltonianMatrix::index(level, n + 1)] += cad * ((n + 1) as f64).sqrt() * src;
            }
        }
    }
    out
}

/// `4 Var(q) − 1` for a Hermitian quadrature `q`, from `‖qψ‖²` and `⟨ψ|qψ⟩`.
fn normalized_variance(psi: &FullState, field_omega: f64, y_quadrature: bool) -> f64 {
    let qpsi = apply_quadrature(psi, field_omega, y_quadrature);
    let second: f64 = qpsi.iter().map(|z| z.norm_sqr()).sum();
    let first: Complex64 = psi.amps.iter().zip(qpsi.iter()).map(|(a, b)| a.conj() * b).sum();
    4.0 * (second - first.re * first.re) - 1.0
}

/// Observables read directly off a full state vector.
pub fn observables_from_state(
    psi: &FullState,
    k: u32,
    field_omega: f64,
    t: f64,
) -> Result<ObservableRecord, OracleError> {
    let mut psi = psi.clone();
    psi.t = t;
    let rho = reduced_density_from_state(&psi, k, field_omega);
    let nmax = psi.nmax();
    let (mut m1, mut m2) = (0.0, 0.0);
    for n in 0..=nmax {
        let p: f64 = (1..=LEVELS).map(|l| psi.component(l, n).norm_sqr()).sum();
        m1 += n as f64 * p;
        m2 += (n * n) as f64 * p;
    }
    Ok(ObservableRecord {
        t,
        entropy: linear_entropy(&rho)?,
        concurrence: concurrence(&rho),
        mandel: mandel_q(m1, m2)?,
        mean_n: m1,
        mean_n2: m2,
        sx: normalized_variance(&psi, field_omega, false),
        sy: normalized_variance(&psi, field_omega, true),
    })
}
