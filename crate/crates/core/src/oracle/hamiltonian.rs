use nalgebra::DMatrix;

use super::{OracleError, OracleParams};
use crate::model::{f_deform, NonlinearityKind};

/// Number of atomic levels.
pub const LEVELS: usize = 4;

/// Dense Hamiltonian on `{|level, n⟩ : n ≤ nmax}`.
///
/// Basis layout is Fock-major: index `4 n + (level - 1)`. All matrix elements
/// are real, so the matrix is stored as real symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianMatrix {
    pub matrix: DMatrix<f64>,
    pub nmax: usize,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Index of `|level, n⟩` with `level` in `1..=4`.
    pub fn index(level: usize, n: usize) -> usize {
        debug_assert!((1..=LEVELS).contains(&level));
        LEVELS * n + (level - 1)
    }

    pub fn symmetry_defect(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }
}

/// Deformed ladder pair `(A, A†)` with `A[n-1, n] = sqrt(n) f(n)`.
pub fn deformed_ladder(
    kind: &NonlinearityKind,
    nmax: usize,
) -> Result<(DMatrix<f64>, DMatrix<f64>), OracleError> {
    let dim = nmax + 1;
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = (n as f64).sqrt() * f_deform(kind, n as u64)?;
    }
    let ad = a.transpose();
    Ok((a, ad))
}

/// `H = Σ ω_j σ_jj + Ω a†a + Σ λ (A^k σ + h.c.) + χ a†² a²`.
///
/// Couplings that would leave the truncated space are dropped, so every
/// retained term conserves `n + 2kσ₁₁ + k(σ₂₂ + σ₃₃)` exactly.
pub fn build_hamiltonian(p: &OracleParams, nmax: usize) -> Result<HamiltonianMatrix, OracleError> {
    let dim = LEVELS * (nmax + 1);
    let k = p.k as usize;
    let mut h = DMatrix::zeros(dim, dim);

    for n in 0..=nmax {
        let nf = n as f64;
        for level in 1..=LEVELS {
            let i = HamiltonianMatrix::index(level, n);
            h[(i, i)] = p.omega[level - 1] + p.field_omega * nf + p.chi * nf * (nf - 1.0);
        }
    }

    let (a, _) = deformed_ladder(&p.nonlinearity, nmax)?;
    let mut ak = DMatrix::identity(nmax + 1, nmax + 1);
    for _ in 0..k {
        ak = &ak * &a;
    }

    // (upper, lower, coupling) for 1↔2, 1↔3, 2↔4, 3↔4
    let transitions = [(1, 2, p.lambdas[0]), (1, 3, p.lambdas[1]), (2, 4, p.lambdas[2]), (3, 4, p.lambdas[3])];
    for n in 0..=nmax {
        let m = n + k;
        if m > nmax {
            break;
        }
        // ⟨n| A^k |m⟩: the upper level holds k fewer photons
        let elem = ak[(n, m)];
        for &(upper, lower, lambda) in &transitions {
            let i = HamiltonianMatrix::index(upper, n);
            let j = HamiltonianMatrix::index(lower, m);
            h[(i, j)] += lambda * elem;
            h[(j, i)] += lambda * elem;
        }
    }
    Ok(HamiltonianMatrix { matrix: h, nmax })
}
