use nalgebra::Matrix4;
use num_complex::Complex64;

use super::{ObservableError, INVARIANT_TOL};

/// Reduced atomic density matrix, levels ordered `|1⟩ … |4⟩` top to ground.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensityMatrix {
    pub rho: Matrix4<Complex64>,
    pub t: f64,
}

impl ReducedDensityMatrix {
    pub fn from_diagonal(diag: [f64; 4], t: f64) -> Self {
        let mut rho = Matrix4::zeros();
        for (i, d) in diag.iter().enumerate() {
            rho[(i, i)] = Complex64::new(*d, 0.0);
        }
        Self { rho, t }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rho[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    /// `Tr ρ²` for a Hermitian matrix, i.e. `Σ |ρ_ij|²`.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.rho[(i, j)] - self.rho[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        // symmetric_eigenvalues only reads the lower triangle; symmetrize first
        let h = (self.rho + self.rho.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().min()
    }

    /// Largest deviation from the equalities the degenerate solution imposes:
    /// `ρ₂₂ = ρ₃₃ = ρ₂₃ = ρ₃₂`, `ρ₁₂ = ρ₁₃`, `ρ₂₄ = ρ₃₄`.
    pub fn structure_defect(&self) -> f64 {
        let r = |i: usize, j: usize| self.rho[(i - 1, j - 1)];
        [
            (r(2, 2), r(3, 3)),
            (r(2, 2), r(2, 3)),
            (r(2, 2), r(3, 2)),
            (r(1, 2), r(1, 3)),
            (r(2, 4), r(3, 4)),
        ]
        .iter()
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn check(&self, tol: f64) -> Result<(), ObservableError> {
        let fail = |what: String| Err(ObservableError::Invariant { t: self.t, what });
        let h = self.hermiticity_defect();
        if h > tol {
            return fail(format!("density matrix not Hermitian (defect {h:e})"));
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > tol {
            return fail(format!("density matrix trace {tr}"));
        }
        let e = self.min_eigenvalue();
        if e < -tol {
            return fail(format!("density matrix eigenvalue {e:e} < 0"));
        }
        Ok(())
    }
}

/// `1 - Tr ρ²`, the second route applies when `ρ` carries the degenerate
/// structure and is asserted to agree.
fn structured_entropy(rho: &ReducedDensityMatrix) -> f64 {
    let r = |i: usize, j: usize| rho.rho[(i - 1, j - 1)];
    let (r11, r22, r44) = (r(1, 1).re, r(2, 2).re, r(4, 4).re);
    1.0 - (r11 * r11
        + 4.0 * r22 * r22
        + r44 * r44
        + 4.0 * (r(1, 2).norm_sqr() + r(2, 4).norm_sqr())
        + 2.0 * r(1, 4).norm_sqr())
}

pub fn linear_entropy(rho: &ReducedDensityMatrix) -> Result<f64, ObservableError> {
    let generic = 1.0 - rho.purity();
    if rho.structure_defect() <= INVARIANT_TOL {
        let special = structured_entropy(rho);
        if (special - generic).abs() > INVARIANT_TOL {
            return Err(ObservableError::InternalConsistency(format!(
                "linear entropy {generic} (trace) vs {special} (structured) at t = {}",
                rho.t
            )));
        }
    }
    Ok(generic)
}

/// `sqrt(2 Σ_{i≠j} (ρ_ii ρ_jj − ρ_ij ρ_ji))` with the inner sum floored at 0.
pub fn concurrence(rho: &ReducedDensityMatrix) -> f64 {
    let mut inner = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                inner += (rho.rho[(i, i)] * rho.rho[(j, j)] - rho.rho[(i, j)] * rho.rho[(j, i)]).re;
            }
        }
    }
    (2.0 * inner.max(0.0)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_upper_level() {
        let rho = ReducedDensityMatrix::from_diagonal([1.0, 0.0, 0.0, 0.0], 0.0);
        rho.check(1e-12).unwrap();
        assert_eq!(linear_entropy(&rho).unwrap(), 0.0);
        assert_eq!(concurrence(&rho), 0.0);
    }

    #[test]
    fn maximally_mixed() {
        let rho = ReducedDensityMatrix::from_diagonal([0.25; 4], 0.0);
        rho.check(1e-12).unwrap();
        assert!((linear_entropy(&rho).unwrap() - 0.75).abs() < 1e-15);
        assert!((concurrence(&rho) - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((concurrence(&rho) - 1.2247).abs() < 1e-4);
    }

    #[test]
    fn detects_non_hermitian_and_negative() {
        let mut rho = ReducedDensityMatrix::from_diagonal([0.5, 0.5, 0.0, 0.0], 1.0);
        rho.rho[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(rho.check(1e-10).is_err());
        rho.rho[(1, 0)] = Complex64::new(0.1, 0.0);
        rho.check(1e-10).unwrap();
        rho.rho[(0, 1)] = Complex64::new(0.9, 0.0);
        rho.rho[(1, 0)] = Complex64::new(0.9, 0.0);
        assert!(rho.min_eigenvalue() < -0.3);
        assert!(rho.check(1e-10).is_err());
    }

    #[test]
    fn structured_entropy_mismatch_is_caught() {
        // satisfies the equalities but has ρ₂₂ ≠ ρ₃₃ hidden in an unlisted entry
        let mut rho = ReducedDensityMatrix::from_diagonal([0.5, 0.25, 0.25, 0.0], 0.0);
        rho.rho[(1, 2)] = Complex64::new(0.25, 0.0);
        rho.rho[(2, 1)] = Complex64::new(0.25, 0.0);
        let s = linear_entropy(&rho).unwrap();
        assert!((s - structured_entropy(&rho)).abs() < 1e-15);
        // break the entry the structured form ignores
        rho.rho[(0, 3)] = Complex64::new(0.0, 0.1);
        rho.rho[(3, 0)] = Complex64::new(0.0, -0.1);
        assert!(linear_entropy(&rho).is_ok());
        rho.rho[(1, 3)] = Complex64::new(0.05, 0.0);
        rho.rho[(2, 3)] = Complex64::new(0.05, 0.0);
        rho.rho[(3, 2)] = Complex64::new(0.05, 0.0);
        // ρ₄₂ deliberately left inconsistent with ρ₂₄
        assert!(matches!(
            linear_entropy(&rho),
            Err(ObservableError::InternalConsistency(_))
        ));
    }
}
