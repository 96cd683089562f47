use num_complex::Complex64;
use serde::Serialize;

use super::{
    cubic_coeffs, interaction_coeffs, solve_cubic, CubicCoefficients, InteractionCoefficients,
    ModelConfig, ModelError, RootTriple,
};

/// Relative root separation below which the partial-fraction weights are
/// considered numerically meaningless.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// Probability amplitudes for one Fock index. `b` doubles as `C(n+k, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmplitudeSet {
    pub n: u64,
    pub t: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub d: Complex64,
}

impl AmplitudeSet {
    /// `|A|² + 2|B|² + |D|²`, which the dynamics keep at one.
    pub fn norm(&self) -> f64 {
        self.a.norm_sqr() + 2.0 * self.b.norm_sqr() + self.d.norm_sqr()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BCoefficients {
    pub b: [f64; 3],
}

pub fn b_coeffs(roots: &RootTriple, f: f64) -> Result<BCoefficients, ModelError> {
    let mu = roots.mu;
    let floor = DEGENERACY_THRESHOLD * roots.max_abs();
    let mut b = [0.0; 3];
    for j in 0..3 {
        let (k, l) = ((j + 1) % 3, (j + 2) % 3);
        let (djk, djl) = (mu[j] - mu[k], mu[j] - mu[l]);
        if djk.abs() <= floor || djl.abs() <= floor || djk == 0.0 || djl == 0.0 {
            return Err(ModelError::degenerate(format!(
                "roots {mu:?} closer than {DEGENERACY_THRESHOLD:e} relative"
            )));
        }
        b[j] = 2.0 * f / (djk * djl);
    }
    Ok(BCoefficients { b })
}

/// Spectral data for one Fock index, reusable across time points.
///
/// Each amplitude is `Σ_j c_j exp(i ω_j t)` with three terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormMode {
    pub coefficients: InteractionCoefficients,
    pub cubic: CubicCoefficients,
    pub roots: RootTriple,
    pub weights: BCoefficients,
    a_terms: [(f64, f64); 3],
    b_terms: [(f64, f64); 3],
    d_terms: [(f64, f64); 3],
}

fn superpose(terms: &[(f64, f64); 3], t: f64) -> Complex64 {
    let mut z = Complex64::new(0.0, 0.0);
    for &(c, w) in terms {
        let (s, co) = (w * t).sin_cos();
        z += Complex64::new(c * co, c * s);
    }
    z
}

impl ClosedFormMode {
    pub fn new(config: &ModelConfig, n: u64) -> Result<Self, ModelError> {
        let ic = interaction_coeffs(config, n)?;
        let cubic = cubic_coeffs(&ic, config.delta1, config.delta3);
        let roots = solve_cubic(&cubic).map_err(|e| e.at_index(n))?;
        let weights = b_coeffs(&roots, ic.f).map_err(|e| e.at_index(n))?;

        let InteractionCoefficients { f, g, v2, v3, .. } = ic;
        let (d1, d3) = (config.delta1, config.delta3);
        let mut a_terms = [(0.0, 0.0); 3];
        let mut b_terms = [(0.0, 0.0); 3];
        let mut d_terms = [(0.0, 0.0); 3];
        for j in 0..3 {
            let mu = roots.mu[j];
            let bj = weights.b[j];
            a_terms[j] = (
                ((mu + v3) * (mu + v2 - d3) - 2.0 * g * g) * bj / (2.0 * f),
                mu - d1 - d3,
            );
            b_terms[j] = (-0.5 * (mu + v3) * bj, mu - d3);
            d_terms[j] = (g * bj, mu);
        }
        Ok(Self {
            coefficients: ic,
            cubic,
            roots,
            weights,
            a_terms,
            b_terms,
            d_terms,
        })
    }

    pub fn n(&self) -> u64 {
        self.coefficients.n
    }

    pub fn at(&self, t: f64) -> AmplitudeSet {
        AmplitudeSet {
            n: self.n(),
            t,
            a: superpose(&self.a_terms, t),
            b: superpose(&self.b_terms, t),
            d: superpose(&self.d_terms, t),
        }
    }
}

pub fn amplitudes_at(config: &ModelConfig, n: u64, t: f64) -> Result<AmplitudeSet, ModelError> {
    Ok(ClosedFormMode::new(config, n)?.at(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NonlinearityKind;

    fn resonant(kind: NonlinearityKind, k: u32) -> ModelConfig {
        ModelConfig {
            nonlinearity: kind,
            k,
            ..ModelConfig::default()
        }
    }

    #[test]
    fn b_for_symmetric_roots() {
        let s6 = 6f64.sqrt();
        let roots = RootTriple { mu: [s6, 0.0, -s6], phi: 0.0 };
        let b = b_coeffs(&roots, 1.0).unwrap().b;
        assert!((b[0] - 1.0 / 6.0).abs() < 1e-15);
        assert!((b[1] + 1.0 / 3.0).abs() < 1e-15);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-15);
        assert!(b.iter().sum::<f64>().abs() < 1e-15);
    }

    #[test]
    fn near_degenerate_roots_are_rejected() {
        let roots = RootTriple { mu: [2.0, 2.0 + 1e-12, -1.0], phi: 0.0 };
        assert!(matches!(
            b_coeffs(&roots, 1.0),
            Err(ModelError::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn starts_in_upper_level() {
        for kind in [NonlinearityKind::Constant, NonlinearityKind::Harmonious] {
            for (chi, d1, d3) in [(0.0, 0.0, 0.0), (0.4, 7.0, 15.0)] {
                let c = ModelConfig { chi, delta1: d1, delta3: d3, ..resonant(kind.clone(), 2) };
                for n in [0, 3, 17, 60] {
                    let s = amplitudes_at(&c, n, 0.0).unwrap();
                    assert!((s.a - 1.0).norm() < 1e-10, "{s:?}");
                    assert!(s.b.norm() < 1e-10);
                    assert!(s.d.norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn resonant_vacuum_matches_hand_reduction() {
        let c = resonant(NonlinearityKind::Constant, 1);
        let mode = ClosedFormMode::new(&c, 0).unwrap();
        let s6 = 6f64.sqrt();
        for i in 0..=200 {
            let t = 0.25 * i as f64;
            let s = mode.at(t);
            let (sn, cs) = (s6 * t).sin_cos();
            let a = Complex64::new(2.0 / 3.0 + cs / 3.0, 0.0);
            let b = Complex64::new(0.0, -sn / s6);
            let d = Complex64::new(2f64.sqrt() / 3.0 * (cs - 1.0), 0.0);
            assert!((s.a - a).norm() < 1e-12, "t={t}");
            assert!((s.b - b).norm() < 1e-12, "t={t}");
            assert!((s.d - d).norm() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn harmonious_is_index_independent() {
        let c = resonant(NonlinearityKind::Harmonious, 1);
        let reference = ClosedFormMode::new(&c, 0).unwrap();
        for n in 1..=20 {
            let mode = ClosedFormMode::new(&c, n).unwrap();
            for t in [0.3, 1.7, 12.0, 49.5] {
                let (x, y) = (reference.at(t), mode.at(t));
                assert!((x.a - y.a).norm() < 1e-13);
                assert!((x.b - y.b).norm() < 1e-13);
                assert!((x.d - y.d).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn harmonious_resonant_period_is_pi() {
        for k in [1, 2] {
            let c = resonant(NonlinearityKind::Harmonious, k);
            let mode = ClosedFormMode::new(&c, 4).unwrap();
            for i in 0..50 {
                let t = 0.37 * i as f64;
                let (x, y) = (mode.at(t), mode.at(t + std::f64::consts::PI));
                assert!((x.a - y.a).norm() < 1e-9);
                assert!((x.b - y.b).norm() < 1e-9);
                assert!((x.d - y.d).norm() < 1e-9);
            }
        }
    }

    /// A Kerr perturbation of size χ moves the state by at most ‖δH‖·t, so a
    /// jump between root branches would show up as an O(1) deviation.
    #[test]
    fn weak_kerr_is_continuous() {
        let c0 = resonant(NonlinearityKind::Constant, 1);
        let c1 = ModelConfig { chi: 1e-8, ..c0.clone() };
        for n in [0, 5, 10, 30] {
            let (m0, m1) = (ClosedFormMode::new(&c0, n).unwrap(), ClosedFormMode::new(&c1, n).unwrap());
            for i in 0..=100 {
                let t = 0.1 * i as f64;
                let (x, y) = (m0.at(t), m1.at(t));
                let dev = (x.a - y.a).norm().max((x.b - y.b).norm()).max((x.d - y.d).norm());
                let top = (n + 2) as f64;
                let bound = 1e-8 * top * (top - 1.0) * t + 1e-12;
                assert!(dev <= bound, "n={n} t={t} dev={dev} bound={bound}");
                if n == 0 {
                    assert!(dev < 1e-6);
                }
            }
        }
    }
}
