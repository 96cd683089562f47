use nalgebra::Matrix4;
use num_complex::Complex64;

use super::{
    concurrence, linear_entropy, mandel_q, ObservableError, ObservableRecord,
    ReducedDensityMatrix, INVARIANT_TOL,
};
use crate::model::{
    coherent_weights, truncation_bound, AmplitudeSet, ClosedFormMode, ModelConfig, DEFAULT_TAIL,
};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Closed-form spectral data for every Fock index `0..=nmax`, prepared once
/// per configuration and evaluated at arbitrary times.
#[derive(Clone, Debug)]
pub struct ClosedFormSolution {
    config: ModelConfig,
    weights: Vec<Complex64>,
    modes: Vec<ClosedFormMode>,
}

impl ClosedFormSolution {
    pub fn new(config: &ModelConfig, nmax: u64) -> Result<Self, ObservableError> {
        config.validate()?;
        let modes = (0..=nmax)
            .map(|n| ClosedFormMode::new(config, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            config: config.clone(),
            weights: coherent_weights(config.alpha, nmax),
            modes,
        })
    }

    /// Truncated at [`truncation_bound`] with the default tail.
    pub fn with_default_truncation(config: &ModelConfig) -> Result<Self, ObservableError> {
        Self::new(config, truncation_bound(config.alpha, DEFAULT_TAIL))
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn nmax(&self) -> u64 {
        self.modes.len() as u64 - 1
    }

    pub fn modes(&self) -> &[ClosedFormMode] {
        &self.modes
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn snapshot(&self, t: f64) -> Snapshot<'_> {
        Snapshot {
            solution: self,
            t,
            amps: self.modes.iter().map(|m| m.at(t)).collect(),
        }
    }
}

/// All amplitudes at one instant; observables are read off from here.
pub struct Snapshot<'a> {
    solution: &'a ClosedFormSolution,
    t: f64,
    amps: Vec<AmplitudeSet>,
}

/// `sqrt((lo + r)! / lo!)`.
fn ladder_factor(lo: usize, r: usize) -> f64 {
    let mut ln = CompensatedSum::new();
    for m in lo + 1..=lo + r {
        ln.add((m as f64).ln());
    }
    (0.5 * ln.value()).exp()
}

impl Snapshot<'_> {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn amplitudes(&self) -> &[AmplitudeSet] {
        &self.amps
    }

    fn k(&self) -> usize {
        self.solution.config.k as usize
    }

    pub fn density(&self) -> ReducedDensityMatrix {
        let cfg = &self.solution.config;
        let q = &self.solution.weights;
        let amps = &self.amps;
        let k = self.k();
        let t = self.t;

        let (mut r11, mut r22, mut r44) =
            (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
        for (qn, s) in q.iter().zip(amps) {
            let p = qn.norm_sqr();
            r11.add(p * s.a.norm_sqr());
            r22.add(p * s.b.norm_sqr());
            r44.add(p * s.d.norm_sqr());
        }

        // Coherences pair the amplitude that started at Fock n + shift with
        // the one that started at n, both sitting on the same Fock number.
        let coherence = |shift: usize, pick: &dyn Fn(&AmplitudeSet, &AmplitudeSet) -> Complex64| {
            let mut acc = CompensatedComplexSum::new();
            for n in 0..amps.len().saturating_sub(shift) {
                acc.add(q[n + shift] * q[n].conj() * pick(&amps[n + shift], &amps[n]));
            }
            acc.value()
        };
        let phase = |w: f64| Complex64::from_polar(1.0, w * t);
        let r12 = coherence(k, &|hi, lo| hi.a * lo.b.conj()) * phase(cfg.delta1);
        let r14 = coherence(2 * k, &|hi, lo| hi.a * lo.d.conj()) * phase(cfg.delta1 + cfg.delta3);
        let r24 = coherence(k, &|hi, lo| hi.b * lo.d.conj()) * phase(cfg.delta3);

        let re = |x: f64| Complex64::new(x, 0.0);
        let (d11, d22, d44) = (re(r11.value()), re(r22.value()), re(r44.value()));
        #[rustfmt::skip]
        let rho = Matrix4::new(
            d11,          r12,          r12,          r14,
            r12.conj(),   d22,          d22,          r24,
            r12.conj(),   d22,          d22,          r24,
            r14.conj(),   r24.conj(),   r24.conj(),   d44,
        );
        ReducedDensityMatrix { rho, t }
    }

    /// `(⟨n⟩, ⟨n²⟩)`.
    pub fn photon_moments(&self) -> (f64, f64) {
        let k = self.k() as f64;
        let (mut m1, mut m2) = (CompensatedSum::new(), CompensatedSum::new());
        for (n, (qn, s)) in self.solution.weights.iter().zip(&self.amps).enumerate() {
            let p = qn.norm_sqr();
            let n = n as f64;
            let (pa, pb, pd) = (p * s.a.norm_sqr(), 2.0 * p * s.b.norm_sqr(), p * s.d.norm_sqr());
            let (na, nb, nd) = (n, n + k, n + 2.0 * k);
            m1.add(na * pa);
            m1.add(nb * pb);
            m1.add(nd * pd);
            m2.add(na * na * pa);
            m2.add(nb * nb * pb);
            m2.add(nd * nd * pd);
        }
        (m1.value(), m2.value())
    }

    /// `⟨a^r⟩` in the frame rotating with the field (no `exp(-iΩrt)` factor).
    pub fn field_moment(&self, r: usize) -> Complex64 {
        let q = &self.solution.weights;
        let amps = &self.amps;
        let k = self.k();
        let mut acc = CompensatedComplexSum::new();
        for n in 0..amps.len().saturating_sub(r) {
            let (lo, hi) = (&amps[n], &amps[n + r]);
            let term = ladder_factor(n, r) * lo.a.conj() * hi.a
                + 2.0 * ladder_factor(n + k, r) * lo.b.conj() * hi.b
                + ladder_factor(n + 2 * k, r) * lo.d.conj() * hi.d;
            acc.add(q[n].conj() * q[n + r] * term);
        }
        acc.value()
    }

    /// `(S_x, S_y)`.
    pub fn squeezing(&self) -> (f64, f64) {
        let (mean_n, _) = self.photon_moments();
        squeezing_from_moments(mean_n, self.field_moment(1), self.field_moment(2))
    }

    pub fn record(&self) -> Result<ObservableRecord, ObservableError> {
        let rho = self.density();
        rho.check(INVARIANT_TOL)?;
        let entropy = linear_entropy(&rho)?;
        let (mean_n, mean_n2) = self.photon_moments();
        let (sx, sy) = squeezing_from_moments(mean_n, self.field_moment(1), self.field_moment(2));
        let record = ObservableRecord {
            t: self.t,
            entropy,
            concurrence: concurrence(&rho),
            mandel: mandel_q(mean_n, mean_n2)?,
            mean_n,
            mean_n2,
            sx,
            sy,
        };
        record.check(INVARIANT_TOL)?;
        Ok(record)
    }
}

pub(crate) fn squeezing_from_moments(mean_n: f64, a1: Complex64, a2: Complex64) -> (f64, f64) {
    let (a1d, a2d) = (a1.conj(), a2.conj());
    let sx = 2.0 * mean_n + (a2 + a2d).re - ((a1 + a1d) * (a1 + a1d)).re;
    let sy = 2.0 * mean_n - (a2 + a2d).re + ((a1 - a1d) * (a1 - a1d)).re;
    (sx, sy)
}
