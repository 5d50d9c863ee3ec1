//! Built-in admissible mother wavelets: the Clifford Gabor family.
//!
//! ψ^c(x) = A exp(-½ Σ x_k²/σ_k²) / ((2π)^{n/2} Π σ_k)
//!          · (exp(i_n ω_0·x) - exp(-½ Σ σ_k² ω_{0,k}²)),
//! with multivector amplitude A (pure even or odd parity when n = 2). The
//! subtracted constant makes ψ̂^c(0) = 0 exactly, anchoring admissibility.

use crate::clifford::{Dimension, GradeParity, Multivector};
use crate::cwt::MotherWavelet;
use crate::error::{Error, Result};
use crate::field::GridSpec;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaborParams {
    /// Per-axis widths σ_k (only the first n entries are used).
    pub sigma: [f64; 3],
    /// Modulation frequency ω_0.
    pub omega0: [f64; 3],
    /// Constant left amplitude A.
    pub amplitude: Multivector,
}

impl GaborParams {
    /// σ_k = 1, ω_0 = (π, 0, ...), scalar amplitude.
    pub fn default_for(dim: Dimension) -> Self {
        GaborParams {
            sigma: [1.0; 3],
            omega0: [PI, 0.0, 0.0],
            amplitude: Multivector::scalar(dim, 1.0),
        }
    }

    /// Odd-parity variant with A = e1 (n = 2).
    pub fn default_odd(dim: Dimension) -> Self {
        GaborParams {
            amplitude: Multivector::basis_blade(dim, 0b01),
            ..Self::default_for(dim)
        }
    }
}

/// A Clifford Gabor mother wavelet with precomputed normalization and
/// DC-correction constants.
#[derive(Debug, Clone)]
pub struct GaborWavelet {
    dim: Dimension,
    params: GaborParams,
    norm: f64,
    dc_term: f64,
    parity: GradeParity,
}

impl GaborWavelet {
    pub fn new(dim: Dimension, params: GaborParams) -> Result<Self> {
        let n = dim.n();
        if params.amplitude.dim() != dim {
            return Err(Error::DimensionMismatch);
        }
        for k in 0..n {
            if !(params.sigma[k] > 0.0) || !params.sigma[k].is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "gabor width sigma[{k}] must be positive, got {}",
                    params.sigma[k]
                )));
            }
        }
        if params.amplitude.modulus() == 0.0 {
            return Err(Error::InvalidParameter("gabor amplitude is zero".into()));
        }
        let amp_parity = params.amplitude.parity();
        if n == 2 && amp_parity == GradeParity::Mixed {
            return Err(Error::NotAdmissible(
                "n = 2 Gabor amplitude must be pure even or odd parity".into(),
            ));
        }
        let sigma_prod: f64 = params.sigma[..n].iter().product();
        let norm = (2.0 * PI).powf(n as f64 / 2.0) * sigma_prod;
        let dc_term = (-0.5
            * (0..n)
                .map(|k| (params.sigma[k] * params.omega0[k]).powi(2))
                .sum::<f64>())
        .exp();
        // for n = 2 the oscillation exp(i_2 ω_0·x) is even, so the values
        // carry A's parity; for n = 3 the pseudoscalar term flips parity
        let parity = if n == 2 { amp_parity } else { GradeParity::Mixed };
        Ok(GaborWavelet {
            dim,
            params,
            norm,
            dc_term,
            parity,
        })
    }

    pub fn params(&self) -> &GaborParams {
        &self.params
    }

    /// The real scalar spectral profile
    /// φ(ω) = exp(-½ Σ σ_k²(ω_k-ω_{0,k})²) - exp(-½ Σ σ_k²(ω_k²+ω_{0,k}²)).
    pub fn phi(&self, omega: &[f64]) -> f64 {
        let n = self.dim.n();
        let p = &self.params;
        let main: f64 = (0..n)
            .map(|k| (p.sigma[k] * (omega[k] - p.omega0[k])).powi(2))
            .sum();
        let corr: f64 = (0..n)
            .map(|k| p.sigma[k].powi(2) * (omega[k] * omega[k] + p.omega0[k] * p.omega0[k]))
            .sum();
        (-0.5 * main).exp() - (-0.5 * corr).exp()
    }
}

impl MotherWavelet for GaborWavelet {
    fn dim(&self) -> Dimension {
        self.dim
    }

    fn parity(&self) -> GradeParity {
        self.parity
    }

    fn eval(&self, x: &[f64]) -> Multivector {
        let n = self.dim.n();
        let p = &self.params;
        let env: f64 = (-0.5
            * (0..n)
                .map(|k| (x[k] / p.sigma[k]).powi(2))
                .sum::<f64>())
        .exp();
        let phase: f64 = (0..n).map(|k| p.omega0[k] * x[k]).sum();
        let osc = Multivector::scalar(self.dim, phase.cos() - self.dc_term)
            + Multivector::pseudoscalar(self.dim).scale(phase.sin());
        (p.amplitude * osc).scale(env / self.norm)
    }

    fn spectrum(&self, omega: &[f64]) -> Option<Multivector> {
        Some(self.params.amplitude.scale(self.phi(omega)))
    }
}

/// Closed-form Gabor admissibility constant
/// C_{ψ^c} = Ã A Σ_{ω_k ≠ 0} φ(ω_k)² / |ω_k|^n Δω^n,
/// independent of the generic spectral-sampling path.
pub fn gabor_admissibility(psi: &GaborWavelet, grid: &GridSpec) -> Multivector {
    let dim = grid.dim();
    let n = dim.n();
    let w = grid.freq_cell_volume();
    let mut integral = 0.0;
    for flat in 0..grid.total_points() {
        let om = grid.freq_node(flat);
        let r2: f64 = (0..n).map(|a| om[a] * om[a]).sum();
        if r2 == 0.0 {
            continue;
        }
        let phi = psi.phi(&om[..n]);
        integral += phi * phi / r2.sqrt().powi(n as i32) * w;
    }
    let a = psi.params().amplitude;
    (a.reverse() * a).scale(integral)
}
