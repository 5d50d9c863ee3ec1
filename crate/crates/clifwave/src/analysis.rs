//! Uncertainty-principle evaluators for the Clifford Fourier transform and
//! for the Clifford wavelet transform.
//!
//! The CFT report uses the sharp constant n²(2π)^n/4 ‖f‖⁴, the value
//! saturated by Gaussians under this transform's normalization (the product
//! of per-axis Heisenberg bounds summed over axes). The wavelet report
//! keeps the constant n(2π)^n/4 [C_ψ ∗ (f,f)]² of the generalized theorem.

use crate::cft::cft_forward;
use crate::clifford::Multivector;
use crate::cwt::{analyze_spectral, Admissible, CoefficientVolume, MotherWavelet, ADMISSIBILITY_TOL};
use crate::error::{Error, Result};
use crate::field::{quadrature_inner, MultivectorField};
use crate::simgroup::GroupGrid;
use std::f64::consts::PI;

/// Discretization slack: an inequality counts as satisfied when
/// lhs ≥ rhs (1 - slack).
pub const UNCERTAINTY_SLACK: f64 = 0.05;

/// Both sides of an uncertainty inequality lhs ≥ rhs.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

impl UncertaintyReport {
    fn new(lhs: f64, rhs: f64) -> Self {
        UncertaintyReport {
            lhs,
            rhs,
            ratio: lhs / rhs,
            satisfied: lhs >= rhs * (1.0 - UNCERTAINTY_SLACK),
        }
    }
}

/// CFT uncertainty: ‖x f‖² ‖ω f̂‖² ≥ n²(2π)^n/4 ‖f‖⁴.
pub fn cft_uncertainty(f: &MultivectorField) -> Result<UncertaintyReport> {
    let grid = f.grid();
    let n = grid.dim().n();
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::ZeroField);
    }
    let mut spatial = 0.0;
    for (flat, m) in f.data().iter().enumerate() {
        let x = grid.node(flat);
        let r2: f64 = (0..n).map(|a| x[a] * x[a]).sum();
        spatial += r2 * m.modulus().powi(2);
    }
    spatial *= grid.cell_volume();
    let s = cft_forward(f);
    let mut freq = 0.0;
    for (flat, m) in s.data().iter().enumerate() {
        let om = grid.freq_node(flat);
        let r2: f64 = (0..n).map(|a| om[a] * om[a]).sum();
        freq += r2 * m.modulus().powi(2);
    }
    freq *= grid.freq_cell_volume();
    let lhs = spatial * freq;
    let rhs = (n * n) as f64 * (2.0 * PI).powi(n as i32) / 4.0 * norm.powi(4);
    Ok(UncertaintyReport::new(lhs, rhs))
}

/// Theorem and (for scalar C_ψ) corollary forms of the wavelet
/// uncertainty inequality.
#[derive(Debug, Clone, Copy)]
pub struct WaveletUncertainty {
    /// ‖b T_ψf‖²_{L²(G)} · C_ψ ∗ (rev(ωf̂), rev(ωf̂)) ≥ n(2π)^n/4 [C_ψ ∗ (f,f)]².
    pub theorem: UncertaintyReport,
    /// ‖b T_ψf‖²_{L²(G)} · ‖ωf̂‖² ≥ n C_ψ (2π)^n/4 ‖f‖⁴, for scalar C_ψ.
    pub corollary: Option<UncertaintyReport>,
}

fn c_star(c: &Multivector, m: &Multivector) -> Result<f64> {
    c.scalar_product(m)
}

/// ‖b T‖²_{L²(G)} = Σ w_a w_θ Σ_b |b|² |T(a,θ,b)|² Δx^n.
pub fn translation_weighted_norm_squared(t: &CoefficientVolume) -> f64 {
    let gg = t.group();
    let grid = gg.translations();
    let n = grid.dim().n();
    let dx = grid.cell_volume();
    let mut acc = 0.0;
    for (si, s) in gg.scales().iter().enumerate() {
        for (ai, a) in gg.angles().iter().enumerate() {
            let slice = t.slice(si, ai).expect("enumerated indices");
            let mut sum = 0.0;
            for (flat, m) in slice.iter().enumerate() {
                let b = grid.node(flat);
                let r2: f64 = (0..n).map(|k| b[k] * b[k]).sum();
                sum += r2 * m.modulus().powi(2);
            }
            acc += s.weight * a.weight * sum * dx;
        }
    }
    acc
}

/// Σ_{a,θ} w_a w_θ ‖ω F{T_ψf(a,θ,·)}‖², the integrated frequency variance
/// of the coefficient slices; independent of the wavelet parity ε.
pub fn integrated_frequency_variance(t: &CoefficientVolume) -> f64 {
    let gg = t.group();
    let grid = *gg.translations();
    let n = grid.dim().n();
    let dw = grid.freq_cell_volume();
    let mut acc = 0.0;
    for (si, s) in gg.scales().iter().enumerate() {
        for (ai, a) in gg.angles().iter().enumerate() {
            let slice = t.slice(si, ai).expect("enumerated indices");
            let field = MultivectorField::new(grid, slice.to_vec()).expect("slice field");
            let spec = cft_forward(&field);
            let mut sum = 0.0;
            for (flat, m) in spec.data().iter().enumerate() {
                let om = grid.freq_node(flat);
                let r2: f64 = (0..n).map(|k| om[k] * om[k]).sum();
                sum += r2 * m.modulus().powi(2);
            }
            acc += s.weight * a.weight * sum * dw;
        }
    }
    acc
}

/// Evaluates the generalized wavelet uncertainty inequality, and the
/// scalar-constant corollary when C_ψ has no vector part.
pub fn wavelet_uncertainty<W: MotherWavelet>(
    f: &MultivectorField,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<WaveletUncertainty> {
    let grid = f.grid();
    let n = grid.dim().n();
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::ZeroField);
    }
    let c = psi.constant();
    let t = analyze_spectral(f, psi, gg)?;
    let b_norm = translation_weighted_norm_squared(&t);

    let f_hat = cft_forward(f);
    let weighted: Vec<Multivector> = f_hat
        .data()
        .iter()
        .enumerate()
        .map(|(flat, m)| {
            let om = grid.freq_node(flat);
            (Multivector::vector(grid.dim(), &om[..n]) * *m).reverse()
        })
        .collect();
    let freq_pair = quadrature_inner(&weighted, &weighted, grid.freq_cell_volume())?;
    let lhs = b_norm * c_star(&c, &freq_pair)?;

    let f_pair = quadrature_inner(f.data(), f.data(), grid.cell_volume())?;
    let rhs = n as f64 * (2.0 * PI).powi(n as i32) / 4.0 * c_star(&c, &f_pair)?.powi(2);
    let theorem = UncertaintyReport::new(lhs, rhs);

    let scalar_c = (1..grid.dim().blade_count())
        .all(|mask| c.coeff(mask).abs() <= ADMISSIBILITY_TOL * c.scalar_part());
    let corollary = scalar_c.then(|| {
        let freq_norm: f64 = weighted
            .iter()
            .map(|m| m.modulus().powi(2))
            .sum::<f64>()
            * grid.freq_cell_volume();
        let lhs_c = b_norm * freq_norm;
        let rhs_c =
            n as f64 * c.scalar_part() * (2.0 * PI).powi(n as i32) / 4.0 * norm.powi(4);
        UncertaintyReport::new(lhs_c, rhs_c)
    });

    Ok(WaveletUncertainty { theorem, corollary })
}
