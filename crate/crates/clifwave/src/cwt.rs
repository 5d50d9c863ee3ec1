//! The continuous Clifford wavelet transform: admissibility, analysis in
//! direct and spectral form, synthesis (inverse transform), the
//! inner-product and norm relations, and the reproducing kernel.
//!
//! Analysis evaluates T_ψf(a,θ,b) = Σ_j f(x_j) rev(ψ_{a,θ,b}(x_j)) Δx^n.
//! The spectral fast path rewrites each (a,θ) slice as
//! (2π)^{-n} Σ_k f̂(ω) a^{n/2} rev(ψ̂(a r_θ^{-1}ω)) exp(ε i_n b·ω) Δω^n,
//! one FFT per slice. The parity sign ε is +1 for n = 3 and for even
//! (spinor) wavelets in n = 2, and -1 for odd-parity wavelets in n = 2,
//! reflecting how exp(i_n λ) commutes through even and odd grades.

use crate::cft::{cft_forward, phase_analysis, phase_synthesis};
use crate::clifford::{Dimension, GradeParity, Multivector};
use crate::error::{Error, Result};
use crate::field::{quadrature_inner, GridSpec, MultivectorField};
use crate::simgroup::{daughter, daughter_table, GroupGrid, Rotation, SimElement};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Relative tolerance for the zero-mean admissibility check and for the
/// permitted non-{0,1}-grade content of the admissibility constant.
pub const ADMISSIBILITY_TOL: f64 = 1e-8;

/// A mother wavelet evaluable in closed form at arbitrary points, with an
/// optional closed-form spectrum.
pub trait MotherWavelet: Sync {
    fn dim(&self) -> Dimension;

    /// Grade parity of the sampled values; must be pure (even or odd) for
    /// n = 2, may be mixed for n = 3.
    fn parity(&self) -> GradeParity;

    /// ψ(x) for x with dim().n() components.
    fn eval(&self, x: &[f64]) -> Multivector;

    /// ψ̂(ω) when known in closed form, else `None` and the sampled
    /// transform is used.
    fn spectrum(&self, _omega: &[f64]) -> Option<Multivector> {
        None
    }
}

/// The spectral-kernel sign ε determined by dimension and wavelet parity.
pub fn epsilon(dim: Dimension, parity: GradeParity) -> Result<f64> {
    if dim.n() == 3 {
        return Ok(1.0);
    }
    parity.epsilon().ok_or_else(|| {
        Error::NotAdmissible(
            "n = 2 requires a pure even (spinor) or odd parity wavelet".into(),
        )
    })
}

/// Mother-wavelet spectrum samples on the shifted frequency grid, from the
/// closed form when available, else via the transform of the sampled mother.
fn mother_spectrum_samples(psi: &dyn MotherWavelet, grid: &GridSpec) -> Vec<Multivector> {
    let n = grid.dim().n();
    if psi.spectrum(&[0.0; 3][..n]).is_some() {
        (0..grid.total_points())
            .map(|flat| {
                let om = grid.freq_node(flat);
                psi.spectrum(&om[..n]).expect("closed-form spectrum")
            })
            .collect()
    } else {
        let sampled = MultivectorField::new(
            *grid,
            (0..grid.total_points())
                .map(|flat| {
                    let x = grid.node(flat);
                    psi.eval(&x[..n])
                })
                .collect(),
        )
        .expect("sampled mother wavelet");
        cft_forward(&sampled).data().to_vec()
    }
}

fn dc_flat_index(grid: &GridSpec) -> usize {
    let mut c = [0usize; 3];
    for a in 0..grid.dim().n() {
        c[a] = grid.points_per_axis() / 2;
    }
    grid.flat_index(c)
}

/// The admissibility constant in its frequency-domain form,
/// C_ψ = Σ_{ω_k ≠ 0} rev(ψ̂(ω_k)) ψ̂(ω_k) / |ω_k|^n Δω^n,
/// with the singular DC bin omitted (admissible ψ has ψ̂(0) = 0, so the
/// omitted continuum contribution vanishes).
pub fn admissibility_constant(psi: &dyn MotherWavelet, grid: &GridSpec) -> Result<Multivector> {
    let dim = grid.dim();
    let n = dim.n();
    let samples = mother_spectrum_samples(psi, grid);
    let spec_norm_sq: f64 = samples.iter().map(|m| m.modulus().powi(2)).sum::<f64>()
        * grid.freq_cell_volume();
    let psi_norm = (spec_norm_sq.sqrt()) / (2.0 * PI).powf(n as f64 / 2.0);
    let dc = dc_flat_index(grid);
    if samples[dc].modulus() > ADMISSIBILITY_TOL * psi_norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotAdmissible(format!(
            "nonzero mean: |psî(0)| = {:e} exceeds {:e} × ‖ψ‖",
            samples[dc].modulus(),
            ADMISSIBILITY_TOL
        )));
    }
    let w = grid.freq_cell_volume();
    let mut c = Multivector::zero(dim);
    for (flat, s) in samples.iter().enumerate() {
        if flat == dc {
            continue;
        }
        let om = grid.freq_node(flat);
        let r: f64 = (0..n).map(|a| om[a] * om[a]).sum::<f64>().sqrt();
        c = c + (s.reverse() * *s).scale(w / r.powi(n as i32));
    }
    let c0 = c.scalar_part();
    if c0 <= ADMISSIBILITY_TOL {
        return Err(Error::NotAdmissible(format!(
            "scalar part of the admissibility constant is {c0:e}"
        )));
    }
    for mask in 0..dim.blade_count() {
        if mask.count_ones() > 1 && c.coeff(mask).abs() > ADMISSIBILITY_TOL * c0 {
            return Err(Error::NotAdmissible(format!(
                "admissibility constant carries grade-{} content {:e}",
                mask.count_ones(),
                c.coeff(mask)
            )));
        }
    }
    Ok(c)
}

/// An admissibility-checked mother wavelet with cached C_ψ, its inverse,
/// and the spectral parity sign ε.
pub struct Admissible<W: MotherWavelet> {
    wavelet: W,
    epsilon: f64,
    constant: Multivector,
    inverse: Multivector,
}

impl<W: MotherWavelet> Admissible<W> {
    /// Checks parity (n = 2), zero mean, and invertibility of C_ψ on the
    /// given reference grid, caching the results.
    pub fn new(wavelet: W, grid: &GridSpec) -> Result<Self> {
        if wavelet.dim() != grid.dim() {
            return Err(Error::DimensionMismatch);
        }
        let eps = epsilon(wavelet.dim(), wavelet.parity())?;
        let constant = admissibility_constant(&wavelet, grid)?;
        let tol = ADMISSIBILITY_TOL * (1.0 + constant.scalar_part());
        let inverse = constant
            .invert_admissibility(Some(tol))
            .map_err(|e| Error::NotAdmissible(e.to_string()))?;
        Ok(Admissible {
            wavelet,
            epsilon: eps,
            constant,
            inverse,
        })
    }

    pub fn wavelet(&self) -> &W {
        &self.wavelet
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn constant(&self) -> Multivector {
        self.constant
    }

    pub fn constant_inverse(&self) -> Multivector {
        self.inverse
    }
}

impl<W: MotherWavelet> MotherWavelet for Admissible<W> {
    fn dim(&self) -> Dimension {
        self.wavelet.dim()
    }

    fn parity(&self) -> GradeParity {
        self.wavelet.parity()
    }

    fn eval(&self, x: &[f64]) -> Multivector {
        self.wavelet.eval(x)
    }

    fn spectrum(&self, omega: &[f64]) -> Option<Multivector> {
        self.wavelet.spectrum(omega)
    }
}

/// Wavelet coefficients T_ψf over a [`GroupGrid`], stored scale-major:
/// index = (scale_idx · n_angles + angle_idx) · N^n + b_flat.
#[derive(Debug, Clone)]
pub struct CoefficientVolume {
    group: GroupGrid,
    data: Vec<Multivector>,
}

impl CoefficientVolume {
    pub fn new(group: GroupGrid, data: Vec<Multivector>) -> Result<Self> {
        let expect = group.node_count();
        if data.len() != expect {
            return Err(Error::InvalidParameter(format!(
                "coefficient volume needs {expect} entries, got {}",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|m| !m.is_finite()) {
            return Err(Error::NonFiniteSample(bad));
        }
        Ok(CoefficientVolume { group, data })
    }

    pub fn zero(group: GroupGrid) -> Self {
        let dim = group.dim();
        let len = group.node_count();
        CoefficientVolume {
            group,
            data: vec![Multivector::zero(dim); len],
        }
    }

    pub fn group(&self) -> &GroupGrid {
        &self.group
    }

    pub fn data(&self) -> &[Multivector] {
        &self.data
    }

    fn slice_range(&self, scale_idx: usize, angle_idx: usize) -> Result<std::ops::Range<usize>> {
        if scale_idx >= self.group.scales().len() || angle_idx >= self.group.angles().len() {
            return Err(Error::SliceOutOfRange(scale_idx, angle_idx));
        }
        let npts = self.group.translations().total_points();
        let start = (scale_idx * self.group.angles().len() + angle_idx) * npts;
        Ok(start..start + npts)
    }

    /// The b-slice at one (scale, angle) node.
    pub fn slice(&self, scale_idx: usize, angle_idx: usize) -> Result<&[Multivector]> {
        Ok(&self.data[self.slice_range(scale_idx, angle_idx)?])
    }

    pub fn at(&self, scale_idx: usize, angle_idx: usize, b_flat: usize) -> Result<Multivector> {
        let r = self.slice_range(scale_idx, angle_idx)?;
        Ok(self.data[r.start + b_flat])
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|m| m.modulus()).fold(0.0, f64::max)
    }

    /// Group inner product (T, U)_{L²(G)} = Σ w_a w_θ Σ_b T rev(U) Δx^n.
    pub fn group_inner_product(&self, other: &CoefficientVolume) -> Result<Multivector> {
        if self.group.dim() != other.group.dim()
            || self.group.translations() != other.group.translations()
            || self.group.scales().len() != other.group.scales().len()
            || self.group.angles().len() != other.group.angles().len()
        {
            return Err(Error::GridMismatch);
        }
        let dx = self.group.translations().cell_volume();
        let mut acc = Multivector::zero(self.group.dim());
        for (si, s) in self.group.scales().iter().enumerate() {
            for (ai, a) in self.group.angles().iter().enumerate() {
                let inner = quadrature_inner(
                    self.slice(si, ai)?,
                    other.slice(si, ai)?,
                    dx,
                )?;
                acc = acc + inner.scale(s.weight * a.weight);
            }
        }
        Ok(acc)
    }

    /// ‖T‖²_{L²(G)}.
    pub fn group_norm_squared(&self) -> f64 {
        let dx = self.group.translations().cell_volume();
        let mut acc = 0.0;
        for (si, s) in self.group.scales().iter().enumerate() {
            for (ai, a) in self.group.angles().iter().enumerate() {
                let sum: f64 = self
                    .slice(si, ai)
                    .expect("indices in range")
                    .iter()
                    .map(|m| m.modulus().powi(2))
                    .sum();
                acc += s.weight * a.weight * sum * dx;
            }
        }
        acc
    }

    /// Largest pointwise modulus of the difference, for path comparisons.
    pub fn max_difference(&self, other: &CoefficientVolume) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max)
    }
}

fn check_analysis_inputs<W: MotherWavelet>(
    f: &MultivectorField,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<()> {
    if f.grid().dim() != psi.dim() {
        return Err(Error::DimensionMismatch);
    }
    if f.grid() != gg.translations() {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// Spectrum samples of the scale-rotated daughter at b = 0:
/// S(ω_k) = a^{n/2} ψ̂(a r_θ^{-1}(ω_k)).
fn slice_spectrum(
    psi: &dyn MotherWavelet,
    scale: f64,
    rotation: &Rotation,
    grid: &GridSpec,
) -> Vec<Multivector> {
    let n = grid.dim().n();
    if psi.spectrum(&[0.0; 3][..n]).is_some() {
        let amp = scale.powf(n as f64 / 2.0);
        (0..grid.total_points())
            .map(|flat| {
                let om = grid.freq_node(flat);
                let rotated = rotation.apply_inverse(&om);
                let mut arg = [0.0; 3];
                for a in 0..n {
                    arg[a] = scale * rotated[a];
                }
                psi.spectrum(&arg[..n])
                    .expect("closed-form spectrum")
                    .scale(amp)
            })
            .collect()
    } else {
        let table = daughter_table(psi, scale, rotation, grid);
        let sampled = MultivectorField::new(*grid, table).expect("daughter table field");
        cft_forward(&sampled).data().to_vec()
    }
}

/// Direct quadrature of the transform definition, O(N^{2n}) per (a,θ)
/// slice. Reference path; prefer [`analyze_spectral`].
pub fn analyze_direct<W: MotherWavelet>(
    f: &MultivectorField,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<CoefficientVolume> {
    check_analysis_inputs(f, psi, gg)?;
    let grid = *f.grid();
    let n = grid.dim().n();
    let npts = grid.points_per_axis();
    let dx = grid.cell_volume();
    let slices: Vec<(usize, usize)> = (0..gg.scales().len())
        .flat_map(|si| (0..gg.angles().len()).map(move |ai| (si, ai)))
        .collect();
    let computed: Vec<Vec<Multivector>> = slices
        .par_iter()
        .map(|&(si, ai)| {
            let table = daughter_table(
                psi.wavelet(),
                gg.scales()[si].a,
                &gg.angles()[ai].rotation,
                &grid,
            );
            let rev_table: Vec<Multivector> = table.iter().map(|m| m.reverse()).collect();
            (0..grid.total_points())
                .map(|b_flat| {
                    let b_idx = grid.axis_indices(b_flat);
                    let mut acc = Multivector::zero(grid.dim());
                    for j_flat in 0..grid.total_points() {
                        let j_idx = grid.axis_indices(j_flat);
                        let mut src = [0usize; 3];
                        for a in 0..n {
                            // displacement x_j - b lands at table index
                            // j - b_idx + N/2 (the x = 0 node sits at N/2)
                            src[a] = (j_idx[a] + npts + npts / 2 - b_idx[a]) % npts;
                        }
                        acc = acc + f.data()[j_flat] * rev_table[grid.flat_index(src)];
                    }
                    acc.scale(dx)
                })
                .collect()
        })
        .collect();
    let mut data = Vec::with_capacity(gg.node_count());
    for slice in computed {
        data.extend(slice);
    }
    CoefficientVolume::new(gg.clone(), data)
}

/// FFT-accelerated analysis through the spectral representation: one
/// forward transform of f, then per (a,θ) one inverse-style transform of
/// f̂(ω) rev(S(ω)) with the parity sign ε in the kernel.
pub fn analyze_spectral<W: MotherWavelet>(
    f: &MultivectorField,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<CoefficientVolume> {
    check_analysis_inputs(f, psi, gg)?;
    let grid = *f.grid();
    let f_hat = cft_forward(f);
    let eps = psi.epsilon();
    let slices: Vec<(usize, usize)> = (0..gg.scales().len())
        .flat_map(|si| (0..gg.angles().len()).map(move |ai| (si, ai)))
        .collect();
    let computed: Vec<Vec<Multivector>> = slices
        .par_iter()
        .map(|&(si, ai)| {
            let s_vals = slice_spectrum(
                psi.wavelet(),
                gg.scales()[si].a,
                &gg.angles()[ai].rotation,
                &grid,
            );
            let g: Vec<Multivector> = f_hat
                .data()
                .iter()
                .zip(s_vals.iter())
                .map(|(fh, s)| *fh * s.reverse())
                .collect();
            phase_synthesis(&g, &grid, eps)
        })
        .collect();
    let mut data = Vec::with_capacity(gg.node_count());
    for slice in computed {
        data.extend(slice);
    }
    CoefficientVolume::new(gg.clone(), data)
}

/// Inverse transform: f(x) ≈ Σ_{a,θ,b} T(a,θ,b) ψ_{a,θ,b}(x) C_ψ^{-1}
/// w_a w_θ Δx^n, evaluated spectrally: per slice the b-sum collapses to
/// one FFT of the coefficients, the daughter spectrum multiplies from the
/// right, and a single inverse transform maps the accumulated spectrum
/// back before the final right-multiplication by C_ψ^{-1}.
pub fn synthesize<W: MotherWavelet>(
    w: &CoefficientVolume,
    psi: &Admissible<W>,
) -> Result<MultivectorField> {
    let gg = w.group();
    if gg.dim() != psi.dim() {
        return Err(Error::DimensionMismatch);
    }
    let grid = *gg.translations();
    let eps = psi.epsilon();
    let slices: Vec<(usize, usize)> = (0..gg.scales().len())
        .flat_map(|si| (0..gg.angles().len()).map(move |ai| (si, ai)))
        .collect();
    let parts: Vec<Vec<Multivector>> = slices
        .par_iter()
        .map(|&(si, ai)| {
            let weight = gg.scales()[si].weight * gg.angles()[ai].weight;
            let s_vals = slice_spectrum(
                psi.wavelet(),
                gg.scales()[si].a,
                &gg.angles()[ai].rotation,
                &grid,
            );
            let t_slice = w.slice(si, ai).expect("slice enumeration in range");
            let g = phase_analysis(t_slice, &grid, -eps);
            g.iter()
                .zip(s_vals.iter())
                .map(|(gv, sv)| (*gv * *sv).scale(weight))
                .collect()
        })
        .collect();
    let mut acc = vec![Multivector::zero(grid.dim()); grid.total_points()];
    for part in parts {
        for (a, p) in acc.iter_mut().zip(part) {
            *a = *a + p;
        }
    }
    let spatial = phase_synthesis(&acc, &grid, 1.0);
    let c_inv = psi.constant_inverse();
    let data = spatial.iter().map(|m| *m * c_inv).collect();
    MultivectorField::new(grid, data)
}

/// Both sides of the inner product relation
/// (T_ψf, T_ψg)_{L²(G)} = (f C_ψ, g)_{L²(ℝⁿ)}, for assertion of equality.
pub fn inner_product_relation<W: MotherWavelet>(
    f: &MultivectorField,
    g: &MultivectorField,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<(Multivector, Multivector)> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let tf = analyze_spectral(f, psi, gg)?;
    let tg = analyze_spectral(g, psi, gg)?;
    let lhs = tf.group_inner_product(&tg)?;
    let c = psi.constant();
    let fc: Vec<Multivector> = f.data().iter().map(|m| *m * c).collect();
    let rhs = quadrature_inner(&fc, g.data(), f.grid().cell_volume())?;
    Ok((lhs, rhs))
}

/// The reproducing kernel K_ψ(g1; g2) = (ψ_{g1} C_ψ^{-1}, ψ_{g2}) via
/// spatial quadrature.
pub fn reproducing_kernel<W: MotherWavelet>(
    psi: &Admissible<W>,
    g1: &SimElement,
    g2: &SimElement,
    grid: &GridSpec,
) -> Result<Multivector> {
    if grid.dim() != psi.dim() {
        return Err(Error::DimensionMismatch);
    }
    let d1 = daughter(psi.wavelet(), g1, grid);
    let d2 = daughter(psi.wavelet(), g2, grid);
    let c_inv = psi.constant_inverse();
    let lhs: Vec<Multivector> = d1.data().iter().map(|m| *m * c_inv).collect();
    quadrature_inner(&lhs, d2.data(), grid.cell_volume())
}

/// Verifies left linearity T_ψ(λ1 f + λ2 g) = λ1 T_ψf + λ2 T_ψg within
/// 1e-10 of the coefficient magnitude.
pub fn left_linearity_check<W: MotherWavelet>(
    f: &MultivectorField,
    g: &MultivectorField,
    lambda1: &Multivector,
    lambda2: &Multivector,
    psi: &Admissible<W>,
    gg: &GroupGrid,
) -> Result<bool> {
    let combo = f.left_mul(lambda1)?.add(&g.left_mul(lambda2)?)?;
    let t_combo = analyze_spectral(&combo, psi, gg)?;
    let tf = analyze_spectral(f, psi, gg)?;
    let tg = analyze_spectral(g, psi, gg)?;
    let scale = t_combo.max_modulus().max(1.0);
    let worst = t_combo
        .data()
        .iter()
        .zip(tf.data().iter().zip(tg.data()))
        .map(|(c, (a, b))| (*c - (*lambda1 * *a + *lambda2 * *b)).modulus())
        .fold(0.0, f64::max);
    Ok(worst <= 1e-10 * scale)
}
