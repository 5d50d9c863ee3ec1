//! Sampled multivector signals on uniform periodic grids.
//!
//! A field discretizes f: R^n -> Cl_n on [-L, L)^n with N samples per axis,
//! N a power of two. All continuous integrals become Riemann sums with
//! weight (Δx)^n; test signals are chosen to decay below rounding at the
//! boundary, so the periodization is harmless.

use crate::clifford::{Dimension, Multivector};
use crate::error::{Error, Result};

/// Geometry of a sampling grid over [-L, L)^n.
///
/// Sample locations are x_j = -L + j Δx with Δx = 2L/N. The matching
/// frequency grid is ω_k = π k / L for k in [-N/2, N/2), stored fft-shifted
/// so index 0 holds k = -N/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: Dimension,
    points_per_axis: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(dim: Dimension, points_per_axis: usize, half_width: f64) -> Result<Self> {
        if points_per_axis < 2 || !points_per_axis.is_power_of_two() {
            return Err(Error::InvalidGridSize(points_per_axis));
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidHalfWidth(half_width));
        }
        Ok(GridSpec {
            dim,
            points_per_axis,
            half_width,
        })
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    #[inline]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Frequency spacing Δω = π / L.
    #[inline]
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    /// Total number of nodes N^n.
    #[inline]
    pub fn total_points(&self) -> usize {
        self.points_per_axis.pow(self.dim.n() as u32)
    }

    /// Quadrature weight Δx^n of one spatial cell.
    #[inline]
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim.n() as i32)
    }

    /// Quadrature weight Δω^n of one frequency cell.
    #[inline]
    pub fn freq_cell_volume(&self) -> f64 {
        self.freq_spacing().powi(self.dim.n() as i32)
    }

    /// Coordinate of grid index j along one axis.
    #[inline]
    pub fn coord(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    /// Frequency of storage index j along one axis (fft-shifted layout).
    #[inline]
    pub fn freq(&self, j: usize) -> f64 {
        let k = j as isize - (self.points_per_axis / 2) as isize;
        std::f64::consts::PI * k as f64 / self.half_width
    }

    /// Per-axis indices of a flat row-major node index (axis x_1 slowest).
    #[inline]
    pub fn axis_indices(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        let mut out = [0usize; 3];
        match self.dim.n() {
            2 => {
                out[0] = flat / n;
                out[1] = flat % n;
            }
            _ => {
                out[0] = flat / (n * n);
                out[1] = (flat / n) % n;
                out[2] = flat % n;
            }
        }
        out
    }

    #[inline]
    pub fn flat_index(&self, axes: [usize; 3]) -> usize {
        let n = self.points_per_axis;
        match self.dim.n() {
            2 => axes[0] * n + axes[1],
            _ => (axes[0] * n + axes[1]) * n + axes[2],
        }
    }

    /// Spatial coordinates of a flat node index; unused entries are 0.
    #[inline]
    pub fn node(&self, flat: usize) -> [f64; 3] {
        let idx = self.axis_indices(flat);
        let mut x = [0.0; 3];
        for k in 0..self.dim.n() {
            x[k] = self.coord(idx[k]);
        }
        x
    }

    /// Frequency coordinates of a flat node index in the shifted layout.
    #[inline]
    pub fn freq_node(&self, flat: usize) -> [f64; 3] {
        let idx = self.axis_indices(flat);
        let mut w = [0.0; 3];
        for k in 0..self.dim.n() {
            w[k] = self.freq(idx[k]);
        }
        w
    }

    /// Wrap a displacement into the fundamental domain [-L, L).
    #[inline]
    pub fn wrap(&self, d: f64) -> f64 {
        let span = 2.0 * self.half_width;
        let mut r = (d + self.half_width).rem_euclid(span) - self.half_width;
        if r >= self.half_width {
            r -= span;
        }
        r
    }
}

/// A multivector-valued signal sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct MultivectorField {
    grid: GridSpec,
    data: Vec<Multivector>,
}

impl MultivectorField {
    pub fn new(grid: GridSpec, data: Vec<Multivector>) -> Result<Self> {
        if data.len() != grid.total_points() {
            return Err(Error::InvalidParameter(format!(
                "field needs {} samples, got {}",
                grid.total_points(),
                data.len()
            )));
        }
        for (i, m) in data.iter().enumerate() {
            if m.dim() != grid.dim() {
                return Err(Error::DimensionMismatch);
            }
            if !m.is_finite() {
                return Err(Error::NonFiniteSample(i));
            }
        }
        Ok(MultivectorField { grid, data })
    }

    pub fn zero(grid: GridSpec) -> Self {
        MultivectorField {
            data: vec![Multivector::zero(grid.dim()); grid.total_points()],
            grid,
        }
    }

    /// Evaluate a closed-form multivector function at every grid node.
    pub fn sample_closed_form<F>(grid: GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Multivector + Sync,
    {
        let n = grid.dim().n();
        let mut data = Vec::with_capacity(grid.total_points());
        for flat in 0..grid.total_points() {
            let x = grid.node(flat);
            let v = f(&x[..n]);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample(flat));
            }
            data.push(v);
        }
        Ok(MultivectorField { grid, data })
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn data(&self) -> &[Multivector] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Multivector] {
        &mut self.data
    }

    /// L^2 inner product (f, g) = Σ_j f(x_j) g̃(x_j) Δx^n, a multivector.
    pub fn inner_product(&self, other: &MultivectorField) -> Result<Multivector> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        quadrature_inner(&self.data, &other.data, self.grid.cell_volume())
    }

    /// L^2 norm, the square root of the scalar part of (f, f).
    pub fn l2_norm(&self) -> f64 {
        let w = self.grid.cell_volume();
        let s: f64 = self.data.iter().map(|m| {
            let r = m.modulus();
            r * r
        }).sum();
        (s * w).sqrt()
    }

    /// Pointwise left multiplication by a constant multivector.
    pub fn left_mul(&self, lambda: &Multivector) -> Result<MultivectorField> {
        let mut data = Vec::with_capacity(self.data.len());
        for m in &self.data {
            data.push(lambda.geometric_product(m)?);
        }
        Ok(MultivectorField {
            grid: self.grid,
            data,
        })
    }

    pub fn scale(&self, c: f64) -> MultivectorField {
        MultivectorField {
            grid: self.grid,
            data: self.data.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &MultivectorField) -> Result<MultivectorField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(MultivectorField {
            grid: self.grid,
            data,
        })
    }

    pub fn sub(&self, other: &MultivectorField) -> Result<MultivectorField> {
        self.add(&other.scale(-1.0))
    }
}

/// Shared quadrature kernel: Σ_j a_j b̃_j · weight.
pub(crate) fn quadrature_inner(
    a: &[Multivector],
    b: &[Multivector],
    weight: f64,
) -> Result<Multivector> {
    let dim = a.first().map(|m| m.dim()).unwrap_or(Dimension::new(2)?);
    let mut acc = Multivector::zero(dim);
    for (fa, fb) in a.iter().zip(b.iter()) {
        acc = acc + fa.geometric_product(&fb.reverse())?;
    }
    Ok(acc.scale(weight))
}
