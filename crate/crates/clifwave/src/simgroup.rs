//! The similitude group SIM(n) = R+ x SO(n) x R^n: group elements, rotor
//! rotations, Haar-measure quadrature grids, and daughter-wavelet
//! generation.
//!
//! Rotations act through rotor sandwiches R x R̃. The group measure
//! dλ = da dθ d^n b / a^{n+1} is discretized with a midpoint rule in log a
//! (so the scale weight is Δ(log a) · a^{-n}), normalized Haar weights on
//! SO(n) (uniform for n = 2; Gauss-Legendre in cos θ1 times uniform θ2, θ3
//! for n = 3), and the signal grid for translations.

use crate::cft::Spectrum;
use crate::clifford::{Dimension, Multivector};
use crate::cwt::MotherWavelet;
use crate::error::{Error, Result};
use crate::field::{GridSpec, MultivectorField};
use std::f64::consts::PI;

/// A rotation of R^n: one angle for n = 2, z-y-z Euler angles for n = 3
/// with θ1 the middle (polar) angle carrying the sin θ1 Haar density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    dim: Dimension,
    angles: [f64; 3],
}

impl Rotation {
    pub fn identity(dim: Dimension) -> Self {
        Rotation {
            dim,
            angles: [0.0; 3],
        }
    }

    /// Plane rotation by θ (n = 2).
    pub fn plane(theta: f64) -> Self {
        Rotation {
            dim: Dimension::new(2).expect("static dimension"),
            angles: [theta.rem_euclid(2.0 * PI), 0.0, 0.0],
        }
    }

    /// Euler rotation Rz(θ2) · Ry(θ1) · Rz(θ3) with θ1 in [0, π].
    pub fn euler(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta1) {
            return Err(Error::InvalidParameter(format!(
                "polar Euler angle must lie in [0, π], got {theta1}"
            )));
        }
        Ok(Rotation {
            dim: Dimension::new(3).expect("static dimension"),
            angles: [
                theta1,
                theta2.rem_euclid(2.0 * PI),
                theta3.rem_euclid(2.0 * PI),
            ],
        })
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn angles(&self) -> &[f64; 3] {
        &self.angles
    }

    /// The rotor R with x ↦ R x R̃; an even-grade unit multivector.
    pub fn rotor(&self) -> Multivector {
        match self.dim.n() {
            2 => {
                let h = self.angles[0] / 2.0;
                Multivector::scalar(self.dim, h.cos())
                    - Multivector::basis_blade(self.dim, 0b11).scale(h.sin())
            }
            _ => {
                // plane bivectors: z-rotation in e1e2, y-rotation in e3e1
                let rot_z = |phi: f64| {
                    Multivector::scalar(self.dim, (phi / 2.0).cos())
                        - Multivector::basis_blade(self.dim, 0b011).scale((phi / 2.0).sin())
                };
                let rot_y = |phi: f64| {
                    Multivector::scalar(self.dim, (phi / 2.0).cos())
                        + Multivector::basis_blade(self.dim, 0b101).scale((phi / 2.0).sin())
                };
                rot_z(self.angles[1]) * rot_y(self.angles[0]) * rot_z(self.angles[2])
            }
        }
    }

    /// Apply r_θ to a vector.
    pub fn apply(&self, x: &[f64; 3]) -> [f64; 3] {
        self.sandwich(x, false)
    }

    /// Apply r_θ^{-1} to a vector.
    pub fn apply_inverse(&self, x: &[f64; 3]) -> [f64; 3] {
        self.sandwich(x, true)
    }

    fn sandwich(&self, x: &[f64; 3], inverse: bool) -> [f64; 3] {
        if self.dim.n() == 2 {
            let t = if inverse {
                -self.angles[0]
            } else {
                self.angles[0]
            };
            let (s, c) = t.sin_cos();
            return [c * x[0] - s * x[1], s * x[0] + c * x[1], 0.0];
        }
        let r = self.rotor();
        let r = if inverse { r.reverse() } else { r };
        let v = Multivector::vector(self.dim, &x[..3]);
        let out = r * v * r.reverse();
        [out.coeff(0b001), out.coeff(0b010), out.coeff(0b100)]
    }

    /// Composition r_self ∘ r_other for plane rotations.
    pub fn compose_plane(&self, other: &Rotation) -> Rotation {
        debug_assert_eq!(self.dim.n(), 2);
        Rotation::plane(self.angles[0] + other.angles[0])
    }
}

/// One element (a, θ, b) of SIM(n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimElement {
    pub scale: f64,
    pub rotation: Rotation,
    pub translation: [f64; 3],
}

impl SimElement {
    pub fn new(scale: f64, rotation: Rotation, translation: [f64; 3]) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dilation must be positive, got {scale}"
            )));
        }
        Ok(SimElement {
            scale,
            rotation,
            translation,
        })
    }

    pub fn identity(dim: Dimension) -> Self {
        SimElement {
            scale: 1.0,
            rotation: Rotation::identity(dim),
            translation: [0.0; 3],
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        // Newton iteration from the Chebyshev initial guess
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Scale and angle counts spanning a [`GroupGrid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupParams {
    pub a_min: f64,
    pub a_max: f64,
    pub n_scales: usize,
    /// Angle nodes per Euler axis; n = 2 uses only the first entry.
    pub n_angles: [usize; 3],
}

/// A scale node a_i with its quadrature weight Δ(log a) · a_i^{-n}.
#[derive(Debug, Clone, Copy)]
pub struct ScaleNode {
    pub a: f64,
    pub weight: f64,
}

/// A rotation node with its normalized Haar weight.
#[derive(Debug, Clone)]
pub struct AngleNode {
    pub rotation: Rotation,
    pub weight: f64,
}

/// Discretization of SIM(n) with quadrature weights realizing the left
/// Haar measure dλ = da dθ d^n b / a^{n+1}.
#[derive(Debug, Clone)]
pub struct GroupGrid {
    dim: Dimension,
    scales: Vec<ScaleNode>,
    angles: Vec<AngleNode>,
    translations: GridSpec,
    params: GroupParams,
}

impl GroupGrid {
    pub fn new(translations: GridSpec, params: GroupParams) -> Result<Self> {
        if !(params.a_min > 0.0 && params.a_max > params.a_min) {
            return Err(Error::InvalidParameter(format!(
                "scale range [{}, {}] is not an increasing positive interval",
                params.a_min, params.a_max
            )));
        }
        if params.n_scales == 0 {
            return Err(Error::InvalidParameter("need at least one scale".into()));
        }
        let dim = translations.dim();
        let n = dim.n();

        let step = (params.a_max / params.a_min).ln() / params.n_scales as f64;
        let scales = (0..params.n_scales)
            .map(|i| {
                let a = params.a_min * ((i as f64 + 0.5) * step).exp();
                ScaleNode {
                    a,
                    weight: step * a.powi(-(n as i32)),
                }
            })
            .collect();

        let angles = match n {
            2 => {
                let m = params.n_angles[0].max(1);
                (0..m)
                    .map(|j| AngleNode {
                        rotation: Rotation::plane(2.0 * PI * j as f64 / m as f64),
                        // rotation measure carries the full circle 2π
                        weight: 2.0 * PI / m as f64,
                    })
                    .collect()
            }
            _ => {
                let (m1, m2, m3) = (
                    params.n_angles[0].max(1),
                    params.n_angles[1].max(1),
                    params.n_angles[2].max(1),
                );
                let polar = gauss_legendre(m1);
                let mut nodes = Vec::with_capacity(m1 * m2 * m3);
                for &(u, wu) in &polar {
                    let theta1 = u.clamp(-1.0, 1.0).acos();
                    for j2 in 0..m2 {
                        for j3 in 0..m3 {
                            nodes.push(AngleNode {
                                rotation: Rotation::euler(
                                    theta1,
                                    2.0 * PI * j2 as f64 / m2 as f64,
                                    2.0 * PI * j3 as f64 / m3 as f64,
                                )?,
                                // rotation measure integrates directions over
                                // the full sphere: total weight 4π
                                weight: 2.0 * PI * wu / (m2 * m3) as f64,
                            });
                        }
                    }
                }
                nodes
            }
        };

        Ok(GroupGrid {
            dim,
            scales,
            angles,
            translations,
            params,
        })
    }

    /// Default discretization: a in [2Δx, L/4] with 16 log-spaced scales,
    /// 16 angles for n = 2 and 8x8x8 Euler nodes for n = 3. On grids too
    /// coarse for that window (L/4 ≤ 2Δx) it falls back to one octave
    /// around the geometric centre of the two bounds.
    pub fn default_for(grid: GridSpec) -> Result<Self> {
        let mut a_min = 2.0 * grid.spacing();
        let mut a_max = grid.half_width() / 4.0;
        if a_max <= a_min {
            let centre = (a_min * a_max).sqrt();
            a_min = centre / std::f64::consts::SQRT_2;
            a_max = centre * std::f64::consts::SQRT_2;
        }
        let params = GroupParams {
            a_min,
            a_max,
            n_scales: 16,
            n_angles: if grid.dim().n() == 2 {
                [16, 1, 1]
            } else {
                [8, 8, 8]
            },
        };
        Self::new(grid, params)
    }

    /// 2x refinement: doubled scale and angle counts with the scale window
    /// widened by √2 on both ends, so both the quadrature step and the
    /// truncation of the scale integral shrink.
    pub fn refine(&self) -> Result<Self> {
        let sqrt2 = std::f64::consts::SQRT_2;
        let p = self.params;
        Self::new(
            self.translations,
            GroupParams {
                a_min: p.a_min / sqrt2,
                a_max: p.a_max * sqrt2,
                n_scales: p.n_scales * 2,
                n_angles: [
                    p.n_angles[0] * 2,
                    if self.dim.n() == 2 {
                        1
                    } else {
                        p.n_angles[1] * 2
                    },
                    if self.dim.n() == 2 {
                        1
                    } else {
                        p.n_angles[2] * 2
                    },
                ],
            },
        )
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn scales(&self) -> &[ScaleNode] {
        &self.scales
    }

    pub fn angles(&self) -> &[AngleNode] {
        &self.angles
    }

    pub fn translations(&self) -> &GridSpec {
        &self.translations
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    /// Total number of group nodes.
    pub fn node_count(&self) -> usize {
        self.scales.len() * self.angles.len() * self.translations.total_points()
    }

    pub fn element(&self, scale_idx: usize, angle_idx: usize, b_flat: usize) -> SimElement {
        SimElement {
            scale: self.scales[scale_idx].a,
            rotation: self.angles[angle_idx].rotation,
            translation: self.translations.node(b_flat),
        }
    }
}

/// Periodized daughter values on the displacement grid: the value at
/// displacement d is ψ_{a,θ,0}(d) summed over periodic images, so that
/// translation acts as an exact cyclic shift on the sampled torus.
/// Image shells are added until their contribution falls below rounding.
pub(crate) fn daughter_table(
    psi: &dyn MotherWavelet,
    scale: f64,
    rotation: &Rotation,
    grid: &GridSpec,
) -> Vec<Multivector> {
    let dim = grid.dim();
    let n = dim.n();
    let amp = scale.powf(-(n as f64) / 2.0);
    let span = 2.0 * grid.half_width();
    let mut table = vec![Multivector::zero(dim); grid.total_points()];
    let mut table_max = 0.0f64;
    for shell in 0..=4usize {
        let mut shell_max = 0.0f64;
        let images = image_shifts(n, shell);
        if images.is_empty() {
            break;
        }
        for flat in 0..grid.total_points() {
            let x = grid.node(flat);
            let mut add = Multivector::zero(dim);
            for m in &images {
                let mut y = [0.0; 3];
                for a in 0..n {
                    y[a] = (x[a] + span * m[a] as f64) / scale;
                }
                let z = rotation.apply_inverse(&y);
                add = add + psi.eval(&z[..n]);
            }
            let add = add.scale(amp);
            shell_max = shell_max.max(add.modulus());
            table[flat] = table[flat] + add;
        }
        table_max = table_max.max(shell_max);
        if shell > 0 && shell_max <= 1e-15 * table_max {
            break;
        }
    }
    table
}

/// Image shifts with max-norm exactly `shell`.
fn image_shifts(n: usize, shell: usize) -> Vec<[i32; 3]> {
    let s = shell as i32;
    let mut out = Vec::new();
    let range = -s..=s;
    for i in range.clone() {
        for j in range.clone() {
            if n == 2 {
                if i.abs().max(j.abs()) == s {
                    out.push([i, j, 0]);
                }
            } else {
                for k in range.clone() {
                    if i.abs().max(j.abs()).max(k.abs()) == s {
                        out.push([i, j, k]);
                    }
                }
            }
        }
    }
    out
}

/// The daughter wavelet ψ_{a,θ,b}(x) = a^{-n/2} ψ(r_θ^{-1}((x-b)/a)),
/// sampled on `grid` by closed-form evaluation at periodically wrapped
/// displacements (no resampling or interpolation).
pub fn daughter(psi: &dyn MotherWavelet, g: &SimElement, grid: &GridSpec) -> MultivectorField {
    let table = daughter_table(psi, g.scale, &g.rotation, grid);
    let n = grid.dim().n();
    let npts = grid.points_per_axis();
    // displacement x - b wrapped onto the grid: shift the table by b. For
    // off-grid b the wrapped displacements still form a uniform grid, so
    // evaluate directly in that case.
    let steps: Option<[usize; 3]> = {
        let mut s = [0usize; 3];
        let mut aligned = true;
        for a in 0..n {
            let t = g.translation[a] / grid.spacing();
            let r = t.round();
            if (t - r).abs() < 1e-9 {
                s[a] = (r as i64).rem_euclid(npts as i64) as usize;
            } else {
                aligned = false;
            }
        }
        aligned.then_some(s)
    };
    let data = match steps {
        Some(s) => (0..grid.total_points())
            .map(|flat| {
                let idx = grid.axis_indices(flat);
                let mut src = [0usize; 3];
                for a in 0..n {
                    src[a] = (idx[a] + npts - s[a]) % npts;
                }
                table[grid.flat_index(src)]
            })
            .collect(),
        None => {
            let dim = grid.dim();
            let amp = g.scale.powf(-(n as f64) / 2.0);
            let span = 2.0 * grid.half_width();
            (0..grid.total_points())
                .map(|flat| {
                    let x = grid.node(flat);
                    let mut acc = Multivector::zero(dim);
                    for shell in 0..=3usize {
                        let mut shell_add = Multivector::zero(dim);
                        for m in image_shifts(n, shell) {
                            let mut y = [0.0; 3];
                            for a in 0..n {
                                y[a] = (grid.wrap(x[a] - g.translation[a])
                                    + span * m[a] as f64)
                                    / g.scale;
                            }
                            let z = g.rotation.apply_inverse(&y);
                            shell_add = shell_add + psi.eval(&z[..n]);
                        }
                        acc = acc + shell_add;
                        if shell > 0 && shell_add.modulus() <= 1e-15 * acc.modulus() {
                            break;
                        }
                    }
                    acc.scale(amp)
                })
                .collect()
        }
    };
    MultivectorField::new(*grid, data).expect("daughter evaluation produced invalid field")
}

/// Spectral form of the daughter wavelet:
/// a^{n/2} ψ̂(a r_θ^{-1}(ω_k)) · exp(-i_n b·ω_k), using the mother's
/// closed-form spectrum when available and the transform of the sampled
/// daughter otherwise.
pub fn daughter_spectrum(
    psi: &dyn MotherWavelet,
    g: &SimElement,
    grid: &GridSpec,
) -> Spectrum {
    let dim = grid.dim();
    let n = dim.n();
    if psi.spectrum(&[0.0; 3][..n]).is_none() {
        return crate::cft::cft_forward(&daughter(psi, g, grid));
    }
    let amp = g.scale.powf(n as f64 / 2.0);
    let i_n = Multivector::pseudoscalar(dim);
    let data = (0..grid.total_points())
        .map(|flat| {
            let om = grid.freq_node(flat);
            let mut scaled = [0.0; 3];
            let rotated = g.rotation.apply_inverse(&om);
            for a in 0..n {
                scaled[a] = g.scale * rotated[a];
            }
            let base = psi
                .spectrum(&scaled[..n])
                .expect("closed-form spectrum vanished mid-evaluation");
            let phase: f64 = (0..n).map(|a| g.translation[a] * om[a]).sum();
            let kernel = Multivector::scalar(dim, phase.cos()) - i_n.scale(phase.sin());
            base.scale(amp) * kernel
        })
        .collect();
    Spectrum::new(*grid, data).expect("daughter spectrum has grid size")
}
