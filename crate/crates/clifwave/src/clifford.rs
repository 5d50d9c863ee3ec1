//! Arithmetic in the Euclidean Clifford algebras Cl_2 and Cl_3.
//!
//! Multivectors carry 2^n real blade coefficients indexed by bitmask: bit k
//! set means e_{k+1} is a factor of the blade, with factors in ascending
//! index order. For Cl_3 the basis order is therefore
//! `{1, e1, e2, e12, e3, e13, e23, e123}` at indices 0..8. Signs of blade
//! products are computed by counting transpositions, so the full product
//! table never needs to be stored.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Algebra dimension, restricted to n = 2 or n = 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension(u8);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        match n {
            2 | 3 => Ok(Dimension(n as u8)),
            _ => Err(Error::InvalidDimension(n)),
        }
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// Number of basis blades, 2^n.
    #[inline]
    pub fn blade_count(self) -> usize {
        1 << self.0
    }

    /// Bitmask of the top blade e_1...e_n.
    #[inline]
    pub fn pseudoscalar_mask(self) -> usize {
        (1 << self.0) - 1
    }
}

/// Grade parity of a multivector: all even grades, all odd grades, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradeParity {
    Even,
    Odd,
    Mixed,
}

impl GradeParity {
    /// The sign ε used by the spectral wavelet transform kernel for n = 2.
    /// Spinor (even) wavelets take ε = +1, odd-parity wavelets ε = -1.
    pub fn epsilon(self) -> Option<f64> {
        match self {
            GradeParity::Even => Some(1.0),
            GradeParity::Odd => Some(-1.0),
            GradeParity::Mixed => None,
        }
    }
}

/// Sign of the product e_A e_B in Euclidean signature, ignoring the
/// resulting blade (which is A XOR B). Counts the transpositions needed to
/// bring the concatenated factor list into canonical ascending order.
#[inline]
pub fn product_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// One element of Cl_n stored as blade coefficients. Values are immutable in
/// spirit: every operation returns a new multivector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multivector {
    dim: Dimension,
    coeffs: [f64; 8],
}

impl Multivector {
    pub fn zero(dim: Dimension) -> Self {
        Multivector {
            dim,
            coeffs: [0.0; 8],
        }
    }

    pub fn scalar(dim: Dimension, value: f64) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[0] = value;
        m
    }

    /// The unit basis blade with the given bitmask.
    pub fn basis_blade(dim: Dimension, mask: usize) -> Self {
        assert!(mask < dim.blade_count(), "blade index out of range");
        let mut m = Self::zero(dim);
        m.coeffs[mask] = 1.0;
        m
    }

    /// A pure vector from its n components.
    pub fn vector(dim: Dimension, v: &[f64]) -> Self {
        let mut m = Self::zero(dim);
        for (k, &c) in v.iter().take(dim.n()).enumerate() {
            m.coeffs[1 << k] = c;
        }
        m
    }

    pub fn from_coeffs(dim: Dimension, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != dim.blade_count() {
            return Err(Error::InvalidParameter(format!(
                "expected {} blade coefficients, got {}",
                dim.blade_count(),
                coeffs.len()
            )));
        }
        let mut m = Self::zero(dim);
        m.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(m)
    }

    /// The pseudoscalar i_n = e_1...e_n, which squares to -1 for n = 2, 3.
    pub fn pseudoscalar(dim: Dimension) -> Self {
        Self::basis_blade(dim, dim.pseudoscalar_mask())
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    #[inline]
    pub fn set_coeff(&mut self, mask: usize, value: f64) {
        assert!(mask < self.dim.blade_count());
        self.coeffs[mask] = value;
    }

    /// Blade coefficients in ascending bitmask order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.dim.blade_count()]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Geometric product. Errors on mismatched algebra dimensions.
    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        let m = self.dim.blade_count();
        let mut out = Multivector::zero(self.dim);
        for a in 0..m {
            let ca = self.coeffs[a];
            if ca == 0.0 {
                continue;
            }
            for b in 0..m {
                let cb = other.coeffs[b];
                if cb == 0.0 {
                    continue;
                }
                out.coeffs[a ^ b] += product_sign(a, b) * ca * cb;
            }
        }
        Ok(out)
    }

    /// Reverse: grade k picks up the sign (-1)^{k(k-1)/2}.
    pub fn reverse(&self) -> Multivector {
        let mut out = *self;
        for mask in 0..self.dim.blade_count() {
            let k = mask.count_ones() as usize;
            if (k * (k.wrapping_sub(1)) / 2) % 2 == 1 {
                out.coeffs[mask] = -out.coeffs[mask];
            }
        }
        out
    }

    /// Scalar product M * Ñ = <M Ñ>_0 = Σ_A M_A N_A. Reversal of the second
    /// argument is applied internally.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        Ok(self
            .coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Modulus |M| = sqrt(Σ_A M_A^2).
    pub fn modulus(&self) -> f64 {
        self.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Grade projection <M>_k.
    pub fn grade_projection(&self, k: usize) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for mask in 0..self.dim.blade_count() {
            if mask.count_ones() as usize == k {
                out.coeffs[mask] = self.coeffs[mask];
            }
        }
        out
    }

    /// Split into (even-grade, odd-grade) parts with m = even + odd.
    pub fn even_odd_split(&self) -> (Multivector, Multivector) {
        let mut even = Multivector::zero(self.dim);
        let mut odd = Multivector::zero(self.dim);
        for mask in 0..self.dim.blade_count() {
            if mask.count_ones() % 2 == 0 {
                even.coeffs[mask] = self.coeffs[mask];
            } else {
                odd.coeffs[mask] = self.coeffs[mask];
            }
        }
        (even, odd)
    }

    /// Parity classification by the popcount of the nonzero blades.
    pub fn parity(&self) -> GradeParity {
        let (even, odd) = self.even_odd_split();
        let has_even = even.coeffs().iter().any(|&c| c != 0.0);
        let has_odd = odd.coeffs().iter().any(|&c| c != 0.0);
        match (has_even, has_odd) {
            (true, false) | (false, false) => GradeParity::Even,
            (false, true) => GradeParity::Odd,
            (true, true) => GradeParity::Mixed,
        }
    }

    /// Scale-aware default tolerance for [`Multivector::invert_admissibility`].
    pub fn default_inversion_tolerance(&self) -> f64 {
        1e-10 * (1.0 + self.scalar_part().abs())
    }

    /// Inverse of a grade-{0,1} multivector, the form taken by admissibility
    /// constants in Cl_2 and Cl_3:
    /// `C^{-1} = (<C>_0 - <C>_1) / (<C>_0^2 - <C>_1^2)`,
    /// where the vector square is the scalar `|<C>_1|^2`. Fails when higher
    /// grades are present or the denominator vanishes within `tol`.
    pub fn invert_admissibility(&self, tol: Option<f64>) -> Result<Multivector> {
        let tol = tol.unwrap_or_else(|| self.default_inversion_tolerance());
        for mask in 0..self.dim.blade_count() {
            let k = mask.count_ones() as usize;
            if k > 1 && self.coeffs[mask].abs() > tol {
                return Err(Error::UnsupportedGrades(k, self.coeffs[mask].abs()));
            }
        }
        let s = self.scalar_part();
        let v = self.grade_projection(1);
        let denom = s * s - v.modulus() * v.modulus();
        if denom.abs() <= tol {
            return Err(Error::NonInvertible(denom));
        }
        let mut out = Multivector::zero(self.dim);
        out.coeffs[0] = s / denom;
        for k in 0..self.dim.n() {
            out.coeffs[1 << k] = -v.coeffs[1 << k] / denom;
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> Multivector {
        let mut out = *self;
        for v in out.coeffs.iter_mut() {
            *v *= c;
        }
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Geometric product operator; panics on dimension mismatch. Use
/// [`Multivector::geometric_product`] for the fallible form.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs).expect("dimension mismatch")
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}
