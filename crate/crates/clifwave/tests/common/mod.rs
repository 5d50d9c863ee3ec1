//! Independent oracles shared by the integration tests: a from-scratch
//! geometric product built on explicit factor lists, and a direct-sum
//! discrete Clifford Fourier transform. Neither touches the library's
//! bitmask sign arithmetic or FFT path.

use clifwave::cft::Spectrum;
use clifwave::{Dimension, Multivector, MultivectorField};
use rand::prelude::*;

/// Product of two basis blades by concatenating their factor lists,
/// bubble-sorting into canonical order (each swap flips the sign), and
/// cancelling adjacent equal factors (e_i e_i = +1).
pub fn blade_mul_oracle(n: usize, a_mask: usize, b_mask: usize) -> (f64, usize) {
    let mut factors: Vec<usize> = Vec::new();
    for i in 0..n {
        if a_mask >> i & 1 == 1 {
            factors.push(i);
        }
    }
    for i in 0..n {
        if b_mask >> i & 1 == 1 {
            factors.push(i);
        }
    }
    let mut sign = 1.0;
    loop {
        let mut swapped = false;
        for i in 1..factors.len() {
            if factors[i - 1] > factors[i] {
                factors.swap(i - 1, i);
                sign = -sign;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut reduced: Vec<usize> = Vec::new();
    for v in factors {
        if reduced.last() == Some(&v) {
            reduced.pop();
        } else {
            reduced.push(v);
        }
    }
    let mask = reduced.iter().fold(0usize, |m, i| m | 1 << i);
    (sign, mask)
}

/// Geometric product through the factor-list oracle.
pub fn mv_mul_oracle(dim: Dimension, a: &Multivector, b: &Multivector) -> Multivector {
    let n = dim.n();
    let mut out = Multivector::zero(dim);
    for am in 0..dim.blade_count() {
        let ca = a.coeff(am);
        if ca == 0.0 {
            continue;
        }
        for bm in 0..dim.blade_count() {
            let cb = b.coeff(bm);
            if cb == 0.0 {
                continue;
            }
            let (sign, mask) = blade_mul_oracle(n, am, bm);
            out.set_coeff(mask, out.coeff(mask) + sign * ca * cb);
        }
    }
    out
}

/// Reverse by the factor-list oracle: reversing a k-blade's factors takes
/// k(k-1)/2 adjacent swaps.
pub fn mv_reverse_oracle(dim: Dimension, a: &Multivector) -> Multivector {
    let mut out = Multivector::zero(dim);
    for mask in 0..dim.blade_count() {
        let k = (mask as u32).count_ones() as usize;
        let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        out.set_coeff(mask, sign * a.coeff(mask));
    }
    out
}

/// Direct-sum transform Σ_j f(x_j) (cos(ω·x_j) - i_n sin(ω·x_j)) Δx^n at
/// every frequency node, with products through the oracle multiplier.
pub fn brute_cft(f: &MultivectorField) -> Spectrum {
    let grid = *f.grid();
    let dim = grid.dim();
    let n = dim.n();
    let i_n = Multivector::pseudoscalar(dim);
    let dx = grid.cell_volume();
    let data: Vec<Multivector> = (0..grid.total_points())
        .map(|w_flat| {
            let om = grid.freq_node(w_flat);
            let mut acc = Multivector::zero(dim);
            for x_flat in 0..grid.total_points() {
                let x = grid.node(x_flat);
                let phase: f64 = (0..n).map(|a| om[a] * x[a]).sum();
                let kernel =
                    Multivector::scalar(dim, phase.cos()) - i_n.scale(phase.sin());
                acc = acc + mv_mul_oracle(dim, &f.data()[x_flat], &kernel);
            }
            acc.scale(dx)
        })
        .collect();
    Spectrum::new(grid, data).expect("oracle spectrum matches grid")
}

/// Uniform random multivector with coefficients in [-1, 1].
pub fn random_mv<R: Rng>(dim: Dimension, rng: &mut R) -> Multivector {
    let mut m = Multivector::zero(dim);
    for mask in 0..dim.blade_count() {
        m.set_coeff(mask, rng.gen_range(-1.0..1.0));
    }
    m
}
