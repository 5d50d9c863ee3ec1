//! Named property suites behind the `verify` CLI command, plus the seeded
//! band-limited signal generator shared by suites and tests.

use crate::analysis::{cft_uncertainty, wavelet_uncertainty};
use crate::cft::{cft_forward, cft_inverse, plancherel_lhs_rhs, Spectrum};
use crate::clifford::{Dimension, Multivector};
use crate::cwt::{
    analyze_spectral, inner_product_relation, reproducing_kernel, Admissible,
};
use crate::error::{Error, Result};
use crate::field::{quadrature_inner, GridSpec, MultivectorField};
use crate::simgroup::{daughter, GroupGrid, GroupParams, Rotation, SimElement};
use crate::wavelets::{GaborParams, GaborWavelet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Deterministic band-limited random field: a seeded random spectrum kept
/// within |k| ≤ N/`band_divisor` per axis, mapped back through the inverse
/// transform.
pub fn random_band_limited(grid: GridSpec, seed: u64, band_divisor: usize) -> MultivectorField {
    let dim = grid.dim();
    let n = grid.points_per_axis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spec = vec![Multivector::zero(dim); grid.total_points()];
    let half = n / 2;
    let band = n / band_divisor.max(1);
    for (flat, m) in spec.iter_mut().enumerate() {
        let idx = grid.axis_indices(flat);
        let inner = (0..dim.n()).all(|a| {
            let k = idx[a] as isize - half as isize;
            k.unsigned_abs() <= band
        });
        if inner {
            for mask in 0..dim.blade_count() {
                m.set_coeff(mask, rng.gen_range(-1.0..1.0));
            }
        }
    }
    cft_inverse(&Spectrum::new(grid, spec).expect("grid-sized spectrum"))
}

/// Deterministic random field whose spectrum is confined to the annulus
/// r_lo ≤ |ω| ≤ r_hi, for properties that need signal content restricted
/// to where a wavelet family covers the frequency plane.
pub fn random_annulus(grid: GridSpec, seed: u64, r_lo: f64, r_hi: f64) -> MultivectorField {
    let dim = grid.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spec = vec![Multivector::zero(dim); grid.total_points()];
    for (flat, m) in spec.iter_mut().enumerate() {
        let om = grid.freq_node(flat);
        let r = (0..dim.n()).map(|a| om[a] * om[a]).sum::<f64>().sqrt();
        if r >= r_lo && r <= r_hi {
            for mask in 0..dim.blade_count() {
                m.set_coeff(mask, rng.gen_range(-1.0..1.0));
            }
        }
    }
    cft_inverse(&Spectrum::new(grid, spec).expect("grid-sized spectrum"))
}

/// Outcome of one verified property.
#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl PropertyResult {
    fn check(name: &str, pass: bool, detail: String) -> Self {
        PropertyResult {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

/// The named suites exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Plancherel,
    Covariance,
    NormRelation,
    Kernel,
    Uncertainty,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plancherel" => Ok(Suite::Plancherel),
            "covariance" => Ok(Suite::Covariance),
            "norm-relation" => Ok(Suite::NormRelation),
            "kernel" => Ok(Suite::Kernel),
            "uncertainty" => Ok(Suite::Uncertainty),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite '{other}', expected plancherel | covariance | norm-relation | kernel | uncertainty"
            ))),
        }
    }
}

fn d2() -> Dimension {
    Dimension::new(2).expect("static dimension")
}

fn test_wavelet(grid: &GridSpec) -> Result<Admissible<GaborWavelet>> {
    let psi = GaborWavelet::new(
        grid.dim(),
        GaborParams {
            sigma: [1.5, 1.5, 1.5],
            omega0: [2.0, 0.0, 0.0],
            amplitude: Multivector::scalar(grid.dim(), 1.0),
        },
    )?;
    Admissible::new(psi, grid)
}

fn small_group(grid: GridSpec) -> Result<GroupGrid> {
    GroupGrid::new(
        grid,
        GroupParams {
            a_min: 1.0,
            a_max: 2.0,
            n_scales: 4,
            n_angles: [4, 1, 1],
        },
    )
}

/// Runs one suite; each returned entry is an independently named check.
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Result<Vec<PropertyResult>> {
    match suite {
        Suite::Plancherel => suite_plancherel(seed, trials),
        Suite::Covariance => suite_covariance(),
        Suite::NormRelation => suite_norm_relation(seed),
        Suite::Kernel => suite_kernel(),
        Suite::Uncertainty => suite_uncertainty(seed, trials),
    }
}

fn suite_plancherel(seed: u64, trials: usize) -> Result<Vec<PropertyResult>> {
    let grid = GridSpec::new(d2(), 32, 4.0)?;
    let mut out = Vec::new();
    let mut worst_pl = 0.0f64;
    let mut worst_rt = 0.0f64;
    let mut worst_pv = 0.0f64;
    for t in 0..trials.max(1) {
        let f = random_band_limited(grid, seed.wrapping_add(2 * t as u64), 4);
        let g = random_band_limited(grid, seed.wrapping_add(2 * t as u64 + 1), 4);
        let (lhs, rhs) = plancherel_lhs_rhs(&f, &g)?;
        worst_pl = worst_pl.max((lhs - rhs).modulus() / lhs.modulus().max(1.0));
        let back = cft_inverse(&cft_forward(&f));
        worst_rt = worst_rt.max(back.sub(&f)?.l2_norm() / f.l2_norm());
        let s = cft_forward(&f);
        let par = (f.l2_norm() - s.l2_norm() / (2.0 * PI)).abs() / f.l2_norm();
        worst_pv = worst_pv.max(par);
    }
    out.push(PropertyResult::check(
        "plancherel-identity",
        worst_pl < 1e-8,
        format!("worst relative deviation {worst_pl:.3e}"),
    ));
    out.push(PropertyResult::check(
        "roundtrip-identity",
        worst_rt < 1e-10,
        format!("worst relative L2 error {worst_rt:.3e}"),
    ));
    out.push(PropertyResult::check(
        "parseval",
        worst_pv < 1e-8,
        format!("worst relative deviation {worst_pv:.3e}"),
    ));
    Ok(out)
}

fn suite_covariance() -> Result<Vec<PropertyResult>> {
    let grid = GridSpec::new(d2(), 128, 8.0)?;
    let psi = test_wavelet(&grid)?;
    let gg = small_group(grid)?;

    // closed-form test signal: a tight Gaussian envelope modulated in x1,
    // small enough at the boundary that non-periodicity stays below the
    // covariance tolerances
    let sig = |x: &[f64]| {
        let env = (-0.5 * (x[0] * x[0] + x[1] * x[1]) / 0.7f64.powi(2)).exp();
        Multivector::scalar(d2(), env * (1.2 * x[0]).cos())
            + Multivector::basis_blade(d2(), 0b11).scale(env * (1.2 * x[0]).sin())
    };
    let f = MultivectorField::sample_closed_form(grid, sig)?;
    let t = analyze_spectral(&f, &psi, &gg)?;

    // grid-aligned translation: exact cyclic shift of every b-slice
    let steps = [3usize, 5, 0];
    let x0 = [
        steps[0] as f64 * grid.spacing(),
        steps[1] as f64 * grid.spacing(),
        0.0,
    ];
    let f_shift = MultivectorField::sample_closed_form(grid, |x| {
        sig(&[
            grid.wrap(x[0] - x0[0]),
            grid.wrap(x[1] - x0[1]),
            0.0,
        ])
    })?;
    let t_shift = analyze_spectral(&f_shift, &psi, &gg)?;
    let npts = grid.points_per_axis();
    let mut worst_tr = 0.0f64;
    for si in 0..gg.scales().len() {
        for ai in 0..gg.angles().len() {
            let a = t_shift.slice(si, ai)?;
            let b = t.slice(si, ai)?;
            for flat in 0..grid.total_points() {
                let idx = grid.axis_indices(flat);
                let src = grid.flat_index([
                    (idx[0] + npts - steps[0]) % npts,
                    (idx[1] + npts - steps[1]) % npts,
                    0,
                ]);
                worst_tr = worst_tr.max((a[flat] - b[src]).modulus());
            }
        }
    }
    let scale_t = t.max_modulus().max(1.0);

    // quarter-turn rotation covariance: a quarter turn permutes the
    // periodic grid, so rotate f by index permutation and the identity
    // holds exactly
    let quarter = Rotation::plane(PI / 2.0);
    let rot_index = |r: &Rotation, flat: usize| {
        let x = grid.node(flat);
        let y = r.apply(&x);
        let bx = ((grid.wrap(y[0]) + grid.half_width()) / grid.spacing()).round() as i64;
        let by = ((grid.wrap(y[1]) + grid.half_width()) / grid.spacing()).round() as i64;
        grid.flat_index([
            bx.rem_euclid(npts as i64) as usize,
            by.rem_euclid(npts as i64) as usize,
            0,
        ])
    };
    let rot_data: Vec<Multivector> = (0..grid.total_points())
        .map(|flat| f.data()[rot_index(&quarter, flat)])
        .collect();
    let f_rot = MultivectorField::new(grid, rot_data)?;
    let t_rot = analyze_spectral(&f_rot, &psi, &gg)?;
    let m = gg.angles().len();
    let mut worst_rot = 0.0f64;
    for si in 0..gg.scales().len() {
        for ai in 0..m {
            // r' = r0 r: with m uniform angles and r0 a quarter turn,
            // the composed angle sits m/4 slots further
            let ai_comp = (ai + m / 4) % m;
            let a = t_rot.slice(si, ai)?;
            let b = t.slice(si, ai_comp)?;
            for flat in 0..grid.total_points() {
                let bv = grid.node(flat);
                let rb = quarter.apply(&bv);
                // r0 b lands on a grid node for quarter turns
                let bx = ((rb[0] + grid.half_width()) / grid.spacing()).round();
                let by = ((rb[1] + grid.half_width()) / grid.spacing()).round();
                let src = grid.flat_index([
                    (bx as i64).rem_euclid(npts as i64) as usize,
                    (by as i64).rem_euclid(npts as i64) as usize,
                    0,
                ]);
                worst_rot = worst_rot.max((a[flat] - b[src]).modulus());
            }
        }
    }

    // arbitrary rotation angle, against direct quadrature of the
    // definition at the composed group element
    let theta0 = 0.7;
    let r0 = Rotation::plane(theta0);
    let f_arb = MultivectorField::sample_closed_form(grid, |x| {
        let y = r0.apply(&[x[0], x[1], 0.0]);
        sig(&[y[0], y[1], 0.0])
    })?;
    let t_arb = analyze_spectral(&f_arb, &psi, &gg)?;
    let samples = [[72usize, 60], [52, 70]];
    let mut worst_arb = 0.0f64;
    for si in 0..gg.scales().len() {
        for ai in 0..gg.angles().len() {
            let slice = t_arb.slice(si, ai)?;
            let theta = gg.angles()[ai].rotation.angles()[0];
            let composed = Rotation::plane(theta0 + theta);
            for s in samples {
                let flat = grid.flat_index([s[0], s[1], 0]);
                let b = grid.node(flat);
                let rb = r0.apply(&b);
                let g = SimElement::new(gg.scales()[si].a, composed, rb)?;
                let d = daughter(psi.wavelet(), &g, &grid);
                let rhs = quadrature_inner(f.data(), d.data(), grid.cell_volume())?;
                worst_arb = worst_arb.max((slice[flat] - rhs).modulus());
            }
        }
    }

    // dilation covariance with c = 2: [T f(c·)](a,θ,b) = c^{-n/2} T f(ca,θ,cb).
    // Scales stay small so that daughters at c·a_max have negligible
    // periodization images
    let c = 2.0;
    let dil_params = GroupParams {
        a_min: 0.4,
        a_max: 0.6,
        n_scales: 4,
        n_angles: [4, 1, 1],
    };
    let gg_dil = GroupGrid::new(grid, dil_params)?;
    let gg_base = GroupGrid::new(
        grid,
        GroupParams {
            a_min: c * dil_params.a_min,
            a_max: c * dil_params.a_max,
            ..dil_params
        },
    )?;
    let f_dil = MultivectorField::sample_closed_form(grid, |x| sig(&[c * x[0], c * x[1], 0.0]))?;
    let t_dil = analyze_spectral(&f_dil, &psi, &gg_dil)?;
    let t_base = analyze_spectral(&f, &psi, &gg_base)?;
    let scale_dil = t_dil.max_modulus().max(1e-30);
    let mut worst_dil = 0.0f64;
    for si in 0..gg_dil.scales().len() {
        for ai in 0..gg_dil.angles().len() {
            let a = t_dil.slice(si, ai)?;
            let b = t_base.slice(si, ai)?;
            for flat in 0..grid.total_points() {
                let bv = grid.node(flat);
                let cb = [c * bv[0], c * bv[1]];
                // stay in the inner half-patch: near the edge the scaled
                // translation wraps and daughter image tails leak in
                if cb[0].abs() >= grid.half_width() / 2.0 || cb[1].abs() >= grid.half_width() / 2.0
                {
                    continue;
                }
                let bx = ((cb[0] + grid.half_width()) / grid.spacing()).round() as usize;
                let by = ((cb[1] + grid.half_width()) / grid.spacing()).round() as usize;
                let src = grid.flat_index([bx, by, 0]);
                let expect = b[src].scale(c.powf(-1.0));
                worst_dil = worst_dil.max((a[flat] - expect).modulus());
            }
        }
    }

    Ok(vec![
        PropertyResult::check(
            "translation-covariance",
            worst_tr < 1e-10 * scale_t,
            format!("worst deviation {worst_tr:.3e}"),
        ),
        PropertyResult::check(
            "rotation-covariance",
            worst_rot < 1e-10 * scale_t,
            format!("worst deviation {worst_rot:.3e}"),
        ),
        PropertyResult::check(
            "rotation-covariance-offgrid",
            worst_arb < 1e-6 * scale_t,
            format!("worst deviation {worst_arb:.3e} at sampled group points"),
        ),
        PropertyResult::check(
            "dilation-covariance",
            worst_dil < 1e-6 * scale_dil,
            format!("worst deviation {worst_dil:.3e}"),
        ),
    ])
}

/// Wavelet used for the inner-product and norm relations: tight radially
/// (so the default scale window spans its admissibility integral) and wide
/// transversally (so 16 uniform angles resolve the angular quadrature).
fn relation_wavelet(grid: &GridSpec) -> Result<Admissible<GaborWavelet>> {
    let psi = GaborWavelet::new(
        grid.dim(),
        GaborParams {
            sigma: [3.0, 1.0, 1.0],
            omega0: [2.0, 0.0, 0.0],
            amplitude: Multivector::scalar(grid.dim(), 1.0),
        },
    )?;
    Admissible::new(psi, grid)
}

fn suite_norm_relation(seed: u64) -> Result<Vec<PropertyResult>> {
    let grid = GridSpec::new(d2(), 64, 8.0)?;
    let psi = relation_wavelet(&grid)?;
    let gg = GroupGrid::default_for(grid)?;
    // signal content confined to the frequency annulus that the default
    // scale window [2Δx, L/4] covers for this wavelet
    let f = random_annulus(grid, seed, 1.4, 1.9);
    let g = random_annulus(grid, seed.wrapping_add(1), 1.4, 1.9);
    let (lhs, rhs) = inner_product_relation(&f, &g, &psi, &gg)?;
    let rel = (lhs.scalar_part() - rhs.scalar_part()).abs() / rhs.scalar_part().abs().max(1e-30);
    let (nl, nr) = inner_product_relation(&f, &f, &psi, &gg)?;
    let rel_norm = (nl.scalar_part() - nr.scalar_part()).abs() / nr.scalar_part();
    let refined = gg.refine()?;
    let (rl, rr) = inner_product_relation(&f, &f, &psi, &refined)?;
    let rel_refined = (rl.scalar_part() - rr.scalar_part()).abs() / rr.scalar_part();
    Ok(vec![
        PropertyResult::check(
            "inner-product-relation",
            rel < 0.02,
            format!("scalar parts differ by {rel:.3e} relative"),
        ),
        PropertyResult::check(
            "norm-relation",
            rel_norm < 0.02,
            format!("scalar parts differ by {rel_norm:.3e} relative"),
        ),
        PropertyResult::check(
            "norm-relation-refinement",
            rel_refined < rel_norm,
            format!("2x refinement moves the deviation {rel_norm:.3e} -> {rel_refined:.3e}"),
        ),
    ])
}

fn suite_kernel() -> Result<Vec<PropertyResult>> {
    let grid = GridSpec::new(d2(), 16, 4.0)?;
    let psi = test_wavelet(&grid)?;
    let c = psi.constant().scalar_part();
    let id = SimElement::identity(d2());
    let k0 = reproducing_kernel(&psi, &id, &id, &grid)?;
    // collapse: K(id; id) = ‖ψ‖² / C for scalar C, with the norm taken
    // over the same periodized daughter the kernel integrates
    let expect = daughter(psi.wavelet(), &id, &grid).l2_norm().powi(2) / c;
    let rel = (k0.scalar_part() - expect).abs() / expect;
    // decay in |b1 - b2|, keeping b well inside the periodic patch
    let mut last = f64::INFINITY;
    let mut monotone = true;
    for step in 1..=3 {
        let b = [step as f64 * 2.0 * grid.spacing(), 0.0, 0.0];
        let g2 = SimElement::new(1.0, Rotation::identity(d2()), b)?;
        let k = reproducing_kernel(&psi, &id, &g2, &grid)?.modulus();
        if k > last {
            monotone = false;
        }
        last = k;
    }
    Ok(vec![
        PropertyResult::check(
            "kernel-collapse",
            rel < 1e-10,
            format!("relative deviation {rel:.3e}"),
        ),
        PropertyResult::check(
            "kernel-tail-decay",
            monotone,
            "kernel modulus decays with translation distance".to_string(),
        ),
    ])
}

fn suite_uncertainty(seed: u64, trials: usize) -> Result<Vec<PropertyResult>> {
    let grid = GridSpec::new(d2(), 32, 6.0)?;
    let mut all_cft = true;
    let mut worst_ratio = f64::INFINITY;
    for t in 0..trials.max(1) {
        let f = random_band_limited(grid, seed.wrapping_add(t as u64), 4);
        let rep = cft_uncertainty(&f)?;
        all_cft &= rep.satisfied;
        worst_ratio = worst_ratio.min(rep.ratio);
    }
    let psi = test_wavelet(&grid)?;
    let gg = small_group(grid)?;
    let mut all_cwt = true;
    for t in 0..trials.max(1).min(10) {
        let f = random_band_limited(grid, seed.wrapping_add(1000 + t as u64), 4);
        let rep = wavelet_uncertainty(&f, &psi, &gg)?;
        all_cwt &= rep.theorem.satisfied;
    }
    Ok(vec![
        PropertyResult::check(
            "cft-uncertainty",
            all_cft,
            format!("smallest lhs/rhs ratio {worst_ratio:.4}"),
        ),
        PropertyResult::check(
            "wavelet-uncertainty",
            all_cwt,
            "theorem inequality satisfied on all trials".to_string(),
        ),
    ])
}
