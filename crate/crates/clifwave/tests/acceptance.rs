//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. Tolerances are pinned as constants next to each check.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use clifwave::cft::{cft_forward, cft_inverse};
use clifwave::cwt::{
    analyze_direct, analyze_spectral, reproducing_kernel, synthesize, Admissible, MotherWavelet,
};
use clifwave::simgroup::{daughter, GroupGrid, GroupParams, Rotation, SimElement};
use clifwave::verify::{random_annulus, random_band_limited, run_suite, Suite};
use clifwave::wavelets::{gabor_admissibility, GaborParams, GaborWavelet};
use clifwave::{Dimension, GridSpec, Multivector, MultivectorField};
use common::{blade_mul_oracle, brute_cft, mv_mul_oracle, mv_reverse_oracle, random_mv};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

fn d2() -> Dimension {
    Dimension::new(2).unwrap()
}

fn d3() -> Dimension {
    Dimension::new(3).unwrap()
}

fn report(num: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {num:2} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {num} ({name}): {detail}");
}

#[test]
fn criterion_01_algebra_axioms() {
    const TOL: f64 = 1e-12;
    let start = Instant::now();
    let mut worst = 0.0f64;
    for dim in [d2(), d3()] {
        let n = dim.n();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let i_n = Multivector::pseudoscalar(dim);
        let i_sq = i_n * i_n + Multivector::scalar(dim, 1.0);
        worst = worst.max(i_sq.modulus());
        for _ in 0..1000 {
            let a = random_mv(dim, &mut rng);
            let b = random_mv(dim, &mut rng);
            let c = random_mv(dim, &mut rng);
            // library product against the factor-list oracle
            worst = worst.max((a * b - mv_mul_oracle(dim, &a, &b)).modulus());
            // associativity
            worst = worst.max(((a * b) * c - a * (b * c)).modulus());
            // reverse is an anti-automorphism, and matches the oracle
            worst = worst.max(((a * b).reverse() - b.reverse() * a.reverse()).modulus());
            worst = worst.max((a.reverse() - mv_reverse_oracle(dim, &a)).modulus());
            // |M|² is the coefficient sum of squares and the scalar part
            // of rev(M) M
            let sq: f64 = (0..dim.blade_count()).map(|m| a.coeff(m).powi(2)).sum();
            worst = worst.max((a.modulus().powi(2) - sq).abs());
            worst = worst.max(((a.reverse() * a).scalar_part() - sq).abs());
            // parity commutation through the n = 2 kernel
            if n == 2 {
                let lambda: f64 = rng.gen_range(-PI..PI);
                let kernel = Multivector::scalar(dim, lambda.cos()) + i_n.scale(lambda.sin());
                let kernel_conj =
                    Multivector::scalar(dim, lambda.cos()) - i_n.scale(lambda.sin());
                let (even, odd) = a.even_odd_split();
                let lhs = kernel * a;
                let rhs = even * kernel + odd * kernel_conj;
                worst = worst.max((lhs - rhs).modulus());
            }
        }
    }
    // sanity: the oracle's sign table is nontrivial
    assert_eq!(blade_mul_oracle(2, 0b01, 0b10), (1.0, 0b11));
    assert_eq!(blade_mul_oracle(2, 0b10, 0b01), (-1.0, 0b11));
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "algebra axioms",
        worst < TOL && elapsed < 1.0,
        &format!("worst deviation {worst:.3e}, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_02_cft_oracle_roundtrip_parseval() {
    const TOL_ORACLE: f64 = 1e-10;
    const TOL_ROUNDTRIP: f64 = 1e-10;
    const TOL_PARSEVAL: f64 = 1e-8;
    let start = Instant::now();
    let mut worst_oracle = 0.0f64;
    for (dim, npts, l) in [(d2(), 16usize, 4.0), (d3(), 8, 3.0)] {
        let grid = GridSpec::new(dim, npts, l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let data: Vec<Multivector> = (0..grid.total_points())
            .map(|_| random_mv(dim, &mut rng))
            .collect();
        let f = MultivectorField::new(grid, data).unwrap();
        let fast = cft_forward(&f);
        let slow = brute_cft(&f);
        let scale = slow
            .data()
            .iter()
            .map(|m| m.modulus())
            .fold(0.0f64, f64::max);
        let dev = fast
            .data()
            .iter()
            .zip(slow.data())
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0f64, f64::max);
        worst_oracle = worst_oracle.max(dev / scale);
    }
    let grid = GridSpec::new(d2(), 64, 8.0).unwrap();
    let mut worst_rt = 0.0f64;
    let mut worst_pv = 0.0f64;
    for t in 0..5u64 {
        let f = random_band_limited(grid, 100 + t, 4);
        let s = cft_forward(&f);
        let back = cft_inverse(&s);
        worst_rt = worst_rt.max(back.sub(&f).unwrap().l2_norm() / f.l2_norm());
        let lhs = f.l2_norm().powi(2);
        let rhs = s.l2_norm().powi(2) / (2.0 * PI).powi(2);
        worst_pv = worst_pv.max((lhs - rhs).abs() / lhs);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        2,
        "CFT oracle, roundtrip, Parseval",
        worst_oracle < TOL_ORACLE
            && worst_rt < TOL_ROUNDTRIP
            && worst_pv < TOL_PARSEVAL
            && elapsed < 10.0,
        &format!(
            "oracle {worst_oracle:.3e}, roundtrip {worst_rt:.3e}, parseval {worst_pv:.3e}, {elapsed:.2}s"
        ),
    );
}

#[test]
fn criterion_03_daughter_norm_identity() {
    const TOL_2D: f64 = 1e-6;
    const TOL_3D: f64 = 1e-4;
    let scales = [0.5, 1.0, 2.0];

    // n = 2 on 128²
    let grid2 = GridSpec::new(d2(), 128, 8.0).unwrap();
    let psi2 = GaborWavelet::new(
        d2(),
        GaborParams {
            sigma: [1.0, 1.0, 1.0],
            omega0: [PI, 0.0, 0.0],
            amplitude: Multivector::scalar(d2(), 1.0),
        },
    )
    .unwrap();
    let reference2 = daughter(&psi2, &SimElement::identity(d2()), &grid2).l2_norm();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst2 = 0.0f64;
    for &a in &scales {
        for j in 0..8 {
            let rot = Rotation::plane(2.0 * PI * j as f64 / 8.0);
            let b = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), 0.0];
            let g = SimElement::new(a, rot, b).unwrap();
            let norm = daughter(&psi2, &g, &grid2).l2_norm();
            worst2 = worst2.max((norm - reference2).abs() / reference2);
        }
    }

    // n = 3 on 32³
    let grid3 = GridSpec::new(d3(), 32, 7.5).unwrap();
    let psi3 = GaborWavelet::new(
        d3(),
        GaborParams {
            sigma: [1.1, 1.1, 1.1],
            omega0: [0.5, 0.0, 0.0],
            amplitude: Multivector::scalar(d3(), 1.0),
        },
    )
    .unwrap();
    let reference3 = daughter(&psi3, &SimElement::identity(d3()), &grid3).l2_norm();
    let rotations = GroupGrid::new(
        grid3,
        GroupParams {
            a_min: 1.0,
            a_max: 2.0,
            n_scales: 1,
            n_angles: [2, 2, 2],
        },
    )
    .unwrap();
    let mut worst3 = 0.0f64;
    for &a in &scales {
        for node in rotations.angles() {
            let b = [
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ];
            let g = SimElement::new(a, node.rotation, b).unwrap();
            let norm = daughter(&psi3, &g, &grid3).l2_norm();
            worst3 = worst3.max((norm - reference3).abs() / reference3);
        }
    }
    report(
        3,
        "daughter norm identity",
        worst2 < TOL_2D && worst3 < TOL_3D,
        &format!("128² deviation {worst2:.3e}, 32³ deviation {worst3:.3e}"),
    );
}

#[test]
fn criterion_04_dual_path_agreement() {
    const TOL: f64 = 1e-8;
    let start = Instant::now();
    let mut worst = 0.0f64;

    // n = 2: spinor (even) and odd-parity Gabor on 32², 4 scales × 4 angles
    let grid = GridSpec::new(d2(), 32, 4.0).unwrap();
    let gg = GroupGrid::new(
        grid,
        GroupParams {
            a_min: 1.0,
            a_max: 2.0,
            n_scales: 4,
            n_angles: [4, 1, 1],
        },
    )
    .unwrap();
    let f = random_band_limited(grid, 17, 4);
    for amplitude in [
        Multivector::scalar(d2(), 1.0),
        Multivector::basis_blade(d2(), 0b01),
    ] {
        let psi = Admissible::new(
            GaborWavelet::new(
                d2(),
                GaborParams {
                    sigma: [1.5, 1.5, 1.5],
                    omega0: [2.0, 0.0, 0.0],
                    amplitude,
                },
            )
            .unwrap(),
            &grid,
        )
        .unwrap();
        let td = analyze_direct(&f, &psi, &gg).unwrap();
        let ts = analyze_spectral(&f, &psi, &gg).unwrap();
        let dev = td.max_difference(&ts) / ts.max_modulus();
        worst = worst.max(dev);
    }

    // n = 3: mixed-grade wavelet and field on 16³
    let grid3 = GridSpec::new(d3(), 16, 6.0).unwrap();
    let gg3 = GroupGrid::new(
        grid3,
        GroupParams {
            a_min: 1.0,
            a_max: 2.0,
            n_scales: 2,
            n_angles: [2, 2, 1],
        },
    )
    .unwrap();
    let f3 = random_band_limited(grid3, 19, 4);
    let psi3 = Admissible::new(
        GaborWavelet::new(
            d3(),
            GaborParams {
                sigma: [2.5, 2.5, 2.5],
                omega0: [1.0, 0.0, 0.0],
                amplitude: Multivector::scalar(d3(), 1.0)
                    + Multivector::basis_blade(d3(), 0b001).scale(0.5),
            },
        )
        .unwrap(),
        &grid3,
    )
    .unwrap();
    let td3 = analyze_direct(&f3, &psi3, &gg3).unwrap();
    let ts3 = analyze_spectral(&f3, &psi3, &gg3).unwrap();
    worst = worst.max(td3.max_difference(&ts3) / ts3.max_modulus());

    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        "dual-path CWT",
        worst < TOL && elapsed < 60.0,
        &format!("worst relative deviation {worst:.3e}, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_05_covariances() {
    let results = run_suite(Suite::Covariance, 7, 1).unwrap();
    let pass = results.iter().all(|r| r.pass);
    let detail: Vec<String> = results
        .iter()
        .map(|r| format!("{} {}", r.name, if r.pass { "ok" } else { "FAIL" }))
        .collect();
    report(5, "covariances", pass, &detail.join(", "));
}

#[test]
fn criterion_06_norm_relation() {
    let results = run_suite(Suite::NormRelation, 7, 1).unwrap();
    let pass = results.iter().all(|r| r.pass);
    let detail: Vec<String> = results.iter().map(|r| r.detail.clone()).collect();
    report(6, "norm relation", pass, &detail.join("; "));
}

#[test]
fn criterion_07_reconstruction() {
    const TOL: f64 = 0.05;
    let start = Instant::now();
    let grid = GridSpec::new(d2(), 64, 8.0).unwrap();
    let psi = Admissible::new(
        GaborWavelet::new(
            d2(),
            GaborParams {
                sigma: [3.0, 1.0, 1.0],
                omega0: [2.0, 0.0, 0.0],
                amplitude: Multivector::scalar(d2(), 1.0),
            },
        )
        .unwrap(),
        &grid,
    )
    .unwrap();
    let gg = GroupGrid::default_for(grid).unwrap();
    assert_eq!(gg.scales().len(), 16);
    assert_eq!(gg.angles().len(), 16);
    let f = random_annulus(grid, 29, 1.4, 1.9);
    let t = analyze_spectral(&f, &psi, &gg).unwrap();
    let rec = synthesize(&t, &psi).unwrap();
    let err = rec.sub(&f).unwrap().l2_norm() / f.l2_norm();
    let refined = gg.refine().unwrap();
    let t2 = analyze_spectral(&f, &psi, &refined).unwrap();
    let rec2 = synthesize(&t2, &psi).unwrap();
    let err2 = rec2.sub(&f).unwrap().l2_norm() / f.l2_norm();
    let elapsed = start.elapsed().as_secs_f64();
    report(
        7,
        "reconstruction",
        err < TOL && err2 < err && elapsed < 300.0,
        &format!("relative L2 error {err:.3e}, refined {err2:.3e}, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_08_reproducing_kernel() {
    const TOL: f64 = 0.03;
    let grid = GridSpec::new(d2(), 16, 4.0).unwrap();
    let psi = Admissible::new(
        GaborWavelet::new(
            d2(),
            GaborParams {
                sigma: [1.6, 0.32, 1.0],
                omega0: [2.5, 0.0, 0.0],
                amplitude: Multivector::scalar(d2(), 1.0),
            },
        )
        .unwrap(),
        &grid,
    )
    .unwrap();
    let gg = GroupGrid::new(
        grid,
        GroupParams {
            a_min: 1.835,
            a_max: 5.52,
            n_scales: 4,
            n_angles: [4, 1, 1],
        },
    )
    .unwrap();
    let f = random_annulus(grid, 13, 0.7, 0.9);
    let t = analyze_spectral(&f, &psi, &gg).unwrap();

    // probe at the strongest coefficient
    let mut best = (0usize, 0usize, 0usize, 0.0f64);
    for si in 0..gg.scales().len() {
        for ai in 0..gg.angles().len() {
            let slice = t.slice(si, ai).unwrap();
            for (b_flat, m) in slice.iter().enumerate() {
                if m.modulus() > best.3 {
                    best = (si, ai, b_flat, m.modulus());
                }
            }
        }
    }
    let (si2, ai2, b2, _) = best;
    let g2 = gg.element(si2, ai2, b2);
    let lhs = t.at(si2, ai2, b2).unwrap();
    let dx = grid.cell_volume();
    let mut acc = Multivector::zero(d2());
    for (si, s) in gg.scales().iter().enumerate() {
        for (ai, a) in gg.angles().iter().enumerate() {
            let slice = t.slice(si, ai).unwrap();
            let w = s.weight * a.weight * dx;
            for (b_flat, coeff) in slice.iter().enumerate() {
                let g1 = gg.element(si, ai, b_flat);
                let k = reproducing_kernel(&psi, &g1, &g2, &grid).unwrap();
                acc = acc + (*coeff * k).scale(w);
            }
        }
    }
    let rel = (acc - lhs).modulus() / lhs.modulus();
    report(
        8,
        "reproducing kernel",
        rel < TOL,
        &format!("relative deviation {rel:.3e} at the peak coefficient"),
    );
}

#[test]
fn criterion_09_uncertainty_principles() {
    use clifwave::analysis::{cft_uncertainty, wavelet_uncertainty};
    const RATIO_TOL: f64 = 0.02;
    const MATCH_TOL: f64 = 1e-10;
    let grid = GridSpec::new(d2(), 32, 6.0).unwrap();
    let mut all_cft = true;
    let mut min_ratio = f64::INFINITY;
    for t in 0..100u64 {
        let f = random_band_limited(grid, 200 + t, 4);
        let rep = cft_uncertainty(&f).unwrap();
        all_cft &= rep.satisfied;
        min_ratio = min_ratio.min(rep.ratio);
    }
    let gauss_grid = GridSpec::new(d2(), 64, 8.0).unwrap();
    let gauss = MultivectorField::sample_closed_form(gauss_grid, |x| {
        Multivector::scalar(d2(), (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp())
    })
    .unwrap();
    let gauss_ratio = cft_uncertainty(&gauss).unwrap().ratio;

    let psi = Admissible::new(
        GaborWavelet::new(
            d2(),
            GaborParams {
                sigma: [1.5, 1.5, 1.5],
                omega0: [2.0, 0.0, 0.0],
                amplitude: Multivector::scalar(d2(), 1.0),
            },
        )
        .unwrap(),
        &grid,
    )
    .unwrap();
    let gg = GroupGrid::new(
        grid,
        GroupParams {
            a_min: 1.0,
            a_max: 2.0,
            n_scales: 4,
            n_angles: [4, 1, 1],
        },
    )
    .unwrap();
    let mut all_cwt = true;
    let mut worst_match = 0.0f64;
    for t in 0..50u64 {
        let f = random_band_limited(grid, 300 + t, 4);
        let rep = wavelet_uncertainty(&f, &psi, &gg).unwrap();
        all_cwt &= rep.theorem.satisfied;
        let cor = rep.corollary.expect("scalar C_psi yields the corollary");
        worst_match = worst_match.max((cor.ratio - rep.theorem.ratio).abs() / rep.theorem.ratio);
    }
    report(
        9,
        "uncertainty principles",
        all_cft
            && all_cwt
            && (gauss_ratio - 1.0).abs() < RATIO_TOL
            && worst_match < MATCH_TOL,
        &format!(
            "min CFT ratio {min_ratio:.4}, Gaussian ratio {gauss_ratio:.6}, corollary/theorem gap {worst_match:.3e}"
        ),
    );
}

#[test]
fn criterion_10_gabor_admissibility() {
    const TOL_DC: f64 = 1e-14;
    const TOL_PATHS: f64 = 1e-10;
    let mut worst_dc = 0.0f64;
    let mut worst_paths = 0.0f64;
    let mut worst_grades = 0.0f64;
    let cases: Vec<(Dimension, [f64; 3], [f64; 3], Multivector)> = vec![
        (d2(), [1.5, 1.5, 1.5], [2.0, 0.0, 0.0], Multivector::scalar(d2(), 1.0)),
        (d2(), [3.0, 1.0, 1.0], [2.0, 0.5, 0.0], {
            // versor amplitude: a rotor cos(0.3) + sin(0.3) e12
            Multivector::scalar(d2(), 0.3f64.cos())
                + Multivector::basis_blade(d2(), 0b11).scale(0.3f64.sin())
        }),
        (d3(), [1.2, 1.2, 1.2], [1.0, 0.0, 0.0], Multivector::scalar(d3(), 1.0)),
    ];
    for (dim, sigma, omega0, amplitude) in cases {
        let grid = GridSpec::new(dim, if dim.n() == 2 { 64 } else { 16 }, 6.0).unwrap();
        let psi = GaborWavelet::new(
            dim,
            GaborParams {
                sigma,
                omega0,
                amplitude,
            },
        )
        .unwrap();
        let zero = [0.0; 3];
        worst_dc = worst_dc.max(psi.spectrum(&zero[..dim.n()]).unwrap().modulus());
        let closed = gabor_admissibility(&psi, &grid);
        let generic = Admissible::new(psi, &grid).unwrap().constant();
        worst_paths =
            worst_paths.max((closed - generic).modulus() / generic.scalar_part());
        let non_scalar: f64 = (1..dim.blade_count())
            .map(|m| generic.coeff(m).abs())
            .fold(0.0, f64::max);
        worst_grades = worst_grades.max(non_scalar / generic.scalar_part());
    }
    report(
        10,
        "Gabor admissibility",
        worst_dc < TOL_DC && worst_paths < TOL_PATHS && worst_grades < TOL_PATHS,
        &format!(
            "|psi_hat(0)| {worst_dc:.3e}, path gap {worst_paths:.3e}, non-scalar grades {worst_grades:.3e}"
        ),
    );
}
