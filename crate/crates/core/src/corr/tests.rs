use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gauss::ComplexNormalSource;
use crate::linalg::CMatrix;
use crate::spectral::{CovarianceEvaluator, CovarianceKernel, SpectralMeasure, TruncatedKernel};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pts(points: &[Complex64]) -> PointConfig {
    PointConfig::new(points.to_vec()).unwrap()
}

fn lebesgue() -> CovarianceEvaluator {
    CovarianceEvaluator::new(SpectralMeasure::Lebesgue).unwrap()
}

fn arc() -> CovarianceEvaluator {
    CovarianceEvaluator::new(SpectralMeasure::arc_half()).unwrap()
}

fn atoms(n: usize) -> CovarianceEvaluator {
    CovarianceEvaluator::new(SpectralMeasure::roots_of_unity(n).unwrap()).unwrap()
}

fn random_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>())
}

fn random_pair(rng: &mut ChaCha8Rng, radius: f64) -> PointConfig {
    loop {
        let (a, b) = (random_disk(rng, radius), random_disk(rng, radius));
        if (a - b).norm() > 0.1 {
            return pts(&[a, b]);
        }
    }
}

fn naive_permanent(a: &CMatrix) -> Complex64 {
    fn go(a: &CMatrix, row: usize, used: &mut Vec<bool>) -> Complex64 {
        let n = a.dim();
        if row == n {
            return c(1.0, 0.0);
        }
        let mut total = c(0.0, 0.0);
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                total += a[(row, col)] * go(a, row + 1, used);
                used[col] = false;
            }
        }
        total
    }
    go(a, 0, &mut vec![false; a.dim()])
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

/// `π^{-n} det(s(a_p, a_q)²)` for the Lebesgue measure.
fn bergman_rho(a: &[Complex64]) -> f64 {
    let m = CMatrix::from_fn(a.len(), |p, q| (c(1.0, 0.0) - a[p] * a[q].conj()).powi(-2));
    m.det().re / PI.powi(a.len() as i32)
}

// permanents

#[test]
fn permanent_examples() {
    let ones = CMatrix::from_fn(2, |_, _| c(1.0, 0.0));
    assert_eq!(permanent(&ones).unwrap(), c(2.0, 0.0));
    let d = [c(2.0, 1.0), c(-1.0, 0.5), c(0.3, 0.0), c(4.0, -2.0)];
    let diag = CMatrix::from_fn(4, |i, j| if i == j { d[i] } else { c(0.0, 0.0) });
    let prod: Complex64 = d.iter().product();
    assert!((permanent(&diag).unwrap() - prod).norm() < 1e-14);
    assert!(matches!(
        permanent(&CMatrix::zeros(21)),
        Err(crate::GafError::SizeLimit { n: 21, max: 20 })
    ));
}

#[test]
fn ryser_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..100 {
        let n = 1 + trial % 6;
        let a = random_matrix(&mut rng, n);
        let (fast, slow) = (permanent(&a).unwrap(), naive_permanent(&a));
        assert!((fast - slow).norm() <= 1e-12 * slow.norm().max(1e-3), "n={n}");
    }
    let a = random_matrix(&mut rng, 5);
    let slow = naive_permanent(&a);
    assert!((permanent(&a).unwrap() - slow).norm() <= 1e-12 * slow.norm());
}

#[test]
fn permanent_is_second_moment_of_gaussian_products() {
    // Y = L ζ with L L* = K
    let k = [[1.0, 0.3], [0.3, 0.8]];
    let k01 = c(0.3, 0.2);
    let l00 = f64::sqrt(k[0][0]);
    let l10 = k01.conj() / l00;
    let l11 = (k[1][1] - l10.norm_sqr()).sqrt();
    let cov = CMatrix::from_rows(&[vec![c(k[0][0], 0.0), k01], vec![k01.conj(), c(k[1][1], 0.0)]]);
    let per = permanent(&cov).unwrap().re;

    let mut src = ComplexNormalSource::new(99);
    let draws = 200_000;
    let samples: Vec<f64> = (0..draws)
        .map(|_| {
            let (z0, z1) = (src.next_complex(), src.next_complex());
            let y0 = l00 * z0;
            let y1 = l10 * z0 + l11 * z1;
            (y0 * y1).norm_sqr()
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / draws as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    let se = (var / draws as f64).sqrt();
    assert!((mean - per).abs() < 3.0 * se, "{mean} vs {per} (se {se})");
}

// first intensity

#[test]
fn rho1_ek_examples() {
    assert!((rho1_ek(&lebesgue(), c(0.0, 0.0)).unwrap() - 1.0 / PI).abs() < 1e-15);

    let ev = lebesgue();
    let tk = TruncatedKernel::new(&ev, 7);
    let (n, r) = (7i32, 0.5f64);
    let x = r * r;
    let exact = (1.0 / (1.0 - x).powi(2) - 64.0 * x.powi(n) / (1.0 - x.powi(n + 1)).powi(2)) / PI;
    assert!((rho1_ek(&tk, c(r, 0.0)).unwrap() - exact).abs() < 1e-10);

    let ev = arc();
    let target = 1.0 - 4.0 / (PI * PI);
    assert!((target - 0.594715).abs() < 1e-6);
    for &r in &[0.25, 0.5, 0.75] {
        for sign in [1.0, -1.0] {
            let z = Complex64::from_polar(r, sign * PI / 2.0);
            let g = PI * (1.0 - r * r).powi(2) * rho1_ek(&ev, z).unwrap();
            assert!((g - target).abs() < 1e-8, "r={r}: {g}");
        }
    }
}

#[test]
fn rho1_ek_rejects_degenerate_kernel() {
    struct Zero;
    impl CovarianceKernel for Zero {
        fn kernel(&self, _: Complex64, _: Complex64) -> crate::Result<Complex64> {
            Ok(c(0.0, 0.0))
        }
        fn derivatives(&self, _: Complex64, _: Complex64) -> crate::Result<crate::spectral::KernelDerivatives> {
            Ok(crate::spectral::KernelDerivatives {
                k: c(0.0, 0.0),
                dz: c(0.0, 0.0),
                dwbar: c(0.0, 0.0),
                dz_dwbar: c(0.0, 0.0),
            })
        }
    }
    assert!(matches!(
        rho1_ek(&Zero, c(0.1, 0.0)),
        Err(crate::GafError::DegenerateKernel { .. })
    ));
}

#[test]
fn rho1_spectral_examples() {
    assert!((rho1_spectral(&lebesgue(), c(0.0, 0.0)).unwrap() - 1.0 / PI).abs() < 1e-10);
    let z = Complex64::from_polar(0.3, 2.5);
    let ev = arc();
    let (ek, sp) = (rho1_ek(&ev, z).unwrap(), rho1_spectral(&ev, z).unwrap());
    assert!((ek - sp).abs() < 1e-8, "{ek} {sp}");
    // the dead-zone direction has intensity well below the hyperbolic one
    assert!(PI * (1.0 - 0.09f64).powi(2) * sp < 0.5);
    let ev = atoms(2);
    let z = c(0.2, 0.35);
    assert!((rho1_ek(&ev, z).unwrap() - rho1_spectral(&ev, z).unwrap()).abs() < 1e-12);
}

#[test]
fn rho1_routes_agree_on_polar_grid() {
    for ev in [lebesgue(), arc(), atoms(4)] {
        for i in 1..=5 {
            let r = 0.9 * i as f64 / 5.0;
            for j in 0..8 {
                let z = Complex64::from_polar(r, -PI + 2.0 * PI * (j as f64 + 0.25) / 8.0);
                let ek = rho1_ek(&ev, z).unwrap();
                let sp = rho1_spectral(&ev, z).unwrap();
                assert!((ek - sp).abs() < 1e-8, "{:?} z={z}: {ek} vs {sp}", ev.measure());
            }
        }
    }
}

#[test]
fn hyperbolic_intensity_is_maximal() {
    let (leb, others) = (lebesgue(), [arc(), atoms(2), atoms(4)]);
    for i in 0..=5 {
        let r = 0.9 * i as f64 / 5.0;
        for j in 0..8 {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 8.0 + 0.1);
            let top = rho1_ek(&leb, z).unwrap();
            for ev in &others {
                assert!(rho1_ek(ev, z).unwrap() <= top + 1e-10);
            }
        }
    }
}

// conditional kernels and direct correlations

#[test]
fn conditional_kernel_vanishes_at_conditioning_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ev in [lebesgue(), arc()] {
        let a = pts(&[c(0.2, -0.1), c(-0.4, 0.3)]);
        for _ in 0..5 {
            let w = random_disk(&mut rng, 0.9);
            for &ap in a.points() {
                assert!(conditional_kernel(&ev, &a, ap, w).unwrap().norm() < 1e-12);
                assert!(conditional_kernel(&ev, &a, w, ap).unwrap().norm() < 1e-12);
            }
        }
    }
}

#[test]
fn conditional_kernel_at_origin() {
    let (z, w) = (c(0.4, 0.0), c(0.0, 0.2));
    let got = conditional_kernel(&lebesgue(), &pts(&[c(0.0, 0.0)]), z, w).unwrap();
    let zw = z * w.conj();
    assert!((got - zw / (1.0 - zw)).norm() < 1e-15);
}

#[test]
fn conditional_kernel_single_point_form() {
    let ev = arc();
    let (a, z, w) = (c(0.3, 0.2), c(-0.5, 0.1), c(0.1, 0.6));
    let k = |x, y| ev.kernel(x, y).unwrap();
    let expect = k(z, w) - k(z, a) * k(a, w) / k(a, a);
    assert!((conditional_kernel(&ev, &pts(&[a]), z, w).unwrap() - expect).norm() < 1e-13);
}

#[test]
fn conditional_kernel_inductive_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for ev in [lebesgue(), arc()] {
        for _ in 0..10 {
            let a = random_pair(&mut rng, 0.8);
            let (z, w) = (random_disk(&mut rng, 0.9), random_disk(&mut rng, 0.9));
            let bordered = conditional_kernel(&ev, &a, z, w).unwrap();
            let inductive = conditional_kernel_inductive(&ev, &a, z, w).unwrap();
            assert!((bordered - inductive).norm() < 1e-10 * bordered.norm().max(1.0));
        }
    }
}

#[test]
fn conditional_kernel_rejects_singular_gram() {
    // two atoms cannot separate three points
    let a = pts(&[c(0.1, 0.0), c(0.3, 0.2), c(-0.4, 0.1)]);
    let err = conditional_kernel(&atoms(2), &a, c(0.0, 0.0), c(0.0, 0.0)).unwrap_err();
    assert!(matches!(err, crate::GafError::IllConditioned { .. }));
}

#[test]
fn rho_n_direct_examples() {
    let ev = lebesgue();
    let one = rho_n_direct(&ev, &pts(&[c(0.0, 0.0)])).unwrap();
    assert!((one.value - 1.0 / PI).abs() < 1e-15);
    assert_eq!(one.method, Method::DirectPermanent);

    let two = rho_n_direct(&ev, &pts(&[c(0.0, 0.0), c(0.5, 0.0)])).unwrap();
    let spot = 7.0 / (9.0 * PI * PI);
    assert!((two.value - spot).abs() < 1e-14);
    assert!((spot - 0.0788054).abs() < 1e-7);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for ev in [lebesgue(), arc()] {
        for _ in 0..5 {
            let a = random_pair(&mut rng, 0.8);
            let swapped = pts(&[a.points()[1], a.points()[0]]);
            let (x, y) = (rho_n_direct(&ev, &a).unwrap().value, rho_n_direct(&ev, &swapped).unwrap().value);
            assert!((x - y).abs() < 1e-12 * x.abs().max(1.0));
        }
    }
}

#[test]
fn rho_n_direct_matches_bergman_determinants() {
    let ev = lebesgue();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=4 {
        for _ in 0..5 {
            let a: Vec<Complex64> = (0..n).map(|_| random_disk(&mut rng, 0.7)).collect();
            let got = rho_n_direct(&ev, &pts(&a)).unwrap().value;
            let want = bergman_rho(&a);
            assert!((got - want).abs() < 1e-10 * want.abs().max(1e-6), "n={n}: {got} {want}");
        }
    }
}

#[test]
fn rho_n_direct_matches_ek_for_one_point() {
    let ev = arc();
    let z = c(-0.3, 0.45);
    let direct = rho_n_direct(&ev, &pts(&[z])).unwrap().value;
    assert!((direct - rho1_ek(&ev, z).unwrap()).abs() < 1e-13);
}

#[test]
fn pair_correlation_vanishes_quadratically() {
    let ev = lebesgue();
    let values: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&a| rho_n_direct(&ev, &pts(&[c(0.0, 0.0), c(a, 0.0)])).unwrap().value)
        .collect();
    for w in values.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }
}

// spectral representation

#[test]
fn mu_mass_examples() {
    let ev = lebesgue();
    assert!((mu_mass(&ev, &pts(&[c(0.0, 0.0)]), 64).unwrap() - 1.0).abs() < 1e-14);
    assert!((mu_mass(&ev, &pts(&[c(0.5, 0.0)]), 128).unwrap() - 4.0 / 3.0).abs() < 1e-13);
    let a = pts(&[c(0.3, 0.0), c(0.0, -0.4)]);
    let mu = mu_mass(&ev, &a, 128).unwrap();
    let gram = CMatrix::from_fn(2, |j, k| ev.kernel(a.points()[j], a.points()[k]).unwrap()).det().re;
    assert!((mu * crate::linalg::vandermonde_sq_abs(a.points()) - gram).abs() < 1e-8);
    assert!(mu_mass(&ev, &pts(&[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0), c(0.4, 0.0)]), 8).is_err());
}

#[test]
fn gram_determinant_bridge() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ev in [lebesgue(), arc()] {
        for n in 1..=3 {
            let a: Vec<Complex64> = (0..n).map(|_| random_disk(&mut rng, 0.6)).collect();
            let a = pts(&a);
            let gram = CMatrix::from_fn(n, |j, k| ev.kernel(a.points()[j], a.points()[k]).unwrap()).det().re;
            let mu = mu_mass(&ev, &a, if n == 3 { 48 } else { 96 }).unwrap();
            let bridged = mu * crate::linalg::vandermonde_sq_abs(a.points());
            assert!((bridged - gram).abs() < 1e-8 * gram.max(1.0), "n={n} {bridged} {gram}");
        }
    }
}

#[test]
fn rho_n_spectral_examples() {
    let ev = lebesgue();
    let one = rho_n_spectral(&ev, &pts(&[c(0.0, 0.0)]), default_order(1)).unwrap();
    assert!((one.value - 1.0 / PI).abs() < 1e-6);
    assert_eq!(one.method, Method::SpectralPermanent);
    let two = rho_n_spectral(&ev, &pts(&[c(0.0, 0.0), c(0.5, 0.0)]), default_order(2)).unwrap();
    assert!((two.value - 7.0 / (9.0 * PI * PI)).abs() < 1e-4);
    assert!(two.warning.is_none());

    let ev = arc();
    let a = pts(&[c(0.2, 0.0), c(-0.3, 0.0)]);
    let spectral = rho_n_spectral(&ev, &a, default_order(2)).unwrap();
    let direct = rho_n_direct(&ev, &a).unwrap();
    assert!((spectral.value - direct.value).abs() < f64::max(1e-4, 3.0 * spectral.error_estimate));
}

#[test]
fn rho_n_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for ev in [lebesgue(), arc(), atoms(4)] {
        for n in 1..=2 {
            for _ in 0..10 {
                let a = if n == 1 { pts(&[random_disk(&mut rng, 0.6)]) } else { random_pair(&mut rng, 0.6) };
                let spectral = rho_n_spectral(&ev, &a, default_order(n)).unwrap();
                let direct = rho_n_direct(&ev, &a).unwrap();
                let tol = f64::max(1e-4, 3.0 * spectral.error_estimate);
                assert!(
                    (spectral.value - direct.value).abs() < tol,
                    "{:?} {:?}: {} {}",
                    ev.measure(),
                    a.points(),
                    spectral.value,
                    direct.value
                );
            }
        }
    }
}

#[test]
fn rho_3_routes_agree() {
    let ev = lebesgue();
    let a = pts(&[c(0.1, 0.2), c(-0.3, 0.0), c(0.2, -0.35)]);
    let spectral = rho_n_spectral(&ev, &a, default_order(3)).unwrap();
    let direct = rho_n_direct(&ev, &a).unwrap();
    assert!((spectral.value - direct.value).abs() < 1e-6 * direct.value.max(1.0));
    assert!((direct.value - bergman_rho(a.points())).abs() < 1e-12);
}

#[test]
fn spectral_results_do_not_depend_on_thread_count() {
    let ev = arc();
    let a = pts(&[c(0.2, 0.1), c(-0.3, 0.2)]);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| rho_n_spectral(&ev, &a, 32).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn correlation_result_json_round_trip() {
    let r = rho_n_spectral(&lebesgue(), &pts(&[c(0.1, 0.2), c(-0.3, 0.0)]), 16).unwrap();
    let json = r.to_json();
    assert!(json.contains("\"method\":\"SpectralPermanent\""));
    assert!(json.contains("\"n\":2"));
    assert_eq!(CorrelationResult::from_json(&json).unwrap(), r);
}

#[test]
fn point_config_validation() {
    assert!(PointConfig::new(vec![]).is_err());
    assert!(PointConfig::new(vec![c(1.0, 0.0)]).is_err());
    assert!(PointConfig::new(vec![c(0.1, 0.0), c(0.1 + 1e-9, 0.0)]).is_err());
    let p = PointConfig::new(vec![c(0.1, 0.0), c(0.2, 0.0)]).unwrap();
    assert!((p.min_separation() - 0.1).abs() < 1e-15);
}

// identities

#[test]
fn cue_kernel_examples() {
    assert_eq!(cue_kernel(5, 0.7, 0.7), 5.0);
    assert!(cue_kernel(2, 0.0, PI).abs() < 1e-15);
    let m = 512;
    let trace: f64 = (0..m)
        .map(|j| cue_kernel(3, 0.4, -PI + 2.0 * PI * (j as f64 + 0.5) / m as f64).powi(2))
        .sum::<f64>()
        / m as f64;
    assert!((trace - 3.0).abs() < 1e-10);
    // the continuation agrees with the defining sum at a full turn
    let direct: Complex64 = (0..4).map(|k| Complex64::from_polar(1.0, k as f64 * 2.0 * PI)).sum();
    assert!((cue_kernel(4, 2.0 * PI, 0.0).abs() - direct.norm()).abs() < 1e-12);
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| random_disk(rng, radius)).collect()
}

/// Random points at least `sep` apart. The Cauchy determinant is of size
/// `|V(a) V(b)|` while its entries are of order one, so clustered points
/// lose digits to cancellation in any elimination.
fn separated_points(rng: &mut ChaCha8Rng, n: usize, radius: f64, sep: f64) -> Vec<Complex64> {
    loop {
        let a = random_points(rng, n, radius);
        if (1..n).all(|k| (0..k).all(|j| (a[k] - a[j]).norm() >= sep)) {
            return a;
        }
    }
}

#[test]
fn cauchy_identity() {
    let r = verify_cauchy(&[c(0.3, 0.1)], &[c(-0.2, 0.5)]).unwrap();
    assert_eq!(r.cauchy, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let (a, b) = (separated_points(&mut rng, 3, 0.5, 0.2), separated_points(&mut rng, 3, 0.5, 0.2));
        let r = verify_cauchy(&a, &b).unwrap();
        assert!(r.worst() < 1e-12, "{r:?} {a:?}");
        let (a, b) = (random_points(&mut rng, 6, 0.9), random_points(&mut rng, 6, 0.9));
        assert!(verify_cauchy(&a, &b).unwrap().worst() < 1e-10);
    }
    let r = verify_cauchy(&[c(0.0, 0.0), c(0.2, 0.0)], &[c(0.1, 0.0), c(0.3, 0.0)]).unwrap();
    assert!(r.inverse_vandermonde.is_none());
    assert!(verify_cauchy(&[c(2.0, 0.0)], &[c(0.6, 0.0)]).is_err());
}

#[test]
fn borchardt_identity() {
    assert_eq!(verify_borchardt(&[c(0.3, 0.1)], &[c(-0.2, 0.5)]).unwrap(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let (a, b) = (random_points(&mut rng, 2, 0.9), random_points(&mut rng, 2, 0.9));
        assert!(verify_borchardt(&a, &b).unwrap() < 1e-12);
        let (a, b) = (random_points(&mut rng, 6, 0.5), random_points(&mut rng, 6, 0.5));
        assert!(verify_borchardt(&a, &b).unwrap() < 1e-9);
    }
    let a = random_points(&mut rng, 11, 0.5);
    assert!(verify_borchardt(&a, &a).is_err());
}

#[test]
fn reproducing_formulas() {
    let one = |_: &[Complex64]| c(1.0, 0.0);
    let e1 = |z: &[Complex64]| z.iter().sum::<Complex64>();
    let a1 = pts(&[c(0.3, -0.2)]);
    assert!((reproducing_integral(&one, &a1, ReproducingVariant::Plain).unwrap() - 1.0).norm() < 1e-14);

    let a = pts(&[c(0.3, 0.0), c(0.0, -0.2)]);
    assert_eq!(reproducing_rhs(&e1, a.points(), ReproducingVariant::Plain).unwrap(), -2.0 * c(0.3, -0.2));
    assert!(verify_reproducing(&e1, &a, ReproducingVariant::Plain).unwrap() < 1e-10);

    let b = pts(&[c(0.5, 0.0), c(0.25, 0.0)]);
    // the bracket 1 - sum_p prod a_k/(a_k - a_p) vanishes for Q = 1
    assert!(reproducing_rhs(&one, b.points(), ReproducingVariant::OverZ).unwrap().norm() < 1e-15);
    assert!(verify_reproducing(&one, &b, ReproducingVariant::OverZ).unwrap() < 1e-10);
    assert!(verify_reproducing(&e1, &b, ReproducingVariant::OverZ).unwrap() < 1e-10);

    let w = c(0.2, 0.3);
    let szego = move |z: &[Complex64]| z.iter().map(|zk| (1.0 - zk * w.conj()).inv()).product::<Complex64>();
    let e2 = |z: &[Complex64]| z[0] * z[1] + z[0] * z[2] + z[1] * z[2];
    let a3 = pts(&[c(0.3, 0.1), c(-0.2, 0.4), c(0.1, -0.5)]);
    for variant in [ReproducingVariant::Plain, ReproducingVariant::OverZ] {
        assert!(verify_reproducing(&szego, &a, variant).unwrap() < 1e-10);
        assert!(verify_reproducing(&e2, &a3, variant).unwrap() < 1e-10);
    }
    let zero = pts(&[c(0.0, 0.0), c(0.5, 0.0)]);
    assert!(verify_reproducing(&one, &zero, ReproducingVariant::OverZ).is_err());
}

#[test]
fn volume_formula() {
    let ev = lebesgue();
    let r = verify_volume_formula(&ev, &pts(&[c(0.0, 0.0)]), 64).unwrap();
    assert!(r.worst() < 1e-10);
    assert!((mu_mass(&ev, &pts(&[c(0.5, 0.0)]), 64).unwrap() - 4.0 / 3.0).abs() < 1e-10);
    assert!(verify_volume_formula(&ev, &pts(&[c(0.5, 0.0)]), 64).unwrap().worst() < 1e-10);
    assert!(verify_volume_formula(&ev, &pts(&[c(0.3, 0.0), c(0.0, 0.4)]), 64).unwrap().worst() < 1e-10);
    assert!(verify_volume_formula(&arc(), &pts(&[c(0.0, 0.0)]), 64).is_err());
}
