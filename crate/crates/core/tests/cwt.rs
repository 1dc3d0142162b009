use cliffwave::clifford::{CliffordVector, Multivector, Signature};
use cliffwave::cwt::*;
use cliffwave::error::Error;
use cliffwave::field::{GridSpec, SampledField};
use cliffwave::radial::MotherWavelet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mother(ell: usize, alpha: i32, beta: i32, m: usize) -> MotherWavelet<f64> {
    MotherWavelet::new(ell, alpha, beta, m).unwrap()
}

fn wavelet(ell: usize, alpha: i32, beta: i32, m: usize) -> Wavelet<f64> {
    Wavelet::from_mother(&mother(ell, alpha, beta, m)).unwrap()
}

fn random_field(grid: &GridSpec<f64>, seed: u64) -> SampledField<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.len() << grid.m();
    let data = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SampledField::from_components(grid.clone(), data).unwrap()
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(0.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

fn small_setup(n_b: usize) -> CwtSetup<f64> {
    let b = GridSpec::new(vec![-3.0, -2.0], vec![1.0, 1.0], vec![n_b, n_b - 1]).unwrap();
    CwtSetup::new(ScaleGrid::geometric(2.5, 6.0, 3).unwrap(), b)
}

#[test]
fn zero_field_gives_zero_coefficients() {
    let w = wavelet(1, -1, -4, 2);
    let f = SampledField::zeros(GridSpec::centered(2, 17, 1.0).unwrap());
    let setup = small_setup(6);
    for t in [forward_direct(&w, &f, &setup).unwrap(), forward_fft(&w, &f, &setup).unwrap()] {
        assert!(t.data().iter().all(|&v| v == 0.0));
    }
    let r = plancherel_check(&w, &f, &setup, 1.0, Method::Fast).unwrap();
    assert!(r.ratio.is_none());
    assert_eq!(r.coefficient_energy, 0.0);
}

#[test]
fn inserted_copy_reproduces_its_energy() {
    let psi = mother(1, -1, -4, 2);
    let w = Wavelet::from_mother(&psi).unwrap();
    let grid = GridSpec::centered(2, 97, 0.25).unwrap();
    let (a0, b0) = (3.0f64, [0.5f64, -1.0]);
    let f = SampledField::from_fn(grid, |x, out| {
        let y = [x[0] - b0[0], x[1] - b0[1]];
        w.write_copy(a0, None, &y, out);
    });
    let b = GridSpec::new(b0.to_vec(), vec![0.25, 0.25], vec![1, 1]).unwrap();
    let setup = CwtSetup::new(ScaleGrid::from_log_step(a0, 0.1, 1).unwrap(), b);
    let t = forward_direct(&w, &f, &setup).unwrap();
    let v = t.value(0, 0, 0);
    let want = w.norm_sqr();
    assert!((v.scalar_part() - want).abs() < 1e-3 * want, "{} vs {want}", v.scalar_part());
    for c in &v.coeffs()[1..] {
        assert!(c.abs() < 1e-12 * want);
    }
}

#[test]
fn transform_is_linear() {
    let w = wavelet(2, -2, -5, 2);
    let grid = GridSpec::centered(2, 21, 1.0).unwrap();
    let (f, g) = (random_field(&grid, 1), random_field(&grid, 2));
    let setup = small_setup(7);
    let alpha = -1.75;
    let lhs = forward_direct(&w, &f.scale(alpha).add(&g).unwrap(), &setup).unwrap();
    let rhs = forward_direct(&w, &f, &setup).unwrap().scaled(alpha).axpy(1.0, &forward_direct(&w, &g, &setup).unwrap()).unwrap();
    assert!(max_rel(lhs.data(), rhs.data()) < 1e-12);
}

#[test]
fn fast_path_matches_direct_quadrature() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 19, 1.0).unwrap();
    let f = random_field(&grid, 7);
    for convention in [Convention::ConjugateLeft, Convention::ProductRight] {
        for spins in [0, 3] {
            let setup = small_setup(9).with_convention(convention).with_spin_angles(spins);
            let d = forward_direct(&w, &f, &setup).unwrap();
            let q = forward_fft(&w, &f, &setup).unwrap();
            assert!(max_rel(d.data(), q.data()) < 1e-10, "{convention} spins {spins}");
        }
    }
}

#[test]
fn fast_path_matches_direct_in_three_dimensions() {
    let w = wavelet(2, -2, -6, 3);
    let grid = GridSpec::new(vec![0.0, 0.5, -1.0], vec![0.5; 3], vec![7, 6, 5]).unwrap();
    let f = random_field(&grid, 3);
    let b = GridSpec::new(vec![1.0, -0.5, -2.0], vec![0.5; 3], vec![4, 5, 9]).unwrap();
    let setup = CwtSetup::new(ScaleGrid::geometric(1.5, 3.0, 2).unwrap(), b);
    let d = forward_direct(&w, &f, &setup).unwrap();
    let q = forward_fft(&w, &f, &setup).unwrap();
    assert!(max_rel(d.data(), q.data()) < 1e-10);
}

#[test]
fn impulse_returns_the_conjugated_copy() {
    let psi = mother(2, -2, -5, 2);
    let w = Wavelet::from_mother(&psi).unwrap();
    let grid = GridSpec::centered(2, 33, 0.5).unwrap();
    let node = 33 * 20 + 9;
    let x0 = grid.node_vec(node);
    let sig = Signature::new(2).unwrap();
    let c = Multivector::from_coeffs(sig, vec![0.3, -1.2, 0.8, 0.5]).unwrap();
    let mut f = SampledField::zeros(grid.clone());
    f.set_value(node, &c.scale(&(1.0 / grid.cell_volume())));
    let b = GridSpec::new(vec![-4.0, -3.0], vec![0.5, 0.5], vec![5, 4]).unwrap();
    let scales = ScaleGrid::geometric(2.0, 5.0, 4).unwrap();
    let t = forward_fft(&w, &f, &CwtSetup::new(scales.clone(), b.clone())).unwrap();
    let mut checked = 0;
    for (ia, &a) in scales.values().iter().enumerate() {
        for j in 0..b.len() {
            let bj = b.node_vec(j);
            let y = CliffordVector::new(vec![(x0[0] - bj[0]) / a, (x0[1] - bj[1]) / a]).unwrap();
            let psi_val = psi.function().evaluate(&y).unwrap().scale(&(1.0 / a));
            let want = &psi_val.conjugate() * &c;
            let got = t.value(ia, 0, j);
            assert!(got.relative_distance(&want) < 1e-10);
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

#[test]
fn lattice_shift_moves_coefficients() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 21, 1.0).unwrap();
    let f = random_field(&grid, 11);
    let setup = small_setup(6);
    let t = forward_fft(&w, &f, &setup).unwrap();
    // Same samples on a grid moved by a lattice vector.
    let moved = GridSpec::new(vec![grid.origin()[0] + 3.0, grid.origin()[1] - 2.0], vec![1.0, 1.0], vec![21, 21]).unwrap();
    let f2 = SampledField::from_components(moved, f.data().to_vec()).unwrap();
    let b = setup.translations.clone();
    let b2 = GridSpec::new(vec![b.origin()[0] + 3.0, b.origin()[1] - 2.0], vec![1.0, 1.0], b.shape().to_vec()).unwrap();
    let t2 = forward_fft(&w, &f2, &CwtSetup::new(setup.scales.clone(), b2)).unwrap();
    assert_eq!(t.data(), t2.data());
}

#[test]
fn shifting_the_samples_shifts_interior_coefficients() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 25, 1.0).unwrap();
    let n = 25;
    let base = random_field(&grid, 5);
    // Zero a margin so the shifted field keeps all of its samples.
    let keep = base.node_mask(|x| x[0].abs() < 8.0 && x[1].abs() < 8.0);
    let f = base.masked(&keep);
    let mut g = SampledField::zeros(grid.clone());
    for c in 0..4 {
        for i in 0..n {
            for j in 0..n {
                if i + 2 < n && j >= 1 {
                    g.component_mut(c)[(i + 2) * n + j - 1] = f.component(c)[i * n + j];
                }
            }
        }
    }
    let setup = small_setup(6);
    let t = forward_fft(&w, &f, &setup).unwrap();
    let b = &setup.translations;
    let b2 = GridSpec::new(vec![b.origin()[0] + 2.0, b.origin()[1] - 1.0], vec![1.0, 1.0], b.shape().to_vec()).unwrap();
    let t2 = forward_fft(&w, &g, &CwtSetup::new(setup.scales.clone(), b2)).unwrap();
    assert!(max_rel(t.data(), t2.data()) < 1e-12);
}

#[test]
fn reconstruction_paths_agree_and_are_linear() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 13, 1.0).unwrap();
    let f = random_field(&grid, 9);
    for convention in [Convention::ConjugateLeft, Convention::ProductRight] {
        let setup = small_setup(8).with_convention(convention).with_spin_angles(2);
        let t = forward_fft(&w, &f, &setup).unwrap();
        let fast = reconstruct_fft(&w, &t, &grid, 3.0).unwrap();
        let slow = reconstruct_direct(&w, &t, &grid, 3.0).unwrap();
        assert!(max_rel(fast.data(), slow.data()) < 1e-10);
        let zero = reconstruct_fft(&w, &t.scaled(0.0), &grid, 3.0).unwrap();
        assert!(zero.data().iter().all(|&v| v == 0.0));
        let u = forward_fft(&w, &random_field(&grid, 10), &setup).unwrap();
        let lhs = reconstruct_fft(&w, &t.axpy(2.5, &u).unwrap(), &grid, 3.0).unwrap();
        let rhs = fast.axpy(2.5, &reconstruct_fft(&w, &u, &grid, 3.0).unwrap()).unwrap();
        assert!(max_rel(lhs.data(), rhs.data()) < 1e-12);
    }
}

#[test]
fn plancherel_ratio_ignores_field_scaling() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 48, 1.0).unwrap();
    let f = SampledField::from_fn(grid.clone(), |x, out| {
        let r2: f64 = x[0] * x[0] + x[1] * x[1];
        out[0] = (-r2 / 18.0).exp();
    });
    let b = grid.clone();
    let setup = CwtSetup::new(ScaleGrid::geometric(2.5, 12.0, 8).unwrap(), b);
    let t = forward_fft(&w, &f, &setup).unwrap();
    let r1 = plancherel_ratio(&t.scaled(1.0), &f, 2.0);
    let r2 = plancherel_ratio(&t.scaled(2.0), &f.scale(2.0), 2.0);
    let (lo, hi) = match (r1, r2) {
        (Ok(a), Ok(b)) => (a.ratio.unwrap(), b.ratio.unwrap()),
        (Err(Error::TruncationGate(_)), Err(Error::TruncationGate(_))) => {
            let a = truncation_report(&t);
            let b = truncation_report(&t.scaled(2.0));
            (a.worst(), b.worst())
        }
        other => panic!("{other:?}"),
    };
    assert!((lo - hi).abs() <= 1e-12 * lo.abs());
}

#[test]
fn under_resolved_scales_are_rejected() {
    let w = wavelet(1, -1, -4, 2);
    let f = SampledField::zeros(GridSpec::centered(2, 17, 1.0).unwrap());
    let b = GridSpec::centered(2, 4, 1.0).unwrap();
    let setup = CwtSetup::new(ScaleGrid::geometric(1.0, 4.0, 3).unwrap(), b);
    assert!(matches!(forward_fft(&w, &f, &setup), Err(Error::UnderResolved(_))));
    assert!(matches!(forward_direct(&w, &f, &setup), Err(Error::UnderResolved(_))));
}

#[test]
fn incompatible_lattices_are_rejected() {
    let w = wavelet(1, -1, -4, 2);
    let f = SampledField::zeros(GridSpec::centered(2, 17, 1.0).unwrap());
    let off = GridSpec::new(vec![0.25, 0.0], vec![1.0, 1.0], vec![3, 3]).unwrap();
    let setup = CwtSetup::new(ScaleGrid::geometric(3.0, 4.0, 2).unwrap(), off);
    assert!(matches!(forward_fft(&w, &f, &setup), Err(Error::IncompatibleLattice(_))));
    let coarse = GridSpec::new(vec![0.0, 0.0], vec![2.0, 2.0], vec![3, 3]).unwrap();
    let setup = CwtSetup::new(ScaleGrid::geometric(3.0, 4.0, 2).unwrap(), coarse);
    assert!(matches!(forward_fft(&w, &f, &setup), Err(Error::IncompatibleLattice(_))));
}

#[test]
fn spin_axis_requires_two_dimensions() {
    let w = wavelet(1, -1, -4, 3);
    let f = SampledField::zeros(GridSpec::centered(3, 6, 1.0).unwrap());
    let setup = CwtSetup::new(ScaleGrid::geometric(3.0, 4.0, 2).unwrap(), GridSpec::centered(3, 2, 1.0).unwrap())
        .with_spin_angles(4);
    assert!(forward_fft(&w, &f, &setup).is_err());
}

#[test]
fn coefficient_csv_round_trip() {
    let w = wavelet(1, -1, -4, 2);
    let grid = GridSpec::centered(2, 13, 1.0).unwrap();
    let t = forward_fft(&w, &random_field(&grid, 4), &small_setup(5).with_spin_angles(2)).unwrap();
    let back = CoefficientField::<f64>::from_csv(&t.to_csv()).unwrap();
    assert_eq!(back.data(), t.data());
    assert_eq!(back.to_csv(), t.to_csv());
}
