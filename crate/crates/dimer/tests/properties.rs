//! Property tests for the spec-level invariants: Hamiltonian structure, the
//! spin-convention bridge, thermal-state stability, measure consistency,
//! duality, and solver residuals.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dimer::{
    chsh_parameter, compile_spec, concurrence_branches, concurrence_grid, concurrence_wootters,
    concurrence_x, couplings_from_spin_convention, critical_temperatures, dual_map, entangled_area,
    hamiltonian_matrix, linspace, linspace_open, negativity, partition_function, sample_class,
    thermal_state, thermal_state_oracle, torus_invariants, transition_curve, Category, DimerSpec,
    GeneralCouplings, PairCouplings, TorusInvariants,
};

type Matrix4c = Matrix4<Complex64>;
type Matrix2c = Matrix2<Complex64>;

fn cpx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_entry_diff(a: &Matrix4c, b: &Matrix4c) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Independent tensor-product construction of the spin-convention
/// Hamiltonian, h (sz1 + sz2) + dh (sz1 - sz2) + sum a_ij s_i s_j, s = sigma/2.
fn spin_hamiltonian_oracle(
    a_xx: f64,
    a_yy: f64,
    a_xy: f64,
    a_yx: f64,
    c_zz: f64,
    h: f64,
    dh: f64,
) -> Matrix4c {
    let o = cpx(0.0, 0.0);
    let sx = Matrix2c::new(o, cpx(0.5, 0.0), cpx(0.5, 0.0), o);
    let sy = Matrix2c::new(o, cpx(0.0, -0.5), cpx(0.0, 0.5), o);
    let sz = Matrix2c::new(cpx(0.5, 0.0), o, o, cpx(-0.5, 0.0));
    let id = Matrix2c::identity();
    let mut m = sz.kronecker(&id) * cpx(h + dh, 0.0) + id.kronecker(&sz) * cpx(h - dh, 0.0);
    m += sx.kronecker(&sx) * cpx(a_xx, 0.0);
    m += sy.kronecker(&sy) * cpx(a_yy, 0.0);
    m += sx.kronecker(&sy) * cpx(a_xy, 0.0);
    m += sy.kronecker(&sx) * cpx(a_yx, 0.0);
    m += sz.kronecker(&sz) * cpx(c_zz, 0.0);
    m
}

/// Single-qubit unitary from Euler-like angles.
fn qubit_unitary(theta: f64, phi: f64, lam: f64) -> Matrix2c {
    let (s, c) = (0.5 * theta).sin_cos();
    Matrix2c::new(
        cpx(c, 0.0),
        -Complex64::from_polar(s, lam),
        Complex64::from_polar(s, phi),
        Complex64::from_polar(c, phi + lam),
    )
}

fn random_couplings(rng: &mut ChaCha8Rng, scale: f64) -> GeneralCouplings {
    GeneralCouplings::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
    .unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng) -> DimerSpec {
    let couplings = PairCouplings {
        j: rng.gen_range(-2.0..2.0),
        d: rng.gen_range(-2.0..2.0),
        r: rng.gen_range(-2.0..2.0),
        k: rng.gen_range(-2.0..2.0),
        j_zz: rng.gen_range(-2.0..2.0),
    };
    let category = if rng.gen_bool(0.5) {
        Category::Symmetric
    } else {
        Category::Antisymmetric
    };
    DimerSpec::general(couplings, category, rng.gen_range(-2.0..2.0)).unwrap()
}

proptest! {
    #[test]
    fn hamiltonian_is_hermitian_and_traceless(
        j in -2.0..2.0f64, d in -2.0..2.0f64, r in -2.0..2.0f64, k in -2.0..2.0f64,
        j_zz in -2.0..2.0f64, omega in -2.0..2.0f64, delta in -2.0..2.0f64,
    ) {
        let g = GeneralCouplings::new(j, d, r, k, j_zz, omega, delta).unwrap();
        let h = hamiltonian_matrix(&g);
        for i in 0..4 {
            for l in 0..4 {
                prop_assert!((h[(i, l)] - h[(l, i)].conj()).norm() <= 1e-15);
            }
        }
        let trace: Complex64 = h.diagonal().iter().sum();
        prop_assert!(trace.norm() <= 1e-15);
    }

    #[test]
    fn hamiltonian_spectrum_is_block_energies(
        j in -2.0..2.0f64, d in -2.0..2.0f64, r in -2.0..2.0f64, k in -2.0..2.0f64,
        j_zz in -2.0..2.0f64, omega in -2.0..2.0f64, delta in -2.0..2.0f64,
    ) {
        let g = GeneralCouplings::new(j, d, r, k, j_zz, omega, delta).unwrap();
        let mut expected: Vec<f64> = dimer::block_energies(&g).to_vec();
        expected.sort_by(f64::total_cmp);
        let mut eig: Vec<f64> =
            hamiltonian_matrix(&g).symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(expected.iter()) {
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn spin_convention_bridge_matches_tensor_oracle(
        a_xx in -2.0..2.0f64, a_yy in -2.0..2.0f64, a_xy in -2.0..2.0f64,
        a_yx in -2.0..2.0f64, c_zz in -2.0..2.0f64, h in -2.0..2.0f64, dh in -2.0..2.0f64,
    ) {
        let g = couplings_from_spin_convention(a_xx, a_yy, a_xy, a_yx, c_zz, h, dh).unwrap();
        let direct = spin_hamiltonian_oracle(a_xx, a_yy, a_xy, a_yx, c_zz, h, dh);
        prop_assert!(max_entry_diff(&hamiltonian_matrix(&g), &direct) <= 1e-14);
    }

    #[test]
    fn thermal_state_stable_and_normalized(
        j in -10.0..10.0f64, d in -10.0..10.0f64, r in -10.0..10.0f64, k in -10.0..10.0f64,
        j_zz in -10.0..10.0f64, omega in -10.0..10.0f64, delta in -10.0..10.0f64,
        log_t in -13.8..0.0f64,
    ) {
        // T from e^-13.8 ~ 1e-6 up to 1.
        let g = GeneralCouplings::new(j, d, r, k, j_zz, omega, delta).unwrap();
        let x = thermal_state(&g, log_t.exp()).unwrap();
        let diag = x.diagonal();
        for p in diag {
            prop_assert!(p.is_finite() && p >= 0.0);
        }
        prop_assert!(x.rho14.norm().is_finite());
        prop_assert!(x.rho23.norm().is_finite());
        let sum: f64 = diag.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        // Positivity of the two 2x2 blocks.
        prop_assert!(x.rho14.norm() <= (x.rho11 * x.rho44).sqrt() + 1e-12);
        prop_assert!(x.rho23.norm() <= (x.rho22 * x.rho33).sqrt() + 1e-12);
        // Branch bounds: both at most 1/2, never both positive.
        let b = concurrence_branches(&x);
        prop_assert!(b.c1 <= 0.5 + 1e-12 && b.c2 <= 0.5 + 1e-12);
        prop_assert!(!(b.c1 > 1e-15 && b.c2 > 1e-15));
    }

    #[test]
    fn partition_matches_boltzmann_weight_sum(
        j in -2.0..2.0f64, d in -2.0..2.0f64, r in -2.0..2.0f64, k in -2.0..2.0f64,
        j_zz in -2.0..2.0f64, omega in -2.0..2.0f64, delta in -2.0..2.0f64,
        t in 0.05..50.0f64,
    ) {
        let g = GeneralCouplings::new(j, d, r, k, j_zz, omega, delta).unwrap();
        let z = partition_function(&g, t).unwrap();
        let direct: f64 = dimer::block_energies(&g).iter().map(|e| (-e / t).exp()).sum();
        prop_assert!((z - direct).abs() <= 1e-12 * z.max(1.0));
    }

    #[test]
    fn dual_map_involution_and_radii_swap(
        j in -2.0..2.0f64, d in -2.0..2.0f64, r in -2.0..2.0f64, k in -2.0..2.0f64,
        j_zz in -2.0..2.0f64, b in -2.0..2.0f64,
    ) {
        let s = DimerSpec::general(PairCouplings { j, d, r, k, j_zz }, Category::Symmetric, b)
            .unwrap();
        prop_assert_eq!(dual_map(&dual_map(&s)), s);
        let (i, id) = (torus_invariants(&s), torus_invariants(&dual_map(&s)));
        prop_assert_eq!(id.alpha, i.beta);
        prop_assert_eq!(id.beta, i.alpha);
        prop_assert_eq!(id.j_zz, -i.j_zz);
        prop_assert!(dimer::is_dual_pair(&s, &dual_map(&s), 1e-15));
    }
}

#[test]
fn oracle_states_are_x_sparse() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x_pattern = [
        (0usize, 0usize),
        (1, 1),
        (2, 2),
        (3, 3),
        (0, 3),
        (3, 0),
        (1, 2),
        (2, 1),
    ];
    let mut max_off: f64 = 0.0;
    for _ in 0..200 {
        let g = random_couplings(&mut rng, 2.0);
        let t = (rng.gen_range(1e-3f64.ln()..1e3f64.ln())).exp();
        let rho = thermal_state_oracle(&hamiltonian_matrix(&g), t).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if !x_pattern.contains(&(i, j)) {
                    max_off = max_off.max(rho[(i, j)].norm());
                }
            }
        }
    }
    assert!(max_off <= 1e-13, "max non-X entry {max_off:.3e}");
}

#[test]
fn ppt_consistency_and_measure_ranges() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let g = random_couplings(&mut rng, 2.0);
        let t = (rng.gen_range(1e-2f64.ln()..1e2f64.ln())).exp();
        let x = thermal_state(&g, t).unwrap();
        let rho = x.to_matrix();
        let c = concurrence_x(&x);
        let n = negativity(&rho).unwrap();
        let m = chsh_parameter(&rho).unwrap();
        assert!((0.0..=1.0 + 1e-12).contains(&c));
        assert!((0.0..=0.5 + 1e-12).contains(&n));
        assert!((-1e-12..=2.0 + 1e-12).contains(&m));
        // Entangled iff non-PPT, outside the margin band around zero.
        if c > 1e-9 {
            assert!(n > 1e-11, "C = {c:e} but N = {n:e}");
        } else if c == 0.0 {
            assert!(n <= 1e-11, "separable state with N = {n:e}");
        }
    }
}

#[test]
fn measures_are_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut max_dev: f64 = 0.0;
    for _ in 0..100 {
        let g = random_couplings(&mut rng, 2.0);
        let t = (rng.gen_range(0.05f64.ln()..10f64.ln())).exp();
        let rho = thermal_state(&g, t).unwrap().to_matrix();
        let u1 = qubit_unitary(
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let u2 = qubit_unitary(
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let u = u1.kronecker(&u2);
        let rotated = u * rho * u.adjoint();
        max_dev = max_dev
            .max(
                (concurrence_wootters(&rho).unwrap() - concurrence_wootters(&rotated).unwrap())
                    .abs(),
            )
            .max((negativity(&rho).unwrap() - negativity(&rotated).unwrap()).abs())
            .max((chsh_parameter(&rho).unwrap() - chsh_parameter(&rotated).unwrap()).abs());
    }
    assert!(max_dev <= 1e-10, "max deviation {max_dev:.3e}");
}

#[test]
fn class_members_share_concurrence_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let b_axis = linspace(0.0, 3.0, 50);
    let t_axis = linspace(0.05, 3.0, 50);
    for _ in 0..2 {
        let inv = TorusInvariants {
            alpha: rng.gen_range(0.0..2.0),
            beta: rng.gen_range(0.0..2.0),
            j_zz: rng.gen_range(-1.0..1.0),
            category: if rng.gen_bool(0.5) {
                Category::Symmetric
            } else {
                Category::Antisymmetric
            },
        };
        let members = sample_class(&inv, 3, rng.gen()).unwrap();
        let reference = concurrence_grid(&members[0], &b_axis, &t_axis).unwrap();
        for m in &members[1..] {
            let grid = concurrence_grid(m, &b_axis, &t_axis).unwrap();
            let mut max_dev: f64 = 0.0;
            for (ra, rb) in grid.values.iter().zip(reference.values.iter()) {
                for (a, b) in ra.iter().zip(rb.iter()) {
                    max_dev = max_dev.max((a - b).abs());
                }
            }
            assert!(max_dev <= 1e-12, "class members disagree by {max_dev:.3e}");
        }
    }
}

#[test]
fn transition_roots_have_straddling_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let tol = 1e-10;
    let mut roots_seen = 0;
    let mut specs = vec![
        DimerSpec::heisenberg(1.0, Category::Symmetric, 0.0).unwrap(),
        DimerSpec::xy(0.25, Category::Symmetric, 0.0).unwrap(),
    ];
    for _ in 0..6 {
        specs.push(random_spec(&mut rng));
    }
    for spec in &specs {
        for b in [0.0, 1.0] {
            let g = compile_spec(&spec.with_field(b));
            let gmax = |t: f64| {
                let br = concurrence_branches(&thermal_state(&g, t).unwrap());
                br.c1.max(br.c2)
            };
            for (tc, _) in critical_temperatures(spec, b, (0.05, 3.0), tol).unwrap() {
                let (lo, hi) = (gmax(tc - 5.0 * tol), gmax(tc + 5.0 * tol));
                assert!(
                    lo == 0.0 || hi == 0.0 || lo.signum() != hi.signum(),
                    "no straddle at Tc = {tc}: g = ({lo:e}, {hi:e})"
                );
                roots_seen += 1;
            }
        }
    }
    assert!(roots_seen > 10, "only {roots_seen} roots exercised");
}

#[test]
fn transition_curves_are_duality_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let tol = 1e-10;
    let b_axis = linspace(0.0, 3.0, 7);
    let mut specs = vec![DimerSpec::xy(0.5, Category::Symmetric, 0.0).unwrap()];
    for _ in 0..3 {
        specs.push(random_spec(&mut rng));
    }
    for spec in &specs {
        let a = transition_curve(spec, &b_axis, (0.05, 3.0), tol).unwrap();
        let b = transition_curve(&dual_map(spec), &b_axis, (0.05, 3.0), tol).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (p, q) in a.points.iter().zip(b.points.iter()) {
            assert_eq!(p.field, q.field);
            assert!((p.t_c - q.t_c).abs() <= 2.0 * tol);
        }
    }
}

#[test]
fn entangled_area_monotone_for_dual_xy_family() {
    // The dual images of the symmetric XY family (Ising limit included)
    // carry the same growing entanglement areas.
    let bg = linspace(0.0, 5.0, 100);
    let tg = linspace_open(0.0, 3.0, 100);
    let mut last = -1.0;
    for gamma in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let dual = dual_map(&DimerSpec::xy(gamma, Category::Symmetric, 0.0).unwrap());
        assert_eq!(dual.category, Category::Antisymmetric);
        let area = entangled_area(&concurrence_grid(&dual, &bg, &tg).unwrap(), 1e-12);
        assert!(
            area > last,
            "area {area} not above {last} at gamma = {gamma}"
        );
        last = area;
    }
}
