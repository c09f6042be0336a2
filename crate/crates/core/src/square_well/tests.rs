use std::f64::consts::PI;

use approx::{assert_abs_diff_eq, assert_relative_eq};

use super::*;
use crate::dynamics::{apply_hamiltonian, FreeSpace, NonlinearitySpec};

fn unit_grid(n: usize) -> SpatialGrid {
    SpatialGrid::new(0.0, 1.0, n).unwrap()
}

#[test]
fn linear_levels() {
    let (psi, e1) = linear_eigenstate(1, 1.0, unit_grid(1024), 1.0, 1.0).unwrap();
    assert_abs_diff_eq!(e1, PI * PI / 2.0, epsilon = 1e-14);
    assert_abs_diff_eq!(linear_energy(2, 1.0, 1.0, 1.0), 4.0 * e1, epsilon = 1e-12);
    assert_abs_diff_eq!(psi.norm().unwrap(), 1.0, epsilon = 1e-8);
    assert!(linear_eigenstate(0, 1.0, unit_grid(64), 1.0, 1.0).is_err());
}

#[test]
fn nu_root_examples() {
    assert_eq!(solve_nu(0.0, 1.0, 1.0, 1, 1.0).unwrap(), 0.0);
    let nu = solve_nu(0.25, 1.0, 1.0, 1, 1.0).unwrap();
    let first = nu_first_order(0.25, 1.0, 1.0, 1, 1.0);
    assert_abs_diff_eq!(first, 0.0507, epsilon = 1e-4);
    assert!((nu / first - 1.0).abs() < 0.05);
    for kappa in [0.01, 0.25, 0.5, 10.0] {
        let nu = solve_nu(kappa, 1.0, 1.0, 1, 1.0).unwrap();
        let lhs = EllipticParams::new(nu).unwrap().quantization_lhs();
        assert!((lhs - kappa / 4.0).abs() < 1e-12, "κ = {kappa}");
        assert!(nu < 1.0);
    }
    assert!(solve_nu(-0.1, 1.0, 1.0, 1, 1.0).is_err());
    assert!(solve_nu(1e6, 1.0, 1.0, 1, 1.0).is_err());
}

#[test]
fn nu_is_monotone() {
    let mut prev = 0.0;
    for i in 1..40 {
        let nu = solve_nu(0.25 * i as f64, 1.0, 1.0, 1, 1.0).unwrap();
        assert!(nu > prev);
        prev = nu;
    }
    let mut prev = 0.0;
    for i in 1..40 {
        let nu = solve_nu(0.5, 0.1 * i as f64, 1.0, 1, 1.0).unwrap();
        assert!(nu > prev);
        prev = nu;
    }
}

#[test]
fn stationary_state_linear_limit_and_walls() {
    let grid = unit_grid(1024);
    let (lin, _) = linear_eigenstate(1, 1.0, grid, 1.0, 1.0).unwrap();
    let near = stationary_state(1, 1.0, 1e-4, grid, 1.0, 1.0).unwrap();
    assert!(near.l2_distance(&lin).unwrap() < 1e-3);
    assert_eq!(stationary_state(1, 1.0, 0.0, grid, 1.0, 1.0).unwrap(), lin);

    let params = EllipticParams::new(0.3).unwrap();
    let amp = stationary_amplitude(1.0, 0.3).unwrap();
    assert_eq!(stationary_profile(1, 1.0, &params, amp, 0.0), 0.0);
    assert_abs_diff_eq!(stationary_profile(1, 1.0, &params, amp, 1.0), 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(stationary_profile(2, 1.0, &params, amp, 0.5), 0.0, epsilon = 1e-14);

    let psi = stationary_state(1, 1.0, 0.3, grid, 1.0, 1.0).unwrap();
    assert_abs_diff_eq!(psi.norm().unwrap(), 1.0, epsilon = 1e-12);
    // a grid that cuts off part of the box cannot be normalized honestly
    assert!(stationary_state(1, 1.0, 0.3, SpatialGrid::new(0.0, 0.5, 256).unwrap(), 1.0, 1.0).is_err());
}

#[test]
fn stationary_state_solves_the_static_equation() {
    // n = 1, κ = 0.5, λ = 1 on the odd-extended period [−1, 1)
    let kappa = 0.5;
    let sol = BoxEigenSolution::exact(kappa, 1.0, 1, 1.0, 1.0).unwrap();
    let grid = SpatialGrid::new(-1.0, 1.0, 512).unwrap();
    let psi = stationary_state_extended(1, 1.0, sol.nu, grid, 1.0, 1.0).unwrap();
    let h = apply_hamiltonian(&psi, &FreeSpace, 0.0, &NonlinearitySpec::cubic(kappa).unwrap()).unwrap();
    let mu_psi = psi.scaled(Complex64::new(sol.mu, 0.0));
    let rel = h.l2_distance(&mu_psi).unwrap() / mu_psi.norm().unwrap().sqrt();
    assert!(rel < 1e-4, "relative residual {rel}");
    // pointwise, away from the nodes
    for (j, x) in grid.points().enumerate() {
        if (x.abs() - 0.5).abs() < 0.4 {
            let r = (h.amplitudes()[j] - mu_psi.amplitudes()[j]).norm() / mu_psi.amplitudes()[j].norm();
            assert!(r < 1e-4, "x = {x}: {r}");
        }
    }
}

#[test]
fn excited_level_is_stationary_too() {
    let kappa = 2.0;
    let sol = BoxEigenSolution::exact(kappa, 1.5, 2, 1.0, 1.0).unwrap();
    let grid = SpatialGrid::new(-1.5, 1.5, 1024).unwrap();
    let psi = stationary_state_extended(2, 1.5, sol.nu, grid, 1.0, 1.0).unwrap();
    let h = apply_hamiltonian(&psi, &FreeSpace, 0.0, &NonlinearitySpec::cubic(kappa).unwrap()).unwrap();
    let mu_psi = psi.scaled(Complex64::new(sol.mu, 0.0));
    assert!(h.l2_distance(&mu_psi).unwrap() / mu_psi.norm().unwrap().sqrt() < 1e-4);
}

#[test]
fn chemical_potential_examples() {
    assert_abs_diff_eq!(
        chemical_potential(3, 2.0, 0.0, 1.0, 1.0).unwrap(),
        linear_energy(3, 2.0, 1.0, 1.0),
        epsilon = 1e-12
    );
    for kappa in [0.1, 0.05, 0.01] {
        let nu = solve_nu(kappa, 1.0, 1.0, 1, 1.0).unwrap();
        let exact = chemical_potential(1, 1.0, nu, 1.0, 1.0).unwrap();
        let pert = chemical_potential_perturbative(1, 1.0, kappa, 1.0, 1.0);
        // fitted: |μ − μ_pert|/κ² ≈ 0.0190 (mpmath)
        assert!((exact - pert).abs() / (kappa * kappa) < 0.02);
        assert!(exact > linear_energy(1, 1.0, 1.0, 1.0));
    }
}

#[test]
fn momentum_closed_form() {
    assert_abs_diff_eq!(p2_exact(1.0, 1e-6, 1.0).unwrap(), PI * PI, epsilon = 1e-8);
    assert_eq!(p2_exact(2.0, 0.0, 3.0).unwrap(), 9.0 * PI * PI / 4.0);
    for nu in [0.01, 0.05, 0.1] {
        let series = PI * PI + PI * PI * nu * nu / 32.0;
        // fitted remainder / ν³ ≈ 0.27–0.29 (mpmath)
        assert!((p2_exact(1.0, nu, 1.0).unwrap() - series).abs() < 0.3 * nu.powi(3));
    }
}

#[test]
fn momentum_closed_form_matches_spectral_quadrature() {
    for (nu, hbar, lambda) in [(0.05, 1.0, 1.0), (0.4, 0.7, 1.3), (0.9, 1.0, 1.0)] {
        let grid = SpatialGrid::new(-lambda, lambda, 2048).unwrap();
        let ext = stationary_state_extended(1, lambda, nu, grid, 1.0, hbar).unwrap();
        let half = ext.scaled(Complex64::new(0.5f64.sqrt(), 0.0));
        let spectral = half.moment_p2().unwrap().value;
        assert_relative_eq!(spectral, p2_exact(lambda, nu, hbar).unwrap(), max_relative = 1e-4);
    }
}

#[test]
fn exact_moments_agree_with_grid_sums() {
    let (kappa, lambda) = (3.0, 1.4);
    let m = moments_exact(kappa, lambda, 1.0, 1.0).unwrap();
    let nu = solve_nu(kappa, lambda, 1.0, 1, 1.0).unwrap();
    let psi = stationary_state(1, lambda, nu, SpatialGrid::new(0.0, lambda, 4096).unwrap(), 1.0, 1.0).unwrap();
    assert_relative_eq!(m.x2, psi.moment_x(2).unwrap(), max_relative = 1e-8);
    assert_relative_eq!(m.x4, psi.moment_x(4).unwrap(), max_relative = 1e-8);
}

#[test]
fn perturbative_moments() {
    let lin = moments_linear(1.0, 1.0);
    assert_eq!(moments_perturbative(0.0, 1.0, 1.0, 1.0), lin);
    let kappa = 0.02;
    let pert = moments_perturbative(kappa, 1.0, 1.0, 1.0);
    let exact = moments_exact(kappa, 1.0, 1.0, 1.0).unwrap();
    assert_relative_eq!(pert.x2, exact.x2, max_relative = 5e-3);
    assert_relative_eq!(pert.x4, exact.x4, max_relative = 5e-3);
    assert_relative_eq!(pert.p2, exact.p2, max_relative = 5e-3);
    assert!(pert.x2 >= lin.x2 && pert.x4 >= lin.x4 && pert.p2 >= lin.p2);
}

#[test]
fn perturbative_moments_scale_with_box_length() {
    // first-order slopes at λ = 2 and ħ = 0.8, where the printed λ³/ħ⁴ forms would be off
    let (kappa, lambda, hbar) = (1e-4, 2.0, 0.8);
    let exact = moments_exact(kappa, lambda, 1.0, hbar).unwrap();
    let pert = moments_perturbative(kappa, lambda, 1.0, hbar);
    let lin = moments_linear(lambda, hbar);
    assert_relative_eq!((exact.x2 - lin.x2) / kappa, (pert.x2 - lin.x2) / kappa, max_relative = 1e-2);
    assert_relative_eq!((exact.x4 - lin.x4) / kappa, (pert.x4 - lin.x4) / kappa, max_relative = 1e-2);
    let kappa = 1e-2;
    let exact = moments_exact(kappa, lambda, 1.0, hbar).unwrap();
    let pert = moments_perturbative(kappa, lambda, 1.0, hbar);
    assert_relative_eq!(exact.p2 - lin.p2, pert.p2 - lin.p2, max_relative = 2e-2);
}

#[test]
fn perturbative_normalization() {
    assert_eq!(normalization_perturbative(2.0, 0.0), 1.0);
    assert_abs_diff_eq!(normalization_perturbative(1.0, 0.05), 1.409_794_144_990_679, epsilon = 1e-12);
    assert!(normalization_perturbative(1.0, 0.06) < normalization_perturbative(1.0, 0.05));
    // quadrature of the expanded state, A⁻² = ∫(sin q x − ν/4 (qx − sin cos) cos)²
    for nu in [0.01, 0.02, 0.05] {
        let q = 2.0 * crate::special::ellip_k(nu).unwrap();
        let integral = crate::quad::integrate(
            |x| {
                let (s, c) = (q * x).sin_cos();
                (s - 0.25 * nu * (q * x - s * c) * c).powi(2)
            },
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        let a = integral.sqrt().recip();
        // fitted |A_quad − A_pert|/ν² ≈ 0.070 (mpmath)
        assert!((a - normalization_perturbative(1.0, nu)).abs() < 0.08 * nu * nu);
    }
}

#[test]
fn box_speed_limit_examples() {
    let t = 0.0;
    let terms = qsl_box(0.0, 1.0, 1.0, t, 1.0, 1.0, Regime::Exact).unwrap();
    let eps = PI * PI / 2.0;
    let lin = moments_linear(1.0, 1.0);
    let direct = eps * eps + eps * lin.x2 + 0.25 * lin.x4 + lin.p2;
    assert_relative_eq!(terms.total(), direct, max_relative = 1e-12);
    let pert = qsl_box(0.0, 1.0, 1.0, t, 1.0, 1.0, Regime::Perturbative).unwrap();
    assert_relative_eq!(pert.total(), direct, max_relative = 1e-12);

    let still = qsl_box(0.3, 1.0, 0.0, 0.7, 1.0, 1.0, Regime::Exact).unwrap();
    assert_eq!(still.total(), still.chemical);

    for regime in [Regime::Exact, Regime::Perturbative] {
        for t in [0.0, 0.5, 1.0] {
            let v: Vec<f64> =
                [0.0, 0.25, 0.5].iter().map(|&k| qsl_box(k, 1.0, 1.0, t, 1.0, 1.0, regime).unwrap().total()).collect();
            assert!(v[0] < v[1] && v[1] < v[2], "{regime} t = {t}: {v:?}");
        }
    }
    assert!(qsl_box(0.1, 1.0, -1.0, 2.0, 1.0, 1.0, Regime::Exact).is_err());
}

#[test]
fn box_regimes_differ_at_second_order() {
    let diff = |k: f64| {
        qsl_box(k, 1.0, 1.0, 0.5, 1.0, 1.0, Regime::Exact).unwrap().total()
            - qsl_box(k, 1.0, 1.0, 0.5, 1.0, 1.0, Regime::Perturbative).unwrap().total()
    };
    let (d1, d2, d3) = (diff(1e-2), diff(5e-3), diff(2.5e-3));
    for ratio in [d1 / d2, d2 / d3] {
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}
