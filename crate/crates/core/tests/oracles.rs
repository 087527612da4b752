//! Library results against independent reference computations.

use axishell::band::SymBandMatrix;
use axishell::eigen::{solve_band, EigenOptions};
use axishell::special::airy_ai;
use axishell::*;

mod common;

use common::{annulus_dirichlet, bessel_j0_y0};

#[test]
fn bessel_series_spot_values() {
    let (j, y) = bessel_j0_y0(1.0);
    assert!((j - 0.765_197_686_557_966_6).abs() < 1e-14);
    assert!((y - 0.088_256_964_215_676_96).abs() < 1e-13);
}

#[test]
fn laplace_ring_plate_matches_annulus() {
    let exact = annulus_dirichlet();
    assert!((exact - 9.753).abs() < 1e-3, "{exact}");
    let plate = Profile::ring_plate(1.0, 2.0).unwrap();
    for h in [0.2, 0.02] {
        let spec = MeshSpec { graded: false, ..MeshSpec::default() };
        let mesh = spec.build(&plate, h / 2.0).unwrap();
        let sys = assemble(&laplace_form(0), &mesh, 6).unwrap();
        let l = smallest_eigenpairs(&sys, 1, 1e-10).unwrap().eigenvalues[0];
        assert!(((l - exact) / exact).abs() < 1e-6, "h={h}: {l} vs {exact}");
    }
}

#[test]
fn airy_zero_against_ode_integration() {
    // y'' = x y from x = 0 toward negative x with the Ai initial data
    let (ai0, dai0) = (0.355_028_053_887_817_2, -0.258_819_403_792_806_8);
    let rk4 = |x: f64, y: [f64; 2], h: f64| -> [f64; 2] {
        let f = |x: f64, y: [f64; 2]| [y[1], x * y[0]];
        let k1 = f(x, y);
        let k2 = f(x + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
        let k3 = f(x + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
        let k4 = f(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    };
    let h = -1e-4;
    let (mut x, mut y) = (0.0, [ai0, dai0]);
    while y[0] > 0.0 {
        let next = rk4(x, y, h);
        if next[0] <= 0.0 {
            // Newton steps from the last positive point, one short RK4 step each
            let mut dx = -y[0] / y[1];
            for _ in 0..3 {
                let z = rk4(x, y, dx);
                dx -= z[0] / z[1];
            }
            x += dx;
            break;
        }
        x += h;
        y = next;
    }
    let root: f64 = airy_first_zero();
    assert!((root + x).abs() < 1e-9, "{root} vs {}", -x);
    assert!(airy_ai(-root).abs() < 1e-9);
}

/// Clamped beam `w'''' = μ w` on (0, 1) with Hermite cubics.
fn hermite_beam(n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let ke = [
        [12.0, 6.0 * h, -12.0, 6.0 * h],
        [6.0 * h, 4.0 * h * h, -6.0 * h, 2.0 * h * h],
        [-12.0, -6.0 * h, 12.0, -6.0 * h],
        [6.0 * h, 2.0 * h * h, -6.0 * h, 4.0 * h * h],
    ];
    let me = [
        [156.0, 22.0 * h, 54.0, -13.0 * h],
        [22.0 * h, 4.0 * h * h, 13.0 * h, -3.0 * h * h],
        [54.0, 13.0 * h, 156.0, -22.0 * h],
        [-13.0 * h, -3.0 * h * h, -22.0 * h, 4.0 * h * h],
    ];
    let nd = 2 * (n + 1);
    let mut k = SymBandMatrix::zeros(nd, 3);
    let mut m = SymBandMatrix::zeros(nd, 3);
    for e in 0..n {
        for i in 0..4 {
            for j in 0..=i {
                k.add(2 * e + i, 2 * e + j, ke[i][j] / (h * h * h));
                m.add(2 * e + i, 2 * e + j, me[i][j] * h / 420.0);
            }
        }
    }
    let keep: Vec<usize> = (2..nd - 2).collect();
    let r = solve_band(&k.restrict(&keep), &m.restrict(&keep), &EigenOptions::new(1, 1e-12)).unwrap();
    r.eigenvalues[0]
}

#[test]
fn beam_constant_against_hermite_fem() {
    let fem = hermite_beam(64);
    let mu: f64 = beam_bilap_constant();
    assert!(((fem - mu) / mu).abs() < 1e-7, "{fem} vs {mu}");
    assert!((mu - 500.5639).abs() < 1e-3);
}

/// Clamped `Δ_k²` on (r1, r2) by central differences of `Δ_k` on `n` cells,
/// energy `Σ r (Δ_k w)² h`, ghost nodes enforcing `w' = 0`.
fn fd_radial_biharmonic(r1: f64, r2: f64, k: u32, n: usize) -> f64 {
    let h = (r2 - r1) / n as f64;
    let kk = (k * k) as f64;
    let unknowns = n - 1; // w_1 .. w_{n-1}
    let mut a = SymBandMatrix::zeros(unknowns, 2);
    let mut m = SymBandMatrix::zeros(unknowns, 0);
    for i in 0..=n {
        let r = r1 + h * i as f64;
        // coefficients of (Δ_k w)_i on w_{i-1}, w_i, w_{i+1}
        let c = [1.0 / (h * h) - 1.0 / (2.0 * h * r), -2.0 / (h * h) - kk / (r * r), 1.0 / (h * h) + 1.0 / (2.0 * h * r)];
        let mut row: Vec<(usize, f64)> = Vec::new();
        let mut put = |node: isize, v: f64| {
            // ghosts mirror the first interior node, boundary nodes vanish
            let node = if node < 0 { -node } else if node > n as isize { 2 * n as isize - node } else { node };
            if node >= 1 && node < n as isize {
                row.push((node as usize - 1, v));
            }
        };
        put(i as isize - 1, c[0]);
        put(i as isize, c[1]);
        put(i as isize + 1, c[2]);
        let wt = if i == 0 || i == n { 0.5 } else { 1.0 } * r * h;
        for &(p, vp) in &row {
            for &(q, vq) in &row {
                if q <= p {
                    a.add(p, q, wt * vp * vq);
                }
            }
        }
        if i >= 1 && i < n {
            m.add(i - 1, i - 1, r * h);
        }
    }
    solve_band(&a, &m, &EigenOptions::new(1, 1e-12)).unwrap().eigenvalues[0]
}

#[test]
fn plate_bending_against_finite_differences() {
    let plate = Profile::ring_plate(1.0, 2.0).unwrap();
    let unit = Material::new(1.0, 0.3, 1.0).unwrap();
    let scale = 1.0 / (3.0 * (1.0 - 0.09));
    for k in [0, 2] {
        let fem = plate_bending_mode(&plate, &unit, k).unwrap() / scale;
        let (c, f) = (fd_radial_biharmonic(1.0, 2.0, k, 200), fd_radial_biharmonic(1.0, 2.0, k, 400));
        let fd = (4.0 * f - c) / 3.0;
        assert!(((fem - fd) / fd).abs() < 1e-4, "k={k}: {fem} vs {fd} (raw {c}, {f})");
    }
}
