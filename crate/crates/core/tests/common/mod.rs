//! Reference computations shared by the integration tests.

#![allow(dead_code)]

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn bessel_j0_y0(x: f64) -> (f64, f64) {
    let q = x * x / 4.0;
    let (mut term, mut j0, mut ysum, mut harm) = (1.0, 1.0, 0.0, 0.0);
    for m in 1..80 {
        let mf = m as f64;
        term *= -q / (mf * mf);
        harm += 1.0 / mf;
        j0 += term;
        ysum -= term * harm;
    }
    let y0 = 2.0 / std::f64::consts::PI * (((x / 2.0).ln() + EULER_GAMMA) * j0 + ysum);
    (j0, y0)
}

pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    assert!(fa * f(b) < 0.0);
    let sa = fa < 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (f(m) < 0.0) == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// First Dirichlet eigenvalue of the annulus `1 < r < 2` from the Bessel cross product.
pub fn annulus_dirichlet() -> f64 {
    let x = bisect(
        |x| {
            let (j1, y1) = bessel_j0_y0(x);
            let (j2, y2) = bessel_j0_y0(2.0 * x);
            j1 * y2 - j2 * y1
        },
        2.5,
        3.5,
    );
    x * x
}

