//! Special constants used by the asymptotic laws.

use crate::scalar::Real;

/// Airy function `Ai(x)` from its Maclaurin series. Accurate for `|x| ≲ 5`,
/// which covers the first zeros.
pub fn airy_ai<T: Real>(x: T) -> T {
    let (f, g) = airy_series(x);
    let (c1, c2) = airy_origin::<T>();
    c1 * f - c2 * g
}

/// `Ai(0)` and `-Ai'(0)`.
fn airy_origin<T: Real>() -> (T, T) {
    let c1 = 1.0 / (3f64.powf(2.0 / 3.0) * libm::tgamma(2.0 / 3.0));
    let c2 = 1.0 / (3f64.powf(1.0 / 3.0) * libm::tgamma(1.0 / 3.0));
    (T::lit(c1), T::lit(c2))
}

/// The two power series solving `y'' = x y` with `(y, y')(0) = (1, 0)` and `(0, 1)`.
fn airy_series<T: Real>(x: T) -> (T, T) {
    let x3 = x * x * x;
    let (mut a, mut b) = (T::one(), x);
    let (mut f, mut g) = (a, b);
    for k in 0..200 {
        let k3 = T::from_int(3 * k);
        a *= x3 / ((k3 + T::lit(2.0)) * (k3 + T::lit(3.0)));
        b *= x3 / ((k3 + T::lit(3.0)) * (k3 + T::lit(4.0)));
        f += a;
        g += b;
        if a.abs() <= T::epsilon() * f.abs() && b.abs() <= T::epsilon() * g.abs().max(T::min_positive_value()) {
            break;
        }
    }
    (f, g)
}

/// First positive root of `z ↦ Ai(-z)`.
pub fn airy_first_zero<T: Real>() -> T {
    bisect(|z| airy_ai(-z), T::lit(2.0), T::lit(3.0))
}

/// First positive root `x` of `cos x cosh x = 1`.
pub fn beam_characteristic_root<T: Real>() -> T {
    // cos x - 1/cosh x has the same roots and stays O(1)
    let pi = T::PI();
    bisect(
        |x: T| x.cos() - T::one() / x.cosh(),
        T::lit(1.5) * pi,
        T::lit(2.0) * pi,
    )
}

/// First eigenvalue of `∂⁴` on `(0, 1)` with clamped ends, `x⁴`.
pub fn beam_bilap_constant<T: Real>() -> T {
    let x = beam_characteristic_root::<T>();
    x * x * x * x
}

fn bisect<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T) -> T {
    let mut fa = f(a);
    debug_assert!(fa * f(b) <= T::zero());
    for _ in 0..200 {
        let m = (a + b) / T::lit(2.0);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) / T::lit(2.0)
}
