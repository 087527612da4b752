//! Closed-form predictions of the first mode `(k(ε), λ(ε))` as ε → 0.
//!
//! * cylinders: `k ≈ γ ε^{-1/4}`, `λ ≈ a₁ ε`;
//! * Airy barrels: `k ≈ γ ε^{-3/7}`, `λ ≈ a₀ + a₁ ε^{2/7}`;
//! * ring plates (Lamé): `λ ≈ λ_B ε²` with `λ_B` the clamped bending eigenvalue.

use crate::band::SymBandMatrix;
use crate::basis::gauss_legendre;
use crate::eigen::{solve_band, EigenOptions};
use crate::error::{Error, Result};
use crate::geometry::{MeridianProfile, ProfileKind, ShellClass, ShellTag};
use crate::operators::MaterialParams;
use crate::scalar::Real;
use crate::special::{airy_first_zero, beam_bilap_constant};

/// Fourier modes scanned by [`plate_bending_eigenvalue`].
pub const PLATE_K_RANGE: u32 = 8;
const PLATE_ELEMENTS: usize = 256;

/// `x ≈ coefficient · ε^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLaw<T> {
    pub gamma: T,
    pub beta: T,
}

/// `λ ≈ a₀ + a₁ ε^δ`; `a₁` and `δ` are absent when only the limit is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenLaw<T> {
    pub a0: T,
    pub a1: Option<T>,
    pub delta: Option<T>,
}

/// Intermediate quantities of a prediction, kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PredictionConstants<T> {
    pub mu_bilap: Option<T>,
    pub z_airy: Option<T>,
    pub z0: Option<T>,
    pub g: Option<T>,
    pub b: Option<T>,
    pub c: Option<T>,
    pub plate_mode: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPrediction<T> {
    pub class: ShellClass<T>,
    pub k_law: Option<ModeLaw<T>>,
    pub lambda_law: EigenLaw<T>,
    pub coefficients_unavailable: bool,
    pub constants: PredictionConstants<T>,
}

impl<T: Real> AsymptoticPrediction<T> {
    pub fn k_at(&self, eps: T) -> Option<T> {
        self.k_law.map(|l| l.gamma * eps.powf(-l.beta))
    }

    pub fn lambda_at(&self, eps: T) -> Option<T> {
        let l = self.lambda_law;
        Some(l.a0 + l.a1? * eps.powf(l.delta?))
    }

    /// `λ − a₀ − a₁ ε^δ`.
    pub fn residual(&self, eps: T, lambda: T) -> Option<T> {
        self.lambda_at(eps).map(|p| lambda - p)
    }
}

pub fn cylinder_prediction<T: Real>(radius: T, length: T, m: &MaterialParams<T>) -> Result<AsymptoticPrediction<T>> {
    if !(radius > T::zero() && length > T::zero()) {
        return Err(Error::InvalidGeometry(format!(
            "cylinder needs R, L > 0 (got {radius}, {length})"
        )));
    }
    let mu = beam_bilap_constant::<T>();
    let three_nu = T::lit(3.0) * (T::one() - m.nu * m.nu);
    let r2 = radius * radius;
    let l2 = length * length;
    let gamma = (r2 * r2 * r2 / (l2 * l2) * three_nu * mu).powf(T::lit(0.125));
    let a1 = T::lit(2.0) * m.wave_speed_sq() / (radius * l2) * (mu / three_nu).sqrt();
    Ok(AsymptoticPrediction {
        class: MeridianProfile::cylinder(radius, length)?.classify(),
        k_law: Some(ModeLaw { gamma, beta: T::lit(0.25) }),
        lambda_law: EigenLaw { a0: T::zero(), a1: Some(a1), delta: Some(T::one()) },
        coefficients_unavailable: false,
        constants: PredictionConstants { mu_bilap: Some(mu), ..Default::default() },
    })
}

pub fn airy_barrel_prediction<T: Real>(p: &MeridianProfile<T>, m: &MaterialParams<T>) -> Result<AsymptoticPrediction<T>> {
    let class = p.classify();
    if class.tag != ShellTag::EllipticAiry {
        return Err(Error::UnsupportedClass(format!("Airy law needs an EllipticAiry profile, got {}", class.tag)));
    }
    let z0 = class.minimizers[0];
    let a0 = p.h0(z0, m)?;
    let (g, b) = p.g_b0(z0, m)?;
    if !(g > T::zero()) {
        return Err(Error::NegativeG(g.to_f64_lossy()));
    }
    let za = airy_first_zero::<T>();
    let dh = p.dh0_dz(z0, m)?.abs();
    let c = za * g.cbrt() * dh.powf(T::lit(2.0) / T::lit(3.0));
    let six = T::lit(6.0);
    let gamma = (c / (six * b)).powf(T::lit(3.0) / T::lit(14.0));
    let c2 = c * c;
    let a1 = (six * b * c2 * c2 * c2).powf(T::one() / T::lit(7.0)) * T::lit(7.0) / six;
    Ok(AsymptoticPrediction {
        class,
        k_law: Some(ModeLaw { gamma, beta: T::lit(3.0) / T::lit(7.0) }),
        lambda_law: EigenLaw { a0, a1: Some(a1), delta: Some(T::lit(2.0) / T::lit(7.0)) },
        coefficients_unavailable: false,
        constants: PredictionConstants {
            z_airy: Some(za),
            z0: Some(z0),
            g: Some(g),
            b: Some(b),
            c: Some(c),
            ..Default::default()
        },
    })
}

/// Clamped bending eigenvalue of the annulus restricted to Fourier mode `k`:
/// `E/(3(1−ν²)ρ)` times the first eigenvalue of `Δ_k²` with
/// `Δ_k w = w'' + w'/r − k² w/r²`.
pub fn plate_bending_mode<T: Real>(p: &MeridianProfile<T>, m: &MaterialParams<T>, k: u32) -> Result<T> {
    let (r1, r2) = match *p.kind() {
        ProfileKind::RingPlate { inner, outer } => (inner, outer),
        _ => return Err(Error::NotApplicable("plate bending needs a ring plate")),
    };
    let mu = radial_biharmonic(r1, r2, k, PLATE_ELEMENTS)?;
    Ok(m.wave_speed_sq() / (T::lit(3.0) * (T::one() - m.nu * m.nu)) * mu)
}

/// Minimum of [`plate_bending_mode`] over `k = 0..=PLATE_K_RANGE`, with its mode.
pub fn plate_bending_eigenvalue<T: Real>(p: &MeridianProfile<T>, m: &MaterialParams<T>) -> Result<(u32, T)> {
    let mut best = (0, T::infinity());
    for k in 0..=PLATE_K_RANGE {
        let l = plate_bending_mode(p, m, k)?;
        if l < best.1 {
            best = (k, l);
        }
    }
    Ok(best)
}

/// First eigenvalue of `Δ_k²` on `(r1, r2)` with `w = w' = 0` at both ends,
/// Hermite cubic elements.
fn radial_biharmonic<T: Real>(r1: T, r2: T, k: u32, n: usize) -> Result<T> {
    let (qx, qw) = gauss_legendre::<T>(6);
    let h = (r2 - r1) / T::from_int(n as i64);
    let kk = T::from_u32(k * k).expect("small k");
    let ndof = 2 * (n + 1);
    let mut kmat = SymBandMatrix::zeros(ndof, 3);
    let mut mmat = SymBandMatrix::zeros(ndof, 3);
    let half = T::lit(0.5);
    for e in 0..n {
        let a = r1 + h * T::from_int(e as i64);
        for (&x, &w) in qx.iter().zip(&qw) {
            let t = (x + T::one()) * half;
            let r = a + h * t;
            let jw = w * half * h * r;
            let (v, d1, d2) = hermite(t, h);
            let op: Vec<T> = (0..4).map(|i| d2[i] + d1[i] / r - kk * v[i] / (r * r)).collect();
            for i in 0..4 {
                for j in 0..=i {
                    let (gi, gj) = (2 * e + i, 2 * e + j);
                    kmat.add(gi, gj, jw * op[i] * op[j]);
                    mmat.add(gi, gj, jw * v[i] * v[j]);
                }
            }
        }
    }
    let keep: Vec<usize> = (2..ndof - 2).collect();
    let (kr, mr) = (kmat.restrict(&keep), mmat.restrict(&keep));
    let res = solve_band(&kr, &mr, &EigenOptions::new(1, T::lit(1e-10).max(T::epsilon() * T::lit(100.0))))?;
    Ok(res.eigenvalues[0])
}

/// Hermite cubic shape functions on `[0, 1]` mapped to an element of length
/// `h`, with physical first and second derivatives; order `(w_a, w'_a, w_b, w'_b)`.
fn hermite<T: Real>(t: T, h: T) -> ([T; 4], [T; 4], [T; 4]) {
    let (one, two, three, six) = (T::one(), T::lit(2.0), T::lit(3.0), T::lit(6.0));
    let t2 = t * t;
    let t3 = t2 * t;
    let v = [
        one - three * t2 + two * t3,
        h * (t - two * t2 + t3),
        three * t2 - two * t3,
        h * (t3 - t2),
    ];
    let d1 = [
        (six * t2 - six * t) / h,
        one - T::lit(4.0) * t + three * t2,
        (six * t - six * t2) / h,
        three * t2 - two * t,
    ];
    let d2 = [
        (T::lit(12.0) * t - six) / (h * h),
        (six * t - T::lit(4.0)) / h,
        (six - T::lit(12.0) * t) / (h * h),
        (six * t - two) / h,
    ];
    (v, d1, d2)
}

/// Route a profile to its asymptotic law.
pub fn predict<T: Real>(p: &MeridianProfile<T>, m: &MaterialParams<T>) -> Result<AsymptoticPrediction<T>> {
    let class = p.classify();
    match (class.tag, p.kind()) {
        (ShellTag::Cylinder, &ProfileKind::Cylinder { radius, length }) => cylinder_prediction(radius, length, m),
        (ShellTag::Cylinder, _) => {
            let (lo, hi) = p.parameter_interval();
            cylinder_prediction(p.eval(lo)?.f, hi - lo, m)
        }
        (ShellTag::EllipticAiry, _) => airy_barrel_prediction(p, m),
        (ShellTag::EllipticGaussian | ShellTag::EllipticOther, _) => {
            let a0 = class.h0_min(m).expect("elliptic shells carry a minimum");
            Ok(AsymptoticPrediction {
                class,
                k_law: None,
                lambda_law: EigenLaw { a0, a1: None, delta: None },
                coefficients_unavailable: true,
                constants: PredictionConstants::default(),
            })
        }
        (ShellTag::Plate, _) => {
            let (kb, lb) = plate_bending_eigenvalue(p, m)?;
            Ok(AsymptoticPrediction {
                class,
                k_law: None,
                lambda_law: EigenLaw { a0: T::zero(), a1: Some(lb), delta: Some(T::lit(2.0)) },
                coefficients_unavailable: false,
                constants: PredictionConstants { plate_mode: Some(kb), ..Default::default() },
            })
        }
        (tag, _) => Err(Error::UnsupportedClass(format!("no asymptotic law for {tag} shells"))),
    }
}
