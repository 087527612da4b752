//! Meridian profiles of axisymmetric midsurfaces, their curvature functionals
//! and the classification of the resulting shells.
//!
//! A profile is either a built-in cylinder or ring plate, or a polynomial
//! graph `r = f(z)` over a closed interval. Polynomials keep every derivative
//! exact, so the sign of `f''` and the minimizers of `H0` are found by root
//! isolation rather than sampling.

use crate::error::{Error, Result};
use crate::operators::MaterialParams;
use crate::poly::Polynomial;
use crate::scalar::Real;

/// Relative tolerance for declaring two `H0` values equal minimizers.
const TIE_RTOL: f64 = 1e-10;
/// Fraction of the smallest curvature radius allowed as half-thickness.
const INJECTIVITY_SAFETY: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind<T> {
    Cylinder { radius: T, length: T },
    RingPlate { inner: T, outer: T },
    Parametrized { coeffs: Vec<T>, interval: (T, T) },
}

/// Generating curve of the midsurface.
#[derive(Debug, Clone, PartialEq)]
pub struct MeridianProfile<T> {
    kind: ProfileKind<T>,
    f: Polynomial<T>,
    df: Polynomial<T>,
    d2f: Polynomial<T>,
    d3f: Polynomial<T>,
    lo: T,
    hi: T,
}

/// `(f, f', f'', s)` at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileValues<T> {
    pub f: T,
    pub df: T,
    pub d2f: T,
    pub s: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShellTag {
    Plate,
    Cylinder,
    Cone,
    EllipticAiry,
    EllipticGaussian,
    EllipticOther,
    Hyperbolic,
    Degenerate,
}

impl ShellTag {
    pub fn is_elliptic(self) -> bool {
        matches!(
            self,
            ShellTag::EllipticAiry | ShellTag::EllipticGaussian | ShellTag::EllipticOther
        )
    }
}

impl std::fmt::Display for ShellTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Result of [`MeridianProfile::classify`].
///
/// `curvature_sq_min` is the minimum over the closed interval of
/// `f''^2 / (1 + f'^2)^3`, i.e. `H0` divided by `E/rho`; multiply by the
/// material factor with [`ShellClass::h0_min`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShellClass<T> {
    pub tag: ShellTag,
    pub minimizers: Vec<T>,
    pub curvature_sq_min: Option<T>,
}

impl<T: Real> ShellClass<T> {
    pub fn h0_min(&self, material: &MaterialParams<T>) -> Option<T> {
        self.curvature_sq_min.map(|c| c * material.wave_speed_sq())
    }
}

impl<T: Real> MeridianProfile<T> {
    pub fn cylinder(radius: T, length: T) -> Result<Self> {
        if !(radius > T::zero() && length > T::zero()) {
            return Err(Error::InvalidGeometry(format!(
                "cylinder needs R > 0 and L > 0, got R={radius}, L={length}"
            )));
        }
        let half = length / T::lit(2.0);
        Ok(Self::build(
            ProfileKind::Cylinder { radius, length },
            Polynomial::constant(radius),
            -half,
            half,
        ))
    }

    pub fn ring_plate(inner: T, outer: T) -> Result<Self> {
        if !(inner > T::zero() && outer > inner) {
            return Err(Error::InvalidGeometry(format!(
                "ring plate needs 0 < R1 < R2, got R1={inner}, R2={outer}"
            )));
        }
        // The parameter is the radius itself; `f` is unused for plates.
        Ok(Self::build(
            ProfileKind::RingPlate { inner, outer },
            Polynomial::new(vec![T::zero(), T::one()]),
            inner,
            outer,
        ))
    }

    /// Polynomial graph `r = f(z)`, coefficients in ascending powers.
    pub fn parametrized(coeffs: Vec<T>, interval: (T, T)) -> Result<Self> {
        let (lo, hi) = interval;
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonSmooth("coefficients must be finite and non-empty".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::NonSmooth(format!("interval ({lo}, {hi}) is empty or unbounded")));
        }
        let f = Polynomial::new(coeffs.clone());
        if !f.real_roots_in(lo, hi).is_empty() || f.eval(lo) <= T::zero() {
            return Err(Error::InvalidGeometry(
                "f must stay positive on the closed interval (profile touches the axis)".into(),
            ));
        }
        Ok(Self::build(ProfileKind::Parametrized { coeffs, interval }, f, lo, hi))
    }

    fn build(kind: ProfileKind<T>, f: Polynomial<T>, lo: T, hi: T) -> Self {
        let df = f.derivative();
        let d2f = df.derivative();
        let d3f = d2f.derivative();
        Self { kind, f, df, d2f, d3f, lo, hi }
    }

    pub fn kind(&self) -> &ProfileKind<T> {
        &self.kind
    }

    pub fn is_plate(&self) -> bool {
        matches!(self.kind, ProfileKind::RingPlate { .. })
    }

    /// Closed parameter interval: `z` for graphs, the radius for ring plates.
    pub fn parameter_interval(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn meridian_length_param(&self) -> T {
        self.hi - self.lo
    }

    fn check(&self, z: T) -> Result<()> {
        let tol = T::epsilon() * T::lit(64.0) * (T::one() + self.lo.abs().max(self.hi.abs()));
        if z < self.lo - tol || z > self.hi + tol || !z.is_finite() {
            return Err(Error::OutOfInterval {
                z: z.to_f64_lossy(),
                lo: self.lo.to_f64_lossy(),
                hi: self.hi.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// Exact `(f, f', f'', s)` with `s = sqrt(1 + f'^2)`.
    pub fn eval(&self, z: T) -> Result<ProfileValues<T>> {
        if self.is_plate() {
            return Err(Error::NotAGraph("a ring plate is not a graph over the axis"));
        }
        self.check(z)?;
        Ok(self.values_unchecked(z))
    }

    fn values_unchecked(&self, z: T) -> ProfileValues<T> {
        let df = self.df.eval(z);
        ProfileValues {
            f: self.f.eval(z),
            df,
            d2f: self.d2f.eval(z),
            s: (T::one() + df * df).sqrt(),
        }
    }

    /// Point `(r, tau)` of the meridian domain at parameter `t` and normal offset `x3`.
    pub fn meridian_point(&self, t: T, x3: T) -> (T, T) {
        if self.is_plate() {
            return (t, x3);
        }
        let v = self.values_unchecked(t);
        (v.f + x3 / v.s, t - x3 * v.df / v.s)
    }

    /// Cartesian point of the shell at `(z, phi, x3)`; `eps` is the half-thickness
    /// the caller intends to use and is checked against the injectivity bound.
    pub fn embed(&self, z: T, phi: T, x3: T, eps: T) -> Result<[T; 3]> {
        self.check(z)?;
        let bound = self.injectivity_bound();
        if !(eps > T::zero() && eps < bound) || x3.abs() > eps {
            return Err(Error::InvalidThickness {
                eps: eps.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
            });
        }
        let (r, tau) = self.meridian_point(z, x3);
        Ok([r * phi.cos(), r * phi.sin(), tau])
    }

    /// Signed meridian curvature `f'' / s^3` (zero for plates).
    pub fn meridian_curvature(&self, t: T) -> T {
        if self.is_plate() {
            return T::zero();
        }
        let v = self.values_unchecked(t);
        v.d2f / (v.s * v.s * v.s)
    }

    /// Largest admissible half-thickness: `0.9 / max(|f''|/s^3, 1/(f s))`.
    pub fn injectivity_bound(&self) -> T {
        if self.is_plate() {
            return T::infinity();
        }
        let (lo, hi) = (self.lo, self.hi);
        // critical points of f''^2/s^6 and of f^2 s^2
        let mut cands = vec![lo, hi];
        cands.extend(self.d2f.mul(&self.h0_critical_poly()).real_roots_in(lo, hi));
        let one = Polynomial::constant(T::one());
        let inner = one.add(&self.df.mul(&self.df)).add(&self.f.mul(&self.d2f));
        cands.extend(self.df.mul(&inner).real_roots_in(lo, hi));
        let kmax = cands.into_iter().fold(T::zero(), |m, z| {
            let v = self.values_unchecked(z);
            let km = v.d2f.abs() / (v.s * v.s * v.s);
            let kp = T::one() / (v.f * v.s);
            m.max(km).max(kp)
        });
        T::lit(INJECTIVITY_SAFETY) / kmax
    }

    /// `f''' (1 + f'^2) - 3 f' f''^2`: its roots together with those of `f''`
    /// are the critical points of `H0`.
    fn h0_critical_poly(&self) -> Polynomial<T> {
        let one = Polynomial::constant(T::one());
        let a = self.d3f.mul(&one.add(&self.df.mul(&self.df)));
        let b = self.df.mul(&self.d2f).mul(&self.d2f).scale(T::lit(-3.0));
        a.add(&b)
    }

    fn curvature_sq(&self, z: T) -> T {
        let v = self.values_unchecked(z);
        let s2 = v.s * v.s;
        v.d2f * v.d2f / (s2 * s2 * s2)
    }

    /// `H0 = (E/rho) f''^2 / (1 + f'^2)^3`.
    pub fn h0(&self, z: T, m: &MaterialParams<T>) -> Result<T> {
        if self.is_plate() {
            self.check(z)?;
            return Ok(T::zero());
        }
        self.check(z)?;
        Ok(m.wave_speed_sq() * self.curvature_sq(z))
    }

    /// `dH0/dz = (E/rho) (2 f'' f''' s^2 - 6 f' f''^3) / s^8`.
    pub fn dh0_dz(&self, z: T, m: &MaterialParams<T>) -> Result<T> {
        if self.is_plate() {
            self.check(z)?;
            return Ok(T::zero());
        }
        self.check(z)?;
        let v = self.values_unchecked(z);
        let d3 = self.d3f.eval(z);
        let s2 = v.s * v.s;
        let s8 = s2 * s2 * s2 * s2;
        let num = T::lit(2.0) * v.d2f * d3 * s2 - T::lit(6.0) * v.df * v.d2f * v.d2f * v.d2f;
        Ok(m.wave_speed_sq() * num / s8)
    }

    /// `g = -(2E/rho)(f f''/s^6 + f^2 f''^2/s^8)` and `B0 = (E/rho)/(3(1-nu^2) f^4)`.
    pub fn g_b0(&self, z: T, m: &MaterialParams<T>) -> Result<(T, T)> {
        let v = self.eval(z)?;
        let c = m.wave_speed_sq();
        let s2 = v.s * v.s;
        let s6 = s2 * s2 * s2;
        let s8 = s6 * s2;
        let g = -T::lit(2.0) * c * (v.f * v.d2f / s6 + v.f * v.f * v.d2f * v.d2f / s8);
        let f4 = v.f * v.f * v.f * v.f;
        let b0 = c / (T::lit(3.0) * (T::one() - m.nu * m.nu) * f4);
        Ok((g, b0))
    }

    /// Classify the shell from the sign of `f''` and the location of the
    /// minimum of `H0` on the closed interval.
    pub fn classify(&self) -> ShellClass<T> {
        match self.kind {
            ProfileKind::RingPlate { .. } => {
                return ShellClass {
                    tag: ShellTag::Plate,
                    minimizers: Vec::new(),
                    curvature_sq_min: Some(T::zero()),
                }
            }
            ProfileKind::Cylinder { .. } => {
                return ShellClass {
                    tag: ShellTag::Cylinder,
                    minimizers: Vec::new(),
                    curvature_sq_min: Some(T::zero()),
                }
            }
            ProfileKind::Parametrized { .. } => {}
        }
        let flat = |tag| ShellClass { tag, minimizers: Vec::new(), curvature_sq_min: Some(T::zero()) };
        match self.f.degree() {
            0 => return flat(ShellTag::Cylinder),
            1 => return flat(ShellTag::Cone),
            _ => {}
        }
        let (lo, hi) = (self.lo, self.hi);
        if !self.d2f.real_roots_in(lo, hi).is_empty() {
            return ShellClass { tag: ShellTag::Degenerate, minimizers: Vec::new(), curvature_sq_min: None };
        }
        if self.d2f.eval(lo) > T::zero() {
            return ShellClass { tag: ShellTag::Hyperbolic, minimizers: Vec::new(), curvature_sq_min: None };
        }

        let mut cands = vec![lo, hi];
        cands.extend(
            self.h0_critical_poly()
                .real_roots_in(lo, hi)
                .into_iter()
                .filter(|&z| z > lo && z < hi),
        );
        let vals: Vec<(T, T)> = cands.iter().map(|&z| (z, self.curvature_sq(z))).collect();
        let hmin = vals.iter().fold(T::infinity(), |m, &(_, h)| m.min(h));
        let tol = T::lit(TIE_RTOL) * hmin.abs().max(T::min_positive_value());
        let mut minimizers: Vec<T> = vals
            .iter()
            .filter(|&&(_, h)| (h - hmin).abs() <= tol)
            .map(|&(z, _)| z)
            .collect();
        minimizers.sort_by(|a, b| a.partial_cmp(b).expect("finite abscissae"));
        let on_boundary = |z: T| z == lo || z == hi;
        let tag = if minimizers.iter().all(|&z| on_boundary(z)) {
            ShellTag::EllipticAiry
        } else if minimizers.iter().all(|&z| !on_boundary(z)) {
            ShellTag::EllipticGaussian
        } else {
            ShellTag::EllipticOther
        };
        ShellClass { tag, minimizers, curvature_sq_min: Some(hmin) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const Z0: f64 = 0.892668;

    fn barrel() -> MeridianProfile<f64> {
        MeridianProfile::parametrized(vec![1.0, 0.0, -0.5], (-Z0, Z0)).unwrap()
    }

    fn unit_material() -> MaterialParams<f64> {
        MaterialParams::new(1.0, 0.3, 1.0).unwrap()
    }

    #[test]
    fn cylinder_values_are_constant() {
        let c = MeridianProfile::cylinder(1.0, 2.0).unwrap();
        for z in [-1.0, 0.0, 0.3, 1.0] {
            let v = c.eval(z).unwrap();
            assert_eq!((v.f, v.df, v.d2f, v.s), (1.0, 0.0, 0.0, 1.0));
        }
        assert!(matches!(c.eval(1.5), Err(Error::OutOfInterval { .. })));
    }

    #[test]
    fn barrel_values() {
        let b = barrel();
        let v = b.eval(0.0).unwrap();
        assert_eq!((v.f, v.df, v.d2f, v.s), (1.0, 0.0, -1.0, 1.0));
        let v = b.eval(Z0).unwrap();
        assert_relative_eq!(v.f, 0.601572, epsilon = 1e-6);
        assert_relative_eq!(v.df, -0.892668, epsilon = 1e-12);
        assert_relative_eq!(v.s * v.s, 1.796856, epsilon = 1e-6);
    }

    #[test]
    fn embed_examples() {
        let b = barrel();
        let p = b.embed(0.0, 0.0, 0.0, 0.05).unwrap();
        assert_eq!(p, [1.0, 0.0, 0.0]);
        let p = b.embed(0.0, 0.0, 0.05, 0.05).unwrap();
        assert_relative_eq!(p[0], 1.05, epsilon = 1e-15);
        assert_eq!(p[1], 0.0);
        let p = b.embed(0.5, std::f64::consts::FRAC_PI_2, 0.0, 0.05).unwrap();
        assert!(p[0].abs() < 1e-15);
        assert_relative_eq!(p[1], 0.875, epsilon = 1e-15);
        assert_relative_eq!(p[2], 0.5, epsilon = 1e-15);
        assert!(matches!(b.embed(0.0, 0.0, 0.0, 0.95), Err(Error::InvalidThickness { .. })));
    }

    #[test]
    fn injectivity_bound_cylinder() {
        let c = MeridianProfile::cylinder(2.0, 1.0).unwrap();
        assert_relative_eq!(c.injectivity_bound(), 1.8, epsilon = 1e-14);
        // barrel: meridian curvature max 1 at z=0, azimuthal 1/(f s) max at the ends
        let b = barrel();
        let v = b.eval(Z0).unwrap();
        let expected = 0.9 / (1.0f64).max(1.0 / (v.f * v.s));
        assert_relative_eq!(b.injectivity_bound(), expected, epsilon = 1e-12);
    }

    #[test]
    fn h0_examples() {
        let m = unit_material();
        let c = MeridianProfile::cylinder(1.0, 2.0).unwrap();
        assert_eq!(c.h0(0.2, &m).unwrap(), 0.0);
        let b = barrel();
        assert_eq!(b.h0(0.0, &m).unwrap(), 1.0);
        assert_relative_eq!(b.h0(Z0, &m).unwrap(), 0.17237, epsilon = 1e-5);
        // material scaling
        let m2 = MaterialParams::new(2.069e11, 0.3, 7868.0).unwrap();
        assert_relative_eq!(b.h0(0.0, &m2).unwrap(), 2.069e11 / 7868.0, max_relative = 1e-15);
    }

    #[test]
    fn dh0_matches_closed_form() {
        let m = unit_material();
        let b = barrel();
        for z in [-0.8, -0.1, 0.0, 0.4, Z0] {
            let exact = -6.0 * z / (1.0 + z * z).powi(4);
            assert_relative_eq!(b.dh0_dz(z, &m).unwrap(), exact, epsilon = 1e-14);
        }
    }

    #[test]
    fn g_b0_examples() {
        let m = unit_material();
        let c = MeridianProfile::cylinder(1.0, 2.0).unwrap();
        let (g, b0) = c.g_b0(0.0, &m).unwrap();
        assert_eq!(g, 0.0);
        assert_relative_eq!(b0, 1.0 / (3.0 * 0.91), epsilon = 1e-15);
        let b = barrel();
        let (g, b0) = b.g_b0(Z0, &m).unwrap();
        assert_relative_eq!(g, 0.13795, epsilon = 1e-5);
        assert_relative_eq!(b0, 2.7970, epsilon = 2e-4);
        let (g, _) = b.g_b0(0.0, &m).unwrap();
        assert_eq!(g, 0.0);
    }

    #[test]
    fn classification() {
        let c = MeridianProfile::cylinder(1.0, 2.0).unwrap().classify();
        assert_eq!(c.tag, ShellTag::Cylinder);
        let b = barrel().classify();
        assert_eq!(b.tag, ShellTag::EllipticAiry);
        assert_eq!(b.minimizers, vec![-Z0, Z0]);
        assert_relative_eq!(b.curvature_sq_min.unwrap(), 0.17237, epsilon = 1e-5);
        let d = MeridianProfile::parametrized(vec![1.0, 0.0, 0.0, 0.0, -1.0], (-0.5, 0.5))
            .unwrap()
            .classify();
        assert_eq!(d.tag, ShellTag::Degenerate);
        let cone = MeridianProfile::parametrized(vec![1.0, 0.2], (0.0, 1.0)).unwrap().classify();
        assert_eq!(cone.tag, ShellTag::Cone);
        let cyl = MeridianProfile::parametrized(vec![1.5], (0.0, 1.0)).unwrap().classify();
        assert_eq!(cyl.tag, ShellTag::Cylinder);
        let hyp = MeridianProfile::parametrized(vec![1.0, 0.0, 0.5], (-0.5, 0.5)).unwrap().classify();
        assert_eq!(hyp.tag, ShellTag::Hyperbolic);
        let plate = MeridianProfile::ring_plate(1.0, 2.0).unwrap().classify();
        assert_eq!(plate.tag, ShellTag::Plate);
    }

    #[test]
    fn elliptic_minimum_matches_brute_force() {
        // f'' = z - 1 < 0 on the interval
        let p = MeridianProfile::parametrized(vec![2.0, 0.0, -0.5, 1.0 / 6.0], (-0.9, 0.9)).unwrap();
        let c = p.classify();
        assert!(c.tag.is_elliptic());
        // brute-force check of the reported minimum
        let m = unit_material();
        let brute = (0..=20000)
            .map(|i| -0.9 + 1.8 * i as f64 / 20000.0)
            .map(|z| p.h0(z, &m).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(c.curvature_sq_min.unwrap() <= brute + 1e-12);
        assert!((c.curvature_sq_min.unwrap() - brute).abs() < 1e-8);
    }

    #[test]
    fn gaussian_barrel_has_interior_minimizer() {
        // f'' = -(1 + 3 z^2): |f''| grows faster than s^3 near the middle
        let p = MeridianProfile::<f64>::parametrized(vec![2.0, 0.0, -0.5, 0.0, -0.25], (-0.4, 0.4)).unwrap();
        let c = p.classify();
        assert_eq!(c.tag, ShellTag::EllipticGaussian);
        assert_eq!(c.minimizers.len(), 1);
        assert!(c.minimizers[0].abs() < 1e-8);
        assert_relative_eq!(c.curvature_sq_min.unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn invalid_profiles() {
        assert!(MeridianProfile::parametrized(vec![0.1, -1.0], (0.0, 1.0)).is_err());
        assert!(MeridianProfile::<f64>::parametrized(vec![1.0], (1.0, 1.0)).is_err());
        assert!(MeridianProfile::ring_plate(2.0, 1.0).is_err());
        assert!(MeridianProfile::cylinder(-1.0, 1.0).is_err());
        assert!(matches!(
            MeridianProfile::ring_plate(1.0, 2.0).unwrap().eval(1.5),
            Err(Error::NotAGraph(_))
        ));
    }

    #[test]
    fn works_in_single_precision() {
        let b = MeridianProfile::<f32>::parametrized(vec![1.0, 0.0, -0.5], (-0.892668, 0.892668)).unwrap();
        let c = b.classify();
        assert_eq!(c.tag, ShellTag::EllipticAiry);
        assert!((c.curvature_sq_min.unwrap() - 0.17237).abs() < 1e-4);
    }
}
