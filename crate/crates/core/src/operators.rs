//! Material law and the Fourier-reduced bilinear forms of the Laplace
//! operator and of the Lamé system on the meridian domain.
//!
//! Fields live on the `(r, tau)` half-plane. For the Lamé system the
//! single-harmonic ansatz is `u_r, u_tau ∝ cos kφ`, `u_φ ∝ sin kφ`, in the
//! orthonormal cylindrical frame. The angular integrals are common to both
//! sides of the eigenproblem and are dropped.

use crate::error::{Error, Result};
use crate::geometry::{ShellClass, ShellTag};
use crate::scalar::Real;

/// Young modulus `E` (Pa), Poisson ratio `nu`, density `rho` (kg/m³).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams<T> {
    pub young: T,
    pub nu: T,
    pub rho: T,
}

impl<T: Real> MaterialParams<T> {
    pub fn new(young: T, nu: T, rho: T) -> Result<Self> {
        if nu >= T::lit(0.5) {
            return Err(Error::PoissonLocking { nu: nu.to_f64_lossy() });
        }
        if !(young > T::zero() && young.is_finite()) {
            return Err(Error::InvalidMaterial(format!("E must be positive, got {young}")));
        }
        if !(nu >= T::zero()) {
            return Err(Error::InvalidMaterial(format!("nu must lie in [0, 0.5), got {nu}")));
        }
        if !(rho > T::zero() && rho.is_finite()) {
            return Err(Error::InvalidMaterial(format!("rho must be positive, got {rho}")));
        }
        Ok(Self { young, nu, rho })
    }

    /// Steel constants used for the cylinder and barrel experiments.
    pub fn steel() -> Self {
        Self { young: T::lit(2.069e11), nu: T::lit(0.3), rho: T::lit(7868.0) }
    }

    /// `E / rho`, the unit in which shell eigenvalues are naturally expressed.
    pub fn wave_speed_sq(&self) -> T {
        self.young / self.rho
    }

    pub fn scaled(&self, young_factor: T, rho_factor: T) -> Self {
        Self { young: self.young * young_factor, nu: self.nu, rho: self.rho * rho_factor }
    }
}

/// Isotropic rank-4 material tensor, stored through its two Lamé coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicTensor<T> {
    pub lambda: T,
    pub mu: T,
}

impl<T: Real> IsotropicTensor<T> {
    /// `A^{ijlm} = lambda δ^{ij}δ^{lm} + mu (δ^{il}δ^{jm} + δ^{im}δ^{jl})`.
    pub fn component(&self, i: usize, j: usize, l: usize, m: usize) -> T {
        let d = |a: usize, b: usize| if a == b { T::one() } else { T::zero() };
        self.lambda * d(i, j) * d(l, m) + self.mu * (d(i, l) * d(j, m) + d(i, m) * d(j, l))
    }

    /// Voigt matrix for strains ordered `[rr, φφ, ττ, rτ, rφ, φτ]` with
    /// engineering shears.
    pub fn voigt(&self) -> [[T; 6]; 6] {
        let mut d = [[T::zero(); 6]; 6];
        for (i, row) in d.iter_mut().enumerate().take(3) {
            for (j, v) in row.iter_mut().enumerate().take(3) {
                *v = if i == j { self.lambda + T::lit(2.0) * self.mu } else { self.lambda };
            }
        }
        for i in 3..6 {
            d[i][i] = self.mu;
        }
        d
    }
}

pub fn elasticity_tensor<T: Real>(m: &MaterialParams<T>) -> Result<IsotropicTensor<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    if m.nu >= T::lit(0.5) {
        return Err(Error::PoissonLocking { nu: m.nu.to_f64_lossy() });
    }
    let lambda = m.young * m.nu / ((one + m.nu) * (one - two * m.nu));
    let mu = m.young / (two * (one + m.nu));
    Ok(IsotropicTensor { lambda, mu })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Laplace,
    Lame,
}

impl OperatorKind {
    pub fn components(self) -> usize {
        match self {
            OperatorKind::Laplace => 1,
            OperatorKind::Lame => 3,
        }
    }
}

/// Value and first derivatives of one scalar field at a point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FieldJet<T> {
    pub value: T,
    pub d_r: T,
    pub d_tau: T,
}

/// Physical-component strains `[e_rr, e_φφ, e_ττ, 2e_rτ, 2e_rφ, 2e_φτ]` of the
/// mode-`k` amplitudes `(u_r, u_φ, u_tau)` at radius `r`.
pub fn lame_strains<T: Real>(k: T, r: T, u: &[FieldJet<T>; 3]) -> [T; 6] {
    let [ur, uphi, utau] = u;
    [
        ur.d_r,
        (ur.value + k * uphi.value) / r,
        utau.d_tau,
        ur.d_tau + utau.d_r,
        uphi.d_r - uphi.value / r - k * ur.value / r,
        uphi.d_tau - k * utau.value / r,
    ]
}

/// Bilinear form of one Fourier mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeForm<T> {
    pub operator: OperatorKind,
    pub k: u32,
    tensor: Option<IsotropicTensor<T>>,
    rho: T,
}

/// Weak form of `-Δ^(k)`: stiffness `r ∇u·∇v + (k²/r) u v`, mass `r u v`.
pub fn laplace_form<T: Real>(k: u32) -> ModeForm<T> {
    ModeForm { operator: OperatorKind::Laplace, k, tensor: None, rho: T::one() }
}

/// Fourier-reduced linear elasticity: stiffness `r εᵀ D ε`, mass `rho r u·v`.
pub fn lame_form<T: Real>(k: u32, m: &MaterialParams<T>) -> Result<ModeForm<T>> {
    Ok(ModeForm {
        operator: OperatorKind::Lame,
        k,
        tensor: Some(elasticity_tensor(m)?),
        rho: m.rho,
    })
}

impl<T: Real> ModeForm<T> {
    pub fn components(&self) -> usize {
        self.operator.components()
    }

    pub fn tensor(&self) -> Option<&IsotropicTensor<T>> {
        self.tensor.as_ref()
    }

    /// Factor multiplying `r u·v` in the mass integrand.
    pub fn density(&self) -> T {
        self.rho
    }

    pub fn with_k(&self, k: u32) -> Self {
        Self { k, ..*self }
    }

    fn kf(&self) -> T {
        T::from_u32(self.k).expect("k fits")
    }

    /// Coefficient of `u v` in the Laplace stiffness integrand (`k²/r`).
    pub fn laplace_zeroth_order(&self, r: T) -> T {
        let k = self.kf();
        k * k / r
    }

    /// Stiffness integrand `a(u, v)` including the radial weight.
    pub fn stiffness_density(&self, r: T, u: &[FieldJet<T>], v: &[FieldJet<T>]) -> T {
        match self.operator {
            OperatorKind::Laplace => {
                let (u, v) = (&u[0], &v[0]);
                r * (u.d_r * v.d_r + u.d_tau * v.d_tau) + self.laplace_zeroth_order(r) * u.value * v.value
            }
            OperatorKind::Lame => {
                let d = self.tensor.expect("Lamé form carries a tensor").voigt();
                let k = self.kf();
                let eu = lame_strains(k, r, &[u[0], u[1], u[2]]);
                let ev = lame_strains(k, r, &[v[0], v[1], v[2]]);
                let mut acc = T::zero();
                for i in 0..6 {
                    for j in 0..6 {
                        acc += ev[i] * d[i][j] * eu[j];
                    }
                }
                r * acc
            }
        }
    }

    /// Mass integrand including the radial weight.
    pub fn mass_density(&self, r: T, u: &[T], v: &[T]) -> T {
        let dot: T = u.iter().zip(v).map(|(&a, &b)| a * b).sum();
        self.rho * r * dot
    }
}

/// Limit of the membrane dispersion values `μ^(k)` as `k → ∞`, in (rad/s)².
pub fn membrane_limit<T: Real>(class: &ShellClass<T>, m: &MaterialParams<T>) -> Result<T> {
    match class.tag {
        ShellTag::Cylinder | ShellTag::Cone | ShellTag::Hyperbolic => Ok(T::zero()),
        ShellTag::EllipticAiry | ShellTag::EllipticGaussian | ShellTag::EllipticOther => class
            .h0_min(m)
            .ok_or(Error::NotApplicable("elliptic class without an H0 minimum")),
        ShellTag::Plate => Err(Error::NotApplicable("plates have no membrane limit")),
        ShellTag::Degenerate => Err(Error::UnsupportedClass(class.tag.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::MeridianProfile;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn steel() -> MaterialParams<f64> {
        MaterialParams::steel()
    }

    #[test]
    fn tensor_examples() {
        let t = elasticity_tensor(&MaterialParams::new(2.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(t.lambda, 0.0);
        for (i, j, l, m) in [(0, 0, 0, 0), (0, 1, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)] {
            let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
            assert_eq!(t.component(i, j, l, m), d(i, l) * d(j, m) + d(i, m) * d(j, l));
        }
        let t = elasticity_tensor(&steel()).unwrap();
        assert_relative_eq!(t.lambda, 1.19365e11, max_relative = 1e-5);
        assert!(matches!(MaterialParams::new(1.0, 0.5, 1.0), Err(Error::PoissonLocking { .. })));
        let bad = MaterialParams { young: 1.0, nu: 0.5, rho: 1.0 };
        assert!(matches!(elasticity_tensor(&bad), Err(Error::PoissonLocking { .. })));
        assert!(MaterialParams::new(-1.0, 0.3, 1.0).is_err());
        assert!(MaterialParams::new(1.0, 0.3, 0.0).is_err());
    }

    fn jet(v: f64, dr: f64, dt: f64) -> FieldJet<f64> {
        FieldJet { value: v, d_r: dr, d_tau: dt }
    }

    #[test]
    fn laplace_zeroth_order_scales_with_k_squared() {
        assert_eq!(laplace_form::<f64>(0).laplace_zeroth_order(1.3), 0.0);
        let a = laplace_form::<f64>(1).laplace_zeroth_order(1.3);
        let b = laplace_form::<f64>(2).laplace_zeroth_order(1.3);
        assert_relative_eq!(b / a, 4.0);
    }

    #[test]
    fn rigid_motions_have_zero_strain() {
        // axial translation, k = 0
        let e = lame_strains(0.0, 1.2, &[jet(0.0, 0.0, 0.0), jet(0.0, 0.0, 0.0), jet(1.0, 0.0, 0.0)]);
        assert!(e.iter().all(|&x| x == 0.0));
        // rotation about the axis, k = 0: u_φ = r
        let r = 1.7;
        let e = lame_strains(0.0, r, &[jet(0.0, 0.0, 0.0), jet(r, 1.0, 0.0), jet(0.0, 0.0, 0.0)]);
        assert!(e.iter().all(|&x| x.abs() < 1e-15));
        // transverse translation, k = 1
        let e = lame_strains(1.0, r, &[jet(1.0, 0.0, 0.0), jet(-1.0, 0.0, 0.0), jet(0.0, 0.0, 0.0)]);
        assert!(e.iter().all(|&x| x.abs() < 1e-15), "{e:?}");
        // rotation about a transverse axis, k = 1: u = ω × x with x = (r cosφ, r sinφ, τ)
        // gives u_r = τ cosφ, u_φ = -τ sinφ, u_τ = -r cosφ
        let tau = 0.4;
        let e = lame_strains(
            1.0,
            r,
            &[jet(tau, 0.0, 1.0), jet(-tau, 0.0, -1.0), jet(-r, -1.0, 0.0)],
        );
        assert!(e.iter().all(|&x| x.abs() < 1e-15), "{e:?}");
    }

    #[test]
    fn k_zero_block_decouples() {
        let f = lame_form(0, &steel()).unwrap();
        let mer = [jet(0.3, -1.2, 0.7), jet(0.0, 0.0, 0.0), jet(-0.4, 0.9, 2.0)];
        let tor = [jet(0.0, 0.0, 0.0), jet(0.8, 0.5, -0.3), jet(0.0, 0.0, 0.0)];
        assert_eq!(f.stiffness_density(1.1, &mer, &tor), 0.0);
        assert_eq!(f.stiffness_density(1.1, &tor, &mer), 0.0);
    }

    #[test]
    fn membrane_limits() {
        let m = MaterialParams::new(1.0, 0.3, 1.0).unwrap();
        let c = MeridianProfile::cylinder(1.0, 2.0).unwrap().classify();
        assert_eq!(membrane_limit(&c, &m).unwrap(), 0.0);
        let b = MeridianProfile::parametrized(vec![1.0, 0.0, -0.5], (-0.892668, 0.892668))
            .unwrap()
            .classify();
        assert_relative_eq!(membrane_limit(&b, &m).unwrap(), 0.17237, epsilon = 1e-5);
        let p = MeridianProfile::ring_plate(1.0, 2.0).unwrap().classify();
        assert!(matches!(membrane_limit(&p, &m), Err(Error::NotApplicable(_))));
    }

    fn arb_jets() -> impl Strategy<Value = [FieldJet<f64>; 3]> {
        proptest::array::uniform9(-2.0f64..2.0).prop_map(|a| {
            [jet(a[0], a[1], a[2]), jet(a[3], a[4], a[5]), jet(a[6], a[7], a[8])]
        })
    }

    proptest! {
        #[test]
        fn lame_form_is_symmetric_and_nonnegative(u in arb_jets(), v in arb_jets(), k in 0u32..20, r in 0.5f64..3.0) {
            let f = lame_form(k, &steel()).unwrap();
            let a = f.stiffness_density(r, &u, &v);
            let b = f.stiffness_density(r, &v, &u);
            prop_assert!((a - b).abs() <= 1e-12 * (a.abs() + b.abs() + 1e-300) + 1e-300);
            prop_assert!(f.stiffness_density(r, &u, &u) >= -1e-6);
        }

        #[test]
        fn negating_k_and_u_phi_preserves_energy(u in arb_jets(), k in 0u32..20, r in 0.5f64..3.0) {
            let t = elasticity_tensor(&steel()).unwrap().voigt();
            let energy = |k: f64, u: &[FieldJet<f64>; 3]| {
                let e = lame_strains(k, r, u);
                let mut acc = 0.0;
                for i in 0..6 { for j in 0..6 { acc += e[i] * t[i][j] * e[j]; } }
                acc
            };
            let mut w = u;
            w[1] = jet(-u[1].value, -u[1].d_r, -u[1].d_tau);
            let a = energy(k as f64, &u);
            let b = energy(-(k as f64), &w);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn laplace_rayleigh_increases_with_k(u in proptest::array::uniform3(-2.0f64..2.0), r in 0.5f64..3.0, k in 0u32..30) {
            prop_assume!(u[0].abs() > 1e-3);
            let j = [jet(u[0], u[1], u[2])];
            let a = laplace_form::<f64>(k).stiffness_density(r, &j, &j);
            let b = laplace_form::<f64>(k + 1).stiffness_density(r, &j, &j);
            prop_assert!(b > a);
        }
    }
}
