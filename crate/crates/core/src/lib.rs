//! First eigenmodes of thin axisymmetric shells.
//!
//! The three-dimensional Lamé system (or the scalar Laplacian) on a shell of
//! half-thickness `ε` is reduced by a Fourier expansion in the azimuth to a
//! family of 2D problems on the meridian section, one per angular mode `k`.
//! Each is discretized with high-order quadrilateral elements on a mesh
//! graded toward the lateral boundary layers, and the smallest eigenvalue of
//! every mode gives the dispersion curve `k ↦ λ^(k)(ε)`. Its minimum
//! `(k(ε), λ(ε))` is compared with closed-form asymptotics for cylinders,
//! Airy barrels and plates.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix `f64`.
//!
//! ```
//! use axishell::{lame_form, assemble, smallest_eigenpairs, Material, MeshSpec, Profile};
//!
//! let profile = Profile::cylinder(1.0, 2.0).unwrap();
//! let steel = Material::steel();
//! let mesh = MeshSpec { n_thick: 1, n_merid: 4, geo_degree: 1, graded: false }
//!     .build(&profile, 0.05)
//!     .unwrap();
//! let sys = assemble(&lame_form(3, &steel).unwrap(), &mesh, 3).unwrap();
//! let first = smallest_eigenpairs(&sys, 1, 1e-9).unwrap();
//! assert!(first.eigenvalues[0] > 0.0);
//! ```

pub mod assembly;
pub mod asymptotics;
pub mod band;
pub mod basis;
pub mod dispersion;
pub mod eigen;
pub mod error;
pub mod geometry;
pub mod mesh;
pub mod operators;
pub mod poly;
pub mod scalar;
pub mod special;

pub use assembly::{assemble, AssembledSystem, DofMap, ModalOperator};
pub use asymptotics::{
    airy_barrel_prediction, cylinder_prediction, plate_bending_eigenvalue, plate_bending_mode, predict,
    AsymptoticPrediction, EigenLaw, ModeLaw, PredictionConstants,
};
pub use dispersion::{
    estimate_order, loglog_slope, sweep_k, sweep_thickness, CurvePoint, DispersionCurve, FirstMode, KPolicy,
    StopReason, SweepSettings, ThicknessSweep,
};
pub use eigen::{smallest_eigenpairs, smallest_eigenpairs_with, EigenOptions, EigenResult};
pub use error::{Error, Result};
pub use geometry::{MeridianProfile, ProfileKind, ShellClass, ShellTag};
pub use mesh::{build_uniform, refine_boundary_layers, BoundaryTag, MeridianMesh, MeshSpec};
pub use operators::{
    elasticity_tensor, lame_form, laplace_form, membrane_limit, IsotropicTensor, MaterialParams, ModeForm,
    OperatorKind,
};
pub use scalar::Real;
pub use special::{airy_first_zero, beam_bilap_constant};

pub type Profile = MeridianProfile<f64>;
pub type Material = MaterialParams<f64>;
pub type Class = ShellClass<f64>;
pub type Mesh = MeridianMesh<f64>;
pub type System = AssembledSystem<f64>;
pub type Eigenpairs = EigenResult<f64>;
pub type Curve = DispersionCurve<f64>;
pub type Sweep = ThicknessSweep<f64>;
pub type Settings = SweepSettings<f64>;
pub type Prediction = AsymptoticPrediction<f64>;
