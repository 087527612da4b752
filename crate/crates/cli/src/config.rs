//! Experiment configuration: a TOML file with thickness entered as `h = 2ε`.

use std::path::PathBuf;

use axishell::{EigenOptions, KPolicy, Material, MeshSpec, OperatorKind, Profile, Settings};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Cylinder { radius: f64, length: f64 },
    RingPlate { inner: f64, outer: f64 },
    /// `r = Σ coeffs[i] z^i` on `interval`.
    Polynomial { coeffs: Vec<f64>, interval: [f64; 2] },
}

impl ProfileSpec {
    pub fn build(&self) -> axishell::Result<Profile> {
        match self {
            ProfileSpec::Cylinder { radius, length } => Profile::cylinder(*radius, *length),
            ProfileSpec::RingPlate { inner, outer } => Profile::ring_plate(*inner, *outer),
            ProfileSpec::Polynomial { coeffs, interval } => {
                Profile::parametrized(coeffs.clone(), (interval[0], interval[1]))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    #[serde(rename = "E")]
    pub young: f64,
    pub nu: f64,
    pub rho: f64,
}

impl Default for MaterialSpec {
    fn default() -> Self {
        let s = Material::steel();
        Self { young: s.young, nu: s.nu, rho: s.rho }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OperatorSpec {
    Laplace,
    #[default]
    Lame,
}

impl From<OperatorSpec> for OperatorKind {
    fn from(o: OperatorSpec) -> Self {
        match o {
            OperatorSpec::Laplace => OperatorKind::Laplace,
            OperatorSpec::Lame => OperatorKind::Lame,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    pub n_thick: usize,
    pub n_merid: usize,
    pub geo_degree: usize,
    pub graded: bool,
}

impl Default for MeshConfig {
    fn default() -> Self {
        let d = MeshSpec::default();
        Self { n_thick: d.n_thick, n_merid: d.n_merid, geo_degree: d.geo_degree, graded: d.graded }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KPolicyConfig {
    pub window: u32,
    pub cap: u32,
}

impl Default for KPolicyConfig {
    fn default() -> Self {
        let d = KPolicy::default();
        Self { window: d.window, cap: d.cap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenConfig {
    pub m: usize,
    pub tol: f64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self { m: 1, tol: axishell::eigen::DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

/// On-disk layout. Top-level scalars precede the tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    operator: OperatorSpec,
    /// Full thicknesses `h`.
    thicknesses: Vec<f64>,
    #[serde(default = "default_degree")]
    p: usize,
    profile: ProfileSpec,
    #[serde(default)]
    material: MaterialSpec,
    #[serde(default)]
    mesh: MeshConfig,
    #[serde(default)]
    k_policy: KPolicyConfig,
    #[serde(default)]
    eigen: EigenConfig,
    #[serde(default)]
    output: OutputConfig,
}

fn default_degree() -> usize {
    6
}

/// Validated experiment description; thicknesses are stored as half-thickness `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub profile: ProfileSpec,
    pub material: MaterialSpec,
    pub operator: OperatorSpec,
    pub eps: Vec<f64>,
    pub mesh: MeshConfig,
    pub p: usize,
    pub k_policy: KPolicyConfig,
    pub eigen: EigenConfig,
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let cfg = ExperimentConfig {
            profile: raw.profile,
            material: raw.material,
            operator: raw.operator,
            eps: raw.thicknesses.iter().map(|h| h / 2.0).collect(),
            mesh: raw.mesh,
            p: raw.p,
            k_policy: raw.k_policy,
            eigen: raw.eigen,
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        let raw = RawConfig {
            operator: self.operator,
            thicknesses: self.thicknesses(),
            p: self.p,
            profile: self.profile.clone(),
            material: self.material,
            mesh: self.mesh,
            k_policy: self.k_policy,
            eigen: self.eigen,
            output: self.output.clone(),
        };
        toml::to_string(&raw).expect("config serializes")
    }

    /// Full thicknesses `h = 2ε`.
    pub fn thicknesses(&self) -> Vec<f64> {
        self.eps.iter().map(|e| 2.0 * e).collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        let field = |name: &str, e: axishell::Error| CliError::Config(format!("{name}: {e}"));
        let profile = self.profile.build().map_err(|e| field("profile", e))?;
        self.material_params()?;
        if self.eps.is_empty() {
            return Err(CliError::Config("thicknesses: list is empty".into()));
        }
        let bound = profile.injectivity_bound();
        for (i, &e) in self.eps.iter().enumerate() {
            if !(e > 0.0) || !(e < bound) {
                return Err(CliError::Config(format!(
                    "thicknesses[{i}]: h = {} must be positive with h/2 below {bound}",
                    2.0 * e
                )));
            }
        }
        if self.p == 0 {
            return Err(CliError::Config("p: interpolation degree must be at least 1".into()));
        }
        if self.mesh.n_thick == 0 || self.mesh.n_merid == 0 || !(1..=3).contains(&self.mesh.geo_degree) {
            return Err(CliError::Config("mesh: element counts must be positive and geo_degree in 1..=3".into()));
        }
        if self.k_policy.window == 0 {
            return Err(CliError::Config("k_policy.window: must be positive".into()));
        }
        if self.eigen.m == 0 || !(self.eigen.tol > 0.0) {
            return Err(CliError::Config("eigen: m must be positive and tol > 0".into()));
        }
        Ok(())
    }

    pub fn material_params(&self) -> Result<Material, CliError> {
        Material::new(self.material.young, self.material.nu, self.material.rho)
            .map_err(|e| CliError::Config(format!("material: {e}")))
    }

    pub fn profile(&self) -> Result<Profile, CliError> {
        self.profile.build().map_err(|e| CliError::Config(format!("profile: {e}")))
    }

    pub fn settings(&self) -> Result<Settings, CliError> {
        let mut s = Settings::new(self.material_params()?, self.operator.into());
        s.mesh = MeshSpec {
            n_thick: self.mesh.n_thick,
            n_merid: self.mesh.n_merid,
            geo_degree: self.mesh.geo_degree,
            graded: self.mesh.graded,
        };
        s.degree = self.p;
        s.policy = KPolicy { window: self.k_policy.window, cap: self.k_policy.cap };
        s.eigen = EigenOptions::new(self.eigen.m, self.eigen.tol);
        Ok(s)
    }
}
