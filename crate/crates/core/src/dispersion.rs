//! Dispersion curves `k ↦ λ^(k)(ε)`, first modes and asymptotic orders.

use rayon::prelude::*;

use crate::assembly::ModalOperator;
use crate::eigen::{smallest_eigenpairs_with, EigenOptions};
use crate::error::{Error, Result};
use crate::geometry::MeridianProfile;
use crate::mesh::MeshSpec;
use crate::operators::{lame_form, laplace_form, MaterialParams, OperatorKind};
use crate::scalar::Real;

/// Stop rule of a sweep: `window` consecutive values that lie above the
/// running minimum and keep increasing, or `cap` as the largest mode computed.
/// A value that drops (toward a second well) restarts the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KPolicy {
    pub window: u32,
    pub cap: u32,
}

impl Default for KPolicy {
    fn default() -> Self {
        Self { window: 5, cap: 200 }
    }
}

/// Everything but the geometry and thickness that a sweep needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings<T> {
    pub material: MaterialParams<T>,
    pub operator: OperatorKind,
    pub mesh: MeshSpec,
    pub degree: usize,
    pub policy: KPolicy,
    pub eigen: EigenOptions<T>,
}

impl<T: Real> SweepSettings<T> {
    pub fn new(material: MaterialParams<T>, operator: OperatorKind) -> Self {
        Self {
            material,
            operator,
            mesh: MeshSpec::default(),
            degree: 6,
            policy: KPolicy::default(),
            eigen: EigenOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    RiseDetected,
    KmaxHit,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::RiseDetected => "rise_detected",
            StopReason::KmaxHit => "kmax_hit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub k: u32,
    pub lambda: T,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurve<T> {
    pub eps: T,
    pub operator: OperatorKind,
    /// Contiguous from `k = 0`.
    pub entries: Vec<CurvePoint<T>>,
    pub argmin_k: u32,
    pub lambda_min: T,
    pub stop_reason: StopReason,
}

impl<T: Real> DispersionCurve<T> {
    /// Build from points in `k` order, applying the stop rule. Points past the
    /// stopping mode are discarded.
    pub fn from_points(eps: T, operator: OperatorKind, points: Vec<CurvePoint<T>>, policy: KPolicy) -> Self {
        let mut scan = RiseScan::new(policy);
        let mut entries = Vec::new();
        let mut stop_reason = StopReason::KmaxHit;
        for pt in points {
            entries.push(pt);
            if let Some(reason) = scan.push(pt) {
                stop_reason = reason;
                break;
            }
        }
        DispersionCurve { eps, operator, entries, argmin_k: scan.argmin, lambda_min: scan.min, stop_reason }
    }

    pub fn is_complete(&self) -> bool {
        self.stop_reason == StopReason::RiseDetected
    }

    /// `(k*, λ*)`; ties go to the smaller mode.
    pub fn first_mode(&self) -> Result<(u32, T)> {
        if !self.is_complete() {
            return Err(Error::IncompleteCurve);
        }
        Ok((self.argmin_k, self.lambda_min))
    }

    pub fn require_complete(&self, policy: KPolicy) -> Result<&Self> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(Error::KmaxExceeded { cap: policy.cap })
        }
    }
}

struct RiseScan<T> {
    policy: KPolicy,
    min: T,
    argmin: u32,
    prev: T,
    rising: u32,
}

impl<T: Real> RiseScan<T> {
    fn new(policy: KPolicy) -> Self {
        Self { policy, min: T::infinity(), argmin: 0, prev: T::infinity(), rising: 0 }
    }

    fn push(&mut self, pt: CurvePoint<T>) -> Option<StopReason> {
        if pt.lambda < self.min {
            self.min = pt.lambda;
            self.argmin = pt.k;
            self.rising = 0;
        } else if pt.lambda > self.min && pt.lambda > self.prev {
            self.rising += 1;
        } else {
            self.rising = 0;
        }
        self.prev = pt.lambda;
        if self.rising >= self.policy.window {
            Some(StopReason::RiseDetected)
        } else if pt.k >= self.policy.cap {
            Some(StopReason::KmaxHit)
        } else {
            None
        }
    }
}

/// Assemble the `k`-split operator for one thickness.
pub fn modal_operator<T: Real>(profile: &MeridianProfile<T>, eps: T, settings: &SweepSettings<T>) -> Result<ModalOperator<T>> {
    let mesh = settings.mesh.build(profile, eps)?;
    let form = match settings.operator {
        OperatorKind::Laplace => laplace_form(0),
        OperatorKind::Lame => lame_form(0, &settings.material)?,
    };
    ModalOperator::new(&form, &mesh, settings.degree)
}

/// First eigenvalue of every mode `k = 0, 1, …` until the stop rule fires.
pub fn sweep_k<T: Real>(profile: &MeridianProfile<T>, eps: T, settings: &SweepSettings<T>) -> Result<DispersionCurve<T>> {
    let op = modal_operator(profile, eps, settings)?;
    sweep_operator(&op, eps, settings)
}

/// [`sweep_k`] on an already assembled operator.
pub fn sweep_operator<T: Real>(op: &ModalOperator<T>, eps: T, settings: &SweepSettings<T>) -> Result<DispersionCurve<T>> {
    let mut opts = settings.eigen;
    opts.count = opts.count.max(1);
    let batch = rayon::current_num_threads().max(1) as u32;
    let mut scan = RiseScan::new(settings.policy);
    let mut entries = Vec::new();
    let mut k0 = 0u32;
    loop {
        let ks: Vec<u32> = (k0..(k0 + batch).min(settings.policy.cap + 1)).collect();
        let solved: Vec<Result<CurvePoint<T>>> = ks
            .par_iter()
            .map(|&k| {
                let sys = op.system(k);
                let r = smallest_eigenpairs_with(&sys, &opts)?;
                Ok(CurvePoint { k, lambda: r.eigenvalues[0], residual: r.residuals[0] })
            })
            .collect();
        for pt in solved {
            let pt = pt?;
            entries.push(pt);
            if let Some(stop_reason) = scan.push(pt) {
                return Ok(DispersionCurve {
                    eps,
                    operator: op_kind(op),
                    entries,
                    argmin_k: scan.argmin,
                    lambda_min: scan.min,
                    stop_reason,
                });
            }
        }
        k0 += batch;
    }
}

fn op_kind<T: Real>(op: &ModalOperator<T>) -> OperatorKind {
    if op.dof_map().components == 1 {
        OperatorKind::Laplace
    } else {
        OperatorKind::Lame
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstMode<T> {
    pub eps: T,
    pub k: u32,
    pub lambda: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessSweep<T> {
    pub operator: OperatorKind,
    pub profile: MeridianProfile<T>,
    pub material: MaterialParams<T>,
    /// Strictly decreasing in `eps`.
    pub rows: Vec<FirstMode<T>>,
    pub curves: Vec<DispersionCurve<T>>,
}

impl<T: Real> ThicknessSweep<T> {
    pub fn samples(&self) -> Vec<(T, T)> {
        self.rows.iter().map(|r| (r.eps, r.lambda)).collect()
    }
}

/// One complete dispersion curve per half-thickness; `eps` must be strictly decreasing.
pub fn sweep_thickness<T: Real>(profile: &MeridianProfile<T>, eps: &[T], settings: &SweepSettings<T>) -> Result<ThicknessSweep<T>> {
    if eps.is_empty() {
        return Err(Error::InvalidProblem("empty thickness list".into()));
    }
    if eps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidProblem("thicknesses must be strictly decreasing".into()));
    }
    let mut rows = Vec::with_capacity(eps.len());
    let mut curves = Vec::with_capacity(eps.len());
    for &e in eps {
        let curve = sweep_k(profile, e, settings)?;
        curve.require_complete(settings.policy)?;
        let (k, lambda) = curve.first_mode()?;
        rows.push(FirstMode { eps: e, k, lambda });
        curves.push(curve);
    }
    Ok(ThicknessSweep {
        operator: settings.operator,
        profile: profile.clone(),
        material: settings.material,
        rows,
        curves,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope<T: Real>(points: &[(T, T)]) -> T {
    let n = T::from_int(points.len() as i64);
    let lx: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<T> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().copied().sum::<T>() / n;
    let my = ly.iter().copied().sum::<T>() / n;
    let sxy: T = lx.iter().zip(&ly).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let sxx: T = lx.iter().map(|&x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Samples used by [`estimate_order`].
pub const ORDER_SAMPLES: usize = 3;

/// Order `α` in `λ(ε) − a₀ ~ ε^α`, fitted on the three smallest `ε`, which
/// must span at least a decade.
pub fn estimate_order<T: Real>(samples: &[(T, T)], a0: T) -> Result<T> {
    if samples.len() < ORDER_SAMPLES {
        return Err(Error::InsufficientSpan(format!("need {ORDER_SAMPLES} samples, got {}", samples.len())));
    }
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite thickness"));
    s.truncate(ORDER_SAMPLES);
    let (lo, hi) = (s[0].0, s[ORDER_SAMPLES - 1].0);
    if !(lo > T::zero()) || hi / lo < T::lit(10.0) * (T::one() - T::lit(1e-9)) {
        return Err(Error::InsufficientSpan(format!("thicknesses {lo}..{hi} span less than a decade")));
    }
    let pts: Vec<(T, T)> = s.iter().map(|&(e, l)| (e, l - a0)).collect();
    if let Some(&(e, d)) = pts.iter().find(|p| !(p.1 > T::zero())) {
        return Err(Error::InsufficientSpan(format!("λ − a₀ = {d} is not positive at ε = {e}")));
    }
    Ok(loglog_slope(&pts))
}
