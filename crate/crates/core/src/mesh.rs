//! Structured curved quadrilateral meshes of the meridian domain.
//!
//! Elements are boxes in the parametric `(z, x3)` rectangle
//! `I × [-eps, eps]`, mapped to `(r, tau)` by interpolating the exact
//! normal-offset map at Gauss–Lobatto points of geometric degree `q`.

use std::io::{self, Write};

use crate::basis::{gauss_legendre, LagrangeBasis};
use crate::error::{Error, Result};
use crate::geometry::MeridianProfile;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryTag {
    /// Meridian ends, carrying the Dirichlet condition.
    Lateral,
    /// Inner and outer faces `x3 = ±eps`.
    Natural,
    Interior,
}

impl BoundaryTag {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryTag::Lateral => "lateral",
            BoundaryTag::Natural => "natural",
            BoundaryTag::Interior => "interior",
        }
    }
}

/// Mesh layout requested by callers that rebuild meshes per thickness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshSpec {
    pub n_thick: usize,
    pub n_merid: usize,
    pub geo_degree: usize,
    pub graded: bool,
}

impl Default for MeshSpec {
    fn default() -> Self {
        Self { n_thick: 2, n_merid: 8, geo_degree: 3, graded: true }
    }
}

impl MeshSpec {
    pub fn build<T: Real>(&self, profile: &MeridianProfile<T>, eps: T) -> Result<MeridianMesh<T>> {
        let mesh = build_uniform(profile, eps, self.n_thick, self.n_merid, self.geo_degree)?;
        if self.graded {
            refine_boundary_layers(&mesh, eps)
        } else {
            Ok(mesh)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Element<T> {
    /// Parametric extent along the meridian.
    pub z: (T, T),
    /// Parametric extent across the thickness.
    pub x3: (T, T),
    /// Geometry nodes `(r, tau)`, index `a + (q+1) b` with `a` along the
    /// meridian and `b` across the thickness.
    pub geo: Vec<(T, T)>,
    /// Position of the element in the structured grid `(meridian, thickness)`.
    pub cell: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct MeridianMesh<T> {
    profile: MeridianProfile<T>,
    eps: T,
    geo_degree: usize,
    z_lines: Vec<T>,
    x3_lines: Vec<T>,
    elements: Vec<Element<T>>,
    /// Reference `eta` runs against `x3` when the profile orientation would
    /// otherwise give negative Jacobians.
    flip_thickness: bool,
}

/// Values and parametric derivatives of the geometric map at one reference point.
#[derive(Debug, Clone, Copy)]
pub struct MapPoint<T> {
    pub r: T,
    pub tau: T,
    /// `[[dr/dxi, dr/deta], [dtau/dxi, dtau/deta]]`
    pub jac: [[T; 2]; 2],
}

impl<T: Real> MapPoint<T> {
    pub fn det(&self) -> T {
        self.jac[0][0] * self.jac[1][1] - self.jac[0][1] * self.jac[1][0]
    }
}

pub fn build_uniform<T: Real>(
    profile: &MeridianProfile<T>,
    eps: T,
    n_thick: usize,
    n_merid: usize,
    geo_degree: usize,
) -> Result<MeridianMesh<T>> {
    if n_thick == 0 || n_merid == 0 {
        return Err(Error::InvalidMesh("element counts must be at least 1".into()));
    }
    if !(1..=3).contains(&geo_degree) {
        return Err(Error::InvalidMesh(format!("geometric degree {geo_degree} not in 1..=3")));
    }
    let bound = profile.injectivity_bound();
    if !(eps > T::zero() && eps < bound) {
        return Err(Error::InvalidThickness { eps: eps.to_f64_lossy(), bound: bound.to_f64_lossy() });
    }
    let (lo, hi) = profile.parameter_interval();
    let z_lines = uniform_lines(lo, hi, n_merid);
    let x3_lines = uniform_lines(-eps, eps, n_thick);
    MeridianMesh::from_lines(profile.clone(), eps, geo_degree, z_lines, x3_lines)
}

fn uniform_lines<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    let nf = T::from_int(n as i64);
    let mut v: Vec<T> = (0..=n).map(|i| a + (b - a) * T::from_int(i as i64) / nf).collect();
    v[0] = a;
    v[n] = b;
    v
}

/// Insert meridian lines at distances `eps, eps^(3/4), eps^(1/2), eps^(1/4)`
/// from each lateral end.
pub fn refine_boundary_layers<T: Real>(mesh: &MeridianMesh<T>, eps: T) -> Result<MeridianMesh<T>> {
    let (lo, hi) = mesh.profile.parameter_interval();
    let half = (hi - lo) / T::lit(2.0);
    let dists = layer_distances(eps);
    let far = dists[3];
    if far > half {
        return Err(Error::LayerCollision { distance: far.to_f64_lossy(), half_length: half.to_f64_lossy() });
    }
    let mut lines = mesh.z_lines.clone();
    for d in dists {
        lines.push(lo + d);
        lines.push(hi - d);
    }
    lines.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let tol = (hi - lo) * T::lit(1e-12);
    lines.dedup_by(|a, b| (*a - *b).abs() <= tol);
    // keep the lateral end lines exactly where they were
    let n = lines.len();
    lines[0] = lo;
    lines[n - 1] = hi;
    MeridianMesh::from_lines(mesh.profile.clone(), mesh.eps, mesh.geo_degree, lines, mesh.x3_lines.clone())
}

/// Distances of the graded lines from each lateral end, ascending.
pub fn layer_distances<T: Real>(eps: T) -> [T; 4] {
    [eps, eps.powf(T::lit(0.75)), eps.sqrt(), eps.sqrt().sqrt()]
}

impl<T: Real> MeridianMesh<T> {
    fn from_lines(
        profile: MeridianProfile<T>,
        eps: T,
        geo_degree: usize,
        z_lines: Vec<T>,
        x3_lines: Vec<T>,
    ) -> Result<Self> {
        let flip_thickness = !profile.is_plate();
        let gb = LagrangeBasis::<T>::lobatto(geo_degree);
        let q1 = geo_degree + 1;
        let mut elements = Vec::with_capacity((z_lines.len() - 1) * (x3_lines.len() - 1));
        for (im, zw) in z_lines.windows(2).enumerate() {
            for (jt, xw) in x3_lines.windows(2).enumerate() {
                let mut geo = Vec::with_capacity(q1 * q1);
                for b in 0..q1 {
                    for a in 0..q1 {
                        let (z, x3) = param_point(gb.nodes()[a], gb.nodes()[b], (zw[0], zw[1]), (xw[0], xw[1]), flip_thickness);
                        geo.push(profile.meridian_point(z, x3));
                    }
                }
                elements.push(Element { z: (zw[0], zw[1]), x3: (xw[0], xw[1]), geo, cell: (im, jt) });
            }
        }
        let mesh = Self { profile, eps, geo_degree, z_lines, x3_lines, elements, flip_thickness };
        mesh.check_jacobians()?;
        Ok(mesh)
    }

    fn check_jacobians(&self) -> Result<()> {
        let gb = self.geo_basis();
        let (pts, _) = gauss_legendre::<T>(self.geo_degree + 2);
        let mut probe = pts.clone();
        probe.push(-T::one());
        probe.push(T::one());
        for (e, el) in self.elements.iter().enumerate() {
            for &xi in &probe {
                for &eta in &probe {
                    let det = self.map(el, &gb, xi, eta).det();
                    if !(det > T::zero()) {
                        return Err(Error::DegenerateJacobian { element: e, det: det.to_f64_lossy() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn profile(&self) -> &MeridianProfile<T> {
        &self.profile
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    pub fn geo_degree(&self) -> usize {
        self.geo_degree
    }

    pub fn n_merid(&self) -> usize {
        self.z_lines.len() - 1
    }

    pub fn n_thick(&self) -> usize {
        self.x3_lines.len() - 1
    }

    pub fn z_lines(&self) -> &[T] {
        &self.z_lines
    }

    pub fn x3_lines(&self) -> &[T] {
        &self.x3_lines
    }

    pub fn elements(&self) -> &[Element<T>] {
        &self.elements
    }

    pub fn thickness_flipped(&self) -> bool {
        self.flip_thickness
    }

    pub fn geo_basis(&self) -> LagrangeBasis<T> {
        LagrangeBasis::lobatto(self.geo_degree)
    }

    /// Parametric `(z, x3)` of a reference point of `el`.
    pub fn param_of(&self, el: &Element<T>, xi: T, eta: T) -> (T, T) {
        param_point(xi, eta, el.z, el.x3, self.flip_thickness)
    }

    /// Geometric map and its Jacobian at reference point `(xi, eta)`.
    pub fn map(&self, el: &Element<T>, gb: &LagrangeBasis<T>, xi: T, eta: T) -> MapPoint<T> {
        let (va, da) = gb.eval(xi);
        let (vb, db) = gb.eval(eta);
        self.map_with(el, &va, &da, &vb, &db)
    }

    /// Same as [`Self::map`] with pre-evaluated geometric basis values.
    pub fn map_with(&self, el: &Element<T>, va: &[T], da: &[T], vb: &[T], db: &[T]) -> MapPoint<T> {
        let q1 = self.geo_degree + 1;
        let mut out = MapPoint { r: T::zero(), tau: T::zero(), jac: [[T::zero(); 2]; 2] };
        for b in 0..q1 {
            for a in 0..q1 {
                let (r, tau) = el.geo[a + q1 * b];
                let n = va[a] * vb[b];
                let nx = da[a] * vb[b];
                let ny = va[a] * db[b];
                out.r += n * r;
                out.tau += n * tau;
                out.jac[0][0] += nx * r;
                out.jac[0][1] += ny * r;
                out.jac[1][0] += nx * tau;
                out.jac[1][1] += ny * tau;
            }
        }
        out
    }

    /// Structured grid of geometry vertices: `(n_merid q + 1) × (n_thick q + 1)`
    /// points `(r, tau, tag)`, thickness index fastest.
    pub fn vertices(&self) -> Vec<(T, T, BoundaryTag)> {
        let gb = self.geo_basis();
        let zs = refine_lines(&self.z_lines, gb.nodes());
        let xs = refine_lines(&self.x3_lines, gb.nodes());
        let mut out = Vec::with_capacity(zs.len() * xs.len());
        for (i, &z) in zs.iter().enumerate() {
            for (j, &x3) in xs.iter().enumerate() {
                let tag = if i == 0 || i + 1 == zs.len() {
                    BoundaryTag::Lateral
                } else if j == 0 || j + 1 == xs.len() {
                    BoundaryTag::Natural
                } else {
                    BoundaryTag::Interior
                };
                let (r, tau) = self.profile.meridian_point(z, x3);
                out.push((r, tau, tag));
            }
        }
        out
    }

    /// Plain-text listing `id r tau tag`, one vertex per line.
    pub fn dump_nodes<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# id r tau tag")?;
        for (id, (r, tau, tag)) in self.vertices().into_iter().enumerate() {
            writeln!(w, "{id} {r:.16e} {tau:.16e} {}", tag.as_str())?;
        }
        Ok(())
    }
}

/// Parametric points obtained by placing `ref_nodes` in each interval of `lines`.
pub(crate) fn refine_lines<T: Real>(lines: &[T], ref_nodes: &[T]) -> Vec<T> {
    let p = ref_nodes.len() - 1;
    let mut out = Vec::with_capacity((lines.len() - 1) * p + 1);
    out.push(lines[0]);
    for w in lines.windows(2) {
        for &x in &ref_nodes[1..p] {
            out.push(w[0] + (x + T::one()) / T::lit(2.0) * (w[1] - w[0]));
        }
        out.push(w[1]);
    }
    out
}

fn param_point<T: Real>(xi: T, eta: T, z: (T, T), x3: (T, T), flip: bool) -> (T, T) {
    let half = T::lit(0.5);
    let zz = z.0 + (xi + T::one()) * half * (z.1 - z.0);
    let xx = if flip {
        x3.1 - (eta + T::one()) * half * (x3.1 - x3.0)
    } else {
        x3.0 + (eta + T::one()) * half * (x3.1 - x3.0)
    };
    (zz, xx)
}
