//! Stiffness and mass assembly of a Fourier-mode form on a meridian mesh.
//!
//! Strains are affine in the mode index, so the stiffness splits as
//! `K(k) = K0 + k K1 + k² K2`. [`ModalOperator`] assembles the three parts
//! and the mass once per mesh; [`ModalOperator::system`] then builds the
//! constrained pair for any `k` with a few band additions.

use rayon::prelude::*;

use crate::band::SymBandMatrix;
use crate::basis::{gauss_legendre, LagrangeBasis};
use crate::error::{Error, Result};
use crate::mesh::MeridianMesh;
use crate::operators::{IsotropicTensor, ModeForm, OperatorKind};
use crate::scalar::Real;

/// Numbering of nodal unknowns on the structured `(meridian, thickness)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofMap {
    pub n_merid_nodes: usize,
    pub n_thick_nodes: usize,
    pub components: usize,
}

impl DofMap {
    pub fn n_dofs(&self) -> usize {
        self.n_merid_nodes * self.n_thick_nodes * self.components
    }

    #[inline]
    pub fn dof(&self, im: usize, jt: usize, comp: usize) -> usize {
        (im * self.n_thick_nodes + jt) * self.components + comp
    }

    pub fn is_lateral(&self, im: usize) -> bool {
        im == 0 || im + 1 == self.n_merid_nodes
    }
}

/// Constrained generalized eigenproblem of one Fourier mode.
#[derive(Debug, Clone)]
pub struct AssembledSystem<T> {
    pub operator: OperatorKind,
    pub mode: u32,
    pub degree: usize,
    pub dof_map: DofMap,
    /// Stiffness and mass before Dirichlet elimination.
    pub full_stiffness: SymBandMatrix<T>,
    pub full_mass: SymBandMatrix<T>,
    /// Lateral Dirichlet unknowns (sorted).
    pub constrained: Vec<usize>,
    /// Remaining unknowns (sorted); row `i` of the reduced pair is `free[i]`.
    pub free: Vec<usize>,
    pub stiffness: SymBandMatrix<T>,
    pub mass: SymBandMatrix<T>,
}

impl<T: Real> AssembledSystem<T> {
    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    /// Scatter a reduced vector back to all unknowns (zero on the lateral set).
    pub fn expand(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dof_map.n_dofs()];
        for (&g, &v) in self.free.iter().zip(x) {
            out[g] = v;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ModalOperator<T> {
    operator: OperatorKind,
    degree: usize,
    dof_map: DofMap,
    k0: SymBandMatrix<T>,
    k1: SymBandMatrix<T>,
    k2: SymBandMatrix<T>,
    mass: SymBandMatrix<T>,
    constrained: Vec<usize>,
    free: Vec<usize>,
    node_coords: Vec<(T, T)>,
}

/// Per-element contributions, local numbering `(a + (p+1) b) * comps + c`.
struct ElementMatrices<T> {
    k0: Vec<T>,
    k1: Vec<T>,
    k2: Vec<T>,
    mass: Vec<T>,
}

/// Assemble the constrained system of `form` on `mesh` with degree-`p` elements.
pub fn assemble<T: Real>(form: &ModeForm<T>, mesh: &MeridianMesh<T>, p: usize) -> Result<AssembledSystem<T>> {
    Ok(ModalOperator::new(form, mesh, p)?.system(form.k))
}

impl<T: Real> ModalOperator<T> {
    /// Assemble all `k`-independent parts; the mode index of `form` is ignored.
    pub fn new(form: &ModeForm<T>, mesh: &MeridianMesh<T>, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidMesh("interpolation degree must be at least 1".into()));
        }
        let comps = form.components();
        let dof_map = DofMap {
            n_merid_nodes: mesh.n_merid() * p + 1,
            n_thick_nodes: mesh.n_thick() * p + 1,
            components: comps,
        };
        let basis = LagrangeBasis::<T>::lobatto(p);
        let (qx, qw) = gauss_legendre::<T>(p + 2);
        let gb = mesh.geo_basis();

        // tabulate shape functions at quadrature abscissae once
        let tab_fe: Vec<(Vec<T>, Vec<T>)> = qx.iter().map(|&x| basis.eval(x)).collect();
        let tab_geo: Vec<(Vec<T>, Vec<T>)> = qx.iter().map(|&x| gb.eval(x)).collect();

        let tensor = form.tensor().copied();
        let density = form.density();
        let elems: Vec<Result<ElementMatrices<T>>> = mesh
            .elements()
            .par_iter()
            .enumerate()
            .map(|(e, el)| {
                element_matrices(
                    e, mesh, el, form.operator, tensor.as_ref(), density, p, &qw, &tab_fe, &tab_geo,
                )
            })
            .collect();

        // half-bandwidth of the structured numbering
        let nt = dof_map.n_thick_nodes;
        let bw = ((p * nt + p) + 1) * comps;
        let n = dof_map.n_dofs();
        let mut k0 = SymBandMatrix::zeros(n, bw);
        let mut k1 = SymBandMatrix::zeros(n, bw);
        let mut k2 = SymBandMatrix::zeros(n, bw);
        let mut mass = SymBandMatrix::zeros(n, bw);
        let nloc = (p + 1) * (p + 1) * comps;
        for (el, em) in mesh.elements().iter().zip(elems) {
            let em = em?;
            let gdofs = local_to_global(mesh, el.cell, p, &dof_map);
            for a in 0..nloc {
                for b in 0..=a {
                    let idx = a * nloc + b;
                    let (ga, gbi) = (gdofs[a], gdofs[b]);
                    // `add` mirrors, so only one triangle may be added
                    if ga == gbi && a != b {
                        unreachable!("distinct local unknowns share a global index");
                    }
                    k0.add(ga, gbi, em.k0[idx]);
                    k1.add(ga, gbi, em.k1[idx]);
                    k2.add(ga, gbi, em.k2[idx]);
                    mass.add(ga, gbi, em.mass[idx]);
                }
            }
        }

        let mut constrained = Vec::new();
        let mut free = Vec::new();
        for im in 0..dof_map.n_merid_nodes {
            for jt in 0..dof_map.n_thick_nodes {
                for c in 0..comps {
                    let d = dof_map.dof(im, jt, c);
                    if dof_map.is_lateral(im) {
                        constrained.push(d);
                    } else {
                        free.push(d);
                    }
                }
            }
        }
        let node_coords = node_coordinates(mesh, p, &basis, &dof_map);
        Ok(Self { operator: form.operator, degree: p, dof_map, k0, k1, k2, mass, constrained, free, node_coords })
    }

    pub fn dof_map(&self) -> DofMap {
        self.dof_map
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(r, tau)` of every finite-element node, index `im * n_thick_nodes + jt`.
    pub fn node_coordinates(&self) -> &[(T, T)] {
        &self.node_coords
    }

    /// Unconstrained stiffness of mode `k`.
    pub fn full_stiffness(&self, k: u32) -> SymBandMatrix<T> {
        let kf = T::from_u32(k).expect("k fits");
        self.k0.axpy(kf, &self.k1).axpy(kf * kf, &self.k2)
    }

    pub fn full_mass(&self) -> &SymBandMatrix<T> {
        &self.mass
    }

    /// Constrained system of mode `k`.
    pub fn system(&self, k: u32) -> AssembledSystem<T> {
        let full_stiffness = self.full_stiffness(k);
        let stiffness = full_stiffness.restrict(&self.free);
        let mass = self.mass.restrict(&self.free);
        AssembledSystem {
            operator: self.operator,
            mode: k,
            degree: self.degree,
            dof_map: self.dof_map,
            full_stiffness,
            full_mass: self.mass.clone(),
            constrained: self.constrained.clone(),
            free: self.free.clone(),
            stiffness,
            mass,
        }
    }

    /// Nodal interpolation of a field given by its components at `(r, tau)`.
    pub fn interpolate<F: Fn(T, T) -> Vec<T>>(&self, field: F) -> Vec<T> {
        let c = self.dof_map.components;
        let mut out = vec![T::zero(); self.dof_map.n_dofs()];
        for (node, &(r, tau)) in self.node_coords.iter().enumerate() {
            let v = field(r, tau);
            out[node * c..node * c + c].copy_from_slice(&v[..c]);
        }
        out
    }
}

fn local_to_global<T: Real>(mesh: &MeridianMesh<T>, cell: (usize, usize), p: usize, map: &DofMap) -> Vec<usize> {
    let comps = map.components;
    let mut out = Vec::with_capacity((p + 1) * (p + 1) * comps);
    for b in 0..=p {
        let jt = cell.1 * p + if mesh.thickness_flipped() { p - b } else { b };
        for a in 0..=p {
            let im = cell.0 * p + a;
            for c in 0..comps {
                out.push(map.dof(im, jt, c));
            }
        }
    }
    out
}

fn node_coordinates<T: Real>(
    mesh: &MeridianMesh<T>,
    p: usize,
    basis: &LagrangeBasis<T>,
    map: &DofMap,
) -> Vec<(T, T)> {
    let mut out = vec![(T::zero(), T::zero()); map.n_merid_nodes * map.n_thick_nodes];
    let gb = mesh.geo_basis();
    for el in mesh.elements() {
        for b in 0..=p {
            let jt = el.cell.1 * p + if mesh.thickness_flipped() { p - b } else { b };
            for a in 0..=p {
                let im = el.cell.0 * p + a;
                let mp = mesh.map(el, &gb, basis.nodes()[a], basis.nodes()[b]);
                out[im * map.n_thick_nodes + jt] = (mp.r, mp.tau);
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn element_matrices<T: Real>(
    e: usize,
    mesh: &MeridianMesh<T>,
    el: &crate::mesh::Element<T>,
    operator: OperatorKind,
    tensor: Option<&IsotropicTensor<T>>,
    density: T,
    p: usize,
    qw: &[T],
    tab_fe: &[(Vec<T>, Vec<T>)],
    tab_geo: &[(Vec<T>, Vec<T>)],
) -> Result<ElementMatrices<T>> {
    let comps = operator.components();
    let nn = (p + 1) * (p + 1);
    let nloc = nn * comps;
    let mut k0 = vec![T::zero(); nloc * nloc];
    let mut k1 = vec![T::zero(); nloc * nloc];
    let mut k2 = vec![T::zero(); nloc * nloc];
    let mut mass = vec![T::zero(); nloc * nloc];
    let nq = qw.len();
    let mut nval = vec![T::zero(); nn];
    let mut ndr = vec![T::zero(); nn];
    let mut ndt = vec![T::zero(); nn];
    let two = T::lit(2.0);

    for iq in 0..nq {
        for jq in 0..nq {
            let (ga, gda) = &tab_geo[iq];
            let (gbv, gdb) = &tab_geo[jq];
            let mp = mesh.map_with(el, ga, gda, gbv, gdb);
            let det = mp.det();
            if !(det > T::zero()) {
                return Err(Error::DegenerateJacobian { element: e, det: det.to_f64_lossy() });
            }
            let r = mp.r;
            if !(r > T::zero()) {
                return Err(Error::QuadratureUnderflow { element: e, r: r.to_f64_lossy() });
            }
            // inverse Jacobian: [dxi/dr, dxi/dtau; deta/dr, deta/dtau]
            let inv = [
                [mp.jac[1][1] / det, -mp.jac[0][1] / det],
                [-mp.jac[1][0] / det, mp.jac[0][0] / det],
            ];
            let w = qw[iq] * qw[jq] * det * r;
            let (fa, dfa) = &tab_fe[iq];
            let (fb, dfb) = &tab_fe[jq];
            for b in 0..=p {
                for a in 0..=p {
                    let i = a + (p + 1) * b;
                    let dxi = dfa[a] * fb[b];
                    let deta = fa[a] * dfb[b];
                    nval[i] = fa[a] * fb[b];
                    ndr[i] = dxi * inv[0][0] + deta * inv[1][0];
                    ndt[i] = dxi * inv[0][1] + deta * inv[1][1];
                }
            }
            let rinv = T::one() / r;
            match operator {
                OperatorKind::Laplace => {
                    let w2 = w * rinv * rinv;
                    for i in 0..nn {
                        for j in 0..=i {
                            let idx = i * nloc + j;
                            k0[idx] += w * (ndr[i] * ndr[j] + ndt[i] * ndt[j]);
                            k2[idx] += w2 * nval[i] * nval[j];
                            mass[idx] += w * nval[i] * nval[j];
                        }
                    }
                }
                OperatorKind::Lame => {
                    let t = tensor.expect("Lamé form carries a tensor");
                    let (lam, mu) = (t.lambda, t.mu);
                    let energy = |x: &[T; 6], y: &[T; 6]| -> T {
                        let tr = (x[0] + x[1] + x[2]) * (y[0] + y[1] + y[2]);
                        lam * tr
                            + two * mu * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
                            + mu * (x[3] * y[3] + x[4] * y[4] + x[5] * y[5])
                    };
                    let z = T::zero();
                    // strain vectors per (node, component): k-independent and k-linear parts
                    let strains = |i: usize| -> ([[T; 6]; 3], [[T; 6]; 3]) {
                        let (n, nr, nt) = (nval[i], ndr[i], ndt[i]);
                        let nor = n * rinv;
                        (
                            [
                                [nr, nor, z, nt, z, z],
                                [z, z, z, z, nr - nor, nt],
                                [z, z, nt, nr, z, z],
                            ],
                            [
                                [z, z, z, z, -nor, z],
                                [z, nor, z, z, z, z],
                                [z, z, z, z, z, -nor],
                            ],
                        )
                    };
                    let all: Vec<_> = (0..nn).map(strains).collect();
                    let wm = w * density;
                    for i in 0..nn {
                        let (b0i, b1i) = &all[i];
                        for j in 0..=i {
                            let (b0j, b1j) = &all[j];
                            let nij = wm * nval[i] * nval[j];
                            for ci in 0..3 {
                                let li = i * 3 + ci;
                                for cj in 0..3 {
                                    let lj = j * 3 + cj;
                                    if lj > li {
                                        continue;
                                    }
                                    let idx = li * nloc + lj;
                                    k0[idx] += w * energy(&b0i[ci], &b0j[cj]);
                                    k1[idx] += w * (energy(&b0i[ci], &b1j[cj]) + energy(&b1i[ci], &b0j[cj]));
                                    k2[idx] += w * energy(&b1i[ci], &b1j[cj]);
                                    if ci == cj {
                                        mass[idx] += nij;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // fill the strict upper triangle so consumers can read either half
    for m in [&mut k0, &mut k1, &mut k2, &mut mass] {
        for i in 0..nloc {
            for j in 0..i {
                m[j * nloc + i] = m[i * nloc + j];
            }
        }
    }
    Ok(ElementMatrices { k0, k1, k2, mass })
}
