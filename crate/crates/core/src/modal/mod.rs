//! Per-angular-mode radial Helmholtz solves.
//!
//! For mode l the substitution w = r u (3-d) or w = sqrt(r) u (2-d)
//! turns the radial operator into Schrodinger form
//!
//! ```text
//! (P_l w)(r) = -c(r)^2 w'' + c(r)^2 V_l(r) w,   V_l = l(l+1)/r^2  (3-d)
//!                                               V_l = (l^2-1/4)/r^2 (2-d)
//! ```
//!
//! on the weighted space with density c^{-2} alpha^{-1} dr inside the
//! obstacle and dr outside. The discretisation is a symmetric
//! second-order stencil on a uniform grid with a node placed exactly at
//! r = a; the transmission/boundary condition replaces the stencil row
//! there, and the outgoing condition is imposed at r = R_chi through the
//! exact modal Robin coefficient k h'_l(k R)/h_l(k R).
//!
//! The cut-off resolvent norm is the supremum over modes of the modal
//! operator norms (exact by orthogonality of the angular decomposition);
//! only the radial discretisation is approximate.

mod banded;
mod determinant;

pub use banded::{sigma_max_weighted, BandLu, BandMatrix};
pub use determinant::{modal_determinant, modal_determinant_with_derivative};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::scatterer::{ScattererKind, ScattererSpec};
use crate::special::{self, Order, SpecialFnError};

#[derive(Debug, Error)]
pub enum ModalError {
    #[error(transparent)]
    Special(#[from] SpecialFnError),
    #[error("discrete system singular at column {column}")]
    SingularSystem { column: usize },
    #[error("invalid modal system: {0}")]
    Invalid(String),
    #[error("mode tail not decaying by l_max = {l_max} (last norms {tail:?})")]
    TailNotDecaying { l_max: u32, tail: Vec<f64> },
    #[error("solve residual {residual:e} exceeds tolerance")]
    SolveFailure { residual: f64 },
}

/// One per-mode radial problem: scatterer, angular mode, cutoff, grid size.
#[derive(Debug, Clone, Copy)]
pub struct ModalSystem {
    pub spec: ScattererSpec,
    pub ell: u32,
    pub r_chi: f64,
    pub n_r: usize,
}

/// Default mode truncation: ceil(1.3 k R_chi) + 20; the mode-tail decay
/// invariant justifies the margin.
pub fn default_l_max(k: f64, r_chi: f64) -> u32 {
    (1.3 * k * r_chi).ceil() as u32 + 20
}

/// Default grid size: 20 points per local wavelength min(c,1) 2 pi / k,
/// at least 64 points.
pub fn default_n_r(spec: &ScattererSpec, k: f64, r_chi: f64) -> usize {
    let c_min = spec.contrast_or_one().min(1.0);
    ((20.0 * k * r_chi / (2.0 * std::f64::consts::PI * c_min)).ceil() as usize).max(64)
}

/// Uniform radial grid with a node placed exactly at r = a.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub dr: f64,
    pub nodes: Vec<f64>,
    /// Index of the node at r = a (transmission or boundary row).
    pub interface_index: Option<usize>,
    /// Dirichlet/Neumann grids start at r = a; free/penetrable at r = dr.
    pub starts_at_obstacle: bool,
}

impl RadialGrid {
    pub fn new(spec: &ScattererSpec, r_chi: f64, n_r: usize) -> Result<RadialGrid, ModalError> {
        spec.validate().map_err(|e| ModalError::Invalid(e.to_string()))?;
        let a = spec.radius_or_zero();
        if a > 0.0 && r_chi <= a {
            return Err(ModalError::Invalid(format!(
                "cutoff radius {r_chi} must exceed the obstacle radius {a}"
            )));
        }
        if n_r < 16 {
            return Err(ModalError::Invalid("n_r must be at least 16".into()));
        }
        match spec.kind {
            ScattererKind::Free => {
                let dr = r_chi / n_r as f64;
                let nodes = (1..=n_r).map(|i| i as f64 * dr).collect();
                Ok(RadialGrid { dr, nodes, interface_index: None, starts_at_obstacle: false })
            }
            ScattererKind::Penetrable => {
                let dr_target = r_chi / n_r as f64;
                let ia = ((a / dr_target).round() as usize).max(4);
                let dr = a / ia as f64;
                let n_out = ((r_chi - a) / dr - 1e-9).ceil().max(4.0) as usize;
                let total = ia + n_out;
                let nodes = (1..=total).map(|i| i as f64 * dr).collect();
                Ok(RadialGrid {
                    dr,
                    nodes,
                    interface_index: Some(ia - 1),
                    starts_at_obstacle: false,
                })
            }
            ScattererKind::ImpenetrableDirichlet | ScattererKind::ImpenetrableNeumann => {
                let dr = (r_chi - a) / n_r as f64;
                let nodes = (0..=n_r).map(|i| a + i as f64 * dr).collect();
                Ok(RadialGrid {
                    dr,
                    nodes,
                    interface_index: Some(0),
                    starts_at_obstacle: true,
                })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        *self.nodes.last().unwrap()
    }
}

/// Discretised modal operator T = P_l - k^2 with its weights and the
/// physical-row mask (constraint rows excluded from the data space).
pub struct ModalOperator {
    pub grid: RadialGrid,
    pub spec: ScattererSpec,
    pub ell: u32,
    pub k: Complex64,
    band: BandMatrix,
    lu: Option<BandLu>,
    /// Quadrature weights m_i of the weighted L^2 norm in w-space.
    pub weights: Vec<f64>,
    /// False on constraint rows (interface, obstacle boundary, Robin).
    pub physical: Vec<bool>,
}

fn angular_potential(dimension: u8, ell: u32, r: f64) -> f64 {
    let l = ell as f64;
    if dimension == 3 {
        l * (l + 1.0) / (r * r)
    } else {
        (l * l - 0.25) / (r * r)
    }
}

/// w-space Robin coefficient of the outgoing condition at r = R.
fn robin_coefficient(
    spec: &ScattererSpec,
    ell: u32,
    k: Complex64,
    r: f64,
) -> Result<Complex64, ModalError> {
    let z = k * r;
    let (h, hp) = if spec.dimension == 3 {
        let p = special::sph_pair(ell, z)?;
        (p.h, p.hp)
    } else {
        let p = special::cyl_pair(Order::new(ell as f64).expect("integer order"), z)?;
        (p.h, p.hp)
    };
    let geom = if spec.dimension == 3 { 1.0 / r } else { 0.5 / r };
    Ok(geom + k * hp / h)
}

impl ModalOperator {
    pub fn new(
        spec: &ScattererSpec,
        ell: u32,
        k: Complex64,
        grid: &RadialGrid,
    ) -> Result<ModalOperator, ModalError> {
        let n = grid.len();
        let dr = grid.dr;
        let a = spec.radius_or_zero();
        let c = spec.contrast_or_one();
        let alpha = spec.alpha_or_one();
        let inside_weight = if spec.kind == ScattererKind::Penetrable {
            1.0 / (c * c * alpha)
        } else {
            1.0
        };
        let k2 = k * k;

        let mut band = BandMatrix::new(n, 2, 2);
        let mut weights = vec![0.0f64; n];
        let mut physical = vec![true; n];

        let interface = grid.interface_index;
        for (i, &r) in grid.nodes.iter().enumerate() {
            let at_interface = interface == Some(i);
            let inside = spec.kind == ScattererKind::Penetrable && r < a;
            weights[i] = dr * if at_interface && spec.kind == ScattererKind::Penetrable {
                0.5 * (inside_weight + 1.0)
            } else if inside {
                inside_weight
            } else {
                1.0
            };
            if i == n - 1 {
                // Outgoing Robin row: (3w_N - 4w_{N-1} + w_{N-2})/(2dr) = sigma w_N.
                let sigma = robin_coefficient(spec, ell, k, r)?;
                band.set(i, i, Complex64::new(1.5 / dr, 0.0) - sigma);
                band.set(i, i - 1, Complex64::new(-2.0 / dr, 0.0));
                band.set(i, i - 2, Complex64::new(0.5 / dr, 0.0));
                physical[i] = false;
                continue;
            }
            if at_interface {
                physical[i] = false;
                match spec.kind {
                    ScattererKind::ImpenetrableDirichlet => {
                        band.set(i, i, Complex64::new(1.0, 0.0));
                    }
                    ScattererKind::ImpenetrableNeumann => {
                        // u'(a) = 0: w'(a) - geom w(a) = 0, one-sided outward.
                        let geom = if spec.dimension == 3 { 1.0 / a } else { 0.5 / a };
                        band.set(i, i, Complex64::new(-1.5 / dr - geom, 0.0));
                        band.set(i, i + 1, Complex64::new(2.0 / dr, 0.0));
                        band.set(i, i + 2, Complex64::new(-0.5 / dr, 0.0));
                    }
                    ScattererKind::Penetrable => {
                        // w'_in - alpha w'_out - (1-alpha) geom w = 0.
                        let geom = if spec.dimension == 3 { 1.0 / a } else { 0.5 / a };
                        band.set(i, i - 2, Complex64::new(0.5 / dr, 0.0));
                        band.set(i, i - 1, Complex64::new(-2.0 / dr, 0.0));
                        band.set(
                            i,
                            i,
                            Complex64::new(1.5 / dr + alpha * 1.5 / dr - (1.0 - alpha) * geom, 0.0),
                        );
                        band.set(i, i + 1, Complex64::new(-2.0 * alpha / dr, 0.0));
                        band.set(i, i + 2, Complex64::new(0.5 * alpha / dr, 0.0));
                    }
                    ScattererKind::Free => unreachable!("free grids carry no interface"),
                }
                continue;
            }
            // Interior stencil row.
            let kappa = if inside { c * c } else { 1.0 };
            let v = angular_potential(spec.dimension, ell, r);
            let diag = Complex64::new(kappa * (2.0 / (dr * dr) + v), 0.0) - k2;
            band.set(i, i, diag);
            let off = Complex64::new(-kappa / (dr * dr), 0.0);
            if i > 0 {
                band.set(i, i - 1, off);
            }
            // i + 1 always exists (the Robin row is last).
            band.set(i, i + 1, off);
        }

        Ok(ModalOperator {
            grid: grid.clone(),
            spec: *spec,
            ell,
            k,
            band,
            lu: None,
            weights,
            physical,
        })
    }

    /// T w (including constraint rows).
    pub fn apply(&self, w: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in i.saturating_sub(2)..(i + 3).min(n) {
                let v = self.band_get(i, j);
                if v.re != 0.0 || v.im != 0.0 {
                    acc += v * w[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    fn band_get(&self, i: usize, j: usize) -> Complex64 {
        if i + 2 < j || j + 2 < i {
            return Complex64::new(0.0, 0.0);
        }
        self.band_raw(i, j)
    }

    fn band_raw(&self, i: usize, j: usize) -> Complex64 {
        // BandMatrix has no public get; mirror its layout through a
        // temporary accessor kept in sync with banded::BandMatrix.
        self.band.peek(i, j)
    }

    fn ensure_factored(&mut self) -> Result<&BandLu, ModalError> {
        if self.lu.is_none() {
            let lu = self.band.clone_matrix().factor()?;
            self.lu = Some(lu);
        }
        Ok(self.lu.as_ref().unwrap())
    }

    /// Weighted L^2 norm in w-space.
    pub fn norm_weighted(&self, v: &[Complex64]) -> f64 {
        v.iter()
            .zip(&self.weights)
            .map(|(x, m)| m * x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Solve T w = f with f zeroed on constraint rows; returns w and the
    /// relative residual of the solve.
    pub fn solve_restricted(&mut self, f: &[Complex64]) -> Result<(Vec<Complex64>, f64), ModalError> {
        let physical = self.physical.clone();
        let mut rhs: Vec<Complex64> = f
            .iter()
            .zip(&physical)
            .map(|(v, &p)| if p { *v } else { Complex64::new(0.0, 0.0) })
            .collect();
        let scale = rhs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let lu = self.ensure_factored()?;
        lu.solve(&mut rhs);
        let back = self.apply(&rhs);
        let mut err = 0.0f64;
        for i in 0..back.len() {
            let target = if physical[i] { f[i] } else { Complex64::new(0.0, 0.0) };
            err += (back[i] - target).norm_sqr();
        }
        let residual = if scale > 0.0 { err.sqrt() / scale } else { 0.0 };
        Ok((rhs, residual))
    }

    /// Operator norm of the restricted inverse in the weighted norm.
    pub fn operator_norm(&mut self, seed: Option<&[Complex64]>) -> Result<f64, ModalError> {
        let out_w: Vec<f64> = self.weights.iter().map(|m| m.sqrt()).collect();
        let in_w: Vec<f64> = self
            .weights
            .iter()
            .zip(&self.physical)
            .map(|(m, &p)| if p { 1.0 / m.sqrt() } else { 0.0 })
            .collect();
        let lu = self.ensure_factored()?;
        Ok(sigma_max_weighted(lu, &out_w, &in_w, seed))
    }

    /// Map a u-space grid function to w-space.
    pub fn w_from_u(&self, u: &[Complex64]) -> Vec<Complex64> {
        self.grid
            .nodes
            .iter()
            .zip(u)
            .map(|(&r, v)| {
                if self.spec.dimension == 3 {
                    r * v
                } else {
                    r.sqrt() * v
                }
            })
            .collect()
    }

    /// Map a w-space grid function back to u-space.
    pub fn u_from_w(&self, w: &[Complex64]) -> Vec<Complex64> {
        self.grid
            .nodes
            .iter()
            .zip(w)
            .map(|(&r, v)| {
                if self.spec.dimension == 3 {
                    v / r
                } else {
                    v / r.sqrt()
                }
            })
            .collect()
    }
}

/// One frequency sample of the cut-off resolvent norm estimate.
#[derive(Debug, Clone)]
pub struct ResolventEstimate {
    pub k: Complex64,
    pub norm: f64,
    pub argmax_mode: u32,
    pub per_mode: Vec<(u32, f64)>,
}

/// Largest modal operator norm over modes l <= l_max: the discrete
/// estimate of ||chi R(k) chi||.
///
/// The per-mode tail must decay by l_max, otherwise the truncation is
/// reported as an error rather than silently accepted.
pub fn resolvent_norm(
    spec: &ScattererSpec,
    k: Complex64,
    r_chi: f64,
    l_max: u32,
    n_r: usize,
) -> Result<ResolventEstimate, ModalError> {
    if !(k.re > 0.0 || k.im > 0.0) || k.im < 0.0 {
        return Err(ModalError::Invalid(format!(
            "resolvent norm needs k real > 0 or Im k > 0, got {k}"
        )));
    }
    let grid = RadialGrid::new(spec, r_chi, n_r)?;
    let modes: Vec<u32> = (0..=l_max).collect();
    let per_mode: Result<Vec<(u32, f64)>, ModalError> = modes
        .par_iter()
        .map(|&ell| {
            let mut op = ModalOperator::new(spec, ell, k, &grid)?;
            let norm = op.operator_norm(None)?;
            Ok((ell, norm))
        })
        .collect();
    let per_mode = per_mode?;

    // Deterministic reduction: ascending l, strict improvement only.
    let mut norm = 0.0f64;
    let mut argmax_mode = 0u32;
    for &(ell, v) in &per_mode {
        if v > norm {
            norm = v;
            argmax_mode = ell;
        }
    }
    if per_mode.len() >= 4 {
        let tail: Vec<f64> = per_mode[per_mode.len() - 3..].iter().map(|&(_, v)| v).collect();
        let decaying = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9));
        if !decaying || tail[2] > 0.5 * norm {
            return Err(ModalError::TailNotDecaying { l_max, tail });
        }
    }
    Ok(ResolventEstimate { k, norm, argmax_mode, per_mode })
}

/// Apply the discrete modal resolvent to a u-space source on the grid.
pub fn apply_resolvent(
    spec: &ScattererSpec,
    k: Complex64,
    ell: u32,
    grid: &RadialGrid,
    source_u: &[Complex64],
) -> Result<Vec<Complex64>, ModalError> {
    if source_u.len() != grid.len() {
        return Err(ModalError::Invalid(format!(
            "source has {} entries, grid has {}",
            source_u.len(),
            grid.len()
        )));
    }
    let mut op = ModalOperator::new(spec, ell, k, grid)?;
    let f_w = op.w_from_u(source_u);
    let (w, residual) = op.solve_restricted(&f_w)?;
    if residual > 1e-8 {
        return Err(ModalError::SolveFailure { residual });
    }
    Ok(op.u_from_w(&w))
}

#[cfg(test)]
mod tests;
