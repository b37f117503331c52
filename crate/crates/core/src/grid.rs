//! Interleaved external/internal momentum grids.
//!
//! External momenta `p2_ext` carry the unknowns. Internal momenta `q2_int` are
//! the radial quadrature nodes, taken in `s = ln q²`. Every internal node gets
//! its interpolation bracket once, at construction, so the solver never has to
//! search for it afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::quadrature::{gauss_chebyshev2, gauss_legendre};

/// Relative distance below which an internal and an external node coincide.
pub const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_ext: usize,
    pub m_rad: usize,
    pub m_ang: usize,
    pub p2_min: f64,
    pub p2_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_ext: 150,
            m_rad: 100,
            m_ang: 32,
            p2_min: 1e-6,
            p2_max: 1e4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    p2_ext: Vec<f64>,
    s_nodes: Vec<f64>,
    s_weights: Vec<f64>,
    q2_int: Vec<f64>,
    bracket_idx: Vec<usize>,
    z_nodes: Vec<f64>,
    z_weights: Vec<f64>,
    shifted: bool,
}

impl MomentumGrid {
    pub fn build(spec: &GridSpec) -> Result<Self> {
        build_grid(spec.n_ext, spec.m_rad, spec.m_ang, spec.p2_min, spec.p2_max)
    }

    /// External momenta squared, strictly increasing.
    pub fn p2_ext(&self) -> &[f64] {
        &self.p2_ext
    }

    pub fn s_nodes(&self) -> &[f64] {
        &self.s_nodes
    }

    pub fn s_weights(&self) -> &[f64] {
        &self.s_weights
    }

    /// Internal momenta squared, `exp(s_nodes)`.
    pub fn q2_int(&self) -> &[f64] {
        &self.q2_int
    }

    /// For internal node `j`, the external index `i` with
    /// `p2_ext[i] <= q2_int[j] < p2_ext[i + 1]`, or `n_ext() - 1` when the
    /// node lies at or above the last external momentum.
    pub fn bracket_idx(&self) -> &[usize] {
        &self.bracket_idx
    }

    pub fn z_nodes(&self) -> &[f64] {
        &self.z_nodes
    }

    pub fn z_weights(&self) -> &[f64] {
        &self.z_weights
    }

    pub fn n_ext(&self) -> usize {
        self.p2_ext.len()
    }

    pub fn m_rad(&self) -> usize {
        self.q2_int.len()
    }

    pub fn m_ang(&self) -> usize {
        self.z_nodes.len()
    }

    /// Whether the external grid had to be moved down by half a log-step.
    pub fn shifted(&self) -> bool {
        self.shifted
    }

    /// Smallest relative gap between any internal and any external node.
    pub fn min_relative_gap(&self) -> f64 {
        let mut best = f64::INFINITY;
        for &q in &self.q2_int {
            for &p in &self.p2_ext {
                best = best.min(relative_gap(p, q));
            }
        }
        best
    }
}

fn relative_gap(p: f64, q: f64) -> f64 {
    (q - p).abs() / p.max(q)
}

fn log_uniform(n: usize, s_min: f64, step: f64) -> Vec<f64> {
    (0..n).map(|i| (s_min + i as f64 * step).exp()).collect()
}

/// Both inputs sorted: one forward pass over the external grid.
pub(crate) fn merge_brackets(p2_ext: &[f64], q2_int: &[f64]) -> Vec<usize> {
    let last = p2_ext.len() - 1;
    let mut i = 0;
    q2_int
        .iter()
        .map(|&q| {
            while i < last && p2_ext[i + 1] <= q {
                i += 1;
            }
            i
        })
        .collect()
}

fn coincides(p2_ext: &[f64], q2_int: &[f64]) -> bool {
    // Sorted arrays: only the bracketing neighbours can be closest.
    let brackets = merge_brackets(p2_ext, q2_int);
    q2_int.iter().zip(&brackets).any(|(&q, &i)| {
        let near = relative_gap(p2_ext[i], q) <= COINCIDENCE_TOL;
        let next = p2_ext
            .get(i + 1)
            .is_some_and(|&p| relative_gap(p, q) <= COINCIDENCE_TOL);
        near || next
    })
}

pub fn build_grid(
    n_ext: usize,
    m_rad: usize,
    m_ang: usize,
    p2_min: f64,
    p2_max: f64,
) -> Result<MomentumGrid> {
    if n_ext < 2 {
        return Err(param("n", "need at least 2 external points"));
    }
    if m_rad < 2 {
        return Err(param("m_rad", "need at least 2 radial nodes"));
    }
    if m_ang < 1 {
        return Err(param("m_ang", "need at least 1 angular node"));
    }
    if !(p2_min.is_finite() && p2_min > 0.0) {
        return Err(param("p2_min", format!("must be positive, got {p2_min}")));
    }
    if !(p2_max.is_finite() && p2_max > p2_min) {
        return Err(param("p2_max", format!("must exceed p2_min, got {p2_max}")));
    }

    let s_min = p2_min.ln();
    let s_max = p2_max.ln();
    let radial = gauss_legendre(m_rad, s_min, s_max)?;
    let angular = gauss_chebyshev2(m_ang)?;
    let q2_int: Vec<f64> = radial.nodes.iter().map(|s| s.exp()).collect();

    let step = (s_max - s_min) / (n_ext - 1) as f64;
    let mut p2_ext = log_uniform(n_ext, s_min, step);
    // Exact endpoints, free of exp(ln x) round-off.
    p2_ext[0] = p2_min;
    p2_ext[n_ext - 1] = p2_max;
    let mut shifted = false;
    if coincides(&p2_ext, &q2_int) {
        p2_ext = log_uniform(n_ext, s_min - 0.5 * step, step);
        shifted = true;
        if coincides(&p2_ext, &q2_int) {
            return Err(Error::Grid(format!(
                "internal and external nodes coincide for N={n_ext}, M_rad={m_rad} even after shifting"
            )));
        }
    }
    if q2_int[0] < p2_ext[0] {
        return Err(Error::Grid("internal node below external range".into()));
    }

    let bracket_idx = merge_brackets(&p2_ext, &q2_int);
    Ok(MomentumGrid {
        p2_ext,
        s_nodes: radial.nodes,
        s_weights: radial.weights,
        q2_int,
        bracket_idx,
        z_nodes: angular.nodes,
        z_weights: angular.weights,
        shifted,
    })
}
