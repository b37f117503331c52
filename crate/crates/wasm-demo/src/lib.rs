//! WebAssembly bindings for the static page in `www/`.
//!
//! Three operations are exported: solving the gap equation for given model
//! parameters, laying out the momentum grid, and timing the two interpolation
//! strategies against each other. Everything runs sequentially because browsers
//! give a plain wasm module one thread.

use dse_core::interpolation::{bracket_search, interp_search};
use dse_core::{build_grid, interp_indexed, AlgorithmVariant, ModelParams, Solver, SolverOptions};
use wasm_bindgen::prelude::*;

/// Dressing functions and iteration history of one solve.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Curves {
    p2: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    iterations: usize,
    converged: bool,
    delta_a: Vec<f64>,
    delta_b: Vec<f64>,
    /// A and B at p² = 1 GeV² after each iteration.
    probe_a: Vec<f64>,
    probe_b: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn p2(&self) -> Vec<f64> {
        self.p2.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn a(&self) -> Vec<f64> {
        self.a.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn b(&self) -> Vec<f64> {
        self.b.clone()
    }
    /// M = B / A in GeV.
    #[wasm_bindgen(getter)]
    pub fn mass(&self) -> Vec<f64> {
        self.a.iter().zip(&self.b).map(|(a, b)| b / a).collect()
    }
    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> usize {
        self.iterations
    }
    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.converged
    }
    #[wasm_bindgen(getter)]
    pub fn delta_a(&self) -> Vec<f64> {
        self.delta_a.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn delta_b(&self) -> Vec<f64> {
        self.delta_b.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn probe_a(&self) -> Vec<f64> {
        self.probe_a.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn probe_b(&self) -> Vec<f64> {
        self.probe_b.clone()
    }
}

/// Solves the gap equation on `n` external points with `m_rad` × `m_ang`
/// integration nodes, starting from A = B = 1.
pub fn solve_curves(
    d: f64,
    omega: f64,
    m0: f64,
    xi: f64,
    n: usize,
    m_rad: usize,
    m_ang: usize,
) -> Result<Curves, String> {
    let params = ModelParams {
        d,
        omega,
        m0,
        xi,
        n,
        m_rad,
        m_ang,
        ..ModelParams::default()
    };
    let options = SolverOptions {
        probes_p2: vec![1.0],
        ..SolverOptions::default()
    };
    let solver = Solver::new(params, options).map_err(|e| e.to_string())?;
    let sol = solver
        .solve(&AlgorithmVariant::INDEXED_SEQ)
        .map_err(|e| e.to_string())?;
    let history = &sol.history[1..];
    Ok(Curves {
        delta_a: history.iter().map(|h| h.max_delta_a).collect(),
        delta_b: history.iter().map(|h| h.max_delta_b).collect(),
        probe_a: sol.history.iter().map(|h| h.probe_a[0]).collect(),
        probe_b: sol.history.iter().map(|h| h.probe_b[0]).collect(),
        p2: sol.p2,
        a: sol.a,
        b: sol.b,
        iterations: sol.iterations,
        converged: sol.converged,
    })
}

#[wasm_bindgen]
pub fn solve(
    d: f64,
    omega: f64,
    m0: f64,
    xi: f64,
    n: usize,
    m_rad: usize,
    m_ang: usize,
) -> Result<Curves, JsError> {
    solve_curves(d, omega, m0, xi, n, m_rad, m_ang).map_err(|e| JsError::new(&e))
}

/// External and internal momenta of a grid, with the bracket of each internal
/// node.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct GridLayout {
    p2_ext: Vec<f64>,
    q2_int: Vec<f64>,
    bracket: Vec<u32>,
    shifted: bool,
}

#[wasm_bindgen]
impl GridLayout {
    #[wasm_bindgen(getter)]
    pub fn p2_ext(&self) -> Vec<f64> {
        self.p2_ext.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn q2_int(&self) -> Vec<f64> {
        self.q2_int.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn bracket(&self) -> Vec<u32> {
        self.bracket.clone()
    }
    /// Whether the external grid was moved off coinciding internal nodes.
    #[wasm_bindgen(getter)]
    pub fn shifted(&self) -> bool {
        self.shifted
    }
}

pub fn grid_layout_of(
    n: usize,
    m_rad: usize,
    p2_min: f64,
    p2_max: f64,
) -> Result<GridLayout, String> {
    let g = build_grid(n, m_rad, 1, p2_min, p2_max).map_err(|e| e.to_string())?;
    Ok(GridLayout {
        p2_ext: g.p2_ext().to_vec(),
        q2_int: g.q2_int().to_vec(),
        bracket: g.bracket_idx().iter().map(|&i| i as u32).collect(),
        shifted: g.shifted(),
    })
}

#[wasm_bindgen]
pub fn grid_layout(
    n: usize,
    m_rad: usize,
    p2_min: f64,
    p2_max: f64,
) -> Result<GridLayout, JsError> {
    grid_layout_of(n, m_rad, p2_min, p2_max).map_err(|e| JsError::new(&e))
}

/// Outcome of interpolating one array at every internal node both ways.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct InterpComparison {
    /// Bisection steps the search strategy needs in total.
    pub search_steps: u32,
    /// Largest absolute difference between the two strategies.
    pub max_difference: f64,
    pub lookups: u32,
}

/// Interpolates `f(p²) = 1 / (1 + p²)` sampled on the external grid at every
/// internal node, once by bisection and once through the stored brackets.
pub fn compare_interpolation_of(n: usize, m_rad: usize) -> Result<InterpComparison, String> {
    let g = build_grid(n, m_rad, 1, 1e-6, 1e4).map_err(|e| e.to_string())?;
    let values: Vec<f64> = g.p2_ext().iter().map(|p2| 1.0 / (1.0 + p2)).collect();
    let mut steps = 0u32;
    let mut worst = 0.0f64;
    for (j, &q2) in g.q2_int().iter().enumerate() {
        let by_search = interp_search(g.p2_ext(), &values, q2).map_err(|e| e.to_string())?;
        let by_index = interp_indexed(&g, &values, j).map_err(|e| e.to_string())?;
        worst = worst.max((by_search - by_index).abs());
        // Depth of the bisection that located this bracket.
        if bracket_search(g.p2_ext(), q2).is_some() {
            steps += usize::BITS - (g.n_ext() - 1).leading_zeros();
        }
    }
    Ok(InterpComparison {
        search_steps: steps,
        max_difference: worst,
        lookups: g.m_rad() as u32,
    })
}

#[wasm_bindgen]
pub fn compare_interpolation(n: usize, m_rad: usize) -> Result<InterpComparison, JsError> {
    compare_interpolation_of(n, m_rad).map_err(|e| JsError::new(&e))
}
