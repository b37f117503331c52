//! Successive approximation of the discretized A/B gap equation.
//!
//! One iteration is a Jacobi sweep over the external momenta: every output
//! `A'[i]`, `B'[i]` reads only the previous iterate, so the sweep can be split
//! across threads without changing a single bit of the result.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::fixed_point::{successive_approximation, IterationControl};
use crate::grid::MomentumGrid;
use crate::interpolation::{interp_indexed_unchecked, interp_search_unchecked, InterpStrategy};
use crate::kernels::{
    effective_interaction, kinematics, quotients_unchecked, radial_measure, terms_unchecked,
    ModelParams, TermGeometry,
};

/// Environment variable that caps the worker count of parallel sweeps.
pub const THREADS_ENV: &str = "SOLVER_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgorithmVariant {
    pub interp: InterpStrategy,
    pub execution: Execution,
    pub threads: Option<usize>,
}

impl AlgorithmVariant {
    pub const SEARCH_SEQ: Self = Self::new(InterpStrategy::SearchBased, Execution::Sequential);
    pub const INDEXED_SEQ: Self =
        Self::new(InterpStrategy::PrecomputedIndex, Execution::Sequential);
    pub const SEARCH_PAR: Self = Self::new(InterpStrategy::SearchBased, Execution::Parallel);
    pub const INDEXED_PAR: Self = Self::new(InterpStrategy::PrecomputedIndex, Execution::Parallel);

    /// The four variants in benchmark-table order.
    pub const ALL: [Self; 4] = [
        Self::SEARCH_SEQ,
        Self::INDEXED_SEQ,
        Self::SEARCH_PAR,
        Self::INDEXED_PAR,
    ];

    pub const fn new(interp: InterpStrategy, execution: Execution) -> Self {
        Self {
            interp,
            execution,
            threads: None,
        }
    }

    pub fn with_threads(self, threads: Option<usize>) -> Self {
        Self { threads, ..self }
    }

    pub fn name(&self) -> &'static str {
        match (self.interp, self.execution) {
            (InterpStrategy::SearchBased, Execution::Sequential) => "search-seq",
            (InterpStrategy::PrecomputedIndex, Execution::Sequential) => "indexed-seq",
            (InterpStrategy::SearchBased, Execution::Parallel) => "search-par",
            (InterpStrategy::PrecomputedIndex, Execution::Parallel) => "indexed-par",
        }
    }

    /// Position 1..=4 in the benchmark table.
    pub fn number(&self) -> usize {
        match self.name() {
            "search-seq" => 1,
            "indexed-seq" => 2,
            "search-par" => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for AlgorithmVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s || format!("alg{}", v.number()) == s)
            .ok_or_else(|| {
                param(
                    "variant",
                    format!("unknown `{s}`; expected search-seq, indexed-seq, search-par or indexed-par"),
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub max_iter: usize,
    pub relaxation: f64,
    /// Momenta squared (GeV²) at which A and B are recorded every iteration.
    pub probes_p2: Vec<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iter: 500,
            relaxation: 1.0,
            // log10 p = -2.5 and 0.0
            probes_p2: vec![1e-5, 1.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryRecord {
    /// 0 is the initial state.
    pub iteration: usize,
    /// NaN for the initial state.
    pub max_delta_a: f64,
    pub max_delta_b: f64,
    pub probe_a: Vec<f64>,
    pub probe_b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagatorSolution {
    pub p2: Vec<f64>,
    pub a: Vec<f64>,
    /// GeV
    pub b: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub probes_p2: Vec<f64>,
    pub history: Vec<HistoryRecord>,
}

/// Runs `work(i)` for `i in 0..n` and collects the results in index order.
pub fn sweep_sequential<T, F>(n: usize, work: F) -> Result<Vec<T>>
where
    F: Fn(usize) -> Result<T>,
{
    (0..n).map(work).collect()
}

/// Parallel counterpart of [`sweep_sequential`]. Each index is evaluated by
/// exactly one worker, so results are bitwise identical to the sequential
/// sweep for any thread count.
#[cfg(feature = "parallel")]
pub fn sweep_parallel<T, F>(n: usize, pool: &rayon::ThreadPool, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    pool.install(|| (0..n).into_par_iter().map(work).collect())
}

#[cfg(feature = "parallel")]
pub fn build_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Execution(e.to_string()))
}

/// Worker count for parallel sweeps: explicit request, then `SOLVER_THREADS`,
/// then hardware concurrency.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    requested
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|s| s.trim().parse().ok())
        })
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Execution strategy of one sweep, with its worker pool when parallel.
pub enum Executor {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel(rayon::ThreadPool),
}

impl Executor {
    pub fn for_variant(variant: &AlgorithmVariant) -> Result<Self> {
        match variant.execution {
            Execution::Sequential => Ok(Self::Sequential),
            #[cfg(feature = "parallel")]
            Execution::Parallel => Ok(Self::Parallel(build_pool(resolve_threads(
                variant.threads,
            ))?)),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => Err(Error::Execution(
                "built without the `parallel` feature".into(),
            )),
        }
    }

    fn run<T, F>(&self, n: usize, work: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        match self {
            Self::Sequential => sweep_sequential(n, work),
            #[cfg(feature = "parallel")]
            Self::Parallel(pool) => sweep_parallel(n, pool, work),
        }
    }
}

trait Lookup {
    fn at(grid: &MomentumGrid, values: &[f64], j: usize) -> f64;
}

struct Search;
struct Indexed;

impl Lookup for Search {
    #[inline(always)]
    fn at(grid: &MomentumGrid, values: &[f64], j: usize) -> f64 {
        interp_search_unchecked(grid.p2_ext(), values, grid.q2_int()[j])
    }
}

impl Lookup for Indexed {
    #[inline(always)]
    fn at(grid: &MomentumGrid, values: &[f64], j: usize) -> f64 {
        interp_indexed_unchecked(grid, values, j)
    }
}

/// Gap-equation solver bound to one parameter set and its momentum grid.
///
/// Everything in the integrand that does not depend on A and B (measure,
/// interaction, kinematic brackets) is summed over the angular nodes once, at
/// construction. An iteration then only contracts these tables with the
/// interpolated dressing functions, which is where the two interpolation
/// strategies differ.
#[derive(Debug, Clone)]
pub struct Solver {
    params: ModelParams,
    options: SolverOptions,
    grid: MomentumGrid,
    /// `n_ext × m_rad` angular-integrated geometry, row-major in the external index.
    tables: Vec<TermGeometry>,
}

impl Solver {
    pub fn new(params: ModelParams, options: SolverOptions) -> Result<Self> {
        params.validate()?;
        if options.max_iter == 0 {
            return Err(param("max_iter", "must be at least 1"));
        }
        if !(options.relaxation > 0.0 && options.relaxation <= 1.0) {
            return Err(param("relaxation", "must lie in (0, 1]"));
        }
        if let Some(p) = options
            .probes_p2
            .iter()
            .find(|p| !(p.is_finite() && **p > 0.0))
        {
            return Err(param(
                "probes",
                format!("probe momentum {p} must be positive"),
            ));
        }
        let grid = MomentumGrid::build(&params.grid_spec())?;
        let tables = geometry_tables(&grid, &params)?;
        Ok(Self {
            params,
            options,
            grid,
            tables,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn options(&self) -> &SolverOptions {
        &self.options
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    /// Right-hand side of the A and B equations at external point `i`.
    #[inline]
    fn external_point<L: Lookup>(&self, a: &[f64], b: &[f64], i: usize) -> Result<(f64, f64)> {
        let grid = &self.grid;
        let m = grid.m_rad();
        let p2 = grid.p2_ext()[i];
        let (ap, bp) = (a[i], b[i]);
        let rows = &self.tables[i * m..(i + 1) * m];
        let mut sum_a = 0.0;
        let mut sum_b = 0.0;
        for (j, (&q2, geo)) in grid.q2_int().iter().zip(rows).enumerate() {
            let aq = L::at(grid, a, j);
            let bq = L::at(grid, b, j);
            let inv_den = 1.0 / (q2 * aq * aq + bq * bq);
            let quo = quotients_unchecked(ap, aq, bp, bq, p2, q2);
            let terms = geo.terms(aq, bq, &quo);
            sum_a += inv_den * terms.a_sum();
            sum_b += inv_den * terms.b_sum();
        }
        if !(sum_a.is_finite() && sum_b.is_finite()) {
            return Err(self.locate_failure::<L>(a, b, i));
        }
        let params = &self.params;
        Ok((params.z1 + sum_a, params.m0 * params.z1 + sum_b))
    }

    /// Re-evaluates point `i` term by term to find the first non-finite one.
    #[cold]
    fn locate_failure<L: Lookup>(&self, a: &[f64], b: &[f64], i: usize) -> Error {
        let grid = &self.grid;
        let p2 = grid.p2_ext()[i];
        let (mut sum_a, mut sum_b) = (0.0f64, 0.0f64);
        for (j, (&q2, &wq)) in grid.q2_int().iter().zip(grid.s_weights()).enumerate() {
            let aq = L::at(grid, a, j);
            let bq = L::at(grid, b, j);
            let den = q2 * aq * aq + bq * bq;
            for (k, (&z, &wz)) in grid.z_nodes().iter().zip(grid.z_weights()).enumerate() {
                let kin = kinematics(p2, q2, z);
                let quo = quotients_unchecked(a[i], aq, b[i], bq, p2, q2);
                let terms = terms_unchecked(&kin, aq, bq, &quo);
                let common =
                    wq * radial_measure(q2) * wz * effective_interaction(kin.k2, &self.params)
                        / den;
                sum_a += common * terms.a_sum();
                sum_b += common * terms.b_sum();
                if !(sum_a.is_finite() && sum_b.is_finite()) {
                    return Error::NumericalFailure { i, j, k };
                }
            }
        }
        Error::NumericalFailure {
            i,
            j: grid.m_rad() - 1,
            k: grid.m_ang() - 1,
        }
    }

    fn check_input(&self, a: &[f64], b: &[f64]) -> Result<()> {
        let n = self.grid.n_ext();
        if a.len() != n || b.len() != n {
            return Err(param("state", format!("A and B must have {n} entries")));
        }
        if !a.iter().chain(b).all(|x| x.is_finite()) {
            return Err(param("state", "A and B must be finite"));
        }
        Ok(())
    }

    fn sweep(
        &self,
        executor: &Executor,
        interp: InterpStrategy,
        a: &[f64],
        b: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = self.grid.n_ext();
        let pairs = match interp {
            InterpStrategy::SearchBased => {
                executor.run(n, |i| self.external_point::<Search>(a, b, i))?
            }
            InterpStrategy::PrecomputedIndex => {
                executor.run(n, |i| self.external_point::<Indexed>(a, b, i))?
            }
        };
        Ok(pairs.into_iter().unzip())
    }

    /// One Jacobi sweep `(A, B) -> (A', B')`.
    pub fn iterate_once(
        &self,
        a: &[f64],
        b: &[f64],
        variant: &AlgorithmVariant,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_input(a, b)?;
        let executor = Executor::for_variant(variant)?;
        self.sweep(&executor, variant.interp, a, b)
    }

    /// Solves from `A₀ = B₀ = 1`.
    pub fn solve(&self, variant: &AlgorithmVariant) -> Result<PropagatorSolution> {
        let n = self.grid.n_ext();
        self.solve_from(variant, vec![1.0; n], vec![1.0; n])
    }

    pub fn solve_from(
        &self,
        variant: &AlgorithmVariant,
        a0: Vec<f64>,
        b0: Vec<f64>,
    ) -> Result<PropagatorSolution> {
        let executor = Executor::for_variant(variant)?;
        self.solve_with(&executor, variant.interp, a0, b0)
    }

    /// Solves with an executor built beforehand, so that pool start-up stays
    /// outside timed regions.
    pub fn solve_with(
        &self,
        executor: &Executor,
        interp: InterpStrategy,
        a0: Vec<f64>,
        b0: Vec<f64>,
    ) -> Result<PropagatorSolution> {
        self.check_input(&a0, &b0)?;
        let ctl = IterationControl {
            tol: self.params.xi,
            max_iter: self.options.max_iter,
            relaxation: self.options.relaxation,
        };
        let mut history = vec![self.record(0, f64::NAN, f64::NAN, &a0, &b0)];
        let fp = successive_approximation(
            a0,
            b0,
            &ctl,
            |a, b| self.sweep(executor, interp, a, b),
            |n, a, b, da, db| history.push(self.record(n, da, db, a, b)),
        )?;
        Ok(PropagatorSolution {
            p2: self.grid.p2_ext().to_vec(),
            a: fp.u,
            b: fp.v,
            iterations: fp.iterations,
            converged: fp.converged,
            probes_p2: self.options.probes_p2.clone(),
            history,
        })
    }

    fn record(&self, iteration: usize, da: f64, db: f64, a: &[f64], b: &[f64]) -> HistoryRecord {
        let knots = self.grid.p2_ext();
        let probe = |values: &[f64]| {
            self.options
                .probes_p2
                .iter()
                .map(|&p2| interp_search_unchecked(knots, values, p2))
                .collect()
        };
        HistoryRecord {
            iteration,
            max_delta_a: da,
            max_delta_b: db,
            probe_a: probe(a),
            probe_b: probe(b),
        }
    }
}

fn geometry_tables(grid: &MomentumGrid, params: &ModelParams) -> Result<Vec<TermGeometry>> {
    let mut tables = Vec::with_capacity(grid.n_ext() * grid.m_rad());
    for (i, &p2) in grid.p2_ext().iter().enumerate() {
        for (j, (&q2, &ws)) in grid.q2_int().iter().zip(grid.s_weights()).enumerate() {
            let wq = ws * radial_measure(q2);
            let mut acc = TermGeometry::default();
            for (k, (&z, &wz)) in grid.z_nodes().iter().zip(grid.z_weights()).enumerate() {
                let kin = kinematics(p2, q2, z);
                if !(kin.k2 > 0.0) {
                    return Err(Error::KinematicSingularity {
                        p2,
                        q2,
                        z,
                        k2: kin.k2,
                    });
                }
                let w = wq * wz * effective_interaction(kin.k2, params);
                acc.add_scaled(w, &TermGeometry::at(&kin));
                if ![acc.a1, acc.a2, acc.a3, acc.b1, acc.b2, acc.b3]
                    .iter()
                    .all(|x| x.is_finite())
                {
                    return Err(Error::NumericalFailure { i, j, k });
                }
            }
            tables.push(acc);
        }
    }
    Ok(tables)
}

/// Builds the grid and solves with default options.
pub fn solve(params: &ModelParams, variant: &AlgorithmVariant) -> Result<PropagatorSolution> {
    Solver::new(*params, SolverOptions::default())?.solve(variant)
}
