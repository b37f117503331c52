//! Four-variant benchmark: search-based or precomputed-index interpolation,
//! each with a sequential or a parallel sweep.

use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_point::max_abs_diff;
use crate::kernels::ModelParams;
use crate::solver::{resolve_threads, AlgorithmVariant, Executor, PropagatorSolution, Solver};

/// Largest max-norm difference tolerated between any two variants.
pub const AGREEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub variant: String,
    pub algorithm: usize,
    pub threads: usize,
    pub wall_time_s: f64,
    pub cpu_time_s: f64,
    pub cpu_percent: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Speedups {
    pub alg1_over_alg2: f64,
    pub alg1_over_alg3: f64,
    pub alg1_over_alg4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub cores: usize,
    pub timestamp_unix_s: u64,
    pub os: String,
    pub arch: String,
}

impl Environment {
    pub fn current() -> Self {
        Self {
            cores: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            timestamp_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub params: ModelParams,
    pub repeat: usize,
    pub rows: Vec<BenchRow>,
    pub speedups: Speedups,
    /// Largest max-norm difference of A or B against algorithm 1.
    pub max_disagreement: f64,
    pub environment: Environment,
}

impl BenchReport {
    pub fn row(&self, variant: &AlgorithmVariant) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.variant == variant.name())
    }

    /// Aligned text table with the same columns as the published comparison.
    pub fn table(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "{:>5} {:>5} {:>6} {:>8} {:>14} {:>8} {:>7} {:>10} {:>12}\n",
            "N", "M", "M_ang", "xi", "algorithm", "threads", "%CPU", "iterations", "wall time(s)"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:>5} {:>5} {:>6} {:>8} {:>14} {:>8} {:>7.1} {:>10} {:>12.6}\n",
                p.n,
                p.m_rad,
                p.m_ang,
                p.xi,
                format!("{}.{}", r.algorithm, r.variant),
                r.threads,
                r.cpu_percent,
                r.iterations,
                r.wall_time_s
            ));
        }
        out.push_str(&format!(
            "speedup alg1/alg2 = {:.2}, alg1/alg3 = {:.2}, alg1/alg4 = {:.2} (cores: {})\n",
            self.speedups.alg1_over_alg2,
            self.speedups.alg1_over_alg3,
            self.speedups.alg1_over_alg4,
            self.environment.cores
        ));
        out
    }
}

/// User plus system CPU time of the whole process.
#[cfg(unix)]
pub fn process_cpu_time() -> Duration {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: getrusage fills the struct it is handed; RUSAGE_SELF is always valid.
    let usage = unsafe {
        libc::getrusage(libc::RUSAGE_SELF, usage.as_mut_ptr());
        usage.assume_init()
    };
    let tv = |t: libc::timeval| Duration::new(t.tv_sec as u64, t.tv_usec as u32 * 1000);
    tv(usage.ru_utime) + tv(usage.ru_stime)
}

#[cfg(not(unix))]
pub fn process_cpu_time() -> Duration {
    Duration::ZERO
}

pub struct Timed {
    pub solution: PropagatorSolution,
    pub wall: Duration,
    pub cpu: Duration,
}

/// Times one full solve. Grid, tables and worker pool are set up by the caller.
pub fn time_solve(
    solver: &Solver,
    executor: &Executor,
    variant: &AlgorithmVariant,
) -> Result<Timed> {
    let n = solver.grid().n_ext();
    let (a0, b0) = (vec![1.0; n], vec![1.0; n]);
    let cpu0 = process_cpu_time();
    let t0 = Instant::now();
    let solution = solver.solve_with(executor, variant.interp, a0, b0)?;
    let wall = t0.elapsed();
    let cpu = process_cpu_time().saturating_sub(cpu0);
    Ok(Timed {
        solution,
        wall,
        cpu,
    })
}

/// Checks that every solution matches the first one: same iteration count and
/// A, B within [`AGREEMENT_TOL`]. Returns the largest difference seen.
pub fn check_agreement(
    variants: &[AlgorithmVariant],
    solutions: &[PropagatorSolution],
) -> Result<f64> {
    let reference = &solutions[0];
    let mut worst = 0.0f64;
    for (v, sol) in variants.iter().zip(solutions).skip(1) {
        let diff = max_abs_diff(&sol.a, &reference.a).max(max_abs_diff(&sol.b, &reference.b));
        let diff = if sol.iterations == reference.iterations {
            diff
        } else {
            f64::INFINITY
        };
        if !(diff <= AGREEMENT_TOL) {
            return Err(Error::VariantDisagreement {
                a: variants[0].name(),
                b: v.name(),
                max_diff: diff,
            });
        }
        worst = worst.max(diff);
    }
    Ok(worst)
}

/// Runs all four variants on one solver. Each variant is timed `repeat` times
/// and its fastest run is kept. Nothing is reported unless all solutions agree.
pub fn run_bench(
    solver: &Solver,
    threads: Option<usize>,
    repeat: usize,
) -> Result<(BenchReport, Vec<PropagatorSolution>)> {
    let repeat = repeat.max(1);
    let threads = resolve_threads(threads);
    let variants: Vec<AlgorithmVariant> = AlgorithmVariant::ALL
        .iter()
        .map(|v| v.with_threads(Some(threads)))
        .collect();

    let executors = variants
        .iter()
        .map(Executor::for_variant)
        .collect::<Result<Vec<_>>>()?;
    // Round-robin over the variants so that slow phases of the host hit all
    // of them alike.
    let mut best: Vec<Option<Timed>> = (0..variants.len()).map(|_| None).collect();
    for _ in 0..repeat {
        for ((variant, executor), slot) in variants.iter().zip(&executors).zip(&mut best) {
            let run = time_solve(solver, executor, variant)?;
            if slot.as_ref().is_none_or(|b| run.wall < b.wall) {
                *slot = Some(run);
            }
        }
    }

    let mut rows = Vec::with_capacity(4);
    let mut solutions = Vec::with_capacity(4);
    for (variant, best) in variants.iter().zip(best) {
        let best = best.expect("repeat >= 1");
        let wall = best.wall.as_secs_f64().max(1e-9);
        let cpu = best.cpu.as_secs_f64();
        rows.push(BenchRow {
            variant: variant.name().to_string(),
            algorithm: variant.number(),
            threads: match variant.execution {
                crate::solver::Execution::Sequential => 1,
                crate::solver::Execution::Parallel => threads,
            },
            wall_time_s: wall,
            cpu_time_s: cpu,
            cpu_percent: 100.0 * cpu / wall,
            iterations: best.solution.iterations,
            converged: best.solution.converged,
        });
        solutions.push(best.solution);
    }

    let max_disagreement = check_agreement(&variants, &solutions)?;
    let t = |k: usize| rows[k].wall_time_s;
    let report = BenchReport {
        params: *solver.params(),
        repeat,
        speedups: Speedups {
            alg1_over_alg2: t(0) / t(1),
            alg1_over_alg3: t(0) / t(2),
            alg1_over_alg4: t(0) / t(3),
        },
        rows,
        max_disagreement,
        environment: Environment::current(),
    };
    Ok((report, solutions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::SolverOptions;

    fn small_solver() -> Solver {
        let params = ModelParams {
            n: 30,
            m_rad: 24,
            m_ang: 8,
            ..Default::default()
        };
        Solver::new(params, SolverOptions::default()).unwrap()
    }

    #[test]
    fn report_has_four_agreeing_rows() {
        let (report, sols) = run_bench(&small_solver(), Some(2), 1).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report
            .rows
            .iter()
            .all(|r| r.iterations == report.rows[0].iterations));
        assert!(report.rows.iter().all(|r| r.wall_time_s > 0.0));
        assert_eq!(report.max_disagreement, 0.0);
        assert_eq!(sols.len(), 4);
        let table = report.table();
        assert_eq!(table.lines().count(), 6);
        assert!(table.contains("4.indexed-par"));
    }

    #[test]
    fn disagreement_is_an_error() {
        let (_, mut sols) = run_bench(&small_solver(), Some(1), 1).unwrap();
        sols[2].b[0] += 1e-6;
        let err = check_agreement(&AlgorithmVariant::ALL, &sols).unwrap_err();
        assert!(matches!(
            err,
            Error::VariantDisagreement {
                b: "search-par",
                ..
            }
        ));
        sols[2].b[0] -= 1e-6;
        sols[3].iterations += 1;
        assert!(check_agreement(&AlgorithmVariant::ALL, &sols).is_err());
    }

    #[test]
    fn cpu_clock_advances() {
        let t0 = process_cpu_time();
        let mut x = 0.0f64;
        for i in 0..5_000_000 {
            x += (i as f64).sqrt();
        }
        assert!(x > 0.0);
        assert!(process_cpu_time() > t0);
    }
}
