//! Successive-approximation driver shared by the gap-equation solver and the
//! generic Fredholm solver.

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationControl {
    /// Both max-norm updates must fall strictly below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Mixing weight of the new iterate; 1.0 is plain substitution.
    pub relaxation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Iterates `(u, v) <- step(u, v)` until both updates are below `ctl.tol` in
/// max-norm or `ctl.max_iter` steps were taken. `observe` sees every new
/// iterate together with its update sizes.
pub fn successive_approximation<S, O>(
    u0: Vec<f64>,
    v0: Vec<f64>,
    ctl: &IterationControl,
    mut step: S,
    mut observe: O,
) -> Result<FixedPoint>
where
    S: FnMut(&[f64], &[f64]) -> Result<(Vec<f64>, Vec<f64>)>,
    O: FnMut(usize, &[f64], &[f64], f64, f64),
{
    let (mut u, mut v) = (u0, v0);
    for n in 1..=ctl.max_iter {
        let (mut u_next, mut v_next) = step(&u, &v)?;
        if ctl.relaxation != 1.0 {
            let w = ctl.relaxation;
            for (new, old) in u_next.iter_mut().zip(&u) {
                *new = w * *new + (1.0 - w) * old;
            }
            for (new, old) in v_next.iter_mut().zip(&v) {
                *new = w * *new + (1.0 - w) * old;
            }
        }
        let du = max_abs_diff(&u_next, &u);
        let dv = max_abs_diff(&v_next, &v);
        observe(n, &u_next, &v_next, du, dv);
        u = u_next;
        v = v_next;
        if du < ctl.tol && dv < ctl.tol {
            return Ok(FixedPoint {
                u,
                v,
                iterations: n,
                converged: true,
            });
        }
    }
    Ok(FixedPoint {
        u,
        v,
        iterations: ctl.max_iter,
        converged: false,
    })
}
