//! Successive approximation for coupled nonlinear Fredholm equations of the
//! second kind,
//!
//! ```text
//! u(x) = f1(x) + ∫ [K1(x,t) F11(u,v) + K̄1(x,t) F12(u,v)] dt
//! v(x) = f2(x) + ∫ [K2(x,t) F21(u,v) + K̄2(x,t) F22(u,v)] dt
//! ```
//!
//! with optional weakly singular kernels `K̄(x,t) = |x − t|^(−α)`, `0 < α < 1`.
//!
//! Unknowns live on an external grid. Without singular kernels that grid is the
//! quadrature nodes themselves (plain Nyström). With singular kernels the
//! external points are the midpoints between nodes plus the interval ends, so
//! no evaluation ever hits `x = t`; node values are then read back through
//! brackets computed once, the same device the gap-equation solver uses.

use crate::error::{param, Result};
use crate::fixed_point::{successive_approximation, IterationControl};
use crate::grid::merge_brackets;
use crate::interpolation::lerp_at;
use crate::quadrature::QuadratureRule;

pub type Driver<'a> = Box<dyn Fn(f64) -> f64 + Sync + 'a>;
pub type Kernel<'a> = Box<dyn Fn(f64, f64) -> f64 + Sync + 'a>;
pub type Coupling<'a> = Box<dyn Fn(f64, f64) -> f64 + Sync + 'a>;

pub struct FredholmSystem<'a> {
    pub domain: (f64, f64),
    pub f1: Driver<'a>,
    pub f2: Driver<'a>,
    pub k1: Kernel<'a>,
    pub k2: Kernel<'a>,
    /// Exponents of `K̄1`, `K̄2`; `None` drops the singular part.
    pub singular: Option<(f64, f64)>,
    pub f11: Coupling<'a>,
    pub f12: Coupling<'a>,
    pub f21: Coupling<'a>,
    pub f22: Coupling<'a>,
}

impl<'a> FredholmSystem<'a> {
    /// A system with the given drivers and every integral term switched off.
    pub fn new(
        domain: (f64, f64),
        f1: impl Fn(f64) -> f64 + Sync + 'a,
        f2: impl Fn(f64) -> f64 + Sync + 'a,
    ) -> Self {
        Self {
            domain,
            f1: Box::new(f1),
            f2: Box::new(f2),
            k1: Box::new(|_, _| 0.0),
            k2: Box::new(|_, _| 0.0),
            singular: None,
            f11: Box::new(|_, _| 0.0),
            f12: Box::new(|_, _| 0.0),
            f21: Box::new(|_, _| 0.0),
            f22: Box::new(|_, _| 0.0),
        }
    }

    pub fn smooth_kernels(
        mut self,
        k1: impl Fn(f64, f64) -> f64 + Sync + 'a,
        k2: impl Fn(f64, f64) -> f64 + Sync + 'a,
    ) -> Self {
        self.k1 = Box::new(k1);
        self.k2 = Box::new(k2);
        self
    }

    pub fn singular_kernels(mut self, alpha1: f64, alpha2: f64) -> Self {
        self.singular = Some((alpha1, alpha2));
        self
    }

    pub fn couplings(
        mut self,
        f11: impl Fn(f64, f64) -> f64 + Sync + 'a,
        f12: impl Fn(f64, f64) -> f64 + Sync + 'a,
        f21: impl Fn(f64, f64) -> f64 + Sync + 'a,
        f22: impl Fn(f64, f64) -> f64 + Sync + 'a,
    ) -> Self {
        self.f11 = Box::new(f11);
        self.f12 = Box::new(f12);
        self.f21 = Box::new(f21);
        self.f22 = Box::new(f22);
        self
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(param("domain", format!("need a < b, got ({a}, {b})")));
        }
        if let Some((a1, a2)) = self.singular {
            for alpha in [a1, a2] {
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(param("alpha", format!("{alpha} outside (0, 1)")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FredholmSolution {
    /// External points the unknowns are stored at.
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl FredholmSolution {
    /// Max-norm distance from closed-form solutions.
    pub fn max_error(&self, u_exact: impl Fn(f64) -> f64, v_exact: impl Fn(f64) -> f64) -> f64 {
        self.x
            .iter()
            .zip(self.u.iter().zip(&self.v))
            .map(|(&x, (&u, &v))| (u - u_exact(x)).abs().max((v - v_exact(x)).abs()))
            .fold(0.0, f64::max)
    }
}

/// Midpoints between consecutive nodes plus both interval ends.
fn interleaved_points(rule: &QuadratureRule) -> Vec<f64> {
    let (a, b) = rule.interval;
    std::iter::once(a)
        .chain(rule.nodes.windows(2).map(|w| 0.5 * (w[0] + w[1])))
        .chain(std::iter::once(b))
        .collect()
}

/// Solves `sys` by successive approximation with `rule` replacing the integrals.
///
/// `u0` and `v0` are evaluated at the external points to seed the iteration.
pub fn solve_generic(
    sys: &FredholmSystem<'_>,
    rule: &QuadratureRule,
    u0: impl Fn(f64) -> f64,
    v0: impl Fn(f64) -> f64,
    tol: f64,
    cap: usize,
) -> Result<FredholmSolution> {
    sys.validate()?;
    if !(tol > 0.0) {
        return Err(param("tol", format!("must be positive, got {tol}")));
    }
    let (a, b) = sys.domain;
    if rule.nodes.iter().any(|&t| !(t > a && t < b)) {
        return Err(param(
            "nodes",
            "quadrature nodes must lie inside the domain",
        ));
    }

    let nodes = &rule.nodes;
    let x: Vec<f64> = match sys.singular {
        Some(_) => interleaved_points(rule),
        None => nodes.clone(),
    };
    let brackets = merge_brackets(&x, nodes);
    let node_value = |values: &[f64], j: usize| lerp_at(&x, values, brackets[j], nodes[j]);

    let f1: Vec<f64> = x.iter().map(|&xi| (sys.f1)(xi)).collect();
    let f2: Vec<f64> = x.iter().map(|&xi| (sys.f2)(xi)).collect();
    let kernel_rows = |k: &Kernel<'_>, alpha: Option<f64>| -> Vec<Vec<(f64, f64)>> {
        x.iter()
            .map(|&xi| {
                nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&t, &w)| {
                        let singular = alpha.map_or(0.0, |al| w * (xi - t).abs().powf(-al));
                        (w * k(xi, t), singular)
                    })
                    .collect()
            })
            .collect()
    };
    let rows1 = kernel_rows(&sys.k1, sys.singular.map(|s| s.0));
    let rows2 = kernel_rows(&sys.k2, sys.singular.map(|s| s.1));

    let ctl = IterationControl {
        tol,
        max_iter: cap.max(1),
        relaxation: 1.0,
    };
    let fp = successive_approximation(
        x.iter().map(|&xi| u0(xi)).collect(),
        x.iter().map(|&xi| v0(xi)).collect(),
        &ctl,
        |u, v| {
            let (un, vn): (Vec<f64>, Vec<f64>) = (0..nodes.len())
                .map(|j| (node_value(u, j), node_value(v, j)))
                .unzip();
            let g11: Vec<f64> = un.iter().zip(&vn).map(|(&p, &q)| (sys.f11)(p, q)).collect();
            let g12: Vec<f64> = un.iter().zip(&vn).map(|(&p, &q)| (sys.f12)(p, q)).collect();
            let g21: Vec<f64> = un.iter().zip(&vn).map(|(&p, &q)| (sys.f21)(p, q)).collect();
            let g22: Vec<f64> = un.iter().zip(&vn).map(|(&p, &q)| (sys.f22)(p, q)).collect();
            let contract = |row: &[(f64, f64)], smooth: &[f64], singular: &[f64]| -> f64 {
                row.iter()
                    .zip(smooth.iter().zip(singular))
                    .map(|(&(ks, kb), (&gs, &gb))| ks * gs + kb * gb)
                    .sum()
            };
            let u_next = f1
                .iter()
                .zip(&rows1)
                .map(|(&f, row)| f + contract(row, &g11, &g12))
                .collect();
            let v_next = f2
                .iter()
                .zip(&rows2)
                .map(|(&f, row)| f + contract(row, &g21, &g22))
                .collect();
            Ok((u_next, v_next))
        },
        |_, _, _, _, _| {},
    )?;
    Ok(FredholmSolution {
        x,
        u: fp.u,
        v: fp.v,
        iterations: fp.iterations,
        converged: fp.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    #[test]
    fn zero_kernels_return_drivers() {
        let sys = FredholmSystem::new((0.0, 1.0), |x| x.sin(), |x| 2.0 * x);
        let rule = gauss_legendre(16, 0.0, 1.0).unwrap();
        let sol = solve_generic(&sys, &rule, |_| 0.0, |_| 0.0, 1e-12, 50).unwrap();
        assert!(sol.converged);
        // One step produces the drivers, the next confirms a zero update.
        assert_eq!(sol.iterations, 2);
        assert!(sol.max_error(|x| x.sin(), |x| 2.0 * x) == 0.0);
        let once = solve_generic(&sys, &rule, |_| 0.0, |_| 0.0, 1e-12, 1).unwrap();
        assert_eq!(once.u, sol.u);
        assert_eq!(once.v, sol.v);
    }

    #[test]
    fn quadratic_self_coupling() {
        // u = 3x/4 + x ∫ t u² dt has the root u = x.
        let sys = FredholmSystem::new((0.0, 1.0), |x| x - x / 4.0, |_| 0.0)
            .smooth_kernels(|x, t| x * t, |_, _| 0.0)
            .couplings(|u, _| u * u, |_, _| 0.0, |_, _| 0.0, |_, _| 0.0);
        let rule = gauss_legendre(64, 0.0, 1.0).unwrap();
        let sol = solve_generic(&sys, &rule, |_| 0.0, |_| 0.0, 1e-12, 500).unwrap();
        assert!(sol.converged);
        assert!(sol.max_error(|x| x, |_| 0.0) < 1e-8);
    }

    #[test]
    fn singular_grid_never_hits_nodes() {
        let rule = gauss_legendre(9, 0.0, 1.0).unwrap();
        let x = interleaved_points(&rule);
        assert_eq!(x.len(), 10);
        for t in &rule.nodes {
            assert!(x.iter().all(|xi| xi != t));
        }
    }

    #[test]
    fn rejects_bad_alpha_and_tolerance() {
        let rule = gauss_legendre(4, 0.0, 1.0).unwrap();
        let sys = FredholmSystem::new((0.0, 1.0), |_| 0.0, |_| 0.0).singular_kernels(1.5, 0.5);
        assert!(solve_generic(&sys, &rule, |_| 0.0, |_| 0.0, 1e-8, 10).is_err());
        let sys = FredholmSystem::new((0.0, 1.0), |_| 0.0, |_| 0.0);
        assert!(solve_generic(&sys, &rule, |_| 0.0, |_| 0.0, 0.0, 10).is_err());
        let outside = gauss_legendre(4, 0.0, 2.0).unwrap();
        assert!(solve_generic(&sys, &outside, |_| 0.0, |_| 0.0, 1e-8, 10).is_err());
    }
}
