//! Piecewise-linear interpolation of the dressing functions at internal nodes.
//!
//! Two strategies share one linear formula and differ only in how the bracket
//! is found: [`interp_search`] bisects the external grid on every call, while
//! [`interp_indexed`] reads the bracket stored in the [`MomentumGrid`].

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::grid::MomentumGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InterpStrategy {
    SearchBased,
    PrecomputedIndex,
}

#[cfg(test)]
thread_local! {
    static COMPARISONS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

#[inline(always)]
fn knot_le(knot: f64, query: f64) -> bool {
    #[cfg(test)]
    COMPARISONS.with(|c| c.set(c.get() + 1));
    knot <= query
}

/// Bracket of `query` in `knots`: the `i` with `knots[i] <= query < knots[i+1]`,
/// `len - 1` at or above the last knot, `None` below the first.
#[inline]
pub fn bracket_search(knots: &[f64], query: f64) -> Option<usize> {
    let last = knots.len() - 1;
    if !knot_le(knots[0], query) {
        return None;
    }
    if knot_le(knots[last], query) {
        return Some(last);
    }
    // Invariant: knots[lo] <= query < knots[hi].
    let (mut lo, mut hi) = (0, last);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if knot_le(knots[mid], query) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// The linear formula once the bracket `i` is known.
#[inline(always)]
pub(crate) fn lerp_at(knots: &[f64], values: &[f64], i: usize, query: f64) -> f64 {
    if i + 1 == knots.len() {
        return values[i];
    }
    values[i] + (query - knots[i]) * (values[i + 1] - values[i]) / (knots[i + 1] - knots[i])
}

/// Search-based interpolation without input validation, for hot loops whose
/// inputs were validated once up front.
#[inline]
pub(crate) fn interp_search_unchecked(knots: &[f64], values: &[f64], query: f64) -> f64 {
    match bracket_search(knots, query) {
        Some(i) => lerp_at(knots, values, i, query),
        None => values[0],
    }
}

/// Piecewise-linear interpolation with a bisection "finding step".
///
/// Queries at or beyond the last knot return the last value; queries below the
/// first knot are clamped to the first value.
pub fn interp_search(knots: &[f64], values: &[f64], query: f64) -> Result<f64> {
    if knots.len() < 2 {
        return Err(param("knots", "need at least 2 knots"));
    }
    if knots.len() != values.len() {
        return Err(param(
            "values",
            format!(
                "length {} does not match {} knots",
                values.len(),
                knots.len()
            ),
        ));
    }
    if !knots.windows(2).all(|w| w[0] < w[1]) {
        return Err(param("knots", "must be strictly increasing"));
    }
    Ok(interp_search_unchecked(knots, values, query))
}

#[inline]
pub(crate) fn interp_indexed_unchecked(grid: &MomentumGrid, values: &[f64], j: usize) -> f64 {
    let i = grid.bracket_idx()[j];
    lerp_at(grid.p2_ext(), values, i, grid.q2_int()[j])
}

/// Value at internal node `j` using the bracket stored in the grid.
pub fn interp_indexed(grid: &MomentumGrid, values: &[f64], j: usize) -> Result<f64> {
    if values.len() != grid.n_ext() {
        return Err(param(
            "values",
            format!(
                "length {} does not match {} external points",
                values.len(),
                grid.n_ext()
            ),
        ));
    }
    if j >= grid.m_rad() {
        return Err(param(
            "j",
            format!("{j} out of range for {} internal nodes", grid.m_rad()),
        ));
    }
    Ok(interp_indexed_unchecked(grid, values, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use proptest::prelude::*;

    fn comparisons() -> u64 {
        COMPARISONS.with(|c| c.get())
    }

    #[test]
    fn linear_reproduction_and_clamps() {
        let k = [1.0, 2.0, 3.0];
        let v = [10.0, 20.0, 30.0];
        assert_eq!(interp_search(&k, &v, 2.5).unwrap(), 25.0);
        assert_eq!(interp_search(&k, &v, 3.7).unwrap(), 30.0);
        assert_eq!(interp_search(&k, &v, 0.5).unwrap(), 10.0);
        for (i, &x) in k.iter().enumerate() {
            assert_eq!(interp_search(&k, &v, x).unwrap(), v[i]);
        }
    }

    #[test]
    fn search_rejects_bad_inputs() {
        assert!(interp_search(&[1.0], &[1.0], 1.0).is_err());
        assert!(interp_search(&[1.0, 2.0], &[1.0], 1.0).is_err());
        assert!(interp_search(&[2.0, 1.0], &[1.0, 2.0], 1.5).is_err());
    }

    #[test]
    fn indexed_rejects_bad_inputs() {
        let g = build_grid(10, 8, 2, 1e-2, 1e2).unwrap();
        assert!(interp_indexed(&g, &[0.0; 9], 0).is_err());
        assert!(interp_indexed(&g, &[0.0; 10], 8).is_err());
    }

    #[test]
    fn indexed_constant_and_linear() {
        let g = build_grid(40, 30, 2, 1e-3, 1e3).unwrap();
        let c = vec![0.37; 40];
        let line: Vec<f64> = g.p2_ext().iter().map(|p| 2.0 * p - 1.0).collect();
        for j in 0..g.m_rad() {
            assert_eq!(interp_indexed(&g, &c, j).unwrap(), 0.37);
            let q = g.q2_int()[j];
            if q < *g.p2_ext().last().unwrap() {
                let got = interp_indexed(&g, &line, j).unwrap();
                let want = 2.0 * q - 1.0;
                assert!((got - want).abs() <= 8.0 * f64::EPSILON * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn indexed_makes_no_grid_comparisons() {
        let g = build_grid(150, 100, 4, 1e-6, 1e4).unwrap();
        let v: Vec<f64> = (0..150).map(|i| i as f64).collect();
        let before = comparisons();
        for j in 0..g.m_rad() {
            interp_indexed(&g, &v, j).unwrap();
        }
        assert_eq!(comparisons(), before);
        for j in 0..g.m_rad() {
            interp_search(g.p2_ext(), &v, g.q2_int()[j]).unwrap();
        }
        assert!(comparisons() - before >= g.m_rad() as u64);
    }

    #[test]
    fn merge_brackets_match_bisection() {
        let g = build_grid(150, 100, 4, 1e-6, 1e4).unwrap();
        for (j, &q) in g.q2_int().iter().enumerate() {
            assert_eq!(bracket_search(g.p2_ext(), q), Some(g.bracket_idx()[j]));
        }
    }

    proptest! {
        #[test]
        fn no_overshoot_between_knots(
            a in -10.0f64..10.0, b in -10.0f64..10.0, t in 0.0f64..1.0,
        ) {
            let k = [1.0, 2.0];
            let got = interp_search(&k, &[a, b], 1.0 + t).unwrap();
            prop_assert!(got >= a.min(b) - 1e-12 && got <= a.max(b) + 1e-12);
        }
    }
}
