//! Physics ingredients of the discretized gap equation: Euclidean kinematics,
//! the Gaussian effective interaction, Ball-Chiu difference quotients and the
//! six integrand terms of the A and B equations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::grid::GridSpec;

/// Physical and numerical parameters of one gap-equation solve.
///
/// Units: `d` in GeV², `omega` and `m0` in GeV, momenta squared in GeV².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d: f64,
    pub omega: f64,
    pub m0: f64,
    pub z1: f64,
    pub xi: f64,
    pub n: usize,
    pub m_rad: usize,
    pub m_ang: usize,
    pub p2_min: f64,
    pub p2_max: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        let grid = GridSpec::default();
        Self {
            d: 0.550,
            omega: 0.678,
            m0: 0.0,
            z1: 1.0,
            xi: 0.005,
            n: grid.n_ext,
            m_rad: grid.m_rad,
            m_ang: grid.m_ang,
            p2_min: grid.p2_min,
            p2_max: grid.p2_max,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        // D = 0 switches the interaction off; the free theory is a valid test case.
        if !(self.d.is_finite() && self.d >= 0.0) {
            return Err(param("d", format!("must be non-negative, got {}", self.d)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(param(
                "omega",
                format!("must be positive, got {}", self.omega),
            ));
        }
        if !(self.m0.is_finite() && self.m0 >= 0.0) {
            return Err(param(
                "m0",
                format!("must be non-negative, got {}", self.m0),
            ));
        }
        if !self.z1.is_finite() {
            return Err(param("z1", "must be finite"));
        }
        if !(self.xi.is_finite() && self.xi > 0.0) {
            return Err(param("xi", format!("must be positive, got {}", self.xi)));
        }
        if self.n < 2 {
            return Err(param("n", "need at least 2 external points"));
        }
        if self.m_rad < 2 {
            return Err(param("m_rad", "need at least 2 radial nodes"));
        }
        if self.m_ang < 1 {
            return Err(param("m_ang", "need at least 1 angular node"));
        }
        if !(self.p2_min.is_finite() && self.p2_min > 0.0) {
            return Err(param(
                "p2_min",
                format!("must be positive, got {}", self.p2_min),
            ));
        }
        if !(self.p2_max.is_finite() && self.p2_max > self.p2_min) {
            return Err(param(
                "p2_max",
                format!("must exceed p2_min, got {}", self.p2_max),
            ));
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> GridSpec {
        GridSpec {
            n_ext: self.n,
            m_rad: self.m_rad,
            m_ang: self.m_ang,
            p2_min: self.p2_min,
            p2_max: self.p2_max,
        }
    }
}

/// Euclidean scalar products for `k = q − p`, `t = q + p`, with `z` the cosine
/// of the angle between `p` and `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub p2: f64,
    pub q2: f64,
    pub z: f64,
    pub k2: f64,
    pub t2: f64,
    pub pq: f64,
    pub pt: f64,
    pub qt: f64,
    pub kp: f64,
    pub kq: f64,
    pub kt: f64,
}

#[inline(always)]
pub fn kinematics(p2: f64, q2: f64, z: f64) -> Kinematics {
    let rz = (p2 * q2).sqrt() * z;
    Kinematics {
        p2,
        q2,
        z,
        k2: p2 + q2 - 2.0 * rz,
        t2: p2 + q2 + 2.0 * rz,
        pq: rz,
        pt: p2 + rz,
        qt: q2 + rz,
        kp: rz - p2,
        kq: q2 - rz,
        kt: q2 - p2,
    }
}

/// Gaussian infrared interaction `(8π²/ω⁴)·D·exp(−k²/ω²)`, in GeV⁻².
#[inline(always)]
pub fn effective_interaction(k2: f64, params: &ModelParams) -> f64 {
    let w2 = params.omega * params.omega;
    8.0 * PI * PI / (w2 * w2) * params.d * (-k2 / w2).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quotients {
    /// `(A(p²) + A(q²)) / 2`
    pub sigma_a: f64,
    /// `(A(q²) − A(p²)) / (q² − p²)`
    pub delta_a: f64,
    /// `(B(q²) − B(p²)) / (q² − p²)`
    pub delta_b: f64,
}

#[inline(always)]
pub(crate) fn quotients_unchecked(
    ap: f64,
    aq: f64,
    bp: f64,
    bq: f64,
    p2: f64,
    q2: f64,
) -> Quotients {
    let inv = 1.0 / (q2 - p2);
    Quotients {
        sigma_a: 0.5 * (ap + aq),
        delta_a: (aq - ap) * inv,
        delta_b: (bq - bp) * inv,
    }
}

/// Ball-Chiu difference quotients. Fails for `p2 == q2`.
pub fn finite_quotients(ap: f64, aq: f64, bp: f64, bq: f64, p2: f64, q2: f64) -> Result<Quotients> {
    if p2 == q2 {
        return Err(Error::DegeneratePair(p2));
    }
    Ok(quotients_unchecked(ap, aq, bp, bq, p2, q2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandTerms {
    pub ia1: f64,
    pub ia2: f64,
    pub ia3: f64,
    pub ib1: f64,
    pub ib2: f64,
    pub ib3: f64,
}

impl IntegrandTerms {
    pub fn a_sum(&self) -> f64 {
        self.ia1 + self.ia2 + self.ia3
    }

    pub fn b_sum(&self) -> f64 {
        self.ib1 + self.ib2 + self.ib3
    }

    pub fn is_finite(&self) -> bool {
        [self.ia1, self.ia2, self.ia3, self.ib1, self.ib2, self.ib3]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// The dressing-independent factors of the six integrand terms. Each term is
/// one of these times a product of interpolated dressing functions and a
/// difference quotient, e.g. `IA1 = −B(q²)·ΔB·a1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TermGeometry {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl TermGeometry {
    #[inline(always)]
    pub fn at(kin: &Kinematics) -> Self {
        let Kinematics {
            p2,
            q2,
            k2,
            t2,
            pq,
            pt,
            qt,
            kp,
            kq,
            kt,
            ..
        } = *kin;
        let inv_k2 = 1.0 / k2;
        let inv_p2 = 1.0 / p2;
        Self {
            a1: (k2 * pt - kp * kt) * inv_k2 * inv_p2,
            a2: -0.5
                * (p2 * qt * k2 + q2 * pt * k2 - q2 * kp * kt - p2 * kq * kt)
                * inv_k2
                * inv_p2,
            a3: (k2 * pq + 2.0 * kq * kp) * inv_k2 * inv_p2,
            b1: -(qt * k2 - kq * kt) * inv_k2,
            b2: 3.0,
            b3: 0.5 * (k2 * t2 - kt * kt) * inv_k2,
        }
    }

    /// `self + w · other`, component-wise.
    #[inline(always)]
    pub fn add_scaled(&mut self, w: f64, other: &Self) {
        self.a1 += w * other.a1;
        self.a2 += w * other.a2;
        self.a3 += w * other.a3;
        self.b1 += w * other.b1;
        self.b2 += w * other.b2;
        self.b3 += w * other.b3;
    }

    /// Contracts the geometry with the dressing functions at `q²`.
    #[inline(always)]
    pub fn terms(&self, aq: f64, bq: f64, quo: &Quotients) -> IntegrandTerms {
        IntegrandTerms {
            ia1: -bq * quo.delta_b * self.a1,
            ia2: aq * quo.delta_a * self.a2,
            ia3: aq * quo.sigma_a * self.a3,
            ib1: aq * quo.delta_b * self.b1,
            ib2: bq * quo.sigma_a * self.b2,
            ib3: bq * quo.delta_a * self.b3,
        }
    }
}

#[inline(always)]
pub(crate) fn terms_unchecked(
    kin: &Kinematics,
    aq: f64,
    bq: f64,
    quo: &Quotients,
) -> IntegrandTerms {
    TermGeometry::at(kin).terms(aq, bq, quo)
}

/// The six integrand terms at one `(p², q², z)` point.
pub fn integrand_terms(
    kin: &Kinematics,
    ap: f64,
    aq: f64,
    bp: f64,
    bq: f64,
) -> Result<IntegrandTerms> {
    if !(kin.k2 > 0.0) {
        return Err(Error::KinematicSingularity {
            p2: kin.p2,
            q2: kin.q2,
            z: kin.z,
            k2: kin.k2,
        });
    }
    let quo = finite_quotients(ap, aq, bp, bq, kin.p2, kin.q2)?;
    Ok(terms_unchecked(kin, aq, bq, &quo))
}

/// `d⁴q/(2π)⁴` reduced to `s = ln q²` and `z = cos θ` for integrands that
/// depend on `(q², z)` only. Multiplies `ds · √(1−z²) dz`.
#[inline(always)]
pub fn radial_measure(q2: f64) -> f64 {
    0.5 * q2 * q2 / (4.0 * PI * PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kinematics_unit_orthogonal() {
        let k = kinematics(1.0, 1.0, 0.0);
        assert_eq!((k.k2, k.t2, k.pq, k.pt, k.qt), (2.0, 2.0, 0.0, 1.0, 1.0));
        assert_eq!((k.kp, k.kq, k.kt), (-1.0, 1.0, 0.0));
    }

    #[test]
    fn kinematics_collinear_equal() {
        let k = kinematics(2.5, 2.5, 1.0);
        assert_eq!(k.k2, 0.0);
        assert_eq!(k.kt, 0.0);
    }

    #[test]
    fn kinematics_identities() {
        for &(p2, q2, z) in &[(0.3, 7.0, -0.4), (1e-4, 2.0, 0.99), (5.0, 5.5, 0.0)] {
            let k = kinematics(p2, q2, z);
            assert_relative_eq!(k.k2 + k.t2, 2.0 * (p2 + q2), max_relative = 1e-15);
            assert_eq!(k.kt, q2 - p2);
        }
    }

    #[test]
    fn interaction_values() {
        let p = ModelParams::default();
        let g0 = effective_interaction(0.0, &p);
        let want = 8.0 * PI * PI * 0.550 / 0.678f64.powi(4);
        assert_relative_eq!(g0, want, max_relative = 1e-14);
        assert_relative_eq!(g0, 205.5, max_relative = 1e-3);
        let w2 = p.omega * p.omega;
        assert_relative_eq!(
            effective_interaction(w2, &p),
            g0 / 1f64.exp(),
            max_relative = 1e-14
        );
        assert_eq!(effective_interaction(1e6, &p), 0.0);
    }

    #[test]
    fn quotient_examples() {
        let q = finite_quotients(1.0, 1.0, 0.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!((q.sigma_a, q.delta_a, q.delta_b), (1.0, 0.0, 0.0));
        let q = finite_quotients(1.0, 3.0, 0.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(q.delta_a, 2.0);
        let q = finite_quotients(1.2, 1.2, 0.1, 0.4, 1.0, 4.0).unwrap();
        assert_eq!(q.sigma_a, 1.2);
        assert_eq!(q.delta_a, 0.0);
        assert_relative_eq!(q.delta_b, 0.1, max_relative = 1e-15);
        assert_eq!(
            finite_quotients(1.0, 1.0, 1.0, 1.0, 2.0, 2.0),
            Err(Error::DegeneratePair(2.0))
        );
    }

    #[test]
    fn quotients_are_symmetric() {
        let a = finite_quotients(1.1, 1.7, 0.3, 0.05, 0.2, 3.0).unwrap();
        let b = finite_quotients(1.7, 1.1, 0.05, 0.3, 3.0, 0.2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bare_vertex_limit() {
        // A ≡ 1, B ≡ 0 near p2 = q2 = 1, z = 0.
        let kin = kinematics(1.0, 1.0 + 1e-9, 0.0);
        let t = integrand_terms(&kin, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(t.ia3, -1.0, epsilon = 1e-8);
        assert_eq!([t.ia1, t.ia2, t.ib1, t.ib2, t.ib3], [0.0; 5]);
    }

    #[test]
    fn ib2_with_unit_dressing() {
        let kin = kinematics(0.5, 2.0, 0.3);
        let t = integrand_terms(&kin, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(t.ib2, 3.0);
    }

    #[test]
    fn orthogonal_equal_momenta_reduce() {
        // z = 0, p2 = q2: kt = 0. Quotients supplied directly since p2 = q2.
        let kin = kinematics(1.5, 1.5, 0.0);
        let quo = Quotients {
            sigma_a: 1.1,
            delta_a: 0.2,
            delta_b: -0.7,
        };
        let (aq, bq) = (1.3, 0.4);
        let t = terms_unchecked(&kin, aq, bq, &quo);
        assert_relative_eq!(t.ib1, -aq * kin.qt * quo.delta_b, max_relative = 1e-15);
        assert_relative_eq!(
            t.ia1,
            -(bq / kin.p2) * kin.pt * quo.delta_b,
            max_relative = 1e-15
        );
    }

    #[test]
    fn terms_invariant_under_k_flip() {
        for &(p2, q2, z) in &[(0.3, 2.0, 0.4), (4.0, 0.01, -0.9), (1.0, 1.2, 0.0)] {
            let kin = kinematics(p2, q2, z);
            let flipped = Kinematics {
                kp: -kin.kp,
                kq: -kin.kq,
                kt: -kin.kt,
                ..kin
            };
            let quo = finite_quotients(1.2, 0.9, 0.3, 0.1, p2, q2).unwrap();
            let a = terms_unchecked(&kin, 0.9, 0.1, &quo);
            let b = terms_unchecked(&flipped, 0.9, 0.1, &quo);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bare_vertex_zeros_everywhere() {
        for &(p2, q2, z) in &[(0.3, 2.0, 0.4), (4.0, 0.01, -0.9), (1e-5, 1e3, 0.7)] {
            let kin = kinematics(p2, q2, z);
            let t = integrand_terms(&kin, 1.4, 1.4, 0.2, 0.2).unwrap();
            assert_eq!([t.ia1, t.ia2, t.ib1, t.ib3], [0.0; 4]);
            assert!(t.is_finite());
        }
    }

    #[test]
    fn interaction_positive_and_decreasing() {
        let p = ModelParams::default();
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let g = effective_interaction(i as f64 * 0.05, &p);
            assert!(g > 0.0 && g < prev);
            prev = g;
        }
    }

    #[test]
    fn singular_kinematics_rejected() {
        let kin = kinematics(1.0, 1.0, 1.0);
        assert!(matches!(
            integrand_terms(&kin, 1.0, 1.0, 1.0, 1.0),
            Err(Error::KinematicSingularity { .. })
        ));
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::default().validate().is_ok());
        let bad = ModelParams {
            xi: -1.0,
            ..Default::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::Parameter { key: "xi", .. })
        ));
        let bad = ModelParams {
            omega: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
