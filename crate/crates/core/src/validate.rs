//! Checks of the generalized S-type conditions
//! `phi(0) = 0`, `phi(1/2) = ln(alpha N)`, `max phi' / N <= C`,
//! and the mesh-characterising quantity `max |psi'|` with `psi = exp(-phi)`.

use libm::{exp, fabs, log, pow};

use crate::generating::GeneratingFunction;
use crate::MeshParams;

/// Number of uniform samples on `[0, 1/2]` (endpoints included).
pub const SAMPLES: usize = 10_001;

pub const ORIGIN_TOL: f64 = 1e-12;
pub const ENDPOINT_TOL: f64 = 1e-10;

fn sample_points() -> impl Iterator<Item = f64> {
    let last = (SAMPLES - 1) as f64;
    (0..SAMPLES).map(move |j| 0.5 * j as f64 / last)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub zero_at_origin: bool,
    pub endpoint_matches_alpha: bool,
    pub derivative_bounded: bool,
    pub monotone: bool,
    pub phi_at_origin: f64,
    pub phi_at_half: f64,
    /// Largest sampled `phi'`.
    pub max_derivative: f64,
    /// `exp(phi(1/2)) / N`.
    pub measured_alpha: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.zero_at_origin && self.endpoint_matches_alpha && self.derivative_bounded && self.monotone
    }
}

/// Check `phi` against the generalized S-type conditions with bound `c_bound`.
/// Failures are reported, never raised.
pub fn validate_generalized(
    phi: &dyn GeneratingFunction,
    n: usize,
    c_bound: f64,
) -> ValidationReport {
    let nf = n as f64;
    let phi_at_origin = phi.value(0.0);
    let phi_at_half = phi.value(0.5);

    let mut max_derivative = f64::NEG_INFINITY;
    let mut monotone = true;
    let mut prev = f64::NEG_INFINITY;
    for t in sample_points() {
        let v = phi.value(t);
        if v < prev || !v.is_finite() {
            monotone = false;
        }
        prev = v;
        max_derivative = max_derivative.max(phi.derivative(t));
    }

    ValidationReport {
        zero_at_origin: fabs(phi_at_origin) <= ORIGIN_TOL,
        endpoint_matches_alpha: fabs(phi_at_half - log(phi.alpha() * nf)) <= ENDPOINT_TOL,
        derivative_bounded: max_derivative / nf <= c_bound,
        monotone,
        phi_at_origin,
        phi_at_half,
        max_derivative,
        measured_alpha: exp(phi_at_half) / nf,
    }
}

/// `max |psi'(t)|` over `[0, 1/2]` with `psi' = -phi' exp(-phi)`, by dense sampling.
pub fn max_abs_psi_derivative(phi: &dyn GeneratingFunction) -> f64 {
    sample_points()
        .map(|t| fabs(phi.derivative(t) * exp(-phi.value(t))))
        .fold(0.0, f64::max)
}

/// Layer function `exp(-(beta/eps) x)` at the transition point
/// `x = (sigma eps/beta) phi(1/2)`.
pub fn decay_at_transition(params: &MeshParams, phi: &dyn GeneratingFunction) -> f64 {
    let x = params.layer_scale() * phi.value(0.5);
    exp(-(params.beta / params.epsilon) * x)
}

/// `(alpha N)^{-sigma}`.
pub fn predicted_decay(alpha: f64, n: usize, sigma: f64) -> f64 {
    pow(alpha * n as f64, -sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generating::{BakhvalovS, ExpMapped, Shishkin};

    struct Affine {
        slope: f64,
    }

    // psi = 1 - slope t is affine, so |psi'| = slope everywhere
    impl GeneratingFunction for Affine {
        fn value(&self, t: f64) -> f64 {
            -libm::log(1.0 - self.slope * t)
        }
        fn derivative(&self, t: f64) -> f64 {
            self.slope / (1.0 - self.slope * t)
        }
        fn alpha(&self) -> f64 {
            1.0
        }
        fn label(&self) -> &str {
            "affine-psi"
        }
        fn n_cells(&self) -> usize {
            8
        }
    }

    #[test]
    fn exp_mapped_is_generalized_with_half_alpha() {
        for n in [8, 64, 1024] {
            let r = validate_generalized(&ExpMapped::new(n), n, 1.0);
            assert!(r.is_valid());
            assert!((r.measured_alpha - 0.5).abs() < 1e-12);
            assert!((r.max_derivative - (n as f64 - 2.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn bs_is_stype() {
        // max phi_BS' = 2(N - 1), so the bound constant has to be 2
        let r = validate_generalized(&BakhvalovS::new(64), 64, 2.0);
        assert!(r.is_valid());
        assert!((r.max_derivative - 126.0).abs() < 1e-9);
        assert!(!validate_generalized(&BakhvalovS::new(64), 64, 1.0).derivative_bounded);
        assert!((r.measured_alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shishkin_is_stype() {
        let n = 256;
        let r = validate_generalized(&Shishkin::new(n), n, 1.0);
        assert!(r.is_valid());
        assert!((r.measured_alpha - 1.0).abs() < 1e-12);
        assert!((r.max_derivative / n as f64 - 2.0 * (n as f64).ln() / n as f64).abs() < 1e-14);
    }

    #[test]
    fn wrong_alpha_is_reported() {
        struct Lying(ExpMapped);
        impl GeneratingFunction for Lying {
            fn value(&self, t: f64) -> f64 {
                self.0.value(t)
            }
            fn derivative(&self, t: f64) -> f64 {
                self.0.derivative(t)
            }
            fn alpha(&self) -> f64 {
                1.0
            }
            fn label(&self) -> &str {
                "lying"
            }
            fn n_cells(&self) -> usize {
                64
            }
        }
        let r = validate_generalized(&Lying(ExpMapped::new(64)), 64, 1.0);
        assert!(!r.endpoint_matches_alpha);
        assert!(!r.is_valid());
        // bound too tight for phi' = N - 2
        assert!(!validate_generalized(&ExpMapped::new(64), 64, 0.5).derivative_bounded);
    }

    #[test]
    fn psi_derivative_maxima() {
        assert!((max_abs_psi_derivative(&BakhvalovS::new(64)) - 1.968_75).abs() < 1e-6);
        assert!((max_abs_psi_derivative(&ExpMapped::new(64)) - 1.9375).abs() < 1e-6);
        assert!((max_abs_psi_derivative(&Affine { slope: 1.5 }) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn decay_values() {
        let p = MeshParams::new(1e-6, 2.0, 1.0, 100).unwrap();
        let d = decay_at_transition(&p, &BakhvalovS::new(100));
        assert!((d - 1e-4).abs() / 1e-4 < 1e-12);

        let p = MeshParams::new(1e-6, 2.0, 1.0, 64).unwrap();
        let d_exp = decay_at_transition(&p, &ExpMapped::new(64));
        assert!((d_exp - 9.765_625e-4).abs() / 9.765_625e-4 < 1e-12);
        let d_bs = decay_at_transition(&p, &BakhvalovS::new(64));
        assert!((d_bs / d_exp - 0.25).abs() < 1e-12);
    }
}
