use std::f64::consts::PI;

use crate::hydrogenics::spherical_harmonic_m0_cos;
use crate::quadrature::gauss_legendre;
use crate::{Error, Result};

/// Largest k for which [`theta_component`] is defined.
pub const THETA_K_MAX: u32 = 12;

/// Θ_{k,l}: the projection of cos^k(2θ)/sqrt(4π) onto Y_l^0, divided by
/// sqrt(2l+1).
///
/// Evaluated as 2π/sqrt(2l+1) ∫₀^π sin θ · cos^k(2θ)/sqrt(4π) · Y_l^0(θ) dθ
/// with a Gauss–Legendre rule in μ = cos θ that is exact for the degree-(2k+l)
/// polynomial integrand. Odd l, and l > 2k, vanish identically and return 0.
pub fn theta_component(k: u32, l: u32) -> Result<f64> {
    if k > THETA_K_MAX {
        return Err(Error::Domain(format!("theta_component needs k <= {THETA_K_MAX}, got {k}")));
    }
    if l % 2 == 1 || l > 2 * k {
        return Ok(0.0);
    }
    let nodes = (2 * k + l) as usize / 2 + 2;
    let rule = gauss_legendre(nodes)?;
    let y00 = 1.0 / (4.0 * PI).sqrt();
    let integral = rule.apply(|mu| {
        let cos2theta = 2.0 * mu * mu - 1.0;
        y00 * cos2theta.powi(k as i32) * spherical_harmonic_m0_cos(l, mu)
    });
    Ok(2.0 * PI * integral / ((2 * l + 1) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert!((theta_component(0, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((theta_component(1, 0).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!((theta_component(1, 2).unwrap() - 4.0 / 15.0).abs() < 1e-15);
        assert!((theta_component(2, 4).unwrap() - 32.0 / 315.0).abs() < 1e-15);
        assert!((theta_component(3, 6).unwrap() - 128.0 / 3003.0).abs() < 1e-15);
    }

    #[test]
    fn odd_l_is_exactly_zero() {
        for k in 0..=THETA_K_MAX {
            for l in (1..=25).step_by(2) {
                assert_eq!(theta_component(k, l).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn beyond_two_k_vanishes() {
        assert_eq!(theta_component(1, 4).unwrap(), 0.0);
        assert_eq!(theta_component(0, 2).unwrap(), 0.0);
    }

    #[test]
    fn k_too_large() {
        assert!(theta_component(13, 0).is_err());
    }
}
