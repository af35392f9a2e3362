use crate::hydrogenics::{radial_wavefunction, spherical_harmonic_m0, AtomicState};
use crate::Result;

use super::Strain;

/// A_θ as a function of μ = cos θ.
#[inline]
pub fn strain_factor_cos(mu: f64, strain: Strain) -> f64 {
    let s = strain.value();
    let q = (1.0 - s) / (1.0 + s);
    let cos2 = mu * mu;
    let sin2 = (1.0 - cos2).max(0.0);
    (1.0 - s) / (cos2 + q * q * sin2).sqrt()
}

/// A_θ = (1−S_p) / sqrt(cos²θ + ((1−S_p)/(1+S_p))² sin²θ), the factor by which
/// the strain rescales the radial coordinate along polar angle θ.
pub fn strain_factor(theta: f64, strain: Strain) -> f64 {
    let s = strain.value();
    let q = (1.0 - s) / (1.0 + s);
    let (sin, cos) = theta.sin_cos();
    (1.0 - s) / (cos * cos + q * q * sin * sin).sqrt()
}

/// ψ′(r, θ) = R_{n₀,l₀}(r A_θ) Y_{l₀}^0(θ). Only the radial argument is mapped.
pub fn distorted_wavefunction(source: AtomicState, strain: Strain, r: f64, theta: f64) -> Result<f64> {
    source.require_axial()?;
    let a = strain_factor(theta, strain);
    Ok(radial_wavefunction(source, r * a) * spherical_harmonic_m0(source.l, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn st(s: f64) -> Strain {
        Strain::new(s).unwrap()
    }

    #[test]
    fn poles_and_equator() {
        assert!((strain_factor(0.0, st(0.1)) - 0.9).abs() < 1e-15);
        assert!((strain_factor(PI / 2.0, st(0.1)) - 1.1).abs() < 1e-15);
        for th in [0.0, 0.3, 1.2, PI] {
            assert_eq!(strain_factor(th, st(0.0)), 1.0);
        }
    }

    #[test]
    fn cos_form_agrees() {
        for th in [0.0, 0.2, 0.9, 1.5, 2.8] {
            let a = strain_factor(th, st(0.03));
            let b = strain_factor_cos(th.cos(), st(0.03));
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn undistorted_limit() {
        let src = AtomicState::axial(3, 2).unwrap();
        for (r, th) in [(0.5, 0.2), (4.0, 1.1), (9.0, 2.5)] {
            let v = distorted_wavefunction(src, st(0.0), r, th).unwrap();
            let e = radial_wavefunction(src, r) * spherical_harmonic_m0(2, th);
            assert_eq!(v, e);
        }
    }

    #[test]
    fn ground_state_on_axis() {
        let src = AtomicState::axial(1, 0).unwrap();
        let v = distorted_wavefunction(src, st(0.1), 1.0, 0.0).unwrap();
        let e = 2.0 * (-0.9f64).exp() / (4.0 * PI).sqrt();
        assert!((v - e).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonaxial_source() {
        let src = AtomicState::new(3, 1, 1).unwrap();
        assert!(distorted_wavefunction(src, st(0.0), 1.0, 0.5).is_err());
    }
}
