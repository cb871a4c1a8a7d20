//! Lobachevsky function, ideal tetrahedron volumes and other hyperbolic measurements.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::GeometryError;
use crate::shape::angles_from_shape;

/// `|B_2k| / (2k (2k+1)!)` for `k = 1..=30`.
#[allow(clippy::excessive_precision)]
const CLAUSEN_COEFFS: [f64; 30] = [
    1.38888888888888881e-02,
    6.94444444444444444e-05,
    7.87351977828168297e-07,
    1.14822163433274551e-08,
    1.89788699889709990e-10,
    3.38730137095352120e-12,
    6.37263644318318076e-14,
    1.24620599129506715e-15,
    2.51054446089995455e-17,
    5.17825880609062320e-19,
    1.08873573683008492e-20,
    2.32574411430208708e-22,
    5.03519521314738965e-24,
    1.10264992943812150e-25,
    2.43865855090073440e-27,
    5.44014267885625274e-29,
    1.22283401312173518e-30,
    2.76726346896795083e-32,
    6.30009059183201355e-34,
    1.44208683884184764e-35,
    3.31709399915954276e-37,
    7.66391355792065838e-39,
    1.77787147338306586e-40,
    4.13960589823413751e-42,
    9.67155703608110231e-44,
    2.26671870167661231e-45,
    5.32795631132825422e-47,
    1.25572483895643359e-48,
    2.96700054224709407e-50,
    7.02678731760074243e-52,
];

/// Reduces an angle into `(-pi, pi]`.
fn reduce(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = x - two_pi * libm::floor(x / two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}

/// The Clausen function `Cl2(x) = -∫_0^x log|2 sin(t/2)| dt`.
pub fn clausen(x: f64) -> f64 {
    let x = reduce(x);
    if x == 0.0 || x.abs() == PI {
        return 0.0;
    }
    let x2 = x * x;
    let mut power = x * x2;
    let mut sum = x - x * libm::log(x.abs());
    for c in CLAUSEN_COEFFS {
        let term = c * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        power *= x2;
    }
    sum
}

/// The Lobachevsky function `Λ(θ) = -∫_0^θ log|2 sin t| dt`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen(2.0 * theta)
}

/// Volume of the ideal tetrahedron with shape `z`.
pub fn tet_volume(z: Complex64) -> Result<f64, GeometryError> {
    let angles = angles_from_shape(z)?;
    Ok(angles.as_array().into_iter().map(lobachevsky).sum())
}

/// Volume of the regular ideal tetrahedron.
pub fn regular_tet_volume() -> f64 {
    tet_volume(Complex64::from_polar(1.0, PI / 3.0)).expect("regular shape is valid")
}

/// `sinh(x) - x`, accurate for small `x`.
pub fn sinh_minus_identity(x: f64) -> f64 {
    if x.abs() < 1.0 {
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum: f64 = 0.0;
        let mut k = 3.0;
        while term.abs() > 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            sum += term;
            term *= x2 / ((k + 1.0) * (k + 2.0));
            k += 2.0;
        }
        sum
    } else {
        libm::sinh(x) - x
    }
}

/// Volume of a hyperbolic ball of radius `r`: `pi (sinh 2r - 2r)`.
pub fn ball_volume(radius: f64) -> Result<f64, GeometryError> {
    if !(radius >= 0.0) {
        return Err(GeometryError::NegativeRadius(radius));
    }
    Ok(PI * sinh_minus_identity(2.0 * radius))
}

/// Hyperbolic distance in the upper half plane from `(x, y)` to the vertical geodesic through 0.
pub fn dist_to_vertical(x: f64, y: f64) -> Result<f64, GeometryError> {
    if !(y > 0.0) || !(x >= 0.0) {
        return Err(GeometryError::BadHalfPlanePoint { x, y });
    }
    Ok(libm::asinh(x / y))
}
