//! Ideal tetrahedron shapes, dihedral angles, thickness and gluing equations.
//!
//! A tetrahedron with shape `z` carries `z` on edges 01 and 23,
//! `1/(1-z)` on edges 02 and 13, and `(z-1)/z` on edges 03 and 12.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::GeometryError;
use crate::triangulation::Triangulation;

/// Slack allowed above pi/3 when reading a user-supplied theta0.
pub const THETA_SLACK: f64 = 1e-9;

/// Default tolerance on gluing-equation residuals.
pub const GLUING_TOLERANCE: f64 = 1e-9;

/// Dihedral angles at edges 01, 02 and 03 (equal to those at 23, 13, 12).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DihedralAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DihedralAngles {
    pub fn min(self) -> f64 {
        self.alpha.min(self.beta).min(self.gamma)
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

fn check_upper_half_plane(z: Complex64) -> Result<(), GeometryError> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::NonPositiveImaginary { re: z.re, im: z.im })
    }
}

/// The three shape parameters `(z, 1/(1-z), (z-1)/z)`.
pub fn shape_parameters(z: Complex64) -> [Complex64; 3] {
    let one = Complex64::new(1.0, 0.0);
    [z, one / (one - z), (z - one) / z]
}

/// Shape parameter carried by edge `edge` (edge numbering 01, 02, 03, 12, 13, 23).
pub fn edge_parameter(z: Complex64, edge: usize) -> Complex64 {
    const PAIR: [usize; 6] = [0, 1, 2, 2, 1, 0];
    shape_parameters(z)[PAIR[edge]]
}

pub fn angles_from_shape(z: Complex64) -> Result<DihedralAngles, GeometryError> {
    check_upper_half_plane(z)?;
    let [a, b, c] = shape_parameters(z);
    Ok(DihedralAngles { alpha: a.arg(), beta: b.arg(), gamma: c.arg() })
}

/// Accepts theta0 in (0, pi/3], rounding values within [`THETA_SLACK`] above pi/3 down.
pub fn validate_theta0(theta0: f64) -> Result<f64, GeometryError> {
    let cap = PI / 3.0;
    if !(theta0 > 0.0) || theta0 > cap + THETA_SLACK {
        return Err(GeometryError::ThetaOutOfRange(theta0));
    }
    Ok(theta0.min(cap))
}

/// One shape per tetrahedron, all in the upper half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeAssignment {
    shapes: Vec<Complex64>,
}

impl ShapeAssignment {
    pub fn new(shapes: Vec<Complex64>) -> Result<Self, GeometryError> {
        for &z in &shapes {
            check_upper_half_plane(z)?;
        }
        Ok(ShapeAssignment { shapes })
    }

    /// Every tetrahedron regular: `z = exp(i pi/3)`.
    pub fn regular(tet_count: usize) -> Self {
        ShapeAssignment { shapes: alloc::vec![Complex64::from_polar(1.0, PI / 3.0); tet_count] }
    }

    pub fn shapes(&self) -> &[Complex64] {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn angles(&self) -> Vec<DihedralAngles> {
        self.shapes.iter().map(|&z| angles_from_shape(z).expect("shapes are validated")).collect()
    }

    pub fn min_angle(&self) -> f64 {
        self.angles().into_iter().map(DihedralAngles::min).fold(f64::INFINITY, f64::min)
    }

    pub fn check_matches(&self, tri: &Triangulation) -> Result<(), GeometryError> {
        if self.shapes.len() == tri.tet_count() {
            Ok(())
        } else {
            Err(GeometryError::ShapeCount { expected: tri.tet_count(), got: self.shapes.len() })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThicknessReport {
    pub is_thick: bool,
    pub min_angle: f64,
}

/// Whether every dihedral angle is at least `theta0`.
pub fn check_thickness(shapes: &ShapeAssignment, theta0: f64) -> Result<ThicknessReport, GeometryError> {
    let theta0 = validate_theta0(theta0)?;
    let min_angle = shapes.min_angle();
    Ok(ThicknessReport { is_thick: min_angle >= theta0 - 1e-12, min_angle })
}

/// Largest `|sum of log parameters - 2 pi i|` over interior edge classes.
pub fn gluing_residual(tri: &Triangulation, shapes: &ShapeAssignment) -> Result<f64, GeometryError> {
    shapes.check_matches(tri)?;
    let target = Complex64::new(0.0, 2.0 * PI);
    let mut worst: f64 = 0.0;
    for class in tri.edge_classes().iter().filter(|c| !c.boundary) {
        let sum: Complex64 =
            class.incidences.iter().map(|&(tet, edge)| edge_parameter(shapes.shapes[tet], edge).ln()).sum();
        worst = worst.max((sum - target).norm());
    }
    Ok(worst)
}
