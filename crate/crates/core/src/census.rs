//! Small standard triangulations used as fixtures.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Perm4;
use crate::triangulation::{Gluing, Triangulation};

/// Builds a closed triangulation from one direction of each gluing.
///
/// # Panics
/// If the table is malformed; inputs here are compile-time fixtures.
pub fn from_pairs(tet_count: usize, pairs: &[(usize, usize, usize, &str)]) -> Triangulation {
    let mut gluings = vec![[None; 4]; tet_count];
    for &(tet, face, target, perm) in pairs {
        let perm: Perm4 = perm.parse().expect("fixture permutation");
        gluings[tet][face] = Some(Gluing::new(target, perm));
        gluings[target][perm.apply(face)] = Some(Gluing::new(tet, perm.inverse()));
    }
    Triangulation::new(gluings).expect("fixture table")
}

/// The two-tetrahedron figure-eight knot complement (census m004).
pub fn figure_eight() -> Triangulation {
    from_pairs(2, &[(0, 0, 1, "1302"), (0, 1, 1, "2031"), (0, 2, 1, "0321"), (0, 3, 1, "2103")])
}

/// The figure-eight sister manifold (census m003).
pub fn figure_eight_sibling() -> Triangulation {
    from_pairs(2, &[(0, 0, 1, "0132"), (0, 1, 1, "2103"), (0, 2, 1, "0321"), (0, 3, 1, "1023")])
}

/// The one-tetrahedron Gieseking manifold (non-orientable, one cusp).
pub fn gieseking() -> Triangulation {
    from_pairs(1, &[(0, 0, 0, "1203"), (0, 2, 0, "0231")])
}

/// A one-tetrahedron closed triangulation of L(5,1) with two degree-3 edges.
pub fn lens_space_5_1() -> Triangulation {
    from_pairs(1, &[(0, 0, 0, "1230"), (0, 2, 0, "2031")])
}

/// A one-tetrahedron closed triangulation of L(4,1).
pub fn lens_space_4_1() -> Triangulation {
    from_pairs(1, &[(0, 0, 0, "1230"), (0, 2, 0, "1230")])
}

/// A one-tetrahedron closed triangulation of the 3-sphere.
pub fn sphere_one_tet() -> Triangulation {
    from_pairs(1, &[(0, 0, 0, "1023"), (0, 2, 0, "1230")])
}

/// The boundary of the 4-simplex: five tetrahedra, a closed 3-sphere.
pub fn simplex_boundary() -> Triangulation {
    // Tetrahedron i omits point i of {0..4}; vertices are the remaining points in order.
    let points: Vec<[usize; 4]> = (0..5)
        .map(|omit| {
            let mut pts = [0usize; 4];
            for (slot, p) in pts.iter_mut().zip((0..5).filter(|&p| p != omit)) {
                *slot = p;
            }
            pts
        })
        .collect();
    let mut gluings = vec![[None; 4]; 5];
    for (tet, pts) in points.iter().enumerate() {
        for face in 0..4 {
            // The face opposite pts[face] is shared with the tetrahedron omitting pts[face].
            let other = pts[face];
            let other_pts = points[other];
            let mut images = [0u8; 4];
            for v in 0..4 {
                let point = if v == face { tet } else { pts[v] };
                images[v] = other_pts.iter().position(|&q| q == point).expect("shared point") as u8;
            }
            let perm = Perm4::from_images(images).expect("bijection");
            gluings[tet][face] = Some(Gluing::new(other, perm));
        }
    }
    Triangulation::new(gluings).expect("simplex boundary")
}

/// Every closed fixture in this module.
pub fn closed_fixtures() -> Vec<(&'static str, Triangulation)> {
    vec![
        ("figure-eight", figure_eight()),
        ("figure-eight-sibling", figure_eight_sibling()),
        ("gieseking", gieseking()),
        ("lens-5-1", lens_space_5_1()),
        ("lens-4-1", lens_space_4_1()),
        ("sphere-1", sphere_one_tet()),
        ("simplex-boundary", simplex_boundary()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::VertexKind;

    #[test]
    fn fixtures_are_closed_and_valid() {
        for (name, tri) in closed_fixtures() {
            let report = tri.validate();
            assert!(report.closed, "{name}");
            assert!(report.is_valid(), "{name}: {:?}", report.defects);
            let degree_sum: usize = report.edge_degrees.iter().sum();
            assert_eq!(degree_sum, 6 * tri.tet_count(), "{name}");
            let corner_sum: usize = report.vertex_classes.iter().map(|v| v.corners).sum();
            assert_eq!(corner_sum, 4 * tri.tet_count(), "{name}");
        }
    }

    #[test]
    fn sphere_fixtures_have_material_vertices() {
        for tri in [sphere_one_tet(), simplex_boundary(), lens_space_4_1()] {
            assert!(tri.vertex_classes().iter().all(|v| v.kind == VertexKind::Material));
        }
        let boundary = simplex_boundary();
        assert_eq!(boundary.vertex_classes().len(), 5);
        assert_eq!(boundary.edge_classes().len(), 10);
        assert!(boundary.is_orientable());
    }
}
