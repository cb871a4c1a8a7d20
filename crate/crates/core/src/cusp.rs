//! Developing the Euclidean structure of a cusp cross-section.
//!
//! Each corner of a tetrahedron at the cusp contributes a Euclidean triangle.
//! Triangles are laid out breadth-first across link edges; when a link edge
//! closes a cycle, the similarity relating its two placements must be a
//! translation, and these translations generate the cusp lattice.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::GeometryError;
use crate::shape::{edge_parameter, gluing_residual, ShapeAssignment};
use crate::triangulation::Triangulation;

/// Triangle of the cusp cross-section cut off by corner `corner` of `tet`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspTriangle {
    pub tet: usize,
    pub corner: usize,
    /// Position of the link vertex on the edge towards vertex `w`, indexed by `w`
    /// (the entry at `corner` itself is unused and zero).
    pub vertices: [Complex64; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct CuspCrossSection {
    /// Index among the ideal vertex classes.
    pub cusp: usize,
    pub vertex_class: usize,
    /// Reduced lattice generators; `lattice[0]` is exactly `1`.
    pub lattice: [Complex64; 2],
    pub triangles: Vec<CuspTriangle>,
    /// Length of every edge of the cusp triangulation, in link-edge order.
    pub edge_lengths: Vec<f64>,
    pub area: f64,
    pub shortest: f64,
}

/// For a corner `v`, the other vertices `(b, c, d)` in an even order.
fn even_order(corner: usize) -> [usize; 3] {
    match corner {
        0 => [1, 2, 3],
        1 => [0, 3, 2],
        2 => [3, 0, 1],
        _ => [2, 1, 0],
    }
}

/// The corner triangle in local coordinates: `b -> 0`, `c -> 1`, `d -> z_{vb}`.
fn local_triangle(z: Complex64, corner: usize) -> [Complex64; 4] {
    let [b, c, d] = even_order(corner);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    out[c] = Complex64::new(1.0, 0.0);
    out[d] = edge_parameter(z, crate::perm::edge_number(corner, b));
    out
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Best rational approximation `p/q` with `q <= max_den` via continued fractions.
fn rationalize(x: f64, max_den: i64) -> Option<(i64, i64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut value = x;
    for _ in 0..40 {
        let a = libm::floor(value);
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = value - a as f64;
        if (x - h1 as f64 / k1 as f64).abs() < 1e-9 || frac.abs() < 1e-12 {
            break;
        }
        value = 1.0 / frac;
    }
    ((x - h1 as f64 / k1 as f64).abs() < 1e-7).then_some((h1, k1))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, s, t) = extended_gcd(b, a % b);
    (g, t, s - (a / b) * t)
}

/// Basis of the lattice generated by `translations`, Lagrange–Gauss reduced.
fn lattice_basis(translations: &[Complex64], cusp: usize) -> Result<[Complex64; 2], GeometryError> {
    let degenerate = GeometryError::DegenerateLattice(cusp);
    let scale = translations.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let nonzero: Vec<Complex64> = translations.iter().copied().filter(|t| t.norm() > 1e-9 * scale).collect();
    let u = *nonzero.first().ok_or_else(|| degenerate.clone())?;
    let v = *nonzero
        .iter()
        .max_by(|a, b| (cross(u, **a).abs() / a.norm()).total_cmp(&(cross(u, **b).abs() / b.norm())))
        .expect("nonempty");
    let det = cross(u, v);
    if det.abs() < 1e-9 * u.norm() * v.norm() {
        return Err(degenerate);
    }
    // Integer coordinates of every translation relative to (u, v) over a common denominator.
    let mut coords = Vec::with_capacity(nonzero.len());
    let mut denominator = 1i64;
    for &w in &nonzero {
        let a = cross(w, v) / det;
        let b = cross(u, w) / det;
        let (pa, qa) = rationalize(a, 10_000).ok_or_else(|| degenerate.clone())?;
        let (pb, qb) = rationalize(b, 10_000).ok_or_else(|| degenerate.clone())?;
        for q in [qa, qb] {
            denominator = denominator / gcd(denominator, q) * q;
            if denominator > 1_000_000 {
                return Err(degenerate);
            }
        }
        coords.push((pa, qa, pb, qb));
    }
    // Hermite normal form of the integer lattice.
    let (mut lead, mut lead_second, mut column) = (0i64, 0i64, 0i64);
    for (pa, qa, pb, qb) in coords {
        let (x, y) = (pa * (denominator / qa), pb * (denominator / qb));
        if x == 0 {
            column = gcd(column, y);
            continue;
        }
        if lead == 0 {
            (lead, lead_second) = (x, y);
            continue;
        }
        let (g, s, t) = extended_gcd(lead, x);
        let eliminated = (x / g) * lead_second - (lead / g) * y;
        column = gcd(column, eliminated);
        (lead, lead_second) = (g, s * lead_second + t * y);
    }
    if lead == 0 || column == 0 {
        return Err(degenerate);
    }
    let lead_second = lead_second.rem_euclid(column);
    let d = denominator as f64;
    let mut first = (u * lead as f64 + v * lead_second as f64) / d;
    let mut second = v * column as f64 / d;
    // Lagrange–Gauss reduction.
    loop {
        if second.norm_sqr() < first.norm_sqr() {
            core::mem::swap(&mut first, &mut second);
        }
        let mu = libm::round((first.conj() * second).re / first.norm_sqr());
        if mu == 0.0 {
            break;
        }
        second -= first * mu;
        if second.norm_sqr() >= first.norm_sqr() {
            break;
        }
    }
    Ok([first, second])
}

/// Develops cusp number `cusp` (counting ideal vertex classes in order).
pub fn develop_cusp(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
    cusp: usize,
    tolerance: f64,
) -> Result<CuspCrossSection, GeometryError> {
    let residual = gluing_residual(tri, shapes)?;
    if !(residual < tolerance) {
        return Err(GeometryError::ResidualTooLarge { residual, tolerance });
    }
    let vertex_class = *tri.cusps().get(cusp).ok_or(GeometryError::NotACusp(cusp))?;
    let class = &tri.vertex_classes()[vertex_class];
    if !class.link_closed || class.link_euler != 0 {
        return Err(GeometryError::NonTorusLink { cusp, euler: class.link_euler, closed: class.link_closed });
    }

    let corners = &class.incidences;
    let slot: BTreeMap<(usize, usize), usize> = corners.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut placed: Vec<Option<[Complex64; 4]>> = vec![None; corners.len()];
    let (t0, v0) = corners[0];
    placed[0] = Some(local_triangle(shapes.shapes()[t0], v0));
    let mut queue = VecDeque::from([0usize]);
    let mut translations = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (tet, corner) = corners[i];
        let here = placed[i].expect("queued triangles are placed");
        for face in (0..4).filter(|&f| f != corner) {
            let g = tri.gluing(tet, face).ok_or(GeometryError::NonTorusLink {
                cusp,
                euler: class.link_euler,
                closed: false,
            })?;
            let j = slot[&(g.tet, g.perm.apply(corner))];
            let mut shared = (0..4).filter(|&w| w != corner && w != face);
            let (w1, w2) = (shared.next().expect("edge end"), shared.next().expect("edge end"));
            let (p1, p2) = (here[w1], here[w2]);
            let (n1, n2) = (g.perm.apply(w1), g.perm.apply(w2));
            match placed[j] {
                None => {
                    let local = local_triangle(shapes.shapes()[g.tet], g.perm.apply(corner));
                    let scale = (p1 - p2) / (local[n1] - local[n2]);
                    let shift = p1 - local[n1] * scale;
                    let mut there = [Complex64::new(0.0, 0.0); 4];
                    for w in (0..4).filter(|&w| w != g.perm.apply(corner)) {
                        there[w] = local[w] * scale + shift;
                    }
                    placed[j] = Some(there);
                    queue.push_back(j);
                }
                Some(there) => {
                    let rotation = (p1 - p2) / (there[n1] - there[n2]);
                    let deviation = (rotation - 1.0).norm();
                    if deviation > 1e-9 {
                        return Err(GeometryError::RotationalHolonomy { cusp, deviation });
                    }
                    translations.push(p1 - there[n1]);
                }
            }
        }
    }

    let [u, v] = lattice_basis(&translations, cusp)?;
    // Similarity sending u to 1.
    let normalise = u.conj() / u.norm_sqr();
    let origin = placed[0].expect("root placed")[even_order(v0)[0]];
    let triangles: Vec<CuspTriangle> = corners
        .iter()
        .zip(&placed)
        .map(|(&(tet, corner), pos)| {
            let mut vertices = pos.expect("every corner is reached");
            for (w, p) in vertices.iter_mut().enumerate() {
                *p = if w == corner { Complex64::new(0.0, 0.0) } else { (*p - origin) * normalise };
            }
            CuspTriangle { tet, corner, vertices }
        })
        .collect();
    let second = v * normalise;
    let mut edge_lengths = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    for t in &triangles {
        for face in (0..4).filter(|&f| f != t.corner) {
            let g = tri.gluing(t.tet, face).expect("closed link");
            let key = (t.tet, face, t.corner).min((g.tet, g.perm.apply(face), g.perm.apply(t.corner)));
            if seen.insert(key) {
                let mut ends = (0..4).filter(|&w| w != t.corner && w != face);
                let (a, b) = (ends.next().expect("edge end"), ends.next().expect("edge end"));
                edge_lengths.push((t.vertices[a] - t.vertices[b]).norm());
            }
        }
    }
    Ok(CuspCrossSection {
        cusp,
        vertex_class,
        lattice: [Complex64::new(1.0, 0.0), second],
        triangles,
        edge_lengths,
        area: second.im.abs(),
        shortest: 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::shape::GLUING_TOLERANCE;

    #[test]
    fn figure_eight_cusp() {
        let tri = census::figure_eight();
        let section = develop_cusp(&tri, &ShapeAssignment::regular(2), 0, GLUING_TOLERANCE).unwrap();
        assert_eq!(section.triangles.len(), 8);
        assert_eq!(section.edge_lengths.len(), 12);
        let first = section.edge_lengths[0];
        assert!(section.edge_lengths.iter().all(|l| (l - first).abs() < 1e-9));
        let expected_area = 8.0 * 3f64.sqrt() / 4.0 * first * first;
        assert!((section.area - expected_area).abs() < 1e-9);
        assert_eq!(section.shortest, 1.0);
        assert!(section.lattice[1].norm() >= 1.0 - 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let tri = census::figure_eight();
        let nudged = Complex64::from_polar(1.0, core::f64::consts::PI / 3.0) + 0.1;
        let shapes = ShapeAssignment::new(vec![nudged; 2]).unwrap();
        assert!(matches!(develop_cusp(&tri, &shapes, 0, 1e-9), Err(GeometryError::ResidualTooLarge { .. })));
        assert!(matches!(
            develop_cusp(&tri, &ShapeAssignment::regular(2), 1, 1e-9),
            Err(GeometryError::NotACusp(1))
        ));
    }

    #[test]
    fn gieseking_link_is_not_a_torus_development() {
        let tri = census::gieseking();
        let result = develop_cusp(&tri, &ShapeAssignment::regular(1), 0, 1e-9);
        assert!(result.is_err());
    }

    #[test]
    fn lattice_from_redundant_translations() {
        let u = Complex64::new(1.0, 0.0);
        let v = Complex64::new(0.5, 3f64.sqrt() / 2.0);
        let basis = lattice_basis(&[u * 2.0, v * 3.0, u + v, v - u, u * 3.0 - v * 2.0], 0).unwrap();
        let area = (basis[0].conj() * basis[1]).im.abs();
        assert!((area - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((basis[0].norm() - 1.0).abs() < 1e-12);
    }
}
