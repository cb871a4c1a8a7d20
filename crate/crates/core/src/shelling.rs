//! Shellings of triangulated balls and starring a ball into the cone over its boundary.

use alloc::vec;
use alloc::vec::Vec;

use crate::canon::is_isomorphic;
use crate::error::ShellingError;
use crate::moves::{apply_tracked, Move, MoveSequence};
use crate::perm::{edge_number, Perm4, EDGE_VERTICES};
use crate::triangulation::{Gluing, Triangulation};

fn check_simplicial(ball: &Triangulation) -> Result<(), ShellingError> {
    let n = ball.tet_count();
    let mut vertex_sets = Vec::with_capacity(n);
    for tet in 0..n {
        let mut vertices: Vec<usize> = (0..4).map(|v| ball.vertex_class_of(tet, v)).collect();
        let mut edges: Vec<usize> = (0..6).map(|e| ball.edge_class_of(tet, e)).collect();
        vertices.sort_unstable();
        edges.sort_unstable();
        vertices.dedup();
        edges.dedup();
        if vertices.len() != 4 || edges.len() != 6 {
            return Err(ShellingError::NotSimplicial);
        }
        for face in 0..4 {
            if ball.gluing(tet, face).is_some_and(|g| g.tet == tet) {
                return Err(ShellingError::NotSimplicial);
            }
        }
        vertex_sets.push(vertices);
    }
    vertex_sets.sort();
    if vertex_sets.windows(2).any(|w| w[0] == w[1]) {
        return Err(ShellingError::NotSimplicial);
    }
    Ok(())
}

/// Faces of `ordering[j]` glued to tetrahedra earlier in the ordering.
fn shared_faces(ball: &Triangulation, position: &[usize], ordering: &[usize], j: usize) -> Vec<usize> {
    let tet = ordering[j];
    (0..4).filter(|&f| ball.gluing(tet, f).is_some_and(|g| position[g.tet] < j)).collect()
}

/// Checks that every tetrahedron after the first meets its predecessors in
/// one, two or three of its faces and in nothing else.
pub fn verify_shelling(ball: &Triangulation, ordering: &[usize]) -> Result<(), ShellingError> {
    let n = ball.tet_count();
    let mut position = vec![usize::MAX; n];
    for (j, &tet) in ordering.iter().enumerate() {
        if tet >= n || position[tet] != usize::MAX {
            return Err(ShellingError::BadOrdering);
        }
        position[tet] = j;
    }
    if ordering.len() != n {
        return Err(ShellingError::BadOrdering);
    }
    check_simplicial(ball)?;

    let mut seen_vertex = vec![false; ball.vertex_classes().len()];
    let mut seen_edge = vec![false; ball.edge_classes().len()];
    for (j, &tet) in ordering.iter().enumerate() {
        if j > 0 {
            let faces = shared_faces(ball, &position, ordering, j);
            if faces.is_empty() || faces.len() == 4 {
                return Err(ShellingError::NotShelling { index: j });
            }
            let vertex_in_faces = |v: usize| faces.iter().any(|&f| f != v);
            let edge_in_faces = |[a, b]: [usize; 2]| faces.iter().any(|&f| f != a && f != b);
            for v in 0..4 {
                if seen_vertex[ball.vertex_class_of(tet, v)] != vertex_in_faces(v) {
                    return Err(ShellingError::NotShelling { index: j });
                }
            }
            for (e, &pair) in EDGE_VERTICES.iter().enumerate() {
                if seen_edge[ball.edge_class_of(tet, e)] != edge_in_faces(pair) {
                    return Err(ShellingError::NotShelling { index: j });
                }
            }
        }
        for v in 0..4 {
            seen_vertex[ball.vertex_class_of(tet, v)] = true;
        }
        for e in 0..6 {
            seen_edge[ball.edge_class_of(tet, e)] = true;
        }
    }
    Ok(())
}

/// The cone over the boundary of a ball: one tetrahedron per boundary face,
/// with the face's opposite vertex replaced by the cone point.
///
/// Cone tetrahedra are numbered by boundary face `(tet, face)` in ascending order.
pub fn cone_over_boundary(ball: &Triangulation) -> Result<Triangulation, ShellingError> {
    let mut boundary = Vec::new();
    for tet in 0..ball.tet_count() {
        for face in 0..4 {
            if ball.gluing(tet, face).is_none() {
                boundary.push((tet, face));
            }
        }
    }
    if boundary.is_empty() {
        return Err(ShellingError::NotSimplicial);
    }
    let index_of = |tet: usize, face: usize| boundary.iter().position(|&b| b == (tet, face));
    let mut gluings = vec![[None; 4]; boundary.len()];
    for (c, &(tet, apex)) in boundary.iter().enumerate() {
        for side in (0..4).filter(|&s| s != apex) {
            // Walk around the boundary edge opposite `apex` and `side` until the
            // next boundary face. `walk` maps vertices of `tet` to the current tetrahedron.
            let swap = Perm4::transposition(apex, side);
            let (mut current, mut walk) = (tet, Perm4::IDENTITY);
            let mut steps = 0;
            loop {
                let exit = walk.apply(side);
                match ball.gluing(current, exit) {
                    None => break,
                    Some(g) => {
                        current = g.tet;
                        walk = g.perm.compose(walk).compose(swap);
                    }
                }
                steps += 1;
                if steps > 6 * ball.tet_count() {
                    return Err(ShellingError::NotSimplicial);
                }
            }
            let neighbour = index_of(current, walk.apply(side)).expect("walk ends on a boundary face");
            gluings[c][side] = Some(Gluing::new(neighbour, walk.compose(swap)));
        }
    }
    Ok(Triangulation::new(gluings)?)
}

/// A starring sequence and the complex it ends at.
#[derive(Clone, Debug)]
pub struct StarredBall {
    pub sequence: MoveSequence,
    pub result: Triangulation,
}

/// Turns a shellable ball into the cone over its boundary, one move per tetrahedron.
///
/// The first tetrahedron is subdivided by a 1-4 move. Each later tetrahedron
/// meets the cone built so far in one, two or three faces and is absorbed by a
/// 2-3 move across that face, a 3-2 move about the common edge, or a 4-1 move
/// at the common vertex.
pub fn star_shellable_ball(ball: &Triangulation, ordering: &[usize]) -> Result<StarredBall, ShellingError> {
    verify_shelling(ball, ordering)?;
    let n = ball.tet_count();
    let mut position = vec![0usize; n];
    for (j, &tet) in ordering.iter().enumerate() {
        position[tet] = j;
    }
    // Current index of each original tetrahedron not yet absorbed.
    let mut current_index: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut current = ball.clone();
    let mut moves = Vec::with_capacity(n);
    for (j, &tet) in ordering.iter().enumerate() {
        let here = current_index[tet].expect("unprocessed tetrahedra keep an index");
        let mv = if j == 0 {
            Move::OneFour { tet: here }
        } else {
            let faces = shared_faces(ball, &position, ordering, j);
            match *faces.as_slice() {
                [face] => Move::TwoThree { tet: here, face },
                [f1, f2] => {
                    let mut rest = (0..4).filter(|&v| v != f1 && v != f2);
                    let (a, b) = (rest.next().expect("edge end"), rest.next().expect("edge end"));
                    Move::ThreeTwo { tet: here, edge: edge_number(a, b) }
                }
                [f1, f2, f3] => {
                    let vertex = (0..4).find(|&v| v != f1 && v != f2 && v != f3).expect("common vertex");
                    Move::FourOne { tet: here, vertex }
                }
                _ => return Err(ShellingError::NotShelling { index: j }),
            }
        };
        let applied = apply_tracked(&current, mv)?;
        for slot in current_index.iter_mut() {
            *slot = slot.and_then(|old| applied.survivors[old]);
        }
        current = applied.tri;
        moves.push(mv);
    }
    let cone = cone_over_boundary(ball)?;
    if is_isomorphic(&current, &cone)?.is_none() {
        return Err(ShellingError::ConeMismatch);
    }
    let sequence = MoveSequence::record(ball, moves).map_err(|_| ShellingError::ConeMismatch)?;
    Ok(StarredBall { sequence, result: current })
}

/// Fixtures: small balls given as abstract simplices.
pub mod balls {
    use super::*;

    pub fn single() -> Triangulation {
        Triangulation::from_simplices(&[[0, 1, 2, 3]]).expect("simplex")
    }

    /// Two tetrahedra sharing one face.
    pub fn face_pair() -> Triangulation {
        Triangulation::from_simplices(&[[0, 1, 2, 3], [1, 2, 3, 4]]).expect("ball")
    }

    /// A chain of three tetrahedra, each meeting the previous one in a face.
    pub fn stacked_chain() -> Triangulation {
        Triangulation::from_simplices(&[[0, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 5]]).expect("ball")
    }

    /// Three tetrahedra around a common interior edge `{0, 1}`.
    pub fn edge_star_three() -> Triangulation {
        Triangulation::from_simplices(&[[0, 1, 2, 3], [0, 1, 3, 4], [0, 1, 4, 2]]).expect("ball")
    }

    /// Four tetrahedra around a common interior edge `{0, 1}`.
    pub fn edge_star_four() -> Triangulation {
        Triangulation::from_simplices(&[[0, 1, 2, 3], [0, 1, 3, 4], [0, 1, 4, 5], [0, 1, 5, 2]]).expect("ball")
    }

    /// A tetrahedron coned from an interior vertex `4`.
    pub fn vertex_star() -> Triangulation {
        Triangulation::from_simplices(&[[4, 1, 2, 3], [0, 4, 2, 3], [0, 1, 4, 3], [0, 1, 2, 4]]).expect("ball")
    }
}
