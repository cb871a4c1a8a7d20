//! The four three-dimensional Pachner moves.
//!
//! Every move is carried out by one routine: a region of tetrahedra is
//! described by labelling each of its corners with an abstract point, and
//! replaced by new tetrahedra given as point quadruples. Faces of the new
//! tetrahedra are matched to the old region boundary by their point sets, so
//! gluings across the region boundary carry over unchanged.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_signature, is_isomorphic, Signature};
use crate::error::{CanonError, MoveError};
use crate::perm::{Perm4, EDGE_VERTICES};
use crate::triangulation::{FaceGluings, Gluing, Triangulation, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
    OneFour,
    FourOne,
}

impl MoveKind {
    /// Short label such as `"2-3"`.
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
        }
    }

    /// Change in the number of tetrahedra.
    pub fn tet_delta(self) -> isize {
        match self {
            MoveKind::TwoThree => 1,
            MoveKind::ThreeTwo => -1,
            MoveKind::OneFour => 3,
            MoveKind::FourOne => -3,
        }
    }
}

/// A Pachner move together with where it happens.
///
/// `TwoThree` names a face by one of its two sides, `ThreeTwo` an edge class
/// by one incidence, `FourOne` a vertex class by one corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    TwoThree { tet: usize, face: usize },
    ThreeTwo { tet: usize, edge: usize },
    OneFour { tet: usize },
    FourOne { tet: usize, vertex: usize },
}

impl Move {
    pub fn kind(self) -> MoveKind {
        match self {
            Move::TwoThree { .. } => MoveKind::TwoThree,
            Move::ThreeTwo { .. } => MoveKind::ThreeTwo,
            Move::OneFour { .. } => MoveKind::OneFour,
            Move::FourOne { .. } => MoveKind::FourOne,
        }
    }

    pub fn tet(self) -> usize {
        match self {
            Move::TwoThree { tet, .. } | Move::ThreeTwo { tet, .. } | Move::OneFour { tet } | Move::FourOne { tet, .. } => tet,
        }
    }

    /// The same move after tetrahedra and vertices are relabelled.
    pub fn transport(self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Move {
        let tet = self.tet();
        let (new_tet, phi) = (tet_map[tet], vertex_maps[tet]);
        match self {
            Move::TwoThree { face, .. } => Move::TwoThree { tet: new_tet, face: phi.apply(face) },
            Move::ThreeTwo { edge, .. } => {
                let [a, b] = EDGE_VERTICES[edge];
                Move::ThreeTwo { tet: new_tet, edge: crate::perm::edge_number(phi.apply(a), phi.apply(b)) }
            }
            Move::OneFour { .. } => Move::OneFour { tet: new_tet },
            Move::FourOne { vertex, .. } => Move::FourOne { tet: new_tet, vertex: phi.apply(vertex) },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::TwoThree { tet, face } => write!(f, "2-3 at face ({tet}, {face})"),
            Move::ThreeTwo { tet, edge } => write!(f, "3-2 at edge ({tet}, {edge})"),
            Move::OneFour { tet } => write!(f, "1-4 at tetrahedron {tet}"),
            Move::FourOne { tet, vertex } => write!(f, "4-1 at vertex ({tet}, {vertex})"),
        }
    }
}

/// A region to replace: old tetrahedra with point labels, and the new tetrahedra.
struct Plan {
    removed: Vec<usize>,
    labels: Vec<[usize; 4]>,
    new_tets: Vec<[usize; 4]>,
}

const TOP: usize = 0;
const BOTTOM: usize = 1;

fn face_points(points: [usize; 4], face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (v, &p) in points.iter().enumerate() {
        if v != face {
            out[k] = p;
            k += 1;
        }
    }
    out.sort_unstable();
    out
}

fn position(points: [usize; 4], point: usize) -> usize {
    points.iter().position(|&p| p == point).expect("point belongs to tetrahedron")
}

/// Vertex map from tetrahedron `from` to `to` across a shared face.
fn map_across(from: [usize; 4], from_face: usize, to: [usize; 4], to_face: usize) -> Perm4 {
    let mut images = [0u8; 4];
    for (v, img) in images.iter_mut().enumerate() {
        *img = if v == from_face { to_face } else { position(to, from[v]) } as u8;
    }
    Perm4::from_images(images).expect("matched faces give a bijection")
}

fn inapplicable(mv: Move, reason: &'static str) -> MoveError {
    MoveError::Inapplicable { mv, reason }
}

fn check_range(tri: &Triangulation, mv: Move) -> Result<(), MoveError> {
    let ok = mv.tet() < tri.tet_count()
        && match mv {
            Move::TwoThree { face, .. } => face < 4,
            Move::ThreeTwo { edge, .. } => edge < 6,
            Move::OneFour { .. } => true,
            Move::FourOne { vertex, .. } => vertex < 4,
        };
    if ok {
        Ok(())
    } else {
        Err(MoveError::OutOfRange(mv))
    }
}

fn plan_two_three(tri: &Triangulation, mv: Move, tet: usize, face: usize) -> Result<Plan, MoveError> {
    let glued = tri.gluing(tet, face).ok_or_else(|| inapplicable(mv, "face lies on the boundary"))?;
    if glued.tet == tet {
        return Err(inapplicable(mv, "both sides of the face lie in the same tetrahedron"));
    }
    let mut upper = [0usize; 4];
    upper[face] = TOP;
    for (label, v) in (2..).zip((0..4).filter(|&v| v != face)) {
        upper[v] = label;
    }
    let mut lower = [0usize; 4];
    for v in 0..4 {
        lower[glued.perm.apply(v)] = if v == face { BOTTOM } else { upper[v] };
    }
    Ok(Plan {
        removed: vec![tet, glued.tet],
        labels: vec![upper, lower],
        new_tets: vec![[TOP, BOTTOM, 3, 4], [TOP, BOTTOM, 2, 4], [TOP, BOTTOM, 2, 3]],
    })
}

fn plan_three_two(tri: &Triangulation, mv: Move, tet: usize, edge: usize) -> Result<Plan, MoveError> {
    let class = &tri.edge_classes()[tri.edge_class_of(tet, edge)];
    if class.degree() != 3 {
        return Err(inapplicable(mv, "edge does not have degree 3"));
    }
    if class.boundary {
        return Err(inapplicable(mv, "edge lies on the boundary"));
    }
    if class.reversed {
        return Err(inapplicable(mv, "edge is identified with itself in reverse"));
    }
    const A: usize = 2;
    const B: usize = 3;
    const C: usize = 4;
    let [i, j] = EDGE_VERTICES[edge];
    let mut rest = (0..4).filter(|&v| v != i && v != j);
    let (k, l) = (rest.next().expect("two other vertices"), rest.next().expect("two other vertices"));
    let mut first = [0usize; 4];
    first[i] = TOP;
    first[j] = BOTTOM;
    first[k] = A;
    first[l] = B;

    let step = |from: usize, labels: [usize; 4], exit_point: usize, fresh: usize| {
        let exit_face = position(labels, exit_point);
        let g = tri.gluing(from, exit_face).ok_or_else(|| inapplicable(mv, "edge lies on the boundary"))?;
        let mut next = [0usize; 4];
        for v in 0..4 {
            next[g.perm.apply(v)] = if v == exit_face { fresh } else { labels[v] };
        }
        Ok::<_, MoveError>((g.tet, next))
    };
    let (second_tet, second) = step(tet, first, A, C)?;
    let (third_tet, third) = step(second_tet, second, B, A)?;
    let (back_tet, back) = step(third_tet, third, C, B)?;
    if second_tet == tet || third_tet == tet || second_tet == third_tet {
        return Err(inapplicable(mv, "the three tetrahedra around the edge are not distinct"));
    }
    if back_tet != tet || back != first {
        return Err(inapplicable(mv, "walk around the edge does not close up consistently"));
    }
    Ok(Plan {
        removed: vec![tet, second_tet, third_tet],
        labels: vec![first, second, third],
        new_tets: vec![[TOP, A, B, C], [BOTTOM, A, B, C]],
    })
}

fn plan_one_four(tet: usize) -> Plan {
    const CENTRE: usize = 4;
    let new_tets = (0..4)
        .map(|i| {
            let mut pts = [0, 1, 2, 3];
            pts[i] = CENTRE;
            pts
        })
        .collect();
    Plan { removed: vec![tet], labels: vec![[0, 1, 2, 3]], new_tets }
}

fn plan_four_one(tri: &Triangulation, mv: Move, tet: usize, vertex: usize) -> Result<Plan, MoveError> {
    const CENTRE: usize = 4;
    let class = &tri.vertex_classes()[tri.vertex_class_of(tet, vertex)];
    if class.kind != VertexKind::Material || !class.link_closed {
        return Err(inapplicable(mv, "vertex is not an interior material vertex"));
    }
    if class.incidences.len() != 4 {
        return Err(inapplicable(mv, "vertex does not have degree 4"));
    }
    let mut start = [0usize; 4];
    start[vertex] = CENTRE;
    for (label, v) in (0..).zip((0..4).filter(|&v| v != vertex)) {
        start[v] = label;
    }
    let mut labelled: BTreeMap<usize, [usize; 4]> = BTreeMap::new();
    let mut order = vec![tet];
    labelled.insert(tet, start);
    let mut queue = VecDeque::from([tet]);
    while let Some(current) = queue.pop_front() {
        let labels = labelled[&current];
        let missing = (0..4).find(|p| !labels.contains(p)).expect("one point is missing");
        for face in (0..4).filter(|&f| labels[f] != CENTRE) {
            let g = tri.gluing(current, face).ok_or_else(|| inapplicable(mv, "vertex star meets the boundary"))?;
            let mut proposed = [0usize; 4];
            for v in 0..4 {
                proposed[g.perm.apply(v)] = if v == face { missing } else { labels[v] };
            }
            match labelled.get(&g.tet) {
                Some(existing) if *existing != proposed => {
                    return Err(inapplicable(mv, "vertex star is not an embedded ball"));
                }
                Some(_) => {}
                None => {
                    labelled.insert(g.tet, proposed);
                    order.push(g.tet);
                    queue.push_back(g.tet);
                }
            }
        }
    }
    if order.len() != 4 {
        return Err(inapplicable(mv, "vertex star does not consist of four distinct tetrahedra"));
    }
    let labels = order.iter().map(|t| labelled[t]).collect();
    Ok(Plan { removed: order, labels, new_tets: vec![[0, 1, 2, 3]] })
}

struct Rebuilt {
    tri: Triangulation,
    new_index: Vec<usize>,
    /// Old index -> new index for tetrahedra outside the region.
    survivors: Vec<Option<usize>>,
}

fn retriangulate(tri: &Triangulation, mv: Move, plan: &Plan) -> Result<Rebuilt, MoveError> {
    let old_count = tri.tet_count();
    let mut removed_slot = vec![None; old_count];
    for (k, &t) in plan.removed.iter().enumerate() {
        if removed_slot[t].is_some() {
            return Err(inapplicable(mv, "region repeats a tetrahedron"));
        }
        removed_slot[t] = Some(k);
    }

    // Classify the region's faces. A face is internal when its partner lies in
    // the region with the same point triple and a consistent vertex map.
    let mut triple_count: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for labels in &plan.labels {
        for face in 0..4 {
            *triple_count.entry(face_points(*labels, face)).or_default() += 1;
        }
    }
    let mut old_boundary: BTreeMap<[usize; 3], (usize, usize)> = BTreeMap::new();
    for (k, labels) in plan.labels.iter().enumerate() {
        for face in 0..4 {
            let triple = face_points(*labels, face);
            let internal = match triple_count[&triple] {
                1 => false,
                2 => true,
                _ => return Err(inapplicable(mv, "region faces are not in general position")),
            };
            if internal {
                let g = tri.gluing(plan.removed[k], face);
                let consistent = g.is_some_and(|g| {
                    removed_slot[g.tet].is_some_and(|k2| {
                        let other = plan.labels[k2];
                        (0..4).filter(|&v| v != face).all(|v| other[g.perm.apply(v)] == labels[v])
                    })
                });
                if !consistent {
                    return Err(inapplicable(mv, "region is not embedded: interior faces are identified"));
                }
            } else {
                old_boundary.insert(triple, (k, face));
            }
        }
    }

    let mut new_triples: BTreeMap<[usize; 3], Vec<(usize, usize)>> = BTreeMap::new();
    for (a, pts) in plan.new_tets.iter().enumerate() {
        for face in 0..4 {
            new_triples.entry(face_points(*pts, face)).or_default().push((a, face));
        }
    }
    let new_boundary_count = new_triples.values().filter(|v| v.len() == 1).count();
    assert_eq!(new_boundary_count, old_boundary.len(), "retriangulation must preserve the region boundary");

    // Index assignment: reuse removed indices in ascending order, append the
    // rest, then close any leftover holes.
    let mut reused = plan.removed.clone();
    reused.sort_unstable();
    let new_len = plan.new_tets.len();
    let raw_new: Vec<usize> =
        (0..new_len).map(|a| if a < reused.len() { reused[a] } else { old_count + a - reused.len() }).collect();
    let holes: Vec<usize> = reused.iter().skip(new_len).copied().collect();
    let compact = |index: usize| index - holes.iter().filter(|&&h| h < index).count();
    let new_index: Vec<usize> = raw_new.iter().map(|&i| compact(i)).collect();
    let final_count = old_count - plan.removed.len() + new_len;

    // For each old boundary face, the new face replacing it and the vertex map old -> new.
    let mut replacement: BTreeMap<(usize, usize), (usize, Perm4)> = BTreeMap::new();
    let mut new_to_old: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (triple, &(k, face)) in &old_boundary {
        let sides = new_triples.get(triple).expect("boundary faces match");
        let &[(a, new_face)] = sides.as_slice() else {
            panic!("boundary face must appear once among new tetrahedra");
        };
        let sigma = map_across(plan.labels[k], face, plan.new_tets[a], new_face);
        replacement.insert((k, face), (a, sigma));
        new_to_old.insert((a, new_face), (k, face));
    }

    let mut gluings: Vec<FaceGluings> = vec![[None; 4]; final_count];
    for t in (0..old_count).filter(|&t| removed_slot[t].is_none()) {
        for face in 0..4 {
            gluings[compact(t)][face] = tri.gluing(t, face).map(|g| match removed_slot[g.tet] {
                None => Gluing::new(compact(g.tet), g.perm),
                Some(k) => {
                    let (a, sigma) = replacement[&(k, g.perm.apply(face))];
                    Gluing::new(new_index[a], sigma.compose(g.perm))
                }
            });
        }
    }
    for (a, &pts) in plan.new_tets.iter().enumerate() {
        for face in 0..4 {
            let sides = &new_triples[&face_points(pts, face)];
            gluings[new_index[a]][face] = if sides.len() == 2 {
                let &(b, other_face) = sides.iter().find(|&&(b, _)| b != a).expect("two distinct sides");
                Some(Gluing::new(new_index[b], map_across(pts, face, plan.new_tets[b], other_face)))
            } else {
                let (k, old_face) = new_to_old[&(a, face)];
                let (_, sigma) = replacement[&(k, old_face)];
                let back = sigma.inverse();
                tri.gluing(plan.removed[k], old_face).map(|g| match removed_slot[g.tet] {
                    None => Gluing::new(compact(g.tet), g.perm.compose(back)),
                    Some(k2) => {
                        let (b, sigma2) = replacement[&(k2, g.perm.apply(old_face))];
                        Gluing::new(new_index[b], sigma2.compose(g.perm).compose(back))
                    }
                })
            };
        }
    }
    let tri = Triangulation::new(gluings)?;
    let survivors = (0..old_count).map(|t| removed_slot[t].is_none().then(|| compact(t))).collect();
    Ok(Rebuilt { tri, new_index, survivors })
}

/// Result of a move with index bookkeeping.
pub(crate) struct Applied {
    pub tri: Triangulation,
    pub inverse: Move,
    /// Old index -> new index for untouched tetrahedra; their vertex labels are unchanged.
    pub survivors: Vec<Option<usize>>,
}

/// Applies `mv`, returning the new triangulation and the move that undoes it.
pub fn apply_with_inverse(tri: &Triangulation, mv: Move) -> Result<(Triangulation, Move), MoveError> {
    apply_tracked(tri, mv).map(|applied| (applied.tri, applied.inverse))
}

pub(crate) fn apply_tracked(tri: &Triangulation, mv: Move) -> Result<Applied, MoveError> {
    check_range(tri, mv)?;
    let plan = match mv {
        Move::TwoThree { tet, face } => plan_two_three(tri, mv, tet, face)?,
        Move::ThreeTwo { tet, edge } => plan_three_two(tri, mv, tet, edge)?,
        Move::OneFour { tet } => plan_one_four(tet),
        Move::FourOne { tet, vertex } => plan_four_one(tri, mv, tet, vertex)?,
    };
    let rebuilt = retriangulate(tri, mv, &plan)?;
    let first = rebuilt.new_index[0];
    let inverse = match mv {
        Move::TwoThree { .. } => Move::ThreeTwo { tet: first, edge: 0 },
        Move::ThreeTwo { .. } => Move::TwoThree { tet: first, face: 0 },
        Move::OneFour { .. } => Move::FourOne { tet: first, vertex: 0 },
        Move::FourOne { .. } => Move::OneFour { tet: first },
    };
    Ok(Applied { tri: rebuilt.tri, inverse, survivors: rebuilt.survivors })
}

/// Applies a Pachner move, returning a fresh triangulation.
pub fn apply(tri: &Triangulation, mv: Move) -> Result<Triangulation, MoveError> {
    apply_with_inverse(tri, mv).map(|(result, _)| result)
}

/// The move that undoes `mv` on the triangulation `apply(before, mv)`.
pub fn invert(mv: Move, before: &Triangulation) -> Result<Move, MoveError> {
    apply_with_inverse(before, mv).map(|(_, inverse)| inverse)
}

fn is_applicable(tri: &Triangulation, mv: Move) -> bool {
    match mv {
        Move::TwoThree { tet, face } => plan_two_three(tri, mv, tet, face).is_ok(),
        Move::ThreeTwo { tet, edge } => plan_three_two(tri, mv, tet, edge).is_ok(),
        Move::OneFour { .. } => true,
        Move::FourOne { tet, vertex } => plan_four_one(tri, mv, tet, vertex).is_ok(),
    }
}

/// Every applicable move, one per face, edge class, tetrahedron or vertex class.
///
/// Locations use the least incidence: the lower side of a face, the first
/// incidence of an edge or vertex class.
pub fn applicable_moves(tri: &Triangulation) -> Vec<Move> {
    let mut moves = Vec::new();
    for tet in 0..tri.tet_count() {
        for face in 0..4 {
            if let Some(g) = tri.gluing(tet, face) {
                if (tet, face) < (g.tet, g.perm.apply(face)) && is_applicable(tri, Move::TwoThree { tet, face }) {
                    moves.push(Move::TwoThree { tet, face });
                }
            }
        }
    }
    for class in tri.edge_classes() {
        let (tet, edge) = class.incidences[0];
        if is_applicable(tri, Move::ThreeTwo { tet, edge }) {
            moves.push(Move::ThreeTwo { tet, edge });
        }
    }
    moves.extend((0..tri.tet_count()).map(|tet| Move::OneFour { tet }));
    for class in tri.vertex_classes() {
        let (tet, vertex) = class.incidences[0];
        if is_applicable(tri, Move::FourOne { tet, vertex }) {
            moves.push(Move::FourOne { tet, vertex });
        }
    }
    moves
}

/// An ordered list of moves with the signatures of its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
    pub start: Signature,
    pub end: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Move { step: usize, source: MoveError },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("starting triangulation does not match the sequence's start signature")]
    StartMismatch,
    #[error("replay ended at a triangulation with a different signature")]
    EndMismatch,
}

impl MoveSequence {
    /// Records `moves` applied to `start`, computing both signatures.
    pub fn record(start: &Triangulation, moves: Vec<Move>) -> Result<Self, ReplayError> {
        let end = replay_moves(start, &moves)?;
        Ok(MoveSequence { start: canonical_signature(start)?, end: canonical_signature(&end)?, moves })
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the moves from `start`, checking both signatures.
    pub fn replay(&self, start: &Triangulation) -> Result<Triangulation, ReplayError> {
        if canonical_signature(start)? != self.start {
            return Err(ReplayError::StartMismatch);
        }
        let end = replay_moves(start, &self.moves)?;
        if canonical_signature(&end)? != self.end {
            return Err(ReplayError::EndMismatch);
        }
        Ok(end)
    }

    /// Replays from `start` and confirms the endpoint is isomorphic to `target`.
    pub fn verify(&self, start: &Triangulation, target: &Triangulation) -> Result<bool, ReplayError> {
        let end = self.replay(start)?;
        Ok(is_isomorphic(&end, target)?.is_some())
    }
}

fn replay_moves(start: &Triangulation, moves: &[Move]) -> Result<Triangulation, ReplayError> {
    let mut current = start.clone();
    for (step, &mv) in moves.iter().enumerate() {
        current = apply(&current, mv).map_err(|source| ReplayError::Move { step, source })?;
    }
    Ok(current)
}
