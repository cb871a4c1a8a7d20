//! Breadth-first search in the Pachner move graph, modulo isomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::canon::{canonical_signature, is_isomorphic, Signature};
use crate::error::{CanonError, MoveError};
use crate::moves::{applicable_moves, apply, invert, Move, MoveSequence, ReplayError};
use crate::triangulation::Triangulation;

/// Limits on a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_moves: usize,
    pub max_tetrahedra: usize,
    pub max_states: usize,
}

impl SearchBudget {
    /// Extra tetrahedra allowed beyond the larger endpoint by default.
    pub const DEFAULT_HEADROOM: usize = 4;

    /// A budget whose tetrahedron cap is the larger endpoint plus [`Self::DEFAULT_HEADROOM`].
    pub fn for_endpoints(first: &Triangulation, second: &Triangulation, max_moves: usize, max_states: usize) -> Self {
        SearchBudget {
            max_moves,
            max_tetrahedra: first.tet_count().max(second.tet_count()) + Self::DEFAULT_HEADROOM,
            max_states,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no path of at most {max_moves} moves found ({explored} states explored)")]
    NotFound { max_moves: usize, explored: usize },
    #[error("state cap of {max_states} reached")]
    StateCap { max_states: usize, explored: usize },
    #[error("tetrahedron cap {cap} is below an endpoint's {tet_count} tetrahedra")]
    CapBelowEndpoint { cap: usize, tet_count: usize },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("assembled path failed verification")]
    Unverified,
}

/// One step out of a triangulation.
#[derive(Clone, Debug)]
pub struct Neighbour {
    pub mv: Move,
    pub tri: Triangulation,
    pub signature: Signature,
}

/// Results of every applicable move that stays within the tetrahedron cap.
pub fn neighbours(tri: &Triangulation, budget: &SearchBudget) -> Result<Vec<Neighbour>, SearchError> {
    let mut out = Vec::new();
    for mv in applicable_moves(tri) {
        let size = tri.tet_count() as isize + mv.kind().tet_delta();
        if size > budget.max_tetrahedra as isize {
            continue;
        }
        let next = apply(tri, mv)?;
        let signature = canonical_signature(&next)?;
        out.push(Neighbour { mv, tri: next, signature });
    }
    Ok(out)
}

struct Node {
    tri: Triangulation,
    parent: Option<(Signature, Move)>,
}

/// One side of a bidirectional search.
struct Side {
    nodes: BTreeMap<Signature, Node>,
    frontier: BTreeSet<Signature>,
    depth: usize,
}

impl Side {
    fn new(tri: &Triangulation, signature: Signature) -> Self {
        let mut nodes = BTreeMap::new();
        nodes.insert(signature.clone(), Node { tri: tri.clone(), parent: None });
        Side { nodes, frontier: BTreeSet::from([signature]), depth: 0 }
    }

    /// Moves from the root to `target`, with the labelled triangulations visited.
    fn chain(&self, target: &Signature) -> Vec<(Move, Triangulation)> {
        let mut steps = Vec::new();
        let mut cursor = target.clone();
        while let Some((parent, mv)) = &self.nodes[&cursor].parent {
            steps.push((*mv, self.nodes[parent].tri.clone()));
            cursor = parent.clone();
        }
        steps.reverse();
        steps
    }
}

/// Expands one layer; returns signatures of new nodes also present on `other`.
fn expand(
    side: &mut Side,
    other: &Side,
    budget: &SearchBudget,
    other_count: usize,
) -> Result<BTreeSet<Signature>, SearchError> {
    let mut next = BTreeSet::new();
    let mut meetings = BTreeSet::new();
    let frontier = core::mem::take(&mut side.frontier);
    for signature in &frontier {
        let tri = side.nodes[signature].tri.clone();
        for n in neighbours(&tri, budget)? {
            if side.nodes.contains_key(&n.signature) {
                continue;
            }
            if side.nodes.len() + other_count >= budget.max_states {
                return Err(SearchError::StateCap {
                    max_states: budget.max_states,
                    explored: side.nodes.len() + other_count,
                });
            }
            if other.nodes.contains_key(&n.signature) {
                meetings.insert(n.signature.clone());
            }
            next.insert(n.signature.clone());
            side.nodes.insert(n.signature, Node { tri: n.tri, parent: Some((signature.clone(), n.mv)) });
        }
    }
    side.frontier = next;
    side.depth += 1;
    Ok(meetings)
}

/// A shortest move sequence from `first` to a triangulation isomorphic to `second`.
///
/// Searches from both ends, always growing the smaller frontier (the forward
/// one on ties). The returned sequence has been replayed and checked.
pub fn connect(first: &Triangulation, second: &Triangulation, budget: &SearchBudget) -> Result<MoveSequence, SearchError> {
    for tri in [first, second] {
        if tri.tet_count() > budget.max_tetrahedra {
            return Err(SearchError::CapBelowEndpoint { cap: budget.max_tetrahedra, tet_count: tri.tet_count() });
        }
    }
    let (sig_first, sig_second) = (canonical_signature(first)?, canonical_signature(second)?);
    if sig_first == sig_second {
        return finish(first, second, Vec::new());
    }
    let mut forward = Side::new(first, sig_first);
    let mut backward = Side::new(second, sig_second);
    loop {
        let explored = forward.nodes.len() + backward.nodes.len();
        if forward.depth + backward.depth >= budget.max_moves
            || forward.frontier.is_empty()
            || backward.frontier.is_empty()
        {
            return Err(SearchError::NotFound { max_moves: budget.max_moves, explored });
        }
        let grow_forward = forward.frontier.len() <= backward.frontier.len();
        let meetings = if grow_forward {
            expand(&mut forward, &backward, budget, backward.nodes.len())?
        } else {
            expand(&mut backward, &forward, budget, forward.nodes.len())?
        };
        if let Some(meeting) = meetings.into_iter().next() {
            let moves = assemble(&forward, &backward, &meeting)?;
            return finish(first, second, moves);
        }
    }
}

fn finish(first: &Triangulation, second: &Triangulation, moves: Vec<Move>) -> Result<MoveSequence, SearchError> {
    let sequence = MoveSequence::record(first, moves)?;
    if !sequence.verify(first, second)? {
        return Err(SearchError::Unverified);
    }
    Ok(sequence)
}

/// Joins the forward chain to the reversed backward chain.
///
/// Backward moves are inverted and carried onto the forward labelling through
/// explicit isomorphisms, since the two sides label equal states differently.
fn assemble(forward: &Side, backward: &Side, meeting: &Signature) -> Result<Vec<Move>, SearchError> {
    let mut moves: Vec<Move> = forward.chain(meeting).into_iter().map(|(mv, _)| mv).collect();
    let mut current = forward.nodes[meeting].tri.clone();
    let back_steps = backward.chain(meeting);
    let mut stored = backward.nodes[meeting].tri.clone();
    for (mv, before) in back_steps.into_iter().rev() {
        let undo = invert(mv, &before)?;
        let iso = is_isomorphic(&stored, &current)?.ok_or(SearchError::Unverified)?;
        let carried = undo.transport(&iso.tet_map, &iso.vertex_maps);
        current = apply(&current, carried)?;
        moves.push(carried);
        stored = before;
    }
    Ok(moves)
}

/// Sizes of breadth-first layers of distinct triangulations around a start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereReport {
    /// `layers[d]` counts triangulations at distance exactly `d`.
    pub layers: Vec<usize>,
    /// The state cap stopped the search; the last layer may be incomplete.
    pub truncated: bool,
}

pub fn sphere(tri: &Triangulation, radius: usize, budget: &SearchBudget) -> Result<SphereReport, SearchError> {
    let start = canonical_signature(tri)?;
    let mut seen: BTreeSet<Signature> = BTreeSet::from([start.clone()]);
    let mut layer: BTreeMap<Signature, Triangulation> = BTreeMap::from([(start, tri.clone())]);
    let mut layers = vec![1];
    for _ in 0..radius {
        let mut next = BTreeMap::new();
        for current in layer.values() {
            for n in neighbours(current, budget)? {
                if seen.contains(&n.signature) {
                    continue;
                }
                if seen.len() >= budget.max_states {
                    layers.push(next.len());
                    return Ok(SphereReport { layers, truncated: true });
                }
                seen.insert(n.signature.clone());
                next.insert(n.signature, n.tri);
            }
        }
        layers.push(next.len());
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(SphereReport { layers, truncated: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::moves::MoveKind;
    use crate::perm::Perm4;

    fn budget(max_moves: usize, max_tetrahedra: usize) -> SearchBudget {
        SearchBudget { max_moves, max_tetrahedra, max_states: 5000 }
    }

    #[test]
    fn neighbour_caps() {
        let fig8 = census::figure_eight();
        let capped = neighbours(&fig8, &budget(1, 3)).unwrap();
        assert_eq!(capped.len(), 4);
        assert!(capped.iter().all(|n| n.mv.kind() == MoveKind::TwoThree));
        assert!(neighbours(&fig8, &budget(1, 2)).unwrap().is_empty());
        let expanded = apply(&fig8, Move::TwoThree { tet: 0, face: 0 }).unwrap();
        let back = neighbours(&expanded, &budget(1, 3)).unwrap();
        assert!(back.iter().any(|n| n.mv.kind() == MoveKind::ThreeTwo && n.tri.tet_count() == 2));
    }

    #[test]
    fn relabelled_is_distance_zero() {
        let fig8 = census::figure_eight();
        let relabelled = fig8.relabel(&[1, 0], &[Perm4::from_rank(5).unwrap(), Perm4::from_rank(17).unwrap()]);
        let seq = connect(&fig8, &relabelled, &SearchBudget::for_endpoints(&fig8, &relabelled, 4, 1000)).unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn finds_two_move_path_both_ways() {
        let fig8 = census::figure_eight();
        let once = apply(&fig8, Move::TwoThree { tet: 0, face: 0 }).unwrap();
        let twice = apply(&once, Move::TwoThree { tet: 1, face: 2 }).unwrap();
        let b = SearchBudget::for_endpoints(&fig8, &twice, 4, 20_000);
        let there = connect(&fig8, &twice, &b).unwrap();
        let back = connect(&twice, &fig8, &b).unwrap();
        assert_eq!(there.len(), back.len());
        assert!(there.len() <= 2 && !there.is_empty());
        assert!(there.verify(&fig8, &twice).unwrap());
        assert!(back.verify(&twice, &fig8).unwrap());
    }

    #[test]
    fn not_found_and_cap() {
        let fig8 = census::figure_eight();
        let sibling = census::figure_eight_sibling();
        let tight = SearchBudget { max_moves: 2, max_tetrahedra: 3, max_states: 10_000 };
        assert!(matches!(connect(&fig8, &sibling, &tight), Err(SearchError::NotFound { .. })));
        let small = SearchBudget { max_moves: 6, max_tetrahedra: 6, max_states: 5 };
        assert!(matches!(connect(&fig8, &sibling, &small), Err(SearchError::StateCap { .. })));
    }

    #[test]
    fn sphere_layers() {
        let fig8 = census::figure_eight();
        let b = budget(0, 5);
        assert_eq!(sphere(&fig8, 0, &b).unwrap().layers, vec![1]);
        let one = sphere(&fig8, 1, &b).unwrap();
        let distinct: BTreeSet<_> = neighbours(&fig8, &b).unwrap().into_iter().map(|n| n.signature).collect();
        assert_eq!(one.layers, vec![1, distinct.len()]);
        assert!(!one.truncated);
    }
}
