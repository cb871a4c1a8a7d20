//! Gluing tables and their skeleta.
//!
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A gluing
//! `(t, f) -> (t', p)` identifies face `f` of `t` with face `p(f)` of `t'`,
//! sending vertex `k` of `t` to vertex `p(k)` of `t'`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::TriangulationError;
use crate::perm::{edge_number, Perm4, EDGE_VERTICES};

/// The far side of a glued face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    pub fn new(tet: usize, perm: Perm4) -> Self {
        Gluing { tet, perm }
    }
}

/// Per-tetrahedron face gluings; `None` marks a boundary face.
pub type FaceGluings = [Option<Gluing>; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Ideal,
    Material,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// `(tet, edge number)` pairs, sorted.
    pub incidences: Vec<(usize, usize)>,
    /// Some incident face is unglued.
    pub boundary: bool,
    /// The gluings identify the edge with itself in reverse.
    pub reversed: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    /// `(tet, corner)` pairs, sorted.
    pub incidences: Vec<(usize, usize)>,
    pub link_euler: i64,
    pub link_closed: bool,
    pub kind: VertexKind,
}

/// A face-paired collection of tetrahedra with its skeleton precomputed.
///
/// Vertex kinds are read off the link: a vertex whose link is a closed
/// surface other than a sphere is ideal, every other vertex is material.
#[derive(Clone, Debug)]
pub struct Triangulation {
    gluings: Vec<FaceGluings>,
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    vertices: Vec<VertexClass>,
    edges: Vec<EdgeClass>,
    face_count: usize,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.gluings == other.gluings
    }
}

impl Eq for Triangulation {}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets { parent: (0..size).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Triangulation {
    /// Validates a gluing table and computes its skeleton.
    ///
    /// Unglued faces are allowed; use [`Triangulation::is_closed`] or
    /// [`Triangulation::require_closed`] where a closed complex is needed.
    pub fn new(gluings: Vec<FaceGluings>) -> Result<Self, TriangulationError> {
        let tet_count = gluings.len();
        if tet_count == 0 {
            return Err(TriangulationError::Empty);
        }
        for (tet, faces) in gluings.iter().enumerate() {
            for (face, slot) in faces.iter().enumerate() {
                let Some(g) = slot else { continue };
                if g.tet >= tet_count {
                    return Err(TriangulationError::TargetOutOfRange { tet, face, target: g.tet, tet_count });
                }
                let back_face = g.perm.apply(face);
                if g.tet == tet && back_face == face && g.perm.is_identity() {
                    return Err(TriangulationError::SelfIdentityGluing { tet, face });
                }
                let back = gluings[g.tet][back_face];
                if back != Some(Gluing::new(tet, g.perm.inverse())) {
                    return Err(TriangulationError::InvolutionViolation { tet, face });
                }
            }
        }
        Ok(Self::with_skeleton(gluings))
    }

    /// Glues abstract simplices (vertex labels per tetrahedron) along equal faces.
    pub fn from_simplices(simplices: &[[usize; 4]]) -> Result<Self, TriangulationError> {
        let mut sides: alloc::collections::BTreeMap<[usize; 3], Vec<(usize, usize)>> = Default::default();
        for (tet, pts) in simplices.iter().enumerate() {
            for face in 0..4 {
                let mut key = [0usize; 3];
                for (slot, v) in key.iter_mut().zip((0..4).filter(|&v| v != face)) {
                    *slot = pts[v];
                }
                key.sort_unstable();
                if key[0] == key[1] || key[1] == key[2] {
                    return Err(TriangulationError::DegenerateSimplex(tet));
                }
                sides.entry(key).or_default().push((tet, face));
            }
        }
        let mut gluings = vec![[None; 4]; simplices.len()];
        for pair in sides.values() {
            match pair.as_slice() {
                [_] => {}
                &[(a, fa), (b, fb)] => {
                    let mut images = [0u8; 4];
                    for v in 0..4 {
                        images[v] = if v == fa {
                            fb as u8
                        } else {
                            simplices[b].iter().position(|&p| p == simplices[a][v]).expect("shared face") as u8
                        };
                    }
                    let perm = Perm4::from_images(images).map_err(|_| TriangulationError::DegenerateSimplex(a))?;
                    gluings[a][fa] = Some(Gluing::new(b, perm));
                    gluings[b][fb] = Some(Gluing::new(a, perm.inverse()));
                }
                &[(tet, face), ..] => return Err(TriangulationError::OverfullFace { tet, face }),
                [] => unreachable!("entries are created non-empty"),
            }
        }
        Triangulation::new(gluings)
    }

    fn with_skeleton(gluings: Vec<FaceGluings>) -> Self {
        let n = gluings.len();
        let mut vertex_sets = DisjointSets::new(4 * n);
        let mut edge_sets = DisjointSets::new(6 * n);
        let mut end_sets = DisjointSets::new(12 * n);
        let mut corner_sets = DisjointSets::new(16 * n);
        let mut face_count = 0;
        for (tet, faces) in gluings.iter().enumerate() {
            for (face, slot) in faces.iter().enumerate() {
                let Some(g) = slot else {
                    face_count += 1;
                    continue;
                };
                if (g.tet, g.perm.apply(face)) >= (tet, face) {
                    face_count += 1;
                }
                for v in (0..4).filter(|&v| v != face) {
                    let w = g.perm.apply(v);
                    vertex_sets.union(4 * tet + v, 4 * g.tet + w);
                    corner_sets.union(16 * tet + 4 * face + v, 16 * g.tet + 4 * g.perm.apply(face) + w);
                }
                for (e, &[a, b]) in EDGE_VERTICES.iter().enumerate() {
                    if a == face || b == face {
                        continue;
                    }
                    let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                    let target = edge_number(pa, pb);
                    edge_sets.union(6 * tet + e, 6 * g.tet + target);
                    let (end_a, end_b) = if pa < pb { (0, 1) } else { (1, 0) };
                    end_sets.union(12 * tet + 2 * e, 12 * g.tet + 2 * target + end_a);
                    end_sets.union(12 * tet + 2 * e + 1, 12 * g.tet + 2 * target + end_b);
                }
            }
        }

        let mut edge_index = vec![usize::MAX; 6 * n];
        let mut edges: Vec<EdgeClass> = Vec::new();
        let mut edge_of = vec![[0usize; 6]; n];
        for tet in 0..n {
            for e in 0..6 {
                let root = edge_sets.find(6 * tet + e);
                if edge_index[root] == usize::MAX {
                    edge_index[root] = edges.len();
                    edges.push(EdgeClass { incidences: Vec::new(), boundary: false, reversed: false });
                }
                let class = edge_index[root];
                edge_of[tet][e] = class;
                let [a, b] = EDGE_VERTICES[e];
                let edge = &mut edges[class];
                edge.incidences.push((tet, e));
                let faces_on_edge = (0..4).filter(|&f| f != a && f != b);
                if faces_on_edge.clone().any(|f| gluings[tet][f].is_none()) {
                    edge.boundary = true;
                }
                if end_sets.find(12 * tet + 2 * e) == end_sets.find(12 * tet + 2 * e + 1) {
                    edge.reversed = true;
                }
            }
        }

        let mut vertex_index = vec![usize::MAX; 4 * n];
        let mut vertices: Vec<VertexClass> = Vec::new();
        let mut vertex_of = vec![[0usize; 4]; n];
        for (tet, row) in vertex_of.iter_mut().enumerate() {
            for (v, slot) in row.iter_mut().enumerate() {
                let root = vertex_sets.find(4 * tet + v);
                if vertex_index[root] == usize::MAX {
                    vertex_index[root] = vertices.len();
                    vertices.push(VertexClass {
                        incidences: Vec::new(),
                        link_euler: 0,
                        link_closed: true,
                        kind: VertexKind::Material,
                    });
                }
                *slot = vertex_index[root];
                vertices[vertex_index[root]].incidences.push((tet, v));
            }
        }

        // Link of each vertex class: triangles are corners, edges are
        // face-corner classes, vertices are edge-end classes.
        let mut link_vertices = vec![0i64; vertices.len()];
        let mut link_edges = vec![0i64; vertices.len()];
        let mut seen_end = vec![false; 12 * n];
        let mut seen_corner = vec![false; 16 * n];
        for tet in 0..n {
            for (e, &[a, b]) in EDGE_VERTICES.iter().enumerate() {
                for (end, v) in [(0, a), (1, b)] {
                    let root = end_sets.find(12 * tet + 2 * e + end);
                    if !seen_end[root] {
                        seen_end[root] = true;
                        link_vertices[vertex_of[tet][v]] += 1;
                    }
                }
            }
            for (face, glued) in gluings[tet].iter().enumerate() {
                for v in (0..4).filter(|&v| v != face) {
                    let class = vertex_of[tet][v];
                    if glued.is_none() {
                        vertices[class].link_closed = false;
                    }
                    let root = corner_sets.find(16 * tet + 4 * face + v);
                    if !seen_corner[root] {
                        seen_corner[root] = true;
                        link_edges[class] += 1;
                    }
                }
            }
        }
        for (i, vertex) in vertices.iter_mut().enumerate() {
            vertex.link_euler = link_vertices[i] - link_edges[i] + vertex.incidences.len() as i64;
            vertex.kind = if vertex.link_closed && vertex.link_euler != 2 {
                VertexKind::Ideal
            } else {
                VertexKind::Material
            };
        }

        Triangulation { gluings, vertex_of, edge_of, vertices, edges, face_count }
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluings(&self) -> &[FaceGluings] {
        &self.gluings
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertices
    }

    /// Edge class containing edge `edge` of tetrahedron `tet`.
    pub fn edge_class_of(&self, tet: usize, edge: usize) -> usize {
        self.edge_of[tet][edge]
    }

    /// Vertex class containing corner `vertex` of tetrahedron `tet`.
    pub fn vertex_class_of(&self, tet: usize, vertex: usize) -> usize {
        self.vertex_of[tet][vertex]
    }

    /// Number of distinct triangles after identification.
    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|faces| faces.iter().all(Option::is_some))
    }

    /// Errors with the first unglued face, if any.
    pub fn require_closed(&self) -> Result<(), TriangulationError> {
        for (tet, faces) in self.gluings.iter().enumerate() {
            if let Some(face) = faces.iter().position(Option::is_none) {
                return Err(TriangulationError::UngluedFace { tet, face });
            }
        }
        Ok(())
    }

    pub fn cusp_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Ideal).count()
    }

    /// Vertex class indices of the ideal vertices, in class order.
    pub fn cusps(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].kind == VertexKind::Ideal).collect()
    }

    /// `(p1, p2, p3)`: numbers of edges, triangles and tetrahedra.
    pub fn skeleton_counts(&self) -> (usize, usize, usize) {
        (self.edges.len(), self.face_count, self.tet_count())
    }

    pub fn is_connected(&self) -> bool {
        self.component_of_zero().iter().all(|&reached| reached)
    }

    fn component_of_zero(&self) -> Vec<bool> {
        let mut reached = vec![false; self.tet_count()];
        let mut queue = VecDeque::from([0usize]);
        reached[0] = true;
        while let Some(tet) = queue.pop_front() {
            for g in self.gluings[tet].iter().flatten() {
                if !reached[g.tet] {
                    reached[g.tet] = true;
                    queue.push_back(g.tet);
                }
            }
        }
        reached
    }

    /// A sign per tetrahedron making every gluing orientation-reversing, if one exists.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let n = self.tet_count();
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(tet) = queue.pop_front() {
                for g in self.gluings[tet].iter().flatten() {
                    let wanted = -sign[tet] * g.perm.sign();
                    if sign[g.tet] == 0 {
                        sign[g.tet] = wanted;
                        queue.push_back(g.tet);
                    } else if sign[g.tet] != wanted {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// Relabels tetrahedra and vertices.
    ///
    /// Old tetrahedron `t` becomes `tet_map[t]`, and its vertex `v` becomes
    /// vertex `vertex_maps[t].apply(v)` of the new tetrahedron.
    ///
    /// # Panics
    /// If `tet_map` is not a permutation of `0..tet_count`.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        let n = self.tet_count();
        assert!(tet_map.len() == n && vertex_maps.len() == n, "relabel: map sizes must equal tet count");
        let mut gluings = vec![[None; 4]; n];
        for (tet, faces) in self.gluings.iter().enumerate() {
            for (face, slot) in faces.iter().enumerate() {
                let new_face = vertex_maps[tet].apply(face);
                gluings[tet_map[tet]][new_face] = slot.map(|g| {
                    let perm = vertex_maps[g.tet].compose(g.perm).compose(vertex_maps[tet].inverse());
                    Gluing::new(tet_map[g.tet], perm)
                });
            }
        }
        Triangulation::new(gluings).expect("relabelling preserves validity")
    }

    /// The mirror image: every vertex labelling composed with the swap of vertices 0 and 1.
    pub fn mirror(&self) -> Triangulation {
        let n = self.tet_count();
        let identity: Vec<usize> = (0..n).collect();
        self.relabel(&identity, &vec![Perm4::transposition(0, 1); n])
    }

    pub fn validate(&self) -> ValidationReport {
        let mut defects = Vec::new();
        for (tet, faces) in self.gluings.iter().enumerate() {
            for (face, slot) in faces.iter().enumerate() {
                if slot.is_none() {
                    defects.push(Defect::UngluedFace { tet, face });
                }
            }
        }
        let connected = self.is_connected();
        if !connected {
            defects.push(Defect::Disconnected);
        }
        for (class, edge) in self.edges.iter().enumerate() {
            if edge.reversed {
                defects.push(Defect::ReversedEdge { class });
            }
        }
        for (class, vertex) in self.vertices.iter().enumerate() {
            if vertex.kind == VertexKind::Ideal && vertex.link_euler != 0 {
                defects.push(Defect::IdealLinkNotFlat { class, euler: vertex.link_euler });
            }
        }
        ValidationReport {
            closed: self.is_closed(),
            orientable: self.is_orientable(),
            connected,
            cusp_count: self.cusp_count(),
            edge_degrees: self.edges.iter().map(EdgeClass::degree).collect(),
            vertex_classes: self
                .vertices
                .iter()
                .map(|v| VertexSummary { kind: v.kind, link_euler: v.link_euler, corners: v.incidences.len() })
                .collect(),
            defects,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    UngluedFace { tet: usize, face: usize },
    Disconnected,
    ReversedEdge { class: usize },
    /// An ideal vertex whose link is not a torus or Klein bottle.
    IdealLinkNotFlat { class: usize, euler: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexSummary {
    pub kind: VertexKind,
    pub link_euler: i64,
    pub corners: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub closed: bool,
    pub orientable: bool,
    pub connected: bool,
    pub cusp_count: usize,
    pub edge_degrees: Vec<usize>,
    pub vertex_classes: Vec<VertexSummary>,
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}
