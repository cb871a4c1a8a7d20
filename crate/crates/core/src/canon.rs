//! Canonical signatures and isomorphism testing.
//!
//! A labelling is fixed by a start tetrahedron and a vertex relabelling of it;
//! breadth-first traversal then forces the labels of every other tetrahedron
//! so that the gluing used to discover it becomes the identity. The signature
//! is the least integer encoding over all starts, rendered in a 64-character
//! alphabet whose characters are in ASCII order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::CanonError;
use crate::perm::Perm4;
use crate::triangulation::{Triangulation, VertexKind};

const ALPHABET: &[u8; 64] = b"+-0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Label-invariant encoding of a connected triangulation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(String);

impl Signature {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Wraps a previously rendered signature string.
    pub fn from_rendered(text: String) -> Self {
        Signature(text)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A combinatorial isomorphism: tetrahedron `t` goes to `tet_map[t]` with
/// its vertices relabelled by `vertex_maps[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm4>,
}

impl Isomorphism {
    pub fn identity(tet_count: usize) -> Self {
        Isomorphism { tet_map: (0..tet_count).collect(), vertex_maps: vec![Perm4::IDENTITY; tet_count] }
    }

    pub fn inverse(&self) -> Isomorphism {
        let n = self.tet_map.len();
        let mut tet_map = vec![0; n];
        let mut vertex_maps = vec![Perm4::IDENTITY; n];
        for (t, &image) in self.tet_map.iter().enumerate() {
            tet_map[image] = t;
            vertex_maps[image] = self.vertex_maps[t].inverse();
        }
        Isomorphism { tet_map, vertex_maps }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Isomorphism) -> Isomorphism {
        let tet_map = self.tet_map.iter().map(|&t| other.tet_map[t]).collect();
        let vertex_maps =
            self.tet_map.iter().zip(&self.vertex_maps).map(|(&t, &phi)| other.vertex_maps[t].compose(phi)).collect();
        Isomorphism { tet_map, vertex_maps }
    }

    /// Checks that the map is a bijection carrying every gluing of `from` onto `to`.
    pub fn verify(&self, from: &Triangulation, to: &Triangulation) -> bool {
        let n = from.tet_count();
        if to.tet_count() != n || self.tet_map.len() != n || self.vertex_maps.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &t in &self.tet_map {
            if t >= n || hit[t] {
                return false;
            }
            hit[t] = true;
        }
        for tet in 0..n {
            let phi = self.vertex_maps[tet];
            for face in 0..4 {
                let expected = from.gluing(tet, face).map(|g| {
                    (self.tet_map[g.tet], self.vertex_maps[g.tet].compose(g.perm).compose(phi.inverse()))
                });
                let actual = to.gluing(self.tet_map[tet], phi.apply(face)).map(|g| (g.tet, g.perm));
                if expected != actual {
                    return false;
                }
            }
            for v in 0..4 {
                let kind_from = from.vertex_classes()[from.vertex_class_of(tet, v)].kind;
                let kind_to = to.vertex_classes()[to.vertex_class_of(self.tet_map[tet], phi.apply(v))].kind;
                if kind_from != kind_to {
                    return false;
                }
            }
        }
        true
    }
}

/// The least encoding together with the labelling that produces it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: Vec<u32>,
    /// `order[k]` is the original tetrahedron given label `k`.
    order: Vec<usize>,
    /// Per original tetrahedron: original vertex -> canonical vertex.
    maps: Vec<Perm4>,
}

impl CanonicalForm {
    /// The relabelling from the original triangulation to its canonical copy.
    pub fn to_canonical(&self) -> Isomorphism {
        let mut tet_map = vec![0; self.order.len()];
        for (k, &t) in self.order.iter().enumerate() {
            tet_map[t] = k;
        }
        Isomorphism { tet_map, vertex_maps: self.maps.clone() }
    }

    pub fn signature(&self) -> Signature {
        render(&self.code, self.order.len())
    }
}

struct Comparison<'a> {
    best: Option<&'a [u32]>,
    state: Ordering,
}

impl Comparison<'_> {
    /// Records the next value; false once the candidate is known to be worse.
    fn push(&mut self, code: &mut Vec<u32>, value: u32) -> bool {
        if self.state == Ordering::Equal {
            if let Some(best) = self.best {
                self.state = value.cmp(&best[code.len()]);
                if self.state == Ordering::Greater {
                    return false;
                }
            }
        }
        code.push(value);
        true
    }
}

fn encode_from(tri: &Triangulation, start: usize, start_map: Perm4, best: Option<&[u32]>) -> Option<CanonicalForm> {
    let n = tri.tet_count();
    let unglued = n as u32;
    let mut cmp = Comparison { best, state: Ordering::Equal };
    let mut code = Vec::with_capacity(1 + 8 * n + 4 * n);
    let mut order = Vec::with_capacity(n);
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut maps = vec![Perm4::IDENTITY; n];
    label[start] = Some(0);
    maps[start] = start_map;
    order.push(start);
    if !cmp.push(&mut code, n as u32) {
        return None;
    }
    let mut k = 0;
    while k < order.len() {
        let tet = order[k];
        let phi = maps[tet];
        let phi_inv = phi.inverse();
        for new_face in 0..4 {
            let (target, rank) = match tri.gluing(tet, phi_inv.apply(new_face)) {
                None => (unglued, 0),
                Some(g) => {
                    let target = match label[g.tet] {
                        Some(target) => target,
                        None => {
                            let target = order.len();
                            label[g.tet] = Some(target);
                            maps[g.tet] = phi.compose(g.perm.inverse());
                            order.push(g.tet);
                            target
                        }
                    };
                    (target as u32, maps[g.tet].compose(g.perm).compose(phi_inv).rank() as u32)
                }
            };
            if !cmp.push(&mut code, target) || !cmp.push(&mut code, rank) {
                return None;
            }
        }
        k += 1;
    }
    debug_assert_eq!(order.len(), n, "caller checks connectivity");
    let mut seen = vec![false; tri.vertex_classes().len()];
    for &tet in &order {
        let phi_inv = maps[tet].inverse();
        for new_vertex in 0..4 {
            let class = tri.vertex_class_of(tet, phi_inv.apply(new_vertex));
            if !seen[class] {
                seen[class] = true;
                let kind = match tri.vertex_classes()[class].kind {
                    VertexKind::Ideal => 0,
                    VertexKind::Material => 1,
                };
                if !cmp.push(&mut code, kind) {
                    return None;
                }
            }
        }
    }
    Some(CanonicalForm { code, order, maps })
}

/// The least encoding over all start tetrahedra and start labellings.
pub fn canonical_form(tri: &Triangulation) -> Result<CanonicalForm, CanonError> {
    if !tri.is_connected() {
        return Err(CanonError::Disconnected);
    }
    let mut best: Option<CanonicalForm> = None;
    for start in 0..tri.tet_count() {
        for start_map in Perm4::all() {
            let candidate = encode_from(tri, start, start_map, best.as_ref().map(|b| b.code.as_slice()));
            if let Some(candidate) = candidate {
                if best.as_ref().is_none_or(|b| candidate.code < b.code) {
                    best = Some(candidate);
                }
            }
        }
    }
    Ok(best.expect("at least one labelling"))
}

pub fn canonical_signature(tri: &Triangulation) -> Result<Signature, CanonError> {
    canonical_form(tri).map(|form| form.signature())
}

fn digits(value: u32, width: usize, out: &mut String) {
    for i in (0..width).rev() {
        out.push(ALPHABET[((value >> (6 * i)) & 63) as usize] as char);
    }
}

fn render(code: &[u32], tet_count: usize) -> Signature {
    let mut width = 1;
    while (tet_count as u64) >= 1u64 << (6 * width) {
        width += 1;
    }
    let mut out = String::new();
    out.push(ALPHABET[width] as char);
    digits(code[0], width, &mut out);
    let gluing_end = 1 + 8 * tet_count;
    for pair in code[1..gluing_end].chunks(2) {
        digits(pair[0], width, &mut out);
        digits(pair[1], 1, &mut out);
    }
    for &kind in &code[gluing_end..] {
        digits(kind, 1, &mut out);
    }
    Signature(out)
}

/// An explicit isomorphism from `a` to `b`, if one exists, verified against every gluing.
pub fn is_isomorphic(a: &Triangulation, b: &Triangulation) -> Result<Option<Isomorphism>, CanonError> {
    if a.tet_count() != b.tet_count() {
        return Ok(None);
    }
    let (form_a, form_b) = (canonical_form(a)?, canonical_form(b)?);
    if form_a.code != form_b.code {
        return Ok(None);
    }
    let map = form_a.to_canonical().then(&form_b.to_canonical().inverse());
    Ok(map.verify(a, b).then_some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn relabelling_preserves_signature() {
        let tri = census::figure_eight();
        let swapped = tri.relabel(&[1, 0], &[Perm4::from_rank(7).unwrap(), Perm4::from_rank(19).unwrap()]);
        assert_ne!(swapped, tri);
        assert_eq!(canonical_signature(&swapped).unwrap(), canonical_signature(&tri).unwrap());
        let iso = is_isomorphic(&tri, &swapped).unwrap().unwrap();
        assert!(iso.verify(&tri, &swapped));
        assert!(iso.inverse().verify(&swapped, &tri));
    }

    #[test]
    fn distinct_census_manifolds_differ() {
        let sigs: Vec<_> =
            census::closed_fixtures().iter().map(|(_, tri)| canonical_signature(tri).unwrap()).collect();
        for i in 0..sigs.len() {
            for j in i + 1..sigs.len() {
                assert_ne!(sigs[i], sigs[j], "{i} vs {j}");
            }
        }
        assert!(is_isomorphic(&census::figure_eight(), &census::gieseking()).unwrap().is_none());
    }

    #[test]
    fn signature_shape() {
        let sig = canonical_signature(&census::figure_eight()).unwrap();
        // width prefix, count, then (target, rank) per face
        assert_eq!(sig.as_str().len(), 2 + 2 * 8 + 1);
        assert!(sig.as_str().starts_with("-0"));
        let bytes = sig.as_str().as_bytes();
        assert!(bytes.iter().all(|c| ALPHABET.contains(c)));
        assert!(ALPHABET.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn disconnected_is_an_error() {
        let two = Triangulation::new(vec![[None; 4], [None; 4]]).unwrap();
        assert_eq!(canonical_signature(&two), Err(CanonError::Disconnected));
    }
}
