//! Permutations of the four vertices of a tetrahedron.

use core::fmt;

use crate::error::PermError;

/// A permutation of `{0, 1, 2, 3}`, stored as the image of each vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4([u8; 4]);

/// The six edges of a tetrahedron as vertex pairs, in edge-number order.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Edge number of the edge joining vertices `a` and `b` (`a != b`).
pub fn edge_number(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("edge_number: vertices {a} and {b} do not span an edge"),
    }
}

const ALL: [[u8; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, rejecting non-bijections.
    pub fn from_images(images: [u8; 4]) -> Result<Self, PermError> {
        let mut seen = [false; 4];
        for &img in &images {
            if img > 3 || seen[img as usize] {
                return Err(PermError::NotBijection(images));
            }
            seen[img as usize] = true;
        }
        Ok(Perm4(images))
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(a, b);
        Perm4(images)
    }

    /// All 24 permutations in rank order.
    pub fn all() -> impl Iterator<Item = Perm4> {
        ALL.iter().map(|&images| Perm4(images))
    }

    /// The permutation with the given lexicographic rank (0..24).
    pub fn from_rank(rank: usize) -> Option<Self> {
        ALL.get(rank).map(|&images| Perm4(images))
    }

    /// Lexicographic rank of the image sequence; the identity has rank 0.
    pub fn rank(self) -> usize {
        let [a, b, c, d] = self.0;
        let b_among_rest = b - (a < b) as u8;
        a as usize * 6 + b_among_rest as usize * 2 + (c > d) as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// Image of vertex `i`.
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, img) in images.iter_mut().enumerate() {
            *img = self.0[other.0[i] as usize];
        }
        Perm4(images)
    }

    pub fn inverse(self) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        Perm4(images)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl Default for Perm4 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}{b}{c}{d}")
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

impl core::str::FromStr for Perm4 {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 || !bytes.iter().all(u8::is_ascii_digit) {
            return Err(PermError::Malformed);
        }
        Perm4::from_images([bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0', bytes[3] - b'0'])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn rank_matches_table_order() {
        for (rank, perm) in Perm4::all().enumerate() {
            assert_eq!(perm.rank(), rank, "{perm}");
            assert_eq!(Perm4::from_rank(rank), Some(perm));
        }
    }

    #[test]
    fn group_laws() {
        for a in Perm4::all() {
            assert!(a.compose(a.inverse()).is_identity());
            assert!(a.inverse().compose(a).is_identity());
            for b in Perm4::all() {
                assert_eq!(a.compose(b).sign(), a.sign() * b.sign());
                for c in Perm4::all() {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Perm4::transposition(0, 1);
        let b = Perm4::transposition(1, 2);
        assert_eq!(a.compose(b).apply(1), a.apply(b.apply(1)));
        assert_eq!(a.compose(b).apply(1), 2);
    }

    #[test]
    fn parse_and_display() {
        let p: Perm4 = "1302".parse().unwrap();
        assert_eq!(p.to_string(), "1302");
        assert!("1102".parse::<Perm4>().is_err());
        assert!("130".parse::<Perm4>().is_err());
        assert_eq!(edge_number(3, 1), 4);
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            assert_eq!(edge_number(*a, *b), e);
        }
    }
}
