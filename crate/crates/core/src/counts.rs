//! Simplex counts under partial derived subdivision.

use thiserror::Error;

/// Numbers of `i`-simplices, `i = 0..=3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexCounts {
    pub s0: u64,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("subdivision level {0} is not in 0..=3")]
pub struct InvalidLevel(pub u8);

impl SimplexCounts {
    pub fn new(s0: u64, s1: u64, s2: u64, s3: u64) -> Self {
        SimplexCounts { s0, s1, s2, s3 }
    }

    /// Counts `(0, p1, p2, p3)` from a triangulation's skeleton.
    pub fn from_skeleton((p1, p2, p3): (usize, usize, usize)) -> Self {
        SimplexCounts::new(0, p1 as u64, p2 as u64, p3 as u64)
    }

    pub fn as_array(self) -> [u64; 4] {
        [self.s0, self.s1, self.s2, self.s3]
    }
}

const FACTORIAL: [u64; 5] = [1, 1, 2, 6, 24];

/// Counts after the partial derived subdivision that leaves the `level`-skeleton alone.
///
/// Simplices of dimension `i <= level` are kept; a simplex of dimension
/// `i > level` is coned over its subdivided boundary, splitting into
/// `(i+1)!/(level+1)!` pieces. Level 0 is the full derived subdivision and
/// level 3 changes nothing.
pub fn derived_counts(counts: SimplexCounts, level: u8) -> Result<SimplexCounts, InvalidLevel> {
    if level > 3 {
        return Err(InvalidLevel(level));
    }
    let r = level as usize;
    let mut scaled = counts.as_array();
    for (i, s) in scaled.iter_mut().enumerate().skip(r + 1) {
        *s *= FACTORIAL[i + 1] / FACTORIAL[r + 1];
    }
    Ok(SimplexCounts::new(scaled[0], scaled[1], scaled[2], scaled[3]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_derived_subdivision_scales_by_factorials() {
        let out = derived_counts(SimplexCounts::new(0, 1, 1, 1), 0).unwrap();
        assert_eq!((out.s1, out.s2, out.s3), (2, 6, 24));
        let fig8 = derived_counts(SimplexCounts::new(0, 2, 4, 2), 0).unwrap();
        assert_eq!((fig8.s1, fig8.s2, fig8.s3), (4, 24, 48));
    }

    #[test]
    fn partial_levels() {
        let counts = SimplexCounts::new(5, 7, 11, 13);
        assert_eq!(derived_counts(counts, 3).unwrap(), counts);
        assert_eq!(derived_counts(counts, 2).unwrap(), SimplexCounts::new(5, 7, 11, 52));
        assert_eq!(derived_counts(counts, 1).unwrap(), SimplexCounts::new(5, 7, 33, 156));
        assert_eq!(derived_counts(counts, 4), Err(InvalidLevel(4)));
    }
}
