use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

/// Highest weights `m1, m2, m3` of the three tensor factors and the number
/// `r` of lowerings; the singular weight is `mu = m1 + m2 + m3 - 2r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightConfig {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
    pub r: u32,
}

impl WeightConfig {
    pub const fn new(m1: u32, m2: u32, m3: u32, r: u32) -> Self {
        WeightConfig { m1, m2, m3, r }
    }

    pub fn weights(&self) -> [u32; 3] {
        [self.m1, self.m2, self.m3]
    }

    pub fn mu(&self) -> i64 {
        self.m1 as i64 + self.m2 as i64 + self.m3 as i64 - 2 * self.r as i64
    }

    /// Inclusive range of intermediate indices `r1`, or `None` when empty.
    pub fn admissible_range(&self) -> Option<RangeInclusive<u32>> {
        let (m1, m2, m3, r) = (self.m1 as i64, self.m2 as i64, self.m3 as i64, self.r as i64);
        let lo = (r - m3).max(0);
        let hi = r.min(m1).min(m2).min(m1 + m2 - r);
        (lo <= hi).then_some(lo as u32..=hi as u32)
    }

    /// Covering degree: the number of admissible `r1`.
    pub fn dimension(&self) -> usize {
        self.admissible_range().map_or(0, |r| r.count())
    }
}

impl fmt::Display for WeightConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m1={}, m2={}, m3={}, r={})", self.m1, self.m2, self.m3, self.r)
    }
}

/// Dimension of the singular subspace of weight `m1+m2+m3-2r`.
pub fn singular_dimension(m1: u32, m2: u32, m3: u32, r: u32) -> usize {
    WeightConfig::new(m1, m2, m3, r).dimension()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(WeightConfig::new(3, 4, 4, 4).admissible_range(), Some(0..=3));
        assert_eq!(WeightConfig::new(5, 6, 7, 0).admissible_range(), Some(0..=0));
        assert_eq!(WeightConfig::new(4, 7, 2, 5).admissible_range(), Some(3..=4));
        assert_eq!(WeightConfig::new(1, 1, 1, 3).admissible_range(), None);
    }

    #[test]
    fn dimensions() {
        assert_eq!(singular_dimension(10, 10, 10, 6), 7);
        assert_eq!(singular_dimension(31, 32, 33, 23), 24);
        assert_eq!(singular_dimension(30, 30, 30, 20), 21);
        assert_eq!(singular_dimension(1, 1, 1, 3), 0);
    }
}
