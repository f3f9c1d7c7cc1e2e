//! Subsets of an n-point universe as bit codes.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported universe.
pub const MAX_POINTS: usize = 16;

/// Bit mask of the whole universe on `n` points.
#[inline]
pub const fn universe_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A subset of `{0, .., n-1}`; point `i` is present iff bit `i` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u32,
    n: u8,
}

impl Subset {
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        if bits & !universe_mask(n) != 0 {
            return Err(Error::InvalidTopology(format!(
                "subset {bits:#b} does not fit a universe of {n} points"
            )));
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Caller guarantees `bits` fits `n`.
    #[inline]
    pub(crate) const fn from_raw(bits: u32, n: usize) -> Self {
        Self { bits, n: n as u8 }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_raw(0, n)
    }

    pub fn full(n: usize) -> Self {
        Self::from_raw(universe_mask(n), n)
    }

    pub fn from_points(points: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &p in points {
            if p >= n {
                return Err(Error::InvalidTopology(format!(
                    "point {p} outside universe of {n}"
                )));
            }
            bits |= 1 << p;
        }
        Self::new(bits, n)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn universe_size(self) -> usize {
        self.n as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, p: usize) -> bool {
        p < 32 && self.bits >> p & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.n as usize).filter(move |&p| bits >> p & 1 == 1)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset::from_raw(self.bits | other.bits, self.n as usize)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset::from_raw(self.bits & other.bits, self.n as usize)
    }
}

/// Complement within the universe.
pub fn complement(s: Subset) -> Subset {
    Subset::from_raw(!s.bits & universe_mask(s.n as usize), s.n as usize)
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.points().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}/{}", self.n)
    }
}
