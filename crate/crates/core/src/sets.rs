//! Bitmask sets of voters, rounds and candidates.
//!
//! All sets are stored in a single `u64`, bit `i` standing for the 0-based
//! index `i`. Iteration is always ascending. The JSON form is a list of
//! 1-based indices, matching how voters and rounds are numbered in reports.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Largest index count a set can hold.
pub const MAX_SET_BITS: usize = 64;

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            pub const fn from_bits(bits: u64) -> Self {
                Self(bits)
            }

            /// The set `{0, .., len-1}`.
            pub fn full(len: usize) -> Self {
                debug_assert!(len <= MAX_SET_BITS);
                if len >= 64 {
                    Self(u64::MAX)
                } else {
                    Self((1u64 << len) - 1)
                }
            }

            pub fn singleton(index: usize) -> Self {
                Self(1u64 << index)
            }

            pub const fn bits(self) -> u64 {
                self.0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn contains(self, index: usize) -> bool {
                index < 64 && self.0 >> index & 1 == 1
            }

            pub fn insert(&mut self, index: usize) {
                self.0 |= 1u64 << index;
            }

            pub fn remove(&mut self, index: usize) {
                self.0 &= !(1u64 << index);
            }

            pub fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            /// Smallest member, if any.
            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            /// Largest index plus one (0 for the empty set).
            pub fn span(self) -> usize {
                64 - self.0.leading_zeros() as usize
            }

            pub fn iter(self) -> BitIter {
                BitIter(self.0)
            }

            /// The `count` smallest members.
            pub fn lowest(self, count: usize) -> Self {
                let mut out = 0u64;
                let mut rest = self.0;
                for _ in 0..count {
                    if rest == 0 {
                        break;
                    }
                    let low = rest & rest.wrapping_neg();
                    out |= low;
                    rest ^= low;
                }
                Self(out)
            }

            /// All subsets, in ascending order of their bitmask (the empty set first).
            pub fn subsets(self) -> Submasks {
                Submasks::new(self.0)
            }

            /// All subsets of exactly `size` members, in ascending bitmask order.
            pub fn subsets_of_size(self, size: usize) -> SizedSubmasks {
                SizedSubmasks::new(self.0, size)
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut set = Self::EMPTY;
                for index in iter {
                    set.insert(index);
                }
                set
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("{")?;
                for (k, i) in self.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", i + 1)?;
                }
                f.write_str("}")
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_seq(self.iter().map(|i| i + 1))
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let indices = Vec::<usize>::deserialize(deserializer)?;
                let mut set = Self::EMPTY;
                for one_based in indices {
                    if one_based == 0 || one_based > MAX_SET_BITS {
                        return Err(serde::de::Error::custom(format!(
                            "index {one_based} out of range (indices are 1-based)"
                        )));
                    }
                    set.insert(one_based - 1);
                }
                Ok(set)
            }
        }
    };
}

bitset!(
    /// A subset of voters.
    VoterSet
);
bitset!(
    /// A subset of rounds.
    RoundSet
);
bitset!(
    /// A subset of candidates.
    CandidateSet
);

/// Ascending iterator over the set bits of a mask.
#[derive(Clone, Debug)]
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let index = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(index)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitIter {}

/// Submasks of a mask in ascending numeric order, starting with 0.
#[derive(Clone, Debug)]
pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Submasks {
    fn new(mask: u64) -> Self {
        Self { mask, next: Some(0) }
    }
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        // (s - mask) & mask steps to the next larger submask.
        let following = current.wrapping_sub(self.mask) & self.mask;
        self.next = (following != 0).then_some(following);
        Some(current)
    }
}

/// Fixed-size submasks in ascending numeric order.
///
/// Runs Gosper's hack over the compact index space `0..popcount(mask)` and
/// scatters each pattern into the positions of `mask`; scattering preserves
/// numeric order.
#[derive(Clone, Debug)]
pub struct SizedSubmasks {
    positions: Vec<u8>,
    pattern: Option<u64>,
}

impl SizedSubmasks {
    fn new(mask: u64, size: usize) -> Self {
        let positions: Vec<u8> = BitIter(mask).map(|i| i as u8).collect();
        let pattern = if size > positions.len() {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some(if size == 64 { u64::MAX } else { (1u64 << size) - 1 })
        };
        Self { positions, pattern }
    }

    fn scatter(&self, pattern: u64) -> u64 {
        BitIter(pattern).fold(0u64, |acc, k| acc | 1u64 << self.positions[k])
    }
}

impl Iterator for SizedSubmasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let pattern = self.pattern?;
        let out = self.scatter(pattern);
        let width = self.positions.len();
        self.pattern = if pattern == 0 {
            None
        } else {
            let low = pattern & pattern.wrapping_neg();
            let ripple = pattern.wrapping_add(low);
            if ripple == 0 {
                None
            } else {
                let next = ripple | (((pattern ^ ripple) >> 2) / low);
                (width >= 64 || next >> width == 0).then_some(next)
            }
        };
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
