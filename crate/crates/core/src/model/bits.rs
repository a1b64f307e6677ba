use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use super::Level;

/// A `q`-bit input or output column. Index 1 is the most significant level,
/// index `q` the least significant one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitColumn {
    width: Level,
    // level i lives at bit i-1
    bits: u64,
}

fn low_mask(n: Level) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BitColumn {
    pub fn zeros(width: Level) -> Self {
        assert!(width <= super::MAX_LEVELS, "column width {width} exceeds {}", super::MAX_LEVELS);
        Self { width, bits: 0 }
    }

    /// Column from bits listed most significant first.
    pub fn from_levels(levels: &[bool]) -> Self {
        let mut col = Self::zeros(levels.len() as Level);
        for (i, &b) in levels.iter().enumerate() {
            col.set(i as Level + 1, b);
        }
        col
    }

    #[cfg(test)]
    pub(crate) fn from_raw(width: Level, bits: u64) -> Self {
        Self { width, bits: bits & low_mask(width) }
    }

    pub fn width(&self) -> Level {
        self.width
    }

    #[cfg(test)]
    pub(crate) fn raw(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, level: Level) -> bool {
        assert!((1..=self.width).contains(&level), "level {level} outside 1..={}", self.width);
        (self.bits >> (level - 1)) & 1 == 1
    }

    pub fn set(&mut self, level: Level, bit: bool) {
        assert!((1..=self.width).contains(&level), "level {level} outside 1..={}", self.width);
        let m = 1u64 << (level - 1);
        if bit {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    /// Layered erasure link with `n` surviving levels: the `n` most significant
    /// input bits land on the `n` least significant output positions, the rest
    /// of the output is zero.
    pub fn shift(&self, n: Level) -> Self {
        assert!(n <= self.width, "link level {n} exceeds width {}", self.width);
        let kept = self.bits & low_mask(n);
        Self { width: self.width, bits: kept << (self.width - n) }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn levels(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.width).map(move |i| self.get(i))
    }
}

impl BitXor for BitColumn {
    type Output = BitColumn;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.width, rhs.width, "column width mismatch");
        Self { width: self.width, bits: self.bits ^ rhs.bits }
    }
}

impl BitXorAssign for BitColumn {
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl fmt::Debug for BitColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for b in self.levels() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}
