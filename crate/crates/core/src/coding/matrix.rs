use std::fmt;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Packed bit vector, bit `i` at word `i / 64`, position `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Takes ownership of packed words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        Self { len, words }
    }

    pub fn random(len: usize, rng: &mut impl rand::RngCore) -> Self {
        let words = (0..words_for(len)).map(|_| rng.next_u64()).collect();
        Self::from_words(len, words)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &[u64]) -> bool {
        parity(&self.words, other)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn parity(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// Dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// # Panics
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        let m = 1u64 << (c % 64);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.cols);
        for r in 0..self.rows {
            elim.insert(self.row_words(r), false);
        }
        elim.rank()
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of feeding one equation to an [`Eliminator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Inserted {
    Pivot,
    Redundant,
    Contradiction,
}

/// Incremental Gaussian elimination for `a · x = b` over GF(2).
///
/// The pivot stored at bit `b` has its lowest set bit at `b`, so rows stay in
/// echelon form and back-substitution runs from the top bit down.
pub(crate) struct Eliminator {
    unknowns: usize,
    stride: usize,
    pivots: Vec<u64>,
    has_pivot: Vec<bool>,
    rhs: Vec<bool>,
    rank: usize,
    scratch: Vec<u64>,
}

impl Eliminator {
    pub fn new(unknowns: usize) -> Self {
        let stride = words_for(unknowns);
        Self {
            unknowns,
            stride,
            pivots: vec![0; unknowns * stride],
            has_pivot: vec![false; unknowns],
            rhs: vec![false; unknowns],
            rank: 0,
            scratch: vec![0; stride],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.unknowns
    }

    pub fn insert(&mut self, row: &[u64], mut rhs: bool) -> Inserted {
        let stride = self.stride;
        self.scratch.copy_from_slice(&row[..stride]);
        for w in 0..stride {
            while self.scratch[w] != 0 {
                let bit = w * 64 + self.scratch[w].trailing_zeros() as usize;
                if self.has_pivot[bit] {
                    let piv = &self.pivots[bit * stride..(bit + 1) * stride];
                    for (s, p) in self.scratch[w..].iter_mut().zip(&piv[w..]) {
                        *s ^= p;
                    }
                    rhs ^= self.rhs[bit];
                } else {
                    self.pivots[bit * stride..(bit + 1) * stride].copy_from_slice(&self.scratch);
                    self.has_pivot[bit] = true;
                    self.rhs[bit] = rhs;
                    self.rank += 1;
                    return Inserted::Pivot;
                }
            }
        }
        if rhs {
            Inserted::Contradiction
        } else {
            Inserted::Redundant
        }
    }

    /// Unique solution once the system has full rank.
    pub fn solve(&self) -> Option<Bits> {
        if !self.is_full() {
            return None;
        }
        let mut x = Bits::zeros(self.unknowns);
        for bit in (0..self.unknowns).rev() {
            let piv = &self.pivots[bit * self.stride..(bit + 1) * self.stride];
            let v = self.rhs[bit] ^ parity(piv, x.words());
            x.set(bit, v);
        }
        Some(x)
    }
}
