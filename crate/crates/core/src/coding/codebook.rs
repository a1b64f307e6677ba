use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::matrix::{words_for, BinaryMatrix, Bits, Eliminator, Inserted};
use super::CodingError;

const COLUMN_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// Random linear code over GF(2) with a `k × n_slots` generator matrix.
///
/// Column `j` of the generator is drawn from SplitMix64: a first generator
/// seeded with `seed ^ (j · 0xD1B54A32D192ED03)` yields one word, which seeds a
/// second SplitMix64 whose successive outputs fill the column 64 rows at a
/// time (row `i` is bit `i % 64` of word `i / 64`; bits past `k` are dropped).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codebook {
    k: usize,
    n_slots: usize,
    seed: u64,
}

impl Codebook {
    pub fn new(k: usize, n_slots: usize, seed: u64) -> Result<Self, CodingError> {
        if k > n_slots {
            return Err(CodingError::RateAboveOne { k, n_slots });
        }
        Ok(Self { k, n_slots, seed })
    }

    /// A codebook that may carry more message bits than slots. Such a code can
    /// never be decoded; simulations use it to probe rates above capacity.
    pub fn overloaded(k: usize, n_slots: usize, seed: u64) -> Self {
        Self { k, n_slots, seed }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Generator column of slot `j`, packed into `ceil(k / 64)` words.
    pub fn column(&self, j: usize) -> Vec<u64> {
        let mut outer = SplitMix64::seed_from_u64(self.seed ^ (j as u64).wrapping_mul(COLUMN_SALT));
        let mut inner = SplitMix64::seed_from_u64(outer.next_u64());
        let words = (0..words_for(self.k)).map(|_| inner.next_u64()).collect();
        Bits::from_words(self.k, words).words().to_vec()
    }

    pub fn generator(&self) -> BinaryMatrix {
        let mut g = BinaryMatrix::zeros(self.k, self.n_slots);
        for j in 0..self.n_slots {
            let col = Bits::from_words(self.k, self.column(j));
            for i in 0..self.k {
                if col.get(i) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    /// Slot `j` carries `⟨message, column j⟩ mod 2`.
    pub fn encode(&self, message: &Bits) -> Result<Bits, CodingError> {
        if message.len() != self.k {
            return Err(CodingError::LengthMismatch { expected: self.k, got: message.len() });
        }
        let mut out = Bits::zeros(self.n_slots);
        if self.k == 0 {
            return Ok(out);
        }
        for j in 0..self.n_slots {
            if message.dot(&self.column(j)) {
                out.set(j, true);
            }
        }
        Ok(out)
    }

    /// Recovers the message from `(slot, bit)` observations.
    pub fn decode(&self, received: &[(usize, bool)]) -> Result<Bits, CodingError> {
        let mut seen = vec![false; self.n_slots];
        for &(j, _) in received {
            if j >= self.n_slots {
                return Err(CodingError::SlotOutOfRange { slot: j, n_slots: self.n_slots });
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(CodingError::DuplicateSlot(j));
            }
        }
        if self.k == 0 {
            return if received.iter().any(|&(_, b)| b) {
                Err(CodingError::InconsistentSystem)
            } else {
                Ok(Bits::zeros(0))
            };
        }
        if received.len() < self.k {
            return Err(CodingError::TooFewSlots { got: received.len(), k: self.k });
        }

        let mut elim = Eliminator::new(self.k);
        let mut used = 0;
        for &(j, b) in received {
            used += 1;
            if elim.insert(&self.column(j), b) == Inserted::Contradiction {
                return Err(CodingError::InconsistentSystem);
            }
            if elim.is_full() {
                break;
            }
        }
        let Some(message) = elim.solve() else {
            return Err(CodingError::InsufficientRank { rank: elim.rank(), k: self.k });
        };
        for &(j, b) in &received[used..] {
            if message.dot(&self.column(j)) != b {
                return Err(CodingError::InconsistentSystem);
            }
        }
        Ok(message)
    }
}
