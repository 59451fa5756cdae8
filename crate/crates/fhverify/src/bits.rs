//! Fixed-length bit strings standing for computational basis states.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of qubits a [`BitString`] can hold.
pub const MAX_QUBITS: usize = 64;

/// A fixed-length string of bits, packed into a single machine word.
///
/// Qubit 0 is the leftmost character in the textual rendering and the most
/// significant bit of [`BitString::to_index`]. This convention is used
/// everywhere in the crate, including QFT register significance and state
/// vector indexing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: u8,
    /// Value of the string read as an integer, qubit 0 most significant.
    word: u64,
}

impl BitString {
    /// All-zero string of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::BadLength(n));
        }
        Ok(Self {
            len: n as u8,
            word: 0,
        })
    }

    /// Builds a string of length `n` from its integer reading
    /// (qubit 0 most significant).
    ///
    /// Panics if `n` is out of range or `index` does not fit in `n` bits.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "length {n} out of range");
        assert!(
            n == MAX_QUBITS || index < (1u64 << n),
            "index {index} does not fit in {n} bits"
        );
        Self {
            len: n as u8,
            word: index,
        }
    }

    /// Number of qubits.
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    /// The string read as an integer, qubit 0 most significant.
    pub fn to_index(&self) -> u64 {
        self.word
    }

    fn mask_of(&self, qubit: usize) -> u64 {
        debug_assert!(qubit < self.len());
        1u64 << (self.len() - 1 - qubit)
    }

    /// Value of the bit at `qubit`. Panics if out of range.
    pub fn get(&self, qubit: usize) -> bool {
        assert!(
            qubit < self.len(),
            "qubit {qubit} out of range [0, {})",
            self.len()
        );
        self.word & self.mask_of(qubit) != 0
    }

    /// Copy of this string with the bit at `qubit` set to `value`.
    pub fn with_bit(&self, qubit: usize, value: bool) -> Self {
        assert!(
            qubit < self.len(),
            "qubit {qubit} out of range [0, {})",
            self.len()
        );
        let mask = self.mask_of(qubit);
        let word = if value {
            self.word | mask
        } else {
            self.word & !mask
        };
        Self {
            len: self.len,
            word,
        }
    }

    /// Copy of this string with the bit at `qubit` flipped.
    pub fn flipped(&self, qubit: usize) -> Self {
        assert!(
            qubit < self.len(),
            "qubit {qubit} out of range [0, {})",
            self.len()
        );
        Self {
            len: self.len,
            word: self.word ^ self.mask_of(qubit),
        }
    }

    /// Iterator over bit values, qubit 0 first.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |q| self.get(q))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.word, width = self.len())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_QUBITS {
            return Err(Error::BadLength(s.len()));
        }
        let mut word = 0u64;
        for c in s.chars() {
            match c {
                '0' => word <<= 1,
                '1' => word = (word << 1) | 1,
                other => return Err(Error::BadBitChar { found: other }),
            }
        }
        Ok(Self {
            len: s.len() as u8,
            word,
        })
    }
}
