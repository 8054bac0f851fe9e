use std::fmt;

/// One of the two generators of a linked pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `A_j`
    J,
    /// `A_i`
    I,
}

impl Letter {
    fn bit(self) -> u128 {
        match self {
            Letter::I => 1,
            Letter::J => 0,
        }
    }
}

/// Word over `{I, J}` packed into a `u128`: the first letter is the most
/// significant of the `len` low bits, `I = 1`, `J = 0`.
///
/// Field order makes the derived `Ord` the graded lexicographic order with
/// `I > J`: longer words are larger, equal lengths compare lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u128,
}

impl Word {
    pub const MAX_LEN: usize = 128;

    /// The empty word (the unit monomial).
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        assert!(letters.len() <= Self::MAX_LEN, "word longer than {} letters", Self::MAX_LEN);
        let bits = letters.iter().fold(0u128, |acc, l| (acc << 1) | l.bit());
        Self { len: letters.len() as u8, bits }
    }

    /// Parses a string over `I`/`J`, e.g. `"IIJ"`.
    pub fn parse(s: &str) -> Option<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Some(Letter::I),
                'J' => Some(Letter::J),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        (letters.len() <= Self::MAX_LEN).then(|| Self::from_letters(&letters))
    }

    /// `I^n`
    pub fn i_pow(n: usize) -> Self {
        Self::from_letters(&vec![Letter::I; n])
    }

    /// `J^n`
    pub fn j_pow(n: usize) -> Self {
        Self::from_letters(&vec![Letter::J; n])
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, pos: usize) -> Letter {
        assert!(pos < self.len(), "letter index out of range");
        if (self.bits >> (self.len() - 1 - pos)) & 1 == 1 {
            Letter::I
        } else {
            Letter::J
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|p| self.letter(p))
    }

    /// Number of `I` letters.
    pub fn i_degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of `J` letters.
    pub fn j_degree(&self) -> usize {
        self.len() - self.i_degree()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let len = self.len() + other.len();
        assert!(len <= Self::MAX_LEN, "word longer than {} letters", Self::MAX_LEN);
        Word { len: len as u8, bits: shl(self.bits, other.len()) | other.bits }
    }

    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }

    /// Replaces `pattern_len` letters starting at `pos` with `replacement`.
    pub(crate) fn splice(&self, pos: usize, pattern_len: usize, replacement: &Word) -> Word {
        let len = self.len();
        debug_assert!(pos + pattern_len <= len);
        let suffix_len = len - pos - pattern_len;
        let prefix = shr(self.bits, len - pos);
        let suffix = self.bits & low_mask(suffix_len);
        let new_len = pos + replacement.len() + suffix_len;
        assert!(new_len <= Self::MAX_LEN, "word longer than {} letters", Self::MAX_LEN);
        let bits = shl(shl(prefix, replacement.len()) | replacement.bits, suffix_len) | suffix;
        Word { len: new_len as u8, bits }
    }
}

fn shl(x: u128, n: usize) -> u128 {
    if n >= 128 {
        0
    } else {
        x << n
    }
}

fn shr(x: u128, n: usize) -> u128 {
    if n >= 128 {
        0
    } else {
        x >> n
    }
}

pub(crate) fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl fmt::Display for Word {
    /// `Ai·Aj·Ai`; the empty word renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (n, l) in self.letters().enumerate() {
            if n > 0 {
                f.write_str("·")?;
            }
            f.write_str(match l {
                Letter::I => "Ai",
                Letter::J => "Aj",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .letters()
            .map(|l| match l {
                Letter::I => 'I',
                Letter::J => 'J',
            })
            .collect();
        write!(f, "Word({s})")
    }
}
