//! Raw braid words over the Artin generators of the three-strand braid group.
//!
//! Words here are plain letter sequences. Nothing is normalized at this layer;
//! see [`crate::garside`] for canonical forms.
//!
//! Text syntax: `a` = σ₁, `A` = σ₁⁻¹, `b` = σ₂, `B` = σ₂⁻¹, with an optional
//! exponent suffix (`a^3`, `B^2`). Whitespace is ignored and the empty string
//! is the identity.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One Artin generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    index: u8,
    sign: i8,
}

impl Generator {
    pub const S1: Generator = Generator { index: 1, sign: 1 };
    pub const S2: Generator = Generator { index: 2, sign: 1 };
    pub const S1_INV: Generator = Generator { index: 1, sign: -1 };
    pub const S2_INV: Generator = Generator { index: 2, sign: -1 };

    /// Builds a generator; `None` unless `index ∈ {1,2}` and `sign ∈ {1,-1}`.
    pub fn new(index: u8, sign: i8) -> Option<Generator> {
        match (index, sign) {
            (1 | 2, 1 | -1) => Some(Generator { index, sign }),
            _ => None,
        }
    }

    pub fn positive(index: u8) -> Generator {
        debug_assert!(index == 1 || index == 2);
        Generator { index, sign: 1 }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn is_positive(self) -> bool {
        self.sign > 0
    }

    pub fn inverse(self) -> Generator {
        Generator { index: self.index, sign: -self.sign }
    }

    /// The image under conjugation by Δ: σ₁ ↔ σ₂, sign kept.
    pub fn swapped(self) -> Generator {
        Generator { index: 3 - self.index, sign: self.sign }
    }

    pub fn to_char(self) -> char {
        match (self.index, self.sign > 0) {
            (1, true) => 'a',
            (1, false) => 'A',
            (2, true) => 'b',
            _ => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Generator> {
        match c {
            'a' => Some(Generator::S1),
            'A' => Some(Generator::S1_INV),
            'b' => Some(Generator::S2),
            'B' => Some(Generator::S2_INV),
            _ => None,
        }
    }
}

/// A finite word in the generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    letters: Vec<Generator>,
}

impl BraidWord {
    pub fn identity() -> BraidWord {
        BraidWord::default()
    }

    pub fn from_letters(letters: Vec<Generator>) -> BraidWord {
        BraidWord { letters }
    }

    /// Positive word from generator indices (each 1 or 2).
    pub fn from_indices(indices: &[u8]) -> BraidWord {
        BraidWord { letters: indices.iter().map(|&i| Generator::positive(i)).collect() }
    }

    /// The Garside element, spelled σ₁σ₂σ₁.
    pub fn delta() -> BraidWord {
        BraidWord::from_indices(&[1, 2, 1])
    }

    /// Δ^k spelled with the fixed Δ word (or its inverse for k < 0).
    pub fn delta_power(k: i64) -> BraidWord {
        let unit = if k >= 0 { BraidWord::delta() } else { BraidWord::delta().invert() };
        let mut letters = Vec::with_capacity(3 * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&unit.letters);
        }
        BraidWord { letters }
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|g| g.is_positive())
    }

    pub fn push(&mut self, g: Generator) {
        self.letters.push(g);
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// Δ^{-l} w Δ^{l}: indices swapped when `l` is odd.
    pub fn delta_conjugate(&self, l: i64) -> BraidWord {
        if l.rem_euclid(2) == 0 {
            self.clone()
        } else {
            BraidWord { letters: self.letters.iter().map(|g| g.swapped()).collect() }
        }
    }

    /// Exponent sum; the abelianization map to the integers.
    pub fn abelianize(&self) -> i64 {
        self.letters.iter().map(|g| g.sign as i64).sum()
    }

    /// The word read backwards, letters unchanged. This is an
    /// anti-automorphism of the group.
    pub fn reversed(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.len());
        for &g in &self.letters {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord { letters: out }
    }
}

/// Free function form of [`BraidWord::concat`].
pub fn concat(u: &BraidWord, v: &BraidWord) -> BraidWord {
    u.concat(v)
}

/// Free function form of [`BraidWord::invert`].
pub fn invert(w: &BraidWord) -> BraidWord {
    w.invert()
}

/// Free function form of [`BraidWord::delta_conjugate`].
pub fn delta_conjugate(w: &BraidWord, l: i64) -> BraidWord {
    w.delta_conjugate(l)
}

/// Free function form of [`BraidWord::abelianize`].
pub fn abelianize(w: &BraidWord) -> i64 {
    w.abelianize()
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.letters {
            write!(f, "{}", g.to_char())?;
        }
        Ok(())
    }
}

/// Failure to read a braid word; `offset` is a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    pub fn new(offset: usize, expected: impl Into<String>) -> ParseError {
        ParseError { offset, expected: expected.into() }
    }

    /// Shifts the offset, for errors raised on a substring.
    pub fn shifted(mut self, by: usize) -> ParseError {
        self.offset += by;
        self
    }
}

/// Parses the letter syntax described in the module docs.
pub fn parse_word(s: &str) -> Result<BraidWord, ParseError> {
    let bytes = s.as_bytes();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let g = Generator::from_char(c).ok_or_else(|| ParseError::new(i, "one of 'a', 'A', 'b', 'B'"))?;
        i += 1;
        let mut count = 1usize;
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if j < bytes.len() && bytes[j] == b'^' {
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if start == j {
                return Err(ParseError::new(start, "a nonnegative exponent after '^'"));
            }
            count =
                s[start..j].parse().map_err(|_| ParseError::new(start, "an exponent that fits in usize"))?;
            i = j;
        }
        letters.extend(std::iter::repeat_n(g, count));
    }
    Ok(BraidWord { letters })
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<BraidWord, ParseError> {
        parse_word(s)
    }
}

impl serde::Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<BraidWord, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
