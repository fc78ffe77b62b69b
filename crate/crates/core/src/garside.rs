//! Positive braids in block-exponent encoding and the Garside normal form
//! `g = Δ^k · ξ` with `ξ` positive and not divisible by Δ.
//!
//! The normal form is computed by a single left-to-right pass. Each inverse
//! letter is rewritten as `Δ⁻¹ · (Δσᵢ⁻¹)`, the Δ⁻¹ is pushed to the front
//! (which swaps the indices of the tail built so far), and each positive
//! letter is appended to the tail. A Δ appears in `ξ·σₓ` exactly when `ξ` ends
//! with `σₓσᵧ` (`y ≠ x`), in which case those two letters are removed and the
//! Δ is moved to the front.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::braid_core::{BraidWord, Generator, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GarsideError {
    #[error("word is not positive: inverse letter at position {position}")]
    NotPositive { position: usize },
    #[error("positive word {0} is divisible by Δ")]
    NotIndivisible(String),
}

/// An element of the positive monoid, stored as alternating generator blocks
/// `σᵢ^{e₁} σᵢ′^{e₂} σᵢ^{e₃} …`.
///
/// For a Δ-indivisible braid this spelling is the only positive spelling, so
/// structural equality is braid equality. For divisible braids it is just one
/// spelling among several.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord {
    start: u8,
    blocks: Vec<u32>,
}

pub(crate) fn other(i: u8) -> u8 {
    3 - i
}

impl PositiveWord {
    pub fn empty() -> PositiveWord {
        PositiveWord::default()
    }

    pub fn generator(i: u8) -> PositiveWord {
        PositiveWord::power(i, 1)
    }

    /// `σᵢ^e`.
    pub fn power(i: u8, e: u32) -> PositiveWord {
        assert!(i == 1 || i == 2, "generator index must be 1 or 2");
        if e == 0 {
            PositiveWord::empty()
        } else {
            PositiveWord { start: i, blocks: vec![e] }
        }
    }

    /// Builds from generator indices (each 1 or 2).
    pub fn from_letters(letters: &[u8]) -> PositiveWord {
        let mut out = PositiveWord::empty();
        for &x in letters {
            out.push(x);
        }
        out
    }

    pub fn from_word(w: &BraidWord) -> Result<PositiveWord, GarsideError> {
        let mut out = PositiveWord::empty();
        for (position, g) in w.letters().iter().enumerate() {
            if !g.is_positive() {
                return Err(GarsideError::NotPositive { position });
            }
            out.push(g.index());
        }
        Ok(out)
    }

    fn push(&mut self, x: u8) {
        debug_assert!(x == 1 || x == 2);
        if self.blocks.is_empty() {
            self.start = x;
            self.blocks.push(1);
        } else if self.last() == Some(x) {
            *self.blocks.last_mut().unwrap() += 1;
        } else {
            self.blocks.push(1);
        }
    }

    /// Index of the first block's generator, `None` for the empty word.
    pub fn start_index(&self) -> Option<u8> {
        if self.blocks.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    fn block_index(&self, b: usize) -> u8 {
        if b.is_multiple_of(2) {
            self.start
        } else {
            other(self.start)
        }
    }

    pub fn letters(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        for (b, &e) in self.blocks.iter().enumerate() {
            let x = self.block_index(b);
            out.extend(std::iter::repeat_n(x, e as usize));
        }
        out
    }

    pub fn to_word(&self) -> BraidWord {
        BraidWord::from_indices(&self.letters())
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&e| e as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.start_index()
    }

    pub fn last(&self) -> Option<u8> {
        if self.blocks.is_empty() {
            None
        } else {
            Some(self.block_index(self.blocks.len() - 1))
        }
    }

    /// True when the first letter forms a block of its own.
    pub fn begins_with_isolated(&self) -> bool {
        self.blocks.first() == Some(&1)
    }

    /// True when the last letter forms a block of its own.
    pub fn ends_with_isolated(&self) -> bool {
        self.blocks.last() == Some(&1)
    }

    /// No interior block of exponent one, i.e. no σ₁σ₂σ₁ or σ₂σ₁σ₂ subword.
    pub fn is_delta_indivisible(&self) -> bool {
        let m = self.blocks.len();
        m < 3 || self.blocks[1..m - 1].iter().all(|&e| e >= 2)
    }

    pub(crate) fn require_indivisible(&self) -> Result<(), GarsideError> {
        if self.is_delta_indivisible() {
            Ok(())
        } else {
            Err(GarsideError::NotIndivisible(self.to_string()))
        }
    }

    /// Δ^{-l} · self · Δ^{l}.
    pub fn conjugate(&self, l: i64) -> PositiveWord {
        if l.rem_euclid(2) == 0 || self.is_empty() {
            self.clone()
        } else {
            PositiveWord { start: other(self.start), blocks: self.blocks.clone() }
        }
    }

    pub fn concat(&self, rhs: &PositiveWord) -> PositiveWord {
        if self.is_empty() {
            return rhs.clone();
        }
        if rhs.is_empty() {
            return self.clone();
        }
        let mut out = self.clone();
        let mut rb = rhs.blocks.iter();
        if self.last() == rhs.first() {
            *out.blocks.last_mut().unwrap() += *rb.next().unwrap();
        }
        out.blocks.extend(rb);
        out
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> PositiveWord {
        PositiveWord::from_letters(&self.letters()[..n.min(self.len())])
    }

    /// The last `n` letters.
    pub fn suffix(&self, n: usize) -> PositiveWord {
        let letters = self.letters();
        let n = n.min(letters.len());
        PositiveWord::from_letters(&letters[letters.len() - n..])
    }

    /// Letter-level prefix test on this spelling.
    pub fn starts_with(&self, p: &PositiveWord) -> bool {
        let (a, b) = (self.letters(), p.letters());
        a.starts_with(&b)
    }

    /// Letter-level suffix test on this spelling.
    pub fn ends_with(&self, p: &PositiveWord) -> bool {
        let (a, b) = (self.letters(), p.letters());
        a.ends_with(&b)
    }

    /// `r` with `self = p · r`, if `p` is a spelled prefix.
    pub fn strip_prefix(&self, p: &PositiveWord) -> Option<PositiveWord> {
        let (a, b) = (self.letters(), p.letters());
        a.strip_prefix(&b[..]).map(PositiveWord::from_letters)
    }

    /// `r` with `self = r · p`, if `p` is a spelled suffix.
    pub fn strip_suffix(&self, p: &PositiveWord) -> Option<PositiveWord> {
        let (a, b) = (self.letters(), p.letters());
        a.strip_suffix(&b[..]).map(PositiveWord::from_letters)
    }

    /// The same letters read backwards.
    pub fn reversed(&self) -> PositiveWord {
        let mut letters = self.letters();
        letters.reverse();
        PositiveWord::from_letters(&letters)
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

impl FromStr for PositiveWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<PositiveWord, ParseError> {
        let w: BraidWord = s.parse()?;
        PositiveWord::from_word(&w).map_err(|_| {
            let offset = s.find(['A', 'B']).unwrap_or(0);
            ParseError::new(offset, "a positive letter 'a' or 'b'")
        })
    }
}

/// The pair (Garside power, Δ-indivisible tail).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideForm {
    pub power: i64,
    pub tail: PositiveWord,
}

/// Incremental normal-form computation. The tail is kept in raw letters
/// that are read through `parity`, so pushing a Δ to the front is O(1).
#[derive(Clone, Debug, Default)]
pub(crate) struct Builder {
    power: i64,
    raw: Vec<u8>,
    parity: u8,
}

impl Builder {
    pub(crate) fn new() -> Builder {
        Builder::default()
    }

    pub(crate) fn from_form(g: &GarsideForm) -> Builder {
        Builder { power: g.power, raw: g.tail.letters(), parity: 0 }
    }

    fn real(&self, raw: u8) -> u8 {
        if self.parity == 1 {
            other(raw)
        } else {
            raw
        }
    }

    pub(crate) fn push_positive(&mut self, x: u8) {
        let n = self.raw.len();
        if n >= 2 {
            let (p, q) = (self.real(self.raw[n - 2]), self.real(self.raw[n - 1]));
            if p == x && q != x {
                self.raw.truncate(n - 2);
                self.power += 1;
                self.parity ^= 1;
                return;
            }
        }
        let raw = if self.parity == 1 { other(x) } else { x };
        self.raw.push(raw);
    }

    pub(crate) fn push_inverse(&mut self, x: u8) {
        self.power -= 1;
        self.parity ^= 1;
        self.push_positive(x);
        self.push_positive(other(x));
    }

    pub(crate) fn push_generator(&mut self, g: Generator) {
        if g.is_positive() {
            self.push_positive(g.index());
        } else {
            self.push_inverse(g.index());
        }
    }

    pub(crate) fn push_word(&mut self, w: &BraidWord) {
        for &g in w.letters() {
            self.push_generator(g);
        }
    }

    pub(crate) fn push_positive_word(&mut self, p: &PositiveWord) {
        for x in p.letters() {
            self.push_positive(x);
        }
    }

    /// Right multiplication by Δ^k.
    pub(crate) fn push_delta_power(&mut self, k: i64) {
        self.power += k;
        if k.rem_euclid(2) == 1 {
            self.parity ^= 1;
        }
    }

    pub(crate) fn push_form(&mut self, g: &GarsideForm) {
        self.push_delta_power(g.power);
        self.push_positive_word(&g.tail);
    }

    /// Right multiplication by the inverse of `g`.
    pub(crate) fn push_form_inverse(&mut self, g: &GarsideForm) {
        for x in g.tail.letters().into_iter().rev() {
            self.push_inverse(x);
        }
        self.push_delta_power(-g.power);
    }

    pub(crate) fn finish(self) -> GarsideForm {
        let letters: Vec<u8> = self.raw.iter().map(|&r| self.real(r)).collect();
        GarsideForm { power: self.power, tail: PositiveWord::from_letters(&letters) }
    }
}

impl GarsideForm {
    pub fn identity() -> GarsideForm {
        GarsideForm::default()
    }

    pub fn new(power: i64, tail: PositiveWord) -> Result<GarsideForm, GarsideError> {
        tail.require_indivisible()?;
        Ok(GarsideForm { power, tail })
    }

    pub fn delta_power(k: i64) -> GarsideForm {
        GarsideForm { power: k, tail: PositiveWord::empty() }
    }

    pub fn from_word(w: &BraidWord) -> GarsideForm {
        normal_form(w)
    }

    /// Δ^k followed by the tail, with Δ spelled σ₁σ₂σ₁.
    pub fn to_word(&self) -> BraidWord {
        BraidWord::delta_power(self.power).concat(&self.tail.to_word())
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.tail.is_empty()
    }

    /// True for the central elements Δ^{2m}.
    pub fn is_central(&self) -> bool {
        self.tail.is_empty() && self.power % 2 == 0
    }

    /// The abelianization 3k + |ξ|.
    pub fn abelianize(&self) -> i64 {
        3 * self.power + self.tail.len() as i64
    }

    /// Product by direct incremental normalization.
    pub fn mul(&self, rhs: &GarsideForm) -> GarsideForm {
        let mut b = Builder::from_form(self);
        b.push_form(rhs);
        b.finish()
    }

    pub fn inverse(&self) -> GarsideForm {
        let mut b = Builder::new();
        b.push_form_inverse(self);
        b.finish()
    }

    /// `h · self · h⁻¹` for a word `h`.
    pub fn conjugate_by(&self, h: &BraidWord) -> GarsideForm {
        let mut b = Builder::new();
        b.push_word(h);
        b.push_form(self);
        b.push_word(&h.invert());
        b.finish()
    }

    /// Δ^{-l} · self · Δ^{l}.
    pub fn delta_conjugate(&self, l: i64) -> GarsideForm {
        GarsideForm { power: self.power, tail: self.tail.conjugate(l) }
    }
}

impl fmt::Display for GarsideForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} : {}", self.power, self.tail)
    }
}

impl FromStr for GarsideForm {
    type Err = ParseError;

    /// Reads `D^k : <positive word>`; the tail must be Δ-indivisible.
    fn from_str(s: &str) -> Result<GarsideForm, ParseError> {
        let colon = s.find(':').ok_or_else(|| ParseError::new(s.len(), "':'"))?;
        let head = &s[..colon];
        let lead = head.len() - head.trim_start().len();
        if !head[lead..].starts_with("D^") {
            return Err(ParseError::new(lead, "'D^'"));
        }
        let power: i64 = head[lead + 2..]
            .trim()
            .parse()
            .map_err(|_| ParseError::new(lead + 2, "an integer Garside power"))?;
        let tail: PositiveWord = s[colon + 1..].parse().map_err(|e: ParseError| e.shifted(colon + 1))?;
        if !tail.is_delta_indivisible() {
            return Err(ParseError::new(colon + 1, "a tail not divisible by Δ"));
        }
        Ok(GarsideForm { power, tail })
    }
}

#[derive(Serialize, Deserialize)]
struct GarsideFormJson {
    power: i64,
    tail: String,
}

impl Serialize for GarsideForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GarsideFormJson { power: self.power, tail: self.tail.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GarsideForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<GarsideForm, D::Error> {
        let raw = GarsideFormJson::deserialize(d)?;
        let tail: PositiveWord = raw.tail.parse().map_err(serde::de::Error::custom)?;
        GarsideForm::new(raw.power, tail).map_err(serde::de::Error::custom)
    }
}

/// Splits a positive word into Δ^count · tail.
pub fn canonicalize_positive(w: &BraidWord) -> Result<(u64, PositiveWord), GarsideError> {
    let mut b = Builder::new();
    for (position, g) in w.letters().iter().enumerate() {
        if !g.is_positive() {
            return Err(GarsideError::NotPositive { position });
        }
        b.push_positive(g.index());
    }
    let g = b.finish();
    Ok((g.power as u64, g.tail))
}

pub fn normal_form(w: &BraidWord) -> GarsideForm {
    let mut b = Builder::new();
    b.push_word(w);
    b.finish()
}

/// Equality in the braid group.
pub fn equals(u: &BraidWord, v: &BraidWord) -> bool {
    normal_form(u) == normal_form(v)
}

/// Whether `q = p · r` for some positive `r`.
pub fn is_left_divisor(p: &PositiveWord, q: &PositiveWord) -> Result<bool, GarsideError> {
    p.require_indivisible()?;
    q.require_indivisible()?;
    Ok(q.starts_with(p))
}

/// Whether `q = r · p` for some positive `r`.
pub fn is_right_divisor(p: &PositiveWord, q: &PositiveWord) -> Result<bool, GarsideError> {
    p.require_indivisible()?;
    q.require_indivisible()?;
    Ok(q.ends_with(p))
}

/// Group product through the duality product formula.
pub fn multiply(g: &GarsideForm, h: &GarsideForm) -> GarsideForm {
    crate::duality::product_normal_form(g, h)
}
