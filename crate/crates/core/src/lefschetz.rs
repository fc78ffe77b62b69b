//! SL₂(ℤ), the projection from B₃, and factorizations of the identity into
//! positive Dehn twists.
//!
//! `σ₁ ↦ S = [[1,1],[0,1]]` and `σ₂ ↦ T = [[1,0],[-1,1]]`; the kernel is
//! generated by Δ⁴. Conjugator words are braid words read through this map,
//! so `a` stands for `S` and `b` for `T`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_core::{BraidWord, Generator, ParseError};
use crate::classify::{canonicalize_power, CanonicalizeOptions, ClassifyError, Move, MoveTrace};
use crate::garside::GarsideForm;
use crate::half_twist::make;
use crate::hurwitz::{Direction, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Matrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix { a: 1, b: 0, c: 0, d: 1 };
    pub const NEG_IDENTITY: Sl2Matrix = Sl2Matrix { a: -1, b: 0, c: 0, d: -1 };
    pub const S: Sl2Matrix = Sl2Matrix { a: 1, b: 1, c: 0, d: 1 };
    pub const T: Sl2Matrix = Sl2Matrix { a: 1, b: 0, c: -1, d: 1 };

    /// `[[a,b],[c,d]]`; `None` unless the determinant is one.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Option<Sl2Matrix> {
        (a * d - b * c == 1).then_some(Sl2Matrix { a, b, c, d })
    }

    pub fn entries(self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn inverse(self) -> Sl2Matrix {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn trace(self) -> i64 {
        self.a + self.d
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(self, p: Sl2Matrix) -> Sl2Matrix {
        p * self * p.inverse()
    }

    pub fn pow(self, n: i64) -> Sl2Matrix {
        let base = if n < 0 { self.inverse() } else { self };
        (0..n.unsigned_abs()).fold(Sl2Matrix::IDENTITY, |acc, _| acc * base)
    }
}

impl std::ops::Mul for Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, o: Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("'{c}'")))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len =
            rest.char_indices().take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-')).count();
        let n = rest[..len].parse().map_err(|_| ParseError::new(self.pos, "an integer"))?;
        self.pos += len;
        Ok(n)
    }
}

impl FromStr for Sl2Matrix {
    type Err = ParseError;

    /// Reads `[[a,b],[c,d]]`, whitespace allowed between tokens.
    fn from_str(s: &str) -> Result<Sl2Matrix, ParseError> {
        let mut cur = Cursor { text: s, pos: 0 };
        let mut nums = [0i64; 4];
        cur.expect('[')?;
        for row in 0..2 {
            if row == 1 {
                cur.expect(',')?;
            }
            cur.expect('[')?;
            nums[2 * row] = cur.integer()?;
            cur.expect(',')?;
            nums[2 * row + 1] = cur.integer()?;
            cur.expect(']')?;
        }
        cur.expect(']')?;
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(ParseError::new(cur.pos, "end of input"));
        }
        Sl2Matrix::new(nums[0], nums[1], nums[2], nums[3])
            .ok_or_else(|| ParseError::new(0, "a matrix with determinant 1"))
    }
}

impl Serialize for Sl2Matrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Sl2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Sl2Matrix, D::Error> {
        let [[a, b], [c, d]] = <[[i64; 2]; 2]>::deserialize(de)?;
        Sl2Matrix::new(a, b, c, d).ok_or_else(|| serde::de::Error::custom("determinant is not 1"))
    }
}

fn generator_image(g: Generator) -> Sl2Matrix {
    let m = if g.index() == 1 { Sl2Matrix::S } else { Sl2Matrix::T };
    if g.is_positive() {
        m
    } else {
        m.inverse()
    }
}

pub fn project(w: &BraidWord) -> Sl2Matrix {
    w.letters().iter().fold(Sl2Matrix::IDENTITY, |acc, &g| acc * generator_image(g))
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&x| x >= 0 && x * x == n)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The primitive vector `(x, y)` with `M = I + [[-xy, x²], [-y², xy]]`.
fn twist_vector(m: Sl2Matrix) -> Option<(i64, i64)> {
    if m.trace() != 2 || m == Sl2Matrix::IDENTITY {
        return None;
    }
    let x = isqrt(m.b)?;
    let y = isqrt(-m.c)?;
    let y = if -x * y == m.a - 1 { y } else { -y };
    let valid = gcd(x, y) == 1 && -x * y == m.a - 1 && x * y == m.d - 1;
    valid.then_some((x, y))
}

/// A word `u` with `project(u) · S · project(u)⁻¹ = m`, when `m` is a
/// positive Dehn twist.
pub fn is_positive_dehn_twist(m: Sl2Matrix) -> Option<BraidWord> {
    let (mut x, mut y) = twist_vector(m)?;
    // Reduce (x, y) to ±(1, 0), recording the applied powers of S and T.
    let mut applied: Vec<(Generator, i64)> = Vec::new();
    while y != 0 {
        if x == 0 {
            applied.push((Generator::S1, 1));
            x += y;
        } else if x.abs() <= y.abs() {
            let n = y / x;
            applied.push((Generator::S2, n));
            y -= n * x;
        } else {
            let n = -(x / y);
            applied.push((Generator::S1, n));
            x += n * y;
        }
    }
    let mut letters = Vec::new();
    for &(g, n) in &applied {
        let g = if n > 0 { g.inverse() } else { g };
        letters.extend(std::iter::repeat_n(g, n.unsigned_abs() as usize));
    }
    let u = BraidWord::from_letters(letters);
    debug_assert_eq!(Sl2Matrix::S.conjugate_by(project(&u)), m);
    Some(u)
}

#[derive(Clone, Debug, Error)]
pub enum LefschetzError {
    #[error("factor {position} is not a positive Dehn twist: {matrix}")]
    NotDehnTwist { position: usize, matrix: Sl2Matrix },
    #[error("product of the factors is {0}, not the identity")]
    ProductNotIdentity(Sl2Matrix),
    #[error("lifted product {0} is not a power of Δ⁴")]
    KernelMismatch(GarsideForm),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

pub fn product(ms: &[Sl2Matrix]) -> Sl2Matrix {
    ms.iter().fold(Sl2Matrix::IDENTITY, |acc, &m| acc * m)
}

/// Lifts a factorization of the identity to half-twists in B₃. Returns the
/// factorization and `k` with product `Δᵏ`.
pub fn lift_factorization(ms: &[Sl2Matrix]) -> Result<(Factorization, i64), LefschetzError> {
    let mut factors = Vec::with_capacity(ms.len());
    for (i, &m) in ms.iter().enumerate() {
        let u =
            is_positive_dehn_twist(m).ok_or(LefschetzError::NotDehnTwist { position: i + 1, matrix: m })?;
        factors.push(make(&u.invert(), 1, 1));
    }
    let total = product(ms);
    if total != Sl2Matrix::IDENTITY {
        return Err(LefschetzError::ProductNotIdentity(total));
    }
    if factors.is_empty() {
        return Err(LefschetzError::KernelMismatch(GarsideForm::identity()));
    }
    let f = Factorization::new(factors).expect("nonempty");
    let p = f.product();
    if !p.tail.is_empty() || p.power.rem_euclid(4) != 0 || p.power != ms.len() as i64 / 3 {
        return Err(LefschetzError::KernelMismatch(p.clone()));
    }
    let k = p.power;
    Ok((f, k))
}

/// Projects every factor of a B₃ factorization.
pub fn project_factorization(f: &Factorization) -> Vec<Sl2Matrix> {
    f.factors().iter().map(|h| project(&h.spelling())).collect()
}

/// Replays a trace on a matrix sequence.
pub fn replay_projected(ms: &[Sl2Matrix], trace: &MoveTrace) -> Vec<Sl2Matrix> {
    let mut out = ms.to_vec();
    for m in trace.moves() {
        match m {
            Move::Hurwitz { index, dir } => {
                let (g, h) = (out[index - 1], out[*index]);
                let (first, second) = match dir {
                    Direction::Right => (h.conjugate_by(g), g),
                    Direction::Left => (h, g.conjugate_by(h.inverse())),
                };
                out[index - 1] = first;
                out[*index] = second;
            }
            Move::Conjugate(w) => {
                let p = project(w);
                for x in &mut out {
                    *x = x.conjugate_by(p);
                }
            }
        }
    }
    out
}

/// `(S, T, S)` repeated `len / 3` times.
pub fn standard_sequence(len: usize) -> Vec<Sl2Matrix> {
    (0..len).map(|i| if i % 3 == 1 { Sl2Matrix::T } else { Sl2Matrix::S }).collect()
}

/// Brings a factorization of the identity into positive Dehn twists to the
/// standard sequence of the same length.
pub fn classify_lefschetz(
    ms: &[Sl2Matrix],
    opts: &CanonicalizeOptions,
) -> Result<(Vec<Sl2Matrix>, MoveTrace), LefschetzError> {
    let (f, k) = lift_factorization(ms)?;
    let (_, trace) = canonicalize_power(&f, k, opts)?;
    let out = replay_projected(ms, &trace);
    debug_assert_eq!(out, standard_sequence(ms.len()));
    Ok((out, trace))
}

/// Distinct Dehn twists `u S u⁻¹` with `|u| ≤ bound`.
pub fn dehn_twists(conjugator_bound: usize) -> Vec<Sl2Matrix> {
    let set: BTreeSet<Sl2Matrix> = crate::classify::reduced_words(conjugator_bound)
        .iter()
        .map(|u| Sl2Matrix::S.conjugate_by(project(u)))
        .collect();
    set.into_iter().collect()
}

fn products_of_length(pool: &[Sl2Matrix], len: usize) -> HashMap<Sl2Matrix, u64> {
    let mut level: HashMap<Sl2Matrix, u64> = HashMap::from([(Sl2Matrix::IDENTITY, 1)]);
    for _ in 0..len {
        let mut next: HashMap<Sl2Matrix, u64> = HashMap::new();
        for (m, count) in &level {
            for &p in pool {
                *next.entry(*m * p).or_insert(0) += count;
            }
        }
        level = next;
    }
    level
}

/// Number of sequences of length `1..=max_len` over the Dehn twists with
/// `|u| ≤ bound` whose product is the identity, by length.
pub fn count_identity_factorizations(conjugator_bound: usize, max_len: usize) -> BTreeMap<usize, u64> {
    let pool = dehn_twists(conjugator_bound);
    let halves: Vec<HashMap<Sl2Matrix, u64>> =
        (0..=max_len.div_ceil(2)).map(|n| products_of_length(&pool, n)).collect();
    let mut out = BTreeMap::new();
    for len in 1..=max_len {
        let (l, r) = (len / 2, len - len / 2);
        let count: u64 =
            halves[r].iter().map(|(m, c)| c * halves[l].get(&m.inverse()).copied().unwrap_or(0)).sum();
        out.insert(len, count);
    }
    out
}
