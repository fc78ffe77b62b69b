//! Factorizations into powers of positive half-twists and the moves acting
//! on them.
//!
//! A factorization `(g₁, …, g_k)` stores each factor in structured form plus
//! the normal form of the ordered product. Hurwitz moves and global
//! conjugation return new values; nothing is mutated in place.
//!
//! Setup coordinates: with `ω_j = ω(τ₁) + … + ω(τ_j)` and
//! `ξ_j = Δ^{-ω_j} (ρ_j σ^{e_j} τ_j) Δ^{ω_j}`, the product is
//! `ξ₁ ⋯ ξ_k Δ^{-ω_k}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_core::{BraidWord, ParseError};
use crate::duality::{
    cut_closure_left, is_cut_left_divisor, max_dual_unchecked, omega_unchecked, product_normal_form,
    right_dual_unchecked,
};
use crate::garside::{Builder, GarsideForm, PositiveWord};
use crate::half_twist::{recognize_word, HalfTwistPower};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("move index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("global conjugation needs a central product, got {0}")]
    NotCentralProduct(String),
    #[error("factor {position} is not a power of a positive half-twist: {word}")]
    NotHalfTwistFactor { position: usize, word: String },
    #[error("a factorization needs at least one factor")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("move formula does not apply: {0}")]
    HypothesisViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `(gⱼ, gⱼ₊₁) ↦ (gⱼ₊₁, gⱼ₊₁⁻¹ gⱼ gⱼ₊₁)`.
    Left,
    /// `(gⱼ, gⱼ₊₁) ↦ (gⱼ gⱼ₊₁ gⱼ⁻¹, gⱼ)`.
    Right,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// Counts `ν_n` of factors with exponent `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeMultiset {
    counts: BTreeMap<u32, usize>,
}

impl TypeMultiset {
    pub fn from_exponents(exponents: impl IntoIterator<Item = u32>) -> TypeMultiset {
        let mut counts = BTreeMap::new();
        for e in exponents {
            *counts.entry(e).or_insert(0) += 1;
        }
        TypeMultiset { counts }
    }

    /// Builds from `(exponent, count)` pairs; zero counts are dropped.
    pub fn from_counts(pairs: &[(u32, usize)]) -> TypeMultiset {
        let counts = pairs.iter().filter(|p| p.1 > 0).copied().collect();
        TypeMultiset { counts }
    }

    pub fn nu(&self, n: u32) -> usize {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, usize> {
        &self.counts
    }

    pub fn factor_count(&self) -> usize {
        self.counts.values().sum()
    }

    /// `Σ n·ν_n`.
    pub fn weighted_sum(&self) -> u64 {
        self.counts.iter().map(|(&n, &c)| n as u64 * c as u64).sum()
    }
}

impl fmt::Display for TypeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(n, c)| format!("{n}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Per-factor data in setup coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetupEntry {
    pub xi: PositiveWord,
    pub rho: PositiveWord,
    pub tau: PositiveWord,
    /// `ω_j`, the running sum of `ω(τ)` up to and including this factor.
    pub omega_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    factors: Vec<HalfTwistPower>,
    product: GarsideForm,
}

fn product_of(factors: &[HalfTwistPower]) -> GarsideForm {
    let mut b = Builder::new();
    for f in factors {
        b.push_form(&f.to_garside());
    }
    b.finish()
}

impl Factorization {
    pub fn new(factors: Vec<HalfTwistPower>) -> Result<Factorization, HurwitzError> {
        if factors.is_empty() {
            return Err(HurwitzError::Empty);
        }
        let factors: Vec<HalfTwistPower> = factors.into_iter().map(|f| f.with_parity_shift(0)).collect();
        let product = product_of(&factors);
        Ok(Factorization { factors, product })
    }

    /// Recognizes each word as a power of a positive half-twist.
    pub fn from_words(words: &[BraidWord]) -> Result<Factorization, HurwitzError> {
        let factors = words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                recognize_word(w)
                    .ok_or_else(|| HurwitzError::NotHalfTwistFactor { position: i + 1, word: w.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Factorization::new(factors)
    }

    /// The all-standard factorization with the given `(axis, exponent)` list.
    pub fn standard(spec: &[(u8, u32)]) -> Factorization {
        Factorization::new(spec.iter().map(|&(i, e)| HalfTwistPower::standard(i, e)).collect())
            .expect("nonempty standard factorization")
    }

    pub fn factors(&self) -> &[HalfTwistPower] {
        &self.factors
    }

    pub fn product(&self) -> &GarsideForm {
        &self.product
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Applies a Hurwitz move at the 1-based position `j`.
    pub fn hurwitz_move(&self, j: usize, dir: Direction) -> Result<Factorization, HurwitzError> {
        if j == 0 || j >= self.factors.len() {
            return Err(HurwitzError::IndexOutOfRange { index: j, len: self.factors.len() });
        }
        let (g, h) = (&self.factors[j - 1], &self.factors[j]);
        let (first, second) = match dir {
            Direction::Right => (h.conjugate_by(&g.spelling()), g.clone()),
            Direction::Left => (h.clone(), g.conjugate_by(&h.spelling().invert())),
        };
        let mut factors = self.factors.clone();
        factors[j - 1] = first;
        factors[j] = second;
        Ok(Factorization { factors, product: self.product.clone() })
    }

    /// `h F h⁻¹`, allowed only when the product is central.
    pub fn global_conjugate(&self, h: &BraidWord) -> Result<Factorization, HurwitzError> {
        if !self.product.is_central() {
            return Err(HurwitzError::NotCentralProduct(self.product.to_string()));
        }
        Ok(self.global_conjugate_unchecked(h))
    }

    /// Conjugates every factor by `h` whatever the product is; the product
    /// is conjugated as well.
    pub fn global_conjugate_unchecked(&self, h: &BraidWord) -> Factorization {
        let factors: Vec<HalfTwistPower> = self.factors.iter().map(|f| f.conjugate_by(h)).collect();
        let product =
            if self.product.is_central() { self.product.clone() } else { self.product.conjugate_by(h) };
        Factorization { factors, product }
    }

    /// Sum of the absolute Garside powers of the factors.
    pub fn complexity(&self) -> u64 {
        self.factors.iter().map(|f| f.omega as u64).sum()
    }

    pub fn type_multiset(&self) -> TypeMultiset {
        TypeMultiset::from_exponents(self.factors.iter().map(|f| f.exponent))
    }

    /// Checks that the exponents add up to the abelianized product.
    pub fn epsilon_check(&self) -> bool {
        self.type_multiset().weighted_sum() as i64 == self.product.abelianize()
    }

    pub fn setup(&self) -> Vec<SetupEntry> {
        let mut sum = 0i64;
        self.factors
            .iter()
            .map(|f| {
                sum += f.omega as i64;
                SetupEntry {
                    xi: f.xi().conjugate(sum),
                    rho: f.rho.conjugate(sum),
                    tau: f.tau.conjugate(sum),
                    omega_sum: sum,
                }
            })
            .collect()
    }

    /// Recomputes the product from setup coordinates.
    pub fn setup_product(&self) -> GarsideForm {
        let entries = self.setup();
        let mut b = Builder::new();
        for e in &entries {
            b.push_positive_word(&e.xi);
        }
        b.push_delta_power(-entries.last().map_or(0, |e| e.omega_sum));
        b.finish()
    }

    /// `|`-separated spellings; equal strings mean equal factorizations.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    pub fn spellings(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.spelling().to_string()).collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spellings().join("|"))
    }
}

impl FromStr for Factorization {
    type Err = HurwitzError;

    fn from_str(s: &str) -> Result<Factorization, HurwitzError> {
        let mut words = Vec::new();
        let mut offset = 0;
        for part in s.split('|') {
            let w: BraidWord = part.parse().map_err(|e: ParseError| e.shifted(offset))?;
            words.push(w);
            offset += part.len() + 1;
        }
        Factorization::from_words(&words)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorizationJson {
    factors: Vec<String>,
    product: GarsideForm,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        FactorizationJson { factors: self.spellings(), product: self.product.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Factorization, D::Error> {
        let raw = FactorizationJson::deserialize(de)?;
        let words = raw
            .factors
            .iter()
            .map(|s| s.parse::<BraidWord>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        let f = Factorization::from_words(&words).map_err(serde::de::Error::custom)?;
        if f.product != raw.product {
            return Err(serde::de::Error::custom("product does not match factors"));
        }
        Ok(f)
    }
}

pub fn hurwitz_move(f: &Factorization, j: usize, dir: Direction) -> Result<Factorization, HurwitzError> {
    f.hurwitz_move(j, dir)
}

pub fn global_conjugate(f: &Factorization, h: &BraidWord) -> Result<Factorization, HurwitzError> {
    f.global_conjugate(h)
}

pub fn complexity(f: &Factorization) -> u64 {
    f.complexity()
}

pub fn type_multiset(f: &Factorization) -> TypeMultiset {
    f.type_multiset()
}

pub fn epsilon_check(f: &Factorization) -> bool {
    f.epsilon_check()
}

/// Which branch of the right-move analysis a pair falls into. `ρ₂″` is the
/// left factor of `ξ₂` cancelled against the maximal dual right divisor of
/// `ξ₁`, and `ρ̄₂` is the cut closure of `ρ₂` in `ξ₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveCase {
    /// `ρ₂″` a proper cut left-divisor of `ρ₂`.
    ProperCut,
    /// `ρ₂″ = ρ̄₂ ≠ ρ₂`.
    Closure,
    /// `ρ₂″ = ρ₂`.
    Whole,
    /// `ρ₂″` a left-divisor of `ρ₂` that is not a cut divisor.
    NotCut,
}

/// Predicted change of complexity under a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ComplexityChange {
    Exact(i64),
    /// The true change is at most this value.
    AtMost(i64),
}

impl ComplexityChange {
    pub fn value(self) -> i64 {
        match self {
            ComplexityChange::Exact(v) | ComplexityChange::AtMost(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, ComplexityChange::Exact(_))
    }
}

/// Setup-coordinate data for the right move on `(g₁, g₂)`.
#[derive(Clone, Debug)]
pub struct MoveAnalysis {
    pub case: MoveCase,
    pub xi1: PositiveWord,
    pub xi2: PositiveWord,
    /// Maximal right divisor of `ξ₁` whose right dual divides `ξ₂`.
    pub xi1_tail: PositiveWord,
    pub rho2_head: PositiveWord,
    pub cancelled: u32,
}

/// Classifies the right move on `(g₁, g₂)`; fails when `ρ₂″` is not a
/// left-divisor of the cut closure of `ρ₂`.
pub fn analyze_right_move(g1: &HalfTwistPower, g2: &HalfTwistPower) -> Result<MoveAnalysis, HurwitzError> {
    let w1 = g1.omega as i64;
    let w2 = w1 + g2.omega as i64;
    let xi1 = g1.xi().conjugate(w1);
    let xi2 = g2.xi().conjugate(w2);
    let rho2 = g2.rho.conjugate(w2);
    let (xi1_tail, rho2_head, cancelled) = max_dual_unchecked(&xi1, &xi2);
    let closure = cut_closure_left(&rho2, &xi2).expect("ρ₂ is a left divisor of ξ₂");
    if !closure.starts_with(&rho2_head) {
        return Err(HurwitzError::HypothesisViolated(format!(
            "{rho2_head} is not a left divisor of the cut closure {closure}"
        )));
    }
    let case = if rho2_head == rho2 {
        MoveCase::Whole
    } else if rho2_head == closure {
        MoveCase::Closure
    } else if is_cut_left_divisor(&rho2_head, &rho2).expect("indivisible") {
        MoveCase::ProperCut
    } else {
        MoveCase::NotCut
    };
    Ok(MoveAnalysis { case, xi1, xi2, xi1_tail, rho2_head, cancelled })
}

fn right_delta(g1: &HalfTwistPower, g2: &HalfTwistPower) -> Result<ComplexityChange, HurwitzError> {
    let a = analyze_right_move(g1, g2)?;
    let standard_bonus = i64::from(g1.is_standard());
    let base = g1.exponent as i64 - 1 - 2 * (a.cancelled as i64 - g1.omega as i64) + standard_bonus;
    Ok(match a.case {
        MoveCase::ProperCut => {
            if a.rho2_head.is_empty() || a.xi1_tail == a.xi1 {
                return Err(HurwitzError::HypothesisViolated(
                    "cut case needs a nonempty cancelled head and a proper tail of ξ₁".into(),
                ));
            }
            ComplexityChange::Exact(base - 1)
        }
        MoveCase::Closure => ComplexityChange::Exact(base),
        MoveCase::Whole => ComplexityChange::AtMost(base),
        MoveCase::NotCut => ComplexityChange::Exact(base + 1),
    })
}

/// Predicted `c(F′) − c(F)` for a move on the adjacent pair `(g₁, g₂)`.
///
/// The left move is reduced to the right move through word reversal.
pub fn move_complexity_delta(
    g1: &HalfTwistPower,
    g2: &HalfTwistPower,
    dir: Direction,
) -> Result<ComplexityChange, HurwitzError> {
    match dir {
        Direction::Right => right_delta(g1, g2),
        Direction::Left => right_delta(&g2.reversed(), &g1.reversed()),
    }
}

/// Normal form of `g₁ g₂ g₁⁻¹`, assembled from setup coordinates as
/// `ξ₁ · ξ₂ · (χ₁)_(ω(τ₂)) · Δ^{-ω(τ₂) - ω(ξ₁)}` with `χ₁` right dual to `ξ₁`.
pub fn move_normal_form(g1: &HalfTwistPower, g2: &HalfTwistPower) -> Result<GarsideForm, HurwitzError> {
    let a = analyze_right_move(g1, g2)?;
    let chi1 = right_dual_unchecked(&a.xi1).conjugate(g2.omega as i64);
    let pos = |t: &PositiveWord| GarsideForm { power: 0, tail: t.clone() };
    let left = product_normal_form(&pos(&a.xi1), &pos(&a.xi2));
    let mut out = product_normal_form(&left, &pos(&chi1));
    let shift = g2.omega as i64 + omega_unchecked(&a.xi1) as i64;
    out.tail = out.tail.conjugate(-shift);
    out.power -= shift;
    Ok(out)
}
