//! Powers of positive half-twists, i.e. conjugates of `σ₁^e`.
//!
//! Every such element has normal form `Δ^{-ω(τ)} · ρ σᵢ^e τ` where `ρ` is
//! left-dual to `τ`. Since `Δ^{-ω}ρ = τ⁻¹`, the element equals `τ⁻¹ σᵢ^e τ`.
//! The element is standard (`σ₁^e` or `σ₂^e`) exactly when `ω = 0`.

use std::fmt;
use std::str::FromStr;

use crate::braid_core::{BraidWord, Generator, ParseError};
use crate::duality::{omega_unchecked, right_dual_unchecked};
use crate::garside::{normal_form, Builder, GarsideForm, PositiveWord};

/// Structured normal form of an `e`-th power of a positive half-twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfTwistPower {
    pub rho: PositiveWord,
    pub tau: PositiveWord,
    pub axis: u8,
    pub exponent: u32,
    pub omega: u32,
    /// Δ-parity context inside a factorization; zero for a standalone value.
    pub parity_shift: i64,
}

impl HalfTwistPower {
    /// The standard power `σᵢ^e`.
    pub fn standard(axis: u8, exponent: u32) -> HalfTwistPower {
        assert!(axis == 1 || axis == 2, "axis must be 1 or 2");
        assert!(exponent >= 1, "exponent must be positive");
        HalfTwistPower {
            rho: PositiveWord::empty(),
            tau: PositiveWord::empty(),
            axis,
            exponent,
            omega: 0,
            parity_shift: 0,
        }
    }

    pub fn is_standard(&self) -> bool {
        self.omega == 0
    }

    pub fn garside_power(&self) -> i64 {
        -(self.omega as i64)
    }

    /// `ξ = ρ σᵢ^e τ`.
    pub fn xi(&self) -> PositiveWord {
        self.rho.concat(&PositiveWord::power(self.axis, self.exponent)).concat(&self.tau)
    }

    /// `ξ` conjugated by the stored parity shift.
    pub fn shifted_xi(&self) -> PositiveWord {
        self.xi().conjugate(self.parity_shift)
    }

    pub fn to_garside(&self) -> GarsideForm {
        GarsideForm { power: self.garside_power(), tail: self.xi() }
    }

    /// A word `w` with `self = w⁻¹ σᵢ^e w`.
    pub fn conjugator(&self) -> BraidWord {
        self.tau.to_word()
    }

    /// The freely reduced spelling `τ⁻¹ σᵢ^e τ`.
    pub fn spelling(&self) -> BraidWord {
        let core = BraidWord::from_indices(&vec![self.axis; self.exponent as usize]);
        let tau = self.tau.to_word();
        tau.invert().concat(&core).concat(&tau).free_reduce()
    }

    pub fn with_parity_shift(mut self, shift: i64) -> HalfTwistPower {
        self.parity_shift = shift;
        self
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &BraidWord) -> HalfTwistPower {
        make(&self.conjugator().concat(&h.invert()), self.axis, self.exponent)
    }

    /// `Δ^{-l} · self · Δ^{l}`.
    pub fn delta_conjugate(&self, l: i64) -> HalfTwistPower {
        let mut out = self.clone();
        out.rho = self.rho.conjugate(l);
        out.tau = self.tau.conjugate(l);
        if l.rem_euclid(2) == 1 {
            out.axis = 3 - self.axis;
        }
        out
    }

    /// Image under the word-reversal anti-automorphism. Garside power,
    /// axis and exponent are unchanged.
    pub fn reversed(&self) -> HalfTwistPower {
        make(&self.tau.reversed().to_word().invert(), self.axis, self.exponent)
    }

    /// Normal form of the inverse.
    pub fn invert(&self) -> GarsideForm {
        invert(self)
    }
}

/// Splits a Δ-indivisible `ξ` as `ρ σⱼ^e τ` with `ρ` left-dual to `τ` and
/// `ω(τ) = w`, scanning the position of `σⱼ^e` from the left.
fn split(xi: &PositiveWord, w: u32, e: u32) -> Option<(PositiveWord, u8, PositiveWord)> {
    let letters = xi.letters();
    let e = e as usize;
    if letters.len() < e {
        return None;
    }
    for start in 0..=letters.len() - e {
        let mid = &letters[start..start + e];
        if mid.iter().any(|&x| x != mid[0]) {
            continue;
        }
        let rho = PositiveWord::from_letters(&letters[..start]);
        if omega_unchecked(&rho) != w {
            continue;
        }
        let tau = PositiveWord::from_letters(&letters[start + e..]);
        if right_dual_unchecked(&rho) == tau {
            return Some((rho, mid[0], tau));
        }
    }
    None
}

fn decompose(g: &GarsideForm) -> Option<HalfTwistPower> {
    if g.power > 0 || !g.tail.is_delta_indivisible() {
        return None;
    }
    if g.power == 0 {
        return match (g.tail.start_index(), g.tail.blocks()) {
            (Some(i), &[e]) => Some(HalfTwistPower::standard(i, e)),
            _ => None,
        };
    }
    let w = (-g.power) as u32;
    let e = omega_unchecked(&g.tail) as i64 - 2 * w as i64 + 1;
    if e < 1 {
        return None;
    }
    let (rho, axis, tau) = split(&g.tail, w, e as u32)?;
    Some(HalfTwistPower { rho, tau, axis, exponent: e as u32, omega: w, parity_shift: 0 })
}

/// The structured form of `conjugator⁻¹ · σ_axis^e · conjugator`.
pub fn make(conjugator: &BraidWord, axis: u8, e: u32) -> HalfTwistPower {
    assert!(axis == 1 || axis == 2, "axis must be 1 or 2");
    assert!(e >= 1, "exponent must be positive");
    let mut b = Builder::new();
    b.push_word(&conjugator.invert());
    for _ in 0..e {
        b.push_positive(axis);
    }
    b.push_word(conjugator);
    let g = b.finish();
    decompose(&g).unwrap_or_else(|| panic!("conjugate of a generator power must decompose: {g}"))
}

/// Recognizes `g` as an `e`-th power of a positive half-twist.
pub fn recognize(g: &GarsideForm) -> Option<HalfTwistPower> {
    let h = decompose(g)?;
    let rebuilt = make(&h.conjugator(), h.axis, h.exponent);
    if rebuilt.to_garside() == *g {
        Some(h)
    } else {
        log::warn!("rejected splitting of {g}: rebuilt element differs");
        None
    }
}

/// Recognizes a raw word.
pub fn recognize_word(w: &BraidWord) -> Option<HalfTwistPower> {
    recognize(&normal_form(w))
}

/// Normal form of `h⁻¹`.
pub fn invert(h: &HalfTwistPower) -> GarsideForm {
    let mut b = Builder::new();
    b.push_word(&h.conjugator().invert());
    for _ in 0..h.exponent {
        b.push_inverse(h.axis);
    }
    b.push_word(&h.conjugator());
    b.finish()
}

impl fmt::Display for HalfTwistPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HT(i={}, e={}, rho={}, tau={})", self.axis, self.exponent, self.rho, self.tau)
    }
}

fn field<'a>(body: &'a str, name: &str, base: usize) -> Result<(&'a str, usize), ParseError> {
    let key = format!("{name}=");
    let at = body.find(&key).ok_or_else(|| ParseError::new(base, format!("field '{key}'")))?;
    let start = at + key.len();
    let end = body[start..].find(',').map_or(body.len(), |i| start + i);
    Ok((body[start..end].trim(), base + start))
}

impl FromStr for HalfTwistPower {
    type Err = ParseError;

    /// Accepts `HT(i=…, e=…, rho=…, tau=…)` or any braid word that is a
    /// power of a positive half-twist.
    fn from_str(s: &str) -> Result<HalfTwistPower, ParseError> {
        let trimmed = s.trim_start();
        let lead = s.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("HT(") {
            let close = rest.rfind(')').ok_or_else(|| ParseError::new(s.len(), "')'"))?;
            let body = &rest[..close];
            let base = lead + 3;
            let (i, io) = field(body, "i", base)?;
            let (e, eo) = field(body, "e", base)?;
            let (rho, ro) = field(body, "rho", base)?;
            let (tau, to) = field(body, "tau", base)?;
            let axis: u8 = i
                .parse()
                .ok()
                .filter(|&a| a == 1 || a == 2)
                .ok_or_else(|| ParseError::new(io, "axis 1 or 2"))?;
            let exponent: u32 = e
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| ParseError::new(eo, "a positive exponent"))?;
            let rho: PositiveWord = rho.parse().map_err(|e: ParseError| e.shifted(ro))?;
            let tau: PositiveWord = tau.parse().map_err(|e: ParseError| e.shifted(to))?;
            let omega = omega_unchecked(&tau);
            let h = HalfTwistPower { rho, tau, axis, exponent, omega, parity_shift: 0 };
            let valid = h.rho.is_delta_indivisible()
                && h.tau.is_delta_indivisible()
                && right_dual_unchecked(&h.rho) == h.tau
                && h.xi().is_delta_indivisible();
            if !valid {
                return Err(ParseError::new(lead, "rho left-dual to tau with rho·σ^e·tau Δ-indivisible"));
            }
            return Ok(recognize(&h.to_garside()).unwrap_or(h));
        }
        let w: BraidWord = s.parse()?;
        recognize_word(&w).ok_or_else(|| ParseError::new(lead, "a power of a positive half-twist"))
    }
}

/// The axis generator as a word letter.
pub fn axis_generator(axis: u8) -> Generator {
    Generator::positive(axis)
}
