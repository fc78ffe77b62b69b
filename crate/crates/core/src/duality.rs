//! Duality between Δ-indivisible positive braids.
//!
//! `ρ` is left-dual to `τ` (and `τ` right-dual to `ρ`) when `ρτ = Δ^ω` with
//! both factors Δ-indivisible; `ω = ω(τ) = ω(ρ)`. The module also provides
//! cut divisors, cut closures, maximal dual divisors and the product
//! normal form built on them.

use thiserror::Error;

use crate::garside::{other, Builder, GarsideError, GarsideForm, PositiveWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("positive word {0} is divisible by Δ")]
    NotIndivisible(String),
    #[error("{0} does not divide {1}")]
    NotDivisor(String, String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

impl From<GarsideError> for DualityError {
    fn from(e: GarsideError) -> DualityError {
        match e {
            GarsideError::NotIndivisible(w) => DualityError::NotIndivisible(w),
            other => DualityError::HypothesisViolated(other.to_string()),
        }
    }
}

fn check(w: &PositiveWord) -> Result<(), DualityError> {
    w.require_indivisible().map_err(DualityError::from)
}

/// A dual pair `rho · tau = Δ^omega`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualPair {
    pub rho: PositiveWord,
    pub tau: PositiveWord,
    pub omega: u32,
}

/// ω of a Δ-indivisible word: the number of factors in its decomposition
/// into permutation braids, which is `length − blocks + 1`.
pub fn omega(t: &PositiveWord) -> Result<u32, DualityError> {
    check(t)?;
    Ok(omega_unchecked(t))
}

pub(crate) fn omega_unchecked(t: &PositiveWord) -> u32 {
    if t.is_empty() {
        0
    } else {
        (t.len() - t.blocks().len() + 1) as u32
    }
}

/// Splits into permutation braids: each block boundary is covered by a
/// two-letter factor, every other letter is a factor of its own.
fn permutation_factors(letters: &[u8]) -> Vec<(u8, Option<u8>)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        if i + 1 < letters.len() && letters[i] != letters[i + 1] {
            out.push((letters[i], Some(letters[i + 1])));
            i += 2;
        } else {
            out.push((letters[i], None));
            i += 1;
        }
    }
    out
}

pub(crate) fn right_dual_unchecked(r: &PositiveWord) -> PositiveWord {
    let factors = permutation_factors(&r.letters());
    let k = factors.len();
    let mut letters = Vec::with_capacity(2 * k);
    // Factor j (1-based, counted from the right end of r) is dualized and
    // conjugated by Δ^{j+1}.
    for (j, &(x, y)) in factors.iter().rev().enumerate() {
        let swap = j % 2 == 1;
        let fix = |i: u8| if swap { other(i) } else { i };
        match y {
            None => {
                letters.push(fix(other(x)));
                letters.push(fix(x));
            }
            Some(_) => letters.push(fix(x)),
        }
    }
    let tau = PositiveWord::from_letters(&letters);
    debug_assert!({
        let mut b = Builder::new();
        b.push_positive_word(r);
        b.push_positive_word(&tau);
        b.finish() == GarsideForm::delta_power(k as i64)
    });
    tau
}

/// The unique `τ` with `r·τ = Δ^{ω(r)}`.
pub fn right_dual(r: &PositiveWord) -> Result<DualPair, DualityError> {
    check(r)?;
    let tau = right_dual_unchecked(r);
    Ok(DualPair { rho: r.clone(), omega: omega_unchecked(r), tau })
}

pub(crate) fn left_dual_unchecked(t: &PositiveWord) -> PositiveWord {
    right_dual_unchecked(t).conjugate(omega_unchecked(t) as i64)
}

/// The unique `ρ` with `ρ·t = Δ^{ω(t)}`.
pub fn left_dual(t: &PositiveWord) -> Result<DualPair, DualityError> {
    check(t)?;
    let rho = left_dual_unchecked(t);
    Ok(DualPair { rho, tau: t.clone(), omega: omega_unchecked(t) })
}

/// Whether `rho · tau = Δ^ω` for some ω, both sides Δ-indivisible.
pub fn is_dual(rho: &PositiveWord, tau: &PositiveWord) -> bool {
    rho.is_delta_indivisible() && tau.is_delta_indivisible() && right_dual_unchecked(rho) == *tau
}

/// `p` is a cut left-divisor of `q`: ω is additive across `q = p · (q∖p)`.
/// `q` itself and the empty word count as cut divisors.
pub fn is_cut_left_divisor(p: &PositiveWord, q: &PositiveWord) -> Result<bool, DualityError> {
    check(p)?;
    check(q)?;
    let rest = q.strip_prefix(p).ok_or_else(|| DualityError::NotDivisor(p.to_string(), q.to_string()))?;
    Ok(p.is_empty() || rest.is_empty() || p.last() == rest.first())
}

/// Mirror of [`is_cut_left_divisor`] for `q = (q∖p) · p`.
pub fn is_cut_right_divisor(p: &PositiveWord, q: &PositiveWord) -> Result<bool, DualityError> {
    check(p)?;
    check(q)?;
    let rest = q.strip_suffix(p).ok_or_else(|| DualityError::NotDivisor(p.to_string(), q.to_string()))?;
    Ok(p.is_empty() || rest.is_empty() || rest.last() == p.first())
}

/// The smallest cut left-divisor of `q` having `p` as a left-divisor.
pub fn cut_closure_left(p: &PositiveWord, q: &PositiveWord) -> Result<PositiveWord, DualityError> {
    if is_cut_left_divisor(p, q)? {
        return Ok(p.clone());
    }
    let closure = q.prefix(p.len() + 1);
    debug_assert!(is_cut_left_divisor(&closure, q).unwrap());
    Ok(closure)
}

/// The smallest cut right-divisor of `q` having `p` as a right-divisor.
pub fn cut_closure_right(p: &PositiveWord, q: &PositiveWord) -> Result<PositiveWord, DualityError> {
    if is_cut_right_divisor(p, q)? {
        return Ok(p.clone());
    }
    let closure = q.suffix(p.len() + 1);
    debug_assert!(is_cut_right_divisor(&closure, q).unwrap());
    Ok(closure)
}

/// The largest Δ-indivisible `s·x` whose cut closure of `s` is all of it.
pub fn right_cut_closure(s: &PositiveWord) -> Result<PositiveWord, DualityError> {
    check(s)?;
    match s.last() {
        None => Ok(PositiveWord::empty()),
        Some(_) if s.blocks().len() >= 2 && s.ends_with_isolated() => Ok(s.clone()),
        Some(x) => Ok(s.concat(&PositiveWord::generator(other(x)))),
    }
}

/// Mirror of [`right_cut_closure`], extending on the left.
pub fn left_cut_closure(s: &PositiveWord) -> Result<PositiveWord, DualityError> {
    check(s)?;
    match s.first() {
        None => Ok(PositiveWord::empty()),
        Some(_) if s.blocks().len() >= 2 && s.begins_with_isolated() => Ok(s.clone()),
        Some(x) => Ok(PositiveWord::generator(other(x)).concat(s)),
    }
}

/// The largest right-divisor of `x` that is left-dual to a left-divisor of
/// `y`, that left-divisor, and their common ω.
pub fn max_dual_right_divisor(
    x: &PositiveWord,
    y: &PositiveWord,
) -> Result<(PositiveWord, PositiveWord, u32), DualityError> {
    check(x)?;
    check(y)?;
    Ok(max_dual_unchecked(x, y))
}

pub(crate) fn max_dual_unchecked(x: &PositiveWord, y: &PositiveWord) -> (PositiveWord, PositiveWord, u32) {
    let xl = x.letters();
    let yl = y.letters();
    for s in (1..=xl.len()).rev() {
        let tail = PositiveWord::from_letters(&xl[xl.len() - s..]);
        let head = right_dual_unchecked(&tail);
        if yl.starts_with(&head.letters()) {
            let w = omega_unchecked(&tail);
            return (tail, head, w);
        }
    }
    (PositiveWord::empty(), PositiveWord::empty(), 0)
}

/// Normal form of `gh` from the normal forms of `g` and `h`.
pub fn product_normal_form(g: &GarsideForm, h: &GarsideForm) -> GarsideForm {
    let shifted = g.tail.conjugate(h.power);
    let (x_tail, y_head, w) = max_dual_unchecked(&shifted, &h.tail);
    let left = shifted.strip_suffix(&x_tail).expect("suffix by construction");
    let right = h.tail.strip_prefix(&y_head).expect("prefix by construction");
    let tail = left.conjugate(w as i64).concat(&right);
    debug_assert!(tail.is_delta_indivisible(), "leftover product must be Δ-indivisible");
    GarsideForm { power: g.power + h.power + w as i64, tail }
}

/// Whether `a·b` is divisible by Δ, for Δ-indivisible `a`, `b`.
fn pair_divisible(a: &[u8], b: &[u8]) -> bool {
    let (n, m) = (a.len(), b.len());
    if n >= 2 && m >= 1 && a[n - 2] != a[n - 1] && b[0] == a[n - 2] {
        return true;
    }
    n >= 1 && m >= 2 && b[0] != b[1] && b[1] == a[n - 1]
}

/// Whether the product of the Δ-indivisible words `xs` is Δ-indivisible,
/// decided by adjacent pairs and by triples around one-letter factors.
pub fn multi_product_indivisible(xs: &[PositiveWord]) -> Result<bool, DualityError> {
    for x in xs {
        check(x)?;
    }
    let parts: Vec<Vec<u8>> = xs.iter().filter(|x| !x.is_empty()).map(|x| x.letters()).collect();
    for pair in parts.windows(2) {
        if pair_divisible(&pair[0], &pair[1]) {
            return Ok(false);
        }
    }
    for triple in parts.windows(3) {
        let (a, mid, c) = (&triple[0], &triple[1], &triple[2]);
        if mid.len() == 1 {
            let (x, z) = (*a.last().unwrap(), c[0]);
            if x == z && x != mid[0] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which alternative of the conjugation analysis applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupportCase {
    /// `ρ″` is a proper cut left-divisor of `ρ`.
    ProperCut,
    /// The cut closure of `ρ″` is the cut closure of `ρ`.
    Closure,
    /// `ρ″` is a left-divisor of `ρ` that is not cut.
    NotCut,
}

/// Output of [`conjugate_half_twist_support`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDecomposition {
    pub case: SupportCase,
    /// Maximal right-divisor of `ξ` left-dual to a left-divisor of `ρ̄₍ω(ρ)₎`.
    pub xi_tail: PositiveWord,
    /// That left-divisor, conjugated back: a left-divisor `ρ″` of `ρ̄`.
    pub rho_head: PositiveWord,
    /// Left-divisor of `χ` right-dual to `xi_tail`.
    pub chi_head: PositiveWord,
    /// Right-divisor of `τ` right-dual to the shifted closure of `ρ″`.
    pub tau_tail: PositiveWord,
    /// Two distinct generators ending `τ′` (first case) or the first letter of `τ″` (third case).
    pub alpha: Option<PositiveWord>,
    /// The letter after `χ″` in `χ` (first case) or the last letter of `χ″` (third case).
    pub beta: Option<PositiveWord>,
    /// Maximal right-divisor of `τ` left-dual to a left-divisor of `χ`.
    pub max_tau_tail: PositiveWord,
    /// The matching left-divisor of `χ`.
    pub max_chi_head: PositiveWord,
}

/// For `ρ` dual to `τ` and `ξ` dual to `χ`, locates the maximal right-divisor
/// of `τ` that is left-dual to a left-divisor of `χ`, starting from the part
/// of `ξ` that cancels against the right cut closure `ρ̄` of `ρ`.
///
/// The returned pair (`max_tau_tail`, `max_chi_head`) is assembled from
/// `τ″`, `χ″` and the one-letter adjustments `α`, `β`; it is not recomputed
/// by search.
pub fn conjugate_half_twist_support(
    rho: &PositiveWord,
    tau: &PositiveWord,
    xi: &PositiveWord,
    chi: &PositiveWord,
) -> Result<SupportDecomposition, DualityError> {
    for w in [rho, tau, xi, chi] {
        check(w)?;
    }
    if !is_dual(rho, tau) {
        return Err(DualityError::HypothesisViolated(format!("{rho} is not left-dual to {tau}")));
    }
    if !is_dual(xi, chi) {
        return Err(DualityError::HypothesisViolated(format!("{xi} is not left-dual to {chi}")));
    }
    let w_rho = omega_unchecked(rho) as i64;
    let closure = right_cut_closure(rho)?;
    let (xi_tail, shifted_head, _) = max_dual_unchecked(xi, &closure.conjugate(w_rho));
    let rho_head = shifted_head.conjugate(w_rho);
    let chi_head = right_dual_unchecked(&xi_tail);
    if !chi.starts_with(&chi_head) {
        return Err(DualityError::HypothesisViolated(format!("{chi_head} does not left-divide {chi}")));
    }
    let head_closure = cut_closure_left(&rho_head, &closure)?;
    let w_head = omega_unchecked(&rho_head) as i64;
    let target = head_closure.conjugate(w_rho - w_head);
    let tau_tail = right_dual_unchecked(&target);
    let tau_front = tau
        .strip_suffix(&tau_tail)
        .ok_or_else(|| DualityError::HypothesisViolated(format!("{tau_tail} does not right-divide {tau}")))?;
    let chi_rest = chi.strip_prefix(&chi_head).expect("checked above");

    let rho_is_prefix = rho.starts_with(&rho_head);
    let head_is_cut = rho_is_prefix && is_cut_left_divisor(&rho_head, rho)?;
    let case = if head_closure == closure || rho_head == *rho {
        SupportCase::Closure
    } else if head_is_cut {
        SupportCase::ProperCut
    } else if rho_is_prefix {
        SupportCase::NotCut
    } else {
        return Err(DualityError::HypothesisViolated(format!(
            "{rho_head} is neither a left-divisor of {rho} nor equal to its closure"
        )));
    };

    let mut out = SupportDecomposition {
        case,
        xi_tail,
        rho_head,
        chi_head: chi_head.clone(),
        tau_tail: tau_tail.clone(),
        alpha: None,
        beta: None,
        max_tau_tail: PositiveWord::empty(),
        max_chi_head: PositiveWord::empty(),
    };
    match case {
        SupportCase::Closure => {
            out.max_tau_tail = tau.clone();
            out.max_chi_head = right_dual_unchecked(tau);
        }
        SupportCase::ProperCut => {
            let fl = tau_front.letters();
            let n = fl.len();
            if n < 2 || fl[n - 2] == fl[n - 1] || chi_rest.is_empty() {
                return Err(DualityError::HypothesisViolated(
                    "τ′ does not end with two distinct generators".into(),
                ));
            }
            let alpha = PositiveWord::from_letters(&fl[n - 2..]);
            let beta = PositiveWord::generator(chi_rest.first().unwrap());
            out.max_tau_tail = alpha.concat(&tau_tail);
            out.max_chi_head = chi_head.concat(&beta);
            out.alpha = Some(alpha);
            out.beta = Some(beta);
        }
        SupportCase::NotCut => {
            let (Some(a), Some(b)) = (tau_tail.first(), chi_head.last()) else {
                return Err(DualityError::HypothesisViolated("τ″ or χ″ is empty".into()));
            };
            let alpha = PositiveWord::generator(a);
            let beta = PositiveWord::generator(b);
            out.max_tau_tail = tau_tail.strip_prefix(&alpha).expect("first letter");
            out.max_chi_head = chi_head.strip_suffix(&beta).expect("last letter");
            out.alpha = Some(alpha);
            out.beta = Some(beta);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PositiveWord {
        s.parse().unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&p("")), Ok(0));
        assert_eq!(omega(&p("aaaaa")), Ok(5));
        assert_eq!(omega(&p("baab")), Ok(2));
        assert!(omega(&p("aba")).is_err());
    }

    #[test]
    fn dual_examples() {
        let d = right_dual(&p("a")).unwrap();
        assert_eq!((d.tau, d.omega), (p("ba"), 1));
        let d = right_dual(&p("ab")).unwrap();
        assert_eq!((d.tau, d.omega), (p("a"), 1));
        let d = right_dual(&p("aa")).unwrap();
        assert_eq!((d.tau, d.omega), (p("baab"), 2));
        assert_eq!(left_dual(&p("a")).unwrap().rho, p("ab"));
        assert_eq!(right_dual(&p("")).unwrap().tau, p(""));
    }

    #[test]
    fn cut_divisor_examples() {
        assert_eq!(is_cut_left_divisor(&p("a"), &p("aab")), Ok(true));
        assert_eq!(is_cut_left_divisor(&p("aa"), &p("aabb")), Ok(false));
        assert!(matches!(is_cut_left_divisor(&p("ab"), &p("abaa")), Err(DualityError::NotIndivisible(_))));
        assert_eq!(is_cut_left_divisor(&p("b"), &p("baab")), Ok(false));
        assert!(matches!(is_cut_left_divisor(&p("b"), &p("aab")), Err(DualityError::NotDivisor(..))));
        assert_eq!(cut_closure_left(&p("a"), &p("aab")), Ok(p("a")));
        assert_eq!(cut_closure_left(&p("aa"), &p("aabb")), Ok(p("aab")));
        assert_eq!(cut_closure_left(&p(""), &p("ba")), Ok(p("")));
        assert_eq!(cut_closure_right(&p("b"), &p("baab")), Ok(p("ab")));
    }

    #[test]
    fn standalone_closures() {
        assert_eq!(right_cut_closure(&p("a")), Ok(p("ab")));
        assert_eq!(right_cut_closure(&p("aab")), Ok(p("aab")));
        assert_eq!(right_cut_closure(&p("abb")), Ok(p("abba")));
        assert_eq!(left_cut_closure(&p("ba")), Ok(p("ba")));
        assert_eq!(left_cut_closure(&p("bba")), Ok(p("abba")));
    }

    #[test]
    fn max_dual_examples() {
        assert_eq!(max_dual_right_divisor(&p("a"), &p("b")), Ok((p(""), p(""), 0)));
        assert_eq!(max_dual_right_divisor(&p("ab"), &p("ab")), Ok((p("ab"), p("a"), 1)));
        assert_eq!(max_dual_right_divisor(&p("aa"), &p("baab")), Ok((p("aa"), p("baab"), 2)));
    }

    #[test]
    fn product_examples() {
        let g = GarsideForm { power: -1, tail: p("ab") };
        let h = GarsideForm { power: 0, tail: p("ba") };
        assert_eq!(product_normal_form(&g, &h), GarsideForm { power: -1, tail: p("abba") });
        assert_eq!(product_normal_form(&GarsideForm::identity(), &h), h);
        assert_eq!(
            product_normal_form(&GarsideForm::delta_power(1), &GarsideForm::delta_power(-1)),
            GarsideForm::identity()
        );
    }

    #[test]
    fn multi_product_examples() {
        assert_eq!(multi_product_indivisible(&[p("a"), p("a")]), Ok(true));
        assert_eq!(multi_product_indivisible(&[p("ab"), p("a")]), Ok(false));
        assert_eq!(multi_product_indivisible(&[p("ba"), p("b"), p("ab")]), Ok(false));
        assert_eq!(multi_product_indivisible(&[p("a"), p("bb"), p("a")]), Ok(true));
    }
}
