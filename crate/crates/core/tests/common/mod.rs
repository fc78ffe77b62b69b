//! Brute-force oracles shared by the integration tests. None of them call
//! into the normal-form code they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use garside_b3::braid_core::{BraidWord, Generator};
use rand::Rng;

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn monomial(c: i64, e: i32) -> Laurent {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&e, &c) in &o.0 {
            let v = m.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                m.remove(&e);
            }
        }
        Laurent(m)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut acc = Laurent::default();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                acc = acc.add(&Laurent::monomial(c1 * c2, e1 + e2));
            }
        }
        acc
    }
}

pub type Mat = [[Laurent; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m(c: i64, e: i32) -> Laurent {
    Laurent::monomial(c, e)
}

fn burau_generator(g: Generator) -> Mat {
    match (g.index(), g.is_positive()) {
        (1, true) => [[m(-1, 1), m(1, 0)], [m(0, 0), m(1, 0)]],
        (1, false) => [[m(-1, -1), m(1, -1)], [m(0, 0), m(1, 0)]],
        (2, true) => [[m(1, 0), m(0, 0)], [m(1, 1), m(-1, 1)]],
        _ => [[m(1, 0), m(0, 0)], [m(1, 0), m(-1, -1)]],
    }
}

/// Reduced Burau matrix; faithful on B₃, so equal matrices mean equal braids.
pub fn burau(w: &BraidWord) -> Mat {
    let id: Mat = [[m(1, 0), m(0, 0)], [m(0, 0), m(1, 0)]];
    w.letters().iter().fold(id, |acc, &g| mat_mul(&acc, &burau_generator(g)))
}

pub fn same_braid(u: &BraidWord, v: &BraidWord) -> bool {
    burau(u) == burau(v)
}

/// All positive words equal to `letters` in the positive monoid, found by
/// applying `121 ↔ 212` everywhere.
pub fn monoid_class(letters: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([letters.to_vec()]);
    let mut queue = VecDeque::from([letters.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(2) {
            let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
            if a == c && a != b {
                let mut x = w.clone();
                x[i] = b;
                x[i + 1] = a;
                x[i + 2] = b;
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
    }
    seen
}

pub fn brute_delta_divisible(letters: &[u8]) -> bool {
    monoid_class(letters).iter().any(|w| w.starts_with(&[1, 2, 1]) || w.starts_with(&[2, 1, 2]))
}

/// `p ≼ q` in the positive monoid.
pub fn brute_left_divides(p: &[u8], q: &[u8]) -> bool {
    if p.len() > q.len() {
        return false;
    }
    let pc = monoid_class(p);
    monoid_class(q).iter().any(|w| pc.contains(&w[..p.len()]))
}

/// `p` is a right divisor of `q`.
pub fn brute_right_divides(p: &[u8], q: &[u8]) -> bool {
    if p.len() > q.len() {
        return false;
    }
    let pc = monoid_class(p);
    monoid_class(q).iter().any(|w| pc.contains(&w[w.len() - p.len()..]))
}

/// Strips Δ from the left until none is left: `(k, rest)` with `w = Δᵏ·rest`.
pub fn brute_canonical(letters: &[u8]) -> (u64, Vec<u8>) {
    let mut cur = letters.to_vec();
    let mut k = 0;
    loop {
        let hit = monoid_class(&cur).into_iter().find(|w| w.starts_with(&[1, 2, 1]));
        match hit {
            Some(w) => {
                cur = w[3..].to_vec();
                k += 1;
            }
            None => return (k, cur),
        }
    }
}

pub fn delta_letters(k: usize) -> Vec<u8> {
    [1u8, 2, 1].repeat(k)
}

/// Every right dual of `rho`: the minimal `k` and the distinct classes of
/// `τ` with `ρτ = Δᵏ`.
pub fn brute_right_duals(rho: &[u8]) -> (usize, BTreeSet<Vec<u8>>) {
    let rc = monoid_class(rho);
    for k in 0.. {
        if 3 * k < rho.len() {
            continue;
        }
        let found: BTreeSet<Vec<u8>> = monoid_class(&delta_letters(k))
            .into_iter()
            .filter(|w| rc.contains(&w[..rho.len()]))
            .map(|w| monoid_class(&w[rho.len()..]).into_iter().next().unwrap())
            .collect();
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!()
}

/// Every left dual of `tau`.
pub fn brute_left_duals(tau: &[u8]) -> (usize, BTreeSet<Vec<u8>>) {
    let tc = monoid_class(tau);
    for k in 0.. {
        if 3 * k < tau.len() {
            continue;
        }
        let found: BTreeSet<Vec<u8>> = monoid_class(&delta_letters(k))
            .into_iter()
            .filter(|w| tc.contains(&w[w.len() - tau.len()..]))
            .map(|w| monoid_class(&w[..w.len() - tau.len()]).into_iter().next().unwrap())
            .collect();
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!()
}

/// All words over {1,2} of length at most `n`.
pub fn positive_words(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for x in [1u8, 2] {
                let mut v: Vec<u8> = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Δ-indivisible positive words of length at most `n`, by brute force.
pub fn indivisible_words(n: usize) -> Vec<Vec<u8>> {
    positive_words(n).into_iter().filter(|w| !brute_delta_divisible(w)).collect()
}

pub fn letters_to_word(letters: &[u8]) -> BraidWord {
    BraidWord::from_indices(letters)
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Generator::new(rng.gen_range(1..=2), if rng.gen() { 1 } else { -1 }).unwrap())
        .collect();
    BraidWord::from_letters(letters)
}

/// Inserts a relator (`aba·BAB`-type or `xX`) at a random position.
pub fn insert_relator<R: Rng>(rng: &mut R, w: &BraidWord) -> BraidWord {
    let relators = ["abaBAB", "babABA", "aA", "Aa", "bB", "Bb", "BABaba", "ABAbab"];
    let r: BraidWord = relators[rng.gen_range(0..relators.len())].parse().unwrap();
    let at = rng.gen_range(0..=w.len());
    let (l, rt) = w.letters().split_at(at);
    BraidWord::from_letters([l, r.letters(), rt].concat())
}
