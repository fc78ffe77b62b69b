//! Classification of factorizations of Δ² (and of Δᵏ into half-twists).
//!
//! [`canonicalize`] lowers the complexity of a factorization until it sits at
//! the minimum for its type, then finishes inside a precomputed table of
//! low-complexity states around the standard factorization. Every step is
//! recorded in a [`MoveTrace`] that replays exactly.
//!
//! [`enumerate_factorizations`] and [`orbit_bfs`] are brute-force oracles
//! used to check the engine at small sizes.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid_core::{BraidWord, ParseError};
use crate::garside::{Builder, GarsideForm};
use crate::half_twist::{make, HalfTwistPower};
use crate::hurwitz::{
    move_complexity_delta, ComplexityChange, Direction, Factorization, HurwitzError, TypeMultiset,
};

#[derive(Clone, Debug, Error)]
pub enum ClassifyError {
    #[error("product is {found}, expected {expected}")]
    WrongProduct { expected: String, found: String },
    #[error("not a standard type multiset: {0}")]
    NotStandardTuple(String),
    #[error("no reduction found within the search budget; best complexity {complexity}: {best}")]
    SearchDepthExceeded { best: Factorization, complexity: u64 },
    #[error("node budget exhausted after {} states", partial.len())]
    NodeBudgetExceeded { partial: BTreeSet<String> },
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
}

/// The six admissible type multisets of a factorization of Δ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StandardTuple {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl StandardTuple {
    pub const ALL: [StandardTuple; 6] = [
        StandardTuple::I,
        StandardTuple::II,
        StandardTuple::III,
        StandardTuple::IV,
        StandardTuple::V,
        StandardTuple::VI,
    ];

    pub fn nu(self) -> TypeMultiset {
        let pairs: &[(u32, usize)] = match self {
            StandardTuple::I => &[(1, 2), (4, 1)],
            StandardTuple::II => &[(2, 3)],
            StandardTuple::III => &[(1, 3), (3, 1)],
            StandardTuple::IV => &[(1, 2), (2, 2)],
            StandardTuple::V => &[(1, 4), (2, 1)],
            StandardTuple::VI => &[(1, 6)],
        };
        TypeMultiset::from_counts(pairs)
    }

    /// Minimal complexity over the Hurwitz class.
    pub fn floor(self) -> u64 {
        match self {
            StandardTuple::I => 2,
            StandardTuple::II | StandardTuple::III => 1,
            _ => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StandardTuple::I => "i",
            StandardTuple::II => "ii",
            StandardTuple::III => "iii",
            StandardTuple::IV => "iv",
            StandardTuple::V => "v",
            StandardTuple::VI => "vi",
        }
    }

    pub fn from_multiset(nu: &TypeMultiset) -> Option<StandardTuple> {
        StandardTuple::ALL.into_iter().find(|t| t.nu() == *nu)
    }

    pub fn factorization(self) -> Factorization {
        let spelled = match self {
            StandardTuple::I => "aaaa|Aba|Bab",
            StandardTuple::II => "aa|Abba|bb",
            StandardTuple::III => "aaa|Aba|a|b",
            StandardTuple::IV => "aa|b|aa|b",
            StandardTuple::V => "aa|b|a|a|b",
            StandardTuple::VI => "a|b|a|a|b|a",
        };
        let f: Factorization = spelled.parse().expect("catalogue entries parse");
        assert_eq!(f.product(), &GarsideForm::delta_power(2));
        f
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StandardTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The catalogue factorization with type multiset `nu`.
pub fn standard_factorization(nu: &TypeMultiset) -> Result<Factorization, ClassifyError> {
    StandardTuple::from_multiset(nu)
        .map(StandardTuple::factorization)
        .ok_or_else(|| ClassifyError::NotStandardTuple(nu.to_string()))
}

/// `(σ₁, σ₂, σ₁)` repeated `k` times, a factorization of `Δᵏ`.
pub fn standard_half_twist_sequence(k: usize) -> Factorization {
    let spec: Vec<(u8, u32)> = (0..3 * k).map(|i| (if i % 3 == 1 { 2 } else { 1 }, 1)).collect();
    Factorization::standard(&spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    Hurwitz { index: usize, dir: Direction },
    Conjugate(BraidWord),
}

impl Move {
    pub fn inverse(&self) -> Move {
        match self {
            Move::Hurwitz { index, dir } => Move::Hurwitz { index: *index, dir: dir.opposite() },
            Move::Conjugate(h) => Move::Conjugate(h.invert()),
        }
    }

    pub fn apply(&self, f: &Factorization) -> Result<Factorization, HurwitzError> {
        match self {
            Move::Hurwitz { index, dir } => f.hurwitz_move(*index, *dir),
            Move::Conjugate(h) => f.global_conjugate(h),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Hurwitz { index, dir: Direction::Left } => write!(f, "L{index}"),
            Move::Hurwitz { index, dir: Direction::Right } => write!(f, "R{index}"),
            Move::Conjugate(h) => write!(f, "C[{h}]"),
        }
    }
}

/// Parses `L3`, `R1` or `C[ab]`.
impl FromStr for Move {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Move, ParseError> {
        if let Some(body) = s.strip_prefix("C[") {
            let inner = body.strip_suffix(']').ok_or_else(|| ParseError::new(s.len(), "']'"))?;
            return inner.parse().map(Move::Conjugate).map_err(|e: ParseError| e.shifted(2));
        }
        let dir = match s.chars().next() {
            Some('L') => Direction::Left,
            Some('R') => Direction::Right,
            _ => return Err(ParseError::new(0, "'L', 'R' or 'C['")),
        };
        let index = s[1..]
            .parse()
            .ok()
            .filter(|&i: &usize| i >= 1)
            .ok_or_else(|| ParseError::new(1, "a positive move index"))?;
        Ok(Move::Hurwitz { index, dir })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveTrace {
    moves: Vec<Move>,
}

impl MoveTrace {
    pub fn new() -> MoveTrace {
        MoveTrace::default()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn replay(&self, start: &Factorization) -> Result<Factorization, HurwitzError> {
        self.moves.iter().try_fold(start.clone(), |f, m| m.apply(&f))
    }
}

impl From<Vec<Move>> for MoveTrace {
    fn from(moves: Vec<Move>) -> MoveTrace {
        MoveTrace { moves }
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(Move::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Whitespace-separated moves.
impl FromStr for MoveTrace {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<MoveTrace, ParseError> {
        let mut moves = Vec::new();
        let mut offset = 0;
        for token in s.split(' ') {
            if !token.is_empty() {
                moves.push(token.parse().map_err(|e: ParseError| e.shifted(offset))?);
            }
            offset += token.len() + 1;
        }
        Ok(MoveTrace { moves })
    }
}

/// Conjugators tried by the search: the nonempty permutation braids, their
/// inverses, and Δ.
pub fn search_conjugators() -> Vec<BraidWord> {
    ["a", "b", "ab", "ba", "A", "B", "BA", "AB", "aba"].iter().map(|s| s.parse().expect("literal")).collect()
}

fn neighbors(f: &Factorization, conjugators: &[BraidWord]) -> Vec<(Move, Factorization)> {
    let mut out = Vec::with_capacity(2 * f.len() + conjugators.len());
    for index in 1..f.len() {
        for dir in [Direction::Left, Direction::Right] {
            let m = Move::Hurwitz { index, dir };
            let g = f.hurwitz_move(index, dir).expect("index in range");
            out.push((m, g));
        }
    }
    if f.product().is_central() {
        for h in conjugators {
            out.push((Move::Conjugate(h.clone()), f.global_conjugate_unchecked(h)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CanonicalizeOptions {
    /// Maximum number of moves in one fallback search.
    pub depth: usize,
    /// State budget for one fallback search.
    pub max_nodes: usize,
    /// Whether global conjugation may be used.
    pub conjugation: bool,
}

impl Default for CanonicalizeOptions {
    fn default() -> CanonicalizeOptions {
        CanonicalizeOptions { depth: 8, max_nodes: 200_000, conjugation: true }
    }
}

const TABLE_NODE_CAP: usize = 400_000;

/// States near a standard factorization, each with the move that reached
/// it from its parent.
struct EndgameTable {
    parents: HashMap<String, Option<(String, Move)>>,
}

impl EndgameTable {
    fn build(target: &Factorization, bound: u64, conjugators: &[BraidWord]) -> EndgameTable {
        let mut parents = HashMap::new();
        parents.insert(target.encode(), None);
        let mut queue = VecDeque::from([target.clone()]);
        while let Some(f) = queue.pop_front() {
            if parents.len() >= TABLE_NODE_CAP {
                log::info!("endgame table truncated at {} states", parents.len());
                break;
            }
            let key = f.encode();
            for (m, g) in neighbors(&f, conjugators) {
                if g.complexity() > bound {
                    continue;
                }
                let gk = g.encode();
                if let Entry::Vacant(e) = parents.entry(gk) {
                    e.insert(Some((key.clone(), m)));
                    queue.push_back(g);
                }
            }
        }
        EndgameTable { parents }
    }

    fn contains(&self, key: &str) -> bool {
        self.parents.contains_key(key)
    }

    /// Moves leading from `key` back to the table root.
    fn path_to_root(&self, key: &str) -> Option<Vec<Move>> {
        let mut path = Vec::new();
        let mut cur = key.to_string();
        loop {
            match self.parents.get(&cur)? {
                None => return Some(path),
                Some((parent, m)) => {
                    path.push(m.inverse());
                    cur = parent.clone();
                }
            }
        }
    }
}

fn endgame_table(tuple: StandardTuple, conjugation: bool) -> &'static EndgameTable {
    static TABLES: [[OnceLock<EndgameTable>; 2]; 6] = [const { [const { OnceLock::new() }; 2] }; 6];
    TABLES[tuple.slot()][usize::from(conjugation)].get_or_init(|| {
        let conjugators = if conjugation { search_conjugators() } else { Vec::new() };
        let t = EndgameTable::build(&tuple.factorization(), tuple.floor() + 1, &conjugators);
        log::info!("endgame table for ({tuple}) has {} states", t.parents.len());
        t
    })
}

/// Breadth-first search for a state accepted by `goal`, staying at
/// complexity at most `bound`. Returns the moves taken.
fn search(
    start: &Factorization,
    goal: &dyn Fn(&Factorization) -> bool,
    bound: u64,
    opts: &CanonicalizeOptions,
    conjugators: &[BraidWord],
) -> Option<Vec<Move>> {
    let mut parents: HashMap<String, Option<(String, Move)>> = HashMap::new();
    parents.insert(start.encode(), None);
    let mut frontier = vec![start.clone()];
    for _ in 0..opts.depth {
        let mut next = Vec::new();
        for f in &frontier {
            let key = f.encode();
            for (m, g) in neighbors(f, conjugators) {
                if g.complexity() > bound {
                    continue;
                }
                let gk = g.encode();
                if parents.contains_key(&gk) {
                    continue;
                }
                parents.insert(gk.clone(), Some((key.clone(), m)));
                if goal(&g) {
                    let mut path = Vec::new();
                    let mut cur = gk;
                    while let Some(Some((p, m))) = parents.get(&cur) {
                        path.push(m.clone());
                        cur = p.clone();
                    }
                    path.reverse();
                    return Some(path);
                }
                if parents.len() > opts.max_nodes {
                    return None;
                }
                next.push(g);
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

/// Best single move, trying Hurwitz moves the change formula does not rule
/// out, then global conjugations.
fn guided_step(f: &Factorization, conjugators: &[BraidWord]) -> Option<(Move, Factorization)> {
    let c = f.complexity();
    let mut best: Option<(Move, Factorization)> = None;
    let mut best_c = c;
    let factors = f.factors();
    for index in 1..f.len() {
        for dir in [Direction::Left, Direction::Right] {
            let predicted = move_complexity_delta(&factors[index - 1], &factors[index], dir);
            if let Ok(ComplexityChange::Exact(v)) = predicted {
                if v >= 0 {
                    continue;
                }
            }
            let g = f.hurwitz_move(index, dir).expect("index in range");
            if let Ok(ComplexityChange::Exact(v)) = predicted {
                debug_assert_eq!(g.complexity() as i64 - c as i64, v);
            }
            if g.complexity() < best_c {
                best_c = g.complexity();
                best = Some((Move::Hurwitz { index, dir }, g));
            }
        }
    }
    if f.product().is_central() {
        for h in conjugators {
            let g = f.global_conjugate_unchecked(h);
            if g.complexity() < best_c {
                best_c = g.complexity();
                best = Some((Move::Conjugate(h.clone()), g));
            }
        }
    }
    best
}

/// Moves turning a word of standard half-twists (letters 1/2) into the
/// word `target`, assuming both spell the same positive braid.
fn braid_relation_moves(letters: &mut [u8], target: &[u8]) -> Vec<Move> {
    fn bring_to_front(letters: &mut [u8], start: usize, x: u8, moves: &mut Vec<Move>) {
        if letters[start] == x {
            return;
        }
        let y = letters[start];
        bring_to_front(letters, start + 1, x, moves);
        bring_to_front(letters, start + 2, y, moves);
        // y x y → x y x by two left moves.
        moves.push(Move::Hurwitz { index: start + 1, dir: Direction::Left });
        moves.push(Move::Hurwitz { index: start + 2, dir: Direction::Left });
        letters[start] = x;
        letters[start + 1] = y;
        letters[start + 2] = x;
    }
    let mut moves = Vec::new();
    for (i, &t) in target.iter().enumerate() {
        bring_to_front(letters, i, t, &mut moves);
    }
    moves
}

/// Canonicalizes a factorization of Δ² with default options.
pub fn canonicalize(f: &Factorization) -> Result<(Factorization, MoveTrace), ClassifyError> {
    canonicalize_with(f, &CanonicalizeOptions::default())
}

pub fn canonicalize_with(
    f: &Factorization,
    opts: &CanonicalizeOptions,
) -> Result<(Factorization, MoveTrace), ClassifyError> {
    canonicalize_power(f, 2, opts)
}

/// Canonicalizes a factorization of `Δᵏ`. For `k ≠ 2` every factor must be a
/// half-twist and the target is [`standard_half_twist_sequence`].
pub fn canonicalize_power(
    f: &Factorization,
    k: i64,
    opts: &CanonicalizeOptions,
) -> Result<(Factorization, MoveTrace), ClassifyError> {
    let expected = GarsideForm::delta_power(k);
    if *f.product() != expected {
        return Err(ClassifyError::WrongProduct {
            expected: expected.to_string(),
            found: f.product().to_string(),
        });
    }
    let nu = f.type_multiset();
    let all_half_twists = nu.counts().keys().all(|&e| e == 1);
    let tuple = if k == 2 { StandardTuple::from_multiset(&nu) } else { None };
    if tuple.is_none() && !(all_half_twists && k > 0 && nu.nu(1) == 3 * k as usize) {
        return Err(ClassifyError::NotStandardTuple(nu.to_string()));
    }
    let target = match tuple {
        Some(t) => t.factorization(),
        None => standard_half_twist_sequence(k as usize),
    };
    let floor = tuple.map_or(0, StandardTuple::floor);
    let table = tuple.map(|t| endgame_table(t, opts.conjugation));
    let conjugators = if opts.conjugation { search_conjugators() } else { Vec::new() };
    let target_letters: Vec<u8> = target.factors().iter().map(|h| h.axis).collect();

    let mut cur = f.clone();
    let mut trace = MoveTrace::new();
    let apply = |cur: &mut Factorization, trace: &mut MoveTrace, moves: Vec<Move>| {
        for m in moves {
            log::trace!("{m}: {cur}");
            *cur = m.apply(cur).expect("search moves are valid");
            trace.push(m);
        }
    };
    loop {
        if let Some(path) = table.and_then(|t| t.path_to_root(&cur.encode())) {
            apply(&mut cur, &mut trace, path);
            break;
        }
        let c = cur.complexity();
        if all_half_twists && c == 0 {
            let mut letters: Vec<u8> = cur.factors().iter().map(|h| h.axis).collect();
            let moves = braid_relation_moves(&mut letters, &target_letters);
            apply(&mut cur, &mut trace, moves);
            break;
        }
        if c > floor {
            if let Some((m, _)) = guided_step(&cur, &conjugators) {
                apply(&mut cur, &mut trace, vec![m]);
                continue;
            }
        }
        let goal = |g: &Factorization| {
            g.complexity() < c
                || table.is_some_and(|t| t.contains(&g.encode()))
                || (all_half_twists && g.complexity() == 0)
        };
        let found = (0..=2).find_map(|slack| search(&cur, &goal, c + slack, opts, &conjugators));
        match found {
            Some(path) => apply(&mut cur, &mut trace, path),
            None => {
                return Err(ClassifyError::SearchDepthExceeded { complexity: c, best: cur });
            }
        }
    }
    debug_assert_eq!(cur, target);
    if cur != target {
        return Err(ClassifyError::SearchDepthExceeded { complexity: cur.complexity(), best: cur });
    }
    Ok((cur, trace))
}

/// Level-synchronous closure of `f` under moves, pruning states above
/// `max_complexity`.
pub fn orbit_bfs(
    f: &Factorization,
    max_complexity: u64,
    max_nodes: usize,
    conjugation: bool,
) -> Result<BTreeSet<String>, ClassifyError> {
    let conjugators = if conjugation { search_conjugators() } else { Vec::new() };
    let mut seen: HashSet<String> = HashSet::new();
    let mut frontier = Vec::new();
    if f.complexity() <= max_complexity {
        seen.insert(f.encode());
        frontier.push(f.clone());
    }
    while !frontier.is_empty() {
        let found: Vec<(String, Factorization)> = frontier
            .par_iter()
            .flat_map_iter(|g| neighbors(g, &conjugators))
            .filter(|(_, g)| g.complexity() <= max_complexity)
            .map(|(_, g)| (g.encode(), g))
            .collect();
        let mut next = Vec::new();
        for (key, g) in found {
            if seen.insert(key) {
                next.push(g);
            }
            if seen.len() > max_nodes {
                return Err(ClassifyError::NodeBudgetExceeded { partial: seen.into_iter().collect() });
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Freely reduced words of length at most `bound`.
pub fn reduced_words(bound: usize) -> Vec<BraidWord> {
    let letters: Vec<BraidWord> = ["a", "b", "A", "B"].iter().map(|s| s.parse().unwrap()).collect();
    let mut out = vec![BraidWord::identity()];
    let mut frontier = vec![BraidWord::identity()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let x = w.concat(l);
                if x.free_reduce().len() == x.len() {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn for_each_tuple(pools: &[&[HalfTwistPower]], mut visit: impl FnMut(&[usize], GarsideForm)) {
    fn rec(
        pools: &[&[HalfTwistPower]],
        idx: &mut Vec<usize>,
        acc: &GarsideForm,
        visit: &mut dyn FnMut(&[usize], GarsideForm),
    ) {
        if idx.len() == pools.len() {
            visit(idx, acc.clone());
            return;
        }
        for (i, h) in pools[idx.len()].iter().enumerate() {
            idx.push(i);
            let mut b = Builder::from_form(acc);
            b.push_form(&h.to_garside());
            rec(pools, idx, &b.finish(), visit);
            idx.pop();
        }
    }
    rec(pools, &mut Vec::new(), &GarsideForm::identity(), &mut visit);
}

/// All factorizations of Δ² into factors `w⁻¹σᵢᵉw` with `|w| ≤ bound`,
/// sorted by encoding. Factors are deduplicated as group elements.
pub fn enumerate_factorizations(conjugator_bound: usize) -> Vec<Factorization> {
    let words = reduced_words(conjugator_bound);
    let pools: Vec<Vec<HalfTwistPower>> = (1..=6u32)
        .map(|e| {
            let set: BTreeSet<HalfTwistPower> =
                words.iter().flat_map(|w| [make(w, 1, e), make(w, 2, e)]).collect();
            set.into_iter().collect()
        })
        .collect();
    let target = GarsideForm::delta_power(2);
    let found: BTreeSet<Factorization> = compositions(6)
        .into_par_iter()
        .flat_map_iter(|comp| {
            let mid = comp.len() / 2;
            let pick = |es: &[u32]| -> Vec<&[HalfTwistPower]> {
                es.iter().map(|&e| pools[e as usize - 1].as_slice()).collect()
            };
            let left_pools = pick(&comp[..mid]);
            let right_pools = pick(&comp[mid..]);
            let mut lefts: HashMap<GarsideForm, Vec<Vec<usize>>> = HashMap::new();
            for_each_tuple(&left_pools, |idx, prod| lefts.entry(prod).or_default().push(idx.to_vec()));
            let mut out = Vec::new();
            for_each_tuple(&right_pools, |idx, prod| {
                let needed = target.mul(&prod.inverse());
                if let Some(ls) = lefts.get(&needed) {
                    for l in ls {
                        let factors: Vec<HalfTwistPower> = l
                            .iter()
                            .zip(&left_pools)
                            .chain(idx.iter().zip(&right_pools))
                            .map(|(&i, pool)| pool[i].clone())
                            .collect();
                        out.push(Factorization::new(factors).expect("nonempty"));
                    }
                }
            });
            out
        })
        .collect();
    found.into_iter().collect()
}

/// Violations of the constraints on type multisets of factorizations of Δ².
pub fn constraint_violations(f: &Factorization) -> Vec<String> {
    let nu = f.type_multiset();
    let mut out = Vec::new();
    if nu.nu(3) > 1 {
        out.push(format!("{f}: more than one cube"));
    }
    if nu.nu(2) >= 1 && nu.nu(3) >= 1 {
        out.push(format!("{f}: square together with cube"));
    }
    if nu.nu(2) >= 1 && nu.nu(4) >= 1 {
        out.push(format!("{f}: square together with fourth power"));
    }
    if nu.counts().keys().any(|&n| n >= 5) {
        out.push(format!("{f}: exponent at least five"));
    }
    if f.len() < 3 {
        out.push(format!("{f}: fewer than three factors"));
    }
    if StandardTuple::from_multiset(&nu).is_none() {
        out.push(format!("{f}: type {nu} is not standard"));
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tuples_found: BTreeMap<String, usize>,
    pub violations: Vec<String>,
    pub instances_checked: usize,
    pub max_trace_len: usize,
    pub wall_time_ms: u64,
}

/// Enumerates at the given bound and canonicalizes every instance.
pub fn verify_classification(conjugator_bound: usize, search_depth: usize) -> Report {
    let opts = CanonicalizeOptions { depth: search_depth, ..CanonicalizeOptions::default() };
    verify_classification_with(conjugator_bound, &opts)
}

pub fn verify_classification_with(conjugator_bound: usize, opts: &CanonicalizeOptions) -> Report {
    let started = Instant::now();
    let instances = enumerate_factorizations(conjugator_bound);
    let outcomes: Vec<(Vec<String>, usize)> = instances
        .par_iter()
        .map(|f| {
            let mut problems = constraint_violations(f);
            let mut trace_len = 0;
            if let Ok(target) = standard_factorization(&f.type_multiset()) {
                match canonicalize_with(f, opts) {
                    Ok((out, trace)) => {
                        trace_len = trace.len();
                        if out != target {
                            problems.push(format!("{f}: canonicalized to {out}, expected {target}"));
                        }
                        match trace.replay(f) {
                            Ok(r) if r == out => {}
                            _ => problems.push(format!("{f}: trace does not replay")),
                        }
                    }
                    Err(e) => problems.push(format!("{f}: {e}")),
                }
            }
            (problems, trace_len)
        })
        .collect();
    let mut report = Report { instances_checked: instances.len(), ..Report::default() };
    for (f, (problems, trace_len)) in instances.iter().zip(outcomes) {
        let label = StandardTuple::from_multiset(&f.type_multiset())
            .map_or_else(|| f.type_multiset().to_string(), |t| t.label().to_string());
        *report.tuples_found.entry(label).or_insert(0) += 1;
        report.violations.extend(problems);
        report.max_trace_len = report.max_trace_len.max(trace_len);
    }
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    report
}
