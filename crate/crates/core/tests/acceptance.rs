//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output; exits nonzero on failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use garside_b3::braid_core::BraidWord;
use garside_b3::classify::{
    canonicalize, enumerate_factorizations, reduced_words, verify_classification, CanonicalizeOptions, Move,
    MoveTrace, StandardTuple,
};
use garside_b3::duality::{is_cut_left_divisor, omega, right_dual};
use garside_b3::garside::{equals, normal_form, GarsideForm, PositiveWord};
use garside_b3::half_twist::{make, recognize};
use garside_b3::hurwitz::{move_complexity_delta, ComplexityChange, Direction, Factorization, HurwitzError};
use garside_b3::lefschetz::{
    classify_lefschetz, count_identity_factorizations, project, replay_projected, standard_sequence,
    Sl2Matrix,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_s), || format!("took {elapsed:.2?}, limit {limit_s}s"))
}

fn garside_soundness() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..100_000 {
        let w = random_word(&mut rng, 20);
        let mut v = w.clone();
        for _ in 0..5 {
            v = insert_relator(&mut rng, &v);
        }
        let (a, b) = (normal_form(&w), normal_form(&v));
        ensure(a == b, || format!("{w} and {v} give {a} and {b}"))?;
    }
    let elapsed = started.elapsed();
    within(elapsed, 10)?;
    Ok(format!("100000 words, {elapsed:.2?}"))
}

fn duality_suite() -> Check {
    let started = Instant::now();
    let words = indivisible_words(10);
    for letters in &words {
        let r = PositiveWord::from_letters(letters);
        let d = right_dual(&r).map_err(|e| e.to_string())?;
        let prod = normal_form(&r.to_word().concat(&d.tau.to_word()));
        ensure(prod == GarsideForm::delta_power(d.omega as i64), || format!("{r}·{} = {prod}", d.tau))?;
        // Pseudo-symmetry: τ is left-dual to ρ shifted by Δ^ω.
        let back = right_dual(&d.tau).map_err(|e| e.to_string())?;
        ensure(back.tau == r.conjugate(d.omega as i64), || format!("pseudo-symmetry fails for {r}"))?;
        let w = omega(&r).unwrap();
        for cut in 0..=letters.len() {
            let (p, q) =
                (PositiveWord::from_letters(&letters[..cut]), PositiveWord::from_letters(&letters[cut..]));
            let sum = omega(&p).unwrap() + omega(&q).unwrap();
            let defect = sum as i64 - w as i64;
            let is_cut = is_cut_left_divisor(&p, &r).unwrap();
            ensure(defect == 0 || defect == 1, || format!("{p}·{q}: defect {defect}"))?;
            ensure((defect == 0) == is_cut, || format!("{p}·{q}: cut {is_cut}, defect {defect}"))?;
        }
    }
    let elapsed = started.elapsed();
    within(elapsed, 30)?;
    Ok(format!("{} indivisible words, {elapsed:.2?}", words.len()))
}

fn all_words(n: usize) -> Vec<BraidWord> {
    let mut out = vec![BraidWord::identity()];
    let mut level = vec![String::new()];
    for _ in 0..n {
        level = level.iter().flat_map(|w| ["a", "b", "A", "B"].map(|c| format!("{w}{c}"))).collect();
        out.extend(level.iter().map(|s| s.parse::<BraidWord>().unwrap()));
    }
    out
}

fn half_twist_formulas() -> Check {
    let mut count = 0;
    for w in all_words(5) {
        for axis in [1, 2] {
            for e in 1..=6u32 {
                let h = make(&w, axis, e);
                let direct = w.invert().concat(&BraidWord::from_indices(&vec![axis; e as usize])).concat(&w);
                ensure(equals(&h.to_garside().to_word(), &direct), || format!("make({w},{axis},{e})"))?;
                let round = recognize(&h.to_garside()).ok_or_else(|| format!("{h} not recognized"))?;
                ensure(equals(&round.spelling(), &direct), || format!("{h} round trip"))?;
                let k = h.garside_power();
                let inv = h.invert().power;
                if h.is_standard() {
                    ensure(inv == -(e as i64), || format!("inverse of {h}"))?;
                } else {
                    let xi = omega(&h.xi()).unwrap() as i64;
                    ensure(xi == 2 * h.omega as i64 + e as i64 - 1, || format!("ω(ξ) of {h} is {xi}"))?;
                    ensure(inv == k - e as i64 + 1, || format!("inverse of {h} has power {inv}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn random_factorization(rng: &mut StdRng) -> Factorization {
    let n = rng.gen_range(2..=6);
    let factors = (0..n)
        .map(|_| {
            let w = random_word(rng, 4);
            make(&w, rng.gen_range(1..=2), rng.gen_range(1..=4))
        })
        .collect();
    Factorization::new(factors).unwrap()
}

fn hurwitz_engine() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let (mut checked, mut outside) = (0, 0);
    for _ in 0..10_000 {
        let f = random_factorization(&mut rng);
        let j = rng.gen_range(1..f.len());
        let dir = if rng.gen() { Direction::Right } else { Direction::Left };
        let g = f.hurwitz_move(j, dir).map_err(|e| e.to_string())?;
        let word_product = |x: &Factorization| {
            x.factors().iter().fold(BraidWord::identity(), |acc, h| acc.concat(&h.spelling()))
        };
        ensure(normal_form(&word_product(&g)) == *f.product(), || format!("{f} {j} {dir:?}: product"))?;
        ensure(g.hurwitz_move(j, dir.opposite()).unwrap() == f, || format!("{f} {j}: not invertible"))?;
        ensure(g.type_multiset() == f.type_multiset(), || format!("{f} {j}: type changed"))?;
        let actual = g.complexity() as i64 - f.complexity() as i64;
        let (g1, g2) = (&f.factors()[j - 1], &f.factors()[j]);
        match move_complexity_delta(g1, g2, dir) {
            Ok(ComplexityChange::Exact(v)) => {
                ensure(v == actual, || format!("{f} {j} {dir:?}: predicted {v}, actual {actual}"))?;
                checked += 1;
            }
            Ok(ComplexityChange::AtMost(v)) => {
                ensure(actual <= v, || format!("{f} {j} {dir:?}: bound {v}, actual {actual}"))?;
                checked += 1;
            }
            Err(HurwitzError::HypothesisViolated(_)) => outside += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("10000 moves, formula checked on {checked}, {outside} outside its hypothesis"))
}

fn bound_zero() -> Check {
    let started = Instant::now();
    let found: BTreeSet<String> = enumerate_factorizations(0).iter().map(|f| f.to_string()).collect();
    // Brute force: split every positive spelling of Δ² into blocks of equal letters.
    let mut expected = BTreeSet::new();
    for word in monoid_class(&[1, 2, 1, 1, 2, 1]) {
        for mask in 0u32..32 {
            let mut parts: Vec<Vec<u8>> = vec![vec![word[0]]];
            for i in 1..6 {
                if mask & (1 << (i - 1)) != 0 && word[i] == word[i - 1] {
                    parts.last_mut().unwrap().push(word[i]);
                } else {
                    parts.push(vec![word[i]]);
                }
            }
            let text: Vec<String> =
                parts.iter().map(|p| p.iter().map(|&x| if x == 1 { 'a' } else { 'b' }).collect()).collect();
            expected.insert(text.join("|"));
        }
    }
    ensure(found == expected, || {
        format!("found {} factorizations, expected {}", found.len(), expected.len())
    })?;
    for f in enumerate_factorizations(0) {
        let nu = f.type_multiset();
        ensure(StandardTuple::from_multiset(&nu).is_some(), || format!("{f}: type {nu}"))?;
        ensure(nu.nu(2) <= 2, || format!("{f}: more than two squares"))?;
        ensure(f.factors().iter().all(|h| h.exponent < 3), || format!("{f}: standard factor with e ≥ 3"))?;
    }
    let elapsed = started.elapsed();
    within(elapsed, 5)?;
    Ok(format!("{} factorizations, {elapsed:.2?}", found.len()))
}

fn bound_two() -> Check {
    let report = verify_classification(2, 8);
    ensure(report.violations.is_empty(), || {
        format!("{} violations, first: {}", report.violations.len(), report.violations[0])
    })?;
    within(Duration::from_millis(report.wall_time_ms), 600)?;
    Ok(format!(
        "{} instances, tuples {:?}, longest trace {}, {} ms",
        report.instances_checked, report.tuples_found, report.max_trace_len, report.wall_time_ms
    ))
}

fn fz(s: &str) -> Factorization {
    s.parse().unwrap()
}

fn regressions() -> Check {
    let start = fz("a|b|a");
    let goal = fz("b|a|b");
    let moves: Vec<Move> = (1..=2)
        .flat_map(|j| [Direction::Left, Direction::Right].map(|dir| Move::Hurwitz { index: j, dir }))
        .collect();
    let two =
        moves.iter().flat_map(|m1| moves.iter().map(move |m2| MoveTrace::from(vec![m1.clone(), m2.clone()])));
    let path = two
        .into_iter()
        .find(|t| t.replay(&start).ok().as_ref() == Some(&goal))
        .ok_or("no two-move path from a|b|a to b|a|b")?;
    let one = moves.iter().any(|m| m.apply(&start).ok().as_ref() == Some(&goal));
    ensure(!one, || "a single move already suffices".into())?;
    let cases = [
        ("b|aa|b|aa", StandardTuple::IV),
        ("abA|aaa|b|a", StandardTuple::III),
        ("bb|aa|Abba", StandardTuple::II),
    ];
    let mut traces = vec![format!("a|b|a→b|a|b by {path}")];
    for (input, t) in cases {
        let f = fz(input);
        let (out, trace) = canonicalize(&f).map_err(|e| format!("{input}: {e}"))?;
        ensure(out == t.factorization(), || format!("{input} → {out}"))?;
        ensure(trace.replay(&f).ok() == Some(out.clone()), || format!("{input}: trace does not replay"))?;
        traces.push(format!("{input}→{out} by {trace}"));
    }
    Ok(traces.join("; "))
}

fn scrambled_lefschetz(rng: &mut StdRng, len: usize) -> Vec<Sl2Matrix> {
    let mut trace = MoveTrace::new();
    for _ in 0..40 {
        let index = rng.gen_range(1..len);
        let dir = if rng.gen() { Direction::Right } else { Direction::Left };
        trace.push(Move::Hurwitz { index, dir });
    }
    let conj = ["a", "b", "ab", "BA", "aab"][rng.gen_range(0..5)];
    trace.push(Move::Conjugate(conj.parse().unwrap()));
    replay_projected(&standard_sequence(len), &trace)
}

fn lefschetz() -> Check {
    let started = Instant::now();
    for (bound, max_len) in [(1, 24), (2, 12)] {
        let counts = count_identity_factorizations(bound, max_len);
        for (&len, &n) in &counts {
            ensure((n > 0) == (len % 12 == 0), || {
                format!("bound {bound}: {n} factorizations of length {len}")
            })?;
        }
    }
    let mut rng = StdRng::seed_from_u64(8);
    let opts = CanonicalizeOptions::default();
    for i in 0..100 {
        let len = if i % 2 == 0 { 12 } else { 24 };
        let ms = scrambled_lefschetz(&mut rng, len);
        let (out, trace) = classify_lefschetz(&ms, &opts).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(out == standard_sequence(len), || format!("instance {i} ended elsewhere"))?;
        ensure(replay_projected(&ms, &trace) == out, || format!("instance {i}: trace"))?;
    }
    let words = reduced_words(10);
    for w in &words {
        let g = normal_form(w);
        let in_subgroup = g.tail.is_empty() && g.power.rem_euclid(4) == 0;
        ensure((project(w) == Sl2Matrix::IDENTITY) == in_subgroup, || format!("kernel test fails on {w}"))?;
    }
    let elapsed = started.elapsed();
    within(elapsed, 60)?;
    Ok(format!("100 scrambled instances, {} words in kernel test, {elapsed:.2?}", words.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("garside soundness", garside_soundness),
        ("duality suite", duality_suite),
        ("half-twist formulas", half_twist_formulas),
        ("hurwitz engine", hurwitz_engine),
        ("classification at bound 0", bound_zero),
        ("classification at bound 2", bound_two),
        ("fixed regressions", regressions),
        ("lefschetz", lefschetz),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
