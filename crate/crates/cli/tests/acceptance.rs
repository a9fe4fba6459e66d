//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every generator is seeded, so a failing run reproduces.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tracerange::extreme::{
    face_membership, k_membership, mixed_radix_digits, pi_m, pi_m_inverse, radix_to_sequence, sequence_to_radix,
    ExtremalityReport,
};
use tracerange::range::{
    achievable_outer, convexity_verdict, subset_sums, DepthLimit, ExhaustiveOracle, MeetInTheMiddle,
};
use tracerange::representability::{gap_certificate, greedy_expand, kakeya_check, verify_expansion, violations};
use tracerange::{AlgebraSpec, Factor, Interval, IntervalUnion, OpenInterval, RadixWord, Rational, SequenceModel, TailModel};
use tracerange_cli::{parse_spec, run_command};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, budget: Duration) -> std::result::Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn random_unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=1000i64);
    q(rng.gen_range(0..=den), den)
}

fn random_word(rng: &mut ChaCha8Rng, max_pre: usize, max_period: usize) -> RadixWord {
    let pre = (0..rng.gen_range(0..=max_pre)).map(|_| rng.gen_range(2..=9)).collect();
    let period = (0..rng.gen_range(1..=max_period)).map(|_| rng.gen_range(2..=9)).collect();
    RadixWord::new(pre, period).unwrap()
}

/// Condition-satisfying models of total 1: slow geometrics, extreme points of
/// `K`, and algebras whose merged atom traces pass the check.
fn complete_models(rng: &mut ChaCha8Rng) -> Vec<(String, SequenceModel)> {
    let mut models = Vec::new();
    for _ in 0..17 {
        let den = rng.gen_range(2..=12i64);
        let ratio = q(rng.gen_range((den + 1) / 2..den), den);
        let first = Rational::one() - &ratio;
        models.push((format!("geo({first},{ratio})"), SequenceModel::geometric(first, ratio).unwrap()));
    }
    for _ in 0..17 {
        let w = random_word(rng, 6, 4);
        models.push((format!("radix {w:?}"), radix_to_sequence(&w, &Rational::one()).unwrap()));
    }
    while models.len() < 50 {
        let mut factors = Vec::new();
        let mut weight = Rational::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let dim = rng.gen_range(1..=4u64);
            let f = Factor {
                dim,
                weight: q(dim as i64, 1 << rng.gen_range(2..=5)),
            };
            if &weight + &f.weight >= Rational::one() {
                break;
            }
            weight = &weight + &f.weight;
            factors.push(f);
        }
        if factors.is_empty() {
            continue;
        }
        let rest = Rational::one() - &weight;
        let tail = TailModel::geometric(&rest * &q(1, 2), q(1, 2)).unwrap();
        let spec = AlgebraSpec::new(factors, Some(tail)).unwrap();
        let m = spec.atom_traces().unwrap();
        if kakeya_check(&m).holds() {
            models.push((format!("{spec:?}"), m));
        }
    }
    models
}

fn greedy_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let models = complete_models(&mut rng);
    for (name, m) in &models {
        ensure(m.total() == &Rational::one() && kakeya_check(m).holds(), || format!("{name} is not complete"))?;
        for _ in 0..20 {
            let r = random_unit_rational(&mut rng);
            let exp = greedy_expand(m, &r, 64).map_err(|e| format!("{name}, r = {r}: {e}"))?;
            let mut residual = r.clone();
            for (n, (bit, a)) in exp.bits().iter().zip(m.terms()).enumerate() {
                if *bit == 1 {
                    residual = &residual - &a;
                }
                let bound = Rational::one() - m.partial_sum(n + 1);
                ensure(!residual.is_negative() && residual <= bound, || {
                    format!("{name}, r = {r}: residual {residual} outside [0, {bound}] at step {}", n + 1)
                })?;
            }
            ensure(exp.residual() == &residual, || format!("{name}, r = {r}: reported residual differs"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{} models x 20 values, {:.2?}", models.len(), start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let limit = DepthLimit::default();
    let mut checked = 0usize;
    for _ in 0..200 {
        let mut terms: Vec<Rational> = (0..rng.gen_range(1..=12))
            .map(|_| q(rng.gen_range(1..=20), rng.gen_range(1..=40)))
            .collect();
        terms.sort_by(|a, b| b.cmp(a));
        let m = SequenceModel::finite(terms.clone()).unwrap();
        let oracle = ExhaustiveOracle::new(&terms, limit).unwrap();
        let brute = MeetInTheMiddle::new(&terms, limit).unwrap();
        let sums = subset_sums(&terms, limit).unwrap();
        ensure(sums == oracle.sums(), || format!("{terms:?}: merged sums differ from the oracle"))?;
        for r in &sums {
            ensure(brute.contains(r), || format!("{terms:?}: {r} not found by meet-in-the-middle"))?;
            let bits = oracle.witness(r).ok_or_else(|| format!("{terms:?}: no witness for {r}"))?;
            let rest = verify_expansion(&m, &bits, r).map_err(|e| e.to_string())?;
            ensure(rest.is_zero(), || format!("{terms:?}: witness for {r} leaves {rest}"))?;
        }
        checked += sums.len();
        if sums.len() > 1 {
            for _ in 0..20 {
                let i = rng.gen_range(0..sums.len() - 1);
                let den = rng.gen_range(2..=100i64);
                let t = q(rng.gen_range(1..den), den);
                let r = &sums[i] + &(&(&sums[i + 1] - &sums[i]) * &t);
                ensure(!brute.contains(&r), || format!("{terms:?}: {r} between sums reported reachable"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{checked} sums, {:.2?}", start.elapsed()))
}

fn gap_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut models = vec![SequenceModel::geometric(q(2, 3), q(1, 3)).unwrap()];
    while models.len() < 21 {
        let den = rng.gen_range(3..=12i64);
        let ratio = q(rng.gen_range(1..=(den - 1) / 2), den);
        let first_den = rng.gen_range(1..=12i64);
        let first = q(rng.gen_range(1..=first_den), first_den);
        models.push(SequenceModel::geometric(first, ratio).unwrap());
    }
    let mut gaps = 0;
    for m in &models {
        let approx = achievable_outer(m, 16, DepthLimit::default()).map_err(|e| e.to_string())?;
        let found = violations(m, 16);
        ensure(!found.is_empty(), || format!("{m:?}: no violations"))?;
        for n in found {
            let gap = gap_certificate(m, n).map_err(|e| e.to_string())?;
            let mid = gap.midpoint();
            ensure(!approx.union().contains(&mid), || format!("{m:?}: midpoint {mid} of gap {n} is covered"))?;
            gaps += 1;
        }
    }
    Ok(format!("{gaps} gaps over {} models", models.len()))
}

fn convexity_gives_interval() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let unit = IntervalUnion::from_intervals([Interval::new(Rational::zero(), Rational::one()).unwrap()]);
    let models = complete_models(&mut rng);
    for (name, m) in &models {
        for depth in [4, 8, 12] {
            let approx = achievable_outer(m, depth, DepthLimit::default()).map_err(|e| e.to_string())?;
            ensure(approx.union() == &unit, || format!("{name} at depth {depth}: {:?}", approx.union()))?;
        }
    }
    Ok(format!("{} models at depths 4, 8, 12", models.len()))
}

fn cantor_identity() -> Outcome {
    let cantor = SequenceModel::geometric(q(2, 3), q(1, 3)).unwrap();
    for n in 1..=10usize {
        let approx = achievable_outer(&cantor, n, DepthLimit::default()).map_err(|e| e.to_string())?;
        let parts = approx.union().parts();
        ensure(parts.len() == 1 << n, || format!("depth {n}: {} intervals", parts.len()))?;
        let width = q(1, 3).pow(n as i32);
        ensure(parts.iter().all(|p| p.length() == width), || format!("depth {n}: a length differs from {width}"))?;
    }
    Ok("depths 1..=10".to_owned())
}

fn extreme_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let w = random_word(&mut rng, 30, 5);
        let m = radix_to_sequence(&w, &Rational::one()).map_err(|e| e.to_string())?;
        let expected = ExtremalityReport::Extreme { word: w.clone() };
        let unfolded = m.unfold(rng.gen_range(0..=40));
        for candidate in [&m, &unfolded] {
            let got = sequence_to_radix(candidate, 128).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{w:?}: decoded as {got:?}"))?;
        }
        let mut end = 0usize;
        let mut product = Rational::one();
        for k in w.iter().take(40) {
            end += k as usize - 1;
            product = &product * &Rational::from_integer(k);
            let expected = Rational::one() - product.recip().unwrap();
            ensure(m.partial_sum(end) == expected, || format!("{w:?}: partial sum at {end}"))?;
        }
    }
    Ok("500 words".to_owned())
}

/// Base-`m` digits of `num/den` by long division; `1` is the all-`(m-1)` string.
fn base_digits(num: u64, den: u64, m: u64, count: usize) -> Vec<u32> {
    if num == den {
        return vec![(m - 1) as u32; count];
    }
    let mut rem = num;
    (0..count)
        .map(|_| {
            rem *= m;
            let d = rem / den;
            rem %= den;
            d as u32
        })
        .collect()
}

fn number_system_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let den = rng.gen_range(1..=1000u64);
        let num = rng.gen_range(0..=den);
        let r = q(num as i64, den as i64);
        for m in 2..=9u32 {
            let got = mixed_radix_digits(&RadixWord::constant(m).unwrap(), &r, 24).map_err(|e| e.to_string())?;
            let want = base_digits(num, den, m as u64, 24);
            ensure(got == want, || format!("{r} in base {m}: {got:?} vs {want:?}"))?;
        }
    }
    Ok("100 values x bases 2..=9".to_owned())
}

/// A finite element of `K`: each term at most the previous one and at most
/// half of what is left.
fn finite_k_element(rng: &mut ChaCha8Rng, len: usize) -> SequenceModel {
    let mut terms: Vec<Rational> = Vec::with_capacity(len);
    let mut left = Rational::one();
    for _ in 0..len {
        let mut cap = &left * &q(1, 2);
        if let Some(prev) = terms.last() {
            cap = cap.min(prev.clone());
        }
        let den = rng.gen_range(1..=8i64);
        let a = &cap * &q(rng.gen_range(1..=den), den);
        left = &left - &a;
        terms.push(a);
    }
    SequenceModel::finite(terms).unwrap()
}

fn k_element(rng: &mut ChaCha8Rng) -> SequenceModel {
    loop {
        let m = match rng.gen_range(0..3) {
            0 => {
                let len = rng.gen_range(1..=10);
                finite_k_element(rng, len)
            }
            1 => {
                let den = rng.gen_range(2..=10i64);
                let first = q(rng.gen_range(1..=den), 2 * den);
                SequenceModel::geometric(first, q(rng.gen_range(1..den), den)).unwrap()
            }
            _ => radix_to_sequence(&random_word(rng, 4, 3), &q(rng.gen_range(1..=6), 6)).unwrap(),
        };
        if k_membership(&m).holds() {
            return m;
        }
    }
}

fn pi_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for radix in 2..=6u32 {
        for _ in 0..100 {
            let a = k_element(&mut rng);
            let image = pi_m(&a, radix).map_err(|e| e.to_string())?;
            ensure(face_membership(&image, radix), || format!("pi_{radix}({a:?}) left the face"))?;
            let (back_radix, back) = pi_m_inverse(&image).map_err(|e| e.to_string())?;
            ensure(back_radix == radix && back.equivalent(&a), || format!("pi_{radix} inverse fails on {a:?}"))?;
        }
        for _ in 0..100 {
            let len = rng.gen_range(1..=10);
            let (a, b) = (finite_k_element(&mut rng, len), finite_k_element(&mut rng, len));
            let den = rng.gen_range(2..=20i64);
            let lambda = q(rng.gen_range(1..den), den);
            let mu = Rational::one() - &lambda;
            let mix = |x: &SequenceModel, y: &SequenceModel| -> Vec<Rational> {
                x.terms().zip(y.terms()).map(|(s, t)| &(&lambda * &s) + &(&mu * &t)).collect()
            };
            let combo = SequenceModel::finite(mix(&a, &b)).map_err(|e| e.to_string())?;
            ensure(k_membership(&combo).holds(), || "a convex combination left K".to_owned())?;
            let lhs: Vec<Rational> = pi_m(&combo, radix).map_err(|e| e.to_string())?.terms().collect();
            let rhs = mix(
                &pi_m(&a, radix).map_err(|e| e.to_string())?,
                &pi_m(&b, radix).map_err(|e| e.to_string())?,
            );
            ensure(lhs == rhs, || format!("pi_{radix} is not affine on {a:?}, {b:?}"))?;
        }
    }
    Ok("radices 2..=6".to_owned())
}

fn curated_verdicts() -> Outcome {
    let geo = |f, r| Some(TailModel::geometric(f, r).unwrap());
    let cases = [
        (AlgebraSpec::new(vec![], geo(q(1, 2), q(1, 2))), None),
        (AlgebraSpec::new(vec![], geo(q(2, 3), q(1, 3))), Some((1, q(1, 3), q(2, 3)))),
        (
            AlgebraSpec::new(vec![Factor { dim: 2, weight: q(1, 2) }], geo(q(1, 4), q(1, 2))),
            None,
        ),
        (
            AlgebraSpec::new(vec![Factor { dim: 3, weight: q(1, 1) }], None),
            Some((3, q(0, 1), q(1, 3))),
        ),
    ];
    for (spec, expected) in cases {
        let spec = spec.map_err(|e| e.to_string())?;
        let v = convexity_verdict(&spec).map_err(|e| e.to_string())?;
        let got = (v.convex(), v.certificate().first_violation(), v.certificate().gap().cloned());
        let want = match expected {
            None => (true, None, None),
            Some((n, lo, hi)) => (false, Some(n), Some(OpenInterval::new(lo, hi).unwrap())),
        };
        ensure(got == want, || format!("{spec:?}: {got:?}"))?;
    }
    Ok("4 verdicts".to_owned())
}

const EXAMPLES: &[&[&str]] = &[
    &["check", "geo(1/2,1/2)"],
    &["check", "geo(2/3,1/3)"],
    &["check", "list(3/5,2/5)"],
    &["check", "radix(3;2)"],
    &["expand", "geo(1/2,1/2)", "1/3", "--bits", "4"],
    &["expand", "geo(1/3,2/3)", "1/2", "--bits", "6"],
    &["range", "geo(2/3,1/3)", "--depth", "3"],
    &["range", "geo(2/3,1/3)", "--depth", "2", "--format", "csv"],
    &["range", "geo(2/3,1/3)", "--depth", "3", "--format", "svg"],
    &["range", "list(1/4,1/4,1/4)+geo(1/8,1/2)", "--depth", "6"],
    &["gaps", "list(3/5,2/5)", "--depth", "5"],
    &["gaps", "geo(2/3,1/3)", "--depth", "8"],
    &[
        "vna",
        r#"{"factors":[{"dim":2,"weight":"1/2"}],"abelianTail":{"kind":"geometric","first":"1/4","ratio":"1/2"}}"#,
    ],
    &["vna", r#"{"factors":[{"dim":3,"weight":"1/1"}],"abelianTail":null}"#],
    &["extreme", "encode", "radix(2,3;4)", "--terms", "10"],
    &["extreme", "decode", "list(1/3,1/3)+geo(1/6,1/2)"],
    &["extreme", "decode", "list(5/12,7/24,17/144)"],
    &["digits", "radix(;3)", "1/2", "--count", "6"],
    &["digits", "radix(2;3)", "5/6", "--count", "3"],
    &["check", "geo(1/2,"],
    &["range", "geo(1/2,1/2)", "--depth", "25"],
];

const VALID_SPECS: &[&str] = &[
    "geo(1/2,1/2)",
    "geo(2/3,1/3)",
    "list(3/5,2/5)",
    "list(1/4,1/4,1/4)+geo(1/8,1/2)",
    "radix(2,3;4)",
    "radix(;3)",
    r#"{"prefix":["1/2"],"tail":{"kind":"geometric","first":"1/4","ratio":"1/2"}}"#,
    r#"{"pre":[2,3],"period":[4]}"#,
    r#"{"factors":[{"dim":2,"weight":"1/2"}],"abelianTail":{"kind":"geometric","first":"1/4","ratio":"1/2"}}"#,
];

const FORBIDDEN: &[char] = &['#', '@', '!', '$', '%', '^', '&', '|', '~', '`', '?'];
const NOISE: &[char] = &[
    'g', 'e', 'o', 'l', 'i', 's', 't', 'r', 'a', 'd', 'x', '(', ')', ',', ';', '+', '/', '0', '1', '2', '3', '9', ' ',
    '-', '{', '}', '[', ']', '"', ':',
];

/// A string that no valid spec can equal, by construction.
fn malformed(rng: &mut ChaCha8Rng) -> String {
    let base = *VALID_SPECS.choose(rng).unwrap();
    let chars: Vec<char> = base.chars().collect();
    match rng.gen_range(0..3) {
        0 => {
            let mut out = chars;
            out.insert(rng.gen_range(0..=out.len()), *FORBIDDEN.choose(rng).unwrap());
            out.into_iter().collect()
        }
        1 => {
            // Keep a prefix with more openers than closers.
            let (open, close) = if base.starts_with('{') { ('{', '}') } else { ('(', ')') };
            let cuts: Vec<usize> = (1..chars.len())
                .filter(|&i| {
                    let head = &chars[..i];
                    head.iter().filter(|&&c| c == open).count() > head.iter().filter(|&&c| c == close).count()
                })
                .collect();
            chars[..*cuts.choose(rng).unwrap()].iter().collect()
        }
        _ => {
            let mut out: Vec<char> = (0..rng.gen_range(0..30)).map(|_| *NOISE.choose(rng).unwrap()).collect();
            out.insert(rng.gen_range(0..=out.len()), *FORBIDDEN.choose(rng).unwrap());
            out.into_iter().collect()
        }
    }
}

fn cli_robustness() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_tracerange");
    for args in EXAMPLES {
        let runs: Vec<(Option<i32>, Vec<u8>)> = (0..2)
            .map(|_| {
                let out = Command::new(exe).args(*args).output().expect("binary runs");
                (out.status.code(), out.stdout)
            })
            .collect();
        ensure(runs[0] == runs[1], || format!("{args:?}: repeated runs differ"))?;
        let lib = run_command(std::iter::once("tracerange").chain(args.iter().copied()));
        ensure(runs[0] == (Some(lib.exit_code), lib.body.into_bytes()), || {
            format!("{args:?}: binary and library differ")
        })?;
    }

    for text in VALID_SPECS {
        ensure(parse_spec(text).is_ok(), || format!("seed spec {text} does not parse"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let text = malformed(&mut rng);
        let argv: Vec<&str> = match rng.gen_range(0..6) {
            0 => vec!["check", &text],
            1 => vec!["range", &text, "--depth", "4"],
            2 => vec!["gaps", &text],
            3 => vec!["vna", &text],
            4 => vec!["extreme", "decode", &text],
            _ => vec!["expand", &text, "1/2"],
        };
        let r = panic::catch_unwind(|| run_command(std::iter::once("tracerange").chain(argv.iter().copied())))
            .map_err(|_| format!("crash on {text:?}"))?;
        ensure(r.exit_code == 3, || format!("{argv:?}: exit {} with {}", r.exit_code, r.body))?;
        let doc: Value = serde_json::from_str(&r.body).map_err(|e| format!("{text:?}: {e}"))?;
        ensure(
            doc["error"] == "parse" && doc["message"].is_string() && doc["position"].is_u64(),
            || format!("{text:?}: unstructured diagnostic {}", r.body),
        )?;
    }
    Ok(format!("{} examples twice, 10000 malformed specs", EXAMPLES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("greedy invariant", greedy_invariant),
        ("oracle equivalence", oracle_equivalence),
        ("gap soundness", gap_soundness),
        ("convexity gives the unit interval", convexity_gives_interval),
        ("cantor identity", cantor_identity),
        ("extreme point roundtrip", extreme_roundtrip),
        ("number system agreement", number_system_agreement),
        ("pi map laws", pi_laws),
        ("curated verdicts", curated_verdicts),
        ("cli determinism and robustness", cli_robustness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_owned()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
