//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dla_core::branching::{
    d_of, decompose_by_characters, dominant_weights, dynkin_index_module, index_of_signature,
    oracle::index_from_weights, restrict_signature, BranchingResult, HighestWeight, WeightMap, WeightMultiset,
};
use dla_core::classify::{
    default_precision, embeds_with, index_divisibility_check, isomorphic_with, Answer, DecisionOptions, Status,
    Verdict,
};
use dla_core::constructor::{
    build_diagram, build_triangle, constant_triangle, verify_diagram, verify_triangle, ConstructionError,
    DiagramLevel, TargetFactors, Triangle,
};
use dla_core::exhaustions::{AlgebraProfile, ExhaustionDescriptor, SignatureTriple};
use dla_core::steinitz::{Exponent, SteinitzNumber};
use dla_core::sweep::{
    corpus_descriptors, corpus_profiles, diagonal_oracle_sweep, diagram_sweep, embedding_matrix, gt_oracle_sweep,
    verdict_sweep, Execution, OracleCase, CORPUS, CORPUS_PAIRS,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn desc(src: &str) -> ExhaustionDescriptor {
    src.parse().expect("descriptor literal")
}

fn prof(src: &str) -> AlgebraProfile {
    desc(src).profile(&default_precision())
}

fn opts() -> DecisionOptions {
    DecisionOptions::default()
}

// ------------------------------------------------------------------ 1

/// Exponents modelled independently: None is ∞.
type Model = Option<u64>;

fn model(e: Exponent) -> Model {
    e.finite()
}

fn model_add(a: Model, b: Model) -> Model {
    Some(a? + b?)
}

fn model_sub(a: Model, b: Model) -> Option<Model> {
    match (a, b) {
        (None, None) => Some(Some(0)),
        (None, Some(_)) => Some(None),
        (Some(_), None) => None,
        (Some(x), Some(y)) => x.checked_sub(y).map(Some),
    }
}

fn model_le(a: Model, b: Model) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

const PROBE_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 1_000_003];

fn exponent_from(m: Model) -> Exponent {
    m.map_or(Exponent::Inf, Exponent::Finite)
}

fn random_steinitz(rng: &mut ChaCha8Rng) -> SteinitzNumber {
    let default = match rng.random_range(0..6) {
        0 => Exponent::Inf,
        1 => Exponent::Finite(1),
        _ => Exponent::ZERO,
    };
    let count = rng.random_range(0..5);
    let entries: Vec<(u64, Exponent)> = (0..count)
        .map(|_| {
            let p = PROBE_PRIMES[rng.random_range(0..11)];
            let e = if rng.random_range(0..5) == 0 {
                Exponent::Inf
            } else {
                Exponent::Finite(rng.random_range(0..5))
            };
            (p, e)
        })
        .collect();
    SteinitzNumber::from_parts(default, entries).expect("probe primes are prime")
}

fn check_laws(values: &[SteinitzNumber], triples: bool) -> Result<usize, String> {
    let mut checks = 0;
    let one = SteinitzNumber::one();
    for a in values {
        ensure(&a.mul(&one) == a, || format!("{a}·1 != {a}"))?;
        for b in values {
            let ab = a.mul(b);
            ensure(ab == b.mul(a), || format!("{a}·{b} not commutative"))?;
            let g = a.gcd(b);
            ensure(g.divides(a) && g.divides(b), || format!("gcd({a},{b}) = {g} is not a common divisor"))?;
            for &p in &PROBE_PRIMES {
                let (x, y) = (model(a.exponent(p)), model(b.exponent(p)));
                ensure(model(ab.exponent(p)) == model_add(x, y), || format!("({a}·{b}) at {p}"))?;
                ensure(model(g.exponent(p)) == if model_le(x, y) { x } else { y }, || {
                    format!("gcd({a},{b}) at {p}")
                })?;
            }
            let divides_model = PROBE_PRIMES
                .iter()
                .all(|&p| model_le(model(b.exponent(p)), model(a.exponent(p))))
                && model_le(model(b.default_exponent()), model(a.default_exponent()));
            ensure(b.divides(a) == divides_model, || format!("{b} | {a} disagrees with the model"))?;
            match a.quotst(b) {
                Ok(q) => {
                    ensure(divides_model, || format!("quotst({a},{b}) defined without divisibility"))?;
                    ensure(q.mul(b) == *a, || format!("quotst({a},{b})·{b} != {a}"))?;
                    for &p in &PROBE_PRIMES {
                        let want = model_sub(model(a.exponent(p)), model(b.exponent(p)));
                        ensure(Some(model(q.exponent(p))) == want, || format!("quotst({a},{b}) at {p}"))?;
                    }
                }
                Err(_) => ensure(!divides_model, || format!("quotst({a},{b}) refused a divisor"))?,
            }
            checks += 1;
            if triples {
                for c in values {
                    ensure(ab.mul(c) == a.mul(&b.mul(c)), || format!("({a}·{b})·{c} not associative"))?;
                    if c.divides(a) && c.divides(b) {
                        ensure(c.divides(&g), || format!("{c} divides {a}, {b} but not their gcd"))?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

fn criterion_1() -> Outcome {
    let a: SteinitzNumber = "2^inf*3^2".parse().unwrap();
    let b: SteinitzNumber = "2^inf*3".parse().unwrap();
    ensure(a.quotst(&b).unwrap() == SteinitzNumber::from_integer(3).unwrap(), || {
        "quotst(2^inf*3^2, 2^inf*3) != 3".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5713);
    let random: Vec<SteinitzNumber> = (0..500).map(|_| random_steinitz(&mut rng)).collect();
    let mut checks = check_laws(&random, false)?;
    // associativity and gcd universality on random triples
    for t in random.chunks(3).filter(|c| c.len() == 3) {
        checks += check_laws(t, true)?;
    }

    let levels = [Some(0), Some(1), Some(2), Some(3), None];
    let mut small = Vec::new();
    for &e2 in &levels {
        for &e3 in &levels {
            for &e5 in &levels {
                small.push(
                    SteinitzNumber::from_parts(
                        Exponent::ZERO,
                        [(2, exponent_from(e2)), (3, exponent_from(e3)), (5, exponent_from(e5))],
                    )
                    .unwrap(),
                );
            }
        }
    }
    checks += check_laws(&small, true)?;
    Ok(format!("{} random + {} exhaustive values, {checks} checks", random.len(), small.len()))
}

// ------------------------------------------------------------------ 2

fn criterion_2() -> Outcome {
    let finitary = prof("type: A\nn0: 2\ntail: periodic (1,0,1)\n");
    let infinite = prof("type: A\nn0: 2\ntail: periodic (2,0,0)\n");
    ensure(finitary.finitary && finitary.s.is_finite(), || "(1,0,1) tail not finitary".into())?;
    ensure(finitary.s == SteinitzNumber::from_integer(2).unwrap(), || format!("S = {}", finitary.s))?;
    ensure(!infinite.finitary && !infinite.s.is_finite(), || "(2,0,0) tail classified finitary".into())?;
    Ok(format!("S = {} finitary, S = {} not", finitary.s, infinite.s))
}

// ------------------------------------------------------------------ 3

fn expect(v: &Verdict, answer: Answer, cond: &str, status: Status, label: &str) -> Result<(), String> {
    ensure(v.answer == answer && v.status_of(cond) == Some(status), || {
        format!("{label}: expected {answer} with {cond} {status}, got\n{v}")
    })
}

fn criterion_3() -> Outcome {
    let two = prof("type: A\nn0: 2\ntail: periodic (2,0,0)\n");
    let four = prof("type: A\nn0: 4\ntail: periodic (4,0,0)\n");
    let three = prof("type: A\nn0: 3\ntail: periodic (3,0,0)\n");
    let three_two = prof("type: A\nn0: 3\ntail: periodic (2,0,0)\n");
    let so = prof("type: O\nn0: 4\ntail: periodic (2,0,0)\n");
    let sp = prof("type: C\nn0: 2\ntail: periodic (2,0,0)\n");
    expect(&isomorphic_with(&two, &four, &opts()), Answer::Yes, "A3", Status::Pass, "sl(2^inf) vs sl(4^inf)")?;
    expect(&isomorphic_with(&two, &three, &opts()), Answer::No, "A2", Status::Fail, "sl(2^inf) vs sl(3^inf)")?;
    expect(&isomorphic_with(&two, &three_two, &opts()), Answer::No, "A3", Status::Fail, "sl(2^inf) vs sl(3*2^inf)")?;
    expect(&isomorphic_with(&so, &sp, &opts()), Answer::Yes, "cross-2inf", Status::Pass, "so(2^inf) vs sp(2^inf)")?;
    Ok("4 verdicts with matching condition ids".into())
}

// ------------------------------------------------------------------ 4

fn criterion_4() -> Outcome {
    let profiles = corpus_profiles(&default_precision());
    let o = DecisionOptions {
        witness_depth: None,
        ..opts()
    };
    let mut count = 0;
    for (i, a) in profiles.iter().enumerate() {
        for (j, b) in profiles.iter().enumerate() {
            if a.finitary {
                expect(&embeds_with(a, b, &o), Answer::Yes, "finitary", Status::Pass, &format!("{} -> {}", CORPUS[i].0, CORPUS[j].0))?;
                count += 1;
            } else if b.finitary {
                ensure(embeds_with(a, b, &o).answer == Answer::No, || {
                    format!("{} -> {} should be No", CORPUS[i].0, CORPUS[j].0)
                })?;
                count += 1;
            }
        }
    }
    let pure = prof("type: A\nn0: 2\ntail: periodic (2,0,0)\n");
    let sparse = prof("type: A\nn0: 2\ntail: proportional (2,0,1)\n");
    expect(&embeds_with(&sparse, &pure, &opts()), Answer::No, "cond2", Status::Fail, "sparse -> pure")?;
    let v = embeds_with(&pure, &sparse, &opts());
    expect(&v, Answer::Yes, "cond2", Status::Pass, "pure -> sparse")?;
    let sl_pi = prof("type: A\nn0: 2\ntail: primes offset 1\n");
    let sp_pi = prof("type: C\nn0: 2\ntail: primes offset 1\n");
    expect(&embeds_with(&sl_pi, &sp_pi, &opts()), Answer::No, "cond3", Status::Fail, "sl(Pi) -> sp(Pi)")?;
    expect(&embeds_with(&sp_pi, &sl_pi, &opts()), Answer::Yes, "cond3", Status::Pass, "sp(Pi) -> sl(Pi)")?;
    Ok(format!("{count} finitary-side verdicts plus 4 worked cases"))
}

// ------------------------------------------------------------------ 5

fn criterion_5() -> Outcome {
    let exec = Execution::default();
    let fine = corpus_profiles(&default_precision());
    let verdicts = verdict_sweep(&fine, &CORPUS_PAIRS, &opts(), exec);
    for v in &verdicts {
        let name = format!("{} / {}", CORPUS[v.source].0, CORPUS[v.target].0);
        if v.iso.answer == Answer::Yes {
            ensure(v.equiv.answer == Answer::Yes, || format!("{name}: isomorphic but not equivalent"))?;
        }
        let both = v.embed.answer == Answer::Yes && v.embed_back.answer == Answer::Yes;
        let either_no = v.embed.answer == Answer::No || v.embed_back.answer == Answer::No;
        ensure((v.equiv.answer == Answer::Yes) == both, || format!("{name}: equivalence vs mutual embedding"))?;
        ensure((v.equiv.answer == Answer::No) == either_no, || format!("{name}: non-equivalence vs embedding"))?;
    }

    let no_witness = DecisionOptions {
        witness_depth: None,
        ..opts()
    };
    let matrix = embedding_matrix(&fine, &no_witness, exec);
    let n = fine.len();
    let mut chains = 0;
    for i in 0..n {
        for j in 0..n {
            if matrix[i][j].answer != Answer::Yes {
                continue;
            }
            for k in 0..n {
                if matrix[j][k].answer == Answer::Yes {
                    chains += 1;
                    ensure(matrix[i][k].answer != Answer::No, || {
                        format!("{} -> {} -> {} but not {} -> {}", CORPUS[i].0, CORPUS[j].0, CORPUS[k].0, CORPUS[i].0, CORPUS[k].0)
                    })?;
                }
            }
        }
    }

    let mut flips = 0;
    for exponent in [8u32, 20, 64] {
        let precision = BigRational::new(BigUint::one().into(), (BigUint::one() << exponent).into());
        let o = DecisionOptions::with_precision(&precision);
        let o = DecisionOptions {
            witness_depth: None,
            ..o
        };
        let coarse = corpus_profiles(&precision);
        let refined = verdict_sweep(&coarse, &CORPUS_PAIRS, &o, exec);
        for (a, b) in refined.iter().zip(&verdicts) {
            for (x, y) in [(&a.iso, &b.iso), (&a.embed, &b.embed), (&a.embed_back, &b.embed_back), (&a.equiv, &b.equiv)] {
                let flip = matches!((x.answer, y.answer), (Answer::Yes, Answer::No) | (Answer::No, Answer::Yes));
                if flip {
                    flips += 1;
                }
            }
        }
    }
    ensure(flips == 0, || format!("{flips} verdicts flipped between precisions"))?;
    Ok(format!("{} pairs, {chains} embedding chains, precisions 2^-8..2^-64", verdicts.len()))
}

// ------------------------------------------------------------------ 6

fn criterion_6() -> Outcome {
    let sl2 = desc("type: A\nn0: 2\ntail: periodic (2,0,0)\n");
    let sparse = desc("type: A\nn0: 2\ntail: proportional (2,0,1)\n");
    let reference = build_diagram(&sl2, &sparse, 2).map_err(|e| e.to_string())?;
    let big = |n: u64| BigUint::from(n);
    let want = vec![
        DiagramLevel { i: 0, k: 2, x: big(4), y: big(4), u: big(2) },
        DiagramLevel { i: 1, k: 3, x: big(4), y: big(4), u: big(22) },
    ];
    ensure(reference.levels == want, || format!("reference diagram differs:\n{reference}"))?;
    ensure(verify_diagram(&reference).ok(), || "reference diagram fails verification".into())?;

    let descriptors = corpus_descriptors();
    let profiles = corpus_profiles(&default_precision());
    let o = DecisionOptions {
        witness_depth: None,
        ..opts()
    };
    let outcomes = diagram_sweep(&descriptors, &[1, 2, 3, 4, 5, 6], Execution::default());
    let (mut built, mut unsupported) = (0, BTreeSet::new());
    for out in &outcomes {
        let name = format!("{} -> {} depth {}", CORPUS[out.source].0, CORPUS[out.target].0, out.depth);
        let yes = embeds_with(&profiles[out.source], &profiles[out.target], &o).answer == Answer::Yes;
        match &out.result {
            Ok(d) => {
                ensure(yes, || format!("{name}: diagram built without a Yes verdict"))?;
                ensure(out.failures.is_empty(), || format!("{name}: {:?}", out.failures))?;
                ensure(d.levels.len() == out.depth, || format!("{name}: wrong depth"))?;
                built += 1;
            }
            Err(ConstructionError::NotEmbeddable(_)) => {
                ensure(!yes, || format!("{name}: Yes verdict but NotEmbeddable"))?;
            }
            Err(ConstructionError::UnsupportedConstruction(_)) => {
                unsupported.insert((out.source, out.target));
            }
        }
    }
    Ok(format!(
        "{built} diagrams verified at depths 1-6, {} pairs outside supported branches",
        unsupported.len()
    ))
}

// ------------------------------------------------------------------ 7

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Independent recheck of the triangle identities.
fn recheck_triangle(t: &Triangle, label: &str) -> Result<(), String> {
    ensure(t.rows[0] == [BigUint::one()], || format!("{label}: a_0^0 != 1"))?;
    let mut dim = BigUint::one();
    for k in 1..t.rows.len() {
        let n = &t.group_sizes[k - 1];
        dim *= n;
        for i in 0..k {
            ensure(&t.rows[k][i] + &t.rows[k][i + 1] == n * &t.rows[k - 1][i], || {
                format!("{label}: cond1 at i={i}, k={k}")
            })?;
        }
        let total: BigUint = (0..=k).map(|i| &t.rows[k][i] * binomial(k, i)).sum();
        ensure(total == dim, || format!("{label}: dimension identity at k={k}"))?;
    }
    let sum: BigRational = t.b.iter().sum();
    ensure(sum <= BigRational::one(), || format!("{label}: sum of b = {sum}"))?;
    let mut diffs = t.b.clone();
    for l in 1..=4.min(t.b.len().saturating_sub(1)) {
        diffs = diffs.windows(2).map(|w| &w[0] - &w[1]).collect();
        ensure(!diffs.iter().any(Signed::is_negative), || format!("{label}: negative b^({l})"))?;
    }
    let report = verify_triangle(t);
    ensure(report.ok(), || format!("{label}: {:?}", report.failures))
}

fn criterion_7() -> Outcome {
    let twos = constant_triangle(2, 10).map_err(|e| e.to_string())?;
    ensure(twos.rows.iter().flatten().all(|a| a.is_one()), || "n = 2 rows are not all 1".into())?;
    recheck_triangle(&twos, "n = 2")?;

    let threes = constant_triangle(3, 2).map_err(|e| e.to_string())?;
    let want: Vec<Vec<BigUint>> = vec![vec![1u32.into()], vec![1u32.into(), 2u32.into()], vec![2u32.into(), 1u32.into(), 5u32.into()]];
    ensure(threes.rows == want, || format!("n = 3 rows {:?}", threes.rows))?;
    recheck_triangle(&threes, "n = 3")?;

    let mut general = 0;
    for literal in ["2^inf", "3^inf", "2^inf*3^inf", "default 1"] {
        let s: SteinitzNumber = literal.parse().unwrap();
        let factors = TargetFactors::from_steinitz(&s).map_err(|e| e.to_string())?;
        let t = build_triangle(4, factors, 4).map_err(|e| format!("{literal}: {e}"))?;
        ensure(t.eps.iter().all(|e| !e.is_negative()), || format!("{literal}: negative eps"))?;
        ensure(t.b.iter().all(|b| b > &BigRational::zero()), || format!("{literal}: b not positive"))?;
        recheck_triangle(&t, literal)?;
        general += 1;
    }
    Ok(format!("constant n = 2 (K = 10), n = 3, {general} general q = 4 targets at K = 4"))
}

// ------------------------------------------------------------------ 8

fn oracle_report(cases: &[OracleCase], label: &str) -> Result<(), String> {
    for c in cases {
        ensure(c.agrees(), || format!("{label}: {} fast path differs from the oracle", c.label))?;
        ensure(c.conserves_dimension(), || format!("{label}: {} loses dimension", c.label))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let exec = Execution::default();
    // gl(n+1) → gl(n) for n ≤ 4
    let gt = gt_oracle_sweep(5, 6, exec);
    oracle_report(&gt, "gt")?;
    let diag = diagonal_oracle_sweep(3, 3, 5, exec);
    oracle_report(&diag, "diagonal")?;
    for c in &diag {
        let n = c.fast.target_rank;
        let k = c.input.rank() / n;
        let hat: Vec<i64> = c.input.entries().chunks(k).map(|block| block.iter().sum()).collect();
        let hat = HighestWeight::new(hat).expect("block sums stay dominant");
        ensure(c.fast.multiplicity(&hat) > 0, || format!("{}: block-sum weight {hat} missing", c.label))?;
    }
    Ok(format!("{} GT cases, {} diagonal cases", gt.len(), diag.len()))
}

// ------------------------------------------------------------------ 9

/// Σ mult·index over the decomposition of the natural module along `map`.
fn map_index(map: &WeightMap) -> Result<(BigRational, BigRational), String> {
    let natural = WeightMultiset::natural(map.source_rank());
    let decomposition = decompose_by_characters(&natural, map.target_rank(), map).map_err(|e| e.to_string())?;
    let from_parts = index_sum(&decomposition);
    let pushed = map.apply(&natural).map_err(|e| e.to_string())?;
    Ok((from_parts, index_from_weights(&pushed)))
}

fn index_sum(b: &BranchingResult) -> BigRational {
    b.multiplicities
        .iter()
        .map(|(w, &m)| dynkin_index_module(w) * BigRational::from_integer(m.into()))
        .sum()
}

fn criterion_9() -> Outcome {
    let mut signatures = 0;
    for k in 1..=3usize {
        for l in 0..=k {
            let r = k - l;
            for n in 2..=3usize {
                for z in 0..=2usize {
                    let expected = index_of_signature(&SignatureTriple::new(l as u64, r as u64, z as u64));
                    let want = BigRational::from_integer(((l + r) as u64).into());
                    ensure(BigRational::from_integer(expected.into()) == want, || "index_of_signature != l + r".into())?;
                    let (parts, weights) = map_index(&WeightMap::diagonal(l, r, z, n))?;
                    ensure(parts == want && weights == want, || {
                        format!("({l},{r},{z}) into n = {n}: sums {parts}, {weights}")
                    })?;
                    if r == 0 {
                        let natural = HighestWeight::from_partition(&[1], l * n + z).unwrap();
                        let lr = restrict_signature(&natural, l, z, n).map_err(|e| e.to_string())?;
                        ensure(index_sum(&lr) == want, || format!("({l},0,{z}) LR route"))?;
                    }
                    signatures += 1;
                }
            }
        }
    }

    let hw = |e: &[i64]| HighestWeight::new(e.to_vec()).unwrap();
    let gl3_in_gl4 = WeightMap::diagonal(1, 0, 1, 3);
    let gl2_in_gl3 = WeightMap::diagonal(1, 0, 1, 2);
    let gl2_in_gl4 = WeightMap::diagonal(2, 0, 0, 2);
    let gl2_in_gl4_mixed = WeightMap::diagonal(1, 1, 0, 2);
    let sym2 = WeightMap::from_module(&hw(&[2, 0]));
    let sym3 = WeightMap::from_module(&hw(&[3, 0]));
    let chains: Vec<(&str, Vec<&WeightMap>)> = vec![
        ("gl2<gl3<gl4", vec![&gl3_in_gl4, &gl2_in_gl3]),
        ("S2 then (1,0,1)", vec![&gl3_in_gl4, &sym2]),
        ("(2,0,0)", vec![&gl2_in_gl4]),
        ("(1,1,0)", vec![&gl2_in_gl4_mixed]),
        ("S3", vec![&sym3]),
    ];
    for (name, maps) in &chains {
        let mut product = BigRational::one();
        let mut composite = maps[0].clone();
        for m in maps {
            product *= map_index(m)?.0;
        }
        for m in &maps[1..] {
            composite = composite.then(m).map_err(|e| e.to_string())?;
        }
        let (parts, weights) = map_index(&composite)?;
        ensure(parts == product && weights == product, || {
            format!("{name}: composite index {parts} / {weights} vs product {product}")
        })?;
    }

    let descriptors = corpus_descriptors();
    let profiles = corpus_profiles(&default_precision());
    let mut diagrams = 0;
    for (i, d1) in &descriptors {
        for (j, d2) in &descriptors {
            if let Ok(d) = build_diagram(d1, d2, 6) {
                ensure(index_divisibility_check(&profiles[*i], &profiles[*j], &d, 6), || {
                    format!("index check fails on {} -> {}", CORPUS[*i].0, CORPUS[*j].0)
                })?;
                diagrams += 1;
            }
        }
    }
    Ok(format!("{signatures} signatures, {} chains, {diagrams} diagrams", chains.len()))
}

// ------------------------------------------------------------------ 10

/// Restricts every component along (l, 0, z) into gl(n).
fn restrict_all(b: &BranchingResult, l: usize, z: usize, n: usize) -> Result<BranchingResult, String> {
    let mut out = BranchingResult::new(b.ambient_rank, n);
    for (w, &m) in &b.multiplicities {
        for (mu, k) in restrict_signature(w, l, z, n).map_err(|e| e.to_string())?.multiplicities {
            out.add(mu, m * k);
        }
    }
    Ok(out)
}

fn criterion_10() -> Outcome {
    // chains from the top algebra downward: (l, z, n) steps
    type Step = (usize, usize, usize);
    let chains: Vec<(usize, Vec<Step>)> = vec![
        (4, vec![(1, 1, 3), (1, 1, 2)]),
        (4, vec![(2, 0, 2)]),
        (4, vec![(1, 2, 2)]),
        (3, vec![(1, 1, 2)]),
    ];
    let mut steps = 0;
    for (top, chain) in &chains {
        for w in dominant_weights(*top, 6) {
            let mut current = BranchingResult::new(*top, *top);
            current.add(w.clone(), 1);
            // d along the chain read from the smallest algebra upward
            let mut ds = vec![d_of(&current)];
            for &(l, z, n) in chain {
                current = restrict_all(&current, l, z, n)?;
                ds.push(d_of(&current));
            }
            ds.reverse();
            ensure(ds.windows(2).all(|p| p[0] >= p[1]), || {
                format!("{w} along {chain:?}: d sequence {ds:?} increases")
            })?;
            steps += chain.len();
        }
    }
    Ok(format!("{steps} restriction steps"))
}

// ------------------------------------------------------------------ main

fn main() {
    type Criterion = (usize, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(5))),
        (2, criterion_2, None),
        (3, criterion_3, None),
        (4, criterion_4, None),
        (5, criterion_5, Some(Duration::from_secs(60))),
        (6, criterion_6, None),
        (7, criterion_7, Some(Duration::from_secs(10))),
        (8, criterion_8, Some(Duration::from_secs(120))),
        (9, criterion_9, None),
        (10, criterion_10, None),
    ];
    let mut failed = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("CRITERION {id} PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("CRITERION {id} FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
