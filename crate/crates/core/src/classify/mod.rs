//! Three-valued decisions (isomorphism, embeddability, equivalence,
//! universality) over algebra profiles, each with a condition trace.

mod real;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constructor::{self, EmbeddingDiagram, Triangle};
use crate::exhaustions::{AlgType, AlgebraProfile, DensityClass, Real, SymmetryClass};
use crate::steinitz::{Exponent, RationalRatioQuery, SteinitzNumber};
use real::{Cmp, DeltaRefiner};

pub const DEFAULT_ROUNDS: usize = 64;
pub const DEFAULT_WITNESS_DEPTH: usize = 4;

/// 2^-40.
pub fn default_precision() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 40)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Diagram(EmbeddingDiagram),
    Triangle(Triangle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub trace: Vec<TraceEntry>,
    /// Width of the widest δ enclosure at the moment of decision (0 when
    /// every δ involved was exact).
    pub precision_used: BigRational,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.trace.iter().find(|e| e.id == id).map(|e| e.status)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RESULT: {}", self.answer)?;
        for e in &self.trace {
            writeln!(f, "COND {} {} {}", e.id, e.status, e.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DecisionOptions {
    pub precision: BigRational,
    pub max_rounds: usize,
    /// Depth of the witness built for Yes verdicts on descriptors; None
    /// skips construction.
    pub witness_depth: Option<usize>,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        DecisionOptions {
            precision: default_precision(),
            max_rounds: DEFAULT_ROUNDS,
            witness_depth: Some(DEFAULT_WITNESS_DEPTH),
        }
    }
}

impl DecisionOptions {
    pub fn with_precision(precision: &BigRational) -> Self {
        DecisionOptions {
            precision: precision.clone(),
            ..Self::default()
        }
    }

    fn without_witness(&self) -> Self {
        DecisionOptions {
            witness_depth: None,
            ..self.clone()
        }
    }
}

#[derive(Default)]
struct Trace {
    entries: Vec<TraceEntry>,
}

impl Trace {
    fn push(&mut self, id: &str, status: Status, detail: impl Into<String>) -> Status {
        self.entries.push(TraceEntry {
            id: id.to_string(),
            status,
            detail: detail.into(),
        });
        status
    }

    fn pass(&mut self, id: &str, detail: impl Into<String>) -> Status {
        self.push(id, Status::Pass, detail)
    }

    fn fail(&mut self, id: &str, detail: impl Into<String>) -> Status {
        self.push(id, Status::Fail, detail)
    }

    fn vacuous(&mut self, id: &str, detail: impl Into<String>) -> Status {
        self.push(id, Status::Vacuous, detail)
    }

    fn unknown(&mut self, id: &str, detail: impl Into<String>) -> Status {
        self.push(id, Status::Unknown, detail)
    }

    fn check(&mut self, id: &str, ok: bool, detail: impl Into<String>) -> Status {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(id, status, detail)
    }

    fn compare(&mut self, id: &str, c: Cmp, detail: impl Into<String>) -> Status {
        let status = match c {
            Cmp::Holds => Status::Pass,
            Cmp::Fails => Status::Fail,
            Cmp::Undecided => Status::Unknown,
        };
        let mut detail = detail.into();
        if c == Cmp::Undecided {
            detail.push_str(" (interval refinement cap reached)");
        }
        self.push(id, status, detail)
    }

    fn answer(&self) -> Answer {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            Answer::No
        } else if self.entries.iter().any(|e| e.status == Status::Unknown) {
            Answer::Unknown
        } else {
            Answer::Yes
        }
    }

    fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    fn finish(self, refiners: &[&DeltaRefiner<'_>]) -> Verdict {
        let precision_used = refiners
            .iter()
            .map(|r| r.interval().width())
            .max()
            .unwrap_or_else(BigRational::zero);
        Verdict {
            answer: self.answer(),
            trace: self.entries,
            precision_used,
            witness: None,
        }
    }
}

/// Quantities shared by the embedding and equivalence conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedContext {
    pub s: SteinitzNumber,
    pub s1: SteinitzNumber,
    pub s2: SteinitzNumber,
    pub r1: SteinitzNumber,
    pub r2: SteinitzNumber,
    pub c: Option<SteinitzNumber>,
    pub c1: Option<SteinitzNumber>,
    pub c2: Option<SteinitzNumber>,
    pub b1: Option<SteinitzNumber>,
    pub b2: Option<SteinitzNumber>,
    pub delta1: Real,
    pub delta2: Real,
    pub sigma1: Real,
    pub sigma2: Real,
    /// Set once the ε table has been evaluated to a single value.
    pub epsilon: Option<u8>,
}

impl EmbedContext {
    pub fn new(p1: &AlgebraProfile, p2: &AlgebraProfile) -> Self {
        let s = p1.s.gcd(&p2.s);
        let quot = |a: &SteinitzNumber, b: &SteinitzNumber| a.quotst(b).expect("gcd divides");
        let (c, b1, b2) = match (&p1.c, &p2.c) {
            (Some(c1), Some(c2)) => {
                let c = c1.gcd(c2);
                (Some(c.clone()), Some(quot(c1, &c)), Some(quot(c2, &c)))
            }
            _ => (None, None, None),
        };
        EmbedContext {
            r1: quot(&p1.s, &s),
            r2: quot(&p2.s, &s),
            s,
            s1: p1.s.clone(),
            s2: p2.s.clone(),
            c,
            c1: p1.c.clone(),
            c2: p2.c.clone(),
            b1,
            b2,
            delta1: p1.delta.clone(),
            delta2: p2.delta.clone(),
            sigma1: p1.sigma.clone(),
            sigma2: p2.sigma.clone(),
            epsilon: None,
        }
    }

    fn b_finite(b: &Option<SteinitzNumber>) -> bool {
        b.as_ref().is_some_and(SteinitzNumber::is_finite)
    }
}

fn integer_of(s: &SteinitzNumber) -> BigRational {
    BigRational::from_integer(s.to_integer().expect("finite").into())
}

fn sym_name(p: &AlgebraProfile) -> String {
    format!("{} {}", p.alg_type, p.symmetry)
}

/// Whether `rho` is a product of primes at which one of `numbers` has an
/// infinite exponent.
fn supported_on_infinite_primes(rho: &BigRational, numbers: &[&SteinitzNumber]) -> bool {
    let mut listed: Vec<u64> = numbers
        .iter()
        .flat_map(|n| n.exceptions().iter().map(|&(p, _)| p))
        .collect();
    listed.sort_unstable();
    listed.dedup();
    let others = numbers.iter().any(|n| n.default_exponent().is_inf());
    crate::steinitz::rational_supported_on(
        rho,
        &listed,
        |p| numbers.iter().any(|n| n.is_infinite_at(p)),
        others,
    )
}

/// Primes with infinite exponent when there are finitely many of them.
fn finite_inf_support(s: &SteinitzNumber) -> Option<Vec<u64>> {
    if s.default_exponent().is_inf() {
        return None;
    }
    Some(
        s.exceptions()
            .iter()
            .filter(|(_, e)| *e == Exponent::Inf)
            .map(|&(p, _)| p)
            .collect(),
    )
}

// ---------------------------------------------------------------- isomorphism

pub fn isomorphic(p1: &AlgebraProfile, p2: &AlgebraProfile, precision: &BigRational) -> Verdict {
    isomorphic_with(p1, p2, &DecisionOptions::with_precision(precision))
}

pub fn isomorphic_with(p1: &AlgebraProfile, p2: &AlgebraProfile, opts: &DecisionOptions) -> Verdict {
    let mut t = Trace::default();
    let mut d1 = DeltaRefiner::new(p1);
    let mut d2 = DeltaRefiner::new(p2);

    if p1.finitary || p2.finitary {
        if p1.finitary && p2.finitary {
            t.check(
                "finitary",
                p1.alg_type == p2.alg_type,
                format!("both finitary, types {} and {}", p1.alg_type, p2.alg_type),
            );
        } else {
            t.fail("finitary", "exactly one side is finitary (S finite)");
        }
        return t.finish(&[&d1, &d2]);
    }

    if p1.alg_type != p2.alg_type && !cross_type_conditions(p1, p2, &mut t) {
        return t.finish(&[&d1, &d2]);
    }

    let Some(q0) = a_conditions(p1, p2, &mut t, &mut d1, &mut d2, opts) else {
        return t.finish(&[&d1, &d2]);
    };
    if p1.alg_type == p2.alg_type {
        b_conditions(p1, p2, &q0, &mut t);
    }
    t.finish(&[&d1, &d2])
}

/// Extra requirements for isomorphisms between different types; false
/// once one fails.
fn cross_type_conditions(p1: &AlgebraProfile, p2: &AlgebraProfile, t: &mut Trace) -> bool {
    let two_inf = |p: &AlgebraProfile| p.s.is_infinite_at(2);
    match (p1.alg_type, p2.alg_type) {
        (AlgType::A, _) | (_, AlgType::A) => {
            let (a_side, other) = if p1.alg_type == AlgType::A { (p1, p2) } else { (p2, p1) };
            if t.check(
                "cross-sym",
                a_side.symmetry == SymmetryClass::TwoSidedSymmetric,
                format!("type A side is {}", a_side.symmetry),
            ) == Status::Fail
            {
                return false;
            }
            t.check(
                "cross-2inf",
                two_inf(other),
                format!("2^inf | S of the type {} side ({})", other.alg_type, other.s),
            ) == Status::Pass
        }
        _ => {
            t.check(
                "cross-2inf",
                two_inf(p1) && two_inf(p2),
                format!("2^inf | both S ({} and {})", p1.s, p2.s),
            ) == Status::Pass
        }
    }
}

/// Density conditions; returns the witness q0 of S1 ~ S2 when none failed.
fn a_conditions(
    p1: &AlgebraProfile,
    p2: &AlgebraProfile,
    t: &mut Trace,
    d1: &mut DeltaRefiner<'_>,
    d2: &mut DeltaRefiner<'_>,
    opts: &DecisionOptions,
) -> Option<BigRational> {
    if t.check(
        "A1",
        p1.density == p2.density,
        format!("density {} vs {}", p1.density, p2.density),
    ) == Status::Fail
    {
        return None;
    }
    let Some(q0) = p1.s.q_equivalence(&p2.s) else {
        t.fail("A2", format!("S = {} and S' = {} are not Q-equivalent", p1.s, p2.s));
        return None;
    };
    t.pass("A2", format!("S = q*S' with q = {q0}"));

    if p1.density == DensityClass::Sparse {
        t.vacuous("A3", "sparse");
        return Some(q0);
    }
    if let Some(ratio) = real::exact_delta_ratio(p1, p2) {
        let query = RationalRatioQuery::new(ratio.clone()).expect("positive");
        let ok = SteinitzNumber::ratio_contains(&query, &p1.s, &p2.s);
        t.check("A3", ok, format!("delta/delta' = {ratio} {} S/S'", if ok { "in" } else { "not in" }));
        return (!t.failed()).then_some(q0);
    }
    // Only an enclosure of δ/δ' is available: it can still be separated
    // from the discrete candidate set q0·p^k.
    let support = finite_inf_support(&p1.s);
    let status = match support.as_deref() {
        Some([]) | Some([_]) => {
            let mut outcome = None;
            for _ in 0..=opts.max_rounds {
                let iv = real::ratio_enclosure(d1, d2);
                let hit = match support.as_deref() {
                    Some([p]) => real::geometric_hits(&q0, *p, &iv),
                    _ => iv.contains(&q0),
                };
                if !hit {
                    outcome = Some(iv);
                    break;
                }
                let (a, b) = (d1.refine(), d2.refine());
                if !a && !b {
                    break;
                }
            }
            match outcome {
                Some(iv) => t.fail("A3", format!("delta/delta' in {iv} avoids S/S'")),
                None => t.unknown(
                    "A3",
                    "delta/delta' known only as an interval meeting S/S' (interval refinement cap reached)",
                ),
            }
        }
        _ => t.unknown(
            "A3",
            "delta/delta' known only as an interval and S/S' is dense (interval refinement cap reached)",
        ),
    };
    (status != Status::Fail).then_some(q0)
}

fn b_conditions(p1: &AlgebraProfile, p2: &AlgebraProfile, q0: &BigRational, t: &mut Trace) {
    if t.check(
        "B1",
        p1.symmetry == p2.symmetry,
        format!("symmetry {} vs {}", p1.symmetry, p2.symmetry),
    ) == Status::Fail
    {
        return;
    }
    if !p1.symmetry.is_two_sided_non_symmetric() {
        t.vacuous("B2", format!("{}", p1.symmetry));
        t.vacuous("B3", format!("{}", p1.symmetry));
        return;
    }
    let (c1, c2) = (
        p1.c.as_ref().expect("non-symmetric type A has C"),
        p2.c.as_ref().expect("non-symmetric type A has C"),
    );
    let Some(w0) = c1.q_equivalence(c2) else {
        t.fail("B2", format!("C = {c1} and C' = {c2} are not Q-equivalent"));
        return;
    };
    t.pass("B2", format!("C = w*C' with w = {w0}"));
    if p1.symmetry != SymmetryClass::StronglyNonSymmetric {
        t.vacuous("B3", "weakly non-symmetric");
        return;
    }
    let (Some(sig1), Some(sig2)) = (p1.sigma.exact(), p2.sigma.exact()) else {
        t.unknown("B3", "sigma known only as an interval");
        return;
    };
    let sigma_ratio = sig1 / sig2;
    if p1.density == DensityClass::Sparse {
        // α ranges over q0·⟨primes with p^inf | S⟩ and α·σ/σ' must land in
        // w0·⟨primes with p^inf | C⟩.
        let rho = q0 * &sigma_ratio / &w0;
        let ok = supported_on_infinite_primes(&rho, &[&p1.s, c1]);
        t.check(
            "B3",
            ok,
            format!("q*sigma/(sigma'*w) = {rho} {} supported on infinite primes of S and C", if ok { "is" } else { "is not" }),
        );
        return;
    }
    match real::exact_delta_ratio(p1, p2) {
        Some(alpha) => {
            let value = alpha * sigma_ratio;
            let query = RationalRatioQuery::new(value.clone()).expect("positive");
            let ok = SteinitzNumber::ratio_contains(&query, c1, c2);
            t.check("B3", ok, format!("(delta/delta')*(sigma/sigma') = {value} {} C/C'", if ok { "in" } else { "not in" }));
        }
        None => {
            t.unknown("B3", "delta/delta' known only as an interval");
        }
    }
}

// ---------------------------------------------------------------- embeddings

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Eps {
    One,
    Two,
    /// 3.4 σ comparison undecided: evaluate both.
    Either,
}

fn epsilon_case(p1: &AlgebraProfile, p2: &AlgebraProfile, ctx: &EmbedContext) -> (Eps, String) {
    use AlgType::*;
    use SymmetryClass::*;
    let (x1, x2) = (p1.alg_type, p2.alg_type);
    match (x1, x2) {
        (C, C) | (O, O) | (C, A) | (O, A) => {
            return (Eps::One, format!("case 3.1 ({x1},{x2}) -> eps = 1"));
        }
        (A, A) => {}
        _ => return (Eps::Two, format!("({x1},{x2}) not listed -> eps = 2")),
    }
    let (s1, s2) = (p1.symmetry, p2.symmetry);
    if s1 == OneSided && s2 == OneSided {
        return (Eps::One, "case 3.1 (A,A) both one-sided -> eps = 1".into());
    }
    let b1_finite = EmbedContext::b_finite(&ctx.b1);
    let b2_finite = EmbedContext::b_finite(&ctx.b2);
    let pattern = (s1 == OneSided && s2.is_two_sided_non_symmetric())
        || (s2 == WeaklyNonSymmetric && s1.is_two_sided_non_symmetric());
    if b1_finite && pattern {
        return (Eps::One, format!("case 3.2 B1 finite, {s1} into {s2} -> eps = 1"));
    }
    let both_strong = s1 == StronglyNonSymmetric && s2 == StronglyNonSymmetric;
    let c_inf = ctx.c.as_ref().is_some_and(SteinitzNumber::has_infinite_exponent);
    if b1_finite && both_strong && (!b2_finite || c_inf) {
        let why = if !b2_finite {
            "B2 infinite".to_string()
        } else {
            let c = ctx.c.as_ref().expect("present");
            format!("C = {c} has an infinite exponent (read as: at some prime)")
        };
        return (Eps::One, format!("case 3.3 B1 finite, both strongly non-symmetric, {why} -> eps = 1"));
    }
    if b1_finite && b2_finite && both_strong && !c_inf {
        let lhs = p1
            .sigma
            .enclosure()
            .scale(&(integer_of(&ctx.r1) / integer_of(ctx.b1.as_ref().expect("finite"))));
        let rhs = p2
            .sigma
            .enclosure()
            .scale(&(integer_of(&ctx.r2) / integer_of(ctx.b2.as_ref().expect("finite"))));
        let detail = format!("R1*sigma1/B1 in {lhs}, R2*sigma2/B2 in {rhs}");
        return if lhs.lo() >= rhs.hi() {
            (Eps::One, format!("case 3.4 {detail} -> eps = 1"))
        } else if lhs.hi() < rhs.lo() {
            (Eps::Two, format!("case 3.4 fails: {detail} -> eps = 2"))
        } else {
            (Eps::Either, format!("case 3.4 undecided: {detail} -> eps in {{1,2}}"))
        };
    }
    (Eps::Two, format!("(A,A) {s1} into {s2}, no listed case -> eps = 2"))
}

pub fn embeds(p1: &AlgebraProfile, p2: &AlgebraProfile, precision: &BigRational) -> Verdict {
    embeds_with(p1, p2, &DecisionOptions::with_precision(precision))
}

/// Decision only, never builds a witness.
pub fn embeds_decision(p1: &AlgebraProfile, p2: &AlgebraProfile, opts: &DecisionOptions) -> Verdict {
    embeds_with(p1, p2, &opts.without_witness())
}

pub fn embeds_with(p1: &AlgebraProfile, p2: &AlgebraProfile, opts: &DecisionOptions) -> Verdict {
    let mut verdict = embeds_conditions(p1, p2, opts);
    if verdict.answer == Answer::Yes {
        if let Some(depth) = opts.witness_depth {
            attach_witness(p1, p2, depth, &mut verdict);
        }
    }
    verdict
}

fn embeds_conditions(p1: &AlgebraProfile, p2: &AlgebraProfile, opts: &DecisionOptions) -> Verdict {
    let mut t = Trace::default();
    let mut d1 = DeltaRefiner::new(p1);
    let mut d2 = DeltaRefiner::new(p2);

    if p1.finitary {
        t.pass("finitary", "source is finitary and embeds into every diagonal algebra");
        return t.finish(&[&d1, &d2]);
    }
    if p2.finitary {
        t.fail("finitary", "non-finitary source, finitary target");
        return t.finish(&[&d1, &d2]);
    }
    let ctx = EmbedContext::new(p1, p2);
    if t.check("cond1", ctx.r1.is_finite(), format!("R1 = {} finite", ctx.r1)) == Status::Fail {
        return t.finish(&[&d1, &d2]);
    }
    let sparse1 = p1.density == DensityClass::Sparse;
    let sparse2 = p2.density == DensityClass::Sparse;
    if t.check(
        "cond2",
        !sparse1 || sparse2,
        format!("source {}, target {}", p1.density, p2.density),
    ) == Status::Fail
    {
        return t.finish(&[&d1, &d2]);
    }
    if sparse1 || sparse2 {
        t.vacuous("cond3", "a side is sparse");
        return t.finish(&[&d1, &d2]);
    }
    if !ctx.r2.is_finite() {
        t.vacuous("cond3", format!("R2 = {} infinite", ctx.r2));
        return t.finish(&[&d1, &d2]);
    }
    if ctx.s.has_infinite_exponent() {
        t.vacuous("cond3", format!("S = {} has an infinite exponent", ctx.s));
        return t.finish(&[&d1, &d2]);
    }

    let (eps, case) = epsilon_case(p1, p2, &ctx);
    t.pass("eps", case);
    let strict = p1.density == DensityClass::Pure && p2.density == DensityClass::Dense;
    let r1 = integer_of(&ctx.r1);
    let r2 = integer_of(&ctx.r2);
    let ratio = real::exact_delta_ratio(p1, p2);
    let rel = if strict { "<" } else { "<=" };
    let mut decide = |e: u64| {
        let a = &r1 * BigRational::from_integer(e.into());
        real::compare_scaled(&a, &r2, strict, ratio.as_ref(), &mut d1, &mut d2, opts.max_rounds)
    };
    let (cmp, shown) = match eps {
        Eps::One => (decide(1), "1"),
        Eps::Two => (decide(2), "2"),
        Eps::Either => match (decide(1), decide(2)) {
            (Cmp::Holds, Cmp::Holds) => (Cmp::Holds, "1 or 2"),
            (Cmp::Fails, Cmp::Fails) => (Cmp::Fails, "1 or 2"),
            _ => (Cmp::Undecided, "1 or 2"),
        },
    };
    let detail = match &ratio {
        Some(r) => format!("eps*R1/delta1 {rel} R2/delta2 with eps = {shown}, R1 = {r1}, R2 = {r2}, delta1/delta2 = {r}"),
        None => format!(
            "eps*R1/delta1 {rel} R2/delta2 with eps = {shown}, R1 = {r1}, R2 = {r2}, delta1 in {}, delta2 in {}",
            d1.interval(),
            d2.interval()
        ),
    };
    t.compare("cond3", cmp, detail);
    t.finish(&[&d1, &d2])
}

fn attach_witness(p1: &AlgebraProfile, p2: &AlgebraProfile, depth: usize, verdict: &mut Verdict) {
    let (Some(d1), Some(d2)) = (&p1.descriptor, &p2.descriptor) else {
        verdict.trace.push(TraceEntry {
            id: "witness".into(),
            status: Status::Vacuous,
            detail: "profile input, no descriptor to build from".into(),
        });
        return;
    };
    let entry = |status, detail: String| TraceEntry {
        id: "witness".into(),
        status,
        detail,
    };
    match constructor::construct(d1, d2, p1, p2, depth) {
        Ok(diagram) => {
            let report = constructor::verify_diagram(&diagram);
            let status = if report.ok() { Status::Pass } else { Status::Fail };
            let detail = if report.ok() {
                format!("diagram with {} levels verified", diagram.levels.len())
            } else {
                format!("diagram failed verification: {}", report.failures.join("; "))
            };
            verdict.trace.push(entry(status, detail));
            verdict.witness = Some(Witness::Diagram(diagram));
        }
        Err(constructor::ConstructionError::UnsupportedConstruction(reason)) if p1.finitary => {
            match constructor::finitary_triangle(d2, depth) {
                Some(Ok(triangle)) => {
                    let report = constructor::verify_triangle(&triangle);
                    let status = if report.ok() { Status::Pass } else { Status::Fail };
                    verdict.trace.push(entry(
                        status,
                        format!("triangle to depth {} for sl(inf) into sl(S2)", triangle.depth()),
                    ));
                    verdict.witness = Some(Witness::Triangle(triangle));
                }
                Some(Err(e)) => verdict.trace.push(entry(Status::Fail, format!("triangle: {e}"))),
                None => verdict.trace.push(entry(Status::Vacuous, format!("unsupported: {reason}"))),
            }
        }
        Err(e) => verdict.trace.push(entry(Status::Vacuous, format!("unsupported: {e}"))),
    }
}

// ---------------------------------------------------------------- equivalence

pub fn equivalent(p1: &AlgebraProfile, p2: &AlgebraProfile, precision: &BigRational) -> Verdict {
    equivalent_with(p1, p2, &DecisionOptions::with_precision(precision))
}

pub fn equivalent_with(p1: &AlgebraProfile, p2: &AlgebraProfile, opts: &DecisionOptions) -> Verdict {
    let mut t = Trace::default();
    let mut d1 = DeltaRefiner::new(p1);
    let mut d2 = DeltaRefiner::new(p2);

    if p1.finitary || p2.finitary {
        t.check(
            "finitary",
            p1.finitary && p2.finitary,
            if p1.finitary && p2.finitary {
                "finitary algebras are pairwise equivalent"
            } else {
                "exactly one side is finitary"
            },
        );
        return t.finish(&[&d1, &d2]);
    }
    let Some(q0) = p1.s.q_equivalence(&p2.s) else {
        t.fail("cond1", format!("S1 = {} and S2 = {} are not Q-equivalent", p1.s, p2.s));
        return t.finish(&[&d1, &d2]);
    };
    t.pass("cond1", format!("S1 = q*S2 with q = {q0}"));
    let sparse1 = p1.density == DensityClass::Sparse;
    let sparse2 = p2.density == DensityClass::Sparse;
    if t.check("cond2", sparse1 == sparse2, format!("{} vs {}", p1.density, p2.density)) == Status::Fail {
        return t.finish(&[&d1, &d2]);
    }
    let ctx = EmbedContext::new(p1, p2);
    if sparse1 {
        t.vacuous("cond3", "both sparse");
        return t.finish(&[&d1, &d2]);
    }
    if ctx.s.has_infinite_exponent() {
        t.vacuous("cond3", format!("S = {} has an infinite exponent", ctx.s));
        return t.finish(&[&d1, &d2]);
    }

    let r1 = integer_of(&ctx.r1);
    let r2 = integer_of(&ctx.r2);
    let ratio = real::exact_delta_ratio(p1, p2);
    let cmp = real::equal_scaled(&r1, &r2, ratio.as_ref(), &mut d1, &mut d2, opts.max_rounds);
    let status = t.compare("cond3.1", cmp, format!("R1/delta1 = R2/delta2 with R1 = {r1}, R2 = {r2}"));
    if status == Status::Fail {
        return t.finish(&[&d1, &d2]);
    }
    let checks = [
        ("cond3.2", p1.density == p2.density, format!("density {} vs {}", p1.density, p2.density)),
        ("cond3.3", p1.alg_type == p2.alg_type, format!("type {} vs {}", p1.alg_type, p2.alg_type)),
        ("cond3.4", p1.symmetry == p2.symmetry, format!("symmetry {} vs {}", sym_name(p1), sym_name(p2))),
    ];
    for (id, ok, detail) in checks {
        if t.check(id, ok, detail) == Status::Fail {
            return t.finish(&[&d1, &d2]);
        }
    }
    if !p1.symmetry.is_two_sided_non_symmetric() {
        t.vacuous("cond3.5", format!("{}", p1.symmetry));
        t.vacuous("cond3.6", format!("{}", p1.symmetry));
        return t.finish(&[&d1, &d2]);
    }
    let (c1, c2) = (ctx.c1.as_ref().expect("C1"), ctx.c2.as_ref().expect("C2"));
    if t.check("cond3.5", c1.q_equivalent(c2), format!("C1 = {c1} ~Q C2 = {c2}")) == Status::Fail {
        return t.finish(&[&d1, &d2]);
    }
    let c_inf = ctx.c.as_ref().is_some_and(SteinitzNumber::has_infinite_exponent);
    if p1.symmetry != SymmetryClass::StronglyNonSymmetric || c_inf {
        t.vacuous("cond3.6", if c_inf { "C has an infinite exponent" } else { "weakly non-symmetric" });
        return t.finish(&[&d1, &d2]);
    }
    let b1 = integer_of(ctx.b1.as_ref().expect("B1"));
    let b2 = integer_of(ctx.b2.as_ref().expect("B2"));
    let lhs = p1.sigma.enclosure().scale(&(&r1 / &b1));
    let rhs = p2.sigma.enclosure().scale(&(&r2 / &b2));
    let detail = format!("R1*sigma1/B1 in {lhs} vs R2*sigma2/B2 in {rhs}");
    if lhs.is_point() && rhs.is_point() {
        t.check("cond3.6", lhs == rhs, detail);
    } else if lhs.hi() < rhs.lo() || rhs.hi() < lhs.lo() {
        t.fail("cond3.6", detail);
    } else {
        t.unknown("cond3.6", format!("{detail}: sigma known only as an interval"));
    }
    t.finish(&[&d1, &d2])
}

// ---------------------------------------------------------------- universality

/// Sparse with S = ∏ p^inf over all primes.
pub fn is_universal(p: &AlgebraProfile) -> bool {
    p.density == DensityClass::Sparse && p.s == SteinitzNumber::all_infinite()
}

// ---------------------------------------------------------------- index check

/// Finite-depth index bookkeeping of a diagram: along the first `depth`
/// levels, index(θ_j ∘ source maps) = index(target maps ∘ θ_{i0}), and in
/// particular ∏ s_i divides M·∏ s'_k with M = x_{i0} + y_{i0}.
pub fn index_divisibility_check(
    p1: &AlgebraProfile,
    p2: &AlgebraProfile,
    witness: &EmbeddingDiagram,
    depth: usize,
) -> bool {
    use crate::branching::index_of_signature;
    use crate::exhaustions::SignatureTriple;
    use num_bigint::BigUint;
    use num_integer::Integer;

    if p1.descriptor.as_ref().is_some_and(|d| *d != witness.source)
        || p2.descriptor.as_ref().is_some_and(|d| *d != witness.target)
    {
        return false;
    }
    let levels = &witness.levels[..depth.min(witness.levels.len())];
    let Some(first) = levels.first() else {
        return true;
    };
    let source: Vec<_> = witness.source.levels().take(levels.last().expect("nonempty").i + 1).collect();
    let target: Vec<_> = witness.target.levels().take(levels.last().expect("nonempty").k + 1).collect();
    let index = |l: u64, r: u64| BigUint::from(index_of_signature(&SignatureTriple::new(l, r, 0)));
    let m = &first.x + &first.y;
    let mut source_index = BigUint::one();
    let mut target_index = BigUint::one();
    let mut k = first.k;
    for pair in levels.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if b.i != a.i + 1 || b.k < a.k {
            return false;
        }
        let lv = &source[a.i];
        source_index *= index(lv.l, lv.r);
        while k < b.k {
            target_index *= index(target[k].l, target[k].r);
            k += 1;
        }
        let lhs = &source_index * (&b.x + &b.y);
        let rhs = &m * &target_index;
        if lhs != rhs || !rhs.is_multiple_of(&source_index) {
            return false;
        }
    }
    true
}
