//! Constructive witnesses: finite-depth embedding diagrams between two
//! exhaustions, and the exterior-power triangle behind sl(∞) → sl(Π).

mod format;
mod triangle;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::classify::{self, Answer, DecisionOptions, EmbedContext};
use crate::exhaustions::{AlgType, AlgebraProfile, DensityClass, ExhaustionDescriptor, Level, SymmetryClass};
use crate::steinitz::{Exponent, SteinitzNumber};

pub use format::{parse_diagram, parse_triangle};
pub use triangle::{
    build_triangle, constant_triangle, finitary_triangle, triangle_to_diagram, vandermonde_coefficients,
    verify_triangle, ExteriorLadder, LadderLevel, TargetFactors, Triangle, TriangleError, TriangleMode,
    TriangleReport,
};

/// Levels searched for the first source level and for each k_i.
pub const LEVEL_SEARCH_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLevel {
    pub i: usize,
    pub k: usize,
    pub x: BigUint,
    pub y: BigUint,
    pub u: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingDiagram {
    pub source: ExhaustionDescriptor,
    pub target: ExhaustionDescriptor,
    pub levels: Vec<DiagramLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),
    #[error("not embeddable: {0}")]
    NotEmbeddable(String),
}

fn unsupported(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::UnsupportedConstruction(msg.into())
}

/// How (x, y) are derived from q_i = Q_{k_i}/(R·p_i).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// x = y = q
    Balanced,
    /// x = q, y = 0
    Plain,
    /// x = 2q, y = 0
    Doubled,
    /// x + y = q, x − y = t_i with t propagated along the c's
    Twisted,
}

impl Shape {
    fn name(self) -> &'static str {
        match self {
            Shape::Balanced => "x = y = q",
            Shape::Plain => "x = q, y = 0",
            Shape::Doubled => "x = 2q, y = 0",
            Shape::Twisted => "x + y = q, x - y = t",
        }
    }
}

#[derive(Clone, Debug)]
struct Recipe {
    shape: Shape,
    r: BigUint,
    /// Levels before these indices may not be used (cond5 needs r = 0 on
    /// the levels a plain recipe passes through).
    source_from: usize,
    target_from: usize,
}

/// Builds a diagram of `depth` levels witnessing an embedding of the
/// limit of `d1` into the limit of `d2`.
pub fn build_diagram(
    d1: &ExhaustionDescriptor,
    d2: &ExhaustionDescriptor,
    depth: usize,
) -> Result<EmbeddingDiagram, ConstructionError> {
    if d1 == d2 {
        return Ok(identity_diagram(d1, depth));
    }
    let precision = classify::default_precision();
    let p1 = d1.profile(&precision);
    let p2 = d2.profile(&precision);
    let verdict = classify::embeds_decision(&p1, &p2, &DecisionOptions::default());
    if verdict.answer != Answer::Yes {
        let blocking = verdict
            .trace
            .iter()
            .find(|e| matches!(e.status, classify::Status::Fail | classify::Status::Unknown))
            .map(|e| format!("{} {}: {}", e.id, e.status, e.detail))
            .unwrap_or_default();
        return Err(ConstructionError::NotEmbeddable(format!(
            "embedding decision is {} ({blocking})",
            verdict.answer
        )));
    }
    construct(d1, d2, &p1, &p2, depth)
}

fn identity_diagram(d: &ExhaustionDescriptor, depth: usize) -> EmbeddingDiagram {
    EmbeddingDiagram {
        source: d.clone(),
        target: d.clone(),
        levels: (0..depth)
            .map(|i| DiagramLevel {
                i,
                k: i,
                x: BigUint::one(),
                y: BigUint::zero(),
                u: BigUint::zero(),
            })
            .collect(),
    }
}

/// Construction for a pair already decided embeddable.
pub(crate) fn construct(
    d1: &ExhaustionDescriptor,
    d2: &ExhaustionDescriptor,
    p1: &AlgebraProfile,
    p2: &AlgebraProfile,
    depth: usize,
) -> Result<EmbeddingDiagram, ConstructionError> {
    if d1 == d2 {
        return Ok(identity_diagram(d1, depth));
    }
    let ctx = EmbedContext::new(p1, p2);
    let r1 = ctx
        .r1
        .to_integer()
        .map_err(|_| ConstructionError::NotEmbeddable(format!("R1 = {} is infinite", ctx.r1)))?;
    let recipes = choose_recipes(d1, d2, p1, p2, &ctx, &r1)?;
    let mut reasons = Vec::new();
    for recipe in &recipes {
        match run_recipe(d1, d2, &r1, recipe, depth) {
            Ok(levels) => {
                return Ok(EmbeddingDiagram {
                    source: d1.clone(),
                    target: d2.clone(),
                    levels,
                })
            }
            Err(reason) => reasons.push(format!("{}: {reason}", recipe.shape.name())),
        }
    }
    Err(unsupported(reasons.join("; ")))
}

/// Index after the last prefix triple with r > 0.
fn after_last_partial(d: &ExhaustionDescriptor) -> usize {
    d.prefix().iter().rposition(|t| t.r > 0).map_or(0, |at| at + 1)
}

fn choose_recipes(
    d1: &ExhaustionDescriptor,
    d2: &ExhaustionDescriptor,
    p1: &AlgebraProfile,
    p2: &AlgebraProfile,
    ctx: &EmbedContext,
    r1: &BigUint,
) -> Result<Vec<Recipe>, ConstructionError> {
    use AlgType::*;
    let (x1, x2) = (p1.alg_type, p2.alg_type);
    let loose_shape = if x1 == A { Shape::Balanced } else { Shape::Doubled };
    let recipe = |shape, r: BigUint| Recipe {
        shape,
        r,
        source_from: 0,
        target_from: 0,
    };

    if p2.density == DensityClass::Sparse {
        return Ok(vec![recipe(loose_shape, BigUint::one())]);
    }
    if p1.density == DensityClass::Sparse {
        return Err(unsupported(
            "sparse source into a non-sparse target needs the exterior-power triangle",
        ));
    }
    if !ctx.r2.is_finite() || ctx.s.has_infinite_exponent() {
        let mult = 2u64;
        let delta_lo = p1.delta.enclosure().lo().clone();
        let need = BigInt::from(r1.clone() * mult);
        // R' ≥ mult·R1/δ1 makes cond6 hold at every level.
        let bound = (num_rational::BigRational::from_integer(need) / delta_lo).ceil().to_integer();
        let bound = bound.to_biguint().expect("positive");
        let r = slack_factor(&ctx.s, &ctx.r2, &bound)
            .ok_or_else(|| unsupported("no divisor of S2 large enough for R'"))?;
        return Ok(vec![recipe(loose_shape, r)]);
    }

    let r2 = ctx.r2.to_integer().expect("finite");
    let recipes = match (x1, x2) {
        (A, C) | (A, O) => vec![recipe(Shape::Balanced, r2)],
        (O, C) | (C, O) => vec![recipe(Shape::Doubled, r2)],
        (C, A) | (O, A) | (C, C) | (O, O) => vec![recipe(Shape::Plain, r2)],
        (A, A) => {
            let (s1, s2) = (p1.symmetry, p2.symmetry);
            if s1 == SymmetryClass::StronglyNonSymmetric || s2 == SymmetryClass::StronglyNonSymmetric {
                return Err(unsupported("strongly non-symmetric branch is decision-only"));
            }
            if s1 == SymmetryClass::OneSided && s2 == SymmetryClass::OneSided {
                vec![Recipe {
                    shape: Shape::Plain,
                    r: r2,
                    source_from: after_last_partial(d1),
                    target_from: after_last_partial(d2),
                }]
            } else {
                let from_c = |d: &ExhaustionDescriptor| {
                    d.prefix().iter().rposition(|t| t.c() == 0).map_or(0, |at| at + 1)
                };
                vec![
                    recipe(Shape::Balanced, r2.clone()),
                    Recipe {
                        shape: Shape::Twisted,
                        r: r2,
                        source_from: from_c(d1),
                        target_from: 0,
                    },
                ]
            }
        }
    };
    Ok(recipes)
}

/// Smallest R' ≥ `bound` such that R'·(finite divisor of S) still divides
/// S·R2 for every such divisor: a power of a prime infinite in S or R2,
/// or a product of distinct primes of R2 when R2 has infinitely many.
fn slack_factor(s: &SteinitzNumber, r2: &SteinitzNumber, bound: &BigUint) -> Option<BigUint> {
    let mut candidates: Vec<BigUint> = Vec::new();
    let inf_primes = |n: &SteinitzNumber| -> Vec<u64> {
        n.exceptions()
            .iter()
            .filter(|(_, e)| *e == Exponent::Inf)
            .map(|&(p, _)| p)
            .collect()
    };
    for p in inf_primes(s).into_iter().chain(inf_primes(r2)) {
        let mut x = BigUint::one();
        while &x < bound {
            x *= p;
        }
        candidates.push(x);
    }
    if s.default_exponent().is_inf() || r2.default_exponent().is_inf() {
        // every prime outside the exceptions is infinite
        let listed: Vec<u64> = s.exceptions().iter().chain(r2.exceptions()).map(|&(p, _)| p).collect();
        let p = crate::steinitz::Primes::new().find(|p| !listed.contains(p)).expect("infinitely many primes");
        let mut x = BigUint::one();
        while &x < bound {
            x *= p;
        }
        candidates.push(x);
    }
    if r2.default_exponent() != Exponent::ZERO {
        let mut x = BigUint::one();
        for p in crate::steinitz::Primes::new() {
            if &x >= bound {
                break;
            }
            if r2.exponent(p) != Exponent::ZERO {
                x *= p;
            }
        }
        candidates.push(x);
    }
    candidates.into_iter().min()
}

/// Levels of a descriptor, materialised on demand.
struct LevelCache<'a> {
    iter: crate::exhaustions::LevelIter<'a>,
    levels: Vec<Level>,
}

impl<'a> LevelCache<'a> {
    fn new(d: &'a ExhaustionDescriptor) -> Self {
        LevelCache {
            iter: d.levels(),
            levels: Vec::new(),
        }
    }

    fn get(&mut self, i: usize) -> &Level {
        while self.levels.len() <= i {
            let next = self.iter.next().expect("levels are unbounded");
            self.levels.push(next);
        }
        &self.levels[i]
    }
}

fn run_recipe(
    d1: &ExhaustionDescriptor,
    d2: &ExhaustionDescriptor,
    r1: &BigUint,
    recipe: &Recipe,
    depth: usize,
) -> Result<Vec<DiagramLevel>, String> {
    let mut src = LevelCache::new(d1);
    let mut tgt = LevelCache::new(d2);
    let i0 = (recipe.source_from..LEVEL_SEARCH_CAP)
        .find(|&i| src.get(i).s_product.is_multiple_of(r1))
        .ok_or_else(|| format!("R1 = {r1} divides no n0*s_0...s_(i-1) within {LEVEL_SEARCH_CAP} levels"))?;

    let mut levels: Vec<DiagramLevel> = Vec::with_capacity(depth);
    let mut t = BigInt::one();
    for i in i0..i0 + depth {
        let lv = src.get(i).clone();
        let p_i = &lv.s_product / r1;
        let denominator = &recipe.r * &p_i;
        let k_from = match levels.last() {
            Some(prev) => prev.k + 1,
            None => recipe.target_from,
        };
        let mut found = None;
        for k in k_from..k_from.max(recipe.target_from) + LEVEL_SEARCH_CAP {
            let tk = tgt.get(k).clone();
            if !tk.s_product.is_multiple_of(&denominator) {
                continue;
            }
            let q = &tk.s_product / &denominator;
            let (x, y, next_t) = match recipe.shape {
                Shape::Balanced => (q.clone(), q, None),
                Shape::Plain => (q, BigUint::zero(), None),
                Shape::Doubled => (q * 2u32, BigUint::zero(), None),
                Shape::Twisted => {
                    let t_here = match levels.last() {
                        None => BigInt::one(),
                        Some(prev) => {
                            let mut num = t.clone();
                            for kk in prev.k..k {
                                num *= tgt.get(kk).c();
                            }
                            let c = BigInt::from(src.get(i - 1).c());
                            if c.is_zero() || !num.is_multiple_of(&c) {
                                continue;
                            }
                            num / c
                        }
                    };
                    let qi = BigInt::from(q);
                    if t_here > qi || t_here < -qi.clone() || (&qi - &t_here).is_odd() {
                        continue;
                    }
                    let x: BigInt = (&qi + &t_here) / 2;
                    let y: BigInt = (&qi - &t_here) / 2;
                    let (x, y) = (x.to_biguint().expect("q >= |t|"), y.to_biguint().expect("q >= |t|"));
                    (x, y, Some(t_here))
                }
            };
            let used = (&x + &y) * &lv.n;
            if tk.n < used {
                continue;
            }
            found = Some((k, x, y, &tk.n - used, next_t));
            break;
        }
        let (k, x, y, u, next_t) =
            found.ok_or_else(|| format!("no admissible target level for source level {i} within {LEVEL_SEARCH_CAP}"))?;
        if let Some(nt) = next_t {
            t = nt;
        }
        levels.push(DiagramLevel { i, k, x, y, u });
    }
    Ok(levels)
}

// ---------------------------------------------------------------- verification

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramReport {
    pub failures: Vec<String>,
}

impl DiagramReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the level conditions cond4–cond6 plus the type-dependent
/// parity clauses.
pub fn verify_diagram(diag: &EmbeddingDiagram) -> DiagramReport {
    let mut failures = Vec::new();
    let (x1, x2) = (diag.source.alg_type(), diag.target.alg_type());
    let mut src = LevelCache::new(&diag.source);
    let mut tgt = LevelCache::new(&diag.target);

    for (j, lv) in diag.levels.iter().enumerate() {
        let at = format!("level {} (i = {}, k = {})", j, lv.i, lv.k);
        let q = &lv.x + &lv.y;
        if q.is_zero() {
            failures.push(format!("{at}: x + y = 0"));
        }
        let n = src.get(lv.i).n.clone();
        let m = tgt.get(lv.k).n.clone();
        if m != &q * &n + &lv.u {
            failures.push(format!("{at}: cond6 m_k = {m} differs from (x+y)*n_i + u = {}", &q * &n + &lv.u));
        }
        match (x1, x2) {
            (AlgType::A, AlgType::C | AlgType::O) if lv.x != lv.y => {
                failures.push(format!("{at}: type A into type {x2} needs x = y"));
            }
            (AlgType::C | AlgType::O, _) if !lv.y.is_zero() => {
                failures.push(format!("{at}: type {x1} source needs y = 0"));
            }
            _ => {}
        }
        if matches!((x1, x2), (AlgType::O, AlgType::C) | (AlgType::C, AlgType::O)) && lv.x.is_odd() {
            failures.push(format!("{at}: ({x1},{x2}) needs x even"));
        }
        if x2 == AlgType::C && lv.u.is_odd() {
            failures.push(format!("{at}: type C target needs u even"));
        }
    }

    for pair in diag.levels.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let at = format!("levels i = {} -> {}", a.i, b.i);
        if b.i != a.i + 1 {
            failures.push(format!("{at}: source levels are not consecutive"));
            continue;
        }
        if b.k <= a.k {
            failures.push(format!("{at}: k must increase strictly ({} then {})", a.k, b.k));
            continue;
        }
        let (s_i, c_i) = {
            let lv = src.get(a.i);
            (lv.s(), lv.c())
        };
        let mut s_prod = BigUint::one();
        let mut c_prod = BigInt::one();
        for k in a.k..b.k {
            let lv = tgt.get(k);
            s_prod *= lv.s();
            c_prod *= lv.c();
        }
        let lhs = (&b.x + &b.y) * s_i;
        let rhs = (&a.x + &a.y) * &s_prod;
        if lhs != rhs {
            failures.push(format!("{at}: cond4 s_i*(x+y)' = {lhs} differs from (x+y)*s'... = {rhs}"));
        }
        if x1 == AlgType::A && x2 == AlgType::A {
            let diff = |l: &DiagramLevel| BigInt::from(l.x.clone()) - BigInt::from(l.y.clone());
            let lhs = diff(b) * c_i;
            let rhs = diff(a) * &c_prod;
            if lhs != rhs {
                failures.push(format!("{at}: cond5 c_i*(x-y)' = {lhs} differs from (x-y)*c'... = {rhs}"));
            }
        }
    }
    DiagramReport { failures }
}
