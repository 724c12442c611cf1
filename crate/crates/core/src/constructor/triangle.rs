//! The triangle a_i^k of multiplicities of exterior powers giving
//! sl(∞) → sl(n_1 n_2 ⋯), built from a sequence b_k of grid rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::branching::{gt_branch, HighestWeight};
use crate::exhaustions::{AlgType, ExhaustionDescriptor, TailGenerator};
use crate::steinitz::{Exponent, Primes, SteinitzNumber};

/// Factors drawn from a target before giving up on reaching a threshold.
const FACTOR_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangleError {
    #[error("epsilon bound violated: {0}")]
    EpsilonBoundViolated(String),
    #[error("target too small: {0}")]
    TargetTooSmall(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),
    #[error("triangle invariant violated: {0}")]
    InvariantViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleMode {
    /// q ≥ 4, factors grouped by the growth threshold.
    General,
    /// n_k = q for every k and b_k = q^{-k}.
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub q: u64,
    pub mode: TriangleMode,
    /// n_1..n_K
    pub group_sizes: Vec<BigUint>,
    /// Cumulative factor counts l_1..l_K (general mode only).
    pub group_bounds: Vec<usize>,
    /// rows[k] = (a_0^k, …, a_k^k)
    pub rows: Vec<Vec<BigUint>>,
    /// b_1..b_K
    pub b: Vec<BigRational>,
    /// ε_1..ε_K (general mode only)
    pub eps: Vec<BigRational>,
}

impl Triangle {
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    /// n_1⋯n_k
    pub fn dim(&self, k: usize) -> BigUint {
        self.group_sizes[..k].iter().product()
    }
}

/// Infinite source of target factors m_1, m_2, …
pub struct TargetFactors {
    inner: Box<dyn Iterator<Item = u64>>,
    label: String,
}

impl TargetFactors {
    /// Staged round robin over the prime powers of an infinite Steinitz
    /// number: stage t emits each of the first t primes once while its
    /// exponent allows.
    pub fn from_steinitz(s: &SteinitzNumber) -> Result<Self, TriangleError> {
        if s.is_finite() {
            return Err(TriangleError::TargetTooSmall(format!("{s} is finite")));
        }
        let s = s.clone();
        let label = s.to_string();
        let primes: Vec<u64> = Vec::new();
        let state = (Primes::new(), primes, Vec::<u64>::new(), 1usize, 0usize);
        let iter = std::iter::from_fn({
            let mut state = state;
            move || loop {
                let (source, primes, emitted, stage, next) = &mut state;
                while primes.len() < *stage {
                    primes.push(source.next().expect("infinite"));
                    emitted.push(0);
                }
                if *next >= *stage {
                    *stage += 1;
                    *next = 0;
                    continue;
                }
                let j = *next;
                *next += 1;
                let allowed = match s.exponent(primes[j]) {
                    Exponent::Inf => true,
                    Exponent::Finite(e) => emitted[j] < e,
                };
                if allowed {
                    emitted[j] += 1;
                    return Some(primes[j]);
                }
            }
        });
        Ok(TargetFactors {
            inner: Box::new(iter),
            label,
        })
    }

    /// n0, s_0, s_1, … of a type A exhaustion without trivial summands and
    /// without dual summands, i.e. of sl(n0·s_0·s_1⋯) itself.
    pub fn from_descriptor(d: &ExhaustionDescriptor) -> Result<Self, TriangleError> {
        if d.alg_type() != AlgType::A {
            return Err(TriangleError::UnsupportedTarget(format!("type {} target", d.alg_type())));
        }
        let plain = |t: &crate::exhaustions::SignatureTriple| t.r == 0 && t.z == 0;
        let tail_plain = match d.tail() {
            TailGenerator::Periodic(period) => period.iter().all(plain),
            TailGenerator::PrimeSeq { .. } => true,
            TailGenerator::Proportional { r, beta, .. } => *r == 0 && *beta == 0,
        };
        if !d.prefix().iter().all(plain) || !tail_plain {
            return Err(TriangleError::UnsupportedTarget(
                "target levels carry dual or trivial summands".into(),
            ));
        }
        if d.stz_s().is_finite() {
            return Err(TriangleError::TargetTooSmall(format!("Stz = {} is finite", d.stz_s())));
        }
        let label = format!("n0 = {}, tail {}", d.n0(), d.tail());
        let prefix: Vec<u64> = d.prefix().iter().map(|t| t.s()).collect();
        let tail: Box<dyn Iterator<Item = u64>> = match d.tail().clone() {
            TailGenerator::Periodic(period) => {
                Box::new(period.into_iter().map(|t| t.s()).collect::<Vec<_>>().into_iter().cycle())
            }
            TailGenerator::PrimeSeq { offset } => Box::new(Primes::new().skip((offset - 1) as usize)),
            TailGenerator::Proportional { l, r, .. } => Box::new(std::iter::repeat(l + r)),
        };
        let iter = std::iter::once(d.n0()).chain(prefix).chain(tail);
        Ok(TargetFactors {
            inner: Box::new(iter),
            label,
        })
    }

    pub fn constant(n: u64) -> Self {
        TargetFactors {
            inner: Box::new(std::iter::repeat(n)),
            label: format!("{n}^inf"),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// q_i = q^{-i}
fn q_pow_inv(q: u64, i: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(i))
}

/// c_{1j}, …, c_{jj}: solution of the Vandermonde system with rows
/// q_i^1 … q_i^j and right-hand side (0, …, 0, ε_j).
pub fn vandermonde_coefficients(q: u64, j: usize, eps_j: &BigRational) -> Vec<BigRational> {
    (1..=j)
        .map(|i| {
            let qi = q_pow_inv(q, i);
            let mut denom = qi.clone();
            for t in 1..=j {
                if t != i {
                    denom *= &qi - q_pow_inv(q, t);
                }
            }
            eps_j / denom
        })
        .collect()
}

/// f_k from ε_1..ε_{k−1}.
fn f_value(q: u64, k: usize, coeffs: &[Vec<BigRational>]) -> BigRational {
    let qk = BigInt::from(q).pow(k);
    let mut f = BigRational::new(BigInt::one(), qk - 1);
    for cj in coeffs.iter().take(k - 1) {
        for (idx, c) in cj.iter().enumerate() {
            f += c * Pow::pow(q_pow_inv(q, idx + 1), k);
        }
    }
    f
}

/// (q−2)/((q−1)·q^{k²+1})
fn eps_bound(q: u64, k: usize) -> BigRational {
    BigRational::new(
        BigInt::from(q - 2),
        BigInt::from(q - 1) * BigInt::from(q).pow(k * k + 1),
    )
}

/// The general construction for q ≥ 4.
pub fn build_triangle(q: u64, mut factors: TargetFactors, depth: usize) -> Result<Triangle, TriangleError> {
    if q < 4 {
        return Err(TriangleError::InvalidParameter(format!("q = {q} must be at least 4")));
    }
    let mut group_sizes = Vec::with_capacity(depth);
    let mut group_bounds = Vec::with_capacity(depth);
    let mut product = BigUint::one();
    let mut group = BigUint::one();
    let mut used = 0usize;
    for k in 1..=depth {
        // m_1⋯m_{l_k}·(q−2) > (q−1)·q^{k²+1}, with l_k > l_{k−1}
        let threshold = BigUint::from(q - 1) * BigUint::from(q).pow((k * k + 1) as u32);
        let mut took = false;
        while !took || &product * (q - 2) <= threshold {
            let m = factors.inner.next().expect("factor streams are infinite");
            used += 1;
            if used > FACTOR_CAP {
                return Err(TriangleError::TargetTooSmall(format!(
                    "{} factors of {} do not reach the level {k} threshold",
                    FACTOR_CAP,
                    factors.label()
                )));
            }
            product *= m;
            group *= m;
            took = true;
        }
        group_sizes.push(std::mem::replace(&mut group, BigUint::one()));
        group_bounds.push(used);
    }

    let mut b = Vec::with_capacity(depth);
    let mut eps = Vec::with_capacity(depth);
    let mut coeffs: Vec<Vec<BigRational>> = Vec::with_capacity(depth);
    let mut dim = BigUint::one();
    for k in 1..=depth {
        dim *= &group_sizes[k - 1];
        let f = f_value(q, k, &coeffs);
        let scaled = &f * rat(dim.clone());
        let bk = BigRational::new(scaled.ceil().to_integer(), BigInt::from(dim.clone()));
        let ek = &bk - &f;
        let bound = eps_bound(q, k);
        if ek.is_negative() || ek >= bound {
            return Err(TriangleError::EpsilonBoundViolated(format!(
                "eps_{k} = {ek} outside [0, {bound})"
            )));
        }
        coeffs.push(vandermonde_coefficients(q, k, &ek));
        b.push(bk);
        eps.push(ek);
    }
    let rows = fill_rows(&group_sizes, &b)?;
    let t = Triangle {
        q,
        mode: TriangleMode::General,
        group_sizes,
        group_bounds,
        rows,
        b,
        eps,
    };
    let report = verify_triangle(&t);
    if !report.ok() {
        return Err(TriangleError::InvariantViolated(report.failures.join("; ")));
    }
    Ok(t)
}

/// n_k = n for all k with b_k = n^{-k}.
pub fn constant_triangle(n: u64, depth: usize) -> Result<Triangle, TriangleError> {
    if n < 2 {
        return Err(TriangleError::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    let group_sizes = vec![BigUint::from(n); depth];
    let b: Vec<BigRational> = (1..=depth).map(|k| q_pow_inv(n, k)).collect();
    let rows = fill_rows(&group_sizes, &b)?;
    let t = Triangle {
        q: n,
        mode: TriangleMode::Constant,
        group_sizes,
        group_bounds: Vec::new(),
        rows,
        b,
        eps: Vec::new(),
    };
    let report = verify_triangle(&t);
    if !report.ok() {
        return Err(TriangleError::InvariantViolated(report.failures.join("; ")));
    }
    Ok(t)
}

/// a_{k−1}^k = n_1⋯n_k·b_k, then cond1 fixes a_k^k and, going down, the
/// remaining entries of row k.
fn fill_rows(group_sizes: &[BigUint], b: &[BigRational]) -> Result<Vec<Vec<BigUint>>, TriangleError> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut dim = BigInt::one();
    for (k0, (n, bk)) in group_sizes.iter().zip(b).enumerate() {
        let k = k0 + 1;
        let n = BigInt::from(n.clone());
        dim *= &n;
        let top = bk * rat(dim.clone());
        if !top.is_integer() {
            return Err(TriangleError::InvariantViolated(format!("b_{k} is off the 1/(n_1...n_{k}) grid")));
        }
        let prev = &rows[k - 1];
        let mut row = vec![BigInt::zero(); k + 1];
        row[k - 1] = top.to_integer();
        row[k] = &n * &prev[k - 1] - &row[k - 1];
        for i in (0..k - 1).rev() {
            row[i] = &n * &prev[i] - &row[i + 1];
        }
        rows.push(row);
    }
    rows.into_iter()
        .enumerate()
        .map(|(k, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, a)| {
                    a.to_biguint()
                        .ok_or_else(|| TriangleError::InvariantViolated(format!("a_{i}^{k} is negative")))
                })
                .collect()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleReport {
    pub failures: Vec<String>,
}

impl TriangleReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes ε_1.. from b and q (general mode).
pub(crate) fn recompute_eps(q: u64, b: &[BigRational]) -> Vec<BigRational> {
    let mut eps = Vec::with_capacity(b.len());
    let mut coeffs = Vec::with_capacity(b.len());
    for (k0, bk) in b.iter().enumerate() {
        let f = f_value(q, k0 + 1, &coeffs);
        let ek = bk - f;
        coeffs.push(vandermonde_coefficients(q, k0 + 1, &ek));
        eps.push(ek);
    }
    eps
}

pub fn verify_triangle(t: &Triangle) -> TriangleReport {
    let mut failures = Vec::new();
    let depth = t.rows.len().saturating_sub(1);
    if t.rows.is_empty() || t.rows[0] != [BigUint::one()] {
        failures.push("a_0^0 must be 1".into());
    }
    if t.group_sizes.len() != depth || t.b.len() != depth {
        failures.push(format!(
            "depth {depth} but {} group sizes and {} b values",
            t.group_sizes.len(),
            t.b.len()
        ));
        return TriangleReport { failures };
    }
    let mut dim = BigUint::one();
    for k in 1..=depth {
        let row = &t.rows[k];
        let prev = &t.rows[k - 1];
        if row.len() != k + 1 {
            failures.push(format!("row {k} has {} entries", row.len()));
            continue;
        }
        let n = &t.group_sizes[k - 1];
        dim *= n;
        for i in 0..k {
            if &row[i] + &row[i + 1] != n * &prev[i] {
                failures.push(format!("cond1 fails at a_{i}^{k} + a_{}^{k} != n_{k}*a_{i}^{}", i + 1, k - 1));
            }
        }
        let total: BigUint = row.iter().enumerate().map(|(i, a)| a * binomial(k, i)).sum();
        if total != dim {
            failures.push(format!("row {k}: sum a_i^k*binom(k,i) = {total} differs from {dim}"));
        }
        let bk = &t.b[k - 1];
        if bk.is_negative() || bk * rat(dim.clone()) != rat(row[k - 1].clone()) {
            failures.push(format!("b_{k} = {bk} is not a_(k-1)^k/(n_1...n_k)"));
        }
    }
    let sum: BigRational = t.b.iter().sum();
    if sum > BigRational::one() {
        failures.push(format!("sum of b_k = {sum} exceeds 1"));
    }
    // iterated differences b^{(l)}_k = b^{(l−1)}_k − b^{(l−1)}_{k+1}
    let mut diffs = t.b.clone();
    for l in 1..depth {
        diffs = diffs.windows(2).map(|w| &w[0] - &w[1]).collect();
        if let Some(pos) = diffs.iter().position(Signed::is_negative) {
            failures.push(format!("b^({l})_{} is negative", pos + 1));
        }
    }
    match t.mode {
        TriangleMode::General => {
            if t.q < 4 {
                failures.push(format!("general mode needs q >= 4, found {}", t.q));
            } else {
                let eps = recompute_eps(t.q, &t.b);
                if !t.eps.is_empty() && t.eps != eps {
                    failures.push("stored eps differ from b_k - f_k".into());
                }
                for (k0, e) in eps.iter().enumerate() {
                    let bound = eps_bound(t.q, k0 + 1);
                    if e.is_negative() || *e >= bound {
                        failures.push(format!("eps_{} = {e} outside [0, {bound})", k0 + 1));
                    }
                }
            }
        }
        TriangleMode::Constant => {
            for (k0, (n, bk)) in t.group_sizes.iter().zip(&t.b).enumerate() {
                if n.to_u64() != Some(t.q) || *bk != q_pow_inv(t.q, k0 + 1) {
                    failures.push(format!("constant mode: level {} is not n = {}, b = n^-k", k0 + 1, t.q));
                }
            }
        }
    }
    TriangleReport { failures }
}

/// Witness for a finitary algebra into the target of `d`, when `d` is a
/// plain sl(Π) exhaustion. Constant factor sequences use the constant
/// path; everything else the general one with q = 4.
pub fn finitary_triangle(d: &ExhaustionDescriptor, depth: usize) -> Option<Result<Triangle, TriangleError>> {
    let factors = TargetFactors::from_descriptor(d).ok()?;
    let n = d.n0();
    let constant = d.prefix().iter().all(|t| t.s() == n)
        && matches!(d.tail(), TailGenerator::Periodic(p) if p.iter().all(|t| t.s() == n));
    Some(if constant {
        constant_triangle(n, depth)
    } else {
        build_triangle(4, factors, depth)
    })
}

// ---------------------------------------------------------------- ladder view

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderLevel {
    pub k: usize,
    /// n_1⋯n_k, the dimension of V_k.
    pub dim: BigUint,
    /// (i, a_i^k): multiplicity of Λ^i(F_k) in V_k.
    pub components: Vec<(usize, BigUint)>,
}

/// V_k as sl(k)-modules along sl(1) ⊂ sl(2) ⊂ ⋯, each V_k sitting in
/// sl(n_1⋯n_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorLadder {
    pub group_sizes: Vec<BigUint>,
    pub levels: Vec<LadderLevel>,
}

/// Ranks up to which the exterior-power branching is recomputed from the
/// Gelfand–Tsetlin rule.
const LADDER_GT_RANK: usize = 6;

impl ExteriorLadder {
    /// Commutativity of the ladder: V_k restricted to sl(k−1) along the
    /// signature (1,0,1) equals n_k copies of V_{k−1}, using
    /// Λ^i(F_k)↓ = Λ^i(F_{k−1}) ⊕ Λ^{i−1}(F_{k−1}).
    pub fn certificate(&self) -> Result<(), String> {
        for k in 1..self.levels.len() {
            if (2..=LADDER_GT_RANK).contains(&k) {
                for i in 0..=k {
                    check_exterior_branching(k, i)?;
                }
            }
            let (prev, here) = (&self.levels[k - 1], &self.levels[k]);
            let n = &self.group_sizes[k - 1];
            let a = |level: &LadderLevel, i: usize| {
                level
                    .components
                    .iter()
                    .find(|(j, _)| *j == i)
                    .map_or_else(BigUint::zero, |(_, m)| m.clone())
            };
            for j in 0..k {
                let restricted = a(here, j) + a(here, j + 1);
                let expected = n * a(prev, j);
                if restricted != expected {
                    return Err(format!(
                        "level {k}: Lambda^{j}(F_{}) occurs {restricted} times, expected {expected}",
                        k - 1
                    ));
                }
            }
            let total: BigUint = here.components.iter().map(|(i, m)| m * binomial(k, *i)).sum();
            if total != here.dim {
                return Err(format!("level {k}: dimension {total} differs from {}", here.dim));
            }
        }
        Ok(())
    }
}

fn check_exterior_branching(k: usize, i: usize) -> Result<(), String> {
    let ones = |count: usize, rank: usize| {
        HighestWeight::from_partition(&vec![1; count], rank).expect("at most rank rows")
    };
    let res = gt_branch(&ones(i, k));
    let mut expected = vec![];
    if i < k {
        expected.push(ones(i, k - 1));
    }
    if i > 0 {
        expected.push(ones(i - 1, k - 1));
    }
    let ok = res.multiplicities.len() == expected.len() && expected.iter().all(|w| res.multiplicity(w) == 1);
    if ok {
        Ok(())
    } else {
        Err(format!("Lambda^{i}(F_{k}) does not branch into Lambda^{i} + Lambda^{}", i.saturating_sub(1)))
    }
}

pub fn triangle_to_diagram(t: &Triangle) -> ExteriorLadder {
    let levels = t
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| LadderLevel {
            k,
            dim: t.dim(k),
            components: row.iter().cloned().enumerate().collect(),
        })
        .collect();
    ExteriorLadder {
        group_sizes: t.group_sizes.clone(),
        levels,
    }
}
