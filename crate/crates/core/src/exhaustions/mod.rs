//! Finite descriptions of exhaustions, their derived level data, and the
//! classification profile of the limit algebra.

pub mod format;
mod interval;

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::steinitz::{factor, Exponent, Primes, SteinitzNumber};
pub use interval::{RationalInterval, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgType {
    A,
    C,
    O,
}

impl fmt::Display for AlgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgType::A => "A",
            AlgType::C => "C",
            AlgType::O => "O",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignatureTriple {
    pub l: u64,
    pub r: u64,
    pub z: u64,
}

impl SignatureTriple {
    pub const fn new(l: u64, r: u64, z: u64) -> Self {
        SignatureTriple { l, r, z }
    }

    pub fn s(&self) -> u64 {
        self.l + self.r
    }

    pub fn c(&self) -> u64 {
        self.l - self.r
    }

    fn validate(&self, alg: AlgType) -> Result<(), String> {
        if self.l + self.r == 0 {
            return Err(format!("{self}: l + r must be at least 1"));
        }
        if self.l < self.r {
            return Err(format!("{self}: l must be at least r"));
        }
        if alg != AlgType::A && self.r != 0 {
            return Err(format!("{self}: r must be 0 for type {alg}"));
        }
        Ok(())
    }
}

impl fmt::Display for SignatureTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.r, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailGenerator {
    Periodic(Vec<SignatureTriple>),
    /// Level i of the tail uses (p_{offset+i}, 0, 0), with p_1 = 2.
    PrimeSeq { offset: u64 },
    /// Level i uses (l, r, beta·n_i).
    Proportional { l: u64, r: u64, beta: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Type,
    N0,
    Prefix,
    Tail,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExhaustionError {
    #[error("invalid descriptor: {message}")]
    InvalidDescriptor { field: Field, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),
}

fn invalid(field: Field, message: impl Into<String>) -> ExhaustionError {
    ExhaustionError::InvalidDescriptor {
        field,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExhaustionDescriptor {
    alg_type: AlgType,
    n0: u64,
    prefix: Vec<SignatureTriple>,
    tail: TailGenerator,
}

/// Data of one level of an exhaustion, together with running products
/// over the preceding levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub index: usize,
    pub n: BigUint,
    pub l: u64,
    pub r: u64,
    pub z: BigUint,
    /// n0·s_0⋯s_{i−1}
    pub s_product: BigUint,
    /// s_0⋯s_{i−1}
    pub s_only_product: BigUint,
    /// c_0⋯c_{i−1}
    pub c_product: BigUint,
}

impl Level {
    pub fn s(&self) -> u64 {
        self.l + self.r
    }

    pub fn c(&self) -> u64 {
        self.l - self.r
    }

    pub fn next_n(&self) -> BigUint {
        &self.n * self.s() + &self.z
    }

    pub fn delta(&self) -> BigRational {
        BigRational::new(self.s_product.clone().into(), self.n.clone().into())
    }

    pub fn sigma(&self) -> BigRational {
        BigRational::new(
            self.c_product.clone().into(),
            self.s_only_product.clone().into(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelData {
    pub n: BigUint,
    pub s: u64,
    pub c: u64,
    pub delta: BigRational,
    pub sigma: BigRational,
}

pub struct LevelIter<'a> {
    desc: &'a ExhaustionDescriptor,
    index: usize,
    n: BigUint,
    s_product: BigUint,
    s_only_product: BigUint,
    c_product: BigUint,
    primes: Primes,
}

impl Iterator for LevelIter<'_> {
    type Item = Level;

    fn next(&mut self) -> Option<Level> {
        let i = self.index;
        let d = self.desc;
        let (l, r, z) = if i < d.prefix.len() {
            let t = d.prefix[i];
            (t.l, t.r, BigUint::from(t.z))
        } else {
            match &d.tail {
                TailGenerator::Periodic(period) => {
                    let t = period[(i - d.prefix.len()) % period.len()];
                    (t.l, t.r, BigUint::from(t.z))
                }
                TailGenerator::PrimeSeq { .. } => {
                    (self.primes.next().expect("infinite"), 0, BigUint::zero())
                }
                TailGenerator::Proportional { l, r, beta } => (*l, *r, &self.n * *beta),
            }
        };
        let level = Level {
            index: i,
            n: self.n.clone(),
            l,
            r,
            z,
            s_product: self.s_product.clone(),
            s_only_product: self.s_only_product.clone(),
            c_product: self.c_product.clone(),
        };
        self.n = level.next_n();
        self.s_product *= level.s();
        self.s_only_product *= level.s();
        self.c_product *= level.c();
        self.index += 1;
        Some(level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityClass {
    Sparse,
    Dense,
    Pure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    OneSided,
    TwoSidedSymmetric,
    WeaklyNonSymmetric,
    StronglyNonSymmetric,
}

impl SymmetryClass {
    pub fn is_two_sided_non_symmetric(self) -> bool {
        matches!(
            self,
            SymmetryClass::WeaklyNonSymmetric | SymmetryClass::StronglyNonSymmetric
        )
    }
}

impl fmt::Display for DensityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityClass::Sparse => "sparse",
            DensityClass::Dense => "dense",
            DensityClass::Pure => "pure",
        })
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::OneSided => "one-sided",
            SymmetryClass::TwoSidedSymmetric => "two-sided-symmetric",
            SymmetryClass::WeaklyNonSymmetric => "weakly-non-symmetric",
            SymmetryClass::StronglyNonSymmetric => "strongly-non-symmetric",
        })
    }
}

/// Steinitz number with p^∞ at every prime dividing `n`.
fn infinite_at_primes_of(n: u64) -> SteinitzNumber {
    SteinitzNumber::from_parts(
        Exponent::ZERO,
        factor(n).into_iter().map(|(p, _)| (p, Exponent::Inf)),
    )
    .expect("factors are prime")
}

/// p_offset · p_{offset+1} ⋯
fn primes_from(offset: u64) -> SteinitzNumber {
    let below = Primes::new().take((offset - 1) as usize);
    SteinitzNumber::from_parts(Exponent::Finite(1), below.map(|p| (p, Exponent::ZERO)))
        .expect("sieve output is prime")
}

impl ExhaustionDescriptor {
    pub fn new(
        alg_type: AlgType,
        n0: u64,
        prefix: Vec<SignatureTriple>,
        tail: TailGenerator,
    ) -> Result<Self, ExhaustionError> {
        if n0 < 2 {
            return Err(invalid(Field::N0, "n0 must be at least 2"));
        }
        if alg_type == AlgType::C && !n0.is_multiple_of(2) {
            return Err(invalid(Field::N0, "n0 must be even for type C"));
        }
        let grows = |t: &SignatureTriple| t.s() >= 2 || t.z >= 1;
        for t in &prefix {
            t.validate(alg_type).map_err(|m| invalid(Field::Prefix, m))?;
            if !grows(t) {
                return Err(invalid(Field::Prefix, format!("{t} does not increase n")));
            }
            if alg_type == AlgType::C && t.z % 2 != 0 {
                return Err(invalid(Field::Prefix, format!("{t}: z must be even for type C")));
            }
        }
        match &tail {
            TailGenerator::Periodic(period) => {
                if period.is_empty() {
                    return Err(invalid(Field::Tail, "periodic tail must be nonempty"));
                }
                for t in period {
                    t.validate(alg_type).map_err(|m| invalid(Field::Tail, m))?;
                    if !grows(t) {
                        return Err(invalid(Field::Tail, format!("{t} does not increase n")));
                    }
                    if alg_type == AlgType::C && t.z % 2 != 0 {
                        return Err(invalid(Field::Tail, format!("{t}: z must be even for type C")));
                    }
                }
            }
            TailGenerator::PrimeSeq { offset } => {
                if *offset < 1 {
                    return Err(invalid(Field::Tail, "prime offset starts at 1"));
                }
            }
            TailGenerator::Proportional { l, r, beta } => {
                SignatureTriple::new(*l, *r, 0)
                    .validate(alg_type)
                    .map_err(|m| invalid(Field::Tail, m))?;
                if l + r + beta < 2 {
                    return Err(invalid(Field::Tail, "proportional tail does not increase n"));
                }
            }
        }
        Ok(ExhaustionDescriptor {
            alg_type,
            n0,
            prefix,
            tail,
        })
    }

    pub fn alg_type(&self) -> AlgType {
        self.alg_type
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn prefix(&self) -> &[SignatureTriple] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailGenerator {
        &self.tail
    }

    pub fn tail_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn levels(&self) -> LevelIter<'_> {
        let mut primes = Primes::new();
        if let TailGenerator::PrimeSeq { offset } = self.tail {
            for _ in 1..offset {
                primes.next();
            }
        }
        LevelIter {
            desc: self,
            index: 0,
            n: BigUint::from(self.n0),
            s_product: BigUint::from(self.n0),
            s_only_product: BigUint::one(),
            c_product: BigUint::one(),
            primes,
        }
    }

    pub fn level(&self, i: usize) -> Level {
        self.levels().nth(i).expect("levels are unbounded")
    }

    pub fn derive_level(&self, i: usize) -> LevelData {
        let lv = self.level(i);
        LevelData {
            n: lv.n.clone(),
            s: lv.s(),
            c: lv.c(),
            delta: lv.delta(),
            sigma: lv.sigma(),
        }
    }

    /// Product of a per-level quantity over one tail period, as a Steinitz
    /// contribution of the whole tail.
    fn tail_contribution(&self, value: impl Fn(u64, u64) -> u64) -> SteinitzNumber {
        match &self.tail {
            TailGenerator::Periodic(period) => {
                let product: u64 = period.iter().map(|t| value(t.l, t.r)).product();
                infinite_at_primes_of(product)
            }
            TailGenerator::PrimeSeq { offset } => primes_from(*offset),
            TailGenerator::Proportional { l, r, .. } => infinite_at_primes_of(value(*l, *r)),
        }
    }

    /// Stz(S) = n0·s_0·s_1⋯
    pub fn stz_s(&self) -> SteinitzNumber {
        let mut acc = SteinitzNumber::from_integer(self.n0).expect("n0 >= 2");
        for t in &self.prefix {
            acc = acc.mul_integer(t.s());
        }
        acc.mul(&self.tail_contribution(|l, r| l + r))
    }

    /// Whether some tail level has c = 0, i.e. c vanishes infinitely often.
    fn tail_has_zero_c(&self) -> bool {
        match &self.tail {
            TailGenerator::Periodic(period) => period.iter().any(|t| t.c() == 0),
            TailGenerator::PrimeSeq { .. } => false,
            TailGenerator::Proportional { l, r, .. } => l == r,
        }
    }

    /// Stz(C) = n_J·c_J·c_{J+1}⋯ where J follows the last level with c = 0.
    /// Defined for type A exhaustions that are not symmetric.
    pub fn stz_c(&self) -> Option<SteinitzNumber> {
        if self.alg_type != AlgType::A || self.tail_has_zero_c() {
            return None;
        }
        let start = self
            .prefix
            .iter()
            .rposition(|t| t.c() == 0)
            .map_or(0, |at| at + 1);
        let n_start = self.level(start).n;
        let mut acc = SteinitzNumber::from_biguint(&n_start).expect("positive");
        for t in &self.prefix[start..] {
            acc = acc.mul_integer(t.c());
        }
        Some(acc.mul(&self.tail_contribution(|l, r| l - r)))
    }

    /// Density class and δ; dense values are enclosed to width ≤ `precision`.
    pub fn classify_density(&self, precision: &BigRational) -> (DensityClass, Real) {
        let at_tail_start = || Real::Exact(self.level(self.tail_start()).delta());
        match &self.tail {
            TailGenerator::Periodic(period) => {
                if period.iter().all(|t| t.s() == 1) {
                    (DensityClass::Sparse, Real::zero())
                } else if period.iter().all(|t| t.z == 0) {
                    (DensityClass::Pure, at_tail_start())
                } else {
                    let enclosure = self
                        .delta_enclosures()
                        .expect("dense periodic tail")
                        .find(|iv| iv.lo().is_positive() && iv.width() <= *precision)
                        .expect("enclosures shrink geometrically");
                    (DensityClass::Dense, Real::Interval(enclosure))
                }
            }
            TailGenerator::PrimeSeq { .. } => (DensityClass::Pure, at_tail_start()),
            TailGenerator::Proportional { beta, .. } => {
                if *beta >= 1 {
                    (DensityClass::Sparse, Real::zero())
                } else {
                    (DensityClass::Pure, at_tail_start())
                }
            }
        }
    }

    /// Successively tighter enclosures of δ for a dense periodic tail, one
    /// period further along per item.
    pub fn delta_enclosures(&self) -> Option<DeltaEnclosures<'_>> {
        let TailGenerator::Periodic(period) = &self.tail else {
            return None;
        };
        let q: u64 = period.iter().map(|t| t.s()).product();
        if q < 2 || period.iter().all(|t| t.z == 0) {
            return None;
        }
        let mut levels = self.levels();
        for _ in 0..self.tail_start() {
            levels.next();
        }
        Some(DeltaEnclosures {
            levels,
            period: period.len(),
            geometric: BigRational::new(q.into(), (q - 1).into()),
        })
    }

    pub fn classify_symmetry(&self) -> (SymmetryClass, Real) {
        if self.alg_type != AlgType::A {
            return (SymmetryClass::OneSided, Real::one());
        }
        let (any_zero, any_partial) = match &self.tail {
            TailGenerator::Periodic(period) => (
                period.iter().any(|t| t.c() == 0),
                period.iter().any(|t| t.r > 0),
            ),
            TailGenerator::PrimeSeq { .. } => (false, false),
            TailGenerator::Proportional { l, r, .. } => (l == r, *r > 0),
        };
        if any_zero {
            (SymmetryClass::TwoSidedSymmetric, Real::zero())
        } else if any_partial {
            (SymmetryClass::WeaklyNonSymmetric, Real::zero())
        } else {
            (SymmetryClass::OneSided, Real::one())
        }
    }

    pub fn profile(&self, precision: &BigRational) -> AlgebraProfile {
        let s = self.stz_s();
        let (density, delta) = self.classify_density(precision);
        let (symmetry, sigma) = self.classify_symmetry();
        let profile = AlgebraProfile {
            alg_type: self.alg_type,
            finitary: s.is_finite(),
            s,
            c: self.stz_c(),
            density,
            symmetry,
            delta,
            sigma,
            descriptor: Some(self.clone()),
        };
        certify(profile).expect("descriptor profiles are internally consistent")
    }
}

pub fn derive_level(d: &ExhaustionDescriptor, i: usize) -> LevelData {
    d.derive_level(i)
}

pub fn stz_s(d: &ExhaustionDescriptor) -> SteinitzNumber {
    d.stz_s()
}

pub fn stz_c(d: &ExhaustionDescriptor) -> Option<SteinitzNumber> {
    d.stz_c()
}

pub fn classify_density(d: &ExhaustionDescriptor, precision: &BigRational) -> (DensityClass, Real) {
    d.classify_density(precision)
}

pub fn classify_symmetry(d: &ExhaustionDescriptor) -> (SymmetryClass, Real) {
    d.classify_symmetry()
}

pub fn profile_of(d: &ExhaustionDescriptor, precision: &BigRational) -> AlgebraProfile {
    d.profile(precision)
}

pub struct DeltaEnclosures<'a> {
    levels: LevelIter<'a>,
    period: usize,
    geometric: BigRational,
}

impl Iterator for DeltaEnclosures<'_> {
    type Item = RationalInterval;

    fn next(&mut self) -> Option<RationalInterval> {
        let block: Vec<Level> = (&mut self.levels).take(self.period).collect();
        let delta = block[0].delta();
        // δ ≥ δ_J·(1 − Σ_{j≥J} z_j/(s_j n_j)); the sum over later periods is
        // dominated by a geometric series with ratio 1/∏s.
        let period_sum: BigRational = block
            .iter()
            .map(|lv| BigRational::new(lv.z.clone().into(), (&lv.n * lv.s()).into()))
            .sum();
        let tail_bound = period_sum * &self.geometric;
        let lo = &delta * (BigRational::one() - tail_bound);
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        Some(RationalInterval::new(lo, delta).expect("lower bound below δ_J"))
    }
}

/// Classification data of a diagonal locally simple Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraProfile {
    pub alg_type: AlgType,
    pub s: SteinitzNumber,
    /// Stz(C); present exactly for non-symmetric type A algebras.
    pub c: Option<SteinitzNumber>,
    pub density: DensityClass,
    pub symmetry: SymmetryClass,
    pub delta: Real,
    pub sigma: Real,
    pub finitary: bool,
    /// Source exhaustion, when the profile was derived from one. Enables
    /// δ refinement and witness construction.
    pub descriptor: Option<ExhaustionDescriptor>,
}

fn inconsistent(message: &str) -> ExhaustionError {
    ExhaustionError::InconsistentProfile(message.to_string())
}

/// Validates the internal consistency of a profile.
pub fn certify(p: AlgebraProfile) -> Result<AlgebraProfile, ExhaustionError> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let delta = p.delta.enclosure();
    let sigma = p.sigma.enclosure();

    match p.density {
        DensityClass::Sparse => {
            if !p.delta.is_exact_zero() {
                return Err(inconsistent("sparse requires delta = 0"));
            }
        }
        DensityClass::Pure => {
            if !p.delta.exact().is_some_and(|d| d.is_positive()) {
                return Err(inconsistent("pure requires an exact delta > 0"));
            }
        }
        DensityClass::Dense => {
            if !delta.lo().is_positive() {
                return Err(inconsistent("dense requires delta > 0"));
            }
        }
    }
    if delta.lo() < &zero || delta.hi() > &one {
        return Err(inconsistent("delta must lie in [0, 1]"));
    }
    if sigma.lo() < &zero || sigma.hi() > &one {
        return Err(inconsistent("sigma must lie in [0, 1]"));
    }
    match p.symmetry {
        SymmetryClass::OneSided => {
            if p.sigma.exact() != Some(&one) {
                return Err(inconsistent("one-sided requires sigma = 1"));
            }
        }
        SymmetryClass::TwoSidedSymmetric | SymmetryClass::WeaklyNonSymmetric => {
            if !p.sigma.is_exact_zero() {
                return Err(inconsistent("symmetric and weakly-non-symmetric require sigma = 0"));
            }
        }
        SymmetryClass::StronglyNonSymmetric => {
            if !sigma.lo().is_positive() || p.sigma.exact() == Some(&one) {
                return Err(inconsistent("strongly-non-symmetric requires 0 < sigma < 1"));
            }
        }
    }
    if p.finitary != p.s.is_finite() {
        return Err(inconsistent("finitary must agree with finiteness of S"));
    }
    if p.finitary && p.density != DensityClass::Sparse {
        return Err(inconsistent("finitary algebras are sparse"));
    }
    if p.alg_type != AlgType::A {
        if p.symmetry != SymmetryClass::OneSided {
            return Err(inconsistent("types C and O are one-sided"));
        }
        if p.c.is_some() {
            return Err(inconsistent("C is only defined for type A"));
        }
    } else {
        let needs_c = p.symmetry != SymmetryClass::TwoSidedSymmetric;
        if needs_c != p.c.is_some() {
            return Err(inconsistent("C is present exactly for non-symmetric type A"));
        }
    }
    if p.symmetry == SymmetryClass::TwoSidedSymmetric
        && !p.finitary
        && !p.s.is_infinite_at(2)
    {
        return Err(inconsistent("two-sided symmetric requires 2^inf | S"));
    }
    if let Some(d) = &p.descriptor {
        if d.alg_type() != p.alg_type {
            return Err(inconsistent("descriptor type differs from profile type"));
        }
    }
    Ok(p)
}

/// A diagonal map between natural modules of dimensions `source_dim` and
/// `target_dim` with signature (l, r, z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalMap {
    pub l: u64,
    pub r: u64,
    pub z: BigUint,
    pub source_dim: BigUint,
    pub target_dim: BigUint,
}

impl DiagonalMap {
    pub fn new(l: u64, r: u64, z: BigUint, source_dim: BigUint) -> Self {
        let target_dim = &source_dim * (l + r) + &z;
        DiagonalMap {
            l,
            r,
            z,
            source_dim,
            target_dim,
        }
    }

    fn consistent(&self) -> bool {
        self.target_dim == &self.source_dim * (self.l + self.r) + &self.z
    }
}

/// Signature of `second ∘ first` (first applied first).
pub fn compose_signature(
    first: &DiagonalMap,
    second: &DiagonalMap,
) -> Result<DiagonalMap, ExhaustionError> {
    if !first.consistent() || !second.consistent() {
        return Err(ExhaustionError::DimensionMismatch(
            "signature does not match its dimensions".into(),
        ));
    }
    if first.target_dim != second.source_dim {
        return Err(ExhaustionError::DimensionMismatch(format!(
            "first map lands in dimension {}, second starts at {}",
            first.target_dim, second.source_dim
        )));
    }
    let overflow = || ExhaustionError::DimensionMismatch("signature overflow".into());
    let mul = |a: u64, b: u64| a.checked_mul(b).ok_or_else(overflow);
    let l = mul(first.l, second.l)?
        .checked_add(mul(first.r, second.r)?)
        .ok_or_else(overflow)?;
    let r = mul(first.l, second.r)?
        .checked_add(mul(first.r, second.l)?)
        .ok_or_else(overflow)?;
    let used = &first.source_dim * (l + r);
    if used > second.target_dim {
        return Err(ExhaustionError::DimensionMismatch(
            "composite uses more than the target dimension".into(),
        ));
    }
    Ok(DiagonalMap {
        l,
        r,
        z: &second.target_dim - used,
        source_dim: first.source_dim.clone(),
        target_dim: second.target_dim.clone(),
    })
}

#[cfg(test)]
mod tests;
