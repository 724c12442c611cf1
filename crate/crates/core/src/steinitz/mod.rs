//! Steinitz (supernatural) numbers: formal products of prime powers with
//! exponents in ℕ ∪ {∞}.

mod parse;
pub mod primes;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

pub use primes::{factor, factor_big, is_prime, nth_prime, Primes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u64),
    Inf,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    pub fn is_inf(self) -> bool {
        matches!(self, Exponent::Inf)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Exponent::Finite(e) => Some(e),
            Exponent::Inf => None,
        }
    }

    pub fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => {
                Exponent::Finite(a.checked_add(b).expect("exponent overflow"))
            }
            _ => Exponent::Inf,
        }
    }

    /// `self - other` with ∞ − ∞ = 0 and ∞ − n = ∞; `None` when negative.
    pub fn sub(self, other: Exponent) -> Option<Exponent> {
        match (self, other) {
            (Exponent::Inf, Exponent::Inf) => Some(Exponent::ZERO),
            (Exponent::Inf, Exponent::Finite(_)) => Some(Exponent::Inf),
            (Exponent::Finite(_), Exponent::Inf) => None,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.checked_sub(b).map(Exponent::Finite),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Inf) => Ordering::Less,
            (Exponent::Inf, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Inf, Exponent::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Inf => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SteinitzError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("divisibility precondition fails at prime {0}")]
    NotDivisible(u64),
    #[error("divisibility precondition fails at all but finitely many primes")]
    NotDivisibleDefault,
    #[error("Steinitz number is not finite")]
    NotFinite,
    #[error("integer must be positive")]
    NotPositive,
    #[error("ratio must be a positive rational")]
    NonPositiveRatio,
}

/// Positive rational q in a membership query `q ∈ a/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRatioQuery {
    q: BigRational,
}

impl RationalRatioQuery {
    pub fn new(q: BigRational) -> Result<Self, SteinitzError> {
        if q.is_positive() {
            Ok(RationalRatioQuery { q })
        } else {
            Err(SteinitzError::NonPositiveRatio)
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.q
    }
}

/// Canonical form: exceptions sorted by prime, none equal to `default`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteinitzNumber {
    exceptions: Vec<(u64, Exponent)>,
    default: Exponent,
}

impl Default for SteinitzNumber {
    fn default() -> Self {
        Self::one()
    }
}

impl SteinitzNumber {
    pub fn one() -> Self {
        SteinitzNumber {
            exceptions: Vec::new(),
            default: Exponent::ZERO,
        }
    }

    /// p₁^∞ p₂^∞ ⋯
    pub fn all_infinite() -> Self {
        SteinitzNumber {
            exceptions: Vec::new(),
            default: Exponent::Inf,
        }
    }

    pub fn with_default(default: Exponent) -> Self {
        SteinitzNumber {
            exceptions: Vec::new(),
            default,
        }
    }

    /// Builds a number from a default and explicit prime exponents. A later
    /// entry for the same prime replaces an earlier one.
    pub fn from_parts(
        default: Exponent,
        entries: impl IntoIterator<Item = (u64, Exponent)>,
    ) -> Result<Self, SteinitzError> {
        let mut exceptions: Vec<(u64, Exponent)> = Vec::new();
        for (p, e) in entries {
            if !is_prime(p) {
                return Err(SteinitzError::NotPrime(p));
            }
            match exceptions.binary_search_by_key(&p, |&(q, _)| q) {
                Ok(at) => exceptions[at].1 = e,
                Err(at) => exceptions.insert(at, (p, e)),
            }
        }
        exceptions.retain(|&(_, e)| e != default);
        Ok(SteinitzNumber {
            exceptions,
            default,
        })
    }

    pub fn prime_power(p: u64, e: Exponent) -> Result<Self, SteinitzError> {
        Self::from_parts(Exponent::ZERO, [(p, e)])
    }

    pub fn from_integer(n: u64) -> Result<Self, SteinitzError> {
        if n == 0 {
            return Err(SteinitzError::NotPositive);
        }
        Ok(SteinitzNumber {
            exceptions: factor(n)
                .into_iter()
                .map(|(p, e)| (p, Exponent::Finite(e)))
                .collect(),
            default: Exponent::ZERO,
        })
    }

    pub fn from_biguint(n: &BigUint) -> Result<Self, SteinitzError> {
        if n.is_zero() {
            return Err(SteinitzError::NotPositive);
        }
        let factors = factor_big(n).expect("integer too large to factor by trial division");
        Ok(SteinitzNumber {
            exceptions: factors
                .into_iter()
                .map(|(p, e)| (p, Exponent::Finite(e)))
                .collect(),
            default: Exponent::ZERO,
        })
    }

    pub fn default_exponent(&self) -> Exponent {
        self.default
    }

    pub fn exceptions(&self) -> &[(u64, Exponent)] {
        &self.exceptions
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        match self.exceptions.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(at) => self.exceptions[at].1,
            Err(_) => self.default,
        }
    }

    /// Primes listed in either number's exceptions, ascending.
    fn joint_support(&self, other: &SteinitzNumber) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .exceptions
            .iter()
            .chain(other.exceptions.iter())
            .map(|&(p, _)| p)
            .collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    fn pointwise(
        &self,
        other: &SteinitzNumber,
        op: impl Fn(Exponent, Exponent) -> Exponent,
    ) -> SteinitzNumber {
        let default = op(self.default, other.default);
        let exceptions = self
            .joint_support(other)
            .into_iter()
            .map(|p| (p, op(self.exponent(p), other.exponent(p))))
            .filter(|&(_, e)| e != default)
            .collect();
        SteinitzNumber {
            exceptions,
            default,
        }
    }

    pub fn mul(&self, other: &SteinitzNumber) -> SteinitzNumber {
        self.pointwise(other, Exponent::add)
    }

    pub fn mul_integer(&self, n: u64) -> SteinitzNumber {
        self.mul(&SteinitzNumber::from_integer(n).expect("positive multiplier"))
    }

    /// `self | other`.
    pub fn divides(&self, other: &SteinitzNumber) -> bool {
        self.default <= other.default
            && self
                .joint_support(other)
                .into_iter()
                .all(|p| self.exponent(p) <= other.exponent(p))
    }

    /// quotst(self, divisor): pointwise difference, ∞ − ∞ = 0.
    pub fn quotst(&self, divisor: &SteinitzNumber) -> Result<SteinitzNumber, SteinitzError> {
        let default = self
            .default
            .sub(divisor.default)
            .ok_or(SteinitzError::NotDivisibleDefault)?;
        let mut exceptions = Vec::new();
        for p in self.joint_support(divisor) {
            let e = self
                .exponent(p)
                .sub(divisor.exponent(p))
                .ok_or(SteinitzError::NotDivisible(p))?;
            if e != default {
                exceptions.push((p, e));
            }
        }
        Ok(SteinitzNumber {
            exceptions,
            default,
        })
    }

    pub fn gcd(&self, other: &SteinitzNumber) -> SteinitzNumber {
        self.pointwise(other, std::cmp::min)
    }

    pub fn is_finite(&self) -> bool {
        self.default == Exponent::ZERO && !self.exceptions.iter().any(|&(_, e)| e.is_inf())
    }

    pub fn to_integer(&self) -> Result<BigUint, SteinitzError> {
        if !self.is_finite() {
            return Err(SteinitzError::NotFinite);
        }
        Ok(self
            .exceptions
            .iter()
            .map(|&(p, e)| BigUint::from(p).pow(e.finite().expect("finite") as u32))
            .product())
    }

    /// True when some prime carries an infinite exponent.
    pub fn has_infinite_exponent(&self) -> bool {
        self.default.is_inf() || self.exceptions.iter().any(|&(_, e)| e.is_inf())
    }

    /// True when `p` carries an infinite exponent.
    pub fn is_infinite_at(&self, p: u64) -> bool {
        self.exponent(p).is_inf()
    }

    /// ℚ-equivalence: returns the witness q with `self = q · other`.
    pub fn q_equivalence(&self, other: &SteinitzNumber) -> Option<BigRational> {
        if self.default != other.default {
            return None;
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for p in self.joint_support(other) {
            match (self.exponent(p), other.exponent(p)) {
                (Exponent::Inf, Exponent::Inf) => {}
                (Exponent::Finite(a), Exponent::Finite(b)) => match a.cmp(&b) {
                    Ordering::Greater => num *= BigUint::from(p).pow((a - b) as u32),
                    Ordering::Less => den *= BigUint::from(p).pow((b - a) as u32),
                    Ordering::Equal => {}
                },
                _ => return None,
            }
        }
        Some(BigRational::new(num.into(), den.into()))
    }

    pub fn q_equivalent(&self, other: &SteinitzNumber) -> bool {
        self.q_equivalence(other).is_some()
    }

    /// `q ∈ a/b`: some n with nq ∈ ℕ and n·a = nq·b.
    pub fn ratio_contains(q: &RationalRatioQuery, a: &SteinitzNumber, b: &SteinitzNumber) -> bool {
        let mut num = q.value().numer().magnitude().clone();
        let mut den = q.value().denom().magnitude().clone();
        for p in a.joint_support(b) {
            let (vn, rest_n) = primes::split_power(&num, p);
            let (vd, rest_d) = primes::split_power(&den, p);
            num = rest_n;
            den = rest_d;
            match (a.exponent(p), b.exponent(p)) {
                (Exponent::Inf, Exponent::Inf) => {}
                (Exponent::Finite(ea), Exponent::Finite(eb)) => {
                    let lhs = BigInt::from(ea) - BigInt::from(eb);
                    let rhs = BigInt::from(vn) - BigInt::from(vd);
                    if lhs != rhs {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        // Remaining primes all carry the default exponents.
        match (a.default, b.default) {
            (Exponent::Inf, Exponent::Inf) => true,
            (Exponent::Finite(x), Exponent::Finite(y)) => x == y && num.is_one() && den.is_one(),
            _ => false,
        }
    }

    /// Primes with infinite exponent, or `None` when that set is cofinite.
    pub fn infinite_primes(&self) -> Option<Vec<u64>> {
        if self.default.is_inf() {
            return None;
        }
        Some(
            self.exceptions
                .iter()
                .filter(|&&(_, e)| e.is_inf())
                .map(|&(p, _)| p)
                .collect(),
        )
    }
}

impl std::ops::Mul for &SteinitzNumber {
    type Output = SteinitzNumber;
    fn mul(self, rhs: &SteinitzNumber) -> SteinitzNumber {
        SteinitzNumber::mul(self, rhs)
    }
}

pub fn stz_mul(a: &SteinitzNumber, b: &SteinitzNumber) -> SteinitzNumber {
    a.mul(b)
}

pub fn divides(a: &SteinitzNumber, b: &SteinitzNumber) -> bool {
    a.divides(b)
}

pub fn quotst(b: &SteinitzNumber, a: &SteinitzNumber) -> Result<SteinitzNumber, SteinitzError> {
    b.quotst(a)
}

pub fn gcd(a: &SteinitzNumber, b: &SteinitzNumber) -> SteinitzNumber {
    a.gcd(b)
}

pub fn q_equivalent(a: &SteinitzNumber, b: &SteinitzNumber) -> bool {
    a.q_equivalent(b)
}

pub fn ratio_contains(q: &RationalRatioQuery, a: &SteinitzNumber, b: &SteinitzNumber) -> bool {
    SteinitzNumber::ratio_contains(q, a, b)
}

/// Rational number restricted to a set of primes: true when every prime
/// of numerator and denominator is accepted by `allowed`. Primes outside
/// `listed` are accepted iff `others_allowed`.
pub(crate) fn rational_supported_on(
    q: &BigRational,
    listed: &[u64],
    allowed: impl Fn(u64) -> bool,
    others_allowed: bool,
) -> bool {
    if q.is_zero() {
        return false;
    }
    let mut num = q.numer().magnitude().clone();
    let mut den = q.denom().magnitude().clone();
    for &p in listed {
        let (vn, rest_n) = primes::split_power(&num, p);
        let (vd, rest_d) = primes::split_power(&den, p);
        num = rest_n;
        den = rest_d;
        if (vn > 0 || vd > 0) && !allowed(p) {
            return false;
        }
    }
    others_allowed || (num.is_one() && den.is_one())
}

impl fmt::Display for SteinitzNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exceptions
            .iter()
            .map(|&(p, e)| match e {
                Exponent::Finite(1) => p.to_string(),
                _ => format!("{p}^{e}"),
            })
            .collect();
        match (terms.is_empty(), self.default) {
            (true, Exponent::Finite(0)) => f.write_str("1"),
            (false, Exponent::Finite(0)) => f.write_str(&terms.join("*")),
            (true, d) => write!(f, "default {d}"),
            (false, d) => write!(f, "{} default {d}", terms.join("*")),
        }
    }
}

impl std::str::FromStr for SteinitzNumber {
    type Err = crate::text::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_literal(s, 1, 1)
    }
}

impl SteinitzNumber {
    /// Parses a literal located at (`line`, `column`) of some file.
    pub fn parse_at(s: &str, line: usize, column: usize) -> Result<Self, crate::text::ParseError> {
        parse::parse_literal(s, line, column)
    }
}
