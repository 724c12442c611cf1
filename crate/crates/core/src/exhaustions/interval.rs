use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval [lo, hi] of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Option<Self> {
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Product of two intervals with nonnegative endpoints.
    pub fn mul_nonneg(&self, other: &RationalInterval) -> RationalInterval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RationalInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn scale(&self, k: &BigRational) -> RationalInterval {
        debug_assert!(!k.is_negative());
        RationalInterval {
            lo: &self.lo * k,
            hi: &self.hi * k,
        }
    }

    /// 1/x for an interval strictly above zero.
    pub fn recip(&self) -> Option<RationalInterval> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        RationalInterval::new(lo, hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A real number known either exactly or through an enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Exact(BigRational),
    Interval(RationalInterval),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Real::Exact(BigRational::one())
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(x) => Some(x),
            Real::Interval(iv) if iv.is_point() => Some(iv.lo()),
            Real::Interval(_) => None,
        }
    }

    pub fn enclosure(&self) -> RationalInterval {
        match self {
            Real::Exact(x) => RationalInterval::point(x.clone()),
            Real::Interval(iv) => iv.clone(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact().is_some_and(|x| x.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.enclosure().lo().is_positive()
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(x) => write!(f, "{x}"),
            Real::Interval(iv) => write!(f, "{iv}"),
        }
    }
}
