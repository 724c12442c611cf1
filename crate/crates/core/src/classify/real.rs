//! Comparisons of quantities built from δ, refined through the source
//! descriptors when δ is only known as an interval.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exhaustions::{
    AlgebraProfile, DeltaEnclosures, ExhaustionDescriptor, RationalInterval, Real, SignatureTriple,
    TailGenerator,
};

/// Tail periods consumed per refinement round.
const PERIODS_PER_ROUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cmp {
    Holds,
    Fails,
    Undecided,
}

/// δ of one profile, tightened on demand from the descriptor's enclosures.
pub(crate) struct DeltaRefiner<'a> {
    current: RationalInterval,
    stream: Option<DeltaEnclosures<'a>>,
}

impl<'a> DeltaRefiner<'a> {
    pub(crate) fn new(p: &'a AlgebraProfile) -> Self {
        let stream = match (&p.delta, &p.descriptor) {
            (Real::Interval(_), Some(d)) => d.delta_enclosures(),
            _ => None,
        };
        DeltaRefiner {
            current: p.delta.enclosure(),
            stream,
        }
    }

    pub(crate) fn interval(&self) -> &RationalInterval {
        &self.current
    }

    /// Advances the enclosure stream by one round; false once nothing can
    /// improve (exact value, or a hand-supplied interval).
    pub(crate) fn refine(&mut self) -> bool {
        if self.current.is_point() {
            return false;
        }
        let Some(stream) = self.stream.as_mut() else {
            return false;
        };
        let mut last = None;
        for _ in 0..PERIODS_PER_ROUND {
            last = stream.next();
        }
        let Some(next) = last else {
            return false;
        };
        match self.current.intersect(&next) {
            Some(iv) => {
                self.current = iv;
                true
            }
            None => unreachable!("enclosures of the same limit must overlap"),
        }
    }
}

/// Both refiners advanced once; false when neither moved.
fn refine_pair(d1: &mut DeltaRefiner<'_>, d2: &mut DeltaRefiner<'_>) -> bool {
    let a = d1.refine();
    let b = d2.refine();
    a || b
}

/// Decides a·δ2 ≤ b·δ1 (strict when `strict`), for a, b ≥ 0 and δ's > 0.
pub(crate) fn compare_scaled(
    a: &BigRational,
    b: &BigRational,
    strict: bool,
    ratio: Option<&BigRational>,
    d1: &mut DeltaRefiner<'_>,
    d2: &mut DeltaRefiner<'_>,
    rounds: usize,
) -> Cmp {
    if let Some(r) = ratio {
        let lhs = a.clone();
        let rhs = b * r;
        let holds = if strict { lhs < rhs } else { lhs <= rhs };
        return if holds { Cmp::Holds } else { Cmp::Fails };
    }
    for _ in 0..=rounds {
        let (i1, i2) = (d1.interval(), d2.interval());
        let lo = b * i1.lo() - a * i2.hi();
        let hi = b * i1.hi() - a * i2.lo();
        if lo.is_positive() || (!strict && !lo.is_negative()) {
            return Cmp::Holds;
        }
        if hi.is_negative() || (strict && !hi.is_positive()) {
            return Cmp::Fails;
        }
        if !refine_pair(d1, d2) {
            break;
        }
    }
    Cmp::Undecided
}

/// Decides a·δ2 = b·δ1. Without an exact ratio, intervals can only refute.
pub(crate) fn equal_scaled(
    a: &BigRational,
    b: &BigRational,
    ratio: Option<&BigRational>,
    d1: &mut DeltaRefiner<'_>,
    d2: &mut DeltaRefiner<'_>,
    rounds: usize,
) -> Cmp {
    if let Some(r) = ratio {
        return if *a == b * r { Cmp::Holds } else { Cmp::Fails };
    }
    for _ in 0..=rounds {
        let (i1, i2) = (d1.interval(), d2.interval());
        let lo = b * i1.lo() - a * i2.hi();
        let hi = b * i1.hi() - a * i2.lo();
        if lo.is_positive() || hi.is_negative() {
            return Cmp::Fails;
        }
        if !refine_pair(d1, d2) {
            break;
        }
    }
    Cmp::Undecided
}

/// Enclosure of δ1/δ2 from the current refiner states.
pub(crate) fn ratio_enclosure(d1: &DeltaRefiner<'_>, d2: &DeltaRefiner<'_>) -> RationalInterval {
    let inv = d2.interval().recip().expect("non-sparse delta is positive");
    d1.interval().mul_nonneg(&inv)
}

/// δ1/δ2 exactly, when both are exact or when both exhaustions run through
/// the same dense periodic tail from some level of equal rank onwards (the
/// remaining infinite products then coincide and cancel).
pub(crate) fn exact_delta_ratio(p1: &AlgebraProfile, p2: &AlgebraProfile) -> Option<BigRational> {
    if let (Some(a), Some(b)) = (p1.delta.exact(), p2.delta.exact()) {
        if b.is_zero() {
            return None;
        }
        return Some(a / b);
    }
    let (d1, d2) = (p1.descriptor.as_ref()?, p2.descriptor.as_ref()?);
    aligned_tail_ratio(d1, d2)
}

fn periodic(d: &ExhaustionDescriptor) -> Option<&[SignatureTriple]> {
    match d.tail() {
        TailGenerator::Periodic(period) => Some(period.as_slice()),
        _ => None,
    }
}

fn aligned_tail_ratio(d1: &ExhaustionDescriptor, d2: &ExhaustionDescriptor) -> Option<BigRational> {
    let (t1, t2) = (periodic(d1)?, periodic(d2)?);
    let span = t1.len() * t2.len();
    let window = 2 * t1.len().max(t2.len());
    let states = |d: &ExhaustionDescriptor, period: &[SignatureTriple]| -> Vec<(BigUint, BigRational, Vec<SignatureTriple>)> {
        let start = d.tail_start();
        d.levels()
            .skip(start)
            .take(window)
            .enumerate()
            .map(|(offset, lv)| {
                let upcoming = (0..span).map(|j| period[(offset + j) % period.len()]).collect();
                (lv.n.clone(), lv.delta(), upcoming)
            })
            .collect()
    };
    let (s1, s2) = (states(d1, t1), states(d2, t2));
    for (n1, delta1, up1) in &s1 {
        for (n2, delta2, up2) in &s2 {
            if n1 == n2 && up1 == up2 {
                return Some(delta1 / delta2);
            }
        }
    }
    None
}

/// Smallest k with q0·p^k ≥ lo, then whether that candidate is ≤ hi.
pub(crate) fn geometric_hits(q0: &BigRational, p: u64, iv: &RationalInterval) -> bool {
    if !iv.lo().is_positive() {
        return true;
    }
    let p = BigRational::from_integer(p.into());
    let mut x = q0.clone();
    while &x < iv.lo() {
        x = &x * &p;
    }
    while &x / &p >= *iv.lo() {
        x = &x / &p;
    }
    &x <= iv.hi()
}
