use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Unbounded incremental sieve of Eratosthenes.
#[derive(Clone, Debug, Default)]
pub struct Primes {
    emitted_two: bool,
    candidate: u64,
    // next composite -> odd primes whose multiples land there
    pending: HashMap<u64, Vec<u64>>,
}

impl Primes {
    pub fn new() -> Self {
        Primes {
            emitted_two: false,
            candidate: 3,
            pending: HashMap::new(),
        }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            return Some(2);
        }
        loop {
            let n = self.candidate;
            self.candidate += 2;
            match self.pending.remove(&n) {
                Some(factors) => {
                    for p in factors {
                        self.pending.entry(n + 2 * p).or_default().push(p);
                    }
                }
                None => {
                    if let Some(square) = n.checked_mul(n) {
                        self.pending.entry(square).or_default().push(n);
                    }
                    return Some(n);
                }
            }
        }
    }
}

/// The k-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(k: u64) -> u64 {
    assert!(k >= 1, "primes are indexed from 1");
    Primes::new()
        .nth((k - 1) as usize)
        .expect("prime sequence is infinite")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Trial-division factorization, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u64)> {
    assert!(n >= 1, "cannot factor zero");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factorization of an arbitrary-size integer by trial division. Returns
/// `None` when the remaining cofactor is a prime that does not fit in `u64`.
pub fn factor_big(n: &BigUint) -> Option<Vec<(u64, u64)>> {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return Some(factor(small));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    for p in Primes::new() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
            if let Some(small) = rest.to_u64() {
                out.extend(factor(small).into_iter().filter(|&(q, _)| q > 1));
                return Some(out);
            }
        }
    }
    if !rest.is_one() {
        out.push((rest.to_u64()?, 1));
    }
    Some(out)
}

/// Exponent of `p` in `n` and the cofactor with that power removed.
pub(crate) fn split_power(n: &BigUint, p: u64) -> (u64, BigUint) {
    let pb = BigUint::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    if rest.is_zero() {
        return (0, rest);
    }
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return (e, rest);
        }
        rest = q;
        e += 1;
    }
}
