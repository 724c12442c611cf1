//! Small-rank representation theory of gl(n)/sl(n): Weyl dimensions,
//! Gelfand–Tsetlin and Littlewood–Richardson branching, Dynkin indices, and
//! a brute-force character oracle.

mod lr;
pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exhaustions::SignatureTriple;
use crate::text::{ParseError, Scanner};
pub use lr::{generalized_lr, lr_coefficient, lr_product, restrict_diagonal};
pub use oracle::{decompose_by_characters, OracleError, WeightMap, WeightMultiset};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BranchingError {
    #[error("weight entries must be weakly decreasing and nonnegative: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
}

/// Dominant gl(n) weight λ₁ ≥ … ≥ λₙ ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    entries: Vec<i64>,
}

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, BranchingError> {
        let decreasing = entries.windows(2).all(|w| w[0] >= w[1]);
        let nonneg = entries.last().is_none_or(|&x| x >= 0);
        if decreasing && nonneg {
            Ok(HighestWeight { entries })
        } else {
            Err(BranchingError::NotDominant(entries))
        }
    }

    pub fn zero(rank: usize) -> Self {
        HighestWeight {
            entries: vec![0; rank],
        }
    }

    /// Partition padded with zeros to `rank`.
    pub fn from_partition(parts: &[u32], rank: usize) -> Result<Self, BranchingError> {
        if parts.iter().filter(|&&p| p > 0).count() > rank {
            return Err(BranchingError::RankMismatch(format!(
                "partition {parts:?} has more than {rank} rows"
            )));
        }
        let mut entries: Vec<i64> = parts.iter().filter(|&&p| p > 0).map(|&p| i64::from(p)).collect();
        entries.resize(rank, 0);
        HighestWeight::new(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn size(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Nonzero parts as a partition.
    pub fn partition(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|&&x| x > 0)
            .map(|&x| x as u32)
            .collect()
    }

    /// sl-level class: the difference vector (λ₁−λ₂, …, λ_{n−1}−λ_n).
    pub fn differences(&self) -> Vec<i64> {
        self.entries.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn spread(&self) -> i64 {
        match (self.entries.first(), self.entries.last()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for HighestWeight {
    type Err = ParseError;

    /// Literal `[2,1,0]`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut sc = Scanner::new(s, 1, 1);
        sc.expect('[')?;
        let mut entries = Vec::new();
        if !sc.eat(']') {
            loop {
                entries.push(sc.signed()?);
                if sc.eat(']') {
                    break;
                }
                sc.expect(',')?;
            }
        }
        sc.finish()?;
        HighestWeight::new(entries).map_err(|e| ParseError::new(1, 1, e.to_string()))
    }
}

/// Decomposition of a restricted module: highest weight → multiplicity.
/// When the restriction involves dual factors, all weights are shifted by
/// the common amount `det_shift` (a twist by a power of the determinant)
/// so that keys stay nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingResult {
    pub multiplicities: BTreeMap<HighestWeight, u64>,
    pub ambient_rank: usize,
    pub target_rank: usize,
    pub det_shift: i64,
}

impl BranchingResult {
    pub fn new(ambient_rank: usize, target_rank: usize) -> Self {
        BranchingResult {
            multiplicities: BTreeMap::new(),
            ambient_rank,
            target_rank,
            det_shift: 0,
        }
    }

    pub fn add(&mut self, w: HighestWeight, mult: u64) {
        if mult > 0 {
            *self.multiplicities.entry(w).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, w: &HighestWeight) -> u64 {
        self.multiplicities.get(w).copied().unwrap_or(0)
    }

    /// Σ mult·dim.
    pub fn total_dim(&self) -> u64 {
        self.multiplicities
            .iter()
            .map(|(w, m)| m * weyl_dim(w))
            .sum()
    }

    /// Same decomposition viewed through sl: keyed by difference vectors.
    pub fn sl_classes(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        for (w, m) in &self.multiplicities {
            *out.entry(w.differences()).or_insert(0) += m;
        }
        out
    }
}

impl fmt::Display for BranchingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, m) in &self.multiplicities {
            writeln!(f, "{w} {m}")?;
        }
        Ok(())
    }
}

/// ∏_{i<j} (λ_i − λ_j + j − i)/(j − i).
pub fn weyl_dim(w: &HighestWeight) -> u64 {
    let e = w.entries();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            num *= (e[i] - e[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    (num / den).to_u64().expect("dimension fits in u64")
}

/// All μ interlacing λ: λ₁ ≥ μ₁ ≥ λ₂ ≥ … ≥ μ_n ≥ λ_{n+1}, each once.
pub fn gt_branch(w: &HighestWeight) -> BranchingResult {
    let lam = w.entries();
    assert!(!lam.is_empty(), "rank must be at least 1");
    let n = lam.len() - 1;
    let mut result = BranchingResult::new(lam.len(), n);
    let mut current = Vec::with_capacity(n);
    fn rec(lam: &[i64], i: usize, current: &mut Vec<i64>, out: &mut BranchingResult) {
        if i == lam.len() - 1 {
            out.add(HighestWeight::new(current.clone()).expect("interlacing is dominant"), 1);
            return;
        }
        for mu in lam[i + 1]..=lam[i] {
            current.push(mu);
            rec(lam, i + 1, current, out);
            current.pop();
        }
    }
    rec(lam, 0, &mut current, &mut result);
    result
}

/// Applies one Gelfand–Tsetlin step to every component.
pub fn gt_branch_result(b: &BranchingResult) -> BranchingResult {
    let mut out = BranchingResult::new(b.ambient_rank, b.target_rank - 1);
    out.det_shift = b.det_shift;
    for (w, m) in &b.multiplicities {
        for (mu, k) in gt_branch(w).multiplicities {
            out.add(mu, m * k);
        }
    }
    out
}

/// Restriction of F^λ along the diagonal signature (l, 0, z) into gl(n):
/// z Gelfand–Tsetlin steps followed by the l-fold diagonal.
pub fn restrict_signature(w: &HighestWeight, l: usize, z: usize, n: usize) -> Result<BranchingResult, BranchingError> {
    if w.rank() != l * n + z {
        return Err(BranchingError::RankMismatch(format!(
            "rank {} differs from {l}·{n} + {z}",
            w.rank()
        )));
    }
    let mut stage = BranchingResult::new(w.rank(), w.rank());
    stage.add(w.clone(), 1);
    for _ in 0..z {
        stage = gt_branch_result(&stage);
    }
    let mut out = BranchingResult::new(w.rank(), n);
    for (mu, m) in &stage.multiplicities {
        for (nu, k) in restrict_diagonal(mu, l, n)?.multiplicities {
            out.add(nu, m * k);
        }
    }
    Ok(out)
}

/// max over components of λ₁ − λ_n.
pub fn d_of(b: &BranchingResult) -> i64 {
    b.multiplicities
        .keys()
        .map(HighestWeight::spread)
        .max()
        .expect("nonempty decomposition")
}

/// Dynkin index of the sl(n)-module F^λ:
/// (dim F^λ / (n² − 1))·⟨λ̃, λ̃ + 2ρ⟩ with λ̃ the trace-free part of λ.
pub fn dynkin_index_module(w: &HighestWeight) -> BigRational {
    let n = w.rank() as i64;
    assert!(n >= 2, "sl(n) needs n >= 2");
    let total: i64 = w.size();
    // Work with n·λ̃ to stay integral.
    let scaled: Vec<i64> = w.entries().iter().map(|&x| n * x - total).collect();
    let two_rho: Vec<i64> = (0..n).map(|i| n - 1 - 2 * i).collect();
    let form: i64 = scaled
        .iter()
        .zip(&two_rho)
        .map(|(&a, &r)| a * (a + n * r))
        .sum();
    let dim = weyl_dim(w) as i64;
    BigRational::new((dim * form).into(), (n * n * (n * n - 1)).into())
}

pub fn index_of_signature(sig: &SignatureTriple) -> u64 {
    sig.l + sig.r
}

/// Σ mult·index over a decomposition.
pub fn index_of_decomposition(b: &BranchingResult) -> BigRational {
    b.multiplicities
        .iter()
        .map(|(w, &m)| dynkin_index_module(w) * BigRational::from_integer(m.into()))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// Dominant weights of gl(rank) with nonnegative entries and |λ| ≤ max_size.
pub fn dominant_weights(rank: usize, max_size: i64) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    fn rec(rank: usize, budget: i64, cap: i64, current: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        if current.len() == rank {
            out.push(HighestWeight::new(current.clone()).expect("built decreasing"));
            return;
        }
        for x in 0..=cap.min(budget) {
            current.push(x);
            rec(rank, budget - x, x, current, out);
            current.pop();
        }
    }
    rec(rank, max_size, max_size, &mut Vec::new(), &mut out);
    out.sort();
    out
}
