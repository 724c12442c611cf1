//! Character oracle: weights of F^λ by enumerating semistandard tableaux,
//! pushed forward along a linear weight map, then decomposed by repeatedly
//! stripping the lexicographically highest weight. Shares no code with the
//! LR or Gelfand–Tsetlin paths.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::{BranchingResult, HighestWeight};

pub const MAX_ORACLE_RANK: usize = 6;
pub const MAX_ORACLE_DIM: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle limits exceeded: {0}")]
    OracleTooLarge(String),
    #[error("weight map does not fit the module: {0}")]
    Shape(String),
}

/// Multiset of gl(rank) weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    rank: usize,
    weights: BTreeMap<Vec<i64>, u64>,
}

impl WeightMultiset {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.weights
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Weights of F^λ: contents of semistandard tableaux of shape λ with
    /// entries 1..=rank (shifted by λ_n for the determinant part).
    pub fn of_module(w: &HighestWeight) -> Self {
        let rank = w.rank();
        let base = w.entries().last().copied().unwrap_or(0);
        let shape: Vec<usize> = w
            .entries()
            .iter()
            .map(|&x| (x - base) as usize)
            .filter(|&x| x > 0)
            .collect();
        let mut weights = BTreeMap::new();
        let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
        let mut content = vec![0i64; rank];

        fn fill(
            r: usize,
            c: usize,
            shape: &[usize],
            rank: usize,
            rows: &mut Vec<Vec<usize>>,
            content: &mut Vec<i64>,
            base: i64,
            out: &mut BTreeMap<Vec<i64>, u64>,
        ) {
            if r == shape.len() {
                let weight: Vec<i64> = content.iter().map(|&x| x + base).collect();
                *out.entry(weight).or_insert(0) += 1;
                return;
            }
            let (nr, nc) = if c + 1 == shape[r] { (r + 1, 0) } else { (r, c + 1) };
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            for v in left.max(above)..=rank {
                rows[r][c] = v;
                content[v - 1] += 1;
                fill(nr, nc, shape, rank, rows, content, base, out);
                content[v - 1] -= 1;
            }
        }

        if shape.is_empty() {
            weights.insert(vec![base; rank], 1);
        } else {
            fill(0, 0, &shape, rank, &mut rows, &mut content, base, &mut weights);
        }
        WeightMultiset { rank, weights }
    }

    pub fn natural(rank: usize) -> Self {
        Self::of_module(&HighestWeight::from_partition(&[1], rank).expect("rank >= 1"))
    }
}

/// Linear map on weights induced by a homomorphism gl(target) → gl(source):
/// `rows[i]` is the image of the i-th coordinate weight of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    target_rank: usize,
    rows: Vec<Vec<i64>>,
}

impl WeightMap {
    pub fn new(target_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self, OracleError> {
        if rows.iter().any(|r| r.len() != target_rank) {
            return Err(OracleError::Shape("row length differs from target rank".into()));
        }
        Ok(WeightMap { target_rank, rows })
    }

    pub fn source_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// gl(n) ⊂ gl(n+1) in the upper-left corner.
    pub fn drop_last(source_rank: usize) -> Self {
        let n = source_rank - 1;
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rows.push(vec![0; n]);
        WeightMap { target_rank: n, rows }
    }

    /// Diagonal embedding of signature (l, r, z) of gl(n) into gl((l+r)n+z):
    /// l blocks of the natural module, r of its dual, z trivial rows.
    pub fn diagonal(l: usize, r: usize, z: usize, n: usize) -> Self {
        let mut rows = Vec::new();
        for sign in std::iter::repeat_n(1i64, l).chain(std::iter::repeat_n(-1i64, r)) {
            for i in 0..n {
                rows.push((0..n).map(|j| if i == j { sign } else { 0 }).collect());
            }
        }
        rows.extend(std::iter::repeat_n(vec![0; n], z));
        WeightMap { target_rank: n, rows }
    }

    /// The map gl(n) → gl(dim U) given by a representation U of gl(n): the
    /// coordinate weights of gl(dim U) go to the weights of U.
    pub fn from_module(w: &HighestWeight) -> Self {
        let mut rows = Vec::new();
        for (weight, &m) in WeightMultiset::of_module(w).weights() {
            for _ in 0..m {
                rows.push(weight.clone());
            }
        }
        WeightMap {
            target_rank: w.rank(),
            rows,
        }
    }

    /// `self` after `inner`: first restrict along `self`, then along `inner`.
    pub fn then(&self, inner: &WeightMap) -> Result<WeightMap, OracleError> {
        if self.target_rank != inner.source_rank() {
            return Err(OracleError::Shape("ranks do not chain".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..inner.target_rank)
                    .map(|j| row.iter().zip(&inner.rows).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        Ok(WeightMap {
            target_rank: inner.target_rank,
            rows,
        })
    }

    pub fn apply(&self, module: &WeightMultiset) -> Result<WeightMultiset, OracleError> {
        if module.rank != self.source_rank() {
            return Err(OracleError::Shape(format!(
                "module of rank {} under a map from rank {}",
                module.rank,
                self.source_rank()
            )));
        }
        let mut weights = BTreeMap::new();
        for (w, &m) in &module.weights {
            let image: Vec<i64> = (0..self.target_rank)
                .map(|j| w.iter().zip(&self.rows).map(|(a, r)| a * r[j]).sum())
                .collect();
            *weights.entry(image).or_insert(0) += m;
        }
        Ok(WeightMultiset {
            rank: self.target_rank,
            weights,
        })
    }
}

/// Character of an arbitrary dominant gl weight (entries may be negative).
fn character(mu: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let shift = mu.last().copied().unwrap_or(0);
    let shifted: Vec<i64> = mu.iter().map(|&x| x - shift).collect();
    let hw = HighestWeight::new(shifted).expect("dominant");
    WeightMultiset::of_module(&hw)
        .weights
        .into_iter()
        .map(|(w, m)| (w.into_iter().map(|x| x + shift).collect(), m))
        .collect()
}

/// Decomposes the restriction of `module` along `map` into irreducibles.
pub fn decompose_by_characters(
    module: &WeightMultiset,
    target_rank: usize,
    map: &WeightMap,
) -> Result<BranchingResult, OracleError> {
    if target_rank > MAX_ORACLE_RANK {
        return Err(OracleError::OracleTooLarge(format!(
            "target rank {target_rank} exceeds {MAX_ORACLE_RANK}"
        )));
    }
    if module.dim() > MAX_ORACLE_DIM {
        return Err(OracleError::OracleTooLarge(format!(
            "module dimension {} exceeds {MAX_ORACLE_DIM}",
            module.dim()
        )));
    }
    if map.target_rank() != target_rank {
        return Err(OracleError::Shape("map lands in a different rank".into()));
    }
    let pushed = map.apply(module)?;
    let mut remaining: BTreeMap<Vec<i64>, i64> = pushed
        .weights
        .into_iter()
        .map(|(w, m)| (w, m as i64))
        .collect();
    let mut cache: HashMap<Vec<i64>, BTreeMap<Vec<i64>, u64>> = HashMap::new();
    let mut components: Vec<(Vec<i64>, u64)> = Vec::new();

    while let Some((top, &m)) = remaining.iter().next_back() {
        let top = top.clone();
        assert!(m > 0, "character stripping left a negative multiplicity");
        assert!(
            top.windows(2).all(|w| w[0] >= w[1]),
            "highest remaining weight {top:?} is not dominant"
        );
        let ch = cache.entry(top.clone()).or_insert_with(|| character(&top));
        for (w, &k) in ch.iter() {
            let entry = remaining.entry(w.clone()).or_insert(0);
            *entry -= m * k as i64;
            assert!(*entry >= 0, "character stripping went negative at {w:?}");
            if *entry == 0 {
                remaining.remove(w);
            }
        }
        components.push((top, m as u64));
    }

    let min_entry = components
        .iter()
        .flat_map(|(w, _)| w.iter().copied())
        .min()
        .unwrap_or(0);
    let shift = if min_entry < 0 { -min_entry } else { 0 };
    let mut result = BranchingResult::new(module.rank(), target_rank);
    result.det_shift = shift;
    for (w, m) in components {
        let hw = HighestWeight::new(w.into_iter().map(|x| x + shift).collect()).expect("dominant");
        result.add(hw, m);
    }
    Ok(result)
}

/// Index of a restricted module from its weights alone: Σ (μ₁ − μ₂)² / 2.
pub fn index_from_weights(weights: &WeightMultiset) -> BigRational {
    assert!(weights.rank() >= 2, "index needs rank >= 2");
    let total: i64 = weights
        .weights()
        .iter()
        .map(|(w, &m)| (w[0] - w[1]).pow(2) * m as i64)
        .sum();
    BigRational::new(total.into(), 2.into())
}
