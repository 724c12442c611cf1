//! Batch sweeps over corpora and small-rank weight ranges.
//!
//! Every sweep takes an [`Execution`]. With the `parallel` feature the
//! parallel mode fans items out over rayon; without it both modes run the
//! same sequential loop. Results always come back in input order.

use num_rational::BigRational;

use crate::branching::{
    decompose_by_characters, gt_branch, restrict_diagonal, weyl_dim, BranchingResult, HighestWeight,
    WeightMap, WeightMultiset,
};
use crate::classify::{embeds_with, equivalent_with, isomorphic_with, DecisionOptions, Verdict};
use crate::constructor::{build_diagram, verify_diagram, ConstructionError, EmbeddingDiagram};
use crate::exhaustions::format::AlgebraInput;
use crate::exhaustions::{AlgebraProfile, ExhaustionDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Order-preserving map under the chosen execution mode.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Named corpus algebras: descriptors first, then two profile-only entries
/// (a dense algebra and a strongly non-symmetric one).
pub const CORPUS: [(&str, &str); 16] = [
    ("sl-2inf", "type: A\nn0: 2\ntail: periodic (2,0,0)\n"),
    ("sl-3x2inf", "type: A\nn0: 3\ntail: periodic (2,0,0)\n"),
    ("sl-3inf", "type: A\nn0: 2\ntail: periodic (3,0,0)\n"),
    ("sl-4inf", "type: A\nn0: 4\ntail: periodic (4,0,0)\n"),
    ("sl-sym", "type: A\nn0: 2\ntail: periodic (1,1,0)\n"),
    ("sl-weak", "type: A\nn0: 2\ntail: periodic (2,1,0)\n"),
    ("sl-finitary", "type: A\nn0: 2\ntail: periodic (1,0,1)\n"),
    ("sl-sparse", "type: A\nn0: 2\ntail: proportional (2,0,1)\n"),
    ("sl-primes", "type: A\nn0: 2\ntail: primes offset 1\n"),
    ("sl-primes-padded", "type: A\nn0: 2\nprefix: (1,0,1)\ntail: primes offset 1\n"),
    ("sp-2inf", "type: C\nn0: 2\ntail: periodic (2,0,0)\n"),
    ("sp-primes", "type: C\nn0: 2\ntail: primes offset 1\n"),
    ("so-2inf", "type: O\nn0: 4\ntail: periodic (2,0,0)\n"),
    ("so-finitary", "type: O\nn0: 3\ntail: periodic (1,0,1)\n"),
    (
        "sl-dense",
        "type: A\nS: 2^inf\nC: 2^inf\ndensity: dense\nsymmetry: one-sided\ndelta: [1/3,1/2]\n",
    ),
    (
        "sl-strong",
        "type: A\nS: default 1\nC: default 1\ndensity: pure\nsymmetry: strongly-non-symmetric\ndelta: 1\nsigma: [1/4,1/2]\n",
    ),
];

/// Thirty ordered pairs of [`CORPUS`] indices.
pub const CORPUS_PAIRS: [(usize, usize); 30] = [
    (0, 3),
    (0, 2),
    (0, 1),
    (12, 10),
    (0, 7),
    (7, 0),
    (8, 11),
    (11, 8),
    (6, 0),
    (13, 10),
    (0, 6),
    (4, 12),
    (12, 4),
    (4, 10),
    (5, 0),
    (0, 5),
    (5, 15),
    (15, 5),
    (8, 9),
    (9, 8),
    (14, 0),
    (0, 14),
    (14, 7),
    (7, 14),
    (10, 11),
    (11, 10),
    (2, 3),
    (1, 9),
    (15, 15),
    (6, 13),
];

pub fn corpus_inputs() -> Vec<AlgebraInput> {
    CORPUS
        .iter()
        .map(|(name, src)| AlgebraInput::parse(src).unwrap_or_else(|e| panic!("corpus entry {name}: {e}")))
        .collect()
}

pub fn corpus_profiles(precision: &BigRational) -> Vec<AlgebraProfile> {
    corpus_inputs().iter().map(|i| i.profile(precision)).collect()
}

pub fn corpus_descriptors() -> Vec<(usize, ExhaustionDescriptor)> {
    corpus_inputs()
        .into_iter()
        .enumerate()
        .filter_map(|(i, input)| match input {
            AlgebraInput::Descriptor(d) => Some((i, d)),
            AlgebraInput::Profile(_) => None,
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct PairVerdicts {
    pub source: usize,
    pub target: usize,
    pub iso: Verdict,
    pub embed: Verdict,
    pub embed_back: Verdict,
    pub equiv: Verdict,
}

/// All four relations on each pair.
pub fn verdict_sweep(
    profiles: &[AlgebraProfile],
    pairs: &[(usize, usize)],
    opts: &DecisionOptions,
    exec: Execution,
) -> Vec<PairVerdicts> {
    map(exec, pairs, |&(i, j)| {
        let (a, b) = (&profiles[i], &profiles[j]);
        PairVerdicts {
            source: i,
            target: j,
            iso: isomorphic_with(a, b, opts),
            embed: embeds_with(a, b, opts),
            embed_back: embeds_with(b, a, opts),
            equiv: equivalent_with(a, b, opts),
        }
    })
}

/// Embedding verdicts for every ordered pair, row-major.
pub fn embedding_matrix(profiles: &[AlgebraProfile], opts: &DecisionOptions, exec: Execution) -> Vec<Vec<Verdict>> {
    let n = profiles.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let flat = map(exec, &pairs, |&(i, j)| embeds_with(&profiles[i], &profiles[j], opts));
    let mut rows = Vec::with_capacity(n);
    let mut it = flat.into_iter();
    for _ in 0..n {
        rows.push(it.by_ref().take(n).collect());
    }
    rows
}

#[derive(Clone, Debug)]
pub struct DiagramOutcome {
    pub source: usize,
    pub target: usize,
    pub depth: usize,
    pub result: Result<EmbeddingDiagram, ConstructionError>,
    pub failures: Vec<String>,
}

/// Builds and verifies diagrams for each pair at each depth.
pub fn diagram_sweep(
    descriptors: &[(usize, ExhaustionDescriptor)],
    depths: &[usize],
    exec: Execution,
) -> Vec<DiagramOutcome> {
    let jobs: Vec<(usize, usize, usize)> = (0..descriptors.len())
        .flat_map(|a| (0..descriptors.len()).flat_map(move |b| depths.iter().map(move |&k| (a, b, k))))
        .collect();
    map(exec, &jobs, |&(a, b, depth)| {
        let (i, d1) = &descriptors[a];
        let (j, d2) = &descriptors[b];
        let result = build_diagram(d1, d2, depth);
        let failures = match &result {
            Ok(d) => verify_diagram(d).failures,
            Err(_) => Vec::new(),
        };
        DiagramOutcome {
            source: *i,
            target: *j,
            depth,
            result,
            failures,
        }
    })
}

/// One branching comparison: fast path against the character oracle.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub input: HighestWeight,
    pub label: String,
    pub fast: BranchingResult,
    pub oracle: BranchingResult,
    /// weyl_dim(input), which must equal the restricted total dimension.
    pub expected_dim: u64,
}

impl OracleCase {
    pub fn agrees(&self) -> bool {
        self.fast == self.oracle
    }

    pub fn conserves_dimension(&self) -> bool {
        self.fast.total_dim() == self.expected_dim && self.oracle.total_dim() == self.expected_dim
    }
}

/// gt_branch against the oracle for gl(n) → gl(n−1), 2 ≤ n ≤ max_rank.
pub fn gt_oracle_sweep(max_rank: usize, max_size: i64, exec: Execution) -> Vec<OracleCase> {
    let inputs: Vec<HighestWeight> = (2..=max_rank)
        .flat_map(|n| crate::branching::dominant_weights(n, max_size))
        .collect();
    map(exec, &inputs, |w| {
        let n = w.rank();
        let oracle = decompose_by_characters(&WeightMultiset::of_module(w), n - 1, &WeightMap::drop_last(n))
            .expect("within oracle limits");
        OracleCase {
            input: w.clone(),
            label: format!("gt {w}"),
            fast: gt_branch(w),
            oracle,
            expected_dim: weyl_dim(w),
        }
    })
}

/// restrict_diagonal against the oracle for k copies of gl(n) in gl(kn).
pub fn diagonal_oracle_sweep(max_k: usize, max_n: usize, max_size: i64, exec: Execution) -> Vec<OracleCase> {
    let inputs: Vec<(usize, usize, HighestWeight)> = (1..=max_k)
        .flat_map(|k| (1..=max_n).map(move |n| (k, n)))
        .flat_map(|(k, n)| {
            crate::branching::dominant_weights(k * n, max_size)
                .into_iter()
                .map(move |w| (k, n, w))
        })
        .collect();
    map(exec, &inputs, |(k, n, w)| {
        let oracle = decompose_by_characters(&WeightMultiset::of_module(w), *n, &WeightMap::diagonal(*k, 0, 0, *n))
            .expect("within oracle limits");
        OracleCase {
            input: w.clone(),
            label: format!("diag k={k} n={n} {w}"),
            fast: restrict_diagonal(w, *k, *n).expect("rank matches"),
            oracle,
            expected_dim: weyl_dim(w),
        }
    })
}
