use std::collections::BTreeMap;

use super::{BranchingError, BranchingResult, HighestWeight};

type Partition = Vec<u32>;

fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

fn contains(outer: &[u32], inner: &[u32]) -> bool {
    inner.len() <= outer.len() && inner.iter().zip(outer).all(|(a, b)| a <= b)
}

fn part(p: &[u32], i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

/// Counts LR tableaux of shape λ/μ and content ν: semistandard fillings
/// whose reverse reading word (rows top to bottom, right to left) is a
/// lattice word.
fn lr_count(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    if size(lambda) != size(mu) + size(nu) || !contains(lambda, mu) || !contains(lambda, nu) {
        return 0;
    }
    // cells in reading order
    let mut cells = Vec::new();
    for r in 0..lambda.len() {
        for c in (part(mu, r)..lambda[r]).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = lambda.first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0u32; width]; lambda.len()];
    let mut counts = vec![0u32; nu.len() + 1];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &[u32],
        mu: &[u32],
        nu: &[u32],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        // rows weakly increase left to right; we fill right to left
        let upper = if (c as u32) + 1 < lambda[r] {
            grid[r][c + 1]
        } else {
            nu.len() as u32
        };
        // columns strictly increase downwards
        let lower = if r > 0 && (c as u32) >= part(mu, r - 1) {
            grid[r - 1][c] + 1
        } else {
            1
        };
        let mut total = 0;
        for v in lower..=upper {
            let vi = v as usize;
            if counts[vi] >= nu[vi - 1] {
                continue;
            }
            if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
                continue;
            }
            counts[vi] += 1;
            grid[r][c] = v;
            total += rec(idx + 1, cells, lambda, mu, nu, grid, counts);
            counts[vi] -= 1;
        }
        grid[r][c] = 0;
        total
    }

    rec(0, &cells, lambda, mu, nu, &mut grid, &mut counts)
}

/// c^λ_{μν}.
pub fn lr_coefficient(mu: &HighestWeight, nu: &HighestWeight, lambda: &HighestWeight) -> u64 {
    lr_count(&lambda.partition(), &mu.partition(), &nu.partition())
}

/// Partitions of `n` with at most `rows` parts, each part at most `cap`.
fn partitions(n: u32, rows: usize, cap: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(n: u32, rows: usize, cap: u32, current: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(current.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for x in (1..=cap.min(n)).rev() {
            current.push(x);
            rec(n - x, rows - 1, x, current, out);
            current.pop();
        }
    }
    rec(n, rows, cap, &mut Vec::new(), &mut out);
    out
}

/// F^μ ⊗ F^ν expanded in gl(rows): λ ↦ c^λ_{μν}.
pub fn lr_product(mu: &[u32], nu: &[u32], rows: usize) -> BTreeMap<Partition, u64> {
    let total = size(mu) + size(nu);
    let cap = part(mu, 0) + part(nu, 0);
    partitions(total, rows, cap)
        .into_iter()
        .filter_map(|lambda| {
            let c = lr_count(&lambda, mu, nu);
            (c > 0).then_some((lambda, c))
        })
        .collect()
}

/// Expansion of F^{μ₁} ⊗ ⋯ ⊗ F^{μ_k}, keeping only λ accepted by `keep`.
fn product_expansion(
    mus: &[Partition],
    rows: usize,
    keep: impl Fn(&Partition) -> bool,
) -> BTreeMap<Partition, u64> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::from([(Vec::new(), 1)]);
    for mu in mus {
        let mut next = BTreeMap::new();
        for (kappa, c) in &acc {
            for (lambda, d) in lr_product(kappa, mu, rows) {
                if keep(&lambda) {
                    *next.entry(lambda).or_insert(0) += c * d;
                }
            }
        }
        acc = next;
    }
    acc
}

/// c^λ_{μ₁…μ_k}: multiplicity of F^λ in F^{μ₁} ⊗ ⋯ ⊗ F^{μ_k}.
pub fn generalized_lr(mus: &[HighestWeight], lambda: &HighestWeight) -> u64 {
    let target = lambda.partition();
    let parts: Vec<Partition> = mus.iter().map(HighestWeight::partition).collect();
    if parts.iter().map(|p| size(p)).sum::<u32>() != size(&target) {
        return 0;
    }
    let expansion = product_expansion(&parts, target.len(), |p| contains(&target, p));
    expansion.get(&target).copied().unwrap_or(0)
}

/// Restriction of F^λ_{kn} to gl(n) embedded diagonally k times:
/// ν ↦ Σ_{μ₁…μ_k} c^λ_{μ₁…μ_k}·c^ν_{μ₁…μ_k}.
pub fn restrict_diagonal(
    lambda: &HighestWeight,
    k: usize,
    n: usize,
) -> Result<BranchingResult, BranchingError> {
    if lambda.rank() != k * n {
        return Err(BranchingError::RankMismatch(format!(
            "rank {} differs from {k}·{n}",
            lambda.rank()
        )));
    }
    let target = lambda.partition();
    let total = size(&target);
    // candidate factors: partitions inside λ with at most n rows
    let mut candidates: Vec<Partition> = Vec::new();
    for s in 0..=total {
        candidates.extend(
            partitions(s, n, part(&target, 0))
                .into_iter()
                .filter(|p| contains(&target, p)),
        );
    }
    let mut result = BranchingResult::new(k * n, n);
    let mut tuple: Vec<Partition> = Vec::with_capacity(k);

    fn rec(
        remaining: u32,
        k: usize,
        n: usize,
        candidates: &[Partition],
        target: &Partition,
        tuple: &mut Vec<Partition>,
        result: &mut BranchingResult,
    ) {
        if tuple.len() == k {
            if remaining != 0 {
                return;
            }
            let outer = product_expansion(tuple, target.len(), |p| contains(target, p));
            let a = outer.get(target).copied().unwrap_or(0);
            if a == 0 {
                return;
            }
            for (nu, b) in product_expansion(tuple, n, |_| true) {
                let w = HighestWeight::from_partition(&nu, n).expect("at most n rows");
                result.add(w, a * b);
            }
            return;
        }
        for p in candidates {
            let s = size(p);
            if s <= remaining {
                tuple.push(p.clone());
                rec(remaining - s, k, n, candidates, target, tuple, result);
                tuple.pop();
            }
        }
    }

    rec(total, k, n, &candidates, &target, &mut tuple, &mut result);
    Ok(result)
}
