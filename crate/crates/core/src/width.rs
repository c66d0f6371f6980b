//! The width invariant: the least number of ladders whose sum is a given
//! multisegment.
//!
//! Two independent routes are provided. [`width_chain`] computes the longest
//! containment chain (an antichain for the strict "both endpoints increase"
//! order) by a dynamic program, and [`min_ladder_cover`] builds an optimal
//! chain cover of that strict order from a maximum bipartite matching. By
//! Dilworth's theorem the two numbers agree; [`width_bruteforce`] is a third,
//! exhaustive check for small inputs.

use crate::error::{Error, Result};
use crate::segments::{b_stat, contains, precedes, preceq_prime, strictly_below, Multisegment, Segment};

/// Default bound on `#m` for [`width_bruteforce`].
pub const BRUTEFORCE_BOUND: usize = 8;

/// A decomposition of a multisegment into ladders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCover {
    pub parts: Vec<Multisegment>,
}

impl LadderCover {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn total(&self) -> Multisegment {
        self.parts
            .iter()
            .fold(Multisegment::empty(), |acc, p| acc.plus(p))
    }
}

/// Begins and ends both strictly increase along the canonical order. The
/// empty multisegment is a ladder.
pub fn is_ladder(m: &Multisegment) -> bool {
    m.segments()
        .windows(2)
        .all(|w| strictly_below(&w[0], &w[1]))
}

/// Longest chain `d_1 ⊆ ... ⊆ d_k` of segments taken from `m` with
/// multiplicity, innermost first.
pub fn longest_nested_chain(m: &Multisegment) -> Vec<Segment> {
    let mut segs: Vec<Segment> = m.segments().to_vec();
    // shorter segments first so every container comes after its contents
    segs.sort_by_key(|s| (s.len(), *s));
    let n = segs.len();
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            if contains(&segs[i], &segs[j]) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                prev[i] = j;
            }
        }
    }
    let Some(mut at) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut chain = vec![segs[at]];
    while prev[at] != usize::MAX {
        at = prev[at];
        chain.push(segs[at]);
    }
    chain.reverse();
    chain
}

/// Width as the length of the longest containment chain.
pub fn width_chain(m: &Multisegment) -> usize {
    longest_nested_chain(m).len()
}

/// An optimal ladder cover. Copies of segments are vertices of the strict
/// order; a maximum matching of the split bipartite graph links each copy to
/// its successor in a chain, and unmatched copies start new ladders.
pub fn min_ladder_cover(m: &Multisegment) -> LadderCover {
    let segs = m.segments();
    let n = segs.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| strictly_below(&segs[i], &segs[j])).collect())
        .collect();

    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut match_right);
    }
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut has_pred = vec![false; n];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = *u {
            succ[u] = Some(v);
            has_pred[v] = true;
        }
    }

    let mut parts = Vec::new();
    for start in (0..n).filter(|&i| !has_pred[i]) {
        let mut part = Vec::new();
        let mut at = Some(start);
        while let Some(i) = at {
            part.push(segs[i]);
            at = succ[i];
        }
        parts.push(Multisegment::new(part));
    }
    LadderCover { parts }
}

// Kuhn's augmenting path step.
fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].map_or(true, |w| augment(w, adj, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Minimal number of ladders over every partition of `m` into ladders.
/// Exponential; refuses inputs with more than `bound` segments.
pub fn width_bruteforce(m: &Multisegment, bound: usize) -> Result<usize> {
    if m.len() > bound {
        return Err(Error::domain(format!(
            "brute-force width limited to {bound} segments, got {}",
            m.len()
        )));
    }
    let mut blocks: Vec<Vec<Segment>> = Vec::new();
    let mut best = m.len();
    partitions(m.segments(), 0, &mut blocks, &mut best);
    Ok(best)
}

fn block_is_ladder(block: &[Segment]) -> bool {
    let mut sorted = block.to_vec();
    sorted.sort_by_key(|s| s.begin());
    sorted
        .windows(2)
        .all(|w| w[0].begin() < w[1].begin() && w[0].end() < w[1].end())
}

fn partitions(segs: &[Segment], i: usize, blocks: &mut Vec<Vec<Segment>>, best: &mut usize) {
    if i == segs.len() {
        *best = (*best).min(blocks.len());
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(segs[i]);
        if block_is_ladder(&blocks[b]) {
            partitions(segs, i + 1, blocks, best);
        }
        blocks[b].pop();
    }
    blocks.push(vec![segs[i]]);
    partitions(segs, i + 1, blocks, best);
    blocks.pop();
}

/// Splits `m - Σ chain` into the part lying weakly above some chain element
/// in the `⪯'` order (`m1`) and the rest (`m2`). With this split the
/// co-standard module of `m` factors as `λ(m2) × L(chain) × λ(m1)`.
pub fn chain_split(m: &Multisegment, chain: &[Segment]) -> Result<(Multisegment, Multisegment)> {
    if chain.windows(2).any(|w| !contains(&w[1], &w[0])) {
        return Err(Error::domain("chain is not increasing for containment"));
    }
    let chain_ms = Multisegment::new(chain.iter().copied());
    let rest = m
        .minus(&chain_ms)
        .ok_or_else(|| Error::domain(format!("chain {chain_ms} is not contained in {m}")))?;
    let above = |d: &Segment| chain.iter().any(|c| preceq_prime(c, d));
    let m1 = rest.restrict(above);
    let m2 = rest.restrict(|d| !above(d));
    Ok((m1, m2))
}

/// No segment of `m - m2` precedes a segment of `m - m1`.
pub fn chain_split_is_unlinked(m: &Multisegment, m1: &Multisegment, m2: &Multisegment) -> bool {
    let (Some(left), Some(right)) = (m.minus(m2), m.minus(m1)) else {
        return false;
    };
    left.iter().all(|d| right.iter().all(|d2| !precedes(d, d2)))
}

/// For a longest containment chain `[a_i, b_i]`, the multisegment
/// `Σ [a_max, b_i]`. Its support has multiplicity exactly `ω(m)` at its
/// minimal point.
pub fn witness_component(m: &Multisegment) -> Result<Multisegment> {
    if m.is_empty() {
        return Err(Error::domain("witness of the empty multisegment"));
    }
    let chain = longest_nested_chain(m);
    let inner_begin = chain[0].begin();
    let witness = Multisegment::new(
        chain
            .iter()
            .map(|d| Segment::new(inner_begin, d.end()).expect("inner begin lies in every segment")),
    );
    debug_assert_eq!(b_stat(&witness.support()).map(|(_, b)| b as usize), Ok(chain.len()));
    Ok(witness)
}
