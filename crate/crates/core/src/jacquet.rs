//! Two-block Jacquet restrictions of ladder representations and of products
//! of ladders.
//!
//! For a ladder `Σ [a_j, b_j]` listed with ends decreasing, the
//! semisimplified restriction to a two-block Levi is the sum over integers
//! `c_k < ... < c_1` with `a_j <= c_j <= b_j + 1` of
//! `L(Σ [c_j, b_j]) ⊗ L(Σ [a_j, c_j - 1])`, each with multiplicity one. The
//! left block has size `Σ (b_j - c_j + 1)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::segments::{b_stat, Multisegment, Segment, SupportVector};
use crate::width::is_ladder;

/// One summand `left ⊗ right` of a two-block restriction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacquetTerm {
    pub left: Multisegment,
    pub right: Multisegment,
    pub multiplicity: u32,
}

impl std::fmt::Display for JacquetTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ⊗ {}", self.left, self.right)
    }
}

fn require_ladder(m: &Multisegment) -> Result<()> {
    if is_ladder(m) {
        Ok(())
    } else {
        Err(Error::domain(format!("{m} is not a ladder")))
    }
}

/// The restriction of `L(m)` whose left block has size `d`.
pub fn jacquet_ladder(m: &Multisegment, d: u32) -> Result<Vec<JacquetTerm>> {
    require_ladder(m)?;
    if d > m.degree() {
        return Err(Error::domain(format!(
            "cut {d} exceeds the degree {} of {m}",
            m.degree()
        )));
    }
    // ends decreasing
    let segs: Vec<Segment> = m.segments().iter().rev().copied().collect();
    let mut cuts = Vec::with_capacity(segs.len());
    let mut out = Vec::new();
    choose_cuts(&segs, d, i32::MAX, &mut cuts, &mut out);
    out.sort();
    Ok(out)
}

fn choose_cuts(segs: &[Segment], remaining: u32, upper: i32, cuts: &mut Vec<i32>, out: &mut Vec<JacquetTerm>) {
    let j = cuts.len();
    if j == segs.len() {
        if remaining == 0 {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (s, &c) in segs.iter().zip(cuts.iter()) {
                left.extend(Segment::maybe(c, s.end()));
                right.extend(Segment::maybe(s.begin(), c - 1));
            }
            out.push(JacquetTerm {
                left: Multisegment::new(left),
                right: Multisegment::new(right),
                multiplicity: 1,
            });
        }
        return;
    }
    let s = segs[j];
    // capacity still available in the later (lower) segments
    let tail: u32 = segs[j + 1..].iter().map(Segment::len).sum();
    let hi = (s.end() + 1).min(upper.saturating_sub(1));
    for c in s.begin()..=hi {
        let taken = (s.end() - c + 1) as u32;
        if taken > remaining || remaining - taken > tail {
            continue;
        }
        cuts.push(c);
        choose_cuts(segs, remaining - taken, c, cuts, out);
        cuts.pop();
    }
}

/// All cuts of `L(m)`, for every left-block size.
pub fn jacquet_ladder_all(m: &Multisegment) -> Result<Vec<JacquetTerm>> {
    let mut out = Vec::new();
    for d in 0..=m.degree() {
        out.extend(jacquet_ladder(m, d)?);
    }
    Ok(out)
}

/// Pairs of terms of `L(m1)` and `L(m2)` whose left blocks add up to `d`.
/// This is the geometric-lemma expansion
/// `r(L(m1) × L(m2)) = Σ (τ1 × τ2) ⊗ (δ1 × δ2)`.
pub fn geometric_lemma_cut(m1: &Multisegment, m2: &Multisegment, d: u32) -> Result<Vec<(JacquetTerm, JacquetTerm)>> {
    require_ladder(m1)?;
    require_ladder(m2)?;
    if d > m1.degree() + m2.degree() {
        return Err(Error::domain(format!("cut {d} exceeds the total degree")));
    }
    let mut out = Vec::new();
    for d1 in d.saturating_sub(m2.degree())..=d.min(m1.degree()) {
        let left = jacquet_ladder(m1, d1)?;
        let right = jacquet_ladder(m2, d - d1)?;
        for t1 in &left {
            for t2 in &right {
                out.push((t1.clone(), t2.clone()));
            }
        }
    }
    Ok(out)
}

/// Every way to cut `m` into `positions` consecutive blocks, left to right.
pub fn ladder_pieces(m: &Multisegment, positions: usize) -> Result<BTreeSet<Vec<Multisegment>>> {
    require_ladder(m)?;
    let mut out = BTreeSet::new();
    if positions == 0 {
        if m.is_empty() {
            out.insert(Vec::new());
        }
        return Ok(out);
    }
    if positions == 1 {
        out.insert(vec![m.clone()]);
        return Ok(out);
    }
    for t in jacquet_ladder_all(m)? {
        for rest in ladder_pieces(&t.right, positions - 1)? {
            let mut v = Vec::with_capacity(positions);
            v.push(t.left.clone());
            v.extend(rest);
            out.insert(v);
        }
    }
    Ok(out)
}

/// Supports of the blocks of Jacquet components of `L(m_1) × ... × L(m_k)`
/// restricted to `positions` blocks: each ladder is cut independently and
/// the pieces at each position are added.
pub fn component_supports(ms: &[Multisegment], positions: usize) -> Result<BTreeSet<Vec<SupportVector>>> {
    if positions == 0 {
        return Err(Error::domain("positions must be at least 1"));
    }
    let mut acc: BTreeSet<Vec<SupportVector>> = BTreeSet::new();
    acc.insert(vec![SupportVector::zero(); positions]);
    for m in ms {
        let pieces = ladder_pieces(m, positions)?;
        let piece_supports: BTreeSet<Vec<SupportVector>> = pieces
            .iter()
            .map(|p| p.iter().map(Multisegment::support).collect())
            .collect();
        let mut next = BTreeSet::new();
        for tuple in &acc {
            for ps in &piece_supports {
                next.insert(tuple.iter().zip(ps).map(|(a, b)| a.plus(b)).collect());
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Upper bound for `j(L(m_1) × ... × L(m_k))`: the largest multiplicity of
/// the minimal support point over all blocks of all Jacquet components.
///
/// Three positions suffice: any block of a finer cut is the middle block of
/// a three-block cut.
pub fn j_upper_product(ms: &[Multisegment]) -> Result<u32> {
    for m in ms {
        require_ladder(m)?;
    }
    let total: u32 = ms.iter().map(Multisegment::degree).sum();
    let mut best = 0;
    for positions in 1..=3.min(total.max(1) as usize) {
        for tuple in component_supports(ms, positions)? {
            for s in tuple.iter().filter(|s| !s.is_zero()) {
                best = best.max(b_stat(s)?.1);
            }
        }
    }
    Ok(best)
}
