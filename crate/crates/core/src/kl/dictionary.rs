//! Multisegments with a fixed support as permutations.
//!
//! Fix the support `d = (d_i)` on points `p_1 < … < p_r` and put
//! `n = Σ d_i`. A multisegment `m` determines the `r × r` contingency table
//!
//! ```text
//! T[i][j]   = #{segments [p_i, p_j] in m}                 (i <= j)
//! T[i][i-1] = #{segments of m containing p_{i-1} and p_i}
//! ```
//!
//! with rows indexed by points ascending and columns by points descending.
//! Its row and column sums are both `d`, so it names a double coset
//! `S_d \ S_n / S_d`; we take the minimal representative and reverse its
//! rows. Under this encoding the orbit closure of `m` in the graded
//! nilpotent representation space is locally a Schubert variety, and
//! `m(L(n), λ(m)) = P_{u(m), u(n)}(1)`.

use std::collections::BTreeMap;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::segments::{Multisegment, SupportVector};

pub fn multiseg_to_perm(m: &Multisegment, support: &SupportVector) -> Result<Permutation> {
    if m.support() != *support {
        return Err(Error::domain(format!("{m} does not have support {support}")));
    }
    let n = support.total() as usize;
    if n > super::perm::MAX_DEGREE {
        return Err(Error::Resource(format!("support of size {n} is beyond the permutation encoding")));
    }
    let points: Vec<(i32, u32)> = support.iter().collect();
    let r = points.len();
    let index: BTreeMap<i32, usize> = points.iter().enumerate().map(|(k, &(p, _))| (p, k)).collect();

    // table[i][j]: row block i (ascending), column block j (ascending point;
    // placed in descending order below)
    let mut table = vec![vec![0u32; r]; r];
    for d in m {
        table[index[&d.begin()]][index[&d.end()]] += 1;
        for p in d.begin() + 1..=d.end() {
            table[index[&p]][index[&(p - 1)]] += 1;
        }
    }

    let mut row_start = Vec::with_capacity(r);
    let mut acc = 0usize;
    for &(_, c) in &points {
        row_start.push(acc);
        acc += c as usize;
    }
    // column block of point k sits at position r-1-k
    let mut col_start = vec![0usize; r];
    acc = 0;
    for k in (0..r).rev() {
        col_start[k] = acc;
        acc += points[k].1 as usize;
    }

    let mut v = vec![0u8; n];
    let mut col_next = col_start.clone();
    for i in 0..r {
        let mut row = row_start[i];
        for j in (0..r).rev() {
            for _ in 0..table[i][j] {
                v[row] = col_next[j] as u8;
                row += 1;
                col_next[j] += 1;
            }
        }
    }
    Ok(Permutation::from_zero_based(v.into_iter().rev()))
}
