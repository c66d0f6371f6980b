use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::dictionary::multiseg_to_perm;
use super::engine::KlEngine;
use super::perm::{bruhat_leq_unchecked, Permutation};
use crate::error::{Error, Result};
use crate::multiplicity::DecompositionOracle;
use crate::ring::{elementary_move, linked_pairs, product_standard, Basis, RingElement};
use crate::segments::{multisegments_with_support, Multisegment, SupportVector};

/// Default bound on the total size of a support class handled exactly.
pub const DEFAULT_MAX_SUPPORT: u32 = 8;

/// `M[m][n] = m(L(n), λ(m))` on a set of multisegments with one support,
/// closed under union/intersection moves. Rows and columns share `index`,
/// ordered so that `M` is lower unitriangular.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionMatrix {
    support: SupportVector,
    index: Vec<Multisegment>,
    entries: Vec<Vec<i64>>,
}

impl TransitionMatrix {
    pub fn support(&self) -> &SupportVector {
        &self.support
    }

    pub fn index(&self) -> &[Multisegment] {
        &self.index
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn position(&self, m: &Multisegment) -> Option<usize> {
        self.index.iter().position(|x| x == m)
    }

    pub fn entry(&self, m: &Multisegment, n: &Multisegment) -> Option<i64> {
        Some(self.entries[self.position(m)?][self.position(n)?])
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        let e = &self.entries;
        (0..e.len()).all(|i| e[i][i] == 1 && (i + 1..e.len()).all(|j| e[i][j] == 0))
    }

    /// `M⁻¹`, again lower unitriangular over ℤ.
    pub fn inverse(&self) -> Vec<Vec<i64>> {
        let k = self.len();
        let m = &self.entries;
        let mut x = vec![vec![0i64; k]; k];
        for j in 0..k {
            x[j][j] = 1;
            for i in j + 1..k {
                x[i][j] = -(j..i).map(|t| m[i][t] * x[t][j]).sum::<i64>();
            }
        }
        x
    }
}

/// All multisegments reachable from `seeds` by union/intersection moves.
pub fn move_closure(seeds: impl IntoIterator<Item = Multisegment>) -> BTreeSet<Multisegment> {
    let mut seen: BTreeSet<Multisegment> = BTreeSet::new();
    let mut queue: VecDeque<Multisegment> = VecDeque::new();
    for m in seeds {
        if seen.insert(m.clone()) {
            queue.push_back(m);
        }
    }
    while let Some(m) = queue.pop_front() {
        for (i, j) in linked_pairs(&m) {
            let next = elementary_move(&m, i, j);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Exact decompositions through Kazhdan–Lusztig polynomials.
pub struct KlOracle {
    engine: KlEngine,
    max_support: u32,
}

impl Default for KlOracle {
    fn default() -> Self {
        KlOracle::new(KlEngine::new())
    }
}

impl KlOracle {
    pub fn new(engine: KlEngine) -> Self {
        KlOracle {
            engine,
            max_support: DEFAULT_MAX_SUPPORT,
        }
    }

    pub fn with_max_support(mut self, max_support: u32) -> Self {
        self.max_support = max_support;
        self
    }

    pub fn max_support(&self) -> u32 {
        self.max_support
    }

    pub fn engine(&self) -> &KlEngine {
        &self.engine
    }

    pub fn flush(&self) -> Result<()> {
        self.engine.flush()
    }

    fn check_bound(&self, s: &SupportVector) -> Result<()> {
        if s.total() > self.max_support {
            return Err(Error::Resource(format!(
                "support {s} has size {} > bound {}",
                s.total(),
                self.max_support
            )));
        }
        Ok(())
    }

    /// The full matrix on a support class.
    pub fn transition_matrix(&self, support: &SupportVector) -> Result<TransitionMatrix> {
        self.check_bound(support)?;
        self.build(support, multisegments_with_support(support))
    }

    /// The matrix restricted to the move-closure of `seeds`, all of which
    /// must share one support. This is all that basis changes on `seeds` need.
    pub fn transition_matrix_above(&self, seeds: &[Multisegment]) -> Result<TransitionMatrix> {
        let support = seeds.first().map(Multisegment::support).unwrap_or_else(SupportVector::zero);
        if let Some(bad) = seeds.iter().find(|m| m.support() != support) {
            return Err(Error::domain(format!("{bad} does not have support {support}")));
        }
        self.check_bound(&support)?;
        self.build(&support, move_closure(seeds.iter().cloned()).into_iter().collect())
    }

    fn build(&self, support: &SupportVector, members: Vec<Multisegment>) -> Result<TransitionMatrix> {
        let mut keyed: Vec<(Permutation, Multisegment)> = members
            .into_iter()
            .map(|m| Ok((multiseg_to_perm(&m, support)?, m)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|(u, m), (v, n)| v.length().cmp(&u.length()).then_with(|| m.cmp(n)));

        let rows: Vec<Vec<i64>> = keyed
            .par_iter()
            .map(|(um, m)| {
                let above = move_closure([m.clone()]);
                keyed
                    .iter()
                    .map(|(un, n)| {
                        if !bruhat_leq_unchecked(um, un) {
                            return Ok(0);
                        }
                        let value = self.engine.kl_polynomial(um, un)?.at_one() as i64;
                        if value != 0 && !above.contains(n) {
                            return Err(Error::invariant(format!(
                                "m(L({n}), λ({m})) = {value} but {n} is not reachable from {m} by moves"
                            )));
                        }
                        Ok(value)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;

        let matrix = TransitionMatrix {
            support: support.clone(),
            index: keyed.into_iter().map(|(_, m)| m).collect(),
            entries: rows,
        };
        if !matrix.is_lower_unitriangular() {
            return Err(Error::invariant(format!(
                "transition matrix on {support} is not lower unitriangular"
            )));
        }
        Ok(matrix)
    }

    /// Rewrites a standard-basis element in the irreducible basis.
    pub fn to_irreducible_basis(&self, x: &RingElement) -> Result<RingElement> {
        self.convert(x, Basis::Standard, Basis::Irreducible, |t| t.entries().to_vec())
    }

    /// Rewrites an irreducible-basis element in the standard basis.
    pub fn to_standard_basis(&self, x: &RingElement) -> Result<RingElement> {
        self.convert(x, Basis::Irreducible, Basis::Standard, TransitionMatrix::inverse)
    }

    fn convert(
        &self,
        x: &RingElement,
        from: Basis,
        to: Basis,
        matrix: impl Fn(&TransitionMatrix) -> Vec<Vec<i64>>,
    ) -> Result<RingElement> {
        if x.basis() != from {
            return Err(Error::Usage(format!("expected an element in the {} basis", from.name())));
        }
        let mut out = RingElement::zero(to);
        for (_, component) in x.components() {
            let seeds: Vec<Multisegment> = component.terms().map(|(m, _)| m.clone()).collect();
            let t = self.transition_matrix_above(&seeds)?;
            let a = matrix(&t);
            let pos: HashMap<&Multisegment, usize> = t.index().iter().enumerate().map(|(i, m)| (m, i)).collect();
            for (m, c) in component.terms() {
                let row = &a[pos[m]];
                for (j, n) in t.index().iter().enumerate() {
                    if row[j] != 0 {
                        out.add_term(n.clone(), c * row[j]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[L(m1) × L(m2)]` in the irreducible basis.
    pub fn multiply_irreducibles(&self, m1: &Multisegment, m2: &Multisegment) -> Result<RingElement> {
        self.check_bound(&m1.support().plus(&m2.support()))?;
        let x = self.to_standard_basis(&RingElement::irreducible(m1.clone()))?;
        let y = self.to_standard_basis(&RingElement::irreducible(m2.clone()))?;
        self.to_irreducible_basis(&product_standard(&x, &y)?)
    }

    /// Products of several irreducibles, left to right.
    pub fn multiply_many(&self, factors: &[Multisegment]) -> Result<RingElement> {
        let total = factors.iter().fold(SupportVector::zero(), |s, m| s.plus(&m.support()));
        self.check_bound(&total)?;
        let mut acc = RingElement::standard(Multisegment::empty());
        for m in factors {
            let x = self.to_standard_basis(&RingElement::irreducible(m.clone()))?;
            acc = product_standard(&acc, &x)?;
        }
        self.to_irreducible_basis(&acc)
    }
}

impl DecompositionOracle for KlOracle {
    fn multiply(&self, m1: &Multisegment, m2: &Multisegment) -> Result<RingElement> {
        self.multiply_irreducibles(m1, m2)
    }

    fn standard_constituents(&self, m: &Multisegment) -> Result<RingElement> {
        self.to_irreducible_basis(&RingElement::standard(m.clone()))
    }
}

/// [`KlOracle::transition_matrix`] with an in-memory engine and the default
/// bound.
pub fn transition_matrix(support: &SupportVector) -> Result<TransitionMatrix> {
    KlOracle::default().transition_matrix(support)
}

pub fn to_irreducible_basis(x: &RingElement) -> Result<RingElement> {
    KlOracle::default().to_irreducible_basis(x)
}

pub fn to_standard_basis(x: &RingElement) -> Result<RingElement> {
    KlOracle::default().to_standard_basis(x)
}

pub fn multiply_irreducibles(m1: &Multisegment, m2: &Multisegment) -> Result<RingElement> {
    KlOracle::default().multiply_irreducibles(m1, m2)
}
