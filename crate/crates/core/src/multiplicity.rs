//! Multiplicity-one machinery for products of two ladder representations.
//!
//! For `σ = L(n)`, group the segments of `n` by begin point to get the tensor
//! factorisation `σ_⊗`. The multiplicity of `σ_⊗` in the Jacquet module of
//! `L(m1) × L(m2)` is computed recursively: peel the (at most two) segments
//! at the minimal begin point, expand the restriction of the product with
//! the geometric lemma, decide the left block with [`classify_pair`] and
//! recurse on the right block. Every step asserts that the total never
//! exceeds one and that at most one pair of Jacquet terms contributes.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacquet::geometric_lemma_cut;
use crate::ring::{is_generic, resolve_linked, RingElement};
use crate::segments::{Multisegment, Segment};
use crate::width::{is_ladder, width_chain};

/// Width bound for constituents of a product of two ladders.
pub const DEFAULT_WIDTH_CAP: usize = 2;

/// Segments grouped by common begin point, begins increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaTensor {
    pub factors: Vec<Multisegment>,
}

pub fn sigma_tensor(m: &Multisegment) -> SigmaTensor {
    let mut factors: Vec<Vec<Segment>> = Vec::new();
    for d in m {
        match factors.last_mut() {
            Some(group) if group[0].begin() == d.begin() => group.push(*d),
            _ => factors.push(vec![*d]),
        }
    }
    SigmaTensor {
        factors: factors.into_iter().map(Multisegment::new).collect(),
    }
}

/// The first factor of `σ_⊗` split as `Δ + Δ̂` with `e(Δ̂) <= e(Δ)`, and what
/// remains of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub delta: Segment,
    pub delta_hat: Option<Segment>,
    pub remainder: Multisegment,
}

impl PeelStep {
    /// `Δ + Δ̂` as a multisegment.
    pub fn head(&self) -> Multisegment {
        Multisegment::new(std::iter::once(self.delta).chain(self.delta_hat))
    }

    pub fn degree(&self) -> u32 {
        self.delta.len() + self.delta_hat.map_or(0, |d| d.len())
    }
}

/// Peels the minimal-begin group of `n`. `None` when `n` is empty or more
/// than two segments share the minimal begin.
pub fn peel(n: &Multisegment) -> Option<PeelStep> {
    let first = *n.segments().first()?;
    let group: Vec<Segment> = n.iter().copied().take_while(|d| d.begin() == first.begin()).collect();
    let (delta, delta_hat) = match group.as_slice() {
        [d] => (*d, None),
        // canonical order puts the shorter segment first
        [h, d] => (*d, Some(*h)),
        _ => return None,
    };
    let remainder = Multisegment::new(n.segments()[group.len()..].iter().copied());
    Some(PeelStep {
        delta,
        delta_hat,
        remainder,
    })
}

/// Whether `{n1, n2}` has the interleaving shape forced on any pair of
/// ladders whose product contains `L(Δ + Δ̂)`:
/// `{Σ [a_{2i}, a_{2i+1} - 1], [a, c] + Σ [a_{2i-1}, a_{2i} - 1]}` with
/// `a = a_0`, `c + 1 < a_1 < ... < a_l = b + 1`, for `Δ = [a, b]` and
/// `Δ̂ = [a, c]` (`c = a - 1` when `Δ̂` is trivial). When `c = b` both must
/// equal `{Δ}`.
pub fn lemma_pattern(delta: Segment, delta_hat: Option<Segment>, n1: &Multisegment, n2: &Multisegment) -> bool {
    let (a, b) = (delta.begin(), delta.end());
    let c = delta_hat.map_or(a - 1, |h| h.end());
    if c == b {
        let single = Multisegment::new([delta]);
        return *n1 == single && *n2 == single;
    }
    [(n1, n2), (n2, n1)].into_iter().any(|(outer, inner)| {
        let inner = match delta_hat {
            Some(h) => match inner.minus(&Multisegment::new([h])) {
                Some(rest) => rest,
                None => return false,
            },
            None => inner.clone(),
        };
        interleaves(outer.segments(), inner.segments(), a, b, c)
    })
}

fn interleaves(outer: &[Segment], inner: &[Segment], a: i32, b: i32, c: i32) -> bool {
    let (t1, s) = (outer.len(), inner.len());
    // l = 2t+1 = 2s+1, or l = 2s = 2t+2
    if t1 == 0 || !(s + 1 == t1 || s == t1) {
        return false;
    }
    let mut next = a;
    let mut breaks = Vec::with_capacity(t1 + s);
    for k in 0..t1 + s {
        let d = if k % 2 == 0 { outer[k / 2] } else { inner[k / 2] };
        if d.begin() != next {
            return false;
        }
        next = d.end() + 1;
        breaks.push(next);
    }
    next == b + 1 && c + 1 < breaks[0]
}

/// `m(L(Δ + Δ̂), L(n1) × L(n2))` for ladders `n1, n2`: one exactly when
/// both are generic and the unique generic constituent of their product is
/// `L(Δ + Δ̂)`, zero otherwise.
///
/// The answer is cross-checked against [`lemma_pattern`]; disagreement is an
/// [`Error::Invariant`].
pub fn classify_pair(delta: Segment, delta_hat: Option<Segment>, n1: &Multisegment, n2: &Multisegment) -> Result<u8> {
    if let Some(h) = delta_hat {
        if h.begin() != delta.begin() || h.end() > delta.end() {
            return Err(Error::domain(format!("{h} is not an initial piece of {delta}")));
        }
    }
    if !is_ladder(n1) || !is_ladder(n2) {
        return Err(Error::domain(format!("{n1} and {n2} must be ladders")));
    }
    let target = Multisegment::new(std::iter::once(delta).chain(delta_hat));
    let sum = n1.plus(n2);
    let by_resolution =
        is_generic(n1) && is_generic(n2) && sum.support() == target.support() && resolve_linked(&sum) == target;
    let by_pattern = lemma_pattern(delta, delta_hat, n1, n2);
    if by_resolution != by_pattern {
        return Err(Error::invariant(format!(
            "generic-constituent test ({by_resolution}) and interleaving pattern ({by_pattern}) disagree \
             for Δ={delta}, Δ̂={}, n1={n1}, n2={n2}",
            delta_hat.map_or("trivial".to_string(), |h| h.to_string())
        )));
    }
    Ok(by_resolution as u8)
}

type Key = (Multisegment, Multisegment, Multisegment);

/// Memoised evaluator for `m(σ_⊗, r(L(m1) × L(m2)))`. Safe to share
/// between threads.
#[derive(Default)]
pub struct JacquetMultiplicity {
    memo: RwLock<HashMap<Key, u8>>,
    spectra: RwLock<HashMap<(Multisegment, Multisegment), BTreeMap<Multisegment, u32>>>,
}

impl JacquetMultiplicity {
    pub fn new() -> Self {
        JacquetMultiplicity::default()
    }

    pub fn compute(&self, n: &Multisegment, m1: &Multisegment, m2: &Multisegment) -> Result<u8> {
        if !is_ladder(m1) || !is_ladder(m2) {
            return Err(Error::domain(format!("{m1} and {m2} must be ladders")));
        }
        self.recurse(n, m1, m2)
    }

    fn recurse(&self, n: &Multisegment, m1: &Multisegment, m2: &Multisegment) -> Result<u8> {
        if n.support() != m1.support().plus(&m2.support()) {
            return Ok(0);
        }
        if n.is_empty() {
            return Ok(1);
        }
        let key = (n.clone(), m1.clone(), m2.clone());
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let Some(step) = peel(n) else {
            return Ok(0);
        };

        let mut total = 0u32;
        let mut contributors = Vec::new();
        for (t1, t2) in geometric_lemma_cut(m1, m2, step.degree())? {
            if classify_pair(step.delta, step.delta_hat, &t1.left, &t2.left)? == 0 {
                continue;
            }
            let r = self.recurse(&step.remainder, &t1.right, &t2.right)?;
            if r > 0 {
                total += r as u32;
                contributors.push(format!("({t1}) & ({t2})"));
            }
        }
        if contributors.len() > 1 || total > 1 {
            return Err(Error::invariant(format!(
                "multiplicity {total} > 1 for n={n} in L({m1}) × L({m2}); contributing pairs: {}",
                contributors.join(", ")
            )));
        }
        let v = total as u8;
        self.memo.write().expect("memo lock").insert(key, v);
        Ok(v)
    }

    /// Every `n` with `m(σ_⊗, r(L(m1) × L(m2))) > 0`, with the raw path
    /// count of the recursion (no bound asserted). Generated forwards: at each
    /// level the peeled head is the resolution of the left blocks.
    pub fn spectrum(&self, m1: &Multisegment, m2: &Multisegment) -> Result<BTreeMap<Multisegment, u32>> {
        if !is_ladder(m1) || !is_ladder(m2) {
            return Err(Error::domain(format!("{m1} and {m2} must be ladders")));
        }
        self.spectrum_of(m1, m2)
    }

    fn spectrum_of(&self, r1: &Multisegment, r2: &Multisegment) -> Result<BTreeMap<Multisegment, u32>> {
        let mut out = BTreeMap::new();
        if r1.is_empty() && r2.is_empty() {
            out.insert(Multisegment::empty(), 1);
            return Ok(out);
        }
        let key = (r1.clone(), r2.clone());
        if let Some(v) = self.spectra.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let s = r1.support().plus(&r2.support());
        let (low, low_mult) = crate::segments::b_stat(&s)?;
        for d in 1..=s.total() {
            for (t1, t2) in geometric_lemma_cut(r1, r2, d)? {
                if !is_generic(&t1.left) || !is_generic(&t2.left) {
                    continue;
                }
                let head = resolve_linked(&t1.left.plus(&t2.left));
                if head.len() != low_mult as usize || head.iter().any(|h| h.begin() != low) {
                    continue;
                }
                for (rest, c) in self.spectrum_of(&t1.right, &t2.right)? {
                    *out.entry(head.plus(&rest)).or_insert(0) += c;
                }
            }
        }
        self.spectra.write().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }
}

/// `m(σ_⊗, r_{α_σ}(L(m1) × L(m2)))` for `σ = L(n)`.
pub fn mult_in_jacquet(n: &Multisegment, m1: &Multisegment, m2: &Multisegment) -> Result<u8> {
    JacquetMultiplicity::new().compute(n, m1, m2)
}

/// Multisegments that may occur in `L(m1) × L(m2)`: the right support, width
/// at most `width_cap`, and Jacquet multiplicity one. A superset of the
/// composition series that always contains `m1 + m2`.
pub fn composition_candidates(m1: &Multisegment, m2: &Multisegment, width_cap: usize) -> Result<Vec<Multisegment>> {
    composition_candidates_with(&JacquetMultiplicity::new(), m1, m2, width_cap)
}

pub fn composition_candidates_with(
    engine: &JacquetMultiplicity,
    m1: &Multisegment,
    m2: &Multisegment,
    width_cap: usize,
) -> Result<Vec<Multisegment>> {
    let spectrum = engine.spectrum(m1, m2)?;
    let mut out = Vec::new();
    for (n, count) in spectrum {
        if count > 1 {
            return Err(Error::invariant(format!(
                "{n} reached by {count} recursion paths in L({m1}) × L({m2})"
            )));
        }
        if width_chain(&n) <= width_cap {
            out.push(n);
        }
    }
    Ok(out)
}

/// The same filter by exhaustive enumeration of the support class. Slow;
/// kept as an independent route.
pub fn composition_candidates_enumerated(m1: &Multisegment, m2: &Multisegment, width_cap: usize) -> Result<Vec<Multisegment>> {
    let engine = JacquetMultiplicity::new();
    let s = m1.support().plus(&m2.support());
    let mut out = Vec::new();
    for n in crate::segments::multisegments_with_support(&s) {
        if width_chain(&n) <= width_cap && engine.compute(&n, m1, m2)? == 1 {
            out.push(n);
        }
    }
    Ok(out)
}

/// Exact decompositions supplied by an external oracle.
pub trait DecompositionOracle {
    /// `[L(m1) × L(m2)]` in the irreducible basis.
    fn multiply(&self, m1: &Multisegment, m2: &Multisegment) -> Result<RingElement>;

    /// `[λ(m)]` in the irreducible basis.
    fn standard_constituents(&self, m: &Multisegment) -> Result<RingElement>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails {
        missing: Vec<Multisegment>,
        unexpected: Vec<Multisegment>,
    },
    Undetermined {
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactConjectureData {
    /// `[π × π']`.
    pub product: RingElement,
    /// Constituents of the standard module of width at most two.
    pub predicted: Vec<Multisegment>,
    /// Whether the candidate filter is exactly the composition series.
    pub candidates_exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub pi: Multisegment,
    pub pi_prime: Multisegment,
    pub lambda: Multisegment,
    pub candidates: Vec<Multisegment>,
    pub exact: Option<ExactConjectureData>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Checks one instance of the interleaved two-ladder configuration
/// `a_1 < ... < a_2k < b_1 < ... < b_2k`: `π` takes the even-indexed
/// segments `[a_2i, b_2i]`, `π'` the odd ones, and the prediction is that
/// `π × π'` is the multiplicity-free sum of all width ≤ 2 constituents of
/// the standard module on the union.
pub fn conjecture_scan(a: &[i32], b: &[i32], oracle: Option<&dyn DecompositionOracle>) -> Result<ConjectureReport> {
    if a.is_empty() || a.len() % 2 != 0 || a.len() != b.len() {
        return Err(Error::domain("a and b must both have length 2k with k >= 1"));
    }
    let chain: Vec<i32> = a.iter().chain(b).copied().collect();
    if chain.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("need a_1 < ... < a_2k < b_1 < ... < b_2k"));
    }
    let seg = |i: usize| Segment::new(a[i], b[i]).expect("a_i < b_i");
    let pi = Multisegment::new((1..a.len()).step_by(2).map(seg));
    let pi_prime = Multisegment::new((0..a.len()).step_by(2).map(seg));
    let lambda = pi.plus(&pi_prime);
    let candidates = composition_candidates(&pi, &pi_prime, DEFAULT_WIDTH_CAP)?;

    let mut report = ConjectureReport {
        k: a.len() / 2,
        pi: pi.clone(),
        pi_prime: pi_prime.clone(),
        lambda: lambda.clone(),
        candidates,
        exact: None,
        verdict: Verdict::Undetermined {
            reason: "no exact oracle available".into(),
        },
    };
    let Some(oracle) = oracle else {
        return Ok(report);
    };

    let exact = oracle
        .multiply(&pi, &pi_prime)
        .and_then(|product| oracle.standard_constituents(&lambda).map(|std| (product, std)));
    let (product, standard) = match exact {
        Ok(v) => v,
        Err(Error::Resource(reason)) => {
            report.verdict = Verdict::Undetermined { reason };
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let predicted: Vec<Multisegment> = standard
        .terms()
        .filter(|(m, c)| *c != 0 && width_chain(m) <= 2)
        .map(|(m, _)| m.clone())
        .collect();
    let mut predicted_element = RingElement::zero(product.basis());
    for m in &predicted {
        predicted_element.add_term(m.clone(), 1);
    }
    let constituents: Vec<Multisegment> = product.terms().map(|(m, _)| m.clone()).collect();
    report.verdict = if predicted_element == product {
        Verdict::Holds
    } else {
        Verdict::Fails {
            missing: predicted.iter().filter(|m| product.coefficient(m) != 1).cloned().collect(),
            unexpected: constituents
                .iter()
                .filter(|m| predicted_element.coefficient(m) != product.coefficient(m) && !predicted.contains(m))
                .cloned()
                .collect(),
        }
    };
    report.exact = Some(ExactConjectureData {
        candidates_exact: constituents == report.candidates,
        product,
        predicted,
    });
    Ok(report)
}
