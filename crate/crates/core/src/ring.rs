//! Elements of the Grothendieck ring of a single line, in either the
//! standard basis `λ(m)` or the irreducible basis `L(m)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segments::{linked, precedes, Multisegment, Segment, SupportVector};
use crate::width::width_chain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Standard,
    Irreducible,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Standard => "standard",
            Basis::Irreducible => "irreducible",
        }
    }
}

/// A finite integer combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    basis: Basis,
    terms: BTreeMap<Multisegment, i64>,
}

impl RingElement {
    pub fn zero(basis: Basis) -> Self {
        RingElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, m: Multisegment) -> Self {
        let mut x = RingElement::zero(basis);
        x.add_term(m, 1);
        x
    }

    /// `λ(m)`.
    pub fn standard(m: Multisegment) -> Self {
        RingElement::basis_element(Basis::Standard, m)
    }

    /// `[L(m)]`.
    pub fn irreducible(m: Multisegment) -> Self {
        RingElement::basis_element(Basis::Irreducible, m)
    }

    /// The unit `λ(0)`, the trivial representation of the trivial group.
    pub fn one() -> Self {
        RingElement::standard(Multisegment::empty())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Multisegment) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Multisegment, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        same_basis(self, other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> RingElement {
        let mut out = RingElement::zero(self.basis);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Splits into homogeneous pieces keyed by supercuspidal support.
    pub fn components(&self) -> BTreeMap<SupportVector, RingElement> {
        let mut out: BTreeMap<SupportVector, RingElement> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(m.support())
                .or_insert_with(|| RingElement::zero(self.basis))
                .add_term(m.clone(), c);
        }
        out
    }
}

fn same_basis(x: &RingElement, y: &RingElement) -> Result<()> {
    if x.basis != y.basis {
        return Err(Error::Usage(format!(
            "basis mismatch: {} vs {}",
            x.basis.name(),
            y.basis.name()
        )));
    }
    Ok(())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = match self.basis {
            Basis::Standard => "λ",
            Basis::Irreducible => "L",
        };
        for (i, (m, c)) in self.terms().enumerate() {
            let sign = match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{sym}({m})")?;
            } else {
                write!(f, "{sign}{mag}·{sym}({m})")?;
            }
        }
        Ok(())
    }
}

struct Term<'a>(&'a Multisegment, i64);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("coeff", &self.1)?;
        map.serialize_entry("multisegment", self.0)?;
        map.end()
    }
}

struct Terms<'a>(&'a BTreeMap<Multisegment, i64>);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (m, &c) in self.0 {
            seq.serialize_element(&Term(m, c))?;
        }
        seq.end()
    }
}

/// `{"basis": "standard"|"irreducible", "terms": [{"coeff", "multisegment"}]}`
impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("basis", self.basis.name())?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.end()
    }
}

/// Product in the standard basis, `λ(m1)·λ(m2) = λ(m1 + m2)` extended
/// bilinearly.
pub fn product_standard(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if x.basis != Basis::Standard || y.basis != Basis::Standard {
        return Err(Error::Usage(
            "standard-basis product needs both factors in the standard basis".into(),
        ));
    }
    let mut out = RingElement::zero(Basis::Standard);
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            out.add_term(m1.plus(m2), c1 * c2);
        }
    }
    Ok(out)
}

/// An enumeration `d_1, ..., d_k` of `m` in which no later segment precedes
/// an earlier one. Precedence strictly increases the begin point, so the
/// canonical order already qualifies.
pub fn order_costandard(m: &Multisegment) -> Vec<Segment> {
    let order = m.segments().to_vec();
    debug_assert!(is_costandard_order(&order));
    order
}

/// `d_j` does not precede `d_i` for any `i < j`.
pub fn is_costandard_order(order: &[Segment]) -> bool {
    order
        .iter()
        .enumerate()
        .all(|(i, di)| order[i + 1..].iter().all(|dj| !precedes(dj, di)))
}

/// No pair of segments of `m` is linked.
pub fn is_generic(m: &Multisegment) -> bool {
    let s = m.segments();
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !linked(&s[i], &s[j])))
}

/// All linked index pairs `(i, j)` with `s[i]` preceding `s[j]`.
pub(crate) fn linked_pairs(m: &Multisegment) -> Vec<(usize, usize)> {
    let s = m.segments();
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in 0..s.len() {
            if precedes(&s[i], &s[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// One union/intersection move on the linked pair at indices `(i, j)`.
pub fn elementary_move(m: &Multisegment, i: usize, j: usize) -> Multisegment {
    let s = m.segments();
    let (d1, d2) = (s[i], s[j]);
    let mut rest: Vec<Segment> = s
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, d)| *d)
        .collect();
    rest.push(d1.union(&d2));
    if let Some(cap) = d1.intersection(&d2) {
        rest.push(cap);
    }
    Multisegment::new(rest)
}

/// Replaces linked pairs by their union and intersection until no linked
/// pair remains. The first linked pair in canonical order is reduced at each
/// step.
pub fn resolve_linked(m: &Multisegment) -> Multisegment {
    resolve_linked_by(m, |_| 0)
}

/// As [`resolve_linked`], with `pick` choosing which of the current linked
/// pairs to reduce.
pub fn resolve_linked_by(m: &Multisegment, mut pick: impl FnMut(usize) -> usize) -> Multisegment {
    let mut cur = m.clone();
    loop {
        let pairs = linked_pairs(&cur);
        if pairs.is_empty() {
            return cur;
        }
        let (i, j) = pairs[pick(pairs.len()) % pairs.len()];
        cur = elementary_move(&cur, i, j);
    }
}

/// Largest width among the constituents of `x`.
pub fn element_width(x: &RingElement) -> Result<usize> {
    if x.basis != Basis::Irreducible {
        return Err(Error::Usage("element width needs the irreducible basis".into()));
    }
    x.terms()
        .map(|(m, _)| width_chain(m))
        .max()
        .ok_or_else(|| Error::domain("width of the zero element"))
}
