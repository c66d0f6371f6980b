//! Segments on a single supercuspidal line (identified with the integers),
//! the three orders used throughout the crate, multisegments in canonical
//! form and supercuspidal supports.
//!
//! A [`Segment`] is always non-trivial (`begin <= end`). Operations that can
//! produce the empty segment `[a, a-1]` return `Option<Segment>` instead.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The integer interval `[begin, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    begin: i32,
    end: i32,
}

impl Segment {
    pub fn new(begin: i32, end: i32) -> Result<Self> {
        if end < begin {
            return Err(Error::domain(format!(
                "segment end precedes begin: [{begin},{end}]"
            )));
        }
        Ok(Segment { begin, end })
    }

    /// `[begin, end]`, or `None` for the trivial segment `[begin, begin-1]`.
    ///
    /// Panics if `end < begin - 1`, which is not a segment at all.
    pub fn maybe(begin: i32, end: i32) -> Option<Self> {
        assert!(end >= begin - 1, "[{begin},{end}] is not a segment");
        (end >= begin).then_some(Segment { begin, end })
    }

    pub fn begin(&self) -> i32 {
        self.begin
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    /// Number of points in the segment.
    pub fn len(&self) -> u32 {
        (self.end - self.begin + 1) as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = i32> {
        self.begin..=self.end
    }

    /// Union of two linked or juxtaposed segments.
    pub fn union(&self, other: &Segment) -> Segment {
        Segment {
            begin: self.begin.min(other.begin),
            end: self.end.max(other.end),
        }
    }

    /// Intersection, `None` when empty.
    pub fn intersection(&self, other: &Segment) -> Option<Segment> {
        let b = self.begin.max(other.begin);
        let e = self.end.min(other.end);
        (b <= e).then_some(Segment { begin: b, end: e })
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.begin, self.end)
    }
}

/// `d1` precedes `d2`: `b(d1) <= b(d2) - 1 <= e(d1) < e(d2)`.
pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    d1.begin <= d2.begin - 1 && d2.begin - 1 <= d1.end && d1.end < d2.end
}

pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    precedes(d1, d2) || precedes(d2, d1)
}

/// `d2` is contained in `d1`.
pub fn contains(d1: &Segment, d2: &Segment) -> bool {
    d1.begin <= d2.begin && d2.end <= d1.end
}

/// The order generated by precedence: both endpoints strictly increase, or
/// the segments are equal.
pub fn preceq_prime(d1: &Segment, d2: &Segment) -> bool {
    (d1.begin < d2.begin && d1.end < d2.end) || d1 == d2
}

/// Strict part of [`preceq_prime`].
pub fn strictly_below(d1: &Segment, d2: &Segment) -> bool {
    d1.begin < d2.begin && d1.end < d2.end
}

/// A finite multiset of segments, stored sorted by `(begin, end)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segments: Vec<Segment> = segments.into_iter().collect();
        segments.sort_unstable();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    /// Builds from `(begin, end)` pairs.
    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(b, e)| Segment::new(b, e))
            .collect::<Result<Vec<_>>>()
            .map(Multisegment::new)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.segments.iter()
    }

    /// Number of segments, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Total number of support points, `#supp`.
    pub fn degree(&self) -> u32 {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn multiplicity(&self, d: &Segment) -> usize {
        self.segments.iter().filter(|s| *s == d).count()
    }

    pub fn plus(&self, other: &Multisegment) -> Multisegment {
        let mut segments = Vec::with_capacity(self.len() + other.len());
        segments.extend_from_slice(&self.segments);
        segments.extend_from_slice(&other.segments);
        Multisegment::new(segments)
    }

    pub fn with(&self, d: Segment) -> Multisegment {
        let mut segments = self.segments.clone();
        let pos = segments.partition_point(|s| *s < d);
        segments.insert(pos, d);
        Multisegment { segments }
    }

    /// Multiset difference, `None` unless `other <= self`.
    pub fn minus(&self, other: &Multisegment) -> Option<Multisegment> {
        let mut rest = self.segments.clone();
        for d in &other.segments {
            let pos = rest.iter().position(|s| s == d)?;
            rest.remove(pos);
        }
        Some(Multisegment { segments: rest })
    }

    /// Multiset inclusion `other <= self`.
    pub fn includes(&self, other: &Multisegment) -> bool {
        self.minus(other).is_some()
    }

    /// Keeps the segments (with multiplicity) satisfying `pred`.
    pub fn restrict(&self, pred: impl Fn(&Segment) -> bool) -> Multisegment {
        Multisegment {
            segments: self.segments.iter().copied().filter(|s| pred(s)).collect(),
        }
    }

    pub fn support(&self) -> SupportVector {
        support(self)
    }

    /// Shifts every segment by `by`.
    pub fn translate(&self, by: i32) -> Multisegment {
        Multisegment {
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    begin: s.begin + by,
                    end: s.end + by,
                })
                .collect(),
        }
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter)
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;

    fn into_iter(self) -> Self::IntoIter {
        self.segments.iter()
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).multisegment()
    }
}

/// Recursive-descent parser for
/// `multisegment := "0" | segment ("+" segment)*`,
/// `segment := "[" int "," int "]"`, whitespace ignored.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<i32> {
        let start = self.pos;
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.pos += 1;
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.pos += 1;
        }
        if !text.ends_with(|c: char| c.is_ascii_digit()) {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn segment(&mut self) -> Result<Segment> {
        self.expect('[')?;
        let b = self.int()?;
        self.expect(',')?;
        let e = self.int()?;
        self.expect(']')?;
        Segment::new(b, e)
    }

    fn multisegment(mut self) -> Result<Multisegment> {
        if self.peek() == Some('0') && self.chars.len() == 1 {
            return Ok(Multisegment::empty());
        }
        let mut segments = vec![self.segment()?];
        while self.peek().is_some() {
            self.expect('+')?;
            segments.push(self.segment()?);
        }
        Ok(Multisegment::new(segments))
    }
}

/// Finitely supported map from line points to multiplicities. Zero entries
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportVector {
    counts: BTreeMap<i32, u32>,
}

impl SupportVector {
    pub fn zero() -> Self {
        SupportVector::default()
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (i32, u32)>) -> Self {
        let mut s = SupportVector::zero();
        for (x, c) in pairs {
            s.add_at(x, c);
        }
        s
    }

    pub fn add_at(&mut self, x: i32, c: u32) {
        if c > 0 {
            *self.counts.entry(x).or_insert(0) += c;
        }
    }

    pub fn get(&self, x: i32) -> u32 {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total size `#supp`.
    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.counts.iter().map(|(&x, &c)| (x, c))
    }

    pub fn min_point(&self) -> Option<i32> {
        self.counts.keys().next().copied()
    }

    pub fn max_point(&self) -> Option<i32> {
        self.counts.keys().next_back().copied()
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &SupportVector) -> SupportVector {
        let mut s = self.clone();
        for (x, c) in other.iter() {
            s.add_at(x, c);
        }
        s
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &SupportVector) -> bool {
        self.iter().all(|(x, c)| c <= other.get(x))
    }

    /// Pointwise difference, `None` unless `other <= self`.
    pub fn minus(&self, other: &SupportVector) -> Option<SupportVector> {
        if !other.le(self) {
            return None;
        }
        Some(SupportVector::from_counts(
            self.iter().map(|(x, c)| (x, c - other.get(x))),
        ))
    }
}

impl fmt::Display for SupportVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{c}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SupportVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.counts.iter().map(|(x, c)| (x.to_string(), c)))
    }
}

pub fn support(m: &Multisegment) -> SupportVector {
    let mut s = SupportVector::zero();
    for d in m {
        for x in d.points() {
            s.add_at(x, 1);
        }
    }
    s
}

/// The minimal support point `b` and its multiplicity `B`.
pub fn b_stat(s: &SupportVector) -> Result<(i32, u32)> {
    s.counts
        .iter()
        .next()
        .map(|(&x, &c)| (x, c))
        .ok_or_else(|| Error::domain("empty support"))
}

/// Every multisegment whose support equals `s`, in canonical order.
pub fn multisegments_with_support(s: &SupportVector) -> Vec<Multisegment> {
    let mut out = Vec::new();
    if let (Some(lo), Some(hi)) = (s.min_point(), s.max_point()) {
        let mut acc = Vec::new();
        sweep(s, lo, hi + 1, &mut Vec::new(), &mut acc, &mut out);
    } else {
        out.push(Multisegment::empty());
    }
    out.sort();
    out
}

// At point `x`, `open` holds (begin, count) of segments containing `x - 1`.
fn sweep(
    s: &SupportVector,
    x: i32,
    stop: i32,
    open: &mut Vec<(i32, u32)>,
    acc: &mut Vec<Segment>,
    out: &mut Vec<Multisegment>,
) {
    let f = if x < stop { s.get(x) } else { 0 };
    let mut keep = vec![0u32; open.len()];
    choose_continuing(s, x, stop, f, 0, open, &mut keep, acc, out);
}

#[allow(clippy::too_many_arguments)]
fn choose_continuing(
    s: &SupportVector,
    x: i32,
    stop: i32,
    f: u32,
    idx: usize,
    open: &[(i32, u32)],
    keep: &mut Vec<u32>,
    acc: &mut Vec<Segment>,
    out: &mut Vec<Multisegment>,
) {
    let used: u32 = keep[..idx].iter().sum();
    if idx == open.len() {
        let closed_mark = acc.len();
        let mut next_open = Vec::new();
        for (i, &(b, c)) in open.iter().enumerate() {
            for _ in 0..(c - keep[i]) {
                acc.push(Segment { begin: b, end: x - 1 });
            }
            if keep[i] > 0 {
                next_open.push((b, keep[i]));
            }
        }
        if f > used {
            next_open.push((x, f - used));
        }
        if x >= stop {
            out.push(Multisegment::new(acc.iter().copied()));
        } else {
            sweep(s, x + 1, stop, &mut next_open, acc, out);
        }
        acc.truncate(closed_mark);
        return;
    }
    let (_, c) = open[idx];
    for k in 0..=c.min(f - used) {
        keep[idx] = k;
        choose_continuing(s, x, stop, f, idx + 1, open, keep, acc, out);
    }
    keep[idx] = 0;
}

/// Number of multisegments with support `s`, without materialising them.
pub fn count_with_support(s: &SupportVector) -> u128 {
    let (Some(lo), Some(hi)) = (s.min_point(), s.max_point()) else {
        return 1;
    };
    let mut memo = HashMap::new();
    count_from(s, lo, hi, Vec::new(), &mut memo)
}

// Only the multiset of open segment counts matters for the future, not their
// begins; `open` is kept as a sorted list of group sizes.
fn count_from(
    s: &SupportVector,
    x: i32,
    hi: i32,
    open: Vec<u32>,
    memo: &mut HashMap<(i32, Vec<u32>), u128>,
) -> u128 {
    if x > hi {
        return 1;
    }
    if let Some(&v) = memo.get(&(x, open.clone())) {
        return v;
    }
    let f = s.get(x);
    let mut total = 0u128;
    let mut keep = vec![0u32; open.len()];
    loop {
        let used: u32 = keep.iter().sum();
        if used <= f {
            let mut next: Vec<u32> = keep.iter().copied().filter(|&k| k > 0).collect();
            if f > used {
                next.push(f - used);
            }
            next.sort_unstable();
            total += count_from(s, x + 1, hi, next, memo);
        }
        // odometer over keep[i] in 0..=open[i]
        let mut i = 0;
        loop {
            if i == keep.len() {
                memo.insert((x, open), total);
                return total;
            }
            if keep[i] < open[i] {
                keep[i] += 1;
                break;
            }
            keep[i] = 0;
            i += 1;
        }
    }
}
