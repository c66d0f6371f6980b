#![allow(dead_code)]

use multiseg::width::is_ladder;
use multiseg::{Multisegment, Segment, SupportVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ms(s: &str) -> Multisegment {
    s.parse().unwrap()
}

pub fn segments_in(lo: i32, hi: i32) -> Vec<Segment> {
    (lo..=hi)
        .flat_map(|b| (b..=hi).map(move |e| Segment::new(b, e).unwrap()))
        .collect()
}

/// Every multisegment with at most `max_segments` segments inside `[lo, hi]`.
pub fn all_multisegments(max_segments: usize, lo: i32, hi: i32) -> Vec<Multisegment> {
    fn go(segs: &[Segment], start: usize, left: usize, cur: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        out.push(Multisegment::new(cur.iter().copied()));
        if left == 0 {
            return;
        }
        for i in start..segs.len() {
            cur.push(segs[i]);
            go(segs, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let segs = segments_in(lo, hi);
    let mut out = Vec::new();
    go(&segs, 0, max_segments, &mut Vec::new(), &mut out);
    out
}

/// Every ladder inside `[lo, hi]` of degree at most `max_degree`, including
/// the empty one.
pub fn all_ladders(lo: i32, hi: i32, max_degree: u32) -> Vec<Multisegment> {
    fn go(lo: i32, hi: i32, budget: u32, last: Option<Segment>, cur: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        out.push(Multisegment::new(cur.iter().copied()));
        let (b0, e0) = last.map_or((lo, lo - 1), |d| (d.begin() + 1, d.end() + 1));
        for b in b0..=hi {
            for e in b.max(e0)..=hi {
                let d = Segment::new(b, e).unwrap();
                if d.len() > budget {
                    break;
                }
                cur.push(d);
                go(lo, hi, budget - d.len(), Some(d), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lo, hi, max_degree, None, &mut Vec::new(), &mut out);
    debug_assert!(out.iter().all(is_ladder));
    out
}

pub fn random_multisegment(rng: &mut ChaCha8Rng, max_segments: usize, hi: i32) -> Multisegment {
    let k = rng.gen_range(1..=max_segments);
    Multisegment::new((0..k).map(|_| {
        let b = rng.gen_range(0..=hi);
        Segment::new(b, rng.gen_range(b..=hi)).unwrap()
    }))
}

/// A uniformly random ladder among those with a uniformly random number of
/// segments, by rejection.
pub fn random_ladder(rng: &mut ChaCha8Rng, max_segments: usize, hi: i32) -> Multisegment {
    loop {
        let k = rng.gen_range(1..=max_segments);
        let mut begins: Vec<i32> = (0..k).map(|_| rng.gen_range(0..=hi)).collect();
        let mut ends: Vec<i32> = (0..k).map(|_| rng.gen_range(0..=hi)).collect();
        begins.sort_unstable();
        ends.sort_unstable();
        let strict = begins.windows(2).all(|w| w[0] < w[1]) && ends.windows(2).all(|w| w[0] < w[1]);
        if strict && begins.iter().zip(&ends).all(|(b, e)| b <= e) {
            return Multisegment::new(begins.into_iter().zip(ends).map(|(b, e)| Segment::new(b, e).unwrap()));
        }
    }
}

/// Support vectors on points `0..points` with total at most `max_total`,
/// nonzero at both ends.
pub fn supports(max_total: u32, points: usize) -> Vec<SupportVector> {
    fn go(k: usize, cur: &mut Vec<u32>, rem: u32, out: &mut Vec<SupportVector>) {
        if cur.len() == k {
            if cur[0] > 0 && cur[k - 1] > 0 {
                out.push(SupportVector::from_counts(cur.iter().enumerate().map(|(i, &c)| (i as i32, c))));
            }
            return;
        }
        for c in 0..=rem {
            cur.push(c);
            go(k, cur, rem - c, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=points {
        go(k, &mut Vec::new(), max_total, &mut out);
    }
    out
}

/// Kazhdan–Lusztig polynomials from R-polynomials, written independently of
/// the library: Bruhat order by the tableau criterion, `R` by its descent
/// recursion, and `P` from `q^{l(w)-l(x)} P̄_{x,w} - P_{x,w} = Σ_{x<y<=w} R_{x,y} P_{y,w}`.
#[cfg(feature = "kl-oracle")]
pub mod rpoly {
    use std::collections::HashMap;

    pub type Perm = Vec<u8>;

    pub fn length(p: &[u8]) -> usize {
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    /// Tableau criterion: sorted prefixes compare entrywise.
    pub fn bruhat(u: &[u8], v: &[u8]) -> bool {
        (1..u.len()).all(|k| {
            let (mut a, mut b) = (u[..k].to_vec(), v[..k].to_vec());
            a.sort_unstable();
            b.sort_unstable();
            a.iter().zip(&b).all(|(x, y)| x <= y)
        })
    }

    pub fn all_perms(n: usize) -> Vec<Perm> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, (n - 1) as u8);
                out.push(q);
            }
        }
        out
    }

    fn add(a: &mut Vec<i64>, b: &[i64], shift: usize, k: i64) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, 0);
        }
        for (i, &c) in b.iter().enumerate() {
            a[i + shift] += k * c;
        }
    }

    fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[derive(Default)]
    pub struct Oracle {
        r: HashMap<(Perm, Perm), Vec<i64>>,
        p: HashMap<Perm, HashMap<Perm, Vec<i64>>>,
    }

    impl Oracle {
        pub fn r(&mut self, x: &[u8], w: &[u8]) -> Vec<i64> {
            if !bruhat(x, w) {
                return vec![];
            }
            if x == w {
                return vec![1];
            }
            if let Some(v) = self.r.get(&(x.to_vec(), w.to_vec())) {
                return v.clone();
            }
            let s = (0..w.len() - 1).find(|&i| w[i] > w[i + 1]).unwrap();
            let mut ws = w.to_vec();
            ws.swap(s, s + 1);
            let mut xs = x.to_vec();
            xs.swap(s, s + 1);
            let out = if x[s] > x[s + 1] {
                self.r(&xs, &ws)
            } else {
                let mut acc = Vec::new();
                add(&mut acc, &self.r(x, &ws), 1, 1);
                add(&mut acc, &self.r(x, &ws), 0, -1);
                add(&mut acc, &self.r(&xs, &ws), 1, 1);
                acc
            };
            self.r.insert((x.to_vec(), w.to_vec()), out.clone());
            out
        }

        pub fn p(&mut self, x: &[u8], w: &[u8]) -> Vec<i64> {
            if !self.p.contains_key(w) {
                let column = self.column(w);
                self.p.insert(w.to_vec(), column);
            }
            let mut v = self.p[w].get(x).cloned().unwrap_or_default();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        }

        fn column(&mut self, w: &[u8]) -> HashMap<Perm, Vec<i64>> {
            let mut below: Vec<Perm> = all_perms(w.len()).into_iter().filter(|x| bruhat(x, w)).collect();
            below.sort_by_key(|x| std::cmp::Reverse(length(x)));
            let lw = length(w);
            let mut col: HashMap<Perm, Vec<i64>> = HashMap::new();
            for x in &below {
                if x.as_slice() == w {
                    col.insert(x.clone(), vec![1]);
                    continue;
                }
                let l = lw - length(x);
                let mut q = Vec::new();
                for y in &below {
                    if y != x && length(y) > length(x) && bruhat(x, y) {
                        let term = mul(&self.r(x, y), &col[y]);
                        add(&mut q, &term, 0, 1);
                    }
                }
                let p: Vec<i64> = (0..=(l - 1) / 2).map(|k| -q.get(k).copied().unwrap_or(0)).collect();
                col.insert(x.clone(), p);
            }
            col
        }
    }
}
