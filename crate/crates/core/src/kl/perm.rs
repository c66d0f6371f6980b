use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest degree the packed encoding supports (4 bits per image).
pub const MAX_DEGREE: usize = 16;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    // image of position i (0-based) in bits 4i..4i+4, also 0-based
    code: u64,
}

impl Permutation {
    /// From 1-based one-line images.
    pub fn new(images: &[u32]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::Resource(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = [false; MAX_DEGREE];
        for &x in images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::Usage(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Self::from_zero_based(images.iter().map(|&x| (x - 1) as u8)))
    }

    pub(crate) fn from_zero_based(images: impl IntoIterator<Item = u8>) -> Self {
        let mut code = 0u64;
        let mut n = 0u8;
        for (i, x) in images.into_iter().enumerate() {
            code |= (x as u64) << (4 * i);
            n += 1;
        }
        Permutation { n, code }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        Self::from_zero_based((0..n as u8).collect::<Vec<_>>())
    }

    pub fn longest(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        Self::from_zero_based((0..n as u8).rev().collect::<Vec<_>>())
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub(crate) fn code(&self) -> u64 {
        self.code
    }

    /// 0-based image of 0-based position `i`.
    #[inline]
    pub(crate) fn at(&self, i: usize) -> u8 {
        ((self.code >> (4 * i)) & 0xf) as u8
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<u32> {
        (0..self.degree()).map(|i| self.at(i) as u32 + 1).collect()
    }

    pub fn length(&self) -> u32 {
        let n = self.degree();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                inv += (self.at(i) > self.at(j)) as u32;
            }
        }
        inv
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            inv[self.at(i) as usize] = i as u8;
        }
        Self::from_zero_based(inv)
    }

    /// `self · (i j)`: swaps the entries at positions `i` and `j`.
    #[inline]
    pub(crate) fn swap_positions(&self, i: usize, j: usize) -> Self {
        let (a, b) = (self.at(i) as u64, self.at(j) as u64);
        let clear = !((0xf << (4 * i)) | (0xf << (4 * j)));
        Permutation {
            n: self.n,
            code: (self.code & clear) | (b << (4 * i)) | (a << (4 * j)),
        }
    }

    /// `s_i · self`: swaps the values `i` and `i + 1` (0-based).
    pub(crate) fn swap_values(&self, i: u8) -> Self {
        let p = (0..self.degree()).find(|&k| self.at(k) == i).expect("value present");
        let q = (0..self.degree()).find(|&k| self.at(k) == i + 1).expect("value present");
        self.swap_positions(p, q)
    }

    /// Right descents: positions `i` with `w(i) > w(i+1)`, 0-based.
    pub fn right_descents(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree().saturating_sub(1)).filter(|&i| self.at(i) > self.at(i + 1))
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.at(i) > self.at(i + 1)
    }

    /// Whether `s_i w < w`, i.e. `i + 1` appears before `i` (0-based values).
    pub fn has_left_descent(&self, i: u8) -> bool {
        let p = (0..self.degree()).find(|&k| self.at(k) == i).expect("value present");
        let q = (0..self.degree()).find(|&k| self.at(k) == i + 1).expect("value present");
        q < p
    }

    /// Elements covered by `self` in Bruhat order: `w·(i j)` with `i < j`,
    /// `w(i) > w(j)` and no position between carrying a value in between.
    pub(crate) fn lower_covers(&self) -> Vec<Permutation> {
        let n = self.degree();
        let mut out = Vec::new();
        for i in 0..n {
            let wi = self.at(i);
            let mut ceiling = 0u8; // largest value below wi seen so far
            let mut any = false;
            for j in i + 1..n {
                let wj = self.at(j);
                if wj < wi && (!any || wj > ceiling) {
                    out.push(self.swap_positions(i, j));
                    ceiling = wj;
                    any = true;
                }
            }
        }
        out
    }
}

/// Bruhat order by the rank-matrix criterion: `u <= v` iff for all `i, j`,
/// `#{a <= i : u(a) >= j} <= #{a <= i : v(a) >= j}`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.degree() != v.degree() {
        return Err(Error::Usage(format!(
            "degree mismatch: {u} has degree {}, {v} has degree {}",
            u.degree(),
            v.degree()
        )));
    }
    Ok(bruhat_leq_unchecked(u, v))
}

pub(crate) fn bruhat_leq_unchecked(u: &Permutation, v: &Permutation) -> bool {
    let n = u.degree();
    let mut cu = [0i32; MAX_DEGREE + 1];
    let mut cv = [0i32; MAX_DEGREE + 1];
    for i in 0..n {
        // cu[j] = #{a <= i : u(a) >= j}
        for j in 0..=u.at(i) as usize {
            cu[j] += 1;
        }
        for j in 0..=v.at(i) as usize {
            cv[j] += 1;
        }
        if (0..n).any(|j| cu[j] > cv[j]) {
            return false;
        }
    }
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images = self.images();
        if self.degree() < 10 {
            images.iter().try_for_each(|x| write!(f, "{x}"))
        } else {
            let parts: Vec<String> = images.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts `"2,1,3"` or, for degree below 10, the compact `"213"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed: Option<Vec<u32>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        match parsed {
            Some(images) if !images.is_empty() => Permutation::new(&images),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("expected a permutation in one-line notation, got {s:?}"),
            }),
        }
    }
}
