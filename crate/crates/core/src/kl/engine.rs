use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::perm::{bruhat_leq, bruhat_leq_unchecked, Permutation};
use crate::error::{Error, Result};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "MULTISEG_CACHE_DIR";

const CACHE_FILE: &str = "kl-v1.cache";
const CACHE_HEADER: &str = "multiseg-kl-cache v1";

/// A Kazhdan–Lusztig polynomial, coefficients in ascending powers of `q`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KLPolynomial {
    coefficients: Vec<u64>,
}

impl KLPolynomial {
    pub fn zero() -> Self {
        KLPolynomial { coefficients: Vec::new() }
    }

    pub fn one() -> Self {
        KLPolynomial { coefficients: vec![1] }
    }

    pub fn from_coefficients(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        KLPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> u64 {
        self.coefficients.get(k).copied().unwrap_or(0)
    }

    pub fn at_one(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate().filter(|(_, &c)| c != 0) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}q")?,
                (k, 1) => write!(f, "q^{k}")?,
                (k, c) => write!(f, "{c}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KLPolynomial({self})")
    }
}

type Key = (u8, u64, u64);

/// Memoised Kazhdan–Lusztig polynomials for symmetric groups, optionally
/// backed by an on-disk cache. Concurrent readers, serialised writers.
pub struct KlEngine {
    memo: RwLock<HashMap<Key, KLPolynomial>>,
    fresh: RwLock<HashSet<Key>>,
    cache_file: Option<PathBuf>,
}

impl Default for KlEngine {
    fn default() -> Self {
        KlEngine::new()
    }
}

impl KlEngine {
    /// In-memory only.
    pub fn new() -> Self {
        KlEngine {
            memo: RwLock::new(HashMap::new()),
            fresh: RwLock::new(HashSet::new()),
            cache_file: None,
        }
    }

    /// Loads (or starts) the cache in `dir`. A corrupt cache is an
    /// [`Error::Cache`], never silently discarded.
    pub fn with_cache_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(CACHE_FILE);
        let mut engine = KlEngine::new();
        if path.exists() {
            let loaded = load_cache(&path)?;
            *engine.memo.get_mut().expect("memo lock") = loaded;
        }
        engine.cache_file = Some(path);
        Ok(engine)
    }

    /// `--cache-dir` if given, else `$MULTISEG_CACHE_DIR`, else in-memory.
    pub fn from_config(cache_dir: Option<&Path>) -> Result<Self> {
        match cache_dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(dir) => KlEngine::with_cache_dir(dir),
            None => Ok(KlEngine::new()),
        }
    }

    pub fn cache_file(&self) -> Option<&Path> {
        self.cache_file.as_deref()
    }

    /// Number of memoised polynomials.
    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends entries computed since the last flush to the cache file.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.cache_file else {
            return Ok(());
        };
        let mut fresh = self.fresh.write().expect("fresh lock");
        if fresh.is_empty() {
            return Ok(());
        }
        let memo = self.memo.read().expect("memo lock");
        let mut keys: Vec<&Key> = fresh.iter().collect();
        keys.sort();
        let mut text = String::new();
        if !path.exists() {
            text.push_str(CACHE_HEADER);
            text.push('\n');
        }
        for key in keys {
            text.push_str(&record_line(key, &memo[key]));
            text.push('\n');
        }
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Cache(format!("cannot open {}: {e}", path.display())))?;
        file.write_all(text.as_bytes())
            .map_err(|e| Error::Cache(format!("cannot write {}: {e}", path.display())))?;
        fresh.clear();
        Ok(())
    }

    /// `P_{u,v}`. Degree mismatch is a usage error.
    pub fn kl_polynomial(&self, u: &Permutation, v: &Permutation) -> Result<KLPolynomial> {
        if !bruhat_leq(u, v)? {
            return Ok(KLPolynomial::zero());
        }
        let p = self.p(*u, *v)?;
        check_polynomial(u, v, &p)?;
        Ok(KLPolynomial::from_coefficients(p.into_iter().map(|c| c as u64).collect()))
    }

    /// Recursion on a right descent of `w`, with coefficients kept signed so
    /// that intermediate cancellation is visible.
    fn p(&self, x: Permutation, w: Permutation) -> Result<Vec<i64>> {
        if !bruhat_leq_unchecked(&x, &w) {
            return Ok(Vec::new());
        }
        let x = push_up(x, &w);
        if x == w {
            return Ok(vec![1]);
        }
        let key = (w.degree() as u8, x.code(), w.code());
        if let Some(p) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(p.coefficients.iter().map(|&c| c as i64).collect());
        }

        let s = w.right_descents().next().expect("w is not the identity");
        let v = w.swap_positions(s, s + 1);
        let xs = x.swap_positions(s, s + 1);
        let (lw, lx) = (w.length() as usize, x.length() as usize);
        // after push_up, x shares the descent: xs < x, so c = 1
        let mut out = vec![0i64; (lw - lx) / 2 + 2];
        add_shifted(&mut out, &self.p(xs, v)?, 0, 1);
        add_shifted(&mut out, &self.p(x, v)?, 1, 1);

        let lv = lw - 1;
        for z in interval(&x, &v) {
            if z == v || !z.has_right_descent(s) {
                continue;
            }
            let lz = z.length() as usize;
            if (lv - lz) % 2 == 0 {
                continue;
            }
            let mu = self.p(z, v)?.get((lv - lz - 1) / 2).copied().unwrap_or(0);
            if mu != 0 {
                add_shifted(&mut out, &self.p(x, z)?, (lw - lz) / 2, -mu);
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        if out.iter().any(|&c| c < 0) {
            return Err(Error::invariant(format!(
                "negative Kazhdan–Lusztig coefficient for ({x}, {w}): {out:?}"
            )));
        }
        let poly = KLPolynomial {
            coefficients: out.iter().map(|&c| c as u64).collect(),
        };
        self.memo.write().expect("memo lock").insert(key, poly);
        if self.cache_file.is_some() {
            self.fresh.write().expect("fresh lock").insert(key);
        }
        Ok(out)
    }
}

/// `P_{x,w} = P_{xs,w}` whenever `ws < w`, and likewise on the left; pushes
/// `x` up until it shares every descent of `w`.
fn push_up(mut x: Permutation, w: &Permutation) -> Permutation {
    let n = w.degree();
    loop {
        let mut moved = false;
        for i in 0..n.saturating_sub(1) {
            if w.has_right_descent(i) && !x.has_right_descent(i) {
                x = x.swap_positions(i, i + 1);
                moved = true;
            }
            if w.has_left_descent(i as u8) && !x.has_left_descent(i as u8) {
                x = x.swap_values(i as u8);
                moved = true;
            }
        }
        if !moved {
            return x;
        }
    }
}

/// The Bruhat interval `[x, v]`, by walking down covers from `v`.
fn interval(x: &Permutation, v: &Permutation) -> Vec<Permutation> {
    let lx = x.length();
    let mut seen = HashSet::from([*v]);
    let mut frontier = vec![*v];
    let mut out = vec![*v];
    while let Some(z) = frontier.pop() {
        if z.length() <= lx {
            continue;
        }
        for y in z.lower_covers() {
            if bruhat_leq_unchecked(x, &y) && seen.insert(y) {
                out.push(y);
                frontier.push(y);
            }
        }
    }
    out
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, factor: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + shift] += factor * c;
    }
}

fn check_polynomial(u: &Permutation, v: &Permutation, p: &[i64]) -> Result<()> {
    if p.first() != Some(&1) {
        return Err(Error::invariant(format!("P_{{{u},{v}}} has constant term {:?}", p.first())));
    }
    if u != v {
        let bound = (v.length() - u.length() - 1) / 2;
        if p.len() - 1 > bound as usize {
            return Err(Error::invariant(format!(
                "deg P_{{{u},{v}}} = {} exceeds {bound}",
                p.len() - 1
            )));
        }
    }
    Ok(())
}

fn record_body(key: &Key, p: &KLPolynomial) -> String {
    let (n, u, v) = *key;
    let coeffs: Vec<String> = p.coefficients.iter().map(u64::to_string).collect();
    format!("{n} {u:x} {v:x} {}", coeffs.join(","))
}

fn record_line(key: &Key, p: &KLPolynomial) -> String {
    let body = record_body(key, p);
    format!("{body} {}", checksum(&body))
}

fn checksum(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn load_cache(path: &Path) -> Result<HashMap<Key, KLPolynomial>> {
    let corrupt = |line: usize, what: &str| Error::Cache(format!("{}:{line}: {what}", path.display()));
    let file = fs::File::open(path).map_err(|e| Error::Cache(format!("cannot open {}: {e}", path.display())))?;
    let mut lines = BufReader::new(file).lines();
    match lines.next() {
        Some(Ok(h)) if h == CACHE_HEADER => {}
        Some(Ok(h)) => return Err(corrupt(1, &format!("unknown header {h:?}"))),
        Some(Err(e)) => return Err(corrupt(1, &e.to_string())),
        None => return Ok(HashMap::new()),
    }
    let mut out = HashMap::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| corrupt(lineno, &e.to_string()))?;
        let (body, sum) = line.rsplit_once(' ').ok_or_else(|| corrupt(lineno, "truncated record"))?;
        if checksum(body) != sum {
            return Err(corrupt(lineno, "checksum mismatch"));
        }
        let fields: Vec<&str> = body.split(' ').collect();
        let [n, u, v, coeffs] = fields.as_slice() else {
            return Err(corrupt(lineno, "wrong field count"));
        };
        let parse = || -> Option<(Key, KLPolynomial)> {
            let key = (n.parse().ok()?, u64::from_str_radix(u, 16).ok()?, u64::from_str_radix(v, 16).ok()?);
            let coefficients = coeffs.split(',').map(|c| c.parse().ok()).collect::<Option<Vec<u64>>>()?;
            Some((key, KLPolynomial { coefficients }))
        };
        let (key, p) = parse().ok_or_else(|| corrupt(lineno, "malformed record"))?;
        out.insert(key, p);
    }
    Ok(out)
}
