//! Gaussian polynomials `[m choose k]_q`.
//!
//! Coefficients come from the division-free recurrence
//! `[m, k] = [m-1, k-1] + q^k [m-1, k]`. A process-wide memo cache keyed on
//! `(m, min(k, m-k))` is shared by all callers; it is bounded by an entry
//! count and simply stops storing once full.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::qpoly::IntPoly;

pub const DEFAULT_CACHE_LIMIT: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum CacheFileError {
    #[error("cache file i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad cache key {0:?}")]
    BadKey(String),
    #[error("cache entry {m},{k} is not the q-binomial it claims to be")]
    BadEntry { m: u32, k: u32 },
}

/// Canonical cache key: `k <= m - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QBinomKey {
    pub m: u32,
    pub k: u32,
}

impl QBinomKey {
    /// `None` when the coefficient is the zero polynomial (`k < 0`, `k > m`
    /// or `m < 0`).
    pub fn canonical(m: i64, k: i64) -> Option<Self> {
        if m < 0 || k < 0 || k > m {
            return None;
        }
        let k = k.min(m - k);
        Some(QBinomKey {
            m: m as u32,
            k: k as u32,
        })
    }
}

/// Thread-safe memo table for q-binomials.
#[derive(Debug)]
pub struct QBinomCache {
    entries: RwLock<HashMap<QBinomKey, Arc<IntPoly>>>,
    limit: usize,
}

impl Default for QBinomCache {
    fn default() -> Self {
        Self::with_limit(DEFAULT_CACHE_LIMIT)
    }
}

impl QBinomCache {
    pub fn with_limit(limit: usize) -> Self {
        QBinomCache {
            entries: RwLock::new(HashMap::new()),
            limit,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn clear(&self) {
        self.entries.write().unwrap().clear();
    }

    fn lookup(&self, key: QBinomKey) -> Option<Arc<IntPoly>> {
        self.entries.read().unwrap().get(&key).cloned()
    }

    fn store(&self, key: QBinomKey, poly: Arc<IntPoly>) {
        let mut entries = self.entries.write().unwrap();
        if entries.len() < self.limit {
            entries.entry(key).or_insert(poly);
        }
    }

    /// `[m choose k]_q`, zero outside `0 <= k <= m`.
    pub fn get(&self, m: i64, k: i64) -> Arc<IntPoly> {
        let Some(key) = QBinomKey::canonical(m, k) else {
            return Arc::new(IntPoly::zero());
        };
        if key.k == 0 {
            return Arc::new(IntPoly::one());
        }
        if let Some(hit) = self.lookup(key) {
            return hit;
        }

        // Fill missing ancestors with an explicit stack. Results that do
        // not fit in the shared table live in `scratch` for this call.
        let mut scratch: HashMap<QBinomKey, Arc<IntPoly>> = HashMap::new();
        let mut stack = vec![key];
        while let Some(&top) = stack.last() {
            if scratch.contains_key(&top) {
                stack.pop();
                continue;
            }
            let (m, k) = (top.m as i64, top.k as i64);
            let deps = [(m - 1, k - 1), (m - 1, k)];
            let mut missing = false;
            let mut parts: [Option<Arc<IntPoly>>; 2] = [None, None];
            for (slot, &(dm, dk)) in parts.iter_mut().zip(&deps) {
                match QBinomKey::canonical(dm, dk) {
                    None => *slot = Some(Arc::new(IntPoly::zero())),
                    Some(d) if d.k == 0 => *slot = Some(Arc::new(IntPoly::one())),
                    Some(d) => match scratch.get(&d).cloned().or_else(|| self.lookup(d)) {
                        Some(p) => *slot = Some(p),
                        None => {
                            missing = true;
                            stack.push(d);
                        }
                    },
                }
            }
            if missing {
                continue;
            }
            let [Some(left), Some(right)] = parts else {
                unreachable!()
            };
            let poly = Arc::new(&*left + &right.shift(k as usize));
            self.store(top, Arc::clone(&poly));
            scratch.insert(top, poly);
            stack.pop();
        }
        scratch.remove(&key).expect("target computed")
    }

    /// Loads entries written by [`QBinomCache::save_json`]. Every entry is
    /// validated (degree, symmetry, value at `q = 1`) before anything is
    /// inserted; a single bad entry rejects the whole file.
    pub fn load_json(&self, path: &Path) -> Result<usize, CacheFileError> {
        let text = fs::read_to_string(path)?;
        let raw: BTreeMap<String, IntPoly> = serde_json::from_str(&text)?;
        let mut parsed = Vec::with_capacity(raw.len());
        for (name, poly) in raw {
            let key = parse_key(&name)?;
            if !is_plausible_entry(key, &poly) {
                return Err(CacheFileError::BadEntry { m: key.m, k: key.k });
            }
            parsed.push((key, poly));
        }
        let n = parsed.len();
        for (key, poly) in parsed {
            self.store(key, Arc::new(poly));
        }
        Ok(n)
    }

    /// Like [`QBinomCache::load_json`], but a missing file is an empty
    /// cache and a corrupt one is dropped with a warning.
    pub fn load_json_lenient(&self, path: &Path) -> usize {
        match self.load_json(path) {
            Ok(n) => n,
            Err(CacheFileError::Io(e)) if e.kind() == io::ErrorKind::NotFound => 0,
            Err(e) => {
                log::warn!("discarding q-binomial cache {}: {e}", path.display());
                0
            }
        }
    }

    pub fn save_json(&self, path: &Path) -> Result<(), CacheFileError> {
        let entries = self.entries.read().unwrap();
        let sorted: BTreeMap<QBinomKey, &IntPoly> =
            entries.iter().map(|(k, v)| (*k, v.as_ref())).collect();
        let named: Vec<(String, &IntPoly)> = sorted
            .into_iter()
            .map(|(k, v)| (format!("{},{}", k.m, k.k), v))
            .collect();
        let mut map = serde_json::Map::new();
        for (name, poly) in named {
            map.insert(name, serde_json::to_value(poly)?);
        }
        fs::write(path, serde_json::to_string(&map)?)?;
        Ok(())
    }
}

fn parse_key(name: &str) -> Result<QBinomKey, CacheFileError> {
    let bad = || CacheFileError::BadKey(name.to_owned());
    let (m, k) = name.split_once(',').ok_or_else(bad)?;
    let m: i64 = m.trim().parse().map_err(|_| bad())?;
    let k: i64 = k.trim().parse().map_err(|_| bad())?;
    match QBinomKey::canonical(m, k) {
        Some(key) if key.k == k as u32 && key.k > 0 => Ok(key),
        _ => Err(bad()),
    }
}

fn is_plausible_entry(key: QBinomKey, poly: &IntPoly) -> bool {
    let (m, k) = (key.m as usize, key.k as usize);
    poly.degree() == Some(k * (m - k))
        && poly.symmetry() == Ok(Some(k * (m - k)))
        && poly.is_nonnegative()
        && poly.coeff_sum() == binomial(m as u64, k as u64)
}

/// Ordinary binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn global_cache() -> &'static QBinomCache {
    static CACHE: OnceLock<QBinomCache> = OnceLock::new();
    CACHE.get_or_init(QBinomCache::default)
}

/// `[m choose k]_q` through the process-wide cache.
pub fn qbinomial(m: i64, k: i64) -> IntPoly {
    global_cache().get(m, k).as_ref().clone()
}

/// `[m choose k]_q` without touching any cache: the recurrence is run row by
/// row, keeping only the columns `0..=min(k, m-k)`.
pub fn qbinomial_uncached(m: i64, k: i64) -> IntPoly {
    let Some(key) = QBinomKey::canonical(m, k) else {
        return IntPoly::zero();
    };
    let width = key.k as usize;
    let mut row = vec![IntPoly::zero(); width + 1];
    row[0] = IntPoly::one();
    for _ in 1..=key.m {
        for j in (1..=width).rev() {
            row[j] = &row[j - 1] + &row[j].shift(j);
        }
    }
    row.pop().unwrap_or_default()
}

/// Coefficient vector of `[m choose k]_q` obtained by counting partitions
/// that fit in a `k x (m - k)` box, independently of the q-Pascal
/// recurrence. Entry `s` counts partitions of `s` into at most `k` parts,
/// each at most `m - k`.
pub fn box_partition_counts(m: usize, k: usize) -> Vec<BigInt> {
    if k > m {
        return Vec::new();
    }
    let max_part = m - k;
    let top = k * max_part;
    // layer[j][s]: partitions of s into at most j parts, each at most the
    // current part bound. Raising the bound from p-1 to p adds the
    // partitions whose largest part is exactly p.
    let mut layer = vec![vec![BigInt::zero(); top + 1]; k + 1];
    for row in layer.iter_mut() {
        row[0] = BigInt::one();
    }
    for part in 1..=max_part {
        for j in 1..=k {
            let (done, rest) = layer.split_at_mut(j);
            let fewer = &done[j - 1];
            for s in part..=top {
                rest[0][s] += &fewer[s - part];
            }
        }
    }
    layer.swap_remove(k)
}

/// Coefficient of `q^i` in `[m choose k]_q` as a box-partition count.
pub fn coeff_by_partition_count(m: usize, k: usize, i: usize) -> BigInt {
    box_partition_counts(m, k)
        .get(i)
        .cloned()
        .unwrap_or_default()
}
