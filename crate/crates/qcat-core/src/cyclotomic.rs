//! Cyclotomic polynomials, Euler's totient, and a process-wide cache.
//!
//! The nth cyclotomic polynomial `Phi_n(q)` is the minimal polynomial of a
//! primitive nth root of unity. It is computed here entirely inside
//! `Z[q]` through the divisor recursion
//!
//! ```text
//! Phi_n(q) = (q^n - 1) / prod_{d | n, d < n} Phi_d(q),
//! ```
//!
//! using exact division only, never complex roots. The factorization
//! `prod_{d | n} Phi_d(q) = q^n - 1` also serves as a whole-family test
//! invariant. `Phi_n` is monic of degree `phi(n)`, with constant term `1`
//! for `n >= 2` and `-1` for `n = 1`.
//!
//! Computed polynomials are memoized in a [`CyclotomicCache`]. A cache can
//! optionally be backed by a directory on disk holding one text file that
//! maps `n` to the ascending coefficient list of `Phi_n`, one record per
//! line, in the form `n: c0,c1,...,cd`. The directory comes from the
//! `QCAT_CACHE_DIR` environment variable or an explicit setting, with the
//! explicit setting taking precedence (see [`resolve_cache_dir`]).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num::bigint::BigInt;
use num::traits::{One, Zero};
use thiserror::Error;

use crate::poly::{IntPoly, PolyError};

/// Name of the persistent cache file inside the cache directory.
pub const CACHE_FILE_NAME: &str = "cyclotomic.cache";

/// Environment variable consulted for the cache directory when no explicit
/// directory is given.
pub const CACHE_DIR_ENV: &str = "QCAT_CACHE_DIR";

/// Errors from totient computation, the divisor recursion, and cache
/// persistence.
#[derive(Debug, Error)]
pub enum CyclotomicError {
    /// `totient(0)` has no value.
    #[error("totient undefined")]
    TotientUndefined,
    /// An exact division failed, which would indicate an arithmetic bug.
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// The persistent cache file is unreadable or fails validation.
    #[error("invalid cache file: {0}")]
    InvalidCacheFile(String),
    /// Reading or writing the persistent cache file failed.
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
}

/// Euler's totient function by trial-division factorization.
pub fn totient(n: u64) -> Result<u64, CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::TotientUndefined);
    }
    let mut remaining = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= remaining {
        if remaining % p == 0 {
            let mut pk = 1;
            while remaining % p == 0 {
                remaining /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if remaining > 1 {
        phi *= remaining - 1;
    }
    Ok(phi)
}

/// Ascending divisors of `n`.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The nth cyclotomic polynomial, memoized in the process-wide cache.
pub fn cyclotomic(n: u64) -> Result<Arc<IntPoly>, CyclotomicError> {
    global_cache().get(n)
}

/// `Phi_n(q)^e`, computed from the cached `Phi_n`.
pub fn cyclotomic_power(n: u64, e: u32) -> Result<IntPoly, CyclotomicError> {
    global_cache().power(n, e)
}

/// The process-wide cyclotomic cache. It starts without disk backing;
/// [`CyclotomicCache::attach_dir`] adds it.
pub fn global_cache() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(CyclotomicCache::new)
}

/// Resolves the cache directory: an explicit setting wins over the
/// `QCAT_CACHE_DIR` environment variable; `None` when neither is present.
pub fn resolve_cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

/// Memoizing store of cyclotomic polynomials with optional disk
/// persistence.
///
/// Entries are immutable once inserted. Concurrent readers are served from
/// a shared map; a computation for a new `n` happens outside the lock, so
/// two threads may briefly duplicate work, which is harmless because the
/// results are identical.
pub struct CyclotomicCache {
    entries: RwLock<HashMap<u64, Arc<IntPoly>>>,
    dir: RwLock<Option<PathBuf>>,
}

impl CyclotomicCache {
    /// An empty cache without disk backing.
    pub fn new() -> Self {
        CyclotomicCache {
            entries: RwLock::new(HashMap::new()),
            dir: RwLock::new(None),
        }
    }

    /// Attaches a backing directory, creating it if absent, and loads the
    /// cache file inside it when one exists. Loaded entries are validated
    /// (monic, degree `phi(n)`) before use.
    pub fn attach_dir(&self, dir: &Path) -> Result<usize, CyclotomicError> {
        fs::create_dir_all(dir)?;
        let file = dir.join(CACHE_FILE_NAME);
        let mut loaded = 0;
        if file.exists() {
            let text = fs::read_to_string(&file)?;
            let parsed = parse_cache_file(&text)?;
            loaded = parsed.len();
            let mut entries = self.entries.write().unwrap_or_else(|e| e.into_inner());
            for (n, poly) in parsed {
                entries.entry(n).or_insert_with(|| Arc::new(poly));
            }
        }
        *self.dir.write().unwrap_or_else(|e| e.into_inner()) = Some(dir.to_path_buf());
        Ok(loaded)
    }

    /// The backing directory, if one is attached.
    pub fn dir(&self) -> Option<PathBuf> {
        self.dir.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// `Phi_n(q)`, computing and memoizing it and all its divisors'
    /// polynomials as needed.
    pub fn get(&self, n: u64) -> Result<Arc<IntPoly>, CyclotomicError> {
        if n == 0 {
            return Err(CyclotomicError::TotientUndefined);
        }
        if let Some(hit) = self.lookup(n) {
            return Ok(hit);
        }
        // Compute divisors bottom-up so each exact division sees all the
        // smaller polynomials already cached.
        for d in divisors(n) {
            if self.lookup(d).is_some() {
                continue;
            }
            let value = Arc::new(self.compute(d)?);
            self.entries
                .write()
                .unwrap_or_else(|e| e.into_inner())
                .entry(d)
                .or_insert(value);
        }
        Ok(self.lookup(n).expect("inserted by the loop above"))
    }

    /// `Phi_n(q)^e` from the cached `Phi_n`.
    pub fn power(&self, n: u64, e: u32) -> Result<IntPoly, CyclotomicError> {
        let base = self.get(n)?;
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.entries.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    /// Whether the cache holds no entries.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted list of memoized indices.
    pub fn stored_indices(&self) -> Vec<u64> {
        let mut ns: Vec<u64> = self
            .entries
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .keys()
            .copied()
            .collect();
        ns.sort_unstable();
        ns
    }

    /// Computes `Phi_n` for all `1 <= n <= n_max`.
    pub fn warm(&self, n_max: u64) -> Result<(), CyclotomicError> {
        for n in 1..=n_max {
            self.get(n)?;
        }
        Ok(())
    }

    /// Writes every memoized entry to the cache file in the attached
    /// directory, sorted by `n`. Returns the file path.
    pub fn persist(&self) -> Result<PathBuf, CyclotomicError> {
        let dir = self.dir().ok_or_else(|| {
            CyclotomicError::InvalidCacheFile("no cache directory attached".into())
        })?;
        let mut out = String::new();
        let entries = self.entries.read().unwrap_or_else(|e| e.into_inner());
        let mut ns: Vec<u64> = entries.keys().copied().collect();
        ns.sort_unstable();
        for n in ns {
            let poly = &entries[&n];
            let coeffs: Vec<String> = poly.coeffs().iter().map(BigInt::to_string).collect();
            writeln!(out, "{n}: {}", coeffs.join(",")).expect("writing to a String");
        }
        drop(entries);
        let file = dir.join(CACHE_FILE_NAME);
        fs::write(&file, out)?;
        Ok(file)
    }

    /// Deletes the cache file in the attached directory and drops all
    /// memoized entries. Returns whether a file was removed.
    pub fn clear(&self) -> Result<bool, CyclotomicError> {
        let removed = match self.dir() {
            Some(dir) => {
                let file = dir.join(CACHE_FILE_NAME);
                if file.exists() {
                    fs::remove_file(&file)?;
                    true
                } else {
                    false
                }
            }
            None => false,
        };
        self.entries
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .clear();
        Ok(removed)
    }

    fn lookup(&self, n: u64) -> Option<Arc<IntPoly>> {
        self.entries
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&n)
            .cloned()
    }

    /// The divisor recursion, assuming all proper divisors of `n` are
    /// already cached.
    fn compute(&self, n: u64) -> Result<IntPoly, CyclotomicError> {
        if n == 1 {
            return Ok(IntPoly::new(vec![-BigInt::one(), BigInt::one()]));
        }
        let mut denom = IntPoly::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = self.lookup(d).expect("proper divisors cached first");
            denom = &denom * &phi_d;
        }
        let mut qn_minus_1 = vec![BigInt::zero(); n as usize + 1];
        qn_minus_1[0] = -BigInt::one();
        qn_minus_1[n as usize] = BigInt::one();
        let result = IntPoly::new(qn_minus_1).exact_div(&denom)?;
        debug_assert!(result.is_monic());
        debug_assert_eq!(result.degree(), Some(totient(n)? as usize));
        Ok(result)
    }
}

impl Default for CyclotomicCache {
    fn default() -> Self {
        CyclotomicCache::new()
    }
}

/// Parses the cache file format: one record per line, `n: c0,c1,...,cd`,
/// coefficients ascending. Blank lines are ignored. Every record is
/// validated to be monic of degree `phi(n)`.
fn parse_cache_file(text: &str) -> Result<Vec<(u64, IntPoly)>, CyclotomicError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad =
            |what: &str| CyclotomicError::InvalidCacheFile(format!("line {}: {what}", lineno + 1));
        let (n_part, coeff_part) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let n: u64 = n_part
            .trim()
            .parse()
            .map_err(|_| bad("bad index before `:`"))?;
        if n == 0 {
            return Err(bad("index must be positive"));
        }
        let mut coeffs = Vec::new();
        for c in coeff_part.split(',') {
            let c = c.trim();
            let v: BigInt = c.parse().map_err(|_| bad("bad coefficient"))?;
            coeffs.push(v);
        }
        let poly = IntPoly::new(coeffs);
        if !poly.is_monic() || poly.degree() != Some(totient(n)? as usize) {
            return Err(bad("entry fails cyclotomic validation"));
        }
        out.push((n, poly));
    }
    Ok(out)
}

// ----- tests -----
