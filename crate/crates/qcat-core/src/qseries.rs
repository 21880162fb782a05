//! q-integers, q-shifted factorials, Gaussian binomials, and q-Catalan
//! polynomials.
//!
//! The q-integer is `[n]_q = (1 - q^n)/(1 - q) = 1 + q + ... + q^{n-1}`,
//! and the q-shifted factorial specialized to integer powers of `q` is
//! `(q^m; q)_n = prod_{j=0}^{n-1} (1 - q^{m+j})`. The Gaussian binomial
//! coefficient is
//!
//! ```text
//! [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k})   for 0 <= k <= n,
//! [n k]_q = 0                                  otherwise,
//! ```
//!
//! a polynomial in `q` with nonnegative integer coefficients, palindromic
//! of degree `k(n-k)`. The q-Catalan polynomial is
//!
//! ```text
//! C_n(q) = [2n n]_q / [n+1]_q = [2n n]_q - q * [2n n+1]_q,
//! ```
//!
//! whose value at `q = 1` is the ordinary Catalan number.
//!
//! The primary computation path for `[n k]_q` is the q-Pascal recurrence
//! with memoized rows, which is division-free; large arguments beyond the
//! memoization cap fall back to the product formula with one exact
//! division. The q-Catalan polynomial uses the subtraction form as primary
//! and the division form as an independent cross-check.

use std::sync::{OnceLock, RwLock};

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::poly::{IntPoly, PolyError};

/// Largest `n` whose rows the process-wide table memoizes; larger
/// arguments use the product formula instead of growing the table.
const GLOBAL_TABLE_MAX: usize = 64;

/// The q-integer `[n]_q = 1 + q + ... + q^{n-1}`; zero for `n = 0`.
pub fn q_integer(n: u64) -> IntPoly {
    IntPoly::new(vec![BigInt::one(); n as usize])
}

/// The q-shifted factorial `(q^m; q)_n = prod_{j=0}^{n-1} (1 - q^{m+j})`,
/// with the empty product equal to `1`. For `m = 0` the first factor is
/// `1 - q^0 = 0`, so the product vanishes for any `n >= 1`.
pub fn q_pochhammer_power(m: u64, n: u64) -> IntPoly {
    let mut acc = IntPoly::one();
    for j in 0..n {
        acc = mul_one_minus_q_to(&acc, (m + j) as usize);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Multiplies by the sparse factor `1 - q^e`.
fn mul_one_minus_q_to(p: &IntPoly, e: usize) -> IntPoly {
    p - &p.shifted(e)
}

/// The Gaussian binomial coefficient `[n k]_q`, or zero when `k < 0`,
/// `n < 0`, or `k > n`.
pub fn q_binomial(n: i64, k: i64) -> IntPoly {
    if k < 0 || n < 0 || k > n {
        return IntPoly::zero();
    }
    let (n, k) = (n as usize, k as usize);
    if n <= GLOBAL_TABLE_MAX {
        q_binomial_memoized(n, k)
    } else {
        q_binomial_product(n, k).expect("the product formula divides exactly")
    }
}

/// The q-Catalan polynomial `C_n(q) = [2n n]_q - q * [2n n+1]_q`.
pub fn q_catalan(n: u64) -> IntPoly {
    let n = n as i64;
    let central = q_binomial(2 * n, n);
    let shifted = q_binomial(2 * n, n + 1).shifted(1);
    &central - &shifted
}

/// The q-Catalan polynomial computed as `[2n n]_q / [n+1]_q` by exact
/// division. An inexact division is reported rather than rounded; it
/// would falsify the defining identity.
pub fn q_catalan_division_form(n: u64) -> Result<IntPoly, PolyError> {
    q_binomial(2 * n as i64, n as i64).exact_div(&q_integer(n + 1))
}

/// Triangular table of Gaussian binomials built rowwise by the q-Pascal
/// recurrence `[n k] = [n-1 k-1] + q^k [n-1 k]`.
#[derive(Debug, Clone)]
pub struct QBinomTable {
    rows: Vec<Vec<IntPoly>>,
}

impl QBinomTable {
    /// A table holding only row 0.
    pub fn new() -> Self {
        QBinomTable {
            rows: vec![vec![IntPoly::one()]],
        }
    }

    /// Largest row index currently stored.
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extends the table up to row `n`.
    pub fn grow_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("table starts nonempty");
            let m = prev.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(IntPoly::one());
            for k in 1..m {
                row.push(&prev[k - 1] + &prev[k].shifted(k));
            }
            row.push(IntPoly::one());
            self.rows.push(row);
        }
    }

    /// The entry `[n k]_q` if row `n` is present and `0 <= k <= n`.
    pub fn get(&self, n: usize, k: usize) -> Option<&IntPoly> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    /// Full row `n` if present: `[n 0], [n 1], ..., [n n]`.
    pub fn row(&self, n: usize) -> Option<&[IntPoly]> {
        self.rows.get(n).map(Vec::as_slice)
    }
}

impl Default for QBinomTable {
    fn default() -> Self {
        QBinomTable::new()
    }
}

fn global_table() -> &'static RwLock<QBinomTable> {
    static TABLE: OnceLock<RwLock<QBinomTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(QBinomTable::new()))
}

fn q_binomial_memoized(n: usize, k: usize) -> IntPoly {
    let lock = global_table();
    {
        let table = lock.read().unwrap_or_else(|e| e.into_inner());
        if let Some(p) = table.get(n, k) {
            return p.clone();
        }
    }
    let mut table = lock.write().unwrap_or_else(|e| e.into_inner());
    table.grow_to(n);
    table.get(n, k).expect("row was grown to cover n").clone()
}

/// The product-formula path: `[n k] = prod_{i=1}^{k} (1 - q^{n-k+i})`
/// divided exactly by `(q;q)_k`. Used beyond the memoization cap and as
/// an independent oracle for the recurrence in tests.
fn q_binomial_product(n: usize, k: usize) -> Result<IntPoly, PolyError> {
    let k = k.min(n - k);
    let mut num = IntPoly::one();
    for i in 1..=k {
        num = mul_one_minus_q_to(&num, n - k + i);
    }
    num.exact_div(&q_pochhammer_power(1, k as u64))
}

// ----- tests -----

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ordinary binomial coefficients by the Pascal triangle.
    fn binomial_table(n_max: usize) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        rows
    }

    // --- q-integers and shifted factorials ---

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(0), IntPoly::zero());
        assert_eq!(q_integer(1), IntPoly::one());
        assert_eq!(q_integer(4), ip(&[1, 1, 1, 1]));
    }

    #[test]
    fn q_pochhammer_examples() {
        assert_eq!(q_pochhammer_power(1, 0), IntPoly::one());
        assert_eq!(q_pochhammer_power(1, 2), ip(&[1, -1, -1, 1]));
        assert_eq!(q_pochhammer_power(0, 1), IntPoly::zero());
        assert_eq!(q_pochhammer_power(0, 5), IntPoly::zero());
        assert_eq!(q_pochhammer_power(2, 1), ip(&[1, 0, -1]));
    }

    // --- q-binomials ---

    #[test]
    fn q_binomial_out_of_range_is_zero() {
        assert_eq!(q_binomial(0, 1), IntPoly::zero());
        assert_eq!(q_binomial(3, -1), IntPoly::zero());
        assert_eq!(q_binomial(-2, 0), IntPoly::zero());
        assert_eq!(q_binomial(5, 9), IntPoly::zero());
    }

    #[test]
    fn q_binomial_small_values() {
        assert_eq!(q_binomial(0, 0), IntPoly::one());
        assert_eq!(q_binomial(2, 1), ip(&[1, 1]));
        assert_eq!(q_binomial(4, 2), ip(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(6, 3), ip(&[1, 1, 2, 3, 3, 3, 3, 2, 1, 1]));
        assert_eq!(
            q_binomial(10, 5),
            ip(&[
                1, 1, 2, 3, 5, 7, 9, 11, 14, 16, 18, 19, 20, 20, 19, 18, 16, 14, 11, 9, 7, 5, 3, 2,
                1, 1
            ])
        );
    }

    #[test]
    fn q_pascal_recurrence_both_forms() {
        let mut table = QBinomTable::new();
        table.grow_to(60);
        for n in 1..=60usize {
            for k in 1..n {
                let here = table.get(n, k).unwrap();
                let up_left = table.get(n - 1, k - 1).unwrap();
                let up = table.get(n - 1, k).unwrap();
                assert_eq!(here, &(up_left + &up.shifted(k)), "q-Pascal at ({n},{k})");
                assert_eq!(
                    here,
                    &(&up_left.shifted(n - k) + up),
                    "mirrored q-Pascal at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn q_binomial_specializes_to_binomial() {
        let binom = binomial_table(60);
        let mut table = QBinomTable::new();
        table.grow_to(60);
        for n in 0..=60usize {
            for k in 0..=n {
                assert_eq!(
                    table.get(n, k).unwrap().eval_at_one(),
                    binom[n][k],
                    "specialization at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn q_binomial_symmetry_palindrome_degree() {
        for n in 0..=40i64 {
            for k in 0..=n {
                let p = q_binomial(n, k);
                assert_eq!(p, q_binomial(n, n - k), "symmetry at ({n},{k})");
                let coeffs = p.coeffs();
                let deg = (k * (n - k)) as usize;
                assert_eq!(p.degree(), Some(deg), "degree at ({n},{k})");
                for (i, c) in coeffs.iter().enumerate() {
                    assert!(c > &BigInt::zero(), "positivity at ({n},{k})");
                    assert_eq!(c, &coeffs[deg - i], "palindrome at ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn product_formula_agrees_with_recurrence() {
        for n in 0..=40usize {
            for k in 0..=n {
                assert_eq!(
                    q_binomial_product(n, k).unwrap(),
                    q_binomial(n as i64, k as i64),
                    "product oracle at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn q_binomial_beyond_table_cap() {
        // 70 > GLOBAL_TABLE_MAX exercises the product fallback; compare
        // against a locally grown table.
        let mut table = QBinomTable::new();
        table.grow_to(70);
        assert_eq!(&q_binomial(70, 3), table.get(70, 3).unwrap());
        assert_eq!(&q_binomial(70, 35), table.get(70, 35).unwrap());
    }

    // --- q-Catalan ---

    #[test]
    fn q_catalan_examples() {
        assert_eq!(q_catalan(0), IntPoly::one());
        assert_eq!(q_catalan(1), IntPoly::one());
        assert_eq!(q_catalan(2), ip(&[1, 0, 1]));
        assert_eq!(q_catalan(3), ip(&[1, 0, 1, 1, 1, 0, 1]));
        assert_eq!(q_catalan(4), ip(&[1, 0, 1, 1, 2, 1, 2, 1, 2, 1, 1, 0, 1]));
        assert_eq!(
            q_catalan(5),
            ip(&[1, 0, 1, 1, 2, 2, 3, 2, 4, 3, 4, 3, 4, 2, 3, 2, 2, 1, 1, 0, 1])
        );
    }

    #[test]
    fn q_catalan_division_form_examples() {
        assert_eq!(q_catalan_division_form(1).unwrap(), IntPoly::one());
        assert_eq!(q_catalan_division_form(2).unwrap(), ip(&[1, 0, 1]));
        assert_eq!(q_catalan_division_form(4).unwrap(), q_catalan(4));
    }

    #[test]
    fn q_catalan_forms_agree() {
        for n in 0..=60u64 {
            assert_eq!(
                q_catalan(n),
                q_catalan_division_form(n).unwrap(),
                "catalan forms at n={n}"
            );
        }
    }

    #[test]
    fn q_catalan_specializes_to_catalan_numbers() {
        let mut catalan = BigInt::one();
        for n in 0..=30u64 {
            assert_eq!(q_catalan(n).eval_at_one(), catalan, "Catalan number at {n}");
            // C_{n+1} = C_n * 2(2n+1)/(n+2), always an exact division.
            catalan = catalan * BigInt::from(2 * (2 * n + 1)) / BigInt::from(n + 2);
        }
    }

    #[test]
    fn multiplicative_structure_example() {
        // [4 2] = (1 + q + q^2)(1 + q^2) relates the Catalan example to its
        // defining division.
        assert_eq!(&ip(&[1, 1, 1]) * &ip(&[1, 0, 1]), q_binomial(4, 2));
    }
}
