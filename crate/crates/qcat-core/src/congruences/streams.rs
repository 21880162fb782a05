//! Integer residue streams for q-binomial ladders.
//!
//! Verifying a sum such as `sum q^k [2k choose k]` term by term does not need
//! general rational-polynomial arithmetic. The modulus `Phi_n(q)^e` is monic
//! over the integers, so canonical remainders of integer polynomials have
//! integer coefficients, and every stored stream value here is a plain
//! `Vec<BigInt>` of at most `e * phi(n)` coefficients. Rational factors enter
//! only through inverses of the units `1 - q^j`; those are carried as an
//! integer numerator with an explicit integer denominator and the denominator
//! is divided out exactly as soon as the product is known to be a q-binomial
//! residue again.
//!
//! Two ingredients keep the per-term cost near a single polynomial product:
//!
//! * a closed form for `(1 - q^j)^-1 mod Phi_n`: with `m = j mod n != 0` and
//!   `d = n / gcd(n, m)`, the geometric identity
//!   `(1 - q^m) * sum_{i=1}^{d-1} i q^{mi} = -d` holds modulo `Phi_n`, which
//!   gives the inverse without running the extended Euclidean algorithm, and
//!   Newton lifting raises it from `Phi_n` to `Phi_n^e`;
//! * Barrett reduction: remainders modulo the dense modulus are computed from
//!   a precomputed power-series inverse of the reversed modulus, replacing the
//!   quadratic long-division step with two (sub-quadratic) products.

use num::bigint::BigInt;
use num::traits::{One, Zero};
use num::Integer;

use super::VerifyError;
use crate::cyclotomic::CyclotomicCache;
use crate::poly::{mul_slices, rem_monic_in_place, IntPoly, RatPoly};

/// Reduction context for `Z[q] / Phi_n(q)^e`.
pub(crate) struct Ring {
    n: usize,
    e: u32,
    /// Degree of the modulus, `e * phi(n)`.
    deg: usize,
    /// `Phi_n^e`, monic, `deg + 1` coefficients.
    modulus: Vec<BigInt>,
    /// `Phi_n` itself, for seeding unit inverses.
    phi_modulus: Vec<BigInt>,
    /// Power-series inverse of the reversed modulus, `deg + 1` coefficients.
    rev_inverse: Vec<BigInt>,
}

/// An integer residue paired with the positive denominator it still owes.
pub(crate) type Scaled = (Vec<BigInt>, BigInt);

impl Ring {
    pub fn new(n: u64, e: u32, cache: &CyclotomicCache) -> Result<Self, VerifyError> {
        debug_assert!(e >= 1);
        let phi_poly = cache.get(n)?;
        let modulus = cache.power(n, e)?.coeffs().to_vec();
        let deg = modulus.len() - 1;
        let rev_inverse = invert_reversed(&modulus, deg + 1);
        Ok(Ring {
            n: n as usize,
            e,
            deg,
            modulus,
            phi_modulus: phi_poly.coeffs().to_vec(),
            rev_inverse,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The modulus power `e` of this ring.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Canonical remainder modulo `Phi_n^e`, trimmed of leading zeros.
    pub fn rem(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        // Long inputs (possible in rings where phi(n) is much smaller than n)
        // are first peeled down to at most twice the modulus degree by
        // ordinary monic division steps; the remaining excess is folded with
        // the Barrett quotient.
        while v.len() > 2 * self.deg + 1 {
            let lead = v.pop().expect("nonempty by loop guard");
            if lead.is_zero() {
                continue;
            }
            let top = v.len() - self.deg;
            for (i, c) in self.modulus[..self.deg].iter().enumerate() {
                v[top + i] -= &lead * c;
            }
        }
        trim(&mut v);
        if v.len() <= self.deg {
            return v;
        }

        // deg(v) <= 2*deg, so the quotient has at most deg + 1 coefficients
        // and the stored inverse-series precision suffices.
        let t = v.len() - 1 - self.deg;
        let mut rv: Vec<BigInt> = v.iter().rev().cloned().collect();
        rv.truncate(t + 1);
        let mut q_rev = mul_low(&rv, &self.rev_inverse, t + 1);
        q_rev.resize(t + 1, BigInt::zero());
        let quotient: Vec<BigInt> = q_rev.into_iter().rev().collect();

        let qm = mul_slices(&quotient, &self.modulus);
        for (i, c) in qm.into_iter().enumerate() {
            if i < v.len() {
                v[i] -= c;
            } else {
                debug_assert!(c.is_zero());
            }
        }
        debug_assert!(
            v[self.deg..].iter().all(Zero::is_zero),
            "Barrett quotient must cancel all high coefficients"
        );
        v.truncate(self.deg);
        trim(&mut v);
        v
    }

    /// Reduced product of two residues.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        self.rem(mul_slices(a, b))
    }

    /// Reduced `x * q^a` for any integer exponent `a`.
    ///
    /// Splitting `a = u*n + r` with `0 <= r < n`, the factor `q^r` is a plain
    /// shift, while `q^(u*n) = (1 + s)^u` with `s = q^n - 1`. The element `s`
    /// is nilpotent of index at most `e`, so the binomial series terminates:
    /// `(1 + s)^u = sum_{i < e} C(u, i) s^i`, valid for negative `u` as well.
    pub fn mul_qpow(&self, x: &[BigInt], a: i64) -> Vec<BigInt> {
        if x.is_empty() {
            return Vec::new();
        }
        let n = self.n as i64;
        let r = a.rem_euclid(n);
        let u = (a - r) / n;
        let mut shifted = vec![BigInt::zero(); r as usize];
        shifted.extend_from_slice(x);
        let base = self.rem(shifted);
        if u == 0 || self.e == 1 {
            return base;
        }
        // result = sum_{i < e} C(u, i) * s^i * base
        let mut result = base.clone();
        let mut power = base;
        let mut coeff = BigInt::one();
        for i in 1..self.e as i64 {
            // s * y = q^n * y - y
            let mut moved = vec![BigInt::zero(); self.n];
            moved.extend_from_slice(&power);
            let mut next = self.rem(moved);
            sub_assign(&mut next, &power);
            power = next;
            if power.is_empty() {
                break;
            }
            coeff = coeff * BigInt::from(u - (i - 1)) / BigInt::from(i);
            let mut term = power.clone();
            scale(&mut term, &coeff);
            add_assign(&mut result, &term);
        }
        trim(&mut result);
        result
    }

    /// Reduced `x * (1 - q^a)`.
    pub fn mul_one_minus_qpow(&self, x: &[BigInt], a: i64) -> Vec<BigInt> {
        let mut out = x.to_vec();
        sub_assign(&mut out, &self.mul_qpow(x, a));
        trim(&mut out);
        out
    }

    /// Reduced `q^a` as a residue.
    pub fn qpow(&self, a: i64) -> Vec<BigInt> {
        self.mul_qpow(&[BigInt::one()], a)
    }

    /// Inverse of `1 - q^j` modulo `Phi_n` only, from the geometric closed
    /// form. The denominator is `n / gcd(n, j mod n)`.
    fn inv_unit_phi(&self, j: i64) -> Result<Scaled, VerifyError> {
        let n = self.n as i64;
        let m = j.rem_euclid(n) as usize;
        if m == 0 {
            return Err(VerifyError::NonInvertible);
        }
        let d = self.n / self.n.gcd(&m);
        let mut num = vec![BigInt::zero(); self.n];
        for i in 1..d {
            num[(m * i) % self.n] -= BigInt::from(i);
        }
        // Lengths up to n exceed phi(n) in general; reduce against Phi_n.
        rem_monic_in_place(&mut num, &self.phi_modulus);
        Ok((num, BigInt::from(d)))
    }

    /// Inverse of `1 - q^j` in the full ring: closed form modulo `Phi_n`,
    /// then Newton steps `w <- w * (2d - u*w) / d^2` until the precision
    /// covers `Phi_n^e`.
    pub fn inv_unit(&self, j: i64) -> Result<Scaled, VerifyError> {
        let (mut w, mut den) = self.inv_unit_phi(j)?;
        let mut prec = 1;
        while prec < self.e {
            let uw = self.mul_one_minus_qpow(&w, j);
            let mut bracket = negated(&uw);
            add_scalar(&mut bracket, &(BigInt::from(2) * &den));
            w = self.mul(&w, &bracket);
            den = &den * &den;
            prec *= 2;
        }
        Ok((w, den))
    }

    /// Inverses of `1 - q^j` and of `(1 - q^j)^2` in one pass, sharing the
    /// closed-form seed. The square is the square of the lifted inverse.
    pub fn inv_unit_and_square(&self, j: i64) -> Result<(Scaled, Scaled), VerifyError> {
        let (w, d) = self.inv_unit(j)?;
        let v = self.mul(&w, &w);
        let d2 = &d * &d;
        Ok(((w, d), (v, d2)))
    }

    /// Inverse of `(1 - q^j)^2` without materialising the first power:
    /// squares the closed form modulo `Phi_n`, then Newton-lifts with the
    /// factor `u^2` applied as two sparse multiplications.
    pub fn inv_square(&self, j: i64) -> Result<Scaled, VerifyError> {
        let (w, d) = self.inv_unit_phi(j)?;
        let mut v = self.mul(&w, &w);
        let mut den = &d * &d;
        let mut prec = 1;
        while prec < self.e {
            let uuv = self.mul_one_minus_qpow(&self.mul_one_minus_qpow(&v, j), j);
            let mut bracket = negated(&uuv);
            add_scalar(&mut bracket, &(BigInt::from(2) * &den));
            v = self.mul(&v, &bracket);
            den = &den * &den;
            prec *= 2;
        }
        Ok((v, den))
    }

    /// Divides every coefficient by `den`, which must divide exactly.
    pub fn strip(&self, mut v: Vec<BigInt>, den: &BigInt) -> Vec<BigInt> {
        if !den.is_one() {
            for c in &mut v {
                let (quot, rem) = c.div_rem(den);
                assert!(rem.is_zero(), "residue denominator must divide exactly");
                *c = quot;
            }
        }
        v
    }
}

/// Truncated product: the low `prec` coefficients of `a * b`.
fn mul_low(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(prec)];
    let b = &b[..b.len().min(prec)];
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut p = mul_slices(a, b);
    p.truncate(prec);
    p
}

/// Power-series inverse of the reversed polynomial `m`, to `prec` terms,
/// by Newton doubling: `i <- i * (2 - rev(m) * i)`.
fn invert_reversed(m: &[BigInt], prec: usize) -> Vec<BigInt> {
    let rev: Vec<BigInt> = m.iter().rev().cloned().collect();
    debug_assert!(rev[0].is_one(), "modulus must be monic");
    let mut inv = vec![BigInt::one()];
    let mut have = 1;
    while have < prec {
        have = (have * 2).min(prec);
        let mut bracket = negated(&mul_low(&rev, &inv, have));
        add_scalar(&mut bracket, &BigInt::from(2));
        inv = mul_low(&inv, &bracket, have);
    }
    inv.resize(prec, BigInt::zero());
    inv
}

// ---------------------------------------------------------------------------
// coefficient-vector helpers
// ---------------------------------------------------------------------------

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn add_assign(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    trim(a);
}

pub(crate) fn sub_assign(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    trim(a);
}

pub(crate) fn scale(v: &mut Vec<BigInt>, c: &BigInt) {
    if c.is_zero() {
        v.clear();
        return;
    }
    if c.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x *= c;
    }
}

fn add_scalar(v: &mut Vec<BigInt>, c: &BigInt) {
    if v.is_empty() {
        v.push(c.clone());
    } else {
        v[0] += c;
    }
    trim(v);
}

fn negated(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|c| -c).collect()
}

/// Converts an integer residue with denominator into a rational polynomial,
/// for witness reporting.
pub(crate) fn to_rat_poly(num: &[BigInt], den: &BigInt) -> RatPoly {
    let int = IntPoly::new(num.to_vec());
    let mut rat = int.to_rat();
    if !den.is_one() {
        let inv = num::BigRational::new(BigInt::one(), den.clone());
        rat = rat.scaled(&inv);
    }
    rat
}

// ---------------------------------------------------------------------------
// ladder streams
// ---------------------------------------------------------------------------

/// Walks the central / ballot pair `b_k = [2k choose k]`,
/// `t_k = [2k choose k+1]` as residues, one index at a time.
///
/// The `b` ladder uses `b_{k+1} = b_k (1-q^{2k+1})(1-q^{2k+2}) / (1-q^{k+1})^2`
/// whose unit denominators stay invertible for `k + 1 < n`. The `t` value is
/// derived per index from `t_k = b_k (1-q^k) / (1-q^{k+1})`, which makes
/// `t_0 = 0` automatic. The final `t_{n-1}` would need the non-unit factor
/// `1 - q^n`, so it is instead produced by a parallel ladder on
/// `T_j = [n+j choose j]`, using `T_j = T_{j-1} (1-q^{n+j}) / (1-q^j)` and the
/// symmetry `t_{n-1} = [2n-2 choose n] = [2n-2 choose n-2] = T_{n-2}`.
pub(crate) struct PairStream<'r> {
    ring: &'r Ring,
    with_t: bool,
    k: usize,
    b: Vec<BigInt>,
    t_prev: Vec<BigInt>,
    tt: Vec<BigInt>,
}

impl<'r> PairStream<'r> {
    pub fn new(ring: &'r Ring, with_t: bool) -> Self {
        PairStream {
            ring,
            with_t,
            k: 0,
            b: vec![BigInt::one()],
            t_prev: Vec::new(),
            tt: vec![BigInt::one()],
        }
    }

    /// `[2k choose k]` at the current index.
    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// `[2(k-1) choose k]` for the previous index; empty before any advance.
    pub fn t_prev(&self) -> &[BigInt] {
        &self.t_prev
    }

    /// `t_{n-1} = [2n-2 choose n]`, valid once `k == n - 1` (needs `n >= 2`).
    pub fn t_last(&self) -> &[BigInt] {
        debug_assert_eq!(self.k, self.ring.n - 1);
        &self.tt
    }

    /// Steps from index `k` to `k + 1`; the caller must keep `k + 1 <= n - 1`.
    pub fn advance(&mut self) -> Result<(), VerifyError> {
        let ring = self.ring;
        let k = self.k as i64;
        let j = k + 1;
        debug_assert!((j as usize) < ring.n);

        if self.with_t {
            let (w, v) = ring.inv_unit_and_square(j)?;
            let tentative = ring.mul(&ring.mul_one_minus_qpow(&self.b, k), &w.0);
            self.t_prev = ring.strip(tentative, &w.1);
            if (j as usize) + 2 <= ring.n {
                let stepped = ring.mul(&ring.mul_one_minus_qpow(&self.tt, ring.n as i64 + j), &w.0);
                self.tt = ring.strip(stepped, &w.1);
            }
            self.step_b(&v);
        } else {
            let v = ring.inv_square(j)?;
            self.step_b(&v);
        }
        self.k += 1;
        Ok(())
    }

    fn step_b(&mut self, v: &Scaled) {
        let ring = self.ring;
        let k = self.k as i64;
        let mut num = ring.mul_one_minus_qpow(&self.b, 2 * k + 1);
        num = ring.mul_one_minus_qpow(&num, 2 * k + 2);
        num = ring.mul(&num, &v.0);
        self.b = ring.strip(num, &v.1);
    }
}

/// Walks a row of the q-Pascal triangle, `r_k = [2n choose k]`, together with
/// the inverse of `1 - q^k`, via `r_k = r_{k-1} (1 - q^{2n-k+1}) / (1 - q^k)`.
pub(crate) struct RowStream<'r> {
    ring: &'r Ring,
    n: usize,
    k: usize,
    r: Vec<BigInt>,
    w: Scaled,
}

impl<'r> RowStream<'r> {
    pub fn new(ring: &'r Ring) -> Self {
        RowStream {
            ring,
            n: ring.n,
            k: 0,
            r: vec![BigInt::one()],
            w: (Vec::new(), BigInt::one()),
        }
    }

    /// `[2n choose k]` at the current index.
    pub fn r(&self) -> &[BigInt] {
        &self.r
    }

    /// Inverse of `1 - q^k` at the current index, valid after an advance.
    pub fn w(&self) -> &Scaled {
        &self.w
    }

    /// Steps from `k` to `k + 1`; the caller keeps `k + 1 <= n - 1`.
    pub fn advance(&mut self) -> Result<(), VerifyError> {
        let ring = self.ring;
        let j = self.k as i64 + 1;
        debug_assert!((j as usize) < self.n);
        self.w = ring.inv_unit(j)?;
        let num = ring.mul(
            &ring.mul_one_minus_qpow(&self.r, 2 * self.n as i64 - j + 1),
            &self.w.0,
        );
        self.r = ring.strip(num, &self.w.1);
        self.k += 1;
        Ok(())
    }
}

/// Rational accumulator over a squarefree ring (`e = 1`): every unit
/// denominator arising from `1 - q^k` divides `n`, so sums are kept over the
/// common denominator `n` and returned with it.
pub(crate) struct UnitSumAcc<'r> {
    ring: &'r Ring,
    num: Vec<BigInt>,
    den: BigInt,
}

impl<'r> UnitSumAcc<'r> {
    pub fn new(ring: &'r Ring) -> Self {
        UnitSumAcc {
            ring,
            num: Vec::new(),
            den: BigInt::from(ring.n),
        }
    }

    /// Adds `sign * q^exp / (1 - q^j)`.
    pub fn add_term(&mut self, sign: i64, exp: i64, j: i64) -> Result<(), VerifyError> {
        let (w, d) = self.ring.inv_unit(j)?;
        let mut term = self.ring.mul_qpow(&w, exp);
        let (boost, rem) = self.den.div_rem(&d);
        debug_assert!(rem.is_zero(), "unit denominators divide n");
        scale(&mut term, &(boost * BigInt::from(sign)));
        add_assign(&mut self.num, &term);
        Ok(())
    }

    /// The accumulated sum as `(numerator, denominator)`.
    pub fn into_scaled(self) -> Scaled {
        (self.num, self.den)
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicCache;
    use crate::qseries::q_binomial;
    use crate::quotient::{reduce, ResidueElem, RingSpec};

    fn ring(n: u64, e: u32) -> Ring {
        Ring::new(n, e, &CyclotomicCache::new()).expect("ring")
    }

    fn reduce_int(p: &IntPoly, r: &Ring) -> Vec<BigInt> {
        r.rem(p.coeffs().to_vec())
    }

    // ---- reduction ----

    #[test]
    fn barrett_matches_long_division() {
        for &(n, e) in &[
            (7u64, 1u32),
            (7, 2),
            (12, 2),
            (30, 2),
            (30, 1),
            (1, 2),
            (2, 2),
        ] {
            let r = ring(n, e);
            let mut p = IntPoly::one();
            // (1 + 2q + q^3)^6 gives plenty of degree overflow when shifted.
            let base: IntPoly = "1 + 2*q + q^3".parse().unwrap();
            for _ in 0..6 {
                p = p * &base;
            }
            for shift in [0usize, 1, n as usize, 2 * n as usize + 3] {
                let shifted = p.shifted(shift);
                let by_stream = r.rem(shifted.coeffs().to_vec());
                let mut by_poly = shifted.coeffs().to_vec();
                crate::poly::rem_monic_in_place(&mut by_poly, &r.modulus);
                assert_eq!(by_stream, by_poly, "n={n} e={e} shift={shift}");
            }
        }
    }

    #[test]
    fn qpow_matches_monomial_reduction() {
        for &(n, e) in &[(5u64, 2u32), (6, 2), (9, 1), (12, 2)] {
            let r = ring(n, e);
            for a in 0..(3 * n as i64 + 2) {
                let direct = reduce_int(&IntPoly::monomial(BigInt::one(), a as usize), &r);
                assert_eq!(r.qpow(a), direct, "n={n} e={e} a={a}");
            }
        }
    }

    #[test]
    fn negative_qpow_inverts_positive() {
        let r = ring(9, 2);
        for a in 1..20i64 {
            let pos = r.qpow(a);
            let neg = r.qpow(-a);
            let prod = r.mul(&pos, &neg);
            assert_eq!(prod, vec![BigInt::one()], "a={a}");
        }
    }

    // ---- unit inverses ----

    #[test]
    fn unit_inverse_times_unit_is_denominator() {
        for &(n, e) in &[(5u64, 1u32), (5, 2), (12, 2), (30, 2), (14, 1)] {
            let r = ring(n, e);
            for j in 1..n as i64 {
                if (j % n as i64) == 0 {
                    continue;
                }
                let (w, d) = r.inv_unit(j).expect("unit");
                let prod = r.mul_one_minus_qpow(&w, j);
                assert_eq!(prod, vec![d.clone()], "n={n} e={e} j={j}");
                let (v, dv) = r.inv_square(j).expect("unit square");
                let prod2 = r.mul_one_minus_qpow(&r.mul_one_minus_qpow(&v, j), j);
                assert_eq!(prod2, vec![dv.clone()], "square n={n} e={e} j={j}");
            }
        }
    }

    #[test]
    fn multiples_of_n_are_not_invertible() {
        let r = ring(6, 2);
        assert!(matches!(r.inv_unit(6), Err(VerifyError::NonInvertible)));
        assert!(matches!(r.inv_unit(12), Err(VerifyError::NonInvertible)));
        assert!(matches!(r.inv_square(18), Err(VerifyError::NonInvertible)));
        assert!(r.inv_unit(7).is_ok());
    }

    // ---- ladders against the public q-binomial oracle ----

    #[test]
    fn pair_stream_matches_q_binomials() {
        for n in 2u64..=18 {
            for e in 1u32..=2 {
                let r = ring(n, e);
                let mut st = PairStream::new(&r, true);
                for k in 1..n {
                    st.advance().expect("advance");
                    assert_eq!(
                        st.b(),
                        reduce_int(&q_binomial(2 * k as i64, k as i64), &r),
                        "b n={n} e={e} k={k}"
                    );
                    assert_eq!(
                        st.t_prev(),
                        reduce_int(&q_binomial(2 * (k as i64 - 1), k as i64), &r),
                        "t n={n} e={e} k={k}"
                    );
                }
                if n >= 2 {
                    assert_eq!(
                        st.t_last(),
                        reduce_int(&q_binomial(2 * n as i64 - 2, n as i64), &r),
                        "t_last n={n} e={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn row_stream_matches_q_binomials() {
        for n in 2u64..=16 {
            let r = ring(n, 2);
            let mut st = RowStream::new(&r);
            for k in 1..n {
                st.advance().expect("advance");
                assert_eq!(
                    st.r(),
                    reduce_int(&q_binomial(2 * n as i64, k as i64), &r),
                    "row n={n} k={k}"
                );
                let prod = r.mul_one_minus_qpow(&st.w().0, k as i64);
                assert_eq!(prod, vec![st.w().1.clone()], "w n={n} k={k}");
            }
        }
    }

    #[test]
    fn unit_sum_accumulates_geometric_terms() {
        // sum_{k=1}^{4} q^k / (1 - q^k) modulo Phi_5, cross-checked against
        // rational arithmetic in the quotient ring.
        let n = 5u64;
        let r = ring(n, 1);
        let mut acc = UnitSumAcc::new(&r);
        for k in 1..n as i64 {
            acc.add_term(1, k, k).expect("term");
        }
        let (num, den) = acc.into_scaled();

        let spec = RingSpec::new(n, 1).unwrap();
        let mut expect = ResidueElem::zero(&spec);
        for k in 1..n as usize {
            let unit = (IntPoly::one() - IntPoly::monomial(BigInt::one(), k)).to_rat();
            let unit = reduce(&unit, &spec).inverse().unwrap();
            let num_k = reduce(&IntPoly::monomial(BigInt::one(), k).to_rat(), &spec);
            expect = &expect + &(&num_k * &unit);
        }
        let got = reduce(&to_rat_poly(&num, &den), &spec);
        assert_eq!(got, expect);
    }

    #[test]
    fn strip_divides_exactly() {
        let r = ring(5, 2);
        let v = vec![BigInt::from(6), BigInt::from(-9), BigInt::from(12)];
        let out = r.strip(v, &BigInt::from(3));
        assert_eq!(
            out,
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(4)]
        );
    }

    #[test]
    #[should_panic(expected = "divide exactly")]
    fn strip_panics_on_inexact_division() {
        let r = ring(5, 2);
        let _ = r.strip(vec![BigInt::from(7)], &BigInt::from(3));
    }

    #[test]
    fn degenerate_ring_reduces_to_constants() {
        // n = 1: the modulus is (q - 1)^e and q itself is 1 + s.
        let r = ring(1, 2);
        // q^5 = 1 + 5s = 1 + 5(q - 1) = -4 + 5q
        assert_eq!(r.qpow(5), vec![BigInt::from(-4), BigInt::from(5)]);
        let one = r.mul(&r.qpow(5), &r.qpow(-5));
        assert_eq!(one, vec![BigInt::one()]);
    }
}
