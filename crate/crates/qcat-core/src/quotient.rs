//! Arithmetic in the residue ring `Q[q] / Phi_n(q)^e`.
//!
//! Working modulo `Phi_n(q)` is exact arithmetic at a primitive nth root
//! of unity; the squared modulus `Phi_n(q)^2` refines that to the setting
//! where the congruences of interest live. Elements are represented by
//! their canonical remainder, the unique representative of degree less
//! than `e * phi(n)`, with exact rational coefficients. Rationals rather
//! than integers are the coefficient field because closed forms divide by
//! quantities like `1 - q^k` and produce constants like `(n-1)/6`.
//!
//! Inversion runs the extended Euclidean algorithm in `Q[q]`, normalizing
//! every remainder to monic as it goes to keep the rational coefficients
//! from blowing up. An element is invertible exactly when its gcd with the
//! modulus is a nonzero constant; in particular `1 - q^k` is invertible
//! modulo `Phi_n(q)^e` if and only if `n` does not divide `k`.
//!
//! Powers of `q`, including negative ones, use the unit-group identity
//! `q^(un + r) = q^r * (1 + s)^u` with `s = q^n - 1`, where `s^e = 0` in
//! the ring, so `(1 + s)^u` truncates to `sum_{i<e} C(u, i) s^i` for any
//! integer `u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use thiserror::Error;

use crate::cyclotomic::{totient, CyclotomicCache, CyclotomicError};
use crate::poly::{IntPoly, RatPoly};

/// Errors from residue-ring construction and arithmetic.
#[derive(Debug, Error)]
pub enum QuotientError {
    /// The element's gcd with the modulus has positive degree.
    #[error("non-invertible residue")]
    NonInvertible,
    /// Building the modulus failed.
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// A residue ring `Q[q] / Phi_n(q)^e`, carrying its precomputed modulus.
#[derive(Debug)]
pub struct RingSpec {
    n: u64,
    e: u32,
    phi: u64,
    modulus: IntPoly,
    modulus_rat: RatPoly,
}

impl RingSpec {
    /// The ring `Q[q] / Phi_n(q)^e` with the modulus taken from the
    /// process-wide cyclotomic cache. Requires `n >= 1` and `e >= 1`.
    pub fn new(n: u64, e: u32) -> Result<Arc<RingSpec>, QuotientError> {
        RingSpec::with_cache(n, e, crate::cyclotomic::global_cache())
    }

    /// As [`RingSpec::new`] but pulling `Phi_n` from a caller-supplied
    /// cache.
    pub fn with_cache(
        n: u64,
        e: u32,
        cache: &CyclotomicCache,
    ) -> Result<Arc<RingSpec>, QuotientError> {
        assert!(e >= 1, "modulus power must be positive");
        let phi = totient(n)?;
        let modulus = cache.power(n, e)?;
        let modulus_rat = modulus.to_rat();
        Ok(Arc::new(RingSpec {
            n,
            e,
            phi,
            modulus,
            modulus_rat,
        }))
    }

    /// Cyclotomic index `n`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Power `e` of the cyclotomic modulus.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// `phi(n)`, the degree of one cyclotomic factor.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Degree `e * phi(n)` of the modulus; canonical representatives have
    /// strictly smaller degree.
    pub fn degree(&self) -> usize {
        (self.e as u64 * self.phi) as usize
    }

    /// The modulus `Phi_n(q)^e` over the integers.
    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    fn same_ring(&self, other: &RingSpec) -> bool {
        self.n == other.n && self.e == other.e
    }
}

/// An element of `Q[q] / Phi_n(q)^e` in canonical form.
#[derive(Debug, Clone)]
pub struct ResidueElem {
    spec: Arc<RingSpec>,
    rep: RatPoly,
}

/// Reduces a rational polynomial to its canonical residue.
pub fn reduce(p: &RatPoly, spec: &Arc<RingSpec>) -> ResidueElem {
    let rep = p
        .rem(&spec.modulus_rat)
        .expect("the modulus is monic, hence nonzero");
    ResidueElem {
        spec: Arc::clone(spec),
        rep,
    }
}

/// The residue of `q^exp` for any integer exponent, negative included.
pub fn q_power(spec: &Arc<RingSpec>, exp: i64) -> Result<ResidueElem, QuotientError> {
    let n = spec.n as i64;
    let r = exp.rem_euclid(n);
    let u = (exp - r) / n;
    // q^exp = q^r * (1 + s)^u with s = q^n - 1 nilpotent of index <= e.
    let mut acc = reduce(&RatPoly::monomial(BigRational::one(), r as usize), spec);
    if u != 0 {
        let s = &reduce(
            &RatPoly::monomial(BigRational::one(), spec.n as usize),
            spec,
        ) - &ResidueElem::one(spec);
        let mut s_pow = ResidueElem::one(spec);
        let mut unit = ResidueElem::zero(spec);
        let mut coeff = BigInt::one();
        for i in 0..spec.e as i64 {
            // coeff = C(u, i) built incrementally; exact at every step.
            if i > 0 {
                coeff = coeff * BigInt::from(u - (i - 1)) / BigInt::from(i);
                s_pow = &s_pow * &s;
            }
            unit = &unit + &s_pow.scale(&BigRational::from_integer(coeff.clone()));
            if s_pow.is_zero() {
                break;
            }
        }
        acc = &acc * &unit;
    }
    Ok(acc)
}

impl ResidueElem {
    /// The zero residue.
    pub fn zero(spec: &Arc<RingSpec>) -> ResidueElem {
        ResidueElem {
            spec: Arc::clone(spec),
            rep: RatPoly::zero(),
        }
    }

    /// The unit residue.
    pub fn one(spec: &Arc<RingSpec>) -> ResidueElem {
        reduce(&RatPoly::one(), spec)
    }

    /// The ring this element lives in.
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// Canonical representative of degree below the modulus degree.
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    /// Consumes the element and returns its representative.
    pub fn into_rep(self) -> RatPoly {
        self.rep
    }

    /// Whether this is the zero residue.
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> ResidueElem {
        ResidueElem {
            spec: Arc::clone(&self.spec),
            rep: self.rep.scaled(c),
        }
    }

    /// The multiplicative inverse by the extended Euclidean algorithm,
    /// with every remainder normalized to monic.
    ///
    /// Maintains `t_i * rep = r_i (mod modulus)`; when the final nonzero
    /// remainder is the constant `1`, the corresponding `t` is the
    /// inverse. A gcd of positive degree means the element is a zero
    /// divisor.
    pub fn inverse(&self) -> Result<ResidueElem, QuotientError> {
        if self.rep.is_zero() {
            return Err(QuotientError::NonInvertible);
        }
        let modulus = &self.spec.modulus_rat;
        let mut r_prev = modulus.clone();
        let mut t_prev = RatPoly::zero();
        let lead = self.rep.leading().expect("nonzero by the check above");
        let mut r_cur = self.rep.monic();
        let mut t_cur = RatPoly::constant(lead.recip());
        while !r_cur.is_zero() {
            let (quot, rem) = r_prev
                .divrem(&r_cur)
                .expect("r_cur is nonzero inside the loop");
            let t_next = &t_prev - &(&quot * &t_cur);
            let (r_next, t_next) = match rem.leading() {
                None => (rem, t_next),
                Some(l) => {
                    let inv = l.recip();
                    (rem.monic(), t_next.scaled(&inv))
                }
            };
            r_prev = r_cur;
            t_prev = t_cur;
            r_cur = r_next;
            t_cur = t_next;
        }
        if !r_prev.is_one() {
            return Err(QuotientError::NonInvertible);
        }
        Ok(reduce(&t_prev, &self.spec))
    }
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        self.spec.same_ring(&other.spec) && self.rep == other.rep
    }
}

impl Eq for ResidueElem {}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl Add<&ResidueElem> for &ResidueElem {
    type Output = ResidueElem;
    fn add(self, rhs: &ResidueElem) -> ResidueElem {
        assert!(
            self.spec.same_ring(&rhs.spec),
            "residues from different rings"
        );
        ResidueElem {
            spec: Arc::clone(&self.spec),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub<&ResidueElem> for &ResidueElem {
    type Output = ResidueElem;
    fn sub(self, rhs: &ResidueElem) -> ResidueElem {
        assert!(
            self.spec.same_ring(&rhs.spec),
            "residues from different rings"
        );
        ResidueElem {
            spec: Arc::clone(&self.spec),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul<&ResidueElem> for &ResidueElem {
    type Output = ResidueElem;
    fn mul(self, rhs: &ResidueElem) -> ResidueElem {
        assert!(
            self.spec.same_ring(&rhs.spec),
            "residues from different rings"
        );
        let prod = &self.rep * &rhs.rep;
        reduce(&prod, &self.spec)
    }
}

impl Neg for &ResidueElem {
    type Output = ResidueElem;
    fn neg(self) -> ResidueElem {
        ResidueElem {
            spec: Arc::clone(&self.spec),
            rep: -&self.rep,
        }
    }
}

// ----- tests -----
