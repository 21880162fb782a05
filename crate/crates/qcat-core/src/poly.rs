//! Dense univariate polynomials over exact coefficient rings.
//!
//! Polynomials in the indeterminate `q` are stored as coefficient vectors in
//! ascending order of exponent, normalized so that the last stored
//! coefficient is nonzero. The zero polynomial stores no coefficients and
//! has no degree. Two concrete instantiations are used throughout the crate:
//! [`IntPoly`] over arbitrary-precision integers and [`RatPoly`] over exact
//! rationals.
//!
//! Multiplication switches from the schoolbook routine to Karatsuba
//! splitting above a fixed operand length; the two routines produce
//! identical results. Division comes in three flavours: general quotient
//! and remainder over the rationals ([`RatPoly::divrem`]), remainder by a
//! monic divisor over any coefficient ring ([`Poly::rem_monic`]), and exact
//! division over the integers ([`IntPoly::exact_div`]) which reports
//! failure instead of rounding.
//!
//! The textual format writes terms in ascending exponent order, omitting
//! unit coefficients and zero exponents, for example `1 + q - 2*q^3` or
//! `3/2*q^2 - q^5`. [`fmt::Display`] and [`FromStr`] round-trip exactly.

use std::fmt;
use std::mem;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{NumRef, One, RefNum, Signed, Zero};
use num::Integer;
use thiserror::Error;

/// Minimum operand length for Karatsuba multiplication; shorter products
/// use the schoolbook routine.
const KARATSUBA_MIN: usize = 32;

/// Errors produced by polynomial arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Division by the zero polynomial.
    #[error("zero divisor polynomial")]
    ZeroDivisor,
    /// An exact division had a fractional quotient step or a nonzero
    /// remainder.
    #[error("inexact division")]
    InexactDivision,
    /// Text did not match the polynomial grammar.
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

/// Coefficient rings usable with [`Poly`]: exact, signed, printable, and
/// parseable. Implemented for `BigInt` and `BigRational`.
pub trait Coeff: Clone + PartialEq + Signed + NumRef + fmt::Display + fmt::Debug + FromStr {}

impl Coeff for BigInt {}
impl Coeff for BigRational {}

/// A dense univariate polynomial in `q` with coefficients of type `C`,
/// ascending by exponent and free of trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;

/// Polynomial with exact rational coefficients.
pub type RatPoly = Poly<BigRational>;

impl<C: Coeff> Poly<C>
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the representation is canonical.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * q^exp`.
    pub fn monomial(c: C, exp: usize) -> Self {
        if c.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![C::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// The stored coefficients, ascending by exponent, without trailing
    /// zeros.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Consumes the polynomial and returns its coefficient vector.
    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Whether the leading coefficient is `1`.
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Evaluates the polynomial at `q = 1` by summing the coefficients.
    pub fn eval_at_one(&self) -> C {
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc = acc + c;
        }
        acc
    }

    /// Multiplies by `q^exp`, shifting every exponent up by `exp`.
    pub fn shifted(&self, exp: usize) -> Self {
        if self.coeffs.is_empty() {
            return Poly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![C::zero(); exp + self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[exp + i] = c.clone();
        }
        Poly { coeffs }
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly { coeffs: Vec::new() };
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Remainder of `self` modulo a monic divisor, valid over any
    /// coefficient ring because no coefficient division occurs.
    ///
    /// # Panics
    ///
    /// Panics if `m` is not monic.
    pub fn rem_monic(&self, m: &Self) -> Self {
        assert!(m.is_monic(), "rem_monic requires a monic divisor");
        let d = m.coeffs.len() - 1;
        if d == 0 {
            return Poly { coeffs: Vec::new() };
        }
        let mut rem = self.coeffs.clone();
        rem_monic_in_place(&mut rem, &m.coeffs);
        Poly::new(rem)
    }

    fn add_impl(&self, other: &Self) -> Self {
        let (longer, shorter) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = longer.clone();
        for (i, c) in shorter.iter().enumerate() {
            let cur = mem::replace(&mut out[i], C::zero());
            out[i] = cur + c;
        }
        Poly::new(out)
    }

    fn sub_impl(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly { coeffs: Vec::new() };
        }
        Poly::new(mul_slices(&self.coeffs, &other.coeffs))
    }

    fn neg_impl(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Reduces `rem` in place by the monic coefficient vector `m`.
pub(crate) fn rem_monic_in_place<C: Coeff>(rem: &mut Vec<C>, m: &[C])
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    let d = m.len() - 1;
    while rem.len() > d {
        let lead = rem.pop().expect("nonempty by loop condition");
        if lead.is_zero() {
            continue;
        }
        let shift = rem.len() - d;
        for (i, mc) in m[..d].iter().enumerate() {
            if mc.is_zero() {
                continue;
            }
            let cur = mem::replace(&mut rem[shift + i], C::zero());
            rem[shift + i] = cur - &(mc * &lead);
        }
    }
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
}

/// Product of two nonempty coefficient slices, choosing the algorithm by
/// operand length.
pub(crate) fn mul_slices<C: Coeff>(a: &[C], b: &[C]) -> Vec<C>
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_MIN {
        mul_schoolbook(a, b)
    } else {
        mul_karatsuba(a, b)
    }
}

fn mul_schoolbook<C: Coeff>(a: &[C], b: &[C]) -> Vec<C>
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let cur = mem::replace(&mut out[i + j], C::zero());
            out[i + j] = cur + &(ai * bj);
        }
    }
    out
}

fn mul_karatsuba<C: Coeff>(a: &[C], b: &[C]) -> Vec<C>
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));

    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = mul_slices(&sa, &sb);
    sub_assign_slices(&mut z1, &z0);
    sub_assign_slices(&mut z1, &z2);

    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    add_shifted(&mut out, &z0, 0);
    add_shifted(&mut out, &z1, m);
    add_shifted(&mut out, &z2, 2 * m);
    out
}

fn add_slices<C: Coeff>(a: &[C], b: &[C]) -> Vec<C>
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    let (longer, shorter) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = longer.to_vec();
    for (i, c) in shorter.iter().enumerate() {
        let cur = mem::replace(&mut out[i], C::zero());
        out[i] = cur + c;
    }
    out
}

fn sub_assign_slices<C: Coeff>(a: &mut Vec<C>, b: &[C])
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    if a.len() < b.len() {
        a.resize_with(b.len(), C::zero);
    }
    for (i, c) in b.iter().enumerate() {
        let cur = mem::replace(&mut a[i], C::zero());
        a[i] = cur - c;
    }
}

fn add_shifted<C: Coeff>(out: &mut [C], src: &[C], shift: usize)
where
    for<'a> &'a C: RefNum<C> + Neg<Output = C>,
{
    for (i, c) in src.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cur = mem::replace(&mut out[shift + i], C::zero());
        out[shift + i] = cur + c;
    }
}

impl IntPoly {
    /// Converts to a rational polynomial with unit denominators.
    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Divides exactly by `d` over the integers.
    ///
    /// Every quotient step must divide without remainder and the final
    /// remainder must vanish; otherwise [`PolyError::InexactDivision`] is
    /// returned. Division by zero yields [`PolyError::ZeroDivisor`].
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(PolyError::InexactDivision);
        }
        let dd = d.coeffs.len() - 1;
        let lead_d = &d.coeffs[dd];
        let nonzero: Vec<(usize, &BigInt)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = rem.pop().expect("nonempty by loop condition");
            let shift = rem.len() - dd;
            if lead.is_zero() {
                continue;
            }
            let (qc, qr) = lead.div_rem(lead_d);
            if !qr.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for &(i, dc) in &nonzero {
                let cur = mem::replace(&mut rem[shift + i], BigInt::zero());
                rem[shift + i] = cur - dc * &qc;
            }
            quot[shift] = qc;
        }
        if !rem.iter().all(Zero::is_zero) {
            return Err(PolyError::InexactDivision);
        }
        Ok(IntPoly::new(quot))
    }
}

impl RatPoly {
    /// Converts to an integer polynomial if every coefficient is an
    /// integer, otherwise `None`.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    /// Quotient and remainder with `self = quot * d + rem` and
    /// `deg rem < deg d`. Fails only when `d` is zero.
    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let lead_d = &d.coeffs[dd];
        let nonzero: Vec<(usize, &BigRational)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = rem.pop().expect("nonempty by loop condition");
            let shift = rem.len() - dd;
            if lead.is_zero() {
                continue;
            }
            let qc = lead / lead_d;
            for &(i, dc) in &nonzero {
                let cur = mem::replace(&mut rem[shift + i], BigRational::zero());
                rem[shift + i] = cur - dc * &qc;
            }
            quot[shift] = qc;
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Remainder of `self` modulo `d` over the rationals.
    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly, PolyError> {
        Ok(self.divrem(d)?.1)
    }

    /// Rescales so the leading coefficient is `1`; zero stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scaled(&inv)
            }
        }
    }
}

// ----- operator and numeric trait implementations -----
//
// Operator traits are instantiated per concrete coefficient type rather
// than generically over `C: Coeff`; generic impls with `&C: Neg`-style
// bounds send trait resolution into unbounded recursion through
// `Poly<Poly<...>>` candidates.

macro_rules! poly_trait_impls {
    ($C:ty) => {
        impl<'a> Add<&'a Poly<$C>> for &'a Poly<$C> {
            type Output = Poly<$C>;
            fn add(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.add_impl(rhs)
            }
        }

        impl Add<Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn add(self, rhs: Poly<$C>) -> Poly<$C> {
                self.add_impl(&rhs)
            }
        }

        impl<'a> Add<&'a Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn add(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.add_impl(rhs)
            }
        }

        impl<'a> Sub<&'a Poly<$C>> for &'a Poly<$C> {
            type Output = Poly<$C>;
            fn sub(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.sub_impl(rhs)
            }
        }

        impl Sub<Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn sub(self, rhs: Poly<$C>) -> Poly<$C> {
                self.sub_impl(&rhs)
            }
        }

        impl<'a> Sub<&'a Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn sub(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.sub_impl(rhs)
            }
        }

        impl<'a> Mul<&'a Poly<$C>> for &'a Poly<$C> {
            type Output = Poly<$C>;
            fn mul(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.mul_impl(rhs)
            }
        }

        impl Mul<Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn mul(self, rhs: Poly<$C>) -> Poly<$C> {
                self.mul_impl(&rhs)
            }
        }

        impl<'a> Mul<&'a Poly<$C>> for Poly<$C> {
            type Output = Poly<$C>;
            fn mul(self, rhs: &'a Poly<$C>) -> Poly<$C> {
                self.mul_impl(rhs)
            }
        }

        impl Neg for &Poly<$C> {
            type Output = Poly<$C>;
            fn neg(self) -> Poly<$C> {
                self.neg_impl()
            }
        }

        impl Neg for Poly<$C> {
            type Output = Poly<$C>;
            fn neg(self) -> Poly<$C> {
                self.neg_impl()
            }
        }

        impl Zero for Poly<$C> {
            fn zero() -> Self {
                Poly { coeffs: Vec::new() }
            }

            fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }
        }

        impl One for Poly<$C> {
            fn one() -> Self {
                Poly {
                    coeffs: vec![<$C>::one()],
                }
            }

            fn is_one(&self) -> bool {
                self.coeffs.len() == 1 && self.coeffs[0].is_one()
            }
        }

        impl fmt::Display for Poly<$C> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_poly(&self.coeffs, f)
            }
        }

        impl FromStr for Poly<$C> {
            type Err = PolyError;

            fn from_str(s: &str) -> Result<Self, PolyError> {
                parse_poly(s)
            }
        }
    };
}

poly_trait_impls!(BigInt);
poly_trait_impls!(BigRational);

fn fmt_poly<C: Coeff>(coeffs: &[C], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = c.abs();
        if e == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "q")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
    }
    Ok(())
}

// ----- parsing -----

struct Cursor<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            chars: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    /// Consumes a run of decimal digits, with at most one interior `/`
    /// starting a denominator, and returns it as a string slice.
    fn number_token(&mut self) -> Result<&'a str, PolyError> {
        let start = self.pos;
        let mut seen_slash = false;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else if c == b'/' && !seen_slash {
                seen_slash = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(PolyError::Malformed(format!(
                "expected a number at byte {}",
                start
            )));
        }
        let tok = std::str::from_utf8(&self.chars[start..self.pos])
            .expect("ASCII digits and slash are valid UTF-8");
        if tok.starts_with('/') || tok.ends_with('/') {
            return Err(PolyError::Malformed(format!("bad number `{tok}`")));
        }
        if let Some(den) = tok.split('/').nth(1) {
            if den.bytes().all(|b| b == b'0') {
                return Err(PolyError::Malformed(format!("zero denominator in `{tok}`")));
            }
        }
        Ok(tok)
    }

    fn exponent(&mut self) -> Result<usize, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Malformed(format!(
                "expected an exponent at byte {}",
                start
            )));
        }
        std::str::from_utf8(&self.chars[start..self.pos])
            .expect("ASCII digits are valid UTF-8")
            .parse()
            .map_err(|_| PolyError::Malformed("exponent out of range".into()))
    }
}

fn parse_poly<C: Coeff>(s: &str) -> Result<Poly<C>, PolyError>
where
    for<'b> &'b C: RefNum<C> + Neg<Output = C>,
{
    let mut cur = Cursor::new(s);
    let mut acc: Vec<C> = Vec::new();
    cur.skip_ws();
    if cur.at_end() {
        return Err(PolyError::Malformed("empty input".into()));
    }
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            cur.skip_ws();
            true
        }
        Some(b'+') => {
            cur.bump();
            cur.skip_ws();
            false
        }
        _ => false,
    };
    loop {
        let (coeff, exp) = parse_term::<C>(&mut cur)?;
        let signed = if negative { -coeff } else { coeff };
        if acc.len() <= exp {
            acc.resize_with(exp + 1, C::zero);
        }
        let curv = mem::replace(&mut acc[exp], C::zero());
        acc[exp] = curv + signed;
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        negative = match cur.bump() {
            Some(b'+') => false,
            Some(b'-') => true,
            other => {
                return Err(PolyError::Malformed(format!(
                    "expected `+` or `-`, found {:?}",
                    other.map(char::from)
                )))
            }
        };
        cur.skip_ws();
    }
    Ok(Poly::new(acc))
}

/// Parses one term: either `q[^e]`, `num`, or `num[*q[^e]]`.
fn parse_term<C: Coeff>(cur: &mut Cursor<'_>) -> Result<(C, usize), PolyError>
where
    for<'b> &'b C: RefNum<C> + Neg<Output = C>,
{
    if cur.peek() == Some(b'q') {
        cur.bump();
        let exp = if cur.peek() == Some(b'^') {
            cur.bump();
            cur.exponent()?
        } else {
            1
        };
        return Ok((C::one(), exp));
    }
    let tok = cur.number_token()?;
    let coeff =
        C::from_str(tok).map_err(|_| PolyError::Malformed(format!("bad coefficient `{tok}`")))?;
    if cur.peek() == Some(b'*') {
        cur.bump();
        if cur.bump() != Some(b'q') {
            return Err(PolyError::Malformed("expected `q` after `*`".into()));
        }
        let exp = if cur.peek() == Some(b'^') {
            cur.bump();
            cur.exponent()?
        } else {
            1
        };
        Ok((coeff, exp))
    } else {
        Ok((coeff, 0))
    }
}

// ----- tests -----
