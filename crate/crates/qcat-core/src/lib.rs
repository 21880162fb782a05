//! Exact q-series arithmetic and congruence verification for q-Catalan sums.
//!
//! The crate machine-checks a family of congruences satisfied by truncated
//! sums of q-binomial coefficients and q-Catalan numbers, working in exact
//! integer and rational arithmetic throughout. A claim such as
//!
//! ```text
//! sum_{k=0}^{n-1} q^k C_k(q)  =  closed form   (mod Phi_n(q)^2)
//! ```
//!
//! is verified by computing both sides in the residue ring and subtracting;
//! the boolean answer is backed by the reduced difference itself, reported
//! verbatim as a witness whenever it is nonzero.
//!
//! Module map:
//!
//! * [`poly`]: dense univariate polynomials over `BigInt` / `BigRational`
//!   with exact division, Euclidean division, Karatsuba multiplication, and
//!   a canonical textual grammar.
//! * [`qseries`]: q-integers, q-Pochhammer products, memoized q-binomials,
//!   and the two equivalent q-Catalan constructions.
//! * [`cyclotomic`]: cyclotomic polynomials by divisor recursion, Euler's
//!   totient, and a persistent, validating disk cache.
//! * [`quotient`]: rational residue arithmetic in `Q[q]/Phi_n(q)^e`,
//!   including unit inverses and q-power shortcuts.
//! * [`congruences`]: the claim registry and the verifiers for the q-series
//!   congruences, identities, and root-of-unity evaluations.
//! * [`classical`]: the q = 1 shadows, verified modulo p^2 with plain
//!   integers, plus deterministic 64-bit primality testing.

pub mod classical;
pub mod congruences;
pub mod cyclotomic;
pub mod poly;
pub mod qseries;
pub mod quotient;

pub use classical::{is_prime, verify_classical_catalan, verify_classical_central};
pub use congruences::{
    check_composition, check_ladder, run_claim_range, run_claim_range_with, symbol3,
    verify_binom_2n_k_congruence, verify_binom_kplus1_sum, verify_case1_identity,
    verify_case2_identity, verify_catalan_sum, verify_central_sum, verify_claim,
    verify_claim_with_power, verify_intermediate_congruence, verify_lemma_sum,
    verify_petrov_identity, verify_tauraso_identity, verify_tauraso_weak, ClaimId, ClaimReport,
    RangeOptions, Status, Symbol3, VerifyError,
};
pub use cyclotomic::{
    cyclotomic, cyclotomic_power, global_cache, totient, CyclotomicCache, CyclotomicError,
};
pub use poly::{IntPoly, Poly, PolyError, RatPoly};
pub use qseries::{
    q_binomial, q_catalan, q_catalan_division_form, q_integer, q_pochhammer_power, QBinomTable,
};
pub use quotient::{q_power, reduce, QuotientError, ResidueElem, RingSpec};
