//! The prime-power congruence `x^p ≡ x (mod p)` as an exact divisibility
//! witness: `x^p - x` is decomposed into `p` times a double sum of integer
//! terms, with the integrality of each `(p-1)!/(i!(p-i)!)` checked by exact
//! division rather than assumed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::{binomial, checked_exact_div, factorial, pow_int};
use crate::Error;

/// Witness moduli are capped so the factorial table stays small. The
/// congruence needs a primality gate, not an efficient one.
pub const DEFAULT_PRIME_BOUND: u64 = 1000;

/// Trial division up to the square root.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes strictly below `bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&p| is_prime(p)).collect()
}

/// `(k+1)^p - k^p - 1` by direct exponentiation.
pub fn power_difference(p: u32, k: u64) -> BigInt {
    assert!(p >= 2 && k >= 1);
    pow_int(&BigInt::from(k + 1), p) - pow_int(&BigInt::from(k), p) - 1
}

/// The same quantity expanded as Σ_{i=1..p-1} C(p,i)·k^i.
pub fn binomial_expansion(p: u32, k: u64) -> BigInt {
    assert!(p >= 2 && k >= 1);
    let k = BigInt::from(k);
    let mut k_pow = BigInt::from(1u32);
    let mut total = BigInt::zero();
    for i in 1..p {
        k_pow *= &k;
        total += binomial(p, i) * &k_pow;
    }
    total
}

/// `(k+1)^p - k^p - 1`, computed by both routes; the two must agree for
/// every `p >= 2`, prime or not.
pub fn binomial_layer(p: u32, k: u64) -> BigInt {
    let direct = power_difference(p, k);
    let expanded = binomial_expansion(p, k);
    assert_eq!(
        direct, expanded,
        "binomial layer routes disagree at p={p}, k={k}"
    );
    direct
}

/// Exact decomposition `x^p - x = p · Σ_{k=1..x-1} Σ_{i=1..p-1} p_i k^i`
/// with `p_i = (p-1)!/(i!(p-i)!)`, certifying that `p` divides `x^p - x`.
#[derive(Debug, Clone)]
pub struct FermatWitness {
    pub p: u64,
    pub x: u64,
    binomial_quotients: Vec<BigInt>,
    pub quotient: BigInt,
}

impl FermatWitness {
    /// The coefficients `p_i` for `i = 1..=p-1`; slot 0 holds `p_1`.
    pub fn binomial_quotients(&self) -> &[BigInt] {
        &self.binomial_quotients
    }

    /// Re-checks `p · quotient == x^p - x` against direct exponentiation.
    pub fn verify(&self) -> bool {
        let p = u32::try_from(self.p).expect("witness modulus fits u32");
        BigInt::from(self.p) * &self.quotient
            == pow_int(&BigInt::from(self.x), p) - BigInt::from(self.x)
    }
}

/// Builds the divisibility witness for a prime `p <= DEFAULT_PRIME_BOUND`.
pub fn make_witness(p: u64, x: u64) -> Result<FermatWitness, Error> {
    make_witness_bounded(p, x, DEFAULT_PRIME_BOUND)
}

/// Builds the divisibility witness for a prime `p <= prime_bound` and
/// positive `x`. `x` may exceed `p`; no reduction is performed, keeping the
/// witness aligned with the double-sum decomposition.
pub fn make_witness_bounded(p: u64, x: u64, prime_bound: u64) -> Result<FermatWitness, Error> {
    if p > prime_bound {
        return Err(Error::PrimeBoundExceeded {
            p,
            bound: prime_bound,
        });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(x >= 1, "witness base must be positive");
    let p32 = u32::try_from(p).expect("bounded modulus fits u32");

    // p_i = (p-1)!/(i!(p-i)!): the division is exact precisely because p is
    // prime (p is coprime to both factorials, so they divide (p-1)!).
    let fact_p_minus_1 = factorial(p32 - 1);
    let binomial_quotients: Vec<BigInt> = (1..p32)
        .map(|i| {
            checked_exact_div(&fact_p_minus_1, &(factorial(i) * factorial(p32 - i)))
                .expect("i!(p-i)! divides (p-1)! for prime p")
        })
        .collect();

    // Σ_{k=1..x-1} Σ_i p_i k^i, inner sum in Horner form.
    let mut quotient = BigInt::zero();
    for k in 1..x {
        let k = BigInt::from(k);
        let mut inner = BigInt::zero();
        for coefficient in binomial_quotients.iter().rev() {
            inner = (inner + coefficient) * &k;
        }
        quotient += inner;
    }

    let witness = FermatWitness {
        p,
        x,
        binomial_quotients,
        quotient,
    };
    debug_assert!(witness.verify());
    Ok(witness)
}

/// For a composite modulus, the indices `i` in `[1, p-1]` at which
/// `i!(p-i)!` fails to divide `(p-1)!`. That exact division is the step that
/// needs primality; the list is non-empty for every composite `p >= 4` that
/// has been checked.
pub fn non_prime_failure_probe(p: u64) -> Result<Vec<u64>, Error> {
    if p < 4 || is_prime(p) {
        return Err(Error::NotComposite(p));
    }
    let p32 = u32::try_from(p).map_err(|_| Error::PrimeBoundExceeded {
        p,
        bound: u32::MAX as u64,
    })?;
    let fact_p_minus_1 = factorial(p32 - 1);
    Ok((1..p32)
        .filter(|&i| {
            checked_exact_div(&fact_p_minus_1, &(factorial(i) * factorial(p32 - i))).is_none()
        })
        .map(u64::from)
        .collect())
}
