//! Arbitrary-precision integer and rational arithmetic, plus the factorial
//! and binomial helpers everything else is built on.
//!
//! Integers are [`num_bigint::BigInt`], rationals are
//! [`num_rational::BigRational`]; the latter normalizes eagerly on
//! construction (lowest terms, positive denominator), so equality against
//! exact targets like `2/(2s)!` is structural.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational;

/// Memoized factorial table. Grows on demand and is never evicted; safe to
/// share across threads (growth is serialized, reads clone out).
pub struct FactorialCache {
    table: Mutex<Vec<BigInt>>,
}

impl FactorialCache {
    pub fn new() -> Self {
        FactorialCache {
            table: Mutex::new(vec![BigInt::one()]),
        }
    }

    /// `q!`, extending the table as needed.
    pub fn factorial(&self, q: u32) -> BigInt {
        let mut table = self.table.lock().unwrap();
        while table.len() <= q as usize {
            let next = table.last().unwrap() * BigInt::from(table.len());
            table.push(next);
        }
        table[q as usize].clone()
    }
}

impl Default for FactorialCache {
    fn default() -> Self {
        Self::new()
    }
}

fn shared_cache() -> &'static FactorialCache {
    static CACHE: OnceLock<FactorialCache> = OnceLock::new();
    CACHE.get_or_init(FactorialCache::new)
}

/// `q!` from the process-wide cache.
pub fn factorial(q: u32) -> BigInt {
    shared_cache().factorial(q)
}

/// `a! / (b! (a-b)!)` as an exact integer. Requires `b <= a`.
pub fn binomial(a: u32, b: u32) -> BigInt {
    assert!(
        b <= a,
        "binomial({a}, {b}): lower index must not exceed upper index"
    );
    exact_div(&factorial(a), &(factorial(b) * factorial(a - b)))
}

/// `base^exp` by binary exponentiation. `exp == 0` gives 1 for every base,
/// including `0^0 == 1`, so the nested-sum evaluators never need a special
/// case for a vanishing inner exponent.
pub fn pow_int(base: &BigInt, exp: u32) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    base.pow(exp)
}

/// `n / d` when the division is exact.
///
/// Panics if `d` does not divide `n`; the callers use this as a hard check
/// that a coefficient which must be integral actually is.
pub fn exact_div(n: &BigInt, d: &BigInt) -> BigInt {
    checked_exact_div(n, d)
        .unwrap_or_else(|| panic!("exact division failed: {d} does not divide {n}"))
}

/// `Some(n / d)` when `d` divides `n` exactly, `None` otherwise.
pub fn checked_exact_div(n: &BigInt, d: &BigInt) -> Option<BigInt> {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}
