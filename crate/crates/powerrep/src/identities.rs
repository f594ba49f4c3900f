//! Exact evaluation of the power representations, with term-level
//! decomposition reports.
//!
//! Three forms are proven for every positive base and exponent:
//! the consecutive-power form `x + Σ_{k=1..x-1} ((k+1)^n - k^n - 1)`, the
//! telescoping form `Σ_{k=1..x} (k^n - (k-1)^n)`, and the mod-2 form whose
//! s-th term is `2·n!/((2s)!(n-2s)!)` times a double power sum with inner
//! exponent `n - 2s`. The mod-3 form lives in [`crate::conjecture`] and is
//! selectable here only for signed evaluation and display.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactnum::{exact_div, factorial, pow_int};
use crate::powersum::{build_table, double_sum, Backend};
use crate::Error;

/// Which representation to evaluate or display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `x + Σ ((k+1)^n - k^n - 1)` over `k = 1..x-1`.
    Consecutive,
    /// `Σ (k^n - (k-1)^n)` over `k = 1..x`.
    Telescope,
    /// Double sums of `j^{n-2s}`; every inner exponent shares the parity of n.
    Mod2,
    /// Triple sums of `i^{n-3s}` plus a quadratic tail; conjectural.
    Mod3,
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::Consecutive => "consecutive",
            Identity::Telescope => "telescope",
            Identity::Mod2 => "mod2",
            Identity::Mod3 => "mod3",
        }
    }
}

/// Per-term detail for the summation terms of a decomposition: the integral
/// coefficient, the nested-sum value it multiplies, and the inner exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDetail {
    pub coefficient: BigInt,
    pub inner_sum: BigInt,
    pub inner_exponent: u32,
}

/// One addend of a decomposition. The leading base term carries no detail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub label: String,
    pub value: BigInt,
    pub detail: Option<TermDetail>,
}

/// An identity evaluation broken into named addends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub identity: Identity,
    pub base: BigInt,
    pub exponent: u32,
    pub terms: Vec<Term>,
    pub total: BigInt,
}

impl DecompositionReport {
    pub(crate) fn from_terms(
        identity: Identity,
        base: BigInt,
        exponent: u32,
        terms: Vec<Term>,
    ) -> Self {
        let total = terms.iter().map(|t| &t.value).sum();
        DecompositionReport {
            identity,
            base,
            exponent,
            terms,
            total,
        }
    }

    /// The addends joined as `a + b + ... = total`, e.g.
    /// `5 + 67620 + 10220 + 280 = 78125`.
    pub fn addends_line(&self) -> String {
        let addends: Vec<String> = self.terms.iter().map(|t| t.value.to_string()).collect();
        format!("{} = {}", addends.join(" + "), self.total)
    }
}

/// `x + Σ_{k=1..x-1} ((k+1)^n - (k^n + 1))`, which equals `x^n` exactly.
pub fn eval_consecutive(x: u64, n: u32) -> BigInt {
    assert!(x >= 1 && n >= 1, "requires x >= 1 and n >= 1");
    let mut total = BigInt::from(x);
    let mut k_pow = BigInt::from(1u32); // k^n at k = 1
    for k in 1..x {
        let next_pow = pow_int(&BigInt::from(k + 1), n);
        total += &next_pow - &k_pow - 1;
        k_pow = next_pow;
    }
    total
}

/// `Σ_{k=1..x} (k^n - (k-1)^n)`, which equals `x^n` exactly.
pub fn eval_telescope(x: u64, n: u32) -> BigInt {
    assert!(x >= 1 && n >= 1, "requires x >= 1 and n >= 1");
    let mut total = BigInt::zero();
    let mut prev_pow = BigInt::zero(); // (k-1)^n at k = 1, n >= 1
    for k in 1..=x {
        let k_pow = pow_int(&BigInt::from(k), n);
        total += &k_pow - &prev_pow;
        prev_pow = k_pow;
    }
    total
}

/// Number of summation terms in the mod-2 form: n/2 for even n, (n-1)/2 for
/// odd n, i.e. the number of positive even integers not exceeding n.
pub fn mod2_term_count(n: u32) -> u32 {
    n / 2
}

/// Mod-2 decomposition of `x^n` with the default table backend.
pub fn eval_mod2(x: u64, n: u32) -> DecompositionReport {
    eval_mod2_with(x, n, Backend::Table)
}

/// Mod-2 decomposition of `x^n`: the leading `x` plus one term per
/// `s = 1..=n/2`, each `2·n!/((2s)!(n-2s)!)` times the double power sum with
/// inner exponent `n - 2s` over `k = 1..x-1`. The total equals `x^n`.
pub fn eval_mod2_with(x: u64, n: u32, backend: Backend) -> DecompositionReport {
    assert!(x >= 1 && n >= 1, "requires x >= 1 and n >= 1");
    let mut terms = vec![Term {
        label: "x".to_string(),
        value: BigInt::from(x),
        detail: None,
    }];
    for s in 1..=mod2_term_count(n) {
        // For even n the last term has inner exponent 0; every summed j is
        // >= 1, so j^0 = 1 and the double sum counts pairs. No special case.
        let e = n - 2 * s;
        // 2·n!/((2s)!(n-2s)!) divides exactly; exact_div enforces it.
        let coefficient = exact_div(
            &(BigInt::from(2u32) * factorial(n)),
            &(factorial(2 * s) * factorial(e)),
        );
        let inner_sum = match backend {
            Backend::Table => build_table(e, x - 1).double(x - 1).clone(),
            Backend::Naive => double_sum(e, x - 1),
        };
        let value = &coefficient * &inner_sum;
        terms.push(Term {
            label: format!("s={s}"),
            value,
            detail: Some(TermDetail {
                coefficient,
                inner_sum,
                inner_exponent: e,
            }),
        });
    }
    DecompositionReport::from_terms(Identity::Mod2, BigInt::from(x), n, terms)
}

/// Result of extending an identity to a negative base by the parity rule:
/// the identity evaluated at |x|, and the sign that was applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityExtension {
    pub magnitude_result: BigInt,
    pub sign_applied: i8,
}

impl ParityExtension {
    pub fn value(&self) -> BigInt {
        if self.sign_applied < 0 {
            -&self.magnitude_result
        } else {
            self.magnitude_result.clone()
        }
    }
}

/// Evaluates the selected identity at a nonzero integer base. Negative bases
/// evaluate at the magnitude and are negated exactly when `n` is odd; zero is
/// rejected rather than defined.
pub fn eval_signed(x: i64, n: u32, identity: Identity) -> Result<BigInt, Error> {
    eval_signed_detailed(x, n, identity).map(|ext| ext.value())
}

/// As [`eval_signed`], keeping the magnitude result and the applied sign
/// visible.
pub fn eval_signed_detailed(x: i64, n: u32, identity: Identity) -> Result<ParityExtension, Error> {
    if x == 0 {
        return Err(Error::ZeroBase);
    }
    assert!(n >= 1, "requires n >= 1");
    let magnitude = x.unsigned_abs();
    let magnitude_result = match identity {
        Identity::Consecutive => eval_consecutive(magnitude, n),
        Identity::Telescope => eval_telescope(magnitude, n),
        Identity::Mod2 => eval_mod2(magnitude, n).total,
        Identity::Mod3 => crate::conjecture::eval_mod3_rhs(magnitude, n).rhs,
    };
    let sign_applied = if x < 0 && n % 2 == 1 { -1 } else { 1 };
    Ok(ParityExtension {
        magnitude_result,
        sign_applied,
    })
}
