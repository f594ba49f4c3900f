//! Exact rational verification of the alternating reciprocal-factorial sums
//! that produce the mod-2 coefficients.
//!
//! The driving fact: Σ_{i=1..r-1} (-1)^{r-i+1}/(i!(r-i)!) vanishes for odd r
//! and equals 2/(2s)! for even r = 2s. The module checks that pointwise, plus
//! the window-shrinking argument for the odd case and the three recursion
//! identities behind the even case. Everything is `BigRational`; signs come
//! from parities of integer exponents, never from floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactnum::factorial;

/// (-1)^q as a bigint, from the parity of q.
fn sign_pow(q: u32) -> BigInt {
    if q % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// (-1)^sign_exp / (a! b!)
fn signed_recip_fact(sign_exp: u32, a: u32, b: u32) -> BigRational {
    BigRational::new(sign_pow(sign_exp), factorial(a) * factorial(b))
}

/// The alternating sum Σ_{i=1..r-1} (-1)^{r-i+1}/(i!(r-i)!) with its terms
/// kept visible. Requires r >= 2; there are exactly r-1 terms.
#[derive(Debug, Clone)]
pub struct AlternatingSum {
    r: u32,
    terms: Vec<BigRational>,
}

impl AlternatingSum {
    pub fn new(r: u32) -> Self {
        assert!(r >= 2, "alternating sum needs r >= 2, got {r}");
        let terms = (1..r).map(|i| signed_recip_fact(r - i + 1, i, r - i)).collect();
        AlternatingSum { r, terms }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn terms(&self) -> &[BigRational] {
        &self.terms
    }

    pub fn total(&self) -> BigRational {
        self.terms.iter().sum()
    }
}

/// Σ_{i=1..r-1} (-1)^{r-i+1}/(i!(r-i)!): zero for odd r, 2/(2s)! for r = 2s.
pub fn alt_sum(r: u32) -> BigRational {
    AlternatingSum::new(r).total()
}

/// The closed-form value the even case must take: 2/(2s)!.
pub fn even_alt_sum_value(s: u32) -> BigRational {
    BigRational::new(BigInt::from(2), factorial(2 * s))
}

/// The odd-r alternating sum (r = 2s+1) restricted to the window
/// [1+t, 2s-t]: Σ (-1)^{2s+2-i}/(i!(2s+1-i)!). An inverted window is the
/// empty sum, 0. Shrinking t by one strips a boundary pair that cancels, so
/// the value is independent of t; that is why the full sum is zero.
pub fn windowed_alt_sum(s: u32, t: u32) -> BigRational {
    assert!(s >= 1, "window sum needs s >= 1");
    if t >= s {
        // 2s - t < 1 + t: inverted bounds, empty sum
        return BigRational::zero();
    }
    (1 + t..=2 * s - t)
        .map(|i| signed_recip_fact(2 * s + 2 - i, i, 2 * s + 1 - i))
        .sum()
}

/// The boundary pair stripped when the window shrinks from t to t+1:
/// (-1)^{2s+1-t}/((1+t)!(2s-t)!) + (-1)^{2+t}/((2s-t)!(1+t)!).
/// The two exponents always have opposite parity, so the pair sums to zero.
pub fn boundary_pair_sum(s: u32, t: u32) -> BigRational {
    assert!(t < s, "stripped indices must be distinct: t < s");
    signed_recip_fact(2 * s + 1 - t, 1 + t, 2 * s - t)
        + signed_recip_fact(2 + t, 2 * s - t, 1 + t)
}

/// The recursion that advances the even-case value one step:
/// 2/(2s)! + 2(1-(2s+1)(2s+2))/(2s+2)! == 2/(2s+2)!.
pub fn check_recursion_step(s: u32) -> bool {
    assert!(s >= 1);
    let step_product = BigInt::from(2 * s + 1) * BigInt::from(2 * s + 2);
    let lhs = even_alt_sum_value(s)
        + BigRational::new(
            BigInt::from(2) * (BigInt::from(1) - step_product),
            factorial(2 * s + 2),
        );
    lhs == even_alt_sum_value(s + 1)
}

/// Σ_{i=1..2s-1} (-1)^{1+i} ((2s-i)^2 + 3(2s-i) + 1) / (i!(2s+2-i)!)
fn quadratic_numerator_sum(s: u32) -> BigRational {
    (1..=2 * s - 1)
        .map(|i| {
            let d = BigInt::from(2 * s - i);
            let numerator = sign_pow(1 + i) * (&d * &d + BigInt::from(3) * &d + 1);
            BigRational::new(numerator, factorial(i) * factorial(2 * s + 2 - i))
        })
        .sum()
}

/// Checks that the three-term closed form
/// -1/((2s)!2!) + 1/((2s+1)!1!) + 2((2s+1)(2s+2)-1)/(2s+2)!
/// equals the quadratic-numerator sum, exactly.
pub fn check_quadratic_split(s: u32) -> bool {
    assert!(s >= 1);
    let step_product = BigInt::from(2 * s + 1) * BigInt::from(2 * s + 2);
    let lhs = signed_recip_fact(1, 2 * s, 2)
        + signed_recip_fact(0, 2 * s + 1, 1)
        + BigRational::new(
            BigInt::from(2) * (step_product - BigInt::from(1)),
            factorial(2 * s + 2),
        );
    lhs == quadratic_numerator_sum(s)
}

/// Checks that the quadratic-numerator sum splits as a difference of two
/// plain alternating sums:
/// Σ (-1)^{2s+1-i}/(i!(2s-i)!) - Σ (-1)^{2s+3-i}/(i!(2s+2-i)!),
/// both over i = 1..2s-1.
pub fn check_difference_form(s: u32) -> bool {
    assert!(s >= 1);
    let first: BigRational = (1..=2 * s - 1)
        .map(|i| signed_recip_fact(2 * s + 1 - i, i, 2 * s - i))
        .sum();
    let second: BigRational = (1..=2 * s - 1)
        .map(|i| signed_recip_fact(2 * s + 3 - i, i, 2 * s + 2 - i))
        .sum();
    quadratic_numerator_sum(s) == first - second
}
