//! Single, double, and triple nested power sums with two interchangeable
//! backends: a naive loop evaluator that computes every inner term from
//! scratch, and a prefix-sum table that needs O(L) bigint additions for the
//! whole family. Both run through an [`OpCounter`] so the cost gap is
//! measurable instead of anecdotal.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Evaluation strategy for the nested sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Literal nested loops; every innermost power is recomputed.
    Naive,
    /// Prefix-sum accumulation over a [`PowerSumTable`].
    Table,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Naive => "naive",
            Backend::Table => "table",
        }
    }
}

/// Counts bigint additions and multiplications performed through it.
/// Counts only move up while an evaluation runs.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub big_int_adds: u64,
    pub big_int_muls: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        OpCounter::default()
    }

    pub fn add(&mut self, lhs: &BigInt, rhs: &BigInt) -> BigInt {
        self.big_int_adds += 1;
        lhs + rhs
    }

    pub fn mul(&mut self, lhs: &BigInt, rhs: &BigInt) -> BigInt {
        self.big_int_muls += 1;
        lhs * rhs
    }

    /// `base^exp` by square-and-multiply; every bigint multiply is counted.
    pub fn pow(&mut self, base: &BigInt, exp: u32) -> BigInt {
        let mut result = BigInt::one();
        let mut square = base.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &square);
            }
            e >>= 1;
            if e > 0 {
                square = self.mul(&square, &square);
            }
        }
        result
    }
}

/// Σ_{j=1..k} j^e. Empty for `k == 0`.
pub fn single_sum(e: u32, k: u64) -> BigInt {
    single_sum_counted(e, k, &mut OpCounter::new())
}

pub fn single_sum_counted(e: u32, k: u64, ops: &mut OpCounter) -> BigInt {
    let mut total = BigInt::zero();
    for j in 1..=k {
        let term = ops.pow(&BigInt::from(j), e);
        total = ops.add(&total, &term);
    }
    total
}

/// Σ_{k=1..y} Σ_{j=1..k} j^e. Empty for `y == 0`.
pub fn double_sum(e: u32, y: u64) -> BigInt {
    double_sum_counted(e, y, &mut OpCounter::new())
}

pub fn double_sum_counted(e: u32, y: u64, ops: &mut OpCounter) -> BigInt {
    let mut total = BigInt::zero();
    for k in 1..=y {
        for j in 1..=k {
            let term = ops.pow(&BigInt::from(j), e);
            total = ops.add(&total, &term);
        }
    }
    total
}

/// Σ_{k=1..y} Σ_{j=1..k} Σ_{i=1..j} i^e. Empty for `y == 0`.
pub fn triple_sum(e: u32, y: u64) -> BigInt {
    triple_sum_counted(e, y, &mut OpCounter::new())
}

pub fn triple_sum_counted(e: u32, y: u64, ops: &mut OpCounter) -> BigInt {
    let mut total = BigInt::zero();
    for k in 1..=y {
        for j in 1..=k {
            for i in 1..=j {
                let term = ops.pow(&BigInt::from(i), e);
                total = ops.add(&total, &term);
            }
        }
    }
    total
}

/// Prefix sums of `j^e` and their iterated accumulations, indexed 0..=limit.
///
/// `s1[k]` is the single sum up to `k`, `s2[y]` the double sum, `s3[y]` the
/// triple sum. Index 0 holds 0 in all three rows, so the empty-sum cases
/// (`x = 1`, `x = 2` in the identity evaluators) need no special handling.
#[derive(Debug, Clone)]
pub struct PowerSumTable {
    exponent: u32,
    limit: u64,
    s1: Vec<BigInt>,
    s2: Vec<BigInt>,
    s3: Vec<BigInt>,
}

/// Builds the table for one exponent with O(L) additions and O(L) power
/// evaluations in total.
pub fn build_table(e: u32, limit: u64) -> PowerSumTable {
    build_table_counted(e, limit, &mut OpCounter::new())
}

pub fn build_table_counted(e: u32, limit: u64, ops: &mut OpCounter) -> PowerSumTable {
    let len = usize::try_from(limit).expect("table limit fits in memory") + 1;
    let mut s1 = Vec::with_capacity(len);
    s1.push(BigInt::zero());
    for k in 1..=limit {
        let power = ops.pow(&BigInt::from(k), e);
        let prev = &s1[(k - 1) as usize];
        s1.push(ops.add(prev, &power));
    }
    let s2 = accumulate(&s1, ops);
    let s3 = accumulate(&s2, ops);
    PowerSumTable {
        exponent: e,
        limit,
        s1,
        s2,
        s3,
    }
}

fn accumulate(row: &[BigInt], ops: &mut OpCounter) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(row.len());
    out.push(BigInt::zero());
    for (y, value) in row.iter().enumerate().skip(1) {
        let prev = &out[y - 1];
        out.push(ops.add(prev, value));
    }
    out
}

impl PowerSumTable {
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Table-backed Σ_{j=1..k} j^e.
    pub fn single(&self, k: u64) -> &BigInt {
        &self.s1[self.index(k)]
    }

    /// Table-backed double sum up to `y`.
    pub fn double(&self, y: u64) -> &BigInt {
        &self.s2[self.index(y)]
    }

    /// Table-backed triple sum up to `y`.
    pub fn triple(&self, y: u64) -> &BigInt {
        &self.s3[self.index(y)]
    }

    pub fn single_row(&self) -> &[BigInt] {
        &self.s1
    }

    pub fn double_row(&self) -> &[BigInt] {
        &self.s2
    }

    pub fn triple_row(&self) -> &[BigInt] {
        &self.s3
    }

    fn index(&self, at: u64) -> usize {
        assert!(
            at <= self.limit,
            "index {at} beyond table limit {}",
            self.limit
        );
        at as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::pow_int;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn single_sum_examples() {
        assert_eq!(single_sum(1, 4), big(10));
        assert_eq!(single_sum(5, 0), big(0));
        // brute-force oracle: 1^5 + 2^5 + 3^5 + 4^5
        let brute: BigInt = (1..=4u64).map(|j| pow_int(&big(j as i64), 5)).sum();
        assert_eq!(brute, big(1300));
        assert_eq!(single_sum(5, 4), brute);
    }

    #[test]
    fn double_sum_examples() {
        assert_eq!(double_sum(0, 3), big(6));
        assert_eq!(big(42) * double_sum(5, 4), big(67620));
        assert_eq!(big(70) * double_sum(3, 4), big(10220));
    }

    #[test]
    fn triple_sum_examples() {
        assert_eq!(triple_sum(0, 3), big(10));
        assert_eq!(triple_sum(9, 0), big(0));
        // independent oracle: three explicit nested loops
        let mut brute = BigInt::zero();
        for k in 1..=5u64 {
            for j in 1..=k {
                for i in 1..=j {
                    brute += pow_int(&big(i as i64), 2);
                }
            }
        }
        assert_eq!(triple_sum(2, 5), brute);
    }

    #[test]
    fn table_rows_forced_by_definition() {
        let t = build_table(1, 4);
        assert_eq!(t.single_row(), &[big(0), big(1), big(3), big(6), big(10)]);
        let t = build_table(0, 3);
        assert_eq!(t.triple_row(), &[big(0), big(1), big(4), big(10)]);
    }

    #[test]
    fn table_matches_naive_double_at_49() {
        let t = build_table(5, 50);
        assert_eq!(t.double(49), &double_sum(5, 49));
    }

    #[test]
    fn table_invariants() {
        for e in [0u32, 1, 4, 7] {
            let t = build_table(e, 30);
            assert_eq!(t.single(0), &BigInt::zero());
            assert_eq!(t.double(0), &BigInt::zero());
            assert_eq!(t.triple(0), &BigInt::zero());
            for k in 1..=30u64 {
                assert_eq!(t.single(k) - t.single(k - 1), pow_int(&big(k as i64), e));
                assert_eq!(&(t.double(k) - t.double(k - 1)), t.single(k));
                assert_eq!(&(t.triple(k) - t.triple(k - 1)), t.double(k));
            }
        }
    }

    #[test]
    fn backends_agree_across_the_grid() {
        for e in 0..=12u32 {
            let table = build_table(e, 60);
            for y in 0..=60u64 {
                assert_eq!(&single_sum(e, y), table.single(y), "single e={e} y={y}");
                assert_eq!(&double_sum(e, y), table.double(y), "double e={e} y={y}");
                assert_eq!(&triple_sum(e, y), table.triple(y), "triple e={e} y={y}");
            }
        }
    }

    #[test]
    fn counted_wrappers_return_same_values() {
        let mut ops = OpCounter::new();
        assert_eq!(triple_sum_counted(3, 12, &mut ops), triple_sum(3, 12));
        assert!(ops.big_int_adds > 0 && ops.big_int_muls > 0);
    }

    #[test]
    fn counter_pow_counts_zero_muls_for_zero_exponent() {
        let mut ops = OpCounter::new();
        assert_eq!(ops.pow(&big(9), 0), big(1));
        assert_eq!(ops.big_int_muls, 0);
    }

    #[test]
    fn cost_separation_between_backends() {
        let e = 5;
        let (l, l2) = (40u64, 80u64);

        let mut naive_small = OpCounter::new();
        let mut naive_large = OpCounter::new();
        let small = triple_sum_counted(e, l, &mut naive_small);
        let large = triple_sum_counted(e, l2, &mut naive_large);

        let mut table_small = OpCounter::new();
        let mut table_large = OpCounter::new();
        let ts = build_table_counted(e, l, &mut table_small);
        let tl = build_table_counted(e, l2, &mut table_large);

        assert_eq!(ts.triple(l), &small);
        assert_eq!(tl.triple(l2), &large);

        // Doubling the limit scales the naive triple sum ~8x but the table
        // build only ~2x.
        assert!(naive_large.big_int_adds >= 6 * naive_small.big_int_adds);
        assert!(table_large.big_int_adds <= 3 * table_small.big_int_adds);

        // Table adds are exactly the three accumulation passes.
        assert_eq!(table_small.big_int_adds, 3 * l);
        assert_eq!(table_large.big_int_adds, 3 * l2);
    }

    proptest! {
        // Independent re-summation of the accumulation rows for random (e, y).
        #[test]
        fn double_row_is_sum_of_single_rows(e in 0u32..8, y in 0u64..40) {
            let t = build_table(e, y);
            let resummed: BigInt = (1..=y).map(|k| t.single(k).clone()).sum();
            prop_assert_eq!(t.double(y), &resummed);
        }

        #[test]
        fn triple_row_is_sum_of_double_rows(e in 0u32..8, y in 0u64..40) {
            let t = build_table(e, y);
            let resummed: BigInt = (1..=y).map(|k| t.double(k).clone()).sum();
            prop_assert_eq!(t.triple(y), &resummed);
        }
    }
}
