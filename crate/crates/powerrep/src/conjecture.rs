//! The mod-3 representation of `x^n` and its grid-search harness.
//!
//! The evaluated right-hand side is
//! `x + Σ_{s=1..m} 3·n!/((3s)!(n-3s)!) · (T_{n-3s}(x-1) + (-1)^{s+1}·T_{n-3s}(x-2)) + q(x)`
//! where `T_e(y)` is the triple power sum with inner exponent `e`, `m = ⌊n/3⌋`,
//! and the tail `q` is a quadratic selected by `n mod 6`. Unlike the mod-2
//! form this identity is unproven, so cells report a verdict instead of
//! asserting; mismatches are collected, never suppressed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::exactnum::{exact_div, factorial, pow_int};
use crate::identities::{DecompositionReport, Identity, Term, TermDetail};
use crate::powersum::{build_table, triple_sum, Backend};
use crate::IntRange;

/// Number of summation terms in the mod-3 form: n/3, (n-1)/3, or (n-2)/3
/// according to n mod 3, which is integer division by 3 in all three cases.
pub fn term_count(n: u32) -> u32 {
    n / 3
}

/// The quadratic tail `c·(x-1)·x` appended to the mod-3 sum, selected by the
/// residue of `n` mod 6 (residue class 6 stands for `n ≡ 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailPolynomial {
    residue_class: u32,
    coefficient: BigRational,
}

/// Tail coefficients for residue classes 1..=6.
const TAIL_COEFFICIENTS: [(i64, i64); 6] = [(0, 1), (1, 1), (3, 2), (1, 1), (0, 1), (-1, 2)];

/// Tail polynomial for exponent `n`: residue class `((n-1) mod 6) + 1`, so
/// that multiples of 6 land on class 6 rather than 0.
pub fn tail_poly(n: u32) -> TailPolynomial {
    assert!(n >= 1);
    let residue_class = ((n - 1) % 6) + 1;
    let (num, den) = TAIL_COEFFICIENTS[(residue_class - 1) as usize];
    TailPolynomial {
        residue_class,
        coefficient: BigRational::new(BigInt::from(num), BigInt::from(den)),
    }
}

impl TailPolynomial {
    pub fn residue_class(&self) -> u32 {
        self.residue_class
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// `c·(x-1)·x`, evaluated in rationals and asserted integral before use
    /// ((x-1)·x is even, so the halves in the coefficients always clear).
    pub fn eval(&self, x: u64) -> BigInt {
        let product = (BigInt::from(x) - 1) * BigInt::from(x);
        let value = &self.coefficient * BigRational::from(product);
        assert!(
            value.is_integer(),
            "tail value {value} is not integral at x={x}"
        );
        value.to_integer()
    }
}

/// Outcome of one conjecture cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "MATCH"),
            Verdict::Mismatch => write!(f, "MISMATCH"),
        }
    }
}

/// Both sides of the mod-3 form at one `(x, n)`, with the residual that the
/// tail polynomial is supposed to absorb.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureCellResult {
    pub x: u64,
    pub n: u32,
    pub m: u32,
    /// `x^n` by direct exponentiation.
    pub lhs: BigInt,
    /// The full right-hand side including the tail.
    pub rhs: BigInt,
    /// `lhs` minus the right-hand side without its tail.
    pub residual: BigInt,
    /// The tail value `q(x)`; the conjecture says `residual == tail_value`.
    pub tail_value: BigInt,
    pub verdict: Verdict,
}

/// Evaluates the mod-3 right-hand side with the table backend.
pub fn eval_mod3_rhs(x: u64, n: u32) -> ConjectureCellResult {
    eval_mod3_rhs_with(x, n, Backend::Table)
}

/// Evaluates the mod-3 right-hand side at `(x, n)` with the chosen backend.
/// `x = 1` and `x = 2` exercise the empty triple sums.
pub fn eval_mod3_rhs_with(x: u64, n: u32, backend: Backend) -> ConjectureCellResult {
    let report = decompose_mod3_with(x, n, backend);
    cell_from_decomposition(&report)
}

fn cell_from_decomposition(report: &DecompositionReport) -> ConjectureCellResult {
    let x = u64::try_from(&report.base).expect("mod3 base is positive");
    let n = report.exponent;
    let lhs = pow_int(&report.base, n);
    let tail_value = tail_poly(n).eval(x);
    let rhs = report.total.clone();
    let residual = &lhs - (&rhs - &tail_value);
    let verdict = if residual == tail_value {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    ConjectureCellResult {
        x,
        n,
        m: term_count(n),
        lhs,
        rhs,
        residual,
        tail_value,
        verdict,
    }
}

/// Term-level mod-3 decomposition: the leading `x`, one term per `s` with
/// its coefficient and the combined pair of triple-sum blocks (bounds `x-1`
/// and `x-2`, the second signed by `(-1)^{s+1}`), and the tail when the tail
/// polynomial is not identically zero.
pub fn decompose_mod3(x: u64, n: u32) -> DecompositionReport {
    decompose_mod3_with(x, n, Backend::Table)
}

pub fn decompose_mod3_with(x: u64, n: u32, backend: Backend) -> DecompositionReport {
    assert!(x >= 1 && n >= 1, "requires x >= 1 and n >= 1");
    let mut terms = vec![Term {
        label: "x".to_string(),
        value: BigInt::from(x),
        detail: None,
    }];
    let first_bound = x - 1;
    let second_bound = x.saturating_sub(2);
    for s in 1..=term_count(n) {
        let e = n - 3 * s;
        // 3·n!/((3s)!(n-3s)!) divides exactly; exact_div enforces it.
        let coefficient = exact_div(
            &(BigInt::from(3u32) * factorial(n)),
            &(factorial(3 * s) * factorial(e)),
        );
        let (first, second) = match backend {
            Backend::Table => {
                let table = build_table(e, first_bound);
                (
                    table.triple(first_bound).clone(),
                    table.triple(second_bound).clone(),
                )
            }
            Backend::Naive => (triple_sum(e, first_bound), triple_sum(e, second_bound)),
        };
        // (-1)^{s+1} is constant over the second block, so it acts as a sign
        // on the whole block.
        let blocks = if s % 2 == 1 {
            &first + &second
        } else {
            &first - &second
        };
        let value = &coefficient * &blocks;
        terms.push(Term {
            label: format!("s={s}"),
            value,
            detail: Some(TermDetail {
                coefficient,
                inner_sum: blocks,
                inner_exponent: e,
            }),
        });
    }
    let tail = tail_poly(n);
    if !tail.is_zero() {
        terms.push(Term {
            label: "tail".to_string(),
            value: tail.eval(x),
            detail: None,
        });
    }
    DecompositionReport::from_terms(Identity::Mod3, BigInt::from(x), n, terms)
}

/// Match/mismatch counts for a grid run. Field names are part of the JSON
/// schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub total: u64,
    #[serde(rename = "match")]
    pub matches: u64,
    pub mismatch: u64,
}

/// Every cell of an inclusive `(x, n)` grid, ordered by `(n, x)`, with the
/// mismatching cells repeated in `counterexamples`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub x_range: IntRange,
    pub n_range: IntRange,
    pub backend: Backend,
    pub cells: Vec<ConjectureCellResult>,
    pub counterexamples: Vec<ConjectureCellResult>,
    pub summary: GridSummary,
}

/// Evaluates every `(x, n)` cell. A mismatch never aborts the run; it is
/// recorded and the sweep continues, so the report is always complete.
pub fn run_grid(x_range: IntRange, n_range: IntRange, backend: Backend) -> GridReport {
    let mut cells = Vec::with_capacity((x_range.len() * n_range.len()) as usize);
    for n in n_range.iter() {
        let n = u32::try_from(n).expect("exponent fits u32");
        for x in x_range.iter() {
            cells.push(eval_mod3_rhs_with(x, n, backend));
        }
    }
    let counterexamples: Vec<ConjectureCellResult> = cells
        .iter()
        .filter(|c| c.verdict == Verdict::Mismatch)
        .cloned()
        .collect();
    let summary = GridSummary {
        total: cells.len() as u64,
        matches: (cells.len() - counterexamples.len()) as u64,
        mismatch: counterexamples.len() as u64,
    };
    GridReport {
        x_range,
        n_range,
        backend,
        cells,
        counterexamples,
        summary,
    }
}

/// One grid cell on the wire: coordinates as numbers, values as decimal
/// strings. Field names and order are part of the JSON/CSV schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub x: u64,
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub tail: String,
    pub verdict: Verdict,
}

impl ConjectureCellResult {
    pub fn record(&self) -> CellRecord {
        CellRecord {
            x: self.x,
            n: self.n,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            residual: self.residual.to_string(),
            tail: self.tail_value.to_string(),
            verdict: self.verdict,
        }
    }
}

/// Serializable form of a [`GridReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReportDoc {
    pub x_range: IntRange,
    pub n_range: IntRange,
    pub backend: Backend,
    pub cells: Vec<CellRecord>,
    pub counterexamples: Vec<CellRecord>,
    pub summary: GridSummary,
}

impl GridReport {
    pub fn doc(&self) -> GridReportDoc {
        GridReportDoc {
            x_range: self.x_range,
            n_range: self.n_range,
            backend: self.backend,
            cells: self.cells.iter().map(|c| c.record()).collect(),
            counterexamples: self.counterexamples.iter().map(|c| c.record()).collect(),
            summary: self.summary,
        }
    }
}

impl GridReportDoc {
    /// Pretty JSON with a trailing newline; parsing and re-serializing is
    /// byte-identical.
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("grid report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Header plus one row per cell, LF line endings.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("x,n,lhs,rhs,residual,tail,verdict\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                c.x, c.n, c.lhs, c.rhs, c.residual, c.tail, c.verdict
            ));
        }
        out
    }
}
