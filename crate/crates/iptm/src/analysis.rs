//! Theorem-level verification procedures.
//!
//! Each procedure replays one exact combinatorial statement about the
//! inverse-PTM sequence at a caller-chosen limit and reports pass/fail
//! with the disagreeing indices. Everything is deterministic for fixed
//! limits and computed with exact arithmetic (machine integers where they
//! provably fit, rationals and big integers elsewhere).

use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::rational::{BigRational, Ratio};
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::automata::{self, dfao_equiv, figure1_dfao, kernel_dfao};
use crate::fps;
use crate::report::CheckReport;
use crate::seqgen::{
    self, a_seq, b_seq, b_seq_big, evil, iptm_digits4, iptm_digits4_wide, odious, thue_morse,
    u_seq, z_char_pred, z_char_pred_u64, z_seq,
};

type Rational64 = Ratio<i64>;

#[derive(Clone, Debug, PartialEq)]
pub enum AnalysisError {
    /// Zero-window lemma needs 2 <= m_lo <= m_hi.
    InvalidWindow { m_lo: u32, m_hi: u32 },
    /// Density target must lie strictly inside (1/6, 1/2).
    TargetOutOfRange(String),
    /// Tolerance must be positive.
    ToleranceNotPositive,
    /// Greedy search exhausted its iteration budget; carries the best
    /// ratio found.
    NoConvergence {
        iterations: usize,
        best_n: BigUint,
        best_ratio: BigRational,
    },
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::InvalidWindow { m_lo, m_hi } => {
                write!(f, "zero-window check needs 2 <= m_lo <= m_hi, got {m_lo}..={m_hi}")
            }
            AnalysisError::TargetOutOfRange(q) => {
                write!(f, "target ratio {q} outside the open interval (1/6, 1/2)")
            }
            AnalysisError::ToleranceNotPositive => write!(f, "tolerance must be positive"),
            AnalysisError::NoConvergence {
                iterations,
                best_n,
                best_ratio,
            } => write!(
                f,
                "no ratio within tolerance after {iterations} iterations; best a_n/n^2 = {best_ratio} at n = {best_n}"
            ),
        }
    }
}

impl std::error::Error for AnalysisError {}

fn c_prefix(len: usize) -> Vec<u8> {
    seqgen::iptm_batch(len.max(1), seqgen::IptmMethod::Digits4)
}

// ---------------------------------------------------------------------
// recurrence suites
// ---------------------------------------------------------------------

/// Mod-4 and mod-8 recurrences of `c` for n < limit, checked against the
/// supplied term table (ground truth is the digit-test generator).
fn verify_c_recurrences_on(c: &[u8], limit: u64) -> CheckReport {
    let mut report = CheckReport::new("c-recurrences", limit);
    report.expect_eq(0, 0, c[0]);
    report.expect_eq(1, 1, c[1]);
    report.expect_eq(2, 1, c[2]);
    report.expect_eq(3, 0, c[3]);
    for n in 1..limit as usize {
        let anchor = c[4 * n - 1];
        report.expect_eq(4 * n as u64, anchor, c[4 * n]);
        report.expect_eq(4 * n as u64 + 1, anchor, c[4 * n + 1]);
        report.expect_eq(4 * n as u64 + 2, anchor, c[4 * n + 2]);
        report.expect_eq(4 * n as u64 + 3, (anchor + c[n]) % 2, c[4 * n + 3]);
        // mod-8 relations
        let odd = c[2 * n - 1];
        for (label, idx) in [(8 * n - 1, 8 * n - 1), (8 * n, 8 * n), (8 * n + 1, 8 * n + 1), (8 * n + 2, 8 * n + 2)] {
            report.expect_eq(label as u64, odd, c[idx]);
        }
    }
    for n in 0..limit as usize {
        for idx in [8 * n + 3, 8 * n + 4, 8 * n + 5, 8 * n + 6] {
            report.expect_eq(idx as u64, 0, c[idx]);
        }
    }
    report
}

/// Mod-4 and mod-8 recurrences of `c` for n < limit against the digit-test
/// generator.
pub fn verify_c_recurrences(limit: u64) -> CheckReport {
    assert!(limit >= 4);
    let c = c_prefix(8 * limit as usize + 8);
    verify_c_recurrences_on(&c, limit)
}

/// The five recurrences of `a` plus the bridge a_{4k+r} = 4 b_k + r, for
/// n < limit.
pub fn verify_a_recurrences(limit: u64) -> CheckReport {
    assert!(limit >= 2);
    let mut report = CheckReport::new("a-recurrences", limit);
    for (n, want) in [0u64, 1, 2, 7].iter().enumerate() {
        report.expect_eq(n as u64, *want, a_seq(n as u64));
    }
    for n in 1..limit {
        let anchor = a_seq(4 * n - 1);
        report.expect_eq(4 * n, anchor + 1, a_seq(4 * n));
        report.expect_eq(4 * n + 1, anchor + 2, a_seq(4 * n + 1));
        report.expect_eq(4 * n + 2, anchor + 3, a_seq(4 * n + 2));
        report.expect_eq(8 * n + 3, a_seq(8 * n) + 7, a_seq(8 * n + 3));
        report.expect_eq(8 * n + 7, 4 * a_seq(4 * n + 3) + 3, a_seq(8 * n + 7));
    }
    // bridge to b, r in {-1, 0, 1, 2} with 4k + r >= 0
    for k in 0..limit {
        for r in -1i64..=2 {
            let idx = 4 * k as i64 + r;
            if idx < 0 {
                continue;
            }
            let expected = (4 * b_seq(k)) as i64 + r;
            report.expect_eq(idx as u64, expected as u64, a_seq(idx as u64));
        }
    }
    report
}

/// The four rational-coefficient recurrences of the odious enumeration,
/// its closed form o_n = 2n - 1 - t_{n-1}, and the same recurrences for
/// the evil enumeration with its enumerated initial terms (checked from
/// n = 2 upward). Ground truth is direct enumeration of the Thue-Morse
/// sequence.
pub fn verify_o_recurrences(limit: u64) -> CheckReport {
    assert!(limit >= 1);
    let mut report = CheckReport::new("o-recurrences", limit);
    let needed = (2 * limit + 2) as usize;
    let mut o_enum: Vec<u64> = Vec::with_capacity(needed + 1);
    let mut e_enum: Vec<u64> = Vec::with_capacity(needed + 1);
    o_enum.push(0); // unused slot: sequences are 1-based
    e_enum.push(0);
    let mut m = 0u64;
    while o_enum.len() <= needed || e_enum.len() <= needed {
        if thue_morse(m) == 1 {
            o_enum.push(m);
        } else {
            e_enum.push(m);
        }
        m += 1;
    }
    let enumerated_e_initials = [0u64, 3, 5, 6, 9, 10];
    for (i, &want) in enumerated_e_initials.iter().enumerate() {
        report.expect_eq(i as u64 + 1, want, e_enum[i + 1]);
    }
    let rational_relations = |seq: &[u64], start: u64, tag: u64, report: &mut CheckReport| {
        let r = |v: u64| Rational64::from_integer(v as i64);
        let ri = |num: i64, den: i64| Rational64::new(num, den);
        for n in start..limit {
            let n = n as usize;
            let (x, x1, y, y1) = (r(seq[n]), r(seq[n + 1]), r(seq[2 * n]), r(seq[2 * n + 1]));
            let checks = [
                (4 * n, x.clone() - ri(3, 1) * x1.clone() + ri(3, 1) * y1.clone()),
                (4 * n + 1, -ri(2, 1) * x1.clone() + ri(3, 1) * y1.clone()),
                (
                    4 * n + 2,
                    -x.clone() - ri(9, 1) * x1.clone() - y.clone() + ri(8, 1) * y1.clone(),
                ),
                (
                    4 * n + 3,
                    -ri(5, 3) * x - ri(11, 1) * x1 - ri(5, 3) * y + ri(10, 1) * y1,
                ),
            ];
            for (idx, rhs) in checks {
                let lhs = r(seq[idx]);
                if lhs != rhs {
                    report.record(tag + idx as u64, lhs.to_string(), rhs.to_string());
                }
            }
        }
    };
    rational_relations(&o_enum, 1, 0, &mut report);
    // e starts at n = 2 (enumerated initial terms cover n = 1 instances)
    rational_relations(&e_enum, 2, 1 << 32, &mut report);
    for n in 1..=limit {
        report.expect_eq(n, 2 * n - 1 - thue_morse(n - 1) as u64, o_enum[n as usize]);
        report.expect_eq(n, o_enum[n as usize], odious(n));
        report.expect_eq(n, e_enum[n as usize], evil(n));
    }
    report
}

// ---------------------------------------------------------------------
// gap structure
// ---------------------------------------------------------------------

/// One consecutive-difference observation of `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub n: u64,
    pub gap: u64,
    /// The unique m with gap = (4^m - 1)/3; gap 1 is the m = 1 case.
    pub m: u32,
}

/// All gaps a_n - a_{n-1} for 1 <= n < limit, with the theorem's
/// characterization checked in both directions: every gap is of the form
/// (4^m - 1)/3, gap = 1 exactly at n = 0, 1, 2 mod 4, and the m >= 2 gaps
/// sit exactly at n = 2^{m+1} k + 2^m - 1 (equivalently m = v2(n + 1)).
pub fn gap_spectrum(limit: u64) -> (Vec<GapRecord>, CheckReport) {
    assert!(limit >= 1);
    let mut report = CheckReport::new("gap-spectrum", limit);
    let mut records = Vec::with_capacity((limit - 1) as usize);
    let mut prev = a_seq(0);
    for n in 1..limit {
        let a = a_seq(n);
        let gap = a - prev;
        prev = a;
        let triple = 3 * gap + 1;
        let m = if triple.is_power_of_two() && triple.trailing_zeros() % 2 == 0 {
            triple.trailing_zeros() / 2
        } else {
            report.record(n, "gap of the form (4^m - 1)/3", gap);
            0
        };
        let expected_m = ((n + 1).trailing_zeros()).max(1);
        let expected_gap = ((1u64 << (2 * expected_m)) - 1) / 3;
        report.expect_eq(n, expected_gap, gap);
        records.push(GapRecord { n, gap, m });
    }
    (records, report)
}

// ---------------------------------------------------------------------
// t . a identity
// ---------------------------------------------------------------------

/// t_{a_{2n}} = t_n and t_{a_{2n+1}} = t_{n+1}, plus the combined closed
/// form 2 t_{a_n} = (t_n + t_{n+1}) + (-1)^n (t_n - t_{n+1}), for
/// n < limit.
pub fn verify_t_a_identity(limit: u64) -> CheckReport {
    assert!(limit >= 1);
    let mut report = CheckReport::new("t-a-identity", limit);
    for n in 0..limit {
        let lhs = thue_morse(a_seq(n)) as i64;
        let tn = thue_morse(n) as i64;
        let tn1 = thue_morse(n + 1) as i64;
        let expected = if n % 2 == 0 { tn } else { tn1 };
        report.expect_eq(n, expected, lhs);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let closed = (tn + tn1) + sign * (tn - tn1);
        report.expect_eq(n, closed, 2 * lhs);
    }
    report
}

// ---------------------------------------------------------------------
// density
// ---------------------------------------------------------------------

fn serialize_ratio<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
}

/// Extremes of a_n / n^2 over a scan range, plus the proof's sandwich
/// bound on b.
#[derive(Clone, Debug, Serialize)]
pub struct DensityScan {
    pub limit: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub min: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub max: BigRational,
    pub argmins: Vec<u64>,
    pub argmaxes: Vec<u64>,
    pub sandwich: CheckReport,
}

/// Streams a_n / n^2 as exact rationals for 1 <= n < limit, reporting the
/// extremes and asserting 2k^2 >= b_k >= (2/3)(k^2 + 2k) for every k in
/// range.
pub fn density_scan(limit: u64) -> DensityScan {
    assert!(limit >= 16);
    let mut min: (u128, u128) = (u128::MAX, 1); // a / n^2 as (num, den)
    let mut max: (u128, u128) = (0, 1);
    let mut argmins: Vec<u64> = Vec::new();
    let mut argmaxes: Vec<u64> = Vec::new();
    let mut sandwich = CheckReport::new("density-sandwich", limit);
    for n in 1..limit {
        let a = a_seq(n) as u128;
        let den = (n as u128) * (n as u128);
        // exact comparisons by cross-multiplication
        let cmp_min = (a * min.1).cmp(&(min.0 * den));
        if cmp_min == std::cmp::Ordering::Less {
            min = (a, den);
            argmins.clear();
        }
        if cmp_min != std::cmp::Ordering::Greater && argmins.len() < 32 {
            argmins.push(n);
        }
        let cmp_max = (a * max.1).cmp(&(max.0 * den));
        if cmp_max == std::cmp::Ordering::Greater {
            max = (a, den);
            argmaxes.clear();
        }
        if cmp_max != std::cmp::Ordering::Less && argmaxes.len() < 32 {
            argmaxes.push(n);
        }
        let k = n as u128;
        let b = b_seq(n) as u128;
        if !(2 * k * k >= b) {
            sandwich.record(n, format!("b_k <= {}", 2 * k * k), b);
        }
        if !(3 * b >= 2 * k * k + 4 * k) {
            sandwich.record(n, format!("3 b_k >= {}", 2 * k * k + 4 * k), 3 * b);
        }
    }
    let to_ratio = |(num, den): (u128, u128)| {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    };
    DensityScan {
        limit,
        min: to_ratio(min),
        max: to_ratio(max),
        argmins,
        argmaxes,
        sandwich,
    }
}

/// Result of the greedy density search.
#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub n: BigUint,
    pub ratio: BigRational,
    pub iterations: usize,
    /// (w, b_w / w^2) after each greedy step; the ratio never increases.
    pub trace: Vec<(BigUint, BigRational)>,
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Runs the constructive density argument: the greedy walk w_0 = 1,
/// w_k = 2 w_{k-1} + 1 when (4 target) (2w+1)^2 <= b_{2w+1} else 2 w_{k-1},
/// drives b_w / w^2 to 4 * target, and a_{4w+r} / (4w+r)^2 follows at a
/// quarter of it. Returns the first n = 4 w_k + r within `tol` of the
/// target; exact rational comparisons throughout.
pub fn density_greedy(
    target: &BigRational,
    tol: &BigRational,
    max_iter: usize,
) -> Result<GreedyOutcome, AnalysisError> {
    let sixth = BigRational::new(BigInt::one(), BigInt::from(6));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if !(target > &sixth && target < &half) {
        return Err(AnalysisError::TargetOutOfRange(target.to_string()));
    }
    if !(tol > &BigRational::zero()) {
        return Err(AnalysisError::ToleranceNotPositive);
    }
    let b_target = BigRational::from_integer(4.into()) * target;
    let mut w = BigUint::one();
    let mut trace: Vec<(BigUint, BigRational)> = Vec::new();
    let mut best: Option<(BigUint, BigRational, BigRational)> = None;
    for iter in 0..=max_iter {
        // probe the four indices bridged to this w
        for r in [-1i64, 0, 1, 2] {
            let four_w = &w << 2usize;
            let n = if r < 0 {
                &four_w - BigUint::one()
            } else {
                &four_w + BigUint::from(r as u64)
            };
            let b = b_seq_big(&w);
            let four_b = &b << 2usize;
            let a = if r < 0 {
                &four_b - BigUint::one()
            } else {
                &four_b + BigUint::from(r as u64)
            };
            let ratio = big_ratio(a, &n * &n);
            let err = (&ratio - target).abs();
            if &err < tol {
                return Ok(GreedyOutcome {
                    n,
                    ratio,
                    iterations: iter,
                    trace,
                });
            }
            if best.as_ref().is_none_or(|(_, _, e)| err < *e) {
                best = Some((n, ratio, err));
            }
        }
        if iter == max_iter {
            break;
        }
        let x = (&w << 1usize) + BigUint::one();
        let bx = b_seq_big(&x);
        let take_odd = &b_target * big_ratio(&x * &x, BigUint::one())
            <= BigRational::from_integer(BigInt::from(bx.clone()));
        w = if take_odd { x } else { &w << 1usize };
        let bw = b_seq_big(&w);
        trace.push((w.clone(), big_ratio(bw, &w * &w)));
    }
    let (best_n, best_ratio, _) = best.expect("at least one candidate probed");
    Err(AnalysisError::NoConvergence {
        iterations: max_iter,
        best_n,
        best_ratio,
    })
}

// ---------------------------------------------------------------------
// z-suite
// ---------------------------------------------------------------------

/// Exhaustively checks z_n = 0 on the windows [2^{2m}, floor(4/3 2^{2m})]
/// for every m in the range; the statement needs m >= 2.
pub fn z_window_check(m_lo: u32, m_hi: u32) -> Result<CheckReport, AnalysisError> {
    if m_lo < 2 || m_lo > m_hi {
        return Err(AnalysisError::InvalidWindow { m_lo, m_hi });
    }
    let mut report = CheckReport::new("z-window", m_hi as u64);
    for m in m_lo..=m_hi {
        let lo = 1u64 << (2 * m);
        let hi = (lo * 4) / 3;
        for n in lo..=hi {
            report.expect_eq(n, 0, z_seq(n));
        }
    }
    Ok(report)
}

/// z_n (from the u-definition) against the sum-of-generators
/// characterization for n < limit.
pub fn verify_z_char(limit: u64) -> CheckReport {
    assert!(limit >= 1);
    let mut report = CheckReport::new("z-char", limit);
    for n in 0..limit {
        report.expect_eq(n, z_char_pred_u64(n) as u8, z_seq(n));
    }
    report
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Constructs a multiple of `m` on which z = 1: writing m = 2^u (2v + 1)
/// and q = (u+1) phi(2v+1) + 1, the sum of the generators with indices
/// i (q-1) + 1 for i = 1..=2v+1 is divisible by m and is a sum of
/// distinct generators by construction. Panics if either postcondition
/// fails.
pub fn divisor_witness(m: u64) -> BigUint {
    assert!(m >= 2);
    let u = m.trailing_zeros() as u64;
    let odd = m >> u;
    let phi = euler_phi(odd);
    let q = (u + 1) * phi + 1;
    let step = q - 1;
    let mut n = BigUint::zero();
    for i in 1..=odd {
        let e = i * step;
        // generator with index e + 1: 2^e (2^{e+1} - 1) = 2^{2e+1} - 2^e
        n += (BigUint::one() << (2 * e + 1)) - (BigUint::one() << e);
    }
    assert!((&n % m).is_zero(), "witness for {m} must be divisible by {m}");
    assert!(z_char_pred(&n), "witness for {m} must be a sum of distinct generators");
    n
}

// ---------------------------------------------------------------------
// series identities
// ---------------------------------------------------------------------

fn residual_report(name: &str, order: usize, residual: &fps::TruncatedSeries, report: &mut CheckReport) {
    let _ = order;
    if let Some(v) = residual.valuation() {
        for idx in v..=residual.order() {
            let coeff = residual.coeff(idx);
            let is_zero = match &coeff {
                fps::Scalar::Residue(r) => *r == 0,
                fps::Scalar::Rational(q) => q.is_zero(),
            };
            if !is_zero {
                report.record(idx as u64, format!("{name}: 0"), coeff);
                if report.failures.len() >= CheckReport::MAX_FAILURES {
                    break;
                }
            }
        }
    }
}

/// Residuals of the PTM equation for F and of both inverse-series
/// equations for G = reverse(F), all modulo X^(order+1) over F2.
pub fn verify_equations(order: usize) -> CheckReport {
    let mut report = CheckReport::new("equations", order as u64);
    let f = fps::ptm_series(order);
    let eq_f = fps::equation_residual(&fps::ptm_equation(), &f);
    residual_report("ptm-equation", order, &eq_f, &mut report);
    match f.reverse() {
        Ok(g) => {
            let cubic = fps::equation_residual(&fps::inverse_equation_cubic(), &g);
            residual_report("inverse-cubic", order, &cubic, &mut report);
            let quartic = fps::equation_residual(&fps::inverse_equation_quartic(), &g);
            residual_report("inverse-quartic", order, &quartic, &mut report);
        }
        Err(e) => report.record(0, "invertible PTM series", e),
    }
    report
}

/// Residual of the functional equation of C over exact rationals.
pub fn verify_functional(order: usize) -> CheckReport {
    let mut report = CheckReport::new("functional", order as u64);
    let residual = fps::functional_residual(order);
    residual_report("functional-equation", order, &residual, &mut report);
    report
}

/// The convolution form c_n = sum_{k <= n/4} p_{n-4k} c_k for
/// 3 <= n < limit, with p taken from the rational-function expansion (not
/// from any printed table).
pub fn convolution_check(limit: u64) -> CheckReport {
    assert!(limit >= 4);
    let limit_us = limit as usize;
    let mut report = CheckReport::new("convolution", limit);
    let kernel = fps::functional_kernel(limit_us);
    let p: Vec<BigRational> = (0..limit_us)
        .map(|i| kernel.coeff(i).as_rational().expect("rational kernel").clone())
        .collect();
    let c = c_prefix(limit_us);
    let ones: Vec<usize> = (0..limit_us / 4 + 1).filter(|&k| c[k] == 1).collect();
    for n in 3..limit_us {
        let mut acc = BigRational::zero();
        for &k in ones.iter().take_while(|&&k| 4 * k <= n) {
            acc += &p[n - 4 * k];
        }
        let expected = BigRational::from_integer((c[n] as i64).into());
        if acc != expected {
            report.record(n as u64, expected.to_string(), acc.to_string());
        }
    }
    report
}

// ---------------------------------------------------------------------
// automaton concordance
// ---------------------------------------------------------------------

/// The transcribed five-state automaton against the kernel-constructed
/// one and against the digit-test generator, for n < limit.
pub fn verify_automaton(limit: u64) -> CheckReport {
    let mut report = CheckReport::new("automaton", limit);
    let fig = figure1_dfao();
    for n in 0..limit {
        if !report.expect_eq(n, iptm_digits4(n) as u64, fig.eval(n)) {
            break;
        }
    }
    match kernel_dfao(
        &|i| iptm_digits4_wide(i) as u64,
        4,
        automata::KERNEL_DEFAULT_PROBE,
        automata::KERNEL_DEFAULT_CEILING,
    ) {
        Ok(kernel) => match dfao_equiv(&fig, &kernel, limit) {
            Ok(equiv) => {
                if !equiv.passed {
                    for f in equiv.failures {
                        report.record(f.n, f.expected, f.actual);
                    }
                }
            }
            Err(e) => report.record(0, "comparable automata", e),
        },
        Err(e) => report.record(0, "kernel automaton construction", e),
    }
    report
}

#[cfg(test)]
mod tests;
