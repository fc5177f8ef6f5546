//! Exact arithmetic around the compositional inverse of the
//! Prouhet-Thue-Morse power series.
//!
//! The PTM series `F(X) = sum t_n X^n` over F2 (with `t_n` the parity of the
//! binary digit sum of `n`) has a compositional inverse `G` with
//! `F(G(X)) = G(F(X)) = X`. The coefficient sequence `c` of `G` and the
//! integer sequences attached to it (positions of ones and zeros, gap
//! structure, parity witnesses) are what this crate computes and verifies,
//! everywhere with exact arithmetic: bit-packed F2 series, residues mod a
//! prime, arbitrary-precision rationals and integers.
//!
//! Modules:
//! - [`fps`] — truncated formal power series: arithmetic, composition,
//!   reversion, rational-function expansion, polynomial-equation residuals.
//! - [`seqgen`] — the integer sequences themselves, each with independent
//!   computation paths for cross-validation.
//! - [`automata`] — finite automata with output over a digit alphabet,
//!   kernel-based construction from a sequence oracle, DOT export.
//! - [`hankel`] — exact Hankel determinants of `c` and classification
//!   against the conjectured value sets.
//! - [`analysis`] — theorem-level verification procedures producing
//!   machine-readable pass/fail reports.
//! - [`report`] — the shared [`report::CheckReport`] record.

pub mod analysis;
pub mod automata;
mod bits;
pub mod fps;
pub mod hankel;
pub mod report;
pub mod seqgen;
