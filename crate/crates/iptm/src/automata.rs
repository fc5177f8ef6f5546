//! Deterministic finite automata with output over a digit alphabet.
//!
//! A [`Dfao`] evaluates a sequence term from the canonical base-k digit
//! string of the index (no leading zeros; the empty string for 0). The
//! reading order is part of the automaton value: the fixture transcribed
//! from the inverse-PTM diagram consumes digits least-significant first,
//! which is validated against the sequence generators by the test suite
//! rather than assumed.

use std::collections::HashMap;
use std::fmt;

use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadingOrder {
    LeastSignificantFirst,
    MostSignificantFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomataError {
    /// Equivalence comparison between automata over different bases.
    BaseMismatch { left: u32, right: u32 },
    /// Kernel closure exceeded the configured class ceiling; the sequence
    /// is likely not automatic at this base (heuristic verdict).
    KernelCeilingExceeded { ceiling: usize },
}

impl fmt::Display for AutomataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomataError::BaseMismatch { left, right } => {
                write!(f, "digit base mismatch: {left} vs {right}")
            }
            AutomataError::KernelCeilingExceeded { ceiling } => write!(
                f,
                "kernel closure exceeded {ceiling} classes; sequence is likely not automatic at this base"
            ),
        }
    }
}

impl std::error::Error for AutomataError {}

/// Deterministic finite automaton with output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    initial: usize,
    /// `transitions[state][digit]`
    transitions: Vec<Vec<usize>>,
    outputs: Vec<u64>,
    reading_order: ReadingOrder,
}

impl Dfao {
    pub fn new(
        base: u32,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<u64>,
        reading_order: ReadingOrder,
    ) -> Self {
        assert!(base >= 2);
        let states = transitions.len();
        assert!(states > 0 && initial < states && outputs.len() == states);
        for row in &transitions {
            assert_eq!(row.len(), base as usize, "transition table must be total");
            assert!(row.iter().all(|&t| t < states));
        }
        Self {
            base,
            initial,
            transitions,
            outputs,
            reading_order,
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial_output(&self) -> u64 {
        self.outputs[self.initial]
    }

    pub fn reading_order(&self) -> ReadingOrder {
        self.reading_order
    }

    /// Canonical digits of `n`, least significant first, empty for 0.
    fn digits(&self, mut n: u128) -> Vec<usize> {
        let mut ds = Vec::new();
        while n > 0 {
            ds.push((n % self.base as u128) as usize);
            n /= self.base as u128;
        }
        ds
    }

    /// Output after consuming the canonical digit string of `n` in the
    /// declared reading order.
    pub fn eval(&self, n: u64) -> u64 {
        self.eval_wide(n as u128)
    }

    pub fn eval_wide(&self, n: u128) -> u64 {
        let digits = self.digits(n);
        let mut state = self.initial;
        match self.reading_order {
            ReadingOrder::LeastSignificantFirst => {
                for &d in &digits {
                    state = self.transitions[state][d];
                }
            }
            ReadingOrder::MostSignificantFirst => {
                for &d in digits.iter().rev() {
                    state = self.transitions[state][d];
                }
            }
        }
        self.outputs[state]
    }

    /// Same automaton with the opposite reading order; used by the
    /// order-validation tests.
    pub fn with_reading_order(&self, order: ReadingOrder) -> Self {
        let mut d = self.clone();
        d.reading_order = order;
        d
    }

    /// Directed-graph description: one node per state labelled
    /// `q<i>/<output>`, the initial state marked by an arrow from a point
    /// node, edge labels listing digits. Deterministic ordering, so the
    /// text is stable across runs.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("digraph dfao {\n");
        s.push_str("  rankdir=LR;\n");
        s.push_str("  __start [shape=point];\n");
        for (i, out) in self.outputs.iter().enumerate() {
            s.push_str(&format!("  q{i} [label=\"q{i}/{out}\"];\n"));
        }
        s.push_str(&format!("  __start -> q{};\n", self.initial));
        for (i, row) in self.transitions.iter().enumerate() {
            // group digits by target, keeping first-digit order
            let mut targets: Vec<(usize, Vec<usize>)> = Vec::new();
            for (d, &t) in row.iter().enumerate() {
                match targets.iter_mut().find(|(tt, _)| *tt == t) {
                    Some((_, ds)) => ds.push(d),
                    None => targets.push((t, vec![d])),
                }
            }
            for (t, ds) in targets {
                let label: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                s.push_str(&format!("  q{i} -> q{t} [label=\"{}\"];\n", label.join(",")));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The five-state base-4 automaton for the inverse-PTM coefficient
/// sequence, digits consumed least-significant first (the order the
/// validation suite confirms against the generators).
pub fn figure1_dfao() -> Dfao {
    Dfao::new(
        4,
        0,
        vec![
            //        digit: 0  1  2  3
            /* q0 */ vec![3, 2, 2, 1],
            /* q1 */ vec![4, 2, 4, 1],
            /* q2 */ vec![2, 4, 2, 4],
            /* q3 */ vec![3, 4, 2, 4],
            /* q4 */ vec![4, 4, 4, 4],
        ],
        vec![0, 0, 1, 0, 0],
        ReadingOrder::LeastSignificantFirst,
    )
}

/// Defaults for [`kernel_dfao`]: class-count ceiling and prefix length
/// used for class identification.
pub const KERNEL_DEFAULT_CEILING: usize = 64;
pub const KERNEL_DEFAULT_PROBE: usize = 1 << 14;

/// Builds a DFAO from a sequence oracle by closing its k-kernel, the
/// family of subsequences n -> s(k^a n + b). Two kernel elements are
/// identified when they agree on their first `probe_limit` terms — a
/// heuristic; downstream users re-verify the automaton against the
/// generators. States are kernel classes, digit d maps class (a, b) to
/// (a+1, d k^a + b), outputs are the terms at n = 0.
pub fn kernel_dfao(
    seq: &dyn Fn(u128) -> u64,
    base: u32,
    probe_limit: usize,
    ceiling: usize,
) -> Result<Dfao, AutomataError> {
    assert!(base >= 2 && probe_limit >= 1 && ceiling >= 1);
    let signature = |stride: u128, offset: u128| -> Vec<u64> {
        (0..probe_limit as u128).map(|i| seq(stride * i + offset)).collect()
    };
    let mut class_of: HashMap<Vec<u64>, usize> = HashMap::new();
    // (stride, offset) representative per class, in discovery order
    let mut reps: Vec<(u128, u128)> = Vec::new();
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut outputs: Vec<u64> = Vec::new();

    let root_sig = signature(1, 0);
    class_of.insert(root_sig, 0);
    reps.push((1, 0));
    outputs.push(seq(0));
    transitions.push(Vec::new());

    let mut next = 0usize;
    while next < reps.len() {
        let (stride, offset) = reps[next];
        let mut row = Vec::with_capacity(base as usize);
        for d in 0..base as u128 {
            let child_stride = stride.checked_mul(base as u128);
            let child_offset = child_stride.and_then(|_| d.checked_mul(stride)).and_then(|x| x.checked_add(offset));
            let (cs, co) = match (child_stride, child_offset) {
                (Some(cs), Some(co)) => (cs, co),
                _ => return Err(AutomataError::KernelCeilingExceeded { ceiling }),
            };
            let sig = signature(cs, co);
            let id = match class_of.get(&sig) {
                Some(&id) => id,
                None => {
                    let id = reps.len();
                    if id >= ceiling {
                        return Err(AutomataError::KernelCeilingExceeded { ceiling });
                    }
                    class_of.insert(sig, id);
                    reps.push((cs, co));
                    outputs.push(seq(co));
                    transitions.push(Vec::new());
                    id
                }
            };
            row.push(id);
        }
        transitions[next] = row;
        next += 1;
    }
    Ok(Dfao::new(base, 0, transitions, outputs, ReadingOrder::LeastSignificantFirst))
}

/// Compares two automata on every index below `limit`; the report records
/// the first disagreements.
pub fn dfao_equiv(left: &Dfao, right: &Dfao, limit: u64) -> Result<CheckReport, AutomataError> {
    if left.base != right.base {
        return Err(AutomataError::BaseMismatch {
            left: left.base,
            right: right.base,
        });
    }
    let mut report = CheckReport::new("dfao-equivalence", limit);
    for n in 0..limit {
        if !report.expect_eq(n, left.eval(n), right.eval(n)) && report.failures.len() >= CheckReport::MAX_FAILURES {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
