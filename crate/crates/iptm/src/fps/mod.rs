//! Truncated formal power series over a prime field or over exact
//! rationals.
//!
//! A [`TruncatedSeries`] is known modulo `X^(N+1)` for an explicit
//! truncation order `N` and carries exactly `N + 1` coefficients. All
//! operations state the order of their result: binary operations truncate
//! to the smaller operand order, composition and reversion preserve it.
//! Coefficients over F2 are stored bit-packed; the scalar domain
//! abstraction hides the representation.

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

mod f2;
mod field;
mod poly;

pub use poly::{
    inverse_equation_cubic, inverse_equation_quartic, ptm_equation, rational_expand,
    rational_expand_int, SeriesPolynomial,
};

use crate::bits;
use field::{FieldCtx, ModCtx, RatCtx};

/// Coefficient domain of a series: residues modulo a prime, or exact
/// rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarDomain {
    Prime(u64),
    Rational,
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Prime(p) => write!(f, "F_{p}"),
            ScalarDomain::Rational => write!(f, "Q"),
        }
    }
}

/// A single coefficient value.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Residue(u64),
    Rational(BigRational),
}

impl Scalar {
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(r) => Some(*r),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(r) => write!(f, "{r}"),
            Scalar::Rational(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpsError {
    /// Binary operation on series over different scalar domains.
    DomainMismatch(ScalarDomain, ScalarDomain),
    /// Inner series of a composition has a nonzero constant term.
    CompositionUndefined,
    /// Series is not compositionally invertible (needs u_0 = 0 and u_1
    /// invertible, which in particular needs order >= 1).
    NotInvertible,
    /// Requested prime modulus is not a prime >= 2.
    InvalidPrime(u64),
    /// Denominator vanishes at 0 even after cancelling common X - 1
    /// factors.
    PoleAtZero,
}

impl fmt::Display for FpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpsError::DomainMismatch(a, b) => write!(f, "scalar domain mismatch: {a} vs {b}"),
            FpsError::CompositionUndefined => {
                write!(f, "composition undefined: inner series has nonzero constant term")
            }
            FpsError::NotInvertible => write!(
                f,
                "series has no compositional inverse: need zero constant term and invertible linear term"
            ),
            FpsError::InvalidPrime(p) => write!(f, "{p} is not a prime modulus"),
            FpsError::PoleAtZero => write!(f, "rational function has a pole at X = 0"),
        }
    }
}

impl std::error::Error for FpsError {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    F2 { words: Vec<u64>, order: usize },
    Mod { p: u64, coeffs: Vec<u64> },
    Rat { coeffs: Vec<BigRational> },
}

/// A formal power series known modulo `X^(order+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    repr: Repr,
}

impl TruncatedSeries {
    fn check_domain(domain: ScalarDomain) -> Result<(), FpsError> {
        if let ScalarDomain::Prime(p) = domain {
            if !is_prime(p) {
                return Err(FpsError::InvalidPrime(p));
            }
        }
        Ok(())
    }

    /// The zero series at the given truncation order.
    pub fn zero(domain: ScalarDomain, order: usize) -> Result<Self, FpsError> {
        Self::check_domain(domain)?;
        Ok(Self {
            repr: match domain {
                ScalarDomain::Prime(2) => Repr::F2 {
                    words: vec![0; bits::words_for(order + 1)],
                    order,
                },
                ScalarDomain::Prime(p) => Repr::Mod {
                    p,
                    coeffs: vec![0; order + 1],
                },
                ScalarDomain::Rational => Repr::Rat {
                    coeffs: vec![BigRational::zero(); order + 1],
                },
            },
        })
    }

    /// The identity series X (truncated; equal to zero at order 0).
    pub fn identity(domain: ScalarDomain, order: usize) -> Result<Self, FpsError> {
        let mut coeffs = vec![0i64; order + 1];
        if order >= 1 {
            coeffs[1] = 1;
        }
        Self::from_int_coeffs(domain, &coeffs)
    }

    /// Builds a series from integer coefficients; the truncation order is
    /// `coeffs.len() - 1`. Integers are reduced into the domain.
    pub fn from_int_coeffs(domain: ScalarDomain, coeffs: &[i64]) -> Result<Self, FpsError> {
        Self::check_domain(domain)?;
        assert!(!coeffs.is_empty(), "a series carries at least the constant coefficient");
        let order = coeffs.len() - 1;
        Ok(Self {
            repr: match domain {
                ScalarDomain::Prime(2) => {
                    let mut words = vec![0u64; bits::words_for(order + 1)];
                    for (i, &c) in coeffs.iter().enumerate() {
                        if c.rem_euclid(2) == 1 {
                            bits::set_bit(&mut words, i);
                        }
                    }
                    Repr::F2 { words, order }
                }
                ScalarDomain::Prime(p) => Repr::Mod {
                    p,
                    coeffs: coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(),
                },
                ScalarDomain::Rational => Repr::Rat {
                    coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
                },
            },
        })
    }

    /// Builds an exact-rational series from its coefficient vector.
    pub fn from_rational_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self {
            repr: Repr::Rat { coeffs },
        }
    }

    pub fn order(&self) -> usize {
        match &self.repr {
            Repr::F2 { order, .. } => *order,
            Repr::Mod { coeffs, .. } => coeffs.len() - 1,
            Repr::Rat { coeffs } => coeffs.len() - 1,
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        match &self.repr {
            Repr::F2 { .. } => ScalarDomain::Prime(2),
            Repr::Mod { p, .. } => ScalarDomain::Prime(*p),
            Repr::Rat { .. } => ScalarDomain::Rational,
        }
    }

    /// Coefficient of `X^n`. Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> Scalar {
        assert!(n <= self.order(), "coefficient {n} beyond truncation order {}", self.order());
        match &self.repr {
            Repr::F2 { words, .. } => Scalar::Residue(bits::get_bit(words, n) as u64),
            Repr::Mod { coeffs, .. } => Scalar::Residue(coeffs[n]),
            Repr::Rat { coeffs } => Scalar::Rational(coeffs[n].clone()),
        }
    }

    /// Coefficient as a residue; panics on rational-domain series.
    pub fn coeff_residue(&self, n: usize) -> u64 {
        self.coeff(n).as_residue().expect("residue coefficient of a rational series")
    }

    /// Index of the first nonzero coefficient; `None` for the zero series
    /// (infinite valuation).
    pub fn valuation(&self) -> Option<usize> {
        match &self.repr {
            Repr::F2 { words, .. } => f2::lowest_bit(words),
            Repr::Mod { coeffs, .. } => coeffs.iter().position(|&c| c != 0),
            Repr::Rat { coeffs } => coeffs.iter().position(|c| !c.is_zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Copy truncated to a smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        match &self.repr {
            Repr::F2 { words, .. } => {
                let mut w = words[..bits::words_for(order + 1)].to_vec();
                bits::mask_top(&mut w, order + 1);
                Self {
                    repr: Repr::F2 { words: w, order },
                }
            }
            Repr::Mod { p, coeffs } => Self {
                repr: Repr::Mod {
                    p: *p,
                    coeffs: coeffs[..=order].to_vec(),
                },
            },
            Repr::Rat { coeffs } => Self {
                repr: Repr::Rat {
                    coeffs: coeffs[..=order].to_vec(),
                },
            },
        }
    }

    fn common_order(&self, other: &Self) -> Result<usize, FpsError> {
        match (&self.repr, &other.repr) {
            (Repr::F2 { .. }, Repr::F2 { .. }) | (Repr::Rat { .. }, Repr::Rat { .. }) => {}
            (Repr::Mod { p: a, .. }, Repr::Mod { p: b, .. }) if a == b => {}
            _ => return Err(FpsError::DomainMismatch(self.domain(), other.domain())),
        }
        Ok(self.order().min(other.order()))
    }

    /// Sum, truncated to the smaller operand order.
    pub fn add(&self, other: &Self) -> Result<Self, FpsError> {
        let order = self.common_order(other)?;
        let len = order + 1;
        Ok(match (&self.repr, &other.repr) {
            (Repr::F2 { words: a, .. }, Repr::F2 { words: b, .. }) => Self {
                repr: Repr::F2 {
                    words: f2::add(a, b, len),
                    order,
                },
            },
            (Repr::Mod { p, coeffs: a }, Repr::Mod { coeffs: b, .. }) => {
                let ctx = ModCtx { p: *p };
                Self {
                    repr: Repr::Mod {
                        p: *p,
                        coeffs: field::add(&ctx, a, b, len),
                    },
                }
            }
            (Repr::Rat { coeffs: a }, Repr::Rat { coeffs: b }) => Self {
                repr: Repr::Rat {
                    coeffs: field::add(&RatCtx, a, b, len),
                },
            },
            _ => unreachable!(),
        })
    }

    /// Difference, truncated to the smaller operand order.
    pub fn sub(&self, other: &Self) -> Result<Self, FpsError> {
        let order = self.common_order(other)?;
        let len = order + 1;
        Ok(match (&self.repr, &other.repr) {
            (Repr::F2 { words: a, .. }, Repr::F2 { words: b, .. }) => Self {
                repr: Repr::F2 {
                    words: f2::add(a, b, len),
                    order,
                },
            },
            (Repr::Mod { p, coeffs: a }, Repr::Mod { coeffs: b, .. }) => {
                let ctx = ModCtx { p: *p };
                Self {
                    repr: Repr::Mod {
                        p: *p,
                        coeffs: field::sub(&ctx, a, b, len),
                    },
                }
            }
            (Repr::Rat { coeffs: a }, Repr::Rat { coeffs: b }) => Self {
                repr: Repr::Rat {
                    coeffs: field::sub(&RatCtx, a, b, len),
                },
            },
            _ => unreachable!(),
        })
    }

    /// Product, truncated to the smaller operand order.
    pub fn mul(&self, other: &Self) -> Result<Self, FpsError> {
        let order = self.common_order(other)?;
        let len = order + 1;
        Ok(match (&self.repr, &other.repr) {
            (Repr::F2 { words: a, .. }, Repr::F2 { words: b, .. }) => Self {
                repr: Repr::F2 {
                    words: f2::mul(a, b, len),
                    order,
                },
            },
            (Repr::Mod { p, coeffs: a }, Repr::Mod { coeffs: b, .. }) => {
                let ctx = ModCtx { p: *p };
                Self {
                    repr: Repr::Mod {
                        p: *p,
                        coeffs: field::mul(&ctx, a, b, len),
                    },
                }
            }
            (Repr::Rat { coeffs: a }, Repr::Rat { coeffs: b }) => Self {
                repr: Repr::Rat {
                    coeffs: field::mul(&RatCtx, a, b, len),
                },
            },
            _ => unreachable!(),
        })
    }

    /// Composition `self(inner)`, truncated to the smaller operand order.
    /// The inner series must have valuation >= 1.
    pub fn compose(&self, inner: &Self) -> Result<Self, FpsError> {
        let order = self.common_order(inner)?;
        if inner.valuation() == Some(0) {
            return Err(FpsError::CompositionUndefined);
        }
        let len = order + 1;
        Ok(match (&self.repr, &inner.repr) {
            (Repr::F2 { words: a, .. }, Repr::F2 { words: b, .. }) => Self {
                repr: Repr::F2 {
                    words: f2::compose(a, b, len),
                    order,
                },
            },
            (Repr::Mod { p, coeffs: a }, Repr::Mod { coeffs: b, .. }) => {
                let ctx = ModCtx { p: *p };
                Self {
                    repr: Repr::Mod {
                        p: *p,
                        coeffs: field::compose(&ctx, a, b, len),
                    },
                }
            }
            (Repr::Rat { coeffs: a }, Repr::Rat { coeffs: b }) => Self {
                repr: Repr::Rat {
                    coeffs: field::compose(&RatCtx, a, b, len),
                },
            },
            _ => unreachable!(),
        })
    }

    /// Compositional inverse: the series V with `self(V) = V(self) = X`
    /// modulo `X^(order+1)`. Requires a zero constant term and an
    /// invertible linear term.
    pub fn reverse(&self) -> Result<Self, FpsError> {
        let order = self.order();
        if order < 1 || self.valuation() != Some(1) {
            return Err(FpsError::NotInvertible);
        }
        let len = order + 1;
        Ok(match &self.repr {
            Repr::F2 { words, .. } => Self {
                repr: Repr::F2 {
                    words: f2::reverse(words, len),
                    order,
                },
            },
            Repr::Mod { p, coeffs } => {
                let ctx = ModCtx { p: *p };
                Self {
                    repr: Repr::Mod {
                        p: *p,
                        coeffs: field::reverse(&ctx, coeffs, len),
                    },
                }
            }
            Repr::Rat { coeffs } => Self {
                repr: Repr::Rat {
                    coeffs: field::reverse(&RatCtx, coeffs, len),
                },
            },
        })
    }
}

/// The Prouhet-Thue-Morse generating series `sum t_n X^n` over F2,
/// truncated at the given order. `t_n` is the parity of the binary digit
/// sum of `n` (so the coefficient of X^6 is 0).
pub fn ptm_series(order: usize) -> TruncatedSeries {
    let mut words = vec![0u64; bits::words_for(order + 1)];
    for n in 0..=order {
        if (n as u64).count_ones() & 1 == 1 {
            bits::set_bit(&mut words, n);
        }
    }
    TruncatedSeries {
        repr: Repr::F2 { words, order },
    }
}

/// The base-p digit-sum series `sum (s_p(n) mod p) X^n` over F_p. For
/// p = 2 this is exactly [`ptm_series`].
pub fn sp_series(p: u64, order: usize) -> Result<TruncatedSeries, FpsError> {
    if !is_prime(p) {
        return Err(FpsError::InvalidPrime(p));
    }
    if p == 2 {
        return Ok(ptm_series(order));
    }
    let coeffs = (0..=order as u64)
        .map(|n| {
            let mut m = n;
            let mut s = 0u64;
            while m > 0 {
                s += m % p;
                m /= p;
            }
            s % p
        })
        .collect();
    Ok(TruncatedSeries {
        repr: Repr::Mod { p, coeffs },
    })
}

/// m-fold self-composition of `base` (m >= 1), truncated at the order of
/// `base`. Callers exploring the inverse direction pass `base.reverse()`.
pub fn iterate_compose(base: &TruncatedSeries, m: u64) -> Result<TruncatedSeries, FpsError> {
    assert!(m >= 1, "iteration count must be positive");
    if base.valuation() == Some(0) {
        return Err(FpsError::CompositionUndefined);
    }
    let mut acc = base.clone();
    for _ in 1..m {
        acc = base.compose(&acc)?;
    }
    Ok(acc)
}

/// Expansion of the rational prefactor in the functional equation of the
/// complex-coefficient series C(X): `X^3 (X^4 - 1) / ((X - 1)(X^4 + 1))`.
pub fn functional_kernel(order: usize) -> TruncatedSeries {
    rational_expand_int(&[0, 0, 0, -1, 0, 0, 0, 1], &[-1, 1, 0, 0, -1, 1], order)
        .expect("kernel denominator is invertible after cancelling X - 1")
}

/// Residual of the functional equation for `C(X) = sum c_n X^n` over exact
/// rationals: `C(X) - X(X+1) - K(X) C(X^4)` with K from
/// [`functional_kernel`]. The zero series certifies the identity up to the
/// truncation order.
pub fn functional_residual(order: usize) -> TruncatedSeries {
    let c = crate::seqgen::iptm_prefix(order + 1);
    let rat = |b: u8| BigRational::from_integer((b as i64).into());
    let c_series = TruncatedSeries::from_rational_coeffs(c.iter().map(|&b| rat(b)).collect());
    let mut spread = vec![BigRational::zero(); order + 1];
    for (n, &b) in c.iter().enumerate() {
        if 4 * n <= order {
            spread[4 * n] = rat(b);
        } else {
            break;
        }
    }
    let c4 = TruncatedSeries::from_rational_coeffs(spread);
    let kernel = functional_kernel(order);
    let low = TruncatedSeries::from_int_coeffs(
        ScalarDomain::Rational,
        &{
            let mut v = vec![0i64; order + 1];
            if order >= 1 {
                v[1] = 1;
            }
            if order >= 2 {
                v[2] = 1;
            }
            v
        },
    )
    .expect("rational domain");
    let product = kernel.mul(&c4).expect("same domain");
    c_series
        .sub(&low)
        .and_then(|s| s.sub(&product))
        .expect("same domain")
}

/// Residual of a polynomial equation `sum_j P_j(X) S^j` evaluated at the
/// series `S`, truncated at the order of `S`. The zero series certifies
/// that `S` satisfies the equation up to that order.
pub fn equation_residual(p: &SeriesPolynomial, s: &TruncatedSeries) -> TruncatedSeries {
    p.residual(s)
}

// Test-support constructors used by sibling modules' tests.
#[cfg(test)]
pub(crate) fn from_bit_slice(bits_in: &[u8]) -> TruncatedSeries {
    let coeffs: Vec<i64> = bits_in.iter().map(|&b| b as i64).collect();
    TruncatedSeries::from_int_coeffs(ScalarDomain::Prime(2), &coeffs).unwrap()
}

#[cfg(test)]
mod tests;
