//! Polynomial equations in a series unknown, and expansion of rational
//! functions into truncated series.

use num::rational::BigRational;
use num::traits::Zero;

use super::{FpsError, ScalarDomain, TruncatedSeries};

/// A polynomial `sum_j P_j(X) Y^j` with integer polynomial coefficients,
/// evaluated at a series `Y = S(X)` to produce a residual. Integer
/// coefficients are reduced into the domain of `S`, so one fixture serves
/// every scalar domain.
#[derive(Clone, Debug)]
pub struct SeriesPolynomial {
    /// Position `j` holds the coefficient polynomial of `Y^j` as integer
    /// coefficients in `X`; an empty vector is the zero polynomial.
    y_coeffs: Vec<Vec<i64>>,
}

impl SeriesPolynomial {
    pub fn new(y_coeffs: Vec<Vec<i64>>) -> Self {
        assert!(
            y_coeffs.last().is_some_and(|p| p.iter().any(|&c| c != 0)),
            "leading coefficient polynomial must be nonzero"
        );
        Self { y_coeffs }
    }

    pub fn degree(&self) -> usize {
        self.y_coeffs.len() - 1
    }

    fn coeff_series(&self, j: usize, domain: ScalarDomain, order: usize) -> TruncatedSeries {
        let mut ints = vec![0i64; order + 1];
        for (i, &c) in self.y_coeffs[j].iter().enumerate().take(order + 1) {
            ints[i] = c;
        }
        TruncatedSeries::from_int_coeffs(domain, &ints).expect("domain validated by the series")
    }

    /// Horner evaluation of `sum_j P_j(X) S^j` truncated at the order of
    /// `S`.
    pub fn residual(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let domain = s.domain();
        let order = s.order();
        let mut acc = self.coeff_series(self.degree(), domain, order);
        for j in (0..self.degree()).rev() {
            acc = acc.mul(s).expect("same domain by construction");
            acc = acc.add(&self.coeff_series(j, domain, order)).expect("same domain");
        }
        acc
    }
}

/// The algebraic equation satisfied by the Prouhet-Thue-Morse series F:
/// `(1+X)^3 F^2 + (1+X^2) F + X = 0`.
pub fn ptm_equation() -> SeriesPolynomial {
    SeriesPolynomial::new(vec![vec![0, 1], vec![1, 0, 1], vec![1, 3, 3, 1]])
}

/// Cubic equation satisfied by the inverse series G:
/// `X^2 G^3 + X(1+X) G^2 + (X^2+1) G + X(X+1) = 0`.
pub fn inverse_equation_cubic() -> SeriesPolynomial {
    SeriesPolynomial::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]])
}

/// Quartic equation satisfied by the inverse series G:
/// `X^3 G^4 + (1+X) G + X(X^2+1) = 0`.
pub fn inverse_equation_quartic() -> SeriesPolynomial {
    SeriesPolynomial::new(vec![vec![0, 1, 0, 1], vec![1, 1], vec![], vec![], vec![0, 0, 0, 1]])
}

fn eval_at_one(p: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p {
        acc += c;
    }
    acc
}

/// Divides `p` by `X - 1` exactly; the caller guarantees `p(1) = 0`.
fn divide_by_x_minus_one(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![];
    }
    let d = p.len() - 1;
    let mut q = vec![BigRational::zero(); d];
    q[d - 1] = p[d].clone();
    for i in (1..d).rev() {
        q[i - 1] = &p[i] + &q[i];
    }
    q
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Expands `numerator / denominator` as an exact-rational series to the
/// given truncation order. Common `X - 1` factors are cancelled
/// symbolically first; afterwards the denominator must not vanish at 0.
pub fn rational_expand(
    numerator: &[BigRational],
    denominator: &[BigRational],
    order: usize,
) -> Result<TruncatedSeries, FpsError> {
    let mut num = trim(numerator.to_vec());
    let mut den = trim(denominator.to_vec());
    if den.is_empty() {
        return Err(FpsError::PoleAtZero);
    }
    while !num.is_empty()
        && den.len() > 1
        && eval_at_one(&num).is_zero()
        && eval_at_one(&den).is_zero()
    {
        num = trim(divide_by_x_minus_one(&num));
        den = trim(divide_by_x_minus_one(&den));
    }
    if den[0].is_zero() {
        return Err(FpsError::PoleAtZero);
    }
    let den0_inv = den[0].recip();
    let mut s = vec![BigRational::zero(); order + 1];
    for n in 0..=order {
        let mut acc = num.get(n).cloned().unwrap_or_else(BigRational::zero);
        for k in 1..den.len().min(n + 1) {
            if den[k].is_zero() || s[n - k].is_zero() {
                continue;
            }
            acc -= &den[k] * &s[n - k];
        }
        s[n] = acc * &den0_inv;
    }
    Ok(TruncatedSeries::from_rational_coeffs(s))
}

/// [`rational_expand`] with integer polynomial coefficients.
pub fn rational_expand_int(
    numerator: &[i64],
    denominator: &[i64],
    order: usize,
) -> Result<TruncatedSeries, FpsError> {
    let to_rat = |v: &[i64]| -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    };
    rational_expand(&to_rat(numerator), &to_rat(denominator), order)
}
