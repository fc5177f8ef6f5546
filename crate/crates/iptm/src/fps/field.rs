//! Generic truncated-series algorithms over an abstract coefficient field.
//!
//! The field is passed as a context value so that a runtime modulus (odd
//! prime p) and arbitrary-precision rationals share one implementation of
//! multiplication, composition, series inversion and reversion. The packed
//! F2 engine in [`super::f2`] is a separate specialization.

use num::rational::BigRational;
use num::traits::{One, Zero};

pub(crate) trait FieldCtx {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Residues modulo an odd prime, elements stored reduced in `u64`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ModCtx {
    pub p: u64,
}

impl ModCtx {
    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl FieldCtx for ModCtx {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            // Fermat; p is prime by construction.
            Some(self.pow(*a, self.p - 2))
        }
    }
}

/// Exact rationals with arbitrary-precision integer parts.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RatCtx;

impl FieldCtx for RatCtx {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

fn coeff<C: FieldCtx>(ctx: &C, v: &[C::Elem], i: usize) -> C::Elem {
    v.get(i).cloned().unwrap_or_else(|| ctx.zero())
}

pub(crate) fn add<C: FieldCtx>(ctx: &C, a: &[C::Elem], b: &[C::Elem], len: usize) -> Vec<C::Elem> {
    (0..len).map(|i| ctx.add(&coeff(ctx, a, i), &coeff(ctx, b, i))).collect()
}

pub(crate) fn sub<C: FieldCtx>(ctx: &C, a: &[C::Elem], b: &[C::Elem], len: usize) -> Vec<C::Elem> {
    (0..len).map(|i| ctx.sub(&coeff(ctx, a, i), &coeff(ctx, b, i))).collect()
}

/// Truncated product; zero coefficients of `a` are skipped, which matters
/// for the sparse series this crate works with.
pub(crate) fn mul<C: FieldCtx>(ctx: &C, a: &[C::Elem], b: &[C::Elem], len: usize) -> Vec<C::Elem> {
    let mut out = vec![ctx.zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ctx.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if ctx.is_zero(bj) {
                continue;
            }
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(ai, bj));
        }
    }
    out
}

pub(crate) fn scale<C: FieldCtx>(ctx: &C, s: &C::Elem, a: &[C::Elem]) -> Vec<C::Elem> {
    a.iter().map(|x| ctx.mul(s, x)).collect()
}

pub(crate) fn is_zero<C: FieldCtx>(ctx: &C, a: &[C::Elem]) -> bool {
    a.iter().all(|x| ctx.is_zero(x))
}

/// Multiplicative inverse series of `d` to `len` coefficients via the
/// standard recurrence; requires an invertible constant term.
pub(crate) fn inv_series<C: FieldCtx>(ctx: &C, d: &[C::Elem], len: usize) -> Vec<C::Elem> {
    let d0_inv = ctx.inv(&d[0]).expect("constant term must be invertible");
    let mut s = vec![ctx.zero(); len];
    s[0] = d0_inv.clone();
    for n in 1..len {
        let mut acc = ctx.zero();
        for k in 1..=n.min(d.len() - 1) {
            if ctx.is_zero(&d[k]) {
                continue;
            }
            acc = ctx.add(&acc, &ctx.mul(&d[k], &s[n - k]));
        }
        s[n] = ctx.sub(&ctx.zero(), &ctx.mul(&d0_inv, &acc));
    }
    s
}

/// Formal derivative.
pub(crate) fn derivative<C: FieldCtx>(ctx: &C, a: &[C::Elem]) -> Vec<C::Elem> {
    (1..a.len()).map(|i| ctx.mul(&ctx.from_i64(i as i64), &a[i])).collect()
}

/// U(V) truncated to `len` coefficients, baby-step/giant-step. `v` must
/// have zero constant term.
pub(crate) fn compose<C: FieldCtx>(ctx: &C, u: &[C::Elem], v: &[C::Elem], len: usize) -> Vec<C::Elem> {
    debug_assert!(v.is_empty() || ctx.is_zero(&v[0]));
    // val(V^i) >= i, so only the first `len` coefficients of u contribute.
    let u_len = u.len().min(len);
    let u = &u[..u_len];
    if u.iter().all(|x| ctx.is_zero(x)) {
        return vec![ctx.zero(); len];
    }
    let s = ((u_len as f64).sqrt().ceil() as usize).max(1);
    let mut pows: Vec<Vec<C::Elem>> = Vec::with_capacity(s + 1);
    let mut one = vec![ctx.zero(); len];
    one[0] = ctx.one();
    pows.push(one);
    for i in 1..=s {
        let next = mul(ctx, &pows[i - 1], v, len);
        pows.push(next);
    }
    let blocks = u_len.div_ceil(s);
    let block_sum = |j: usize| -> Vec<C::Elem> {
        let mut acc = vec![ctx.zero(); len];
        for i in 0..s {
            let idx = j * s + i;
            if idx >= u_len || ctx.is_zero(&u[idx]) {
                continue;
            }
            for (dst, p) in acc.iter_mut().zip(pows[i].iter()) {
                *dst = ctx.add(dst, &ctx.mul(&u[idx], p));
            }
        }
        acc
    };
    let mut result = block_sum(blocks - 1);
    for j in (0..blocks - 1).rev() {
        result = mul(ctx, &result, &pows[s], len);
        let bs = block_sum(j);
        for (dst, p) in result.iter_mut().zip(bs.iter()) {
            *dst = ctx.add(dst, p);
        }
    }
    result
}

/// Compositional inverse to `len` coefficients by Newton order-doubling.
/// Requires u_0 = 0 and u_1 invertible (checked by the caller).
pub(crate) fn reverse<C: FieldCtx>(ctx: &C, u: &[C::Elem], len: usize) -> Vec<C::Elem> {
    let order = len - 1;
    let u1_inv = ctx.inv(&u[1]).expect("linear coefficient must be invertible");
    let mut v = vec![ctx.zero(); 2];
    v[1] = u1_inv;
    if order <= 1 {
        v.truncate(len);
        return v;
    }
    let du = derivative(ctx, u);
    let mut prec = 1usize;
    while prec < order {
        let nprec = (2 * prec).min(order);
        let nb = nprec + 1;
        v.resize(nb, ctx.zero());
        let mut e = compose(ctx, u, &v, nb);
        e[1] = ctx.sub(&e[1], &ctx.one());
        if is_zero(ctx, &e) {
            prec = nprec;
            continue;
        }
        let d = compose(ctx, &du, &v, nb);
        let w = inv_series(ctx, &d, nb);
        let corr = mul(ctx, &e, &w, nb);
        for (dst, c) in v.iter_mut().zip(corr.iter()) {
            *dst = ctx.sub(dst, c);
        }
        prec = nprec;
    }
    v.resize(len, ctx.zero());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_is_fermat() {
        let ctx = ModCtx { p: 13 };
        for a in 1..13u64 {
            let inv = ctx.inv(&a).unwrap();
            assert_eq!(ctx.mul(&a, &inv), 1);
        }
        assert_eq!(ctx.inv(&0), None);
    }

    #[test]
    fn geometric_series_inverse_over_q() {
        let ctx = RatCtx;
        // 1/(1 - X) = 1 + X + X^2 + ...
        let d: Vec<BigRational> = vec![ctx.one(), ctx.from_i64(-1)];
        let s = inv_series(&ctx, &d, 5);
        assert!(s.iter().all(|x| *x == ctx.one()));
    }

    #[test]
    fn reversion_of_geometric_numerator() {
        let ctx = RatCtx;
        // X/(1-X) = X + X^2 + X^3 + ... reverses to X/(1+X) = X - X^2 + X^3 - ...
        let u: Vec<BigRational> = std::iter::once(ctx.zero()).chain((1..7).map(|_| ctx.one())).collect();
        let v = reverse(&ctx, &u, 7);
        let expect: Vec<BigRational> = (0..7)
            .map(|i| match i {
                0 => ctx.zero(),
                _ if i % 2 == 1 => ctx.one(),
                _ => ctx.from_i64(-1),
            })
            .collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn compose_linearity_mod_5() {
        let ctx = ModCtx { p: 5 };
        let u = vec![3u64, 1, 4, 2, 0, 1];
        let v = vec![0u64, 2, 1, 0, 3, 4];
        let w = compose(&ctx, &u, &v, 6);
        // Horner reference
        let mut reference = vec![0u64; 6];
        for &c in u.iter().rev() {
            reference = mul(&ctx, &reference, &v, 6);
            reference[0] = ctx.add(&reference[0], &c);
        }
        assert_eq!(w, reference);
    }
}
