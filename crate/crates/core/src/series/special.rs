//! The univariate series `B(z)`, `g(z)`, `exp(z)` and their compositions with
//! linear forms.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{LinearForm, PolySeries};
use crate::error::{Error, Result};
use crate::Rational;

fn factorial(k: u32) -> Rational {
    let mut f = Rational::one();
    for i in 2..=k {
        f *= Rational::from_integer(i.into());
    }
    f
}

/// Reciprocal of a univariate series with invertible constant term; `n`
/// coefficients are produced.
fn reciprocal(f: &[Rational], n: usize) -> Vec<Rational> {
    let f0inv = f[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(f0inv.clone());
            continue;
        }
        let mut acc = Rational::zero();
        for j in 1..=k.min(f.len() - 1) {
            acc += &f[j] * &out[k - j];
        }
        out.push(-(acc * &f0inv));
    }
    out
}

/// Coefficients of `h(z) = (e^z - 1)/z` through degree `n - 1`.
fn h_coeffs(n: usize) -> Vec<Rational> {
    (0..n as u32).map(|k| factorial(k + 1).recip()).collect()
}

/// Coefficients of `B(z) = (1 - 1/h(z))/z` through degree `order`.
pub fn b_univariate(order: u32) -> Vec<Rational> {
    let n = order as usize + 2;
    let inv = reciprocal(&h_coeffs(n), n);
    (0..=order as usize).map(|k| -inv[k + 1].clone()).collect()
}

/// Coefficients of `g(z) = z/(1 - e^{-z}) = 1/h(-z)` through degree `order`.
pub fn g_univariate(order: u32) -> Vec<Rational> {
    let n = order as usize + 1;
    let h_neg: Vec<Rational> = h_coeffs(n).into_iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c }).collect();
    reciprocal(&h_neg, n)
}

/// `Σ_k c_k · m^k`, truncated at `order`.
pub fn univariate_compose(coeffs: &[Rational], m: &LinearForm, order: u32) -> PolySeries {
    let n = m.len();
    let lin = m.to_series(order);
    let mut power = PolySeries::one(n, order);
    let mut out = PolySeries::zero(n, order);
    for (k, c) in coeffs.iter().enumerate() {
        if k as u32 > order {
            break;
        }
        if k > 0 {
            power = &power * &lin;
        }
        out = &out + &power.scale(c);
    }
    out
}

/// `B(m)` for a nonzero linear form `m`.
pub fn b_series(m: &LinearForm, order: u32) -> Result<PolySeries> {
    if m.is_zero() {
        return Err(Error::ZeroLinearForm);
    }
    Ok(univariate_compose(&b_univariate(order), m, order))
}

/// `g(z)` as a one-variable series.
pub fn g_series(order: u32) -> PolySeries {
    let mut s = PolySeries::zero(1, order);
    for (k, c) in g_univariate(order).into_iter().enumerate() {
        s.add_term(vec![k as u32], c);
    }
    s
}

/// `exp(m)` for a linear form `m` (the zero form gives `1`).
pub fn exp_linear(m: &LinearForm, order: u32) -> PolySeries {
    let coeffs: Vec<Rational> = (0..=order).map(|k| factorial(k).recip()).collect();
    univariate_compose(&coeffs, m, order)
}
