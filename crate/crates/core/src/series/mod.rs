//! Truncated multivariate power series over `Q`.
//!
//! A [`PolySeries`] of order `T` stores the exact coefficients of every
//! monomial of total degree `≤ T`; nothing beyond `T` is ever reported.
//! Variables are the coordinates of the dual standard basis of `M`, which
//! doubles as the coordinates of `ξ ∈ N` after substitution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

mod germ;
mod special;

pub use germ::MeromorphicGerm;
pub use special::{b_series, b_univariate, exp_linear, g_series, g_univariate, univariate_compose};

/// A rational linear form `Σ c_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `⟨self, v⟩` for an integer vector.
    pub fn pair_int(&self, v: &[i64]) -> Rational {
        crate::linalg::pair(&self.0, v)
    }

    pub fn pair(&self, v: &[Rational]) -> Rational {
        crate::linalg::dot(&self.0, v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Scales so that the first nonzero coefficient is one; returns the
    /// normalized form and the factor `c` with `self = c · normalized`.
    pub fn normalized(&self) -> Option<(Self, Rational)> {
        let c = self.0.iter().find(|x| !x.is_zero())?.clone();
        Some((self.scale(&c.recip()), c))
    }

    pub fn to_series(&self, order: u32) -> PolySeries {
        let n = self.len();
        let mut s = PolySeries::zero(n, order);
        if order >= 1 {
            for (i, c) in self.0.iter().enumerate() {
                let mut e = vec![0u32; n];
                e[i] = 1;
                s.add_term(e, c.clone());
            }
        }
        s
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.len(), rhs.len(), "linear form length mismatch");
        LinearForm(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.len(), rhs.len(), "linear form length mismatch");
        LinearForm(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm(self.0.iter().map(|a| -a).collect())
    }
}

/// Truncated power series in `nvars` variables, exact through total degree
/// `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl PolySeries {
    pub fn zero(nvars: usize, order: u32) -> Self {
        Self { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: u32, c: Rational) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn variable(nvars: usize, order: u32, i: usize) -> Self {
        LinearForm::unit(nvars, i).to_series(order)
    }

    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut s = Self::zero(nvars, order);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · x^e`, ignoring terms beyond the truncation order.
    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() || degree(&e) > self.order {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    /// Lowers the order to `min(order, self.order)`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            nvars: self.nvars,
            order,
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= order).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().filter(|(e, _)| degree(e) == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nvars, order);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + degree(eb) > order {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        Self {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Self {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Product with a linear form, keeping the order.
    pub fn mul_linear(&self, l: &LinearForm) -> Self {
        self.mul_linear_to(l, self.order)
    }

    /// Product with a linear form; exact through `order + 1` because the
    /// truncation error of `self` starts in degree `order + 1`.
    pub fn mul_linear_exact(&self, l: &LinearForm) -> Self {
        self.mul_linear_to(l, self.order + 1)
    }

    fn mul_linear_to(&self, l: &LinearForm, order: u32) -> Self {
        assert_eq!(l.len(), self.nvars, "linear form length mismatch");
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in &self.terms {
            for (i, li) in l.coeffs().iter().enumerate() {
                if li.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[i] += 1;
                out.add_term(f, c * li);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars, self.order);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Composes with linear forms: variable `i` is replaced by
    /// `assignment[i]` (or its negative when `negate`), a linear form in
    /// `target_vars` variables.
    pub fn substitute(&self, assignment: &[LinearForm], target_vars: usize, negate: bool) -> Result<Self> {
        if assignment.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: assignment.len() });
        }
        if let Some(bad) = assignment.iter().find(|l| l.len() != target_vars) {
            return Err(Error::DimensionMismatch { expected: target_vars, found: bad.len() });
        }
        let order = self.order;
        let forms: Vec<PolySeries> = assignment
            .iter()
            .map(|l| {
                let s = l.to_series(order);
                if negate {
                    -&s
                } else {
                    s
                }
            })
            .collect();
        // cache of powers per variable
        let mut powers: Vec<Vec<PolySeries>> = forms.iter().map(|f| vec![PolySeries::one(target_vars, order), f.clone()]).collect();
        let mut out = Self::zero(target_vars, order);
        for (e, c) in &self.terms {
            let mut term = PolySeries::constant(target_vars, order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &forms[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact quotient by a nonzero linear form.
    ///
    /// The variables are changed so that `l` becomes a coordinate `u_p`, the
    /// `u_p`-free part is checked to vanish, and exponents of `u_p` are
    /// shifted down. The quotient is exact through `order - 1`.
    pub fn divide_by_linear(&self, l: &LinearForm) -> Result<Self> {
        if l.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: l.len() });
        }
        let p = l.coeffs().iter().position(|c| !c.is_zero()).ok_or(Error::ZeroLinearForm)?;
        if self.order == 0 {
            if self.is_zero() {
                return Err(Error::InsufficientOrder);
            }
            return Err(Error::NotDivisible { degree: 0 });
        }
        let n = self.nvars;
        // x_p = (u_p - Σ_{i≠p} l_i u_i) / l_p, x_i = u_i
        let inv = l.coeffs()[p].recip();
        let forward: Vec<LinearForm> = (0..n)
            .map(|i| {
                if i == p {
                    let mut c: Vec<Rational> = l.coeffs().iter().map(|x| -(x * &inv)).collect();
                    c[p] = inv.clone();
                    LinearForm::new(c)
                } else {
                    LinearForm::unit(n, i)
                }
            })
            .collect();
        let in_u = self.substitute(&forward, n, false)?;
        let mut shifted = PolySeries::zero(n, self.order - 1);
        let mut bad: Option<u32> = None;
        for (e, c) in &in_u.terms {
            if e[p] == 0 {
                let d = degree(e);
                bad = Some(bad.map_or(d, |b| b.min(d)));
            } else {
                let mut f = e.clone();
                f[p] -= 1;
                shifted.add_term(f, c.clone());
            }
        }
        if let Some(degree) = bad {
            return Err(Error::NotDivisible { degree });
        }
        let backward: Vec<LinearForm> = (0..n).map(|i| if i == p { l.clone() } else { LinearForm::unit(n, i) }).collect();
        shifted.substitute(&backward, n, false)
    }

    /// Human-readable form using the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut entries: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| degree(a.0).cmp(&degree(b.0)).then_with(|| b.0.cmp(a.0)));
        if entries.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in entries.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{}", names[v], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&format!("{abs}"));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{abs}*{}", mono.join("*")));
            }
        }
        out
    }
}

/// Default variable names: `x, y, z` up to three variables, `x1..xn` beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| String::from(*s)).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.display_with(&default_names(self.nvars)), self.order + 1)
    }
}

impl Add for &PolySeries {
    type Output = PolySeries;
    fn add(self, rhs: &PolySeries) -> PolySeries {
        self.try_add(rhs).expect("series variable count mismatch")
    }
}

impl Sub for &PolySeries {
    type Output = PolySeries;
    fn sub(self, rhs: &PolySeries) -> PolySeries {
        self.try_sub(rhs).expect("series variable count mismatch")
    }
}

impl Mul for &PolySeries {
    type Output = PolySeries;
    fn mul(self, rhs: &PolySeries) -> PolySeries {
        self.try_mul(rhs).expect("series variable count mismatch")
    }
}

impl Neg for &PolySeries {
    type Output = PolySeries;
    fn neg(self) -> PolySeries {
        self.neg_ref()
    }
}

impl Add for PolySeries {
    type Output = PolySeries;
    fn add(self, rhs: PolySeries) -> PolySeries {
        &self + &rhs
    }
}

impl Sub for PolySeries {
    type Output = PolySeries;
    fn sub(self, rhs: PolySeries) -> PolySeries {
        &self - &rhs
    }
}

impl Mul for PolySeries {
    type Output = PolySeries;
    fn mul(self, rhs: PolySeries) -> PolySeries {
        &self * &rhs
    }
}

impl Neg for PolySeries {
    type Output = PolySeries;
    fn neg(self) -> PolySeries {
        self.neg_ref()
    }
}
