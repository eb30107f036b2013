//! Quotients of truncated series by products of linear forms.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{LinearForm, PolySeries};
use crate::error::{Error, Result};
use crate::Rational;

/// `numerator / ∏ denominators`, with every denominator scaled so that its
/// first nonzero coefficient is one.
///
/// The numerator is exact through its order `T`; the germ itself is then
/// known through degree `T - #denominators`, its effective order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeromorphicGerm {
    num: PolySeries,
    dens: Vec<LinearForm>,
}

impl MeromorphicGerm {
    pub fn new(num: PolySeries, dens: Vec<LinearForm>) -> Result<Self> {
        let n = num.nvars();
        let mut scale = Rational::one();
        let mut canon = Vec::with_capacity(dens.len());
        for d in dens {
            if d.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: d.len() });
            }
            let (unit, c) = d.normalized().ok_or(Error::ZeroLinearForm)?;
            scale *= c;
            canon.push(unit);
        }
        canon.sort();
        let num = if scale.is_one() { num } else { num.scale(&scale.recip()) };
        Ok(Self { num, dens: canon })
    }

    pub fn from_series(num: PolySeries) -> Self {
        Self { num, dens: Vec::new() }
    }

    pub fn numerator(&self) -> &PolySeries {
        &self.num
    }

    pub fn denominators(&self) -> &[LinearForm] {
        &self.dens
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Highest total degree through which the germ is determined.
    pub fn effective_order(&self) -> i64 {
        i64::from(self.num.order()) - self.dens.len() as i64
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut dens = self.dens.clone();
        dens.extend(other.dens.iter().cloned());
        dens.sort();
        Ok(Self { num: self.num.try_mul(&other.num)?, dens })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { num: self.num.scale(c), dens: self.dens.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, dens: self.dens.clone() }
    }

    /// Sum over the least common multiple of the two denominator multisets.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (extra_a, extra_b, common) = multiset_lcm(&self.dens, &other.dens);
        let mut a = self.num.clone();
        for d in &extra_a {
            a = a.mul_linear_exact(d);
        }
        let mut b = other.num.clone();
        for d in &extra_b {
            b = b.mul_linear_exact(d);
        }
        Ok(Self { num: a.try_add(&b)?, dens: common })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Cancels denominators that divide the numerator exactly.
    pub fn normalize(&self) -> Self {
        let mut num = self.num.clone();
        let mut dens: Vec<LinearForm> = Vec::new();
        for d in &self.dens {
            match num.divide_by_linear(d) {
                Ok(q) => num = q,
                Err(_) => dens.push(d.clone()),
            }
        }
        Self { num, dens }
    }

    /// Returns the germ as a power series when no denominator survives
    /// normalization.
    pub fn to_series(&self) -> Result<PolySeries> {
        let g = self.normalize();
        if g.dens.is_empty() {
            Ok(g.num)
        } else {
            Err(Error::Unsupported("germ has a pole".into()))
        }
    }

    /// Equality through the common effective order, by cross-multiplying.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        let (extra_a, extra_b, common) = multiset_lcm(&self.dens, &other.dens);
        let mut a = self.num.clone();
        for d in &extra_a {
            a = a.mul_linear_exact(d);
        }
        let mut b = other.num.clone();
        for d in &extra_b {
            b = b.mul_linear_exact(d);
        }
        let order = a.order().min(b.order());
        if (order as usize) < common.len() {
            return Err(Error::InsufficientOrder);
        }
        Ok(a.truncate(order) == b.truncate(order))
    }

    /// Replaces variable `i` by `assignment[i]` (negated when `negate`),
    /// in numerator and denominators alike.
    pub fn substitute(&self, assignment: &[LinearForm], target_vars: usize, negate: bool) -> Result<Self> {
        let num = self.num.substitute(assignment, target_vars, negate)?;
        let mut dens = Vec::with_capacity(self.dens.len());
        for d in &self.dens {
            let mut c = alloc::vec![Rational::zero(); target_vars];
            for (di, l) in d.coeffs().iter().zip(assignment) {
                for (cj, lj) in c.iter_mut().zip(l.coeffs()) {
                    *cj += di * lj;
                }
            }
            let mut form = LinearForm::new(c);
            if negate {
                form = -&form;
            }
            dens.push(form);
        }
        Self::new(num, dens)
    }
}

/// Splits the lcm of two sorted multisets into the factors missing from
/// each side, and the lcm itself.
fn multiset_lcm(a: &[LinearForm], b: &[LinearForm]) -> (Vec<LinearForm>, Vec<LinearForm>, Vec<LinearForm>) {
    let mut extra_a = Vec::new();
    let mut extra_b = Vec::new();
    let mut common = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => core::cmp::Ordering::Less,
            _ => core::cmp::Ordering::Greater,
        };
        match ord {
            core::cmp::Ordering::Equal => {
                common.push(a[i].clone());
                i += 1;
                j += 1;
            }
            core::cmp::Ordering::Less => {
                extra_b.push(a[i].clone());
                common.push(a[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                extra_a.push(b[j].clone());
                common.push(b[j].clone());
                j += 1;
            }
        }
    }
    (extra_a, extra_b, common)
}
