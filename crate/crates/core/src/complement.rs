//! Complement maps: sections `i^Ψ : L^* → M_Q` choosing, for each subspace
//! `L ⊂ N_Q`, a complement `Ψ(L)` of `L^⊥` in `M_Q`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Cone;
use crate::linalg;
use crate::series::LinearForm;
use crate::Rational;

/// A complement map on `N = Z^n`.
///
/// `section` receives a spanning set `basis` of a subspace `L` (linearly
/// independent rows) and the values of a functional on those rows, and
/// returns the unique element of `Ψ(L)` taking those values.
pub trait ComplementMap {
    fn rank(&self) -> usize;

    fn section(&self, basis: &[Vec<Rational>], values: &[Rational]) -> Result<Vec<Rational>>;

    /// A basis of `Ψ(L)`.
    fn psi_subspace(&self, basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>>;

    /// `d^Ψ` for a functional given on the cone's span.
    fn section_on_cone(&self, f: &CosetFunctional) -> Result<LinearForm> {
        let basis = f.span_basis();
        let values: Vec<Rational> = basis.iter().map(|b| linalg::dot(&f.rep, b)).collect();
        Ok(LinearForm::new(self.section(&basis, &values)?))
    }

    /// `i^Ψ` from `N_σ` coordinates: `values[j]` is the value on the `j`-th
    /// lattice basis vector of `N_σ`.
    fn section_from_sub_coords(&self, cone: &Cone, values: &[Rational]) -> Result<LinearForm> {
        let basis: Vec<Vec<Rational>> = cone.span_basis().sub_basis().iter().map(|b| linalg::to_rational(b)).collect();
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: values.len() });
        }
        Ok(LinearForm::new(self.section(&basis, values)?))
    }
}

/// A functional on `N_σ`, represented by any covector in `M_Q` restricting
/// to it.
#[derive(Clone, Debug)]
pub struct CosetFunctional {
    rep: Vec<Rational>,
    cone: Cone,
}

impl CosetFunctional {
    pub fn new(rep: Vec<Rational>, cone: Cone) -> Result<Self> {
        if rep.len() != cone.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: cone.ambient_rank(), found: rep.len() });
        }
        Ok(Self { rep, cone })
    }

    pub fn representative(&self) -> &[Rational] {
        &self.rep
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    fn span_basis(&self) -> Vec<Vec<Rational>> {
        self.cone.span_basis().sub_basis().iter().map(|b| linalg::to_rational(b)).collect()
    }

    /// Value on a vector of `N_σ`.
    pub fn eval(&self, v: &[i64]) -> Rational {
        linalg::pair(&self.rep, v)
    }

    /// Equal as functionals on `N_σ`.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.span_basis().iter().all(|b| linalg::dot(&self.rep, b) == linalg::dot(&other.rep, b))
    }
}

/// The complement map of a positive-definite Gram matrix `G`:
/// `Ψ(L) = G·L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: Vec<Vec<Rational>>,
}

impl InnerProduct {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(row) = gram.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        for k in 1..=n {
            let minor: Vec<Vec<Rational>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::det(&minor).is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(Self { gram })
    }

    pub fn identity(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
        Self { gram }
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `G v`, a covector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.gram.iter().map(|row| linalg::dot(row, v)).collect()
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        linalg::dot(a, &self.apply(b))
    }

    /// The inner product restricted to the lattice with the given basis,
    /// as a Gram matrix in those coordinates.
    pub fn induced(&self, basis: &[Vec<Rational>]) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let gram: Vec<Vec<Rational>> = basis.iter().map(|a| basis.iter().map(|b| self.inner(a, b)).collect()).collect();
        Self::new(gram)
    }

    /// Induced map on `N_σ` in the coordinates of its lattice basis.
    pub fn induced_on_cone(&self, cone: &Cone) -> Result<Self> {
        let basis: Vec<Vec<Rational>> = cone.span_basis().sub_basis().iter().map(|b| linalg::to_rational(b)).collect();
        self.induced(&basis)
    }
}

impl ComplementMap for InnerProduct {
    fn rank(&self) -> usize {
        self.gram.len()
    }

    fn section(&self, basis: &[Vec<Rational>], values: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.rank();
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: values.len() });
        }
        if let Some(b) = basis.iter().find(|b| b.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        if basis.is_empty() {
            return Ok(vec![Rational::zero(); n]);
        }
        let images: Vec<Vec<Rational>> = basis.iter().map(|b| self.apply(b)).collect();
        let system: Vec<Vec<Rational>> = basis.iter().map(|bi| images.iter().map(|gj| linalg::dot(bi, gj)).collect()).collect();
        let lambda = linalg::solve(&system, values).ok_or(Error::NotGeneric)?;
        let mut m = vec![Rational::zero(); n];
        for (l, g) in lambda.iter().zip(&images) {
            for (mi, gi) in m.iter_mut().zip(g) {
                *mi += l * gi;
            }
        }
        Ok(m)
    }

    fn psi_subspace(&self, basis: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
        let images: Vec<Vec<Rational>> = basis.iter().map(|b| self.apply(b)).collect();
        if linalg::rank(&images, self.rank()) != basis.len() {
            return Err(Error::NotGeneric);
        }
        Ok(images)
    }
}
