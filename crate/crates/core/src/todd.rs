//! Todd coefficients `r^Ψ(σ)`: the coefficient of `V_σ` in the square-free
//! expansion of `∏ D_i / (1 − e^{−D_i})`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complement::{ComplementMap, InnerProduct};
use crate::cycle::{DPoly, EquivariantCycle, SquarefreeReducer};
use crate::error::{Error, Result};
use crate::lattice::{Cone, Fan, IntVec};
use crate::linalg;
use crate::series::{b_series, g_univariate, LinearForm, MeromorphicGerm, PolySeries};
use crate::Rational;

/// `∏_i g(D_i)` over the fan's rays, expanded through `D`-degree
/// `max_degree`.
pub fn todd_product(fan: &Fan, max_degree: u32, order: u32) -> DPoly {
    let n = fan.rank();
    let s = fan.rays().len();
    let g = g_univariate(max_degree);
    let mut p = DPoly::constant(s, PolySeries::one(n, order));
    for i in 0..s {
        let f = DPoly::univariate(n, s, i, &g, max_degree, order);
        p = p.mul_capped(&f, max_degree);
    }
    p
}

/// Computes Todd coefficients for one complement map at a fixed order,
/// memoizing per cone.
pub struct ToddEngine {
    psi: InnerProduct,
    order: u32,
    cache: Option<BTreeMap<Vec<IntVec>, PolySeries>>,
}

impl ToddEngine {
    pub fn new(psi: InnerProduct, order: u32) -> Self {
        Self { psi, order, cache: Some(BTreeMap::new()) }
    }

    /// Turns memoization off.
    pub fn without_cache(mut self) -> Self {
        self.cache = None;
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn psi(&self) -> &InnerProduct {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.psi.rank()
    }

    fn check(&self, cone: &Cone) -> Result<()> {
        if cone.ambient_rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: cone.ambient_rank() });
        }
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(())
    }

    fn key(cone: &Cone) -> Vec<IntVec> {
        let mut k = cone.generators().to_vec();
        k.sort();
        k
    }

    /// `r(σ)` for a smooth cone, by reducing `∏ g(D_i)` in the fan of faces
    /// of `σ`.
    pub fn r_smooth(&mut self, cone: &Cone) -> Result<PolySeries> {
        self.check(cone)?;
        if !cone.is_smooth() {
            return Err(Error::NotSmooth);
        }
        let n = self.rank();
        if cone.dim() == 0 {
            return Ok(PolySeries::one(n, self.order));
        }
        let key = Self::key(cone);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit.clone());
        }
        let fan = Fan::from_cone(cone)?;
        let top = fan.cone_id(&(0..fan.rays().len()).collect::<Vec<_>>()).ok_or(Error::ConeNotInFan)?;
        let product = todd_product(&fan, cone.dim() as u32 + self.order, self.order);
        let mut red = SquarefreeReducer::new(&fan, &self.psi, self.order)?;
        let cycle = red.reduce(&product)?;
        let r = cycle.coeff(top, self.order);
        if let Some(c) = self.cache.as_mut() {
            c.insert(key, r.clone());
        }
        Ok(r)
    }

    /// `r(σ)` for any pointed cone: smooth cones directly, others as the sum
    /// over a smooth subdivision.
    pub fn r_general(&mut self, cone: &Cone) -> Result<PolySeries> {
        self.check(cone)?;
        if cone.is_smooth() {
            return self.r_smooth(cone);
        }
        let key = Self::key(cone);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit.clone());
        }
        let pieces = cone.subdivide_to_smooth()?;
        let r = self.r_sum(&pieces)?;
        if let Some(c) = self.cache.as_mut() {
            c.insert(key, r.clone());
        }
        Ok(r)
    }

    /// `Σ r(σ_i)` over the given smooth cones.
    pub fn r_sum(&mut self, pieces: &[Cone]) -> Result<PolySeries> {
        let mut total = PolySeries::zero(self.rank(), self.order);
        for p in pieces {
            total = &total + &self.r_smooth(p)?;
        }
        Ok(total)
    }

    /// `Σ_σ r(σ) V_σ` over all cones of the fan. A smooth fan is expanded as
    /// a whole; otherwise the coefficients are assembled cone by cone.
    pub fn todd_class(&mut self, fan: &Fan) -> Result<EquivariantCycle> {
        if fan.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: fan.rank() });
        }
        if fan.is_smooth() {
            let product = todd_product(fan, fan.rank() as u32 + self.order, self.order);
            let mut red = SquarefreeReducer::new(fan, &self.psi, self.order)?;
            return red.reduce(&product);
        }
        self.todd_class_local(fan)
    }

    /// Cone-by-cone assembly of the Todd class.
    pub fn todd_class_local(&mut self, fan: &Fan) -> Result<EquivariantCycle> {
        let mut out = EquivariantCycle::zero(self.rank());
        for id in 0..fan.len() {
            out.add_term(id, self.r_general(&fan.cone(id))?);
        }
        Ok(out)
    }

    /// Closed forms in dimension at most two.
    pub fn r_closed(&self, cone: &Cone) -> Result<PolySeries> {
        self.check(cone)?;
        match cone.dim() {
            0 => Ok(PolySeries::one(self.rank(), self.order)),
            1 => r_closed_1d(&self.psi, &cone.generators()[0], self.order),
            2 => r_closed_2d(&self.psi, cone, self.order),
            _ => Err(Error::Unsupported("closed forms stop at dimension two".into())),
        }
    }
}

/// `B(−c/⟨c, ρ⟩)` with `c` spanning `Ψ(ρ)`.
pub fn r_closed_1d(psi: &InnerProduct, ray: &[i64], order: u32) -> Result<PolySeries> {
    let c = psi.apply(&linalg::to_rational(ray));
    let scale = linalg::pair(&c, ray).recip();
    let l = LinearForm::new(c).scale(&-scale);
    b_series(&l, order)
}

/// The two-dimensional closed form
/// `B(−m₁)B(−m₂) − (B(−L₁) − B(−m₁))/m₂ − (B(−L₂) − B(−m₂))/m₁`
/// with `m_i` the dual basis and `L_i = c_i/⟨c_i, ρ_i⟩`. Cones spanning a
/// proper subspace are computed in `N_σ` with the induced inner product and
/// pushed forward by `i^Ψ`.
pub fn r_closed_2d(psi: &InnerProduct, cone: &Cone, order: u32) -> Result<PolySeries> {
    if cone.dim() != 2 || !cone.is_smooth() {
        return Err(Error::NotSmooth);
    }
    let n = psi.rank();
    if n == 2 {
        return r_closed_2d_full(psi, cone.generators(), order);
    }
    let basis = cone.span_basis();
    let local: Vec<IntVec> = cone.generators().iter().map(|g| basis.coords(g)[..2].to_vec()).collect();
    let induced = psi.induced_on_cone(cone)?;
    let r0 = r_closed_2d_full(&induced, &local, order)?;
    let push: Vec<LinearForm> = (0..2)
        .map(|j| {
            let mut e = vec![Rational::from_integer(0.into()); 2];
            e[j] = Rational::from_integer(1.into());
            psi.section_from_sub_coords(cone, &e)
        })
        .collect::<Result<_>>()?;
    r0.substitute(&push, n, false)
}

fn r_closed_2d_full(psi: &InnerProduct, gens: &[IntVec], order: u32) -> Result<PolySeries> {
    let rows: Vec<Vec<Rational>> = gens.iter().map(|g| linalg::to_rational(g)).collect();
    // columns of the inverse are the dual basis
    let inv = linalg::inverse(&rows).ok_or(Error::NotSimplicial)?;
    let dual: Vec<LinearForm> = (0..2).map(|i| LinearForm::new(vec![inv[0][i].clone(), inv[1][i].clone()])).collect();
    let neg = |l: &LinearForm| -l;
    let hi = order + 1;
    let bm: Vec<PolySeries> = dual.iter().map(|m| b_series(&neg(m), hi)).collect::<Result<_>>()?;
    let bl: Vec<PolySeries> = gens
        .iter()
        .map(|g| {
            let c = psi.apply(&linalg::to_rational(g));
            let s = linalg::pair(&c, g).recip();
            b_series(&LinearForm::new(c).scale(&-s), hi)
        })
        .collect::<Result<_>>()?;
    let mut r = (&bm[0] * &bm[1]).truncate(order);
    let q1 = (&bl[0] - &bm[0]).divide_by_linear(&dual[1])?;
    let q2 = (&bl[1] - &bm[1]).divide_by_linear(&dual[0])?;
    r = &(&r - &q1) - &q2;
    Ok(r)
}

/// `γ(D_1..D_n) ↦ γ(m_1..m_n) / ∏ m_i` for a smooth full-dimensional cone
/// whose rays are the fan rays in order; `m_i` is the dual basis.
pub fn phi_map(gamma: &DPoly, cone: &Cone) -> Result<MeromorphicGerm> {
    let n = cone.ambient_rank();
    if cone.dim() != n || !cone.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if gamma.nrays() != n || gamma.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, found: gamma.nrays() });
    }
    let rows: Vec<Vec<Rational>> = cone.generators().iter().map(|g| linalg::to_rational(g)).collect();
    let inv = linalg::inverse(&rows).ok_or(Error::NotSimplicial)?;
    let dual: Vec<LinearForm> = (0..n).map(|i| LinearForm::new((0..n).map(|k| inv[k][i].clone()).collect())).collect();
    let mut num: Option<PolySeries> = None;
    for (e, c) in gamma.terms() {
        let mut t = c.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.mul_linear(&dual[i]);
            }
        }
        num = Some(match num {
            Some(acc) => &acc + &t,
            None => t,
        });
    }
    let num = num.unwrap_or_else(|| PolySeries::zero(n, 0));
    MeromorphicGerm::new(num, dual)
}
