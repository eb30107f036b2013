//! Equivariant divisors and cycles on a fan, the cycle-level action of
//! Cartier divisors, and square-free normal forms in
//! `Λ_Q[D_1..D_s] / (I + J^Ψ)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::complement::{ComplementMap, InnerProduct};
use crate::error::{Error, Result};
use crate::lattice::Fan;
use crate::linalg;
use crate::series::{LinearForm, PolySeries};
use crate::Rational;

/// A `T`-Cartier divisor given by its values `α_i = ⟨d_σ, n_i⟩` on rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantDivisor {
    alpha: Vec<Rational>,
    /// one representative `d_σ ∈ M_Q` per fan cone
    local: Vec<Vec<Rational>>,
}

impl EquivariantDivisor {
    /// Solves for a local equation on every cone; fails when some cone's
    /// rays carry values no linear function can take.
    pub fn new(fan: &Fan, alpha: Vec<Rational>) -> Result<Self> {
        let n = fan.rank();
        if alpha.len() != fan.rays().len() {
            return Err(Error::DimensionMismatch { expected: fan.rays().len(), found: alpha.len() });
        }
        let euclid = InnerProduct::identity(n);
        let mut local = Vec::with_capacity(fan.len());
        for id in 0..fan.len() {
            let rays = fan.cone_rays(id);
            let mut basis: Vec<Vec<Rational>> = Vec::new();
            let mut values = Vec::new();
            for &r in rays {
                let v = linalg::to_rational(&fan.rays()[r]);
                let mut trial = basis.clone();
                trial.push(v.clone());
                if linalg::rank(&trial, n) == trial.len() {
                    basis = trial;
                    values.push(alpha[r].clone());
                }
            }
            let d = euclid.section(&basis, &values)?;
            if let Some(&bad) = rays.iter().find(|&&r| linalg::pair(&d, &fan.rays()[r]) != alpha[r]) {
                return Err(Error::NotCartier { cone: rays.to_vec(), ray: bad });
            }
            local.push(d);
        }
        Ok(Self { alpha, local })
    }

    /// The principal divisor of `m ∈ M_Q`: `d_σ = m` on every cone.
    pub fn principal(fan: &Fan, m: &[Rational]) -> Result<Self> {
        let alpha = fan.rays().iter().map(|r| linalg::pair(m, r)).collect();
        Self::new(fan, alpha)
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// A representative of `d_σ` for fan cone `id`.
    pub fn local_equation(&self, id: usize) -> &[Rational] {
        &self.local[id]
    }

    fn check_fan(&self, fan: &Fan) -> Result<()> {
        if self.alpha.len() != fan.rays().len() || self.local.len() != fan.len() {
            return Err(Error::InvalidFan("divisor belongs to a different fan".into()));
        }
        Ok(())
    }
}

/// A finite sum `Σ c_σ V_σ` with power-series coefficients, keyed by fan
/// cone index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCycle {
    nvars: usize,
    terms: BTreeMap<usize, PolySeries>,
}

impl EquivariantCycle {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// `c · V_σ`.
    pub fn single(id: usize, coeff: PolySeries) -> Self {
        let mut c = Self::zero(coeff.nvars());
        c.add_term(id, coeff);
        c
    }

    /// `V_σ` with coefficient one at the given order.
    pub fn basis(nvars: usize, id: usize, order: u32) -> Self {
        Self::single(id, PolySeries::one(nvars, order))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, id: usize, coeff: PolySeries) {
        assert_eq!(coeff.nvars(), self.nvars, "cycle coefficient variable count");
        let sum = match self.terms.remove(&id) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(id, sum);
        }
    }

    pub fn get(&self, id: usize) -> Option<&PolySeries> {
        self.terms.get(&id)
    }

    /// The coefficient of `V_σ`, zero if absent.
    pub fn coeff(&self, id: usize, order: u32) -> PolySeries {
        self.terms.get(&id).cloned().unwrap_or_else(|| PolySeries::zero(self.nvars, order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &PolySeries)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in &other.terms {
            out.add_term(*id, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (id, s) in &self.terms {
            out.add_term(*id, s.scale(c));
        }
        out
    }

    pub fn mul_series(&self, s: &PolySeries) -> Self {
        let mut out = Self::zero(self.nvars);
        for (id, c) in &self.terms {
            out.add_term(*id, c * s);
        }
        out
    }

    pub fn truncate(&self, order: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (id, c) in &self.terms {
            out.add_term(*id, c.truncate(order));
        }
        out
    }

    /// Sets every `M`-symbol to zero, keeping constant terms only.
    pub fn forget_torus(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (id, c) in &self.terms {
            out.add_term(*id, PolySeries::constant(self.nvars, c.order(), c.constant_term()));
        }
        out
    }

    /// `label → coefficient` using the fan's cone labels and the given
    /// variable names.
    pub fn display_map(&self, fan: &Fan, names: &[String]) -> BTreeMap<String, String> {
        self.terms.iter().map(|(id, c)| (fan.label(*id), c.display_with(names))).collect()
    }
}

/// `[D] = Σ α_i V_i`.
pub fn divisor_to_cycle(fan: &Fan, d: &EquivariantDivisor, order: u32) -> Result<EquivariantCycle> {
    d.check_fan(fan)?;
    let n = fan.rank();
    let mut out = EquivariantCycle::zero(n);
    for (i, a) in d.alpha.iter().enumerate() {
        let id = fan.cone_id(&[i]).ok_or(Error::ConeNotInFan)?;
        out.add_term(id, PolySeries::constant(n, order, a.clone()));
    }
    Ok(out)
}

fn section_of<P: ComplementMap + ?Sized>(fan: &Fan, psi: &P, d: &EquivariantDivisor, id: usize) -> Result<LinearForm> {
    let basis: Vec<Vec<Rational>> = fan.cone(id).span_basis().sub_basis().iter().map(|b| linalg::to_rational(b)).collect();
    let values: Vec<Rational> = basis.iter().map(|b| linalg::dot(&d.local[id], b)).collect();
    Ok(LinearForm::new(psi.section(&basis, &values)?))
}

/// `E_σ^Ψ = Σ ⟨d_σ^Ψ, n_i⟩ V_i − d_σ^Ψ V_{0}`.
pub fn shift_cycle<P: ComplementMap + ?Sized>(
    fan: &Fan,
    psi: &P,
    d: &EquivariantDivisor,
    id: usize,
    order: u32,
) -> Result<EquivariantCycle> {
    d.check_fan(fan)?;
    if id >= fan.len() {
        return Err(Error::ConeNotInFan);
    }
    let n = fan.rank();
    let dpsi = section_of(fan, psi, d, id)?;
    let mut out = EquivariantCycle::zero(n);
    for (i, ray) in fan.rays().iter().enumerate() {
        let rid = fan.cone_id(&[i]).ok_or(Error::ConeNotInFan)?;
        out.add_term(rid, PolySeries::constant(n, order, dpsi.pair_int(ray)));
    }
    out.add_term(0, -&dpsi.to_series(order));
    Ok(out)
}

/// The action of a Cartier divisor on a cycle:
/// `D·V_σ = Σ_{τ→σ} ⟨d_τ − d_σ^Ψ, n_{τ,σ}⟩ V_τ + d_σ^Ψ V_σ`, extended
/// linearly. Coefficient orders are kept.
pub fn act<P: ComplementMap + ?Sized>(
    fan: &Fan,
    psi: &P,
    d: &EquivariantDivisor,
    c: &EquivariantCycle,
) -> Result<EquivariantCycle> {
    d.check_fan(fan)?;
    if psi.rank() != fan.rank() || c.nvars != fan.rank() {
        return Err(Error::DimensionMismatch { expected: fan.rank(), found: psi.rank() });
    }
    let mut out = EquivariantCycle::zero(c.nvars);
    for (&sid, coeff) in &c.terms {
        if sid >= fan.len() {
            return Err(Error::ConeNotInFan);
        }
        let dpsi = section_of(fan, psi, d, sid)?;
        let sigma = fan.cone(sid);
        for &tid in fan.cofaces(sid) {
            let (_, lift) = fan.cone(tid).normal_generator(&sigma)?;
            let diff: Vec<Rational> = d.local[tid].iter().zip(dpsi.coeffs()).map(|(a, b)| a - b).collect();
            let val = linalg::pair(&diff, &lift);
            if !val.is_zero() {
                out.add_term(tid, coeff.scale(&val));
            }
        }
        out.add_term(sid, coeff.mul_linear(&dpsi));
    }
    Ok(out)
}

/// A polynomial in the ray divisors `D_1..D_s` with power-series
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPoly {
    nvars: usize,
    nrays: usize,
    terms: BTreeMap<Vec<u32>, PolySeries>,
}

impl DPoly {
    pub fn zero(nvars: usize, nrays: usize) -> Self {
        Self { nvars, nrays, terms: BTreeMap::new() }
    }

    pub fn monomial(nrays: usize, exps: Vec<u32>, coeff: PolySeries) -> Result<Self> {
        if exps.len() != nrays {
            return Err(Error::DimensionMismatch { expected: nrays, found: exps.len() });
        }
        let mut p = Self::zero(coeff.nvars(), nrays);
        p.add_term(exps, coeff);
        Ok(p)
    }

    pub fn constant(nrays: usize, coeff: PolySeries) -> Self {
        let mut p = Self::zero(coeff.nvars(), nrays);
        p.add_term(vec![0; nrays], coeff);
        p
    }

    /// `D_i` with coefficient one.
    pub fn ray(nvars: usize, nrays: usize, i: usize, order: u32) -> Self {
        let mut e = vec![0; nrays];
        e[i] = 1;
        let mut p = Self::zero(nvars, nrays);
        p.add_term(e, PolySeries::one(nvars, order));
        p
    }

    /// `Σ_k c_k D_i^k` for `k ≤ max_degree`.
    pub fn univariate(nvars: usize, nrays: usize, i: usize, coeffs: &[Rational], max_degree: u32, order: u32) -> Self {
        let mut p = Self::zero(nvars, nrays);
        for (k, c) in coeffs.iter().enumerate().take(max_degree as usize + 1) {
            let mut e = vec![0; nrays];
            e[i] = k as u32;
            p.add_term(e, PolySeries::constant(nvars, order, c.clone()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrays(&self) -> usize {
        self.nrays
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &PolySeries)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: PolySeries) {
        assert_eq!(e.len(), self.nrays, "D-exponent length");
        let sum = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    /// Product, dropping monomials of `D`-degree above `max_degree`.
    pub fn mul_capped(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.nrays);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > max_degree {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, u32::MAX)
    }

    pub fn mul_series(&self, s: &PolySeries) -> Self {
        let mut out = Self::zero(self.nvars, self.nrays);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }
}

/// Minimal non-faces of the fan: the generators of the Stanley–Reisner
/// ideal, as sorted ray-index sets.
pub fn stanley_reisner_generators(fan: &Fan) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in fan.cones() {
        for j in 0..fan.rays().len() {
            if c.contains(&j) {
                continue;
            }
            let mut s = c.clone();
            s.push(j);
            s.sort_unstable();
            if fan.cone_id(&s).is_some() || out.contains(&s) {
                continue;
            }
            let minimal = (0..s.len()).all(|k| {
                let mut t = s.clone();
                t.remove(k);
                fan.cone_id(&t).is_some()
            });
            if minimal {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// Generators `D_σ · (Σ_j ⟨m, n_j⟩ D_j − m)` of `J^Ψ`, one for each cone
/// `σ` and each basis vector `m` of `Ψ(σ)`.
pub fn jpsi_generators<P: ComplementMap + ?Sized>(fan: &Fan, psi: &P, order: u32) -> Result<Vec<DPoly>> {
    if !fan.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let n = fan.rank();
    let s = fan.rays().len();
    let mut out = Vec::new();
    for id in 0..fan.len() {
        let rays = fan.cone_rays(id);
        if rays.is_empty() {
            continue;
        }
        let basis: Vec<Vec<Rational>> = rays.iter().map(|&r| linalg::to_rational(&fan.rays()[r])).collect();
        let mut dsigma = vec![0u32; s];
        for &r in rays {
            dsigma[r] = 1;
        }
        for m in psi.psi_subspace(&basis)? {
            let form = LinearForm::new(m);
            let mut lin = DPoly::constant(s, -&form.to_series(order));
            for (j, ray) in fan.rays().iter().enumerate() {
                let c = form.pair_int(ray);
                if !c.is_zero() {
                    let mut e = vec![0; s];
                    e[j] = 1;
                    lin.add_term(e, PolySeries::constant(n, order, c));
                }
            }
            let lead = DPoly::monomial(s, dsigma.clone(), PolySeries::one(n, order))?;
            out.push(lead.mul(&lin));
        }
    }
    Ok(out)
}

type SquarefreeMap = BTreeMap<usize, PolySeries>;

/// Rewrites `D`-polynomials into square-free normal form on a simplicial
/// fan, truncating `Λ`-coefficients at a fixed order.
pub struct SquarefreeReducer<'a, P: ComplementMap + ?Sized> {
    fan: &'a Fan,
    psi: &'a P,
    order: u32,
    duals: BTreeMap<(usize, usize), LinearForm>,
    memo: BTreeMap<Vec<u32>, SquarefreeMap>,
    use_memo: bool,
}

impl<'a, P: ComplementMap + ?Sized> SquarefreeReducer<'a, P> {
    pub fn new(fan: &'a Fan, psi: &'a P, order: u32) -> Result<Self> {
        if !fan.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        if psi.rank() != fan.rank() {
            return Err(Error::DimensionMismatch { expected: fan.rank(), found: psi.rank() });
        }
        Ok(Self { fan, psi, order, duals: BTreeMap::new(), memo: BTreeMap::new(), use_memo: true })
    }

    /// Disables the per-monomial memo table.
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `m^Ψ` with `⟨m^Ψ, n_ray⟩ = 1` and `⟨m^Ψ, n_j⟩ = 0` on the other rays
    /// of the cone.
    fn dual(&mut self, cone: usize, ray: usize) -> Result<LinearForm> {
        if let Some(m) = self.duals.get(&(cone, ray)) {
            return Ok(m.clone());
        }
        let rays = self.fan.cone_rays(cone);
        let basis: Vec<Vec<Rational>> = rays.iter().map(|&r| linalg::to_rational(&self.fan.rays()[r])).collect();
        let values: Vec<Rational> = rays.iter().map(|&r| if r == ray { Rational::one() } else { Rational::zero() }).collect();
        let m = LinearForm::new(self.psi.section(&basis, &values)?);
        self.duals.insert((cone, ray), m.clone());
        Ok(m)
    }

    fn reduce_monomial(&mut self, a: &[u32], chooser: &mut Option<&mut dyn FnMut(&[usize]) -> usize>) -> Result<SquarefreeMap> {
        let support: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
        let Some(cone) = self.fan.cone_id(&support) else {
            return Ok(SquarefreeMap::new());
        };
        let n = self.fan.rank();
        let heavy: Vec<usize> = support.iter().copied().filter(|&i| a[i] >= 2).collect();
        if heavy.is_empty() {
            let mut m = SquarefreeMap::new();
            m.insert(cone, PolySeries::one(n, self.order));
            return Ok(m);
        }
        let memoize = self.use_memo && chooser.is_none();
        if memoize {
            if let Some(hit) = self.memo.get(a) {
                return Ok(hit.clone());
            }
        }
        let pivot = match chooser {
            Some(f) => heavy[f(&heavy) % heavy.len()],
            None => heavy[0],
        };
        let m = self.dual(cone, pivot)?;
        let mut lowered = a.to_vec();
        lowered[pivot] -= 1;
        let mut out = SquarefreeMap::new();
        let base = self.reduce_monomial(&lowered, chooser)?;
        for (k, c) in base {
            merge(&mut out, k, c.mul_linear(&m));
        }
        for (j, ray) in self.fan.rays().iter().enumerate() {
            if a[j] > 0 {
                continue;
            }
            let c = m.pair_int(ray);
            if c.is_zero() {
                continue;
            }
            let mut bigger = lowered.clone();
            bigger[j] += 1;
            let sub = self.reduce_monomial(&bigger, chooser)?;
            let neg = -c;
            for (k, s) in sub {
                merge(&mut out, k, s.scale(&neg));
            }
        }
        if memoize {
            self.memo.insert(a.to_vec(), out.clone());
        }
        Ok(out)
    }

    fn reduce_impl(&mut self, p: &DPoly, mut chooser: Option<&mut dyn FnMut(&[usize]) -> usize>) -> Result<EquivariantCycle> {
        if p.nrays != self.fan.rays().len() || p.nvars != self.fan.rank() {
            return Err(Error::DimensionMismatch { expected: self.fan.rays().len(), found: p.nrays });
        }
        let mut acc = SquarefreeMap::new();
        for (e, c) in &p.terms {
            let red = self.reduce_monomial(e, &mut chooser)?;
            for (k, s) in red {
                merge(&mut acc, k, &s * c);
            }
        }
        let mut out = EquivariantCycle::zero(self.fan.rank());
        for (k, s) in acc {
            let mult = self.fan.cone(k).multiplicity()?;
            let s = if mult == 1 { s } else { s.scale(&Rational::new(1.into(), mult.into())) };
            out.add_term(k, s);
        }
        Ok(out)
    }

    /// Square-free normal form, written as a cycle: `D_σ = V_σ / mult(σ)`.
    pub fn reduce(&mut self, p: &DPoly) -> Result<EquivariantCycle> {
        self.reduce_impl(p, None)
    }

    /// As [`SquarefreeReducer::reduce`], with the pivot ray at every step
    /// picked by `chooser` from the rays of exponent at least two.
    pub fn reduce_with(&mut self, p: &DPoly, chooser: &mut dyn FnMut(&[usize]) -> usize) -> Result<EquivariantCycle> {
        self.reduce_impl(p, Some(chooser))
    }
}

fn merge(map: &mut SquarefreeMap, k: usize, c: PolySeries) {
    let sum = match map.remove(&k) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        map.insert(k, sum);
    }
}

/// Default `M`-symbol names for cycle output: `m1..mn`.
pub fn m_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("m{i}")).collect()
}
