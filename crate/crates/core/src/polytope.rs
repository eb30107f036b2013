//! Lattice polytopes in `M = Z^n`: face lattices, normal cones, exponential
//! sums and integrals, and the local Euler–Maclaurin formula
//! `S(P)(ξ) = Σ_F r(σ_{P,F})(−ξ) · I(F)(ξ)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{primitive, Cone, IntVec};
use crate::linalg;
use crate::series::{exp_linear, g_univariate, univariate_compose, LinearForm, MeromorphicGerm, PolySeries};
use crate::todd::ToddEngine;
use crate::Rational;

/// Largest ambient rank handled by the face-lattice code.
pub const MAX_RANK: usize = 3;

/// A face of a polytope.
#[derive(Clone, Debug)]
pub struct FaceRecord {
    /// indices into the polytope's vertex list, sorted
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// indices of the facets containing the face
    pub facets: Vec<usize>,
    /// `σ_{P,F}`: the cone of inner facet normals of facets containing `F`
    pub normal_cone: Cone,
    /// generators of `Tan(P, F)` based at the first vertex of `F`
    pub tangent_generators: Vec<IntVec>,
}

/// A full-dimensional lattice polytope (or a single lattice point), with
/// facets `⟨normal, x⟩ ≥ offset`.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<IntVec>,
    facets: Vec<(IntVec, Rational)>,
    faces: Vec<FaceRecord>,
}

/// Exponential sum or exponential integral of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermKind {
    S,
    I,
}

/// Result of [`LatticePolytope::count_lattice_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCount {
    pub euler_maclaurin: Rational,
    pub enumeration: u64,
}

/// Default cap on the bounding-box size scanned by lattice enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

fn sub(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl LatticePolytope {
    /// Builds the polytope from its vertices. Facets are computed when not
    /// given; given facets must agree with the computed ones.
    pub fn new(rank: usize, vertices: Vec<IntVec>, facets: Option<Vec<(IntVec, Rational)>>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Unsupported(format!("polytope rank {rank} (supported: 1..={MAX_RANK})")));
        }
        let mut verts: Vec<IntVec> = Vec::new();
        for v in vertices {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
            }
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        if verts.is_empty() {
            return Err(Error::InvalidPolytope("no vertices".into()));
        }
        if verts.len() == 1 {
            let face = FaceRecord {
                vertices: vec![0],
                dim: 0,
                facets: Vec::new(),
                normal_cone: Cone::zero(rank),
                tangent_generators: Vec::new(),
            };
            return Ok(Self { rank, vertices: verts, facets: Vec::new(), faces: vec![face] });
        }
        let diffs: Vec<IntVec> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
        if linalg::rank_int(&diffs, rank) != rank {
            return Err(Error::InvalidPolytope("polytope is not full-dimensional".into()));
        }
        let computed = compute_facets(rank, &verts)?;
        if let Some(given) = facets {
            let mut g: Vec<(IntVec, Rational)> = Vec::new();
            for (normal, offset) in given {
                let p = primitive(&normal).map_err(|_| Error::InvalidPolytope("zero facet normal".into()))?;
                if p != normal {
                    return Err(Error::InvalidPolytope(format!("facet normal {normal:?} is not primitive")));
                }
                g.push((normal, offset));
            }
            let a: BTreeSet<_> = g.iter().cloned().collect();
            let b: BTreeSet<_> = computed.iter().cloned().collect();
            if a != b {
                return Err(Error::InvalidPolytope("given facets do not match the vertex hull".into()));
            }
        }
        let mut poly = Self { rank, vertices: verts, facets: computed, faces: Vec::new() };
        for (i, v) in poly.vertices.iter().enumerate() {
            let active: Vec<IntVec> =
                poly.facets.iter().filter(|(n, o)| &linalg::pair(&linalg::to_rational(n), v) == o).map(|(n, _)| n.clone()).collect();
            if linalg::rank_int(&active, rank) != rank {
                return Err(Error::InvalidPolytope(format!("point {i} is not a vertex")));
            }
        }
        poly.faces = poly.build_faces()?;
        Ok(poly)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(IntVec, Rational)] {
        &self.facets
    }

    /// All faces including `P`, sorted by dimension then vertex set.
    pub fn faces(&self) -> &[FaceRecord] {
        &self.faces
    }

    pub fn dim(&self) -> usize {
        if self.vertices.len() == 1 {
            0
        } else {
            self.rank
        }
    }

    fn on_facet(&self, f: usize, v: &[i64]) -> bool {
        let (n, o) = &self.facets[f];
        &linalg::pair(&linalg::to_rational(n), v) == o
    }

    fn build_faces(&self) -> Result<Vec<FaceRecord>> {
        let nv = self.vertices.len();
        let facet_sets: Vec<BTreeSet<usize>> =
            (0..self.facets.len()).map(|f| (0..nv).filter(|&i| self.on_facet(f, &self.vertices[i])).collect()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert((0..nv).collect());
        let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
        while let Some(s) = frontier.pop() {
            if s.is_empty() || !sets.insert(s.iter().copied().collect()) {
                continue;
            }
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).copied().collect();
                if !t.is_empty() && t.len() < s.len() {
                    frontier.push(t);
                }
            }
        }
        let mut faces = Vec::new();
        for vs in sets {
            let base = &self.vertices[vs[0]];
            let dirs: Vec<IntVec> = vs[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
            let dim = linalg::rank_int(&dirs, self.rank);
            let facets: Vec<usize> = (0..self.facets.len()).filter(|&f| vs.iter().all(|&i| facet_sets[f].contains(&i))).collect();
            let normal_cone = if facets.is_empty() {
                Cone::zero(self.rank)
            } else {
                Cone::new(self.rank, facets.iter().map(|&f| self.facets[f].0.clone()).collect())?
            };
            let mut tangent: Vec<IntVec> = Vec::new();
            for (i, w) in self.vertices.iter().enumerate() {
                if i == vs[0] {
                    continue;
                }
                let d = sub(w, base);
                if vs.contains(&i) {
                    tangent.push(d.iter().map(|x| -x).collect());
                }
                tangent.push(d);
            }
            faces.push(FaceRecord { vertices: vs, dim, facets, normal_cone, tangent_generators: tangent });
        }
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        Ok(faces)
    }

    /// Lattice points by scanning the bounding box.
    pub fn lattice_points(&self, budget: u64) -> Result<Vec<IntVec>> {
        let lo: Vec<i64> = (0..self.rank).map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap_or(0)).collect();
        let hi: Vec<i64> = (0..self.rank).map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap_or(0)).collect();
        let mut size: u64 = 1;
        for k in 0..self.rank {
            size = size.checked_mul((hi[k] - lo[k] + 1) as u64).ok_or(Error::EnumerationBudget { budget })?;
            if size > budget {
                return Err(Error::EnumerationBudget { budget });
            }
        }
        let mut out = Vec::new();
        let mut p = lo.clone();
        loop {
            if self.vertices.len() == 1 {
                if p == self.vertices[0] {
                    out.push(p.clone());
                }
            } else if (0..self.facets.len()).all(|f| {
                let (n, o) = &self.facets[f];
                &linalg::pair(&linalg::to_rational(n), &p) >= o
            }) {
                out.push(p.clone());
            }
            let mut k = 0;
            loop {
                if k == self.rank {
                    return Ok(out);
                }
                if p[k] < hi[k] {
                    p[k] += 1;
                    break;
                }
                p[k] = lo[k];
                k += 1;
            }
        }
    }

    /// `S(P)(ξ) = Σ_{x ∈ P ∩ M} e^{⟨ξ, x⟩}`.
    pub fn exp_sum_series(&self, order: u32, budget: u64) -> Result<PolySeries> {
        let mut s = PolySeries::zero(self.rank, order);
        for x in self.lattice_points(budget)? {
            s = &s + &exp_linear(&LinearForm::from_ints(&x), order);
        }
        Ok(s)
    }

    /// Simplices of a pulling triangulation of face `idx`, as vertex lists.
    fn triangulate_face(&self, idx: usize) -> Vec<Vec<usize>> {
        let face = &self.faces[idx];
        if face.dim == 0 {
            return vec![vec![face.vertices[0]]];
        }
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for (j, g) in self.faces.iter().enumerate() {
            if g.dim + 1 != face.dim || g.vertices.contains(&apex) || !g.vertices.iter().all(|v| face.vertices.contains(v)) {
                continue;
            }
            for mut s in self.triangulate_face(j) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    /// `I(F)(ξ) = ∫_F e^{⟨ξ, x⟩} dx` for the relative lattice measure on
    /// `aff(F)`; a vertex gives `e^{⟨ξ, v⟩}`.
    pub fn exp_integral_series(&self, idx: usize, order: u32) -> Result<PolySeries> {
        let face = self.faces.get(idx).ok_or_else(|| Error::InvalidPolytope(format!("no face {idx}")))?;
        if face.dim == 0 {
            return Ok(exp_linear(&LinearForm::from_ints(&self.vertices[face.vertices[0]]), order));
        }
        let mut total = PolySeries::zero(self.rank, order);
        for simplex in self.triangulate_face(idx) {
            total = &total + &simplex_integral(self.rank, &simplex.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>(), order);
        }
        Ok(total)
    }

    /// `Σ_F r(σ_{P,F})(−ξ) · I(F)(ξ)`.
    pub fn euler_maclaurin_series(&self, engine: &mut ToddEngine) -> Result<PolySeries> {
        let order = engine.order();
        if engine.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: engine.rank() });
        }
        if self.dim() == 0 {
            return Ok(exp_linear(&LinearForm::from_ints(&self.vertices[0]), order));
        }
        let identity: Vec<LinearForm> = (0..self.rank).map(|i| LinearForm::unit(self.rank, i)).collect();
        let mut total = PolySeries::zero(self.rank, order);
        for (idx, face) in self.faces.iter().enumerate() {
            let r = engine.r_general(&face.normal_cone)?;
            let r_neg = r.substitute(&identity, self.rank, true)?;
            total = &total + &(&r_neg * &self.exp_integral_series(idx, order)?);
        }
        Ok(total)
    }

    /// Lattice-point count as the constant term of the Euler–Maclaurin
    /// series, checked against enumeration.
    pub fn count_lattice_points(&self, engine: &mut ToddEngine, budget: u64) -> Result<LatticeCount> {
        let em = self.euler_maclaurin_series(engine)?.constant_term();
        let enumeration = self.lattice_points(budget)?.len() as u64;
        if em != Rational::from_integer(enumeration.into()) {
            return Err(Error::Verification(format!("EM={em}, enumeration={enumeration}")));
        }
        Ok(LatticeCount { euler_maclaurin: em, enumeration })
    }
}

/// Inner facet normals and offsets from `n`-subsets of vertices.
fn compute_facets(rank: usize, verts: &[IntVec]) -> Result<Vec<(IntVec, Rational)>> {
    let mut out: Vec<(IntVec, Rational)> = Vec::new();
    for subset in linalg::combinations(verts.len(), rank) {
        let base = &verts[subset[0]];
        let rows: Vec<Vec<Rational>> = subset[1..].iter().map(|&i| linalg::to_rational(&sub(&verts[i], base))).collect();
        let null = linalg::nullspace(&rows, rank);
        if null.len() != 1 {
            continue;
        }
        let mut normal = linalg::primitive_from_rational(&null[0])?;
        let values: Vec<i64> = verts.iter().map(|v| linalg::dot_int(&normal, v)).collect();
        let at = linalg::dot_int(&normal, base);
        let above = values.iter().all(|&x| x >= at);
        let below = values.iter().all(|&x| x <= at);
        if !above && !below {
            continue;
        }
        let mut offset = at;
        if !above {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -at;
        }
        let entry = (normal, Rational::from_integer(offset.into()));
        if !out.contains(&entry) {
            out.push(entry);
        }
    }
    out.sort();
    Ok(out)
}

/// `∫_Δ e^ℓ` over a lattice simplex in its relative lattice measure:
/// `g · Σ_k h_k(ℓ(p_0), …, ℓ(p_d)) / (k + d)!` where `g` is the gcd of the
/// maximal minors of the edge matrix.
fn simplex_integral(rank: usize, pts: &[IntVec], order: u32) -> PolySeries {
    let d = pts.len() - 1;
    let edges: Vec<IntVec> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    let g = linalg::max_minor_gcd(&edges, rank);
    let forms: Vec<PolySeries> = pts.iter().map(|p| LinearForm::from_ints(p).to_series(order)).collect();
    // h[k] = h_k of the forms seen so far
    let mut h: Vec<PolySeries> = (0..=order).map(|_| PolySeries::zero(rank, order)).collect();
    h[0] = PolySeries::one(rank, order);
    let mut first = true;
    for f in &forms {
        if first {
            for k in 1..=order as usize {
                h[k] = &h[k - 1] * f;
            }
            first = false;
            continue;
        }
        for k in 1..=order as usize {
            h[k] = &h[k] + &(&h[k - 1] * f);
        }
    }
    let mut fact = Rational::one();
    for i in 2..=d {
        fact *= Rational::from_integer((i as i64).into());
    }
    let mut out = PolySeries::zero(rank, order);
    for (k, hk) in h.iter().enumerate() {
        if k > 0 {
            fact *= Rational::from_integer(((k + d) as i64).into());
        }
        out = &out + &hk.scale(&fact.recip());
    }
    out.scale(&Rational::from_integer(g))
}

/// `S(K)` or `I(K)` of a nonsingular cone `K ⊂ M` as a germ in `ξ`:
/// `S(K) = ∏ 1/(1 − e^{v_i})`, `I(K) = (−1)^k / ∏ v_i`. A cone containing a
/// line gives zero.
pub fn cone_germ(rank: usize, generators: &[IntVec], kind: GermKind, order: u32) -> Result<MeromorphicGerm> {
    if generators.is_empty() {
        return Ok(MeromorphicGerm::from_series(PolySeries::one(rank, order)));
    }
    let cone = Cone::new(rank, generators.to_vec())?;
    if !cone.is_pointed() {
        return Ok(MeromorphicGerm::from_series(PolySeries::zero(rank, order)));
    }
    if !cone.is_smooth() {
        return Err(Error::NotSmooth);
    }
    let forms: Vec<LinearForm> = cone.generators().iter().map(|g| LinearForm::from_ints(g)).collect();
    let num = match kind {
        GermKind::I => {
            let sign = if forms.len().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            PolySeries::constant(rank, order, sign)
        }
        GermKind::S => {
            // 1/(1 − e^v) = −g(−v)/v
            let g = g_univariate(order);
            let mut num = PolySeries::one(rank, order);
            for v in &forms {
                num = &num * &-univariate_compose(&g, &-v, order);
            }
            num
        }
    };
    MeromorphicGerm::new(num, forms)
}
