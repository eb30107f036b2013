//! Cones and fans in `N = Z^n`.
//!
//! Cones are stored by primitive generators. Face structure comes from a
//! brute-force facet search over generator subsets, which is plenty for the
//! handful of generators a desk-scale fan carries.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

pub type IntVec = Vec<i64>;

/// Divides `v` by the gcd of its coordinates.
pub fn primitive(v: &[i64]) -> Result<IntVec> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)) == 1
}

/// A lattice basis of `Z^n` whose first `k` vectors span the saturation
/// `L ∩ Z^n` of a subspace `L`.
///
/// Coordinates of `v` in this basis are `v · U`; the first `k` are
/// coordinates in the sublattice, the rest are coordinates in the quotient
/// `Z^n / (L ∩ Z^n)`. Columns of `U` form the dual basis of `M`, so the
/// last `n - k` columns span `L^⊥ ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    ambient: usize,
    k: usize,
    u: Vec<IntVec>,
    uinv: Vec<IntVec>,
}

impl AdaptedBasis {
    pub fn new(ambient: usize, spanning: &[IntVec]) -> Result<Self> {
        for v in spanning {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        let (k, u, uinv) = linalg::column_hermite(spanning, ambient)?;
        Ok(Self { ambient, k, u, uinv })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Rank of the sublattice.
    pub fn sub_rank(&self) -> usize {
        self.k
    }

    /// Lattice basis of the saturated sublattice.
    pub fn sub_basis(&self) -> Vec<IntVec> {
        self.uinv[..self.k].to_vec()
    }

    pub fn coords(&self, v: &[i64]) -> IntVec {
        (0..self.ambient).map(|j| (0..self.ambient).map(|i| v[i] * self.u[i][j]).sum()).collect()
    }

    pub fn coords_rational(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.ambient)
            .map(|j| {
                (0..self.ambient).fold(Rational::zero(), |acc, i| acc + &v[i] * Rational::from_integer(self.u[i][j].into()))
            })
            .collect()
    }

    /// Basis vector `j` of the dual lattice `M` (column `j` of `U`).
    pub fn dual_vector(&self, j: usize) -> IntVec {
        (0..self.ambient).map(|i| self.u[i][j]).collect()
    }

    /// Lattice basis of `L^⊥ ∩ M`.
    pub fn annihilator_basis(&self) -> Vec<IntVec> {
        (self.k..self.ambient).map(|j| self.dual_vector(j)).collect()
    }

    /// Extends a functional given on the sublattice basis to `M_Q` by zero on
    /// the complementary basis vectors.
    pub fn lift_functional(&self, f: &[Rational]) -> Vec<Rational> {
        (0..self.ambient)
            .map(|i| {
                (0..self.k).fold(Rational::zero(), |acc, j| acc + &f[j] * Rational::from_integer(self.u[i][j].into()))
            })
            .collect()
    }

    /// Ambient vector with the given coordinates.
    pub fn from_coords(&self, c: &[i64]) -> IntVec {
        (0..self.ambient).map(|j| (0..self.ambient).map(|i| c[i] * self.uinv[i][j]).sum()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Facet {
    /// inner normal in sublattice coordinates, primitive integral
    normal_sub: Vec<Rational>,
    /// generator indices lying on the facet
    members: Vec<usize>,
}

/// A rational polyhedral cone given by primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    gens: Vec<IntVec>,
    basis: AdaptedBasis,
    facets: Vec<Facet>,
}

impl Cone {
    /// Builds the cone spanned by `gens`. Generators are primitivized and
    /// deduplicated; for pointed cones generators that are not extremal rays
    /// are dropped.
    pub fn new(ambient: usize, gens: Vec<IntVec>) -> Result<Self> {
        let mut prim: Vec<IntVec> = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
            }
            let p = primitive(g)?;
            if !prim.contains(&p) {
                prim.push(p);
            }
        }
        let cone = Self::build(ambient, prim)?;
        if cone.is_pointed() {
            let extremal = cone.extremal_indices();
            if extremal.len() < cone.gens.len() {
                let gens = extremal.iter().map(|&i| cone.gens[i].clone()).collect();
                return Self::build(ambient, gens);
            }
        }
        Ok(cone)
    }

    pub fn zero(ambient: usize) -> Self {
        Self::build(ambient, Vec::new()).expect("zero cone")
    }

    fn build(ambient: usize, gens: Vec<IntVec>) -> Result<Self> {
        let basis = AdaptedBasis::new(ambient, &gens)?;
        let k = basis.sub_rank();
        let sub: Vec<Vec<Rational>> = gens.iter().map(|g| linalg::to_rational(&basis.coords(g)[..k])).collect();
        let facets = compute_facets(&sub, k);
        Ok(Self { ambient, gens, basis, facets })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.basis.sub_rank()
    }

    /// Lattice basis adapted to the span of the cone.
    pub fn span_basis(&self) -> &AdaptedBasis {
        &self.basis
    }

    pub fn is_simplicial(&self) -> bool {
        self.gens.len() == self.dim()
    }

    pub fn is_pointed(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return true;
        }
        let normals: Vec<Vec<Rational>> = self.facets.iter().map(|f| f.normal_sub.clone()).collect();
        linalg::rank(&normals, k) == k
    }

    /// Smooth iff simplicial with generators forming a basis of `N_σ`.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && linalg::max_minor_gcd(&self.gens, self.ambient).is_one()
    }

    /// Index of the generator sublattice in `N_σ`.
    pub fn multiplicity(&self) -> Result<u64> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        if self.gens.is_empty() {
            return Ok(1);
        }
        linalg::max_minor_gcd(&self.gens, self.ambient).abs().to_u64().ok_or(Error::Overflow)
    }

    fn extremal_indices(&self) -> Vec<usize> {
        let k = self.dim();
        (0..self.gens.len())
            .filter(|&i| {
                let normals: Vec<Vec<Rational>> = self
                    .facets
                    .iter()
                    .filter(|f| f.members.contains(&i))
                    .map(|f| f.normal_sub.clone())
                    .collect();
                linalg::rank(&normals, k) + 1 == k
            })
            .collect()
    }

    /// Faces as sets of generator indices, smallest first. Includes the cone
    /// itself and, for pointed cones, the zero face `[]`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.gens.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        while let Some(f) = queue.pop() {
            for facet in &self.facets {
                let inter: Vec<usize> = f.iter().copied().filter(|i| facet.members.contains(i)).collect();
                if seen.insert(inter.clone()) {
                    queue.push(inter);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Generator sets of the facets (codimension-one faces).
    pub fn facet_members(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.members.clone()).collect()
    }

    /// Sub-cone spanned by a subset of the generators.
    pub fn sub_cone(&self, idx: &[usize]) -> Cone {
        Cone::build(self.ambient, idx.iter().map(|&i| self.gens[i].clone()).collect()).expect("sub-cone of a valid cone")
    }

    /// Membership test for a rational vector of `N_Q`.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let c = self.basis.coords_rational(v);
        let k = self.dim();
        if c[k..].iter().any(|x| !x.is_zero()) {
            return false;
        }
        self.facets.iter().all(|f| !linalg::dot(&f.normal_sub, &c[..k]).is_negative())
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        self.contains(&linalg::to_rational(v))
    }

    /// True iff both cones are the same set.
    pub fn same_set(&self, other: &Cone) -> bool {
        self.ambient == other.ambient
            && self.gens.iter().all(|g| other.contains_int(g))
            && other.gens.iter().all(|g| self.contains_int(g))
    }

    /// `{m : ⟨m, v⟩ ≥ 0 for all v ∈ σ}` as a cone in `M`.
    ///
    /// Supported for ambient rank ≤ 3, or for full-dimensional simplicial
    /// cones in any rank.
    pub fn dual(&self) -> Result<Cone> {
        if !(self.ambient <= 3 || (self.is_simplicial() && self.dim() == self.ambient)) {
            return Err(Error::Unsupported(format!(
                "dual of a {}-dimensional cone with {} generators in rank {}",
                self.dim(),
                self.gens.len(),
                self.ambient
            )));
        }
        let mut gens: Vec<IntVec> = Vec::new();
        for f in &self.facets {
            let m = self.basis.lift_functional(&f.normal_sub);
            gens.push(linalg::primitive_from_rational(&m)?);
        }
        for a in self.basis.annihilator_basis() {
            gens.push(a.iter().map(|x| -x).collect());
            gens.push(a);
        }
        Cone::new(self.ambient, gens)
    }

    /// Pulling triangulation from the first generator; returns simplicial
    /// cones of the same dimension.
    pub fn triangulate(&self) -> Result<Vec<Cone>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        if self.is_simplicial() {
            return Ok(vec![self.clone()]);
        }
        let apex = self.gens[0].clone();
        let mut out = Vec::new();
        for f in &self.facets {
            if f.members.contains(&0) {
                continue;
            }
            for piece in self.sub_cone(&f.members).triangulate()? {
                let mut gens = vec![apex.clone()];
                gens.extend(piece.gens.iter().cloned());
                out.push(Cone::build(self.ambient, gens)?);
            }
        }
        Ok(out)
    }

    /// Subdivides into smooth cones of the same dimension: triangulate, then
    /// stellar-subdivide singular simplicial pieces at the lattice point of the
    /// half-open fundamental parallelepiped with lexicographically minimal
    /// nonzero coefficient vector.
    pub fn subdivide_to_smooth(&self) -> Result<Vec<Cone>> {
        let mut out = Vec::new();
        for piece in self.triangulate()? {
            resolve_simplicial(piece, &mut out)?;
        }
        Ok(out)
    }

    /// Primitive generator of the image of `self` in `N(face) = N/N_face`,
    /// for `face` a maximal proper face of `self`. Returns the quotient
    /// coordinates and one integral lift to `N`.
    pub fn normal_generator(&self, face: &Cone) -> Result<(IntVec, IntVec)> {
        if face.dim() + 1 != self.dim() || !self.has_face(face) {
            return Err(Error::NotMaximalFace);
        }
        // work inside N_self so the lift lies in N_self
        let k = self.basis.k;
        let inner: Vec<IntVec> = face.gens.iter().map(|g| self.basis.coords(g)[..k].to_vec()).collect();
        let rel = AdaptedBasis::new(k, &inner)?;
        let mut unit = vec![0i64; k];
        unit[k - 1] = 1;
        let local = rel.from_coords(&unit);
        let mut full = local;
        full.extend(core::iter::repeat_n(0, self.ambient - k));
        let mut lift = self.basis.from_coords(&full);
        let q = QuotientLattice::new(face);
        let outward = self
            .gens
            .iter()
            .map(|g| q.project(g))
            .find(|p| p.iter().any(|&x| x != 0))
            .ok_or(Error::NotMaximalFace)?;
        let mut image = q.project(&lift);
        // image and outward are parallel; fix the sign
        let sign = image.iter().zip(&outward).map(|(a, b)| a * b).sum::<i64>();
        if sign < 0 {
            lift.iter_mut().for_each(|x| *x = -*x);
            image.iter_mut().for_each(|x| *x = -*x);
        }
        Ok((image, lift))
    }

    /// True iff `face` (as a set) is a face of `self`.
    pub fn has_face(&self, face: &Cone) -> bool {
        if !face.gens.iter().all(|g| self.contains_int(g)) {
            return false;
        }
        let inside: Vec<usize> = (0..self.gens.len()).filter(|&i| face.contains_int(&self.gens[i])).collect();
        self.faces().contains(&inside) && self.sub_cone(&inside).same_set(face)
    }
}

fn compute_facets(sub: &[Vec<Rational>], k: usize) -> Vec<Facet> {
    if k == 0 {
        return Vec::new();
    }
    let mut facets: Vec<Facet> = Vec::new();
    for subset in linalg::combinations(sub.len(), k - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| sub[i].clone()).collect();
        if linalg::rank(&rows, k) != k - 1 {
            continue;
        }
        let ns = linalg::nullspace(&rows, k);
        let mut normal = ns[0].clone();
        let vals: Vec<Rational> = sub.iter().map(|g| linalg::dot(&normal, g)).collect();
        let has_pos = vals.iter().any(|v| v.is_positive());
        let has_neg = vals.iter().any(|v| v.is_negative());
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            normal = normal.iter().map(|x| -x).collect();
        }
        let normal = linalg::to_rational(&linalg::primitive_from_rational(&normal).expect("nonzero normal"));
        if facets.iter().any(|f| f.normal_sub == normal) {
            continue;
        }
        let members = vals.iter().enumerate().filter(|(_, v)| v.is_zero()).map(|(i, _)| i).collect();
        facets.push(Facet { normal_sub: normal, members });
    }
    facets
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

fn resolve_simplicial(cone: Cone, out: &mut Vec<Cone>) -> Result<()> {
    if cone.multiplicity()? == 1 {
        out.push(cone);
        return Ok(());
    }
    let k = cone.dim();
    let a: Vec<Vec<Rational>> = cone
        .gens
        .iter()
        .map(|g| linalg::to_rational(&cone.basis.coords(g)[..k]))
        .collect();
    let ainv = linalg::inverse(&a).ok_or(Error::NotSimplicial)?;
    // coefficient vectors of the parallelepiped points form the group
    // generated by the fractional parts of the rows of A⁻¹
    let steps: Vec<Vec<Rational>> = ainv.iter().map(|r| r.iter().map(frac).collect()).collect();
    let mut group: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let zero = vec![Rational::zero(); k];
    group.insert(zero.clone());
    let mut queue = vec![zero.clone()];
    while let Some(x) = queue.pop() {
        for s in &steps {
            let y: Vec<Rational> = x.iter().zip(s).map(|(a, b)| frac(&(a + b))).collect();
            if group.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let lambda = group.into_iter().find(|v| *v != zero).ok_or(Error::NotSmooth)?;
    // point = λ · A in sublattice coordinates
    let mut coords = vec![0i64; cone.ambient];
    for j in 0..k {
        let s = (0..k).fold(Rational::zero(), |acc, i| acc + &lambda[i] * &a[i][j]);
        coords[j] = s.to_integer().to_i64().ok_or(Error::Overflow)?;
    }
    let point = primitive(&cone.basis.from_coords(&coords))?;
    for i in 0..k {
        if lambda[i].is_zero() {
            continue;
        }
        let mut gens = cone.gens.clone();
        gens[i] = point.clone();
        resolve_simplicial(Cone::build(cone.ambient, gens)?, out)?;
    }
    Ok(())
}

/// `N(σ) = N / N_σ` with integral projection and lift.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    basis: AdaptedBasis,
}

impl QuotientLattice {
    pub fn new(cone: &Cone) -> Self {
        Self { basis: cone.basis.clone() }
    }

    pub fn rank(&self) -> usize {
        self.basis.ambient - self.basis.k
    }

    pub fn project(&self, v: &[i64]) -> IntVec {
        self.basis.coords(v)[self.basis.k..].to_vec()
    }

    pub fn lift(&self, q: &[i64]) -> IntVec {
        let mut c = vec![0i64; self.basis.k];
        c.extend_from_slice(q);
        self.basis.from_coords(&c)
    }
}

/// A fan of cones in `N = Z^n`, each cone a set of ray indices.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVec>,
    cones: Vec<Vec<usize>>,
    dims: Vec<usize>,
    lookup: BTreeMap<Vec<usize>, usize>,
    cofaces: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds the fan generated by `cones` (ray-index sets). Faces are added
    /// automatically; rays must be primitive and every cone's rays must be
    /// exactly the fan rays it contains.
    pub fn new(rank: usize, rays: Vec<IntVec>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidFan("rank must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: r.len() });
            }
            if !is_primitive(r) {
                return Err(Error::InvalidFan(format!("ray {i} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {i} is repeated")));
            }
        }
        let mut generating: Vec<(Vec<usize>, Cone)> = Vec::new();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(Vec::new());
        for c in cones {
            let mut idx = c.clone();
            idx.sort_unstable();
            idx.dedup();
            if let Some(&bad) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of range")));
            }
            let gens: Vec<IntVec> = idx.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::build(rank, gens)?;
            if !cone.is_pointed() {
                return Err(Error::InvalidFan(format!("cone {idx:?} contains a line")));
            }
            if cone.extremal_indices().len() != idx.len() {
                return Err(Error::InvalidFan(format!("cone {idx:?} lists a non-extremal ray")));
            }
            for (r, ray) in rays.iter().enumerate() {
                if !idx.contains(&r) && cone.contains_int(ray) {
                    return Err(Error::InvalidFan(format!("cone {idx:?} contains ray {r} without listing it")));
                }
            }
            for face in cone.faces() {
                all.insert(face.iter().map(|&i| idx[i]).collect());
            }
            generating.push((idx, cone));
        }
        for i in 0..generating.len() {
            for j in i + 1..generating.len() {
                check_common_face(rank, &rays, &generating[i].0, &generating[j].0)?;
            }
        }
        let mut list: Vec<Vec<usize>> = all.into_iter().collect();
        list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let dims: Vec<usize> = list
            .iter()
            .map(|c| linalg::rank_int(&c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(), rank))
            .collect();
        let lookup = list.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let cofaces = (0..list.len())
            .map(|s| {
                (0..list.len())
                    .filter(|&t| dims[t] == dims[s] + 1 && list[s].iter().all(|r| list[t].contains(r)))
                    .collect()
            })
            .collect();
        Ok(Self { rank, rays, cones: list, dims, lookup, cofaces })
    }

    /// The fan of all faces of one pointed cone, with the cone's generators as
    /// rays.
    pub fn from_cone(cone: &Cone) -> Result<Self> {
        let idx = (0..cone.gens.len()).collect();
        Self::new(cone.ambient, cone.gens.clone(), vec![idx])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// All cones as sorted ray-index sets; index 0 is the zero cone.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone_id(&self, rays: &[usize]) -> Option<usize> {
        let mut k = rays.to_vec();
        k.sort_unstable();
        k.dedup();
        self.lookup.get(&k).copied()
    }

    pub fn cone_rays(&self, id: usize) -> &[usize] {
        &self.cones[id]
    }

    pub fn dim(&self, id: usize) -> usize {
        self.dims[id]
    }

    pub fn cone(&self, id: usize) -> Cone {
        Cone::build(self.rank, self.cones[id].iter().map(|&i| self.rays[i].clone()).collect()).expect("fan cone")
    }

    pub fn is_simplicial(&self) -> bool {
        (0..self.cones.len()).all(|i| self.cones[i].len() == self.dims[i])
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|i| self.cone(i).is_smooth())
    }

    /// Cones `τ` with `τ → σ` (σ a maximal proper face of τ).
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// Maximal proper faces of cone `id` that lie in the fan.
    pub fn maximal_proper_faces(&self, id: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&s| self.cofaces[s].contains(&id)).collect()
    }

    /// Label `V13` style (1-based ray indices); the zero cone is `V`.
    pub fn label(&self, id: usize) -> String {
        let rays = &self.cones[id];
        let sep = if self.rays.len() > 9 { "," } else { "" };
        let body: Vec<String> = rays.iter().map(|r| format!("{}", r + 1)).collect();
        format!("V{}", body.join(sep))
    }

    /// Inverse of [`Fan::label`].
    pub fn parse_label(&self, label: &str) -> Option<usize> {
        let body = label.strip_prefix('V').unwrap_or(label);
        let rays: Option<Vec<usize>> = if body.contains(',') {
            body.split(',').map(|s| s.trim().parse::<usize>().ok().and_then(|x| x.checked_sub(1))).collect()
        } else {
            body.chars().map(|c| c.to_digit(10).and_then(|d| (d as usize).checked_sub(1))).collect()
        };
        self.cone_id(&rays?)
    }
}

/// Two cones meet in a common face iff some linear functional vanishes on
/// their shared rays, is positive on the other rays of `a` and negative on
/// the other rays of `b`.
fn check_common_face(rank: usize, rays: &[IntVec], a: &[usize], b: &[usize]) -> Result<()> {
    let mut cons: Vec<(Vec<Rational>, bool)> = Vec::new();
    for &r in a.iter().chain(b.iter()) {
        let v = linalg::to_rational(&rays[r]);
        let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
        match (a.contains(&r), b.contains(&r)) {
            (true, true) => {
                cons.push((v, false));
                cons.push((neg, false));
            }
            (true, false) => cons.push((v, true)),
            _ => cons.push((neg, true)),
        }
    }
    if linalg::homogeneous_feasible(&cons, rank) {
        Ok(())
    } else {
        Err(Error::InvalidFan(format!("cones {a:?} and {b:?} do not meet in a common face")))
    }
}
