//! Exact convex geometry over a lattice: polyhedral cones with their face
//! lattice, Newton polyhedra with recession cones, compact facets, Minkowski
//! sums and supporting faces.
//!
//! Facets of cones are found incrementally (beneath-beyond) in exact integer
//! arithmetic. Polyhedra are handled through their homogenization (points at
//! height 1, rays at height 0).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{add, dot, hyperplane_normal, is_zero, primitive, rank, sub, DualVector, IntVec, Lattice};

/// Calls `f` with every `k`-subset of `0..n`, in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Greedy maximal linearly independent subfamily.
fn independent_subset<'a>(vectors: impl IntoIterator<Item = &'a IntVec>, limit: usize) -> Vec<IntVec> {
    let mut chosen: Vec<IntVec> = Vec::new();
    for v in vectors {
        if chosen.len() == limit {
            break;
        }
        chosen.push(v.clone());
        if rank(&chosen) < chosen.len() {
            chosen.pop();
        }
    }
    chosen
}

/// Sign-fixes `n` so that it is nonnegative on `pts`, using the first point
/// off the hyperplane.
fn orient<'a>(n: IntVec, pts: impl IntoIterator<Item = &'a IntVec>) -> IntVec {
    for p in pts {
        let s = dot(&n, p);
        if s.is_negative() {
            return n.iter().map(|x| -x).collect();
        }
        if s.is_positive() {
            return n;
        }
    }
    n
}

/// Inner facet normals of the cone spanned by `gens`, which must be
/// full-dimensional in `ℤ^dim`. Output is sorted and primitive.
///
/// Beneath-beyond: start from a simplicial cone on `dim` independent
/// generators and add the rest one at a time. A new generator replaces the
/// facets it sees by the hyperplanes through itself and the ridges between
/// seen and unseen facets.
fn full_cone_facets(gens: &[IntVec], dim: usize) -> Vec<IntVec> {
    let nonzero: Vec<&IntVec> = gens.iter().filter(|g| !is_zero(g)).collect();
    if dim == 0 {
        return Vec::new();
    }
    if dim == 1 {
        let pos = nonzero.iter().any(|g| g[0].is_positive());
        let neg = nonzero.iter().any(|g| g[0].is_negative());
        return match (pos, neg) {
            (true, false) => vec![vec![BigInt::from(1)]],
            (false, true) => vec![vec![BigInt::from(-1)]],
            _ => Vec::new(),
        };
    }
    let simplex = independent_subset(nonzero.iter().copied(), dim);
    debug_assert_eq!(simplex.len(), dim, "generators must span");
    let mut facets: Vec<IntVec> = (0..dim)
        .map(|skip| {
            let others: Vec<IntVec> =
                simplex.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect();
            let n = hyperplane_normal(&others, dim).expect("independent");
            orient(n, [&simplex[skip]])
        })
        .collect();
    let mut inserted = simplex.clone();
    for g in nonzero {
        if simplex.contains(g) {
            continue;
        }
        let seen: Vec<bool> = facets.iter().map(|n| dot(n, g).is_negative()).collect();
        if seen.iter().any(|&x| x) {
            let mut next: BTreeSet<IntVec> =
                facets.iter().zip(&seen).filter(|(_, &s)| !s).map(|(n, _)| n.clone()).collect();
            for (v, _) in facets.iter().zip(&seen).filter(|(_, &s)| s) {
                for (h, _) in facets.iter().zip(&seen).filter(|(_, &s)| !s) {
                    let ridge = inserted.iter().filter(|x| dot(v, x).is_zero() && dot(h, x).is_zero());
                    let mut basis = independent_subset(ridge, dim - 2);
                    if basis.len() != dim - 2 {
                        continue;
                    }
                    basis.push(g.clone());
                    if let Some(n) = hyperplane_normal(&basis, dim) {
                        next.insert(orient(n, inserted.iter().chain([g])));
                    }
                }
            }
            facets = next.into_iter().collect();
        }
        inserted.push(g.clone());
    }
    facets.sort();
    facets.dedup();
    facets
}

/// One face of a [`PolyCone`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub dim: usize,
    /// Indices into the cone's generator list of the (nonzero) generators on
    /// the face. This is also the face's stable external identifier.
    pub generator_indices: Vec<usize>,
    /// ℤ-span of the generators on the face, in ambient coordinates.
    pub span_lattice: Lattice,
    /// Indices of the facets containing the face.
    pub facet_indices: Vec<usize>,
}

/// A polyhedral cone together with its full face lattice.
#[derive(Clone, Debug)]
pub struct PolyCone {
    pub lattice: Lattice,
    /// `lattice ∩ span_ℝ(generators)`; facet normals live in its dual.
    pub coord_lattice: Lattice,
    pub generators: Vec<IntVec>,
    pub facet_normals: Vec<DualVector>,
    /// Sorted by dimension, then by generator indices.
    pub faces: Vec<FaceDescriptor>,
    gen_coords: Vec<IntVec>,
}

/// Builds `cone(vectors)` inside `lattice` and enumerates its faces.
/// Zero vectors are ignored; duplicates are kept (both indices appear on
/// the faces containing them).
pub fn cone_from_generators(vectors: &[IntVec], lattice: &Lattice) -> Result<PolyCone> {
    if vectors.is_empty() {
        return Err(Error::NoGenerators);
    }
    for v in vectors {
        if v.len() != lattice.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: lattice.ambient_dim(), found: v.len() });
        }
        lattice.coords_in_basis(v)?;
    }
    let coord_lattice = lattice.saturated_sublattice(vectors)?;
    let gen_coords = vectors.iter().map(|v| coord_lattice.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
    let dim = coord_lattice.rank();
    let normals = full_cone_facets(&gen_coords, dim);

    let nonzero: BTreeSet<usize> = (0..vectors.len()).filter(|&i| !is_zero(&gen_coords[i])).collect();
    let zero_sets: Vec<BTreeSet<usize>> = normals
        .iter()
        .map(|n| nonzero.iter().copied().filter(|&i| dot(n, &gen_coords[i]).is_zero()).collect())
        .collect();

    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = vec![nonzero.clone()];
    found.insert(nonzero);
    while let Some(face) = queue.pop() {
        for z in &zero_sets {
            let next: BTreeSet<usize> = face.intersection(z).copied().collect();
            if found.insert(next.clone()) {
                queue.push(next);
            }
        }
    }

    let mut faces = Vec::with_capacity(found.len());
    for set in found {
        let members: Vec<IntVec> = set.iter().map(|&i| vectors[i].clone()).collect();
        let span_lattice = Lattice::from_generators(lattice.ambient_dim(), &members)?;
        let facet_indices = (0..normals.len()).filter(|&f| set.is_subset(&zero_sets[f])).collect();
        faces.push(FaceDescriptor {
            dim: span_lattice.rank(),
            generator_indices: set.into_iter().collect(),
            span_lattice,
            facet_indices,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.generator_indices).cmp(&(b.dim, &b.generator_indices)));

    Ok(PolyCone {
        lattice: lattice.clone(),
        coord_lattice,
        generators: vectors.to_vec(),
        facet_normals: normals.into_iter().map(DualVector::new).collect(),
        faces,
        gen_coords,
    })
}

/// True iff the cone contains no line, i.e. `{0}` is one of its faces.
pub fn is_strongly_convex(c: &PolyCone) -> bool {
    c.faces.first().is_some_and(|f| f.dim == 0)
}

impl PolyCone {
    pub fn dim(&self) -> usize {
        self.coord_lattice.rank()
    }

    /// Generators of the cone written in `coord_lattice` coordinates.
    pub fn generator_coords(&self) -> &[IntVec] {
        &self.gen_coords
    }

    fn signs(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let c = self.coord_lattice.rational_coords(v).ok()?;
        Some(
            self.facet_normals
                .iter()
                .map(|n| n.coords.iter().zip(&c).map(|(a, b)| BigRational::from(a.clone()) * b).sum())
                .collect(),
        )
    }

    /// Membership of an ambient vector in the real cone.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.signs(v).is_some_and(|s| s.iter().all(|x| !x.is_negative()))
    }

    /// Membership of an ambient vector in the real face.
    pub fn face_contains(&self, face: &FaceDescriptor, v: &[BigInt]) -> bool {
        match self.signs(v) {
            Some(s) => {
                s.iter().all(|x| !x.is_negative()) && face.facet_indices.iter().all(|&f| s[f].is_zero())
            }
            None => false,
        }
    }

    /// The nonzero generators lying on `face`, in ambient coordinates.
    pub fn face_generators(&self, face: &FaceDescriptor) -> Vec<IntVec> {
        face.generator_indices.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn find_face(&self, generator_indices: &[usize]) -> Option<&FaceDescriptor> {
        self.faces.iter().find(|f| f.generator_indices == generator_indices)
    }

    /// A functional strictly positive on every nonzero point of a pointed
    /// full-dimensional cone: the sum of the facet normals.
    pub fn interior_functional(&self) -> IntVec {
        let mut acc = vec![BigInt::zero(); self.dim()];
        for n in &self.facet_normals {
            acc = add(&acc, &n.coords);
        }
        acc
    }
}

/// `conv(points) + cone(rays)` in the coordinates of `lattice`
/// (`ℤ^rank`). Always kept canonical: `points` is exactly the sorted vertex
/// set and `rays` the sorted, deduplicated primitive ray directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolyhedron {
    pub lattice: Lattice,
    pub points: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

struct Homogenized {
    /// Saturated span of the homogenized generators in `ℤ^(r+1)`.
    span: Lattice,
    /// Generators in `span` coordinates.
    coords: Vec<IntVec>,
    /// Facet normals in `span` coordinates.
    normals: Vec<IntVec>,
}

fn homogenize(points: &[IntVec], rays: &[IntVec], r: usize) -> Result<Homogenized> {
    let mut gens: Vec<IntVec> = points
        .iter()
        .map(|p| {
            let mut h = p.clone();
            h.push(BigInt::from(1));
            h
        })
        .collect();
    gens.extend(rays.iter().map(|v| {
        let mut h = v.clone();
        h.push(BigInt::zero());
        h
    }));
    let ambient = Lattice::standard(r + 1);
    let span = ambient.saturated_sublattice(&gens)?;
    let coords = gens.iter().map(|g| span.coords_in_basis(g)).collect::<Result<Vec<_>>>()?;
    let normals = full_cone_facets(&coords, span.rank());
    Ok(Homogenized { span, coords, normals })
}

impl LatticePolyhedron {
    /// Builds and canonicalizes `conv(points) + cone(rays)`.
    pub fn new(lattice: Lattice, points: Vec<IntVec>, rays: Vec<IntVec>) -> Result<Self> {
        let r = lattice.rank();
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        for v in points.iter().chain(&rays) {
            if v.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: v.len() });
            }
        }
        let points: Vec<IntVec> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let rays: Vec<IntVec> = rays
            .iter()
            .filter(|v| !is_zero(v))
            .map(|v| primitive(v).expect("nonzero"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if points.len() == 1 {
            return Ok(LatticePolyhedron { lattice, points, rays });
        }
        let h = homogenize(&points, &rays, r)?;
        let s = h.span.rank();
        let vertices: Vec<IntVec> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let tight: Vec<IntVec> =
                    h.normals.iter().filter(|n| dot(n, &h.coords[*i]).is_zero()).cloned().collect();
                rank(&tight) + 1 == s
            })
            .map(|(_, p)| p.clone())
            .collect();
        if vertices.is_empty() {
            return Err(Error::Invariant("recession cone contains a line".into()));
        }
        Ok(LatticePolyhedron { lattice, points: vertices, rays })
    }

    /// A bounded polyhedron.
    pub fn polytope(lattice: Lattice, points: Vec<IntVec>) -> Result<Self> {
        Self::new(lattice, points, Vec::new())
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        let mut dirs: Vec<IntVec> = self.points[1..].iter().map(|p| sub(p, &self.points[0])).collect();
        dirs.extend(self.rays.iter().cloned());
        rank(&dirs)
    }

    /// Does the real polyhedron contain `x` (lattice coordinates)?
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut pts = self.points.clone();
        pts.push(x.to_vec());
        match LatticePolyhedron::new(self.lattice.clone(), pts, self.rays.clone()) {
            Ok(p) => p.points == self.points && p.dim() == self.dim(),
            Err(_) => false,
        }
    }
}

/// `conv(support) + cone`, with the support given in ambient coordinates.
pub fn newton_polyhedron(support: &[IntVec], cone: &PolyCone) -> Result<LatticePolyhedron> {
    if support.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let points = support.iter().map(|v| cone.coord_lattice.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
    let rays = cone.gen_coords.iter().filter(|g| !is_zero(g)).cloned().collect();
    LatticePolyhedron::new(cone.coord_lattice.clone(), points, rays)
}

/// `Γ₊ ∩ Δ` expressed in coordinates of the face lattice `face.span_lattice`.
/// `None` when the polyhedron misses the face.
///
/// `p` must be in `cone.coord_lattice` coordinates, as produced by
/// [`newton_polyhedron`]. Vertices on the face must lie in the face lattice,
/// which holds for Newton polyhedra of semigroup elements.
pub fn restrict_to_face(
    p: &LatticePolyhedron,
    cone: &PolyCone,
    face: &FaceDescriptor,
) -> Result<Option<LatticePolyhedron>> {
    if p.lattice != cone.coord_lattice {
        return Err(Error::LatticeMismatch);
    }
    let on_face: Vec<IntVec> = p
        .points
        .iter()
        .map(|c| cone.coord_lattice.from_coords(c))
        .filter(|v| cone.face_contains(face, v))
        .collect();
    if on_face.is_empty() {
        return Ok(None);
    }
    let lat = &face.span_lattice;
    let points = on_face.iter().map(|v| lat.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
    let rays =
        cone.face_generators(face).iter().map(|v| lat.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
    LatticePolyhedron::new(Lattice::standard(lat.rank()), points, rays).map(Some)
}

/// A bounded facet of a full-dimensional polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactFacet {
    pub vertex_set: Vec<IntVec>,
    /// Primitive inner normal, strictly positive on every ray.
    pub normal: DualVector,
    pub min_value: BigInt,
    pub dim: usize,
}

/// All bounded facets of `p`, sorted by normal.
///
/// A single point without rays has no facets. Any other polyhedron must be
/// full-dimensional in its lattice.
pub fn compact_facets(p: &LatticePolyhedron) -> Result<Vec<CompactFacet>> {
    let r = p.lattice.rank();
    if p.points.len() == 1 && p.rays.is_empty() {
        return Ok(Vec::new());
    }
    if r == 0 || p.dim() != r {
        return Err(Error::DegeneratePolyhedron);
    }
    let h = homogenize(&p.points, &p.rays, r)?;
    debug_assert_eq!(h.span, Lattice::standard(r + 1));
    let mut facets = Vec::new();
    for n in &h.normals {
        let u: IntVec = n[..r].to_vec();
        if is_zero(&u) {
            continue;
        }
        if !p.rays.iter().all(|ray| dot(&u, ray).is_positive()) {
            continue;
        }
        let vertex_set: Vec<IntVec> =
            p.points.iter().zip(&h.coords).filter(|(_, c)| dot(n, c).is_zero()).map(|(v, _)| v.clone()).collect();
        let min_value = dot(&u, &vertex_set[0]);
        facets.push(CompactFacet { vertex_set, normal: DualVector::new(u), min_value, dim: r - 1 });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    Ok(facets)
}

/// Points of `support` minimizing `⟨u, ·⟩`, sorted.
pub fn supporting_face(support: &[IntVec], u: &DualVector) -> Vec<IntVec> {
    let Some(min) = support.iter().map(|v| u.eval(v)).min() else { return Vec::new() };
    let mut out: Vec<IntVec> = support.iter().filter(|v| u.eval(v) == min).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// `a + b`; the rays of the result are the union of both ray sets.
pub fn minkowski_sum(a: &LatticePolyhedron, b: &LatticePolyhedron) -> Result<LatticePolyhedron> {
    if a.lattice != b.lattice {
        return Err(Error::LatticeMismatch);
    }
    let mut points = Vec::with_capacity(a.points.len() * b.points.len());
    for x in &a.points {
        for y in &b.points {
            points.push(add(x, y));
        }
    }
    let rays = a.rays.iter().chain(&b.rays).cloned().collect();
    LatticePolyhedron::new(a.lattice.clone(), points, rays)
}
