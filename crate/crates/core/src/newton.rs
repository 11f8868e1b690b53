//! Semigroup presentations and polynomials supported on them.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, fmt_vec, is_zero, DualVector, IntVec, Lattice};
use crate::polyhedra::{cone_from_generators, is_strongly_convex, FaceDescriptor, PolyCone};

/// A face `Δ` of `K(S)` together with the lattice `M(S ∩ Δ)`.
///
/// Coordinates on the face are taken in the Hermite basis of `sublattice`;
/// dual vectors on the face use the dual of that basis.
#[derive(Clone, Debug)]
pub struct FaceContext {
    pub face: FaceDescriptor,
    pub span_dim: usize,
    pub sublattice: Lattice,
}

impl FaceContext {
    /// Sorted indices of the generators lying on the face.
    pub fn key(&self) -> &[usize] {
        &self.face.generator_indices
    }

    /// Coordinates of an ambient vector of `M(S ∩ Δ)`.
    pub fn coords(&self, v: &[BigInt]) -> Result<IntVec> {
        self.sublattice.coords_in_basis(v)
    }

    pub fn from_coords(&self, c: &[BigInt]) -> IntVec {
        self.sublattice.from_coords(c)
    }

    /// For points of `S`: lying on `Δ` is the same as lying in its span.
    pub fn contains_semigroup_point(&self, v: &[BigInt]) -> bool {
        self.sublattice.rational_coords(v).is_ok()
    }
}

/// `S = ⟨generators⟩` with its cone, lattice and faces.
#[derive(Clone, Debug)]
pub struct SemigroupPresentation {
    pub ambient_dim: usize,
    pub generators: Vec<IntVec>,
    pub cone: PolyCone,
    pub lattice: Lattice,
    pub faces: Vec<FaceContext>,
}

/// Builds and validates a presentation: `K(S)` must be strongly convex and
/// full-dimensional.
pub fn build_presentation(generators: &[IntVec]) -> Result<SemigroupPresentation> {
    let Some(first) = generators.first() else { return Err(Error::NoGenerators) };
    let n = first.len();
    for g in generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
    }
    let lattice = Lattice::from_generators(n, generators)?;
    let cone = cone_from_generators(generators, &lattice)?;
    if !is_strongly_convex(&cone) {
        return Err(Error::NotStronglyConvex);
    }
    if cone.dim() < n {
        return Err(Error::RankDeficient { rank: cone.dim(), ambient: n });
    }
    let faces = cone
        .faces
        .iter()
        .map(|f| FaceContext { face: f.clone(), span_dim: f.dim, sublattice: f.span_lattice.clone() })
        .collect();
    Ok(SemigroupPresentation { ambient_dim: n, generators: generators.to_vec(), cone, lattice, faces })
}

impl SemigroupPresentation {
    pub fn face(&self, key: &[usize]) -> Option<&FaceContext> {
        self.faces.iter().find(|f| f.key() == key)
    }

    pub fn full_face(&self) -> &FaceContext {
        self.faces.last().expect("a presentation always has its full face")
    }
}

/// Decides whether `v` is a nonnegative integer combination of the
/// generators.
pub fn semigroup_membership(v: &[BigInt], s: &SemigroupPresentation) -> bool {
    if v.len() != s.ambient_dim {
        return false;
    }
    if is_zero(v) {
        return true;
    }
    let Ok(target) = s.cone.coord_lattice.coords_in_basis(v) else { return false };
    if !s.cone.contains(v) {
        return false;
    }
    let ell = s.cone.interior_functional();
    let mut gens: Vec<(IntVec, BigInt)> = s
        .cone
        .generator_coords()
        .iter()
        .filter(|g| !is_zero(g))
        .map(|g| (g.clone(), dot(&ell, g)))
        .collect();
    gens.sort();
    gens.dedup();
    // larger steps first keeps the search shallow
    gens.sort_by(|a, b| b.1.cmp(&a.1));
    let mut dead = HashSet::new();
    search(&target, 0, &gens, &ell, &s.cone, &mut dead)
}

fn search(
    rem: &IntVec,
    idx: usize,
    gens: &[(IntVec, BigInt)],
    ell: &[BigInt],
    cone: &PolyCone,
    dead: &mut HashSet<(IntVec, usize)>,
) -> bool {
    if is_zero(rem) {
        return true;
    }
    if idx == gens.len() || dead.contains(&(rem.clone(), idx)) {
        return false;
    }
    let (g, lg) = &gens[idx];
    let bound = dot(ell, rem).div_floor(lg).to_usize().unwrap_or(usize::MAX);
    for c in (0..=bound).rev() {
        let cb = BigInt::from(c);
        let next: IntVec = rem.iter().zip(g).map(|(r, x)| r - &cb * x).collect();
        let in_cone = cone
            .facet_normals
            .iter()
            .all(|u| !u.eval(&next).is_negative());
        if in_cone && search(&next, idx + 1, gens, ell, cone, dead) {
            return true;
        }
    }
    dead.insert((rem.clone(), idx));
    false
}

/// `f = Σ a_v x^v` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ToricPolynomial {
    pub terms: BTreeMap<IntVec, BigRational>,
}

impl ToricPolynomial {
    /// Merges repeated exponents and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (IntVec, BigRational)>) -> Self {
        let mut map: BTreeMap<IntVec, BigRational> = BTreeMap::new();
        for (v, c) in terms {
            *map.entry(v).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        ToricPolynomial { terms: map }
    }

    pub fn from_i64(terms: &[(&[i64], i64)]) -> Self {
        Self::new(terms.iter().map(|(v, c)| (crate::lattice::ivec(v), BigRational::from(BigInt::from(*c)))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<IntVec> {
        self.terms.keys().cloned().collect()
    }

    /// Checks that every exponent lies in `S`.
    pub fn validate_in(&self, s: &SemigroupPresentation) -> Result<()> {
        let mut bad = Vec::new();
        for v in self.terms.keys() {
            if v.len() != s.ambient_dim {
                return Err(Error::DimensionMismatch { expected: s.ambient_dim, found: v.len() });
            }
            if !semigroup_membership(v, s) {
                bad.push(fmt_vec(v));
            }
        }
        if bad.is_empty() { Ok(()) } else { Err(Error::NotInSemigroup(bad)) }
    }
}

/// `f(0) = 0`, i.e. no constant term, and `f ≠ 0`.
pub fn validate_vanishing(f: &ToricPolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.terms.keys().any(|v| is_zero(v)) {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

/// The terms of `f|Δ` minimizing `⟨u, ·⟩`, with `u` in face coordinates.
pub fn u_part(f: &ToricPolynomial, ctx: &FaceContext, u: &DualVector) -> Result<ToricPolynomial> {
    if u.coords.len() != ctx.span_dim {
        return Err(Error::DimensionMismatch { expected: ctx.span_dim, found: u.coords.len() });
    }
    let mut on_face = Vec::new();
    for (v, c) in &f.terms {
        if ctx.contains_semigroup_point(v) {
            on_face.push((v, c, u.eval(&ctx.coords(v)?)));
        }
    }
    let min = on_face.iter().map(|t| t.2.clone()).min().ok_or(Error::EmptyRestriction)?;
    Ok(ToricPolynomial::new(
        on_face.into_iter().filter(|t| t.2 == min).map(|(v, c, _)| (v.clone(), c.clone())),
    ))
}
