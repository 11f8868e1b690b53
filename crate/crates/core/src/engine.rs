//! Monodromy zeta functions at the fixed point: single hypersurfaces,
//! complete intersections and local systems on the orbits.
//!
//! Every pipeline walks the faces `Δ` of `K(S)` in their canonical order,
//! restricts the relevant Newton polyhedra to `Δ` (in the Hermite basis of
//! `M(S ∩ Δ)`), and multiplies one factor per compact facet. Results are
//! conditional on the non-degeneracy of the input, which is not checked.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, sub, DualVector, IntVec, Lattice};
use crate::matrix::RationalMatrix;
use crate::newton::{validate_vanishing, FaceContext, SemigroupPresentation, ToricPolynomial};
use crate::oracles::{check_mixed_volume, check_volume, CheckOutcome};
use crate::polyhedra::{
    compact_facets, minkowski_sum, newton_polyhedron, restrict_to_face, supporting_face, CompactFacet,
    LatticePolyhedron,
};
use crate::volumes::{compositions, cone_volume_identity_check, mixed_volume};
use crate::zeta::ZetaFactorization;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Evaluate faces on the rayon pool. Output order is unaffected.
    pub parallel: bool,
    /// Cross-check every volume and mixed volume against the oracles.
    pub check: bool,
}

/// Why a face contributes nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    EmptyIntersection,
    TooManyEquations { m: usize },
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::EmptyIntersection => f.write_str("Γ₊∩Δ empty"),
            SkipReason::TooManyEquations { .. } => f.write_str("m(Δ) > dim Δ"),
        }
    }
}

/// One compact facet `γ` of the restricted polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetRecord {
    /// Vertices of `γ` in ambient coordinates.
    pub vertices: Vec<IntVec>,
    /// Primitive inner normal in face coordinates.
    pub normal: DualVector,
    pub distance: u64,
    /// `Vol_ℤ(γ)`, or the mixed-volume sum `K` in complete-intersection mode.
    pub volume: BigInt,
    /// `Vol_ℤ(conv(γ ∪ {0}))`; single and sheaf modes only.
    pub pyramid_volume: Option<BigInt>,
    /// `(j, Γ(f_j|Δ; u))` in ambient coordinates; complete-intersection mode only.
    pub supporting_faces: Vec<(usize, Vec<IntVec>)>,
    pub exponent: BigInt,
    pub factor: ZetaFactorization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    /// Generator indices on the face.
    pub face: Vec<usize>,
    pub dim: usize,
    /// Equations meeting the face, `I(Δ) ∪ {k}` (0-based); `[0]` in single mode.
    pub involved: Vec<usize>,
    pub facets: Vec<FacetRecord>,
    pub skipped: Option<SkipReason>,
}

impl FaceReport {
    fn skipped(ctx: &FaceContext, involved: Vec<usize>, why: SkipReason) -> Self {
        FaceReport { face: ctx.key().to_vec(), dim: ctx.span_dim, involved, facets: Vec::new(), skipped: Some(why) }
    }

    /// Product of the facet factors.
    pub fn contribution(&self) -> ZetaFactorization {
        self.facets.iter().fold(ZetaFactorization::one(), |acc, r| acc.multiply(&r.factor))
    }
}

/// Oracle comparisons performed under [`Options::check`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub verified: usize,
    pub skipped: usize,
}

impl CheckTally {
    fn record(&mut self, o: CheckOutcome) {
        match o {
            CheckOutcome::Verified => self.verified += 1,
            CheckOutcome::Skipped(_) => self.skipped += 1,
        }
    }

    fn merge(self, other: CheckTally) -> CheckTally {
        CheckTally { verified: self.verified + other.verified, skipped: self.skipped + other.skipped }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub zeta: ZetaFactorization,
    pub reports: Vec<FaceReport>,
    pub checks: CheckTally,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResult {
    pub chi: BigInt,
    /// Contributing faces only.
    pub per_orbit: Vec<(Vec<usize>, BigInt)>,
}

/// Per-face local systems: `dim Δ` commuting invertible matrices of one
/// size, written in the Hermite basis of `M(S ∩ Δ)`, keyed by the face's
/// generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalSystemData {
    pub systems: BTreeMap<Vec<usize>, Vec<RationalMatrix>>,
}

impl LocalSystemData {
    /// Rank-one trivial systems on every face.
    pub fn trivial(s: &SemigroupPresentation) -> Self {
        let systems = s
            .faces
            .iter()
            .map(|c| (c.key().to_vec(), vec![RationalMatrix::identity(1); c.span_dim]))
            .collect();
        LocalSystemData { systems }
    }

    /// Checks faces, shapes, invertibility and commutation.
    pub fn validate(&self, s: &SemigroupPresentation) -> Result<()> {
        for (key, mats) in &self.systems {
            let ctx = s.face(key).ok_or_else(|| Error::UnknownFace(key.clone()))?;
            if mats.len() != ctx.span_dim {
                return Err(Error::MatrixShape {
                    face: key.clone(),
                    detail: format!("expected {} matrices, got {}", ctx.span_dim, mats.len()),
                });
            }
            if let Some(first) = mats.first() {
                if let Some(bad) = mats.iter().find(|m| m.size() != first.size()) {
                    return Err(Error::MatrixShape {
                        face: key.clone(),
                        detail: format!("sizes {} and {} differ", first.size(), bad.size()),
                    });
                }
            }
            if mats.iter().any(|m| !m.is_invertible()) {
                return Err(Error::Singular { face: key.clone() });
            }
            for (i, a) in mats.iter().enumerate() {
                if mats[i + 1..].iter().any(|b| !a.commutes_with(b)) {
                    return Err(Error::NonCommuting { face: key.clone() });
                }
            }
        }
        Ok(())
    }
}

fn validate_input(s: &SemigroupPresentation, f: &ToricPolynomial) -> Result<()> {
    validate_vanishing(f)?;
    f.validate_in(s)
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() }
}

fn distance(d: &BigInt) -> Result<u64> {
    if !d.is_positive() {
        return Err(Error::Invariant(format!("facet distance {d} must be at least 1")));
    }
    d.to_u64().ok_or_else(|| Error::Overflow(format!("facet distance {d}")))
}

fn ambient(ctx: &FaceContext, pts: &[IntVec]) -> Vec<IntVec> {
    pts.iter().map(|p| ctx.from_coords(p)).collect()
}

fn map_faces<T: Send>(
    s: &SemigroupPresentation,
    opts: Options,
    step: impl Fn(&FaceContext) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if opts.parallel {
        s.faces.par_iter().map(&step).collect()
    } else {
        s.faces.iter().map(step).collect()
    }
}

fn assemble(parts: Vec<(FaceReport, CheckTally)>) -> Evaluation {
    let mut zeta = ZetaFactorization::one();
    let mut checks = CheckTally::default();
    let mut reports = Vec::with_capacity(parts.len());
    for (r, c) in parts {
        zeta = zeta.multiply(&r.contribution());
        checks = checks.merge(c);
        reports.push(r);
    }
    Evaluation { zeta, reports, checks }
}

/// Compact facets of `Γ₊(f) ∩ Δ` with `Vol_ℤ(γ)` and `Vol_ℤ(Γ)`.
fn single_face_facets(
    gamma: &LatticePolyhedron,
    s: &SemigroupPresentation,
    ctx: &FaceContext,
    opts: Options,
    tally: &mut CheckTally,
) -> Result<Option<Vec<(CompactFacet, BigInt, BigInt)>>> {
    let Some(p) = restrict_to_face(gamma, &s.cone, &ctx.face)? else { return Ok(None) };
    let lat = Lattice::standard(ctx.span_dim);
    let mut out = Vec::new();
    for facet in compact_facets(&p)? {
        let (vol, pyramid) = cone_volume_identity_check(&facet, &lat)?;
        if opts.check {
            tally.record(check_volume(&facet.vertex_set, &lat, &vol)?);
        }
        out.push((facet, vol, pyramid));
    }
    Ok(Some(out))
}

fn fixed_point_face(
    gamma: &LatticePolyhedron,
    s: &SemigroupPresentation,
    ctx: &FaceContext,
    opts: Options,
) -> Result<(FaceReport, CheckTally)> {
    let mut tally = CheckTally::default();
    let Some(facets) = single_face_facets(gamma, s, ctx, opts, &mut tally)? else {
        return Ok((FaceReport::skipped(ctx, vec![0], SkipReason::EmptyIntersection), tally));
    };
    let sg = sign(ctx.span_dim - 1);
    let mut records = Vec::new();
    for (facet, vol, pyramid) in facets {
        let d = distance(&facet.min_value)?;
        let exponent = &sg * &vol;
        records.push(FacetRecord {
            vertices: ambient(ctx, &facet.vertex_set),
            normal: facet.normal,
            distance: d,
            factor: ZetaFactorization::cyclotomic_factor(d, exponent.clone())?,
            volume: vol,
            pyramid_volume: Some(pyramid),
            supporting_faces: Vec::new(),
            exponent,
        });
    }
    let report = FaceReport { face: ctx.key().to_vec(), dim: ctx.span_dim, involved: vec![0], facets: records, skipped: None };
    Ok((report, tally))
}

/// `ζ_{f,0}(t)` for a single function on the toric variety of `S`.
pub fn zeta_fixed_point(s: &SemigroupPresentation, f: &ToricPolynomial, opts: Options) -> Result<Evaluation> {
    validate_input(s, f)?;
    let gamma = newton_polyhedron(&f.support(), &s.cone)?;
    map_faces(s, opts, |ctx| fixed_point_face(&gamma, s, ctx, opts)).map(assemble)
}

/// Euler characteristic of the Milnor fiber, summed orbit by orbit from the
/// pyramid volumes `Vol_ℤ(conv(γ ∪ {0}))`.
pub fn euler_fixed_point(s: &SemigroupPresentation, f: &ToricPolynomial, opts: Options) -> Result<EulerResult> {
    validate_input(s, f)?;
    let gamma = newton_polyhedron(&f.support(), &s.cone)?;
    let per_face = map_faces(s, opts, |ctx| {
        let mut tally = CheckTally::default();
        let facets = single_face_facets(&gamma, s, ctx, Options { check: false, ..opts }, &mut tally)?;
        Ok(facets.map(|fs| {
            let total: BigInt = fs.into_iter().map(|(_, _, pyramid)| pyramid).sum();
            (ctx.key().to_vec(), sign(ctx.span_dim - 1) * total)
        }))
    })?;
    let per_orbit: Vec<_> = per_face.into_iter().flatten().collect();
    let chi = per_orbit.iter().map(|(_, x)| x).sum();
    Ok(EulerResult { chi, per_orbit })
}

fn validate_system(s: &SemigroupPresentation, fs: &[ToricPolynomial]) -> Result<()> {
    let n = s.ambient_dim;
    if fs.is_empty() || fs.len() > n {
        return Err(Error::EquationCount { k: fs.len(), n });
    }
    for f in fs {
        validate_input(s, f)?;
    }
    Ok(())
}

fn complete_intersection_face(
    gammas: &[LatticePolyhedron],
    s: &SemigroupPresentation,
    ctx: &FaceContext,
    opts: Options,
) -> Result<(FaceReport, CheckTally)> {
    let mut tally = CheckTally::default();
    let k = gammas.len() - 1;
    let restricted = gammas
        .iter()
        .map(|g| restrict_to_face(g, &s.cone, &ctx.face))
        .collect::<Result<Vec<_>>>()?;
    let Some(pk) = &restricted[k] else {
        return Ok((FaceReport::skipped(ctx, Vec::new(), SkipReason::EmptyIntersection), tally));
    };
    let involved: Vec<usize> = (0..=k).filter(|&j| restricted[j].is_some()).collect();
    let m = involved.len();
    let dim = ctx.span_dim;
    if m > dim {
        return Ok((FaceReport::skipped(ctx, involved, SkipReason::TooManyEquations { m }), tally));
    }
    let parts: Vec<&LatticePolyhedron> = involved.iter().map(|&j| restricted[j].as_ref().unwrap()).collect();
    let mut sum = parts[0].clone();
    for p in &parts[1..] {
        sum = minkowski_sum(&sum, p)?;
    }
    let lat = Lattice::standard(dim);
    let sg = sign(dim - m);
    let mut mins = vec![1; m - 1];
    mins.push(0);
    let mut records = Vec::new();
    for facet in compact_facets(&sum)? {
        let u = &facet.normal;
        let d = distance(&pk.points.iter().map(|x| u.eval(x)).min().expect("nonempty polyhedron"))?;
        let gammas_u: Vec<Vec<IntVec>> = parts.iter().map(|p| supporting_face(&p.points, u)).collect();

        let mut facet_sum = LatticePolyhedron::polytope(lat.clone(), gammas_u[0].clone())?;
        for g in &gammas_u[1..] {
            facet_sum = minkowski_sum(&facet_sum, &LatticePolyhedron::polytope(lat.clone(), g.clone())?)?;
        }
        if facet_sum.points != facet.vertex_set {
            return Err(Error::Invariant(format!("facet with normal {u} is not the sum of its supporting faces")));
        }

        let kval = if dim == 1 {
            BigInt::one()
        } else {
            let lat_u = Lattice::from_generators(dim, &integer_kernel(std::slice::from_ref(&u.coords), dim))?;
            let translated: Vec<Vec<IntVec>> =
                gammas_u.iter().map(|g| g.iter().map(|x| sub(x, &g[0])).collect()).collect();
            let mut total = BigInt::zero();
            for alpha in compositions(dim - 1, &mins) {
                let list: Vec<Vec<IntVec>> = translated
                    .iter()
                    .zip(&alpha)
                    .flat_map(|(q, &c)| std::iter::repeat_n(q.clone(), c))
                    .collect();
                let mv = mixed_volume(&list, &lat_u)?;
                if opts.check {
                    tally.record(check_mixed_volume(&list, &lat_u, &mv)?);
                }
                total += mv;
            }
            total
        };
        if kval.is_negative() {
            return Err(Error::Invariant(format!("negative mixed-volume sum {kval}")));
        }
        let exponent = &sg * &kval;
        records.push(FacetRecord {
            vertices: ambient(ctx, &facet.vertex_set),
            normal: facet.normal.clone(),
            distance: d,
            factor: ZetaFactorization::cyclotomic_factor(d, exponent.clone())?,
            volume: kval,
            pyramid_volume: None,
            supporting_faces: involved.iter().zip(&gammas_u).map(|(&j, g)| (j, ambient(ctx, g))).collect(),
            exponent,
        });
    }
    let report = FaceReport { face: ctx.key().to_vec(), dim, involved, facets: records, skipped: None };
    Ok((report, tally))
}

/// The `k`-th principal monodromy zeta function of `f_1 = … = f_{k-1} = 0`
/// along `f_k`.
pub fn zeta_complete_intersection(
    s: &SemigroupPresentation,
    fs: &[ToricPolynomial],
    opts: Options,
) -> Result<Evaluation> {
    validate_system(s, fs)?;
    let gammas = fs.iter().map(|f| newton_polyhedron(&f.support(), &s.cone)).collect::<Result<Vec<_>>>()?;
    map_faces(s, opts, |ctx| complete_intersection_face(&gammas, s, ctx, opts)).map(assemble)
}

/// `Σ_Δ (−1)^{dim Δ − m(Δ)} Σ_i d_i·K_i`, summed from the face reports.
pub fn euler_complete_intersection(
    s: &SemigroupPresentation,
    fs: &[ToricPolynomial],
    opts: Options,
) -> Result<BigInt> {
    let eval = zeta_complete_intersection(s, fs, Options { check: false, ..opts })?;
    Ok(eval
        .reports
        .iter()
        .flat_map(|r| &r.facets)
        .map(|rec| BigInt::from(rec.distance) * &rec.exponent)
        .sum())
}

fn sheaf_face(
    gamma: &LatticePolyhedron,
    s: &SemigroupPresentation,
    ctx: &FaceContext,
    ls: &LocalSystemData,
    opts: Options,
) -> Result<(FaceReport, CheckTally)> {
    let mut tally = CheckTally::default();
    let Some(facets) = single_face_facets(gamma, s, ctx, opts, &mut tally)? else {
        return Ok((FaceReport::skipped(ctx, vec![0], SkipReason::EmptyIntersection), tally));
    };
    let mats = ls.systems.get(ctx.key()).ok_or_else(|| Error::MissingLocalSystem(ctx.key().to_vec()))?;
    let size = mats.first().map_or(0, RationalMatrix::size);
    let sg = sign(ctx.span_dim - 1);
    let mut records = Vec::new();
    for (facet, vol, pyramid) in facets {
        let d = distance(&facet.min_value)?;
        let mut b = RationalMatrix::identity(size);
        for (a, e) in mats.iter().zip(&facet.normal.coords) {
            let p = a.pow(e).ok_or_else(|| Error::Singular { face: ctx.key().to_vec() })?;
            b = b.mul(&p);
        }
        let du = usize::try_from(d).map_err(|_| Error::Overflow(format!("facet distance {d}")))?;
        let poly = b.det_one_minus().substitute_power(du);
        let exponent = &sg * &vol;
        records.push(FacetRecord {
            vertices: ambient(ctx, &facet.vertex_set),
            normal: facet.normal,
            distance: d,
            factor: ZetaFactorization::matrix_factor(poly, exponent.clone())?,
            volume: vol,
            pyramid_volume: Some(pyramid),
            supporting_faces: Vec::new(),
            exponent,
        });
    }
    let report = FaceReport { face: ctx.key().to_vec(), dim: ctx.span_dim, involved: vec![0], facets: records, skipped: None };
    Ok((report, tally))
}

/// Zeta function of the nearby cycles of `f` applied to the extension by
/// zero of the given local systems on the orbits.
pub fn zeta_sheaf(
    s: &SemigroupPresentation,
    f: &ToricPolynomial,
    ls: &LocalSystemData,
    opts: Options,
) -> Result<Evaluation> {
    validate_input(s, f)?;
    ls.validate(s)?;
    let gamma = newton_polyhedron(&f.support(), &s.cone)?;
    map_faces(s, opts, |ctx| sheaf_face(&gamma, s, ctx, ls, opts)).map(assemble)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::newton::build_presentation;
    use num_rational::BigRational;

    fn pres(rows: &[&[i64]]) -> SemigroupPresentation {
        build_presentation(&rows.iter().map(|r| ivec(r)).collect::<Vec<_>>()).unwrap()
    }

    fn cyc(pairs: &[(u64, i64)]) -> ZetaFactorization {
        pairs.iter().fold(ZetaFactorization::one(), |acc, &(d, e)| {
            acc.multiply(&ZetaFactorization::cyclotomic_factor(d, BigInt::from(e)).unwrap())
        })
    }

    fn plane() -> SemigroupPresentation {
        pres(&[&[1, 0], &[0, 1]])
    }

    #[test]
    fn cusp() {
        let s = plane();
        let f = ToricPolynomial::from_i64(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let e = zeta_fixed_point(&s, &f, Options::default()).unwrap();
        assert_eq!(e.zeta, cyc(&[(2, 1), (3, 1), (6, -1)]));
        assert_eq!(e.reports.len(), 4);
        assert_eq!(e.reports[0].skipped, Some(SkipReason::EmptyIntersection));
        let full = &e.reports[3];
        assert_eq!(full.facets.len(), 1);
        assert_eq!(full.facets[0].normal.coords, ivec(&[3, 2]));
        assert_eq!(full.facets[0].distance, 6);
        let chi = euler_fixed_point(&s, &f, Options::default()).unwrap();
        assert_eq!(chi.chi, BigInt::from(-1));
        assert_eq!(
            chi.per_orbit,
            vec![(vec![0], BigInt::from(2)), (vec![1], BigInt::from(3)), (vec![0, 1], BigInt::from(-6))]
        );
    }

    #[test]
    fn smooth_and_quadric() {
        let f = ToricPolynomial::from_i64(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let e = zeta_fixed_point(&plane(), &f, Options::default()).unwrap();
        assert_eq!(e.zeta, cyc(&[(1, 1)]));
        assert_eq!(euler_fixed_point(&plane(), &f, Options::default()).unwrap().chi, BigInt::one());

        let q = pres(&[&[2, 0], &[1, 1], &[0, 2]]);
        let g = ToricPolynomial::from_i64(&[(&[2, 0], 1), (&[0, 2], 1)]);
        let e = zeta_fixed_point(&q, &g, Options { check: true, parallel: false }).unwrap();
        assert!(e.zeta.is_one());
        let dists: Vec<u64> = e.reports.iter().flat_map(|r| r.facets.iter().map(|x| x.distance)).collect();
        assert_eq!(dists, vec![1, 1, 1]);
        assert_eq!(e.reports[3].facets[0].volume, BigInt::from(2));
        assert!(e.checks.verified > 0);
        let chi = euler_fixed_point(&q, &g, Options::default()).unwrap();
        assert_eq!(chi.chi, BigInt::zero());
        assert_eq!(chi.per_orbit.last().unwrap().1, BigInt::from(-2));
    }

    #[test]
    fn complete_intersections() {
        let s = plane();
        let l1 = ToricPolynomial::from_i64(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let l2 = ToricPolynomial::from_i64(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let e = zeta_complete_intersection(&s, &[l1.clone(), l2], Options::default()).unwrap();
        assert_eq!(e.zeta, cyc(&[(1, 1)]));
        assert_eq!(e.reports[1].skipped, Some(SkipReason::TooManyEquations { m: 2 }));
        assert_eq!(e.reports[2].skipped, Some(SkipReason::TooManyEquations { m: 2 }));
        let rec = &e.reports[3].facets;
        assert_eq!(rec.len(), 1);
        assert_eq!((rec[0].normal.coords.clone(), rec[0].distance, rec[0].volume.clone()), (ivec(&[1, 1]), 1, BigInt::one()));

        let cusp = ToricPolynomial::from_i64(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let e = zeta_complete_intersection(&s, &[l1.clone(), cusp.clone()], Options { check: true, parallel: true }).unwrap();
        assert_eq!(e.zeta, cyc(&[(2, 1)]));
        let rec = &e.reports[3].facets;
        assert_eq!(rec.len(), 2);
        assert_eq!((rec[0].normal.coords.clone(), rec[0].distance, rec[0].volume.clone()), (ivec(&[1, 1]), 2, BigInt::one()));
        assert_eq!((rec[1].normal.coords.clone(), rec[1].volume.clone()), (ivec(&[3, 2]), BigInt::zero()));
        assert_eq!(euler_complete_intersection(&s, &[l1, cusp.clone()], Options::default()).unwrap(), BigInt::from(2));

        let single = zeta_fixed_point(&s, &cusp, Options::default()).unwrap();
        let ci = zeta_complete_intersection(&s, std::slice::from_ref(&cusp), Options::default()).unwrap();
        assert_eq!(single.zeta, ci.zeta);
        assert_eq!(euler_complete_intersection(&s, &[cusp], Options::default()).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn sheaves() {
        let s = plane();
        let cusp = ToricPolynomial::from_i64(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let trivial = zeta_sheaf(&s, &cusp, &LocalSystemData::trivial(&s), Options::default()).unwrap();
        assert_eq!(trivial.zeta, zeta_fixed_point(&s, &cusp, Options::default()).unwrap().zeta);

        let line = pres(&[&[1]]);
        let zm = ToricPolynomial::from_i64(&[(&[4], 1)]);
        let mut ls = LocalSystemData::default();
        ls.systems.insert(vec![0], vec![RationalMatrix::from_i64(&[&[3]]).unwrap()]);
        let e = zeta_sheaf(&line, &zm, &ls, Options::default()).unwrap();
        let expect = ZetaFactorization::matrix_factor(crate::zeta::Poly::from_ints(&[1, 0, 0, 0, -3]), BigInt::one()).unwrap();
        assert_eq!(e.zeta, expect);

        let mut ls = LocalSystemData::trivial(&s);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a1 = RationalMatrix::from_rows(vec![vec![half]]).unwrap();
        let a2 = RationalMatrix::from_i64(&[&[3]]).unwrap();
        ls.systems.insert(vec![0, 1], vec![a1, a2]);
        let e = zeta_sheaf(&s, &cusp, &ls, Options::default()).unwrap();
        // a1^3 a2^2 = 9/8
        let mut c = vec![BigRational::zero(); 7];
        c[0] = BigRational::one();
        c[6] = -BigRational::new(BigInt::from(9), BigInt::from(8));
        let denom = ZetaFactorization::matrix_factor(crate::zeta::Poly::new(c), -BigInt::one()).unwrap();
        assert_eq!(e.zeta, cyc(&[(2, 1), (3, 1)]).multiply(&denom));

        ls.systems.remove(&vec![0, 1]);
        assert_eq!(zeta_sheaf(&s, &cusp, &ls, Options::default()).unwrap_err(), Error::MissingLocalSystem(vec![0, 1]));
        ls.systems.insert(
            vec![0, 1],
            vec![
                RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap(),
                RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap(),
            ],
        );
        assert_eq!(zeta_sheaf(&s, &cusp, &ls, Options::default()).unwrap_err(), Error::NonCommuting { face: vec![0, 1] });
        ls.systems.insert(vec![0, 1], vec![RationalMatrix::identity(1), RationalMatrix::from_i64(&[&[0]]).unwrap()]);
        assert_eq!(zeta_sheaf(&s, &cusp, &ls, Options::default()).unwrap_err(), Error::Singular { face: vec![0, 1] });
        ls.systems.insert(vec![0, 1], vec![RationalMatrix::identity(1), RationalMatrix::identity(2)]);
        assert!(matches!(zeta_sheaf(&s, &cusp, &ls, Options::default()), Err(Error::MatrixShape { .. })));
        ls.systems.remove(&vec![0, 1]);
        ls.systems.insert(vec![0, 2], vec![]);
        assert!(matches!(ls.validate(&s), Err(Error::UnknownFace(_))));
    }

    #[test]
    fn validation_errors() {
        let s = plane();
        let bad = ToricPolynomial::from_i64(&[(&[0, 0], 1), (&[1, 0], 1)]);
        assert_eq!(zeta_fixed_point(&s, &bad, Options::default()).unwrap_err(), Error::ConstantTerm);
        let f = ToricPolynomial::from_i64(&[(&[1, 0], 1)]);
        assert_eq!(
            zeta_complete_intersection(&s, &[f.clone(), f.clone(), f], Options::default()).unwrap_err(),
            Error::EquationCount { k: 3, n: 2 }
        );
        let neg = ToricPolynomial::from_i64(&[(&[-1, 2], 1)]);
        assert!(matches!(zeta_fixed_point(&s, &neg, Options::default()), Err(Error::NotInSemigroup(_))));
    }
}
