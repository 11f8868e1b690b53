//! Normalized lattice volumes, mixed volumes and the Bernstein–Khovanskii–
//! Kushnirenko Euler characteristic.
//!
//! `Vol_ℤ` of an `r`-dimensional lattice polytope is `r!` times its Euclidean
//! volume measured in the lattice `lat ∩ (direction space of aff P)`, so it is
//! always a nonnegative integer. It is computed by a pulling decomposition:
//! the pyramid over a facet `F` from a fixed vertex `a` has normalized volume
//! `height(a, F) · Vol_ℤ(F)`, with the height measured by the primitive facet
//! normal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{sub, IntVec, Lattice};
use crate::polyhedra::{compact_facets, minkowski_sum, CompactFacet, LatticePolyhedron};

/// A normalized volume together with the dimension and lattice it was
/// measured in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeResult {
    pub value: BigInt,
    pub dim: usize,
    pub lattice_used: Lattice,
}

/// Normalized volume of `conv(vertices)`, measured in its own dimension.
/// Vertices are ambient vectors of `lat`. A point has volume 1.
pub fn normalized_volume(vertices: &[IntVec], lat: &Lattice) -> Result<BigInt> {
    volume_with_lattice(vertices, lat).map(|v| v.value)
}

/// As [`normalized_volume`], also reporting the direction lattice used.
pub fn volume_with_lattice(vertices: &[IntVec], lat: &Lattice) -> Result<VolumeResult> {
    let first = vertices.first().ok_or(Error::EmptyPolytope)?;
    for v in vertices {
        lat.coords_in_basis(v)?;
    }
    let diffs: Vec<IntVec> = vertices.iter().map(|v| sub(v, first)).collect();
    let direction = lat.saturated_sublattice(&diffs)?;
    let coords = diffs.iter().map(|d| direction.coords_in_basis(d)).collect::<Result<Vec<_>>>()?;
    let value = full_volume_in_coords(coords, direction.rank())?;
    Ok(VolumeResult { value, dim: direction.rank(), lattice_used: direction })
}

/// Normalized `rank(lat)`-dimensional volume: zero when the polytope is not
/// full-dimensional.
pub fn full_dimensional_volume(vertices: &[IntVec], lat: &Lattice) -> Result<BigInt> {
    let v = volume_with_lattice(vertices, lat)?;
    Ok(if v.dim == lat.rank() { v.value } else { BigInt::zero() })
}

/// Points are coordinates in `ℤ^r` and span it affinely.
fn full_volume_in_coords(points: Vec<IntVec>, r: usize) -> Result<BigInt> {
    if r == 0 {
        return Ok(BigInt::one());
    }
    let p = LatticePolyhedron::polytope(Lattice::standard(r), points)?;
    let apex = p.points[0].clone();
    let mut total = BigInt::zero();
    for facet in compact_facets(&p)? {
        let height = facet.normal.eval(&apex) - &facet.min_value;
        if height.is_zero() {
            continue;
        }
        total += height * normalized_volume(&facet.vertex_set, &Lattice::standard(r))?;
    }
    Ok(total)
}

/// `(Vol_ℤ(γ), Vol_ℤ(Γ))` for a compact facet `γ` with `Γ = conv(γ ∪ {0})`.
/// Fails if `Vol_ℤ(Γ) ≠ min_value · Vol_ℤ(γ)`.
pub fn cone_volume_identity_check(facet: &CompactFacet, lat: &Lattice) -> Result<(BigInt, BigInt)> {
    let vol_gamma = normalized_volume(&facet.vertex_set, lat)?;
    let mut with_origin = facet.vertex_set.clone();
    with_origin.push(vec![BigInt::zero(); lat.ambient_dim()]);
    let vol_cone = full_dimensional_volume(&with_origin, lat)?;
    if vol_cone != &facet.min_value * &vol_gamma {
        return Err(Error::Invariant(format!(
            "pyramid volume {vol_cone} ≠ {} · {vol_gamma} for facet with normal {}",
            facet.min_value, facet.normal
        )));
    }
    Ok((vol_gamma, vol_cone))
}

/// Normalized mixed volume `Vol_ℤ(Q₁, …, Qₙ)` with `n = rank(lat)`, by
/// inclusion–exclusion over the Minkowski sums of all nonempty subfamilies.
/// The empty family (`n = 0`) has mixed volume 1.
pub fn mixed_volume(polys: &[Vec<IntVec>], lat: &Lattice) -> Result<BigInt> {
    let n = lat.rank();
    if polys.len() != n {
        return Err(Error::ArityMismatch { polytopes: polys.len(), rank: n });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let std = Lattice::standard(n);
    let mut summands = Vec::with_capacity(n);
    for q in polys {
        let coords = q.iter().map(|v| lat.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
        summands.push(LatticePolyhedron::polytope(std.clone(), coords)?);
    }
    // sums[mask] = Σ_{i ∈ mask} Q_i, built from the mask without its lowest bit
    let mut sums: Vec<Option<LatticePolyhedron>> = vec![None; 1 << n];
    let mut total = BigInt::zero();
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = match &sums[rest] {
            None => summands[low].clone(),
            Some(s) => minkowski_sum(s, &summands[low])?,
        };
        let vol = if sum.dim() == n { full_volume_in_coords(sum.points.clone(), n)? } else { BigInt::zero() };
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
        sums[mask] = Some(sum);
    }
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let (q, r) = total.div_rem(&factorial);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Invariant(format!("mixed volume sum {total} is not a nonnegative multiple of {n}!")));
    }
    Ok(q)
}

/// All `(α₁, …, α_p)` with `α_i ≥ mins[i]` and `Σ α_i = total`, in
/// lexicographic order.
pub fn compositions(total: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: usize, mins: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match mins {
            [] => {
                if rest == 0 {
                    out.push(prefix.clone());
                }
            }
            [last] => {
                if rest >= *last {
                    prefix.push(rest);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            [m, tail @ ..] => {
                let reserve: usize = tail.iter().sum();
                if rest < m + reserve {
                    return;
                }
                for a in *m..=rest - reserve {
                    prefix.push(a);
                    go(rest - a, tail, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(total, mins, &mut Vec::new(), &mut out);
    out
}

/// Mixed volume of `polys[i]` repeated `counts[i]` times.
pub fn repeated_mixed_volume(polys: &[Vec<IntVec>], counts: &[usize], lat: &Lattice) -> Result<BigInt> {
    let list: Vec<Vec<IntVec>> =
        polys.iter().zip(counts).flat_map(|(q, &c)| std::iter::repeat_n(q.clone(), c)).collect();
    mixed_volume(&list, lat)
}

/// Euler characteristic of a non-degenerate complete intersection in the
/// torus `(ℂ*)ⁿ` with the given Newton polytopes.
pub fn bkk_euler(polys: &[Vec<IntVec>], lat: &Lattice) -> Result<BigInt> {
    let n = lat.rank();
    let p = polys.len();
    if p == 0 || p > n {
        return Err(Error::TooManyPolytopes { polytopes: p, rank: n });
    }
    let mut total = BigInt::zero();
    for alpha in compositions(n, &vec![1; p]) {
        total += repeated_mixed_volume(polys, &alpha, lat)?;
    }
    Ok(if (n - p).is_multiple_of(2) { total } else { -total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::polyhedra::compact_facets;

    fn vs(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| ivec(r)).collect()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn basic_volumes() {
        let z2 = Lattice::standard(2);
        assert_eq!(normalized_volume(&vs(&[&[0, 0], &[1, 0], &[0, 1]]), &z2).unwrap(), big(1));
        assert_eq!(normalized_volume(&vs(&[&[0, 0], &[2, 0], &[0, 3]]), &z2).unwrap(), big(6));
        assert_eq!(normalized_volume(&vs(&[&[2, 0], &[0, 3]]), &z2).unwrap(), big(1));
        assert_eq!(normalized_volume(&vs(&[&[4, 4]]), &z2).unwrap(), big(1));
        assert_eq!(normalized_volume(&vs(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), &z2).unwrap(), big(2));
        let q = Lattice::from_generators(2, &vs(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(normalized_volume(&vs(&[&[1, 0]]), &q), Err(Error::NotLatticePoint));
        assert_eq!(normalized_volume(&[], &z2), Err(Error::EmptyPolytope));
        let z3 = Lattice::standard(3);
        let cube: Vec<IntVec> = (0..8).map(|m| ivec(&[m & 1, (m >> 1) & 1, (m >> 2) & 1])).collect();
        assert_eq!(normalized_volume(&cube, &z3).unwrap(), big(6));
    }

    #[test]
    fn pyramid_identity() {
        let z2 = Lattice::standard(2);
        let axes = vs(&[&[1, 0], &[0, 1]]);
        let cusp = LatticePolyhedron::new(z2.clone(), vs(&[&[2, 0], &[0, 3]]), axes.clone()).unwrap();
        let f = &compact_facets(&cusp).unwrap()[0];
        assert_eq!(cone_volume_identity_check(f, &z2).unwrap(), (big(1), big(6)));
        let smooth = LatticePolyhedron::new(z2.clone(), vs(&[&[1, 0], &[0, 1]]), axes).unwrap();
        let f = &compact_facets(&smooth).unwrap()[0];
        assert_eq!(cone_volume_identity_check(f, &z2).unwrap(), (big(1), big(1)));
    }

    #[test]
    fn quadric_cone_facet() {
        // Over M = {(a,b): a+b even} with basis (1,1),(0,2): the facet from
        // (2,0) to (0,2) has coordinates (2,-1),(0,1).
        let gens = vs(&[&[2, 0], &[1, 1], &[0, 2]]);
        let m = Lattice::from_generators(2, &gens).unwrap();
        let coords: Vec<IntVec> = gens.iter().map(|g| m.coords_in_basis(g).unwrap()).collect();
        let p = LatticePolyhedron::new(
            Lattice::standard(2),
            vec![coords[0].clone(), coords[2].clone()],
            vec![coords[0].clone(), coords[2].clone()],
        )
        .unwrap();
        let f = compact_facets(&p).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].min_value, big(1));
        assert_eq!(cone_volume_identity_check(&f[0], &Lattice::standard(2)).unwrap(), (big(2), big(2)));
        // the same segment measured directly in the ambient sublattice
        assert_eq!(normalized_volume(&vs(&[&[2, 0], &[0, 2]]), &m).unwrap(), big(2));
    }

    #[test]
    fn mixed_volume_examples() {
        let z2 = Lattice::standard(2);
        let tri = vs(&[&[0, 0], &[2, 0], &[0, 3]]);
        assert_eq!(mixed_volume(&[tri.clone(), tri.clone()], &z2).unwrap(), big(6));
        let sx = vs(&[&[0, 0], &[1, 0]]);
        let sy = vs(&[&[0, 0], &[0, 1]]);
        assert_eq!(mixed_volume(&[sx.clone(), sy.clone()], &z2).unwrap(), big(1));
        assert_eq!(mixed_volume(&[sx.clone(), vs(&[&[3, 3]])], &z2).unwrap(), big(0));
        assert_eq!(mixed_volume(&[tri, vs(&[&[1, 1]])], &z2).unwrap(), big(0));
        assert_eq!(
            mixed_volume(&[sx], &z2),
            Err(Error::ArityMismatch { polytopes: 1, rank: 2 })
        );
        assert_eq!(mixed_volume(&[], &Lattice::standard(0)).unwrap(), big(1));
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(3, &[1, 1]), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(1, &[1, 0]), vec![vec![1, 0]]);
        assert_eq!(compositions(2, &[1, 0]), vec![vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, &[0]), vec![vec![0]]);
        assert!(compositions(1, &[1, 1]).is_empty());
    }

    #[test]
    fn bkk_examples() {
        let z2 = Lattice::standard(2);
        let simplex = vs(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(bkk_euler(std::slice::from_ref(&simplex), &z2).unwrap(), big(-1));
        let sx = vs(&[&[0, 0], &[1, 0]]);
        let sy = vs(&[&[0, 0], &[0, 1]]);
        assert_eq!(bkk_euler(&[sx, sy], &z2).unwrap(), big(1));
        let z1 = Lattice::standard(1);
        assert_eq!(bkk_euler(&[vs(&[&[0], &[5]])], &z1).unwrap(), big(5));
        assert!(bkk_euler(&[simplex.clone(), simplex.clone(), simplex], &z2).is_err());
    }
}
