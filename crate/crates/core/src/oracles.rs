//! Brute-force checkers for the volume machinery.
//!
//! Both oracles avoid the facet-pyramid decomposition used by
//! [`crate::volumes`]: lattice volumes come from counting lattice points of
//! dilates (Ehrhart interpolation), and mixed volumes come from interpolating
//! `λ ↦ Vol_ℤ(λ₁Q₁ + … + λₙQₙ)` on a grid and reading off the coefficient of
//! `λ₁⋯λₙ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{sub, IntVec, Lattice};
use crate::polyhedra::{for_each_combination, minkowski_sum, LatticePolyhedron};
use crate::volumes::{full_dimensional_volume, mixed_volume, normalized_volume};

/// Largest dimension the oracles accept.
pub const MAX_ORACLE_DIM: usize = 3;
const MAX_COORD: i64 = 64;

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0;
            for (j, a) in m[0].iter().enumerate() {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| *x).collect()).collect();
                let term = a * det_i64(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

struct Simplex {
    base: Vec<i64>,
    // columns are edge vectors from `base`
    edges: Vec<Vec<i64>>,
    det: i64,
}

impl Simplex {
    /// Is `x` in `k · simplex`? Cramer's rule, all in integers.
    fn contains_dilate(&self, x: &[i64], k: i64) -> bool {
        let r = self.edges.len();
        let rhs: Vec<i64> = x.iter().zip(&self.base).map(|(xi, b)| xi - k * b).collect();
        let sign = self.det.signum();
        let mut sum = 0;
        for i in 0..r {
            // matrix with rows = coordinates, column i replaced by rhs
            let m: Vec<Vec<i64>> = (0..r)
                .map(|row| (0..r).map(|col| if col == i { rhs[row] } else { self.edges[col][row] }).collect())
                .collect();
            let c = det_i64(&m) * sign;
            if c < 0 {
                return false;
            }
            sum += c;
        }
        sum <= k * self.det.abs()
    }
}

fn to_small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .filter(|y| y.abs() <= MAX_COORD)
                .ok_or_else(|| Error::Oracle(format!("coordinate {x} too large to enumerate")))
        })
        .collect()
}

/// Normalized volume by counting lattice points of `k·P` for `k = 0..=r` and
/// taking the `r`-th finite difference of the Ehrhart polynomial.
pub fn volume_by_point_counting(vertices: &[IntVec], lat: &Lattice) -> Result<BigInt> {
    let first = vertices.first().ok_or(Error::EmptyPolytope)?;
    let diffs: Vec<IntVec> = vertices.iter().map(|v| sub(v, first)).collect();
    let direction = lat.saturated_sublattice(&diffs)?;
    let r = direction.rank();
    if r > MAX_ORACLE_DIM {
        return Err(Error::Oracle(format!("dimension {r} exceeds {MAX_ORACLE_DIM}")));
    }
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for d in &diffs {
        pts.push(to_small(&direction.coords_in_basis(d)?)?);
    }
    pts.sort();
    pts.dedup();

    let mut simplices = Vec::new();
    for_each_combination(pts.len(), r + 1, |idx| {
        let base = pts[idx[0]].clone();
        let edges: Vec<Vec<i64>> = idx[1..].iter().map(|&i| pts[i].iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        let det = det_i64(&edges);
        if det != 0 {
            simplices.push(Simplex { base, edges, det });
        }
    });

    let lo: Vec<i64> = (0..r).map(|c| pts.iter().map(|p| p[c]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..r).map(|c| pts.iter().map(|p| p[c]).max().unwrap_or(0)).collect();
    let mut counts = Vec::with_capacity(r + 1);
    for k in 0..=r as i64 {
        let mut count: i64 = 0;
        let mut x: Vec<i64> = lo.iter().map(|l| k * l).collect();
        if r == 0 {
            count = 1;
        } else {
            'outer: loop {
                if simplices.iter().any(|s| s.contains_dilate(&x, k)) {
                    count += 1;
                }
                let mut c = 0;
                loop {
                    if c == r {
                        break 'outer;
                    }
                    if x[c] < k * hi[c] {
                        x[c] += 1;
                        break;
                    }
                    x[c] = k * lo[c];
                    c += 1;
                }
            }
        }
        counts.push(BigInt::from(count));
    }

    let mut diff = BigInt::zero();
    let mut binom = BigInt::one();
    for i in (0..=r).rev() {
        let term = &binom * &counts[i];
        if (r - i) % 2 == 0 {
            diff += term;
        } else {
            diff -= term;
        }
        // binom goes C(r, r-i) -> C(r, r-i+1)
        binom = binom * BigInt::from(i) / BigInt::from(r - i + 1);
    }
    Ok(diff)
}

/// Coefficients (ascending) of the polynomial through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut m: Vec<Vec<BigRational>> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
            let mut p = BigRational::one();
            for _ in 0..n {
                row.push(p.clone());
                p = &p * x;
            }
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("distinct nodes");
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// Mixed volume by interpolating the volume polynomial of `Σ λ_i Q_i` on the
/// grid `λ ∈ {1, …, n+1}ⁿ`.
pub fn mixed_volume_by_polynomiality(polys: &[Vec<IntVec>], lat: &Lattice) -> Result<BigInt> {
    let n = lat.rank();
    if polys.len() != n {
        return Err(Error::ArityMismatch { polytopes: polys.len(), rank: n });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if n > MAX_ORACLE_DIM {
        return Err(Error::Oracle(format!("rank {n} exceeds {MAX_ORACLE_DIM}")));
    }
    let std = Lattice::standard(n);
    let mut qs = Vec::with_capacity(n);
    for q in polys {
        let c = q.iter().map(|v| lat.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
        qs.push(LatticePolyhedron::polytope(std.clone(), c)?);
    }
    let side = n + 1;
    let total = side.pow(n as u32);
    let mut grid: Vec<BigRational> = Vec::with_capacity(total);
    for flat in 0..total {
        let mut sum: Option<LatticePolyhedron> = None;
        let mut rest = flat;
        for q in &qs {
            let lambda = BigInt::from(rest % side + 1);
            rest /= side;
            let scaled = LatticePolyhedron::polytope(
                std.clone(),
                q.points.iter().map(|p| p.iter().map(|x| x * &lambda).collect()).collect(),
            )?;
            sum = Some(match sum {
                None => scaled,
                Some(s) => minkowski_sum(&s, &scaled)?,
            });
        }
        let sum = sum.expect("n ≥ 1");
        grid.push(BigRational::from(full_dimensional_volume(&sum.points, &std)?));
    }
    // Interpolate one axis at a time; index digit a of axis i becomes the
    // exponent of λ_i.
    let nodes: Vec<BigRational> = (1..=side).map(|x| BigRational::from(BigInt::from(x))).collect();
    let mut stride = 1;
    for _axis in 0..n {
        for start in 0..total {
            if (start / stride) % side != 0 {
                continue;
            }
            let ys: Vec<BigRational> = (0..side).map(|j| grid[start + j * stride].clone()).collect();
            for (j, c) in interpolate(&nodes, &ys).into_iter().enumerate() {
                grid[start + j * stride] = c;
            }
        }
        stride *= side;
    }
    let mixed_index: usize = (0..n).map(|i| side.pow(i as u32)).sum();
    let coeff = &grid[mixed_index];
    let factorial = BigRational::from((1..=n).map(BigInt::from).product::<BigInt>());
    let mv = coeff / factorial;
    if !mv.is_integer() {
        return Err(Error::Invariant(format!("interpolated mixed volume {mv} is not an integer")));
    }
    Ok(mv.to_integer())
}

/// Outcome of one oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Verified,
    Skipped(String),
}

/// Compare a claimed normalized volume against point counting.
pub fn check_volume(vertices: &[IntVec], lat: &Lattice, claimed: &BigInt) -> Result<CheckOutcome> {
    match volume_by_point_counting(vertices, lat) {
        Ok(v) if &v == claimed => Ok(CheckOutcome::Verified),
        Ok(v) => Err(Error::CheckFailed(format!("volume {claimed} but point counting gives {v}"))),
        Err(Error::Oracle(why)) => Ok(CheckOutcome::Skipped(why)),
        Err(e) => Err(e),
    }
}

/// Compare a claimed mixed volume against the polynomiality oracle.
pub fn check_mixed_volume(polys: &[Vec<IntVec>], lat: &Lattice, claimed: &BigInt) -> Result<CheckOutcome> {
    match mixed_volume_by_polynomiality(polys, lat) {
        Ok(v) if &v == claimed => Ok(CheckOutcome::Verified),
        Ok(v) => Err(Error::CheckFailed(format!("mixed volume {claimed} but interpolation gives {v}"))),
        Err(Error::Oracle(why)) => Ok(CheckOutcome::Skipped(why)),
        Err(e) => Err(e),
    }
}

/// Runs both volume routes on one polytope and both mixed-volume routes on
/// its diagonal, as a quick self-test.
pub fn self_check(vertices: &[IntVec], lat: &Lattice) -> Result<()> {
    let v = normalized_volume(vertices, lat)?;
    check_volume(vertices, lat, &v)?;
    if lat.rank() <= MAX_ORACLE_DIM && lat.rank() > 0 {
        let diag = vec![vertices.to_vec(); lat.rank()];
        let mv = mixed_volume(&diag, lat)?;
        check_mixed_volume(&diag, lat, &mv)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn vs(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| ivec(r)).collect()
    }

    #[test]
    fn ehrhart_examples() {
        let z1 = Lattice::standard(1);
        let z2 = Lattice::standard(2);
        assert_eq!(volume_by_point_counting(&vs(&[&[0], &[1]]), &z1).unwrap(), BigInt::from(1));
        assert_eq!(volume_by_point_counting(&vs(&[&[0, 0], &[2, 0], &[0, 3]]), &z2).unwrap(), BigInt::from(6));
        assert_eq!(
            volume_by_point_counting(&vs(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), &z2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(volume_by_point_counting(&vs(&[&[2, 0], &[0, 3]]), &z2).unwrap(), BigInt::from(1));
        assert_eq!(volume_by_point_counting(&vs(&[&[3, 3]]), &z2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn polynomiality_examples() {
        let z2 = Lattice::standard(2);
        let sx = vs(&[&[0, 0], &[1, 0]]);
        let sy = vs(&[&[0, 0], &[0, 1]]);
        assert_eq!(mixed_volume_by_polynomiality(&[sx.clone(), sy], &z2).unwrap(), BigInt::from(1));
        let tri = vs(&[&[0, 0], &[2, 0], &[0, 3]]);
        assert_eq!(mixed_volume_by_polynomiality(&[tri.clone(), tri], &z2).unwrap(), BigInt::from(6));
        assert_eq!(mixed_volume_by_polynomiality(&[sx, vs(&[&[1, 1]])], &z2).unwrap(), BigInt::zero());
    }

    #[test]
    fn oracle_limits() {
        let z4 = Lattice::standard(4);
        let simplex = vs(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(matches!(volume_by_point_counting(&simplex, &z4), Err(Error::Oracle(_))));
        assert!(matches!(
            check_volume(&simplex, &z4, &BigInt::from(1)).unwrap(),
            CheckOutcome::Skipped(_)
        ));
        let z2 = Lattice::standard(2);
        assert!(check_volume(&vs(&[&[0, 0], &[1, 0], &[0, 1]]), &z2, &BigInt::from(2)).is_err());
    }
}
