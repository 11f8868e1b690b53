//! Exact integer linear algebra: Hermite normal form, sublattices of `ℤⁿ`,
//! coordinates, duals and primitive vectors.
//!
//! Every lattice is stored through its row-style Hermite normal form basis,
//! so two lattices are equal exactly when their bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer vector. Exponents, lattice coordinates and dual coordinates are
/// all carried this way.
pub type IntVec = Vec<BigInt>;

/// Convenience constructor for small literal vectors.
pub fn ivec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: &[IntVec]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
        Self::from_rows(cols, &vecs).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row_vectors(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        Ok(determinant(&self.row_vectors()))
    }

    pub fn is_hermite_normal_form(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            let row = self.row(i);
            match row.iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !row[p].is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let above = self.get(k, p);
                        if above.is_negative() || above >= &row[p] {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(self.row(i)))?;
        }
        write!(f, "]")
    }
}

pub fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Determinant of a square list of rows via Bareiss elimination.
pub fn determinant(rows: &[IntVec]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<IntVec> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn row_combine(rows: &mut [IntVec], r: usize, i: usize, coeffs: [&BigInt; 4]) {
    // (row_r, row_i) <- (x*row_r + y*row_i, z*row_r + w*row_i)
    let [x, y, z, w] = coeffs;
    for c in 0..rows[r].len() {
        let a = rows[r][c].clone();
        let b = rows[i][c].clone();
        rows[r][c] = x * &a + y * &b;
        rows[i][c] = z * &a + w * &b;
    }
}

fn row_axpy(rows: &mut [IntVec], target: usize, q: &BigInt, source: usize) {
    // row_target -= q * row_source
    for c in 0..rows[target].len() {
        let delta = q * &rows[source][c];
        rows[target][c] -= delta;
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u · m = h`. Pivots of `h` are
/// positive, entries above a pivot lie in `[0, pivot)`, and zero rows are
/// trailing.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut h = m.row_vectors();
    let mut u = IntegerMatrix::identity(nrows).row_vectors();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        for i in r + 1..nrows {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[r][col].clone();
            let b = h[i][col].clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let z = -(&b / &g);
            let w = &a / &g;
            row_combine(&mut h, r, i, [&eg.x, &eg.y, &z, &w]);
            row_combine(&mut u, r, i, [&eg.x, &eg.y, &z, &w]);
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][col].div_floor(&h[r][col]);
            if !q.is_zero() {
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
            }
        }
        r += 1;
    }
    (
        IntegerMatrix::from_rows(ncols, &h).expect("shape preserved"),
        IntegerMatrix::from_rows(nrows, &u).expect("shape preserved"),
    )
}

/// Number of linearly independent vectors in `vectors`.
pub fn rank(vectors: &[IntVec]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let m = IntegerMatrix::from_rows(first.len(), vectors).expect("uniform dimension");
    let (h, _) = hermite_normal_form(&m);
    (0..h.rows()).filter(|&i| !is_zero(h.row(i))).count()
}

/// Basis of the saturated lattice `{x ∈ ℤ^dim : ⟨x, w⟩ = 0 for all w}`.
pub fn integer_kernel(vectors: &[IntVec], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return IntegerMatrix::identity(dim).row_vectors();
    }
    // Column j of `a` is vectors[j]; left kernel of `a` is what we want.
    let mut a = IntegerMatrix::zeros(dim, vectors.len());
    for (j, w) in vectors.iter().enumerate() {
        for i in 0..dim {
            a.entries[i * vectors.len() + j] = w[i].clone();
        }
    }
    let (h, u) = hermite_normal_form(&a);
    let kernel: Vec<IntVec> =
        (0..dim).filter(|&i| is_zero(h.row(i))).map(|i| u.row(i).to_vec()).collect();
    if kernel.is_empty() {
        return kernel;
    }
    let km = IntegerMatrix::from_rows(dim, &kernel).expect("uniform dimension");
    let (hk, _) = hermite_normal_form(&km);
    hk.row_vectors().into_iter().filter(|r| !is_zero(r)).collect()
}

/// Unique (up to sign) primitive normal to `r − 1` vectors in `ℤ^r`, or
/// `None` when they are linearly dependent. Computed by signed cofactors.
pub fn hyperplane_normal(vectors: &[IntVec], dim: usize) -> Option<IntVec> {
    debug_assert_eq!(vectors.len() + 1, dim);
    let mut normal = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<IntVec> = vectors
            .iter()
            .map(|v| v.iter().enumerate().filter(|&(c, _)| c != skip).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = determinant(&minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    if is_zero(&normal) {
        None
    } else {
        Some(primitive(&normal).expect("nonzero"))
    }
}

/// `v / gcd(v)`; direction is preserved.
pub fn primitive(v: &[BigInt]) -> Result<IntVec> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// A sublattice of `ℤ^ambient_dim`, stored by its Hermite normal form basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntegerMatrix,
}

impl Lattice {
    pub fn standard(n: usize) -> Self {
        Lattice { ambient_dim: n, basis: IntegerMatrix::identity(n) }
    }

    /// The ℤ-span of `vectors`. An empty list yields the rank-0 lattice.
    pub fn from_generators(ambient_dim: usize, vectors: &[IntVec]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Lattice { ambient_dim, basis: IntegerMatrix::zeros(0, ambient_dim) });
        }
        let m = IntegerMatrix::from_rows(ambient_dim, vectors)?;
        let (h, _) = hermite_normal_form(&m);
        let rows: Vec<IntVec> = h.row_vectors().into_iter().filter(|r| !is_zero(r)).collect();
        Ok(Lattice { ambient_dim, basis: IntegerMatrix::from_rows(ambient_dim, &rows)? })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<IntVec> {
        self.basis.row_vectors()
    }

    /// Rational coordinates of `v` in the basis, or `OutsideSpan`.
    pub fn rational_coords(&self, v: &[BigInt]) -> Result<Vec<BigRational>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let mut residual: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let c = &residual[p] / BigRational::from(row[p].clone());
            if !c.is_zero() {
                for (res, b) in residual.iter_mut().zip(row) {
                    *res -= &c * BigRational::from(b.clone());
                }
            }
            coords.push(c);
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Err(Error::OutsideSpan);
        }
        Ok(coords)
    }

    /// Integer coordinates `c` with `c · basis = v`.
    pub fn coords_in_basis(&self, v: &[BigInt]) -> Result<IntVec> {
        self.rational_coords(v)?
            .into_iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NotLatticePoint) })
            .collect()
    }

    /// The ambient vector with coordinates `c`.
    pub fn from_coords(&self, c: &[BigInt]) -> IntVec {
        let mut v = vec![BigInt::zero(); self.ambient_dim];
        for (i, ci) in c.iter().enumerate() {
            for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                *x += ci * b;
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords_in_basis(v).is_ok()
    }

    /// `self ∩ span_ℝ(vectors)`. Every vector must lie in `self`.
    pub fn saturated_sublattice(&self, vectors: &[IntVec]) -> Result<Lattice> {
        let coords = vectors.iter().map(|v| self.coords_in_basis(v)).collect::<Result<Vec<_>>>()?;
        let annihilator = integer_kernel(&coords, self.rank());
        let inner = integer_kernel(&annihilator, self.rank());
        let ambient: Vec<IntVec> = inner.iter().map(|c| self.from_coords(c)).collect();
        Lattice::from_generators(self.ambient_dim, &ambient)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }
}

/// `[sup : sub]` for lattices of equal rank with `sub ⊆ sup`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<BigInt> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: sup.ambient_dim(), found: sub.ambient_dim() });
    }
    if sub.rank() != sup.rank() || !sup.contains_lattice(sub) {
        return Err(Error::NotSublattice);
    }
    let rows = (0..sub.rank())
        .map(|i| sup.coords_in_basis(sub.basis().row(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(&rows).abs())
}

/// An element of the dual of some lattice, written in the dual basis of that
/// lattice's Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector {
    pub coords: IntVec,
}

impl DualVector {
    pub fn new(coords: IntVec) -> Self {
        DualVector { coords }
    }

    /// Value on a vector already written in lattice coordinates.
    pub fn eval(&self, coords: &[BigInt]) -> BigInt {
        dot(&self.coords, coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).is_one()
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vec(&self.coords))
    }
}

/// `⟨u, v⟩` for an ambient vector `v ∈ lat`.
pub fn dual_pairing(u: &DualVector, v: &[BigInt], lat: &Lattice) -> Result<BigInt> {
    if u.coords.len() != lat.rank() {
        return Err(Error::DimensionMismatch { expected: lat.rank(), found: u.coords.len() });
    }
    Ok(u.eval(&lat.coords_in_basis(v)?))
}
