//! Dense square matrices over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::zeta::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    /// `None` unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(RationalMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix { n, entries: vec![BigRational::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RationalMatrix { n, entries: out }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.entries.swap(col * n + j, piv * n + j);
                inv.entries.swap(col * n + j, piv * n + j);
            }
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.entries[col * n + j] *= &p;
                inv.entries[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = &f * a.get(col, j);
                    a.entries[r * n + j] -= x;
                    let y = &f * inv.get(col, j);
                    inv.entries[r * n + j] -= y;
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// `self^e` for any integer `e`; `None` if `e < 0` and singular, or if
    /// `|e|` does not fit a machine word.
    pub fn pow(&self, e: &BigInt) -> Option<Self> {
        let base = if e.is_negative() { self.inverse()? } else { self.clone() };
        let mut k = e.abs().to_u64()?;
        let mut acc = Self::identity(self.n);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(acc)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `det(id − s·self)` as a polynomial in `s`, via Faddeev–LeVerrier.
    pub fn det_one_minus(&self) -> Poly {
        let n = self.n;
        let mut coeffs = vec![BigRational::one()];
        let mut m = RationalMatrix { n, entries: vec![BigRational::zero(); n * n] };
        for k in 1..=n {
            // M_k = B·M_{k-1} + c_{k-1}·I
            m = self.mul(&m);
            for i in 0..n {
                m.entries[i * n + i] += &coeffs[k - 1];
            }
            let c = -self.mul(&m).trace() / BigRational::from(BigInt::from(k));
            coeffs.push(c);
        }
        Poly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_powers() {
        let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RationalMatrix::identity(2));
        assert_eq!(a.pow(&BigInt::from(-2)).unwrap(), inv.mul(&inv));
        assert_eq!(a.pow(&BigInt::zero()).unwrap(), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap().inverse().is_none());
        assert!(RationalMatrix::from_i64(&[&[1, 2]]).is_none());
    }

    #[test]
    fn characteristic_data() {
        let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.det_one_minus(), Poly::from_ints(&[1, 0, -1]));
        let a = RationalMatrix::from_i64(&[&[5]]).unwrap();
        assert_eq!(a.det_one_minus(), Poly::from_ints(&[1, -5]));
        // det(id - s·B) for B = [[1,2],[3,4]]: 1 - 5s - 2s²
        let b = RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(b.det_one_minus(), Poly::from_ints(&[1, -5, -2]));
        assert_eq!(RationalMatrix::identity(0).det_one_minus(), Poly::one());
        assert!(!b.commutes_with(&swap));
        assert!(b.commutes_with(&b.pow(&BigInt::from(3)).unwrap()));
    }
}
