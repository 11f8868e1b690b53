//! Zeta functions as formal products of `(1 − t^d)^e` and
//! `det(id − t^d B)^e`, with exact reduction to a rational function.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with rational coefficients, ascending, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    /// `1 − t^d`.
    pub fn one_minus_power(d: usize) -> Self {
        let mut c = vec![BigRational::zero(); d + 1];
        c[0] = BigRational::one();
        c[d] -= BigRational::one();
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(t^d)`.
    pub fn substitute_power(&self, d: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.degree() * d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * d] = a.clone();
        }
        Poly::new(c)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.lead();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.lead().recip();
        a.scale(&inv)
    }
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, c: &BigRational, power: usize, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let var = match power {
        0 => String::new(),
        1 => "t".to_string(),
        k => format!("t^{k}"),
    };
    if power == 0 {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(&var)
    } else {
        write!(f, "{mag}*{var}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_coeff_term(f, c, i, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Reduced `numerator / denominator` with `gcd = 1` and `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.constant_term().is_zero() {
            return Err(Error::Invariant("denominator must not vanish at t = 0".into()));
        }
        let g = numerator.gcd(&denominator);
        let (mut num, mut den) = if g.is_zero() || g.is_one() {
            (numerator, denominator)
        } else {
            (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
        };
        let c = den.constant_term().recip();
        num = num.scale(&c);
        den = den.scale(&c);
        Ok(RationalFunction { numerator: num, denominator: den })
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(self.numerator.mul(&other.numerator), self.denominator.mul(&other.denominator))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

/// A zeta function kept in factored form.
///
/// `cyclotomic` maps `d ↦ e` for factors `(1 − t^d)^e`; `matrix` maps an
/// expanded `det(id − t^d B)` to its exponent. Matrix factors of the shape
/// `(1 − t^d)^r` are folded into the cyclotomic part, so the representation
/// is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaFactorization {
    pub cyclotomic: BTreeMap<u64, BigInt>,
    pub matrix: BTreeMap<Poly, BigInt>,
}

impl ZetaFactorization {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.cyclotomic.is_empty() && self.matrix.is_empty()
    }

    /// `(1 − t^d)^e`.
    pub fn cyclotomic_factor(d: u64, e: BigInt) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invariant("factor 1 - t^0 is zero".into()));
        }
        let mut z = Self::one();
        if !e.is_zero() {
            z.cyclotomic.insert(d, e);
        }
        Ok(z)
    }

    /// `poly^e` for a polynomial with constant term 1.
    pub fn matrix_factor(poly: Poly, e: BigInt) -> Result<Self> {
        if !poly.constant_term().is_one() {
            return Err(Error::Invariant(format!("matrix factor {poly} must have constant term 1")));
        }
        if e.is_zero() || poly.is_one() {
            return Ok(Self::one());
        }
        // detect (1 - t^d)^r
        let d = poly.coeffs().iter().skip(1).position(|c| !c.is_zero()).map(|p| p + 1);
        if let Some(d) = d {
            if poly.degree().is_multiple_of(d) && Poly::one_minus_power(d).pow(poly.degree() / d) == poly {
                let r = BigInt::from(poly.degree() / d);
                return Self::cyclotomic_factor(d as u64, r * e);
            }
        }
        let mut z = Self::one();
        z.matrix.insert(poly, e);
        Ok(z)
    }

    /// Product of two factorizations.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, e) in &other.cyclotomic {
            let slot = out.cyclotomic.entry(*d).or_insert_with(BigInt::zero);
            *slot += e;
            if slot.is_zero() {
                out.cyclotomic.remove(d);
            }
        }
        for (p, e) in &other.matrix {
            let slot = out.matrix.entry(p.clone()).or_insert_with(BigInt::zero);
            *slot += e;
            if slot.is_zero() {
                out.matrix.remove(p);
            }
        }
        out
    }

    /// Degree in `t` of the rational function, i.e. the Euler characteristic.
    pub fn degree(&self) -> BigInt {
        let cyc: BigInt = self.cyclotomic.iter().map(|(d, e)| BigInt::from(*d) * e).sum();
        let mat: BigInt = self.matrix.iter().map(|(p, e)| BigInt::from(p.degree()) * e).sum();
        cyc + mat
    }

    /// Expands and reduces to lowest terms.
    pub fn to_rational(&self) -> Result<RationalFunction> {
        let mut num = Poly::one();
        let mut den = Poly::one();
        let small = |e: &BigInt| -> Result<usize> {
            e.abs().to_usize().ok_or_else(|| Error::Overflow(format!("exponent {e}")))
        };
        for (d, e) in &self.cyclotomic {
            let d = usize::try_from(*d).map_err(|_| Error::Overflow(format!("degree {d}")))?;
            let p = Poly::one_minus_power(d).pow(small(e)?);
            if e.is_positive() {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        for (poly, e) in &self.matrix {
            let p = poly.pow(small(e)?);
            if e.is_positive() {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        RationalFunction::new(num, den)
    }
}

impl fmt::Display for ZetaFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        for (d, e) in &self.cyclotomic {
            let power = if *d == 1 { "t".to_string() } else { format!("t^{d}") };
            parts.push(format!("(1 - {power})^{e}"));
        }
        for (p, e) in &self.matrix {
            parts.push(format!("({p})^{e}"));
        }
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(pairs: &[(u64, i64)]) -> ZetaFactorization {
        pairs.iter().fold(ZetaFactorization::one(), |acc, &(d, e)| {
            acc.multiply(&ZetaFactorization::cyclotomic_factor(d, BigInt::from(e)).unwrap())
        })
    }

    #[test]
    fn identity_element() {
        let one = ZetaFactorization::one();
        let z = cyc(&[(2, 1), (3, -1)]);
        assert_eq!(one.multiply(&z), z);
        let r = one.to_rational().unwrap();
        assert!(r.numerator.is_one() && r.denominator.is_one());
        assert_eq!(one.degree(), BigInt::zero());
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn multiplication() {
        assert!(cyc(&[(2, 1)]).multiply(&cyc(&[(2, -1)])).is_one());
        assert_eq!(cyc(&[(1, 2)]).multiply(&cyc(&[(1, 3)])), cyc(&[(1, 5)]));
        let cusp = cyc(&[(2, 1), (3, 1)]).multiply(&cyc(&[(6, -1)]));
        assert_eq!(cusp, cyc(&[(2, 1), (3, 1), (6, -1)]));
        assert_eq!(cusp.to_string(), "(1 - t^2)^1 (1 - t^3)^1 (1 - t^6)^-1");
    }

    #[test]
    fn reduction() {
        let cusp = cyc(&[(2, 1), (3, 1), (6, -1)]);
        let r = cusp.to_rational().unwrap();
        assert_eq!(r.numerator, Poly::from_ints(&[1, -1]));
        assert_eq!(r.denominator, Poly::from_ints(&[1, -1, 1]));
        assert_eq!(r.to_string(), "(1 - t)/(1 - t + t^2)");
        let smooth = cyc(&[(1, 1)]).to_rational().unwrap();
        assert_eq!(smooth.to_string(), "1 - t");
        assert!(smooth.denominator.is_one());
        // det(id - t [[0,1],[1,0]]) = 1 - t^2, folded into the cyclotomic part
        let swap = ZetaFactorization::matrix_factor(Poly::from_ints(&[1, 0, -1]), BigInt::one()).unwrap();
        assert_eq!(swap, cyc(&[(2, 1)]));
        assert_eq!(swap.to_rational().unwrap().numerator, Poly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn degrees() {
        assert_eq!(cyc(&[(2, 1), (3, 1), (6, -1)]).degree(), BigInt::from(-1));
        assert_eq!(cyc(&[(1, 1)]).degree(), BigInt::one());
        assert_eq!(cyc(&[(1, 2), (1, -2)]).degree(), BigInt::zero());
        let m = ZetaFactorization::matrix_factor(Poly::from_ints(&[1, 0, 0, 0, 0, 0, -3]), BigInt::from(-1)).unwrap();
        assert_eq!(m.degree(), BigInt::from(-6));
        assert_eq!(m.to_string(), "(1 - 3*t^6)^-1");
    }

    #[test]
    fn folding_powers() {
        // (1 - t^2)^2 = 1 - 2t^2 + t^4
        let p = Poly::from_ints(&[1, 0, -2, 0, 1]);
        assert_eq!(ZetaFactorization::matrix_factor(p, BigInt::from(3)).unwrap(), cyc(&[(2, 6)]));
        assert!(ZetaFactorization::matrix_factor(Poly::from_ints(&[2, 1]), BigInt::one()).is_err());
    }

    #[test]
    fn poly_arithmetic() {
        let a = Poly::from_ints(&[1, 0, 0, 0, 0, 0, -1]);
        let b = Poly::from_ints(&[1, -1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
        assert_eq!(a.gcd(&Poly::from_ints(&[1, 0, -1])), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(Poly::from_ints(&[1, -2]).substitute_power(3), Poly::from_ints(&[1, 0, 0, -2]));
        assert_eq!(Poly::from_ints(&[0, -1, 2]).to_string(), "-t + 2*t^2");
    }
}
