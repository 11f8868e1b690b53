use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use toric_zeta::engine::{zeta_fixed_point, Options};
use toric_zeta::lattice::{determinant, dot, hermite_normal_form, hyperplane_normal, IntVec, IntegerMatrix, Lattice};
use toric_zeta::newton::{build_presentation, semigroup_membership, ToricPolynomial};
use toric_zeta::polyhedra::cone_from_generators;
use toric_zeta::volumes::{mixed_volume, normalized_volume};
use toric_zeta::zeta::ZetaFactorization;

fn vector(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(lo..=hi, dim).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

/// Facets by exhaustive search over `(d − 1)`-subsets.
fn brute_force_facets(gens: &[IntVec], dim: usize) -> BTreeSet<IntVec> {
    let mut out = BTreeSet::new();
    let n = gens.len();
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    loop {
        let sub: Vec<IntVec> = idx.iter().map(|&i| gens[i].clone()).collect();
        if let Some(h) = hyperplane_normal(&sub, dim) {
            let vals: Vec<BigInt> = gens.iter().map(|g| dot(&h, g)).collect();
            if vals.iter().all(|x| !x.is_negative()) {
                out.insert(h);
            } else if vals.iter().all(|x| !x.is_positive()) {
                out.insert(h.iter().map(|x| -x).collect());
            }
        }
        let Some(i) = (0..dim - 1).rev().find(|&i| idx[i] < n - (dim - 1) + i) else { break };
        idx[i] += 1;
        for j in i + 1..dim - 1 {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

fn unimodular3() -> impl Strategy<Value = Vec<IntVec>> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6).prop_map(|ops| {
        let mut m: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        for (a, b, k) in ops {
            if a != b {
                for c in 0..3 {
                    m[a][c] += k * m[b][c];
                }
            }
        }
        m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    })
}

fn apply(m: &[IntVec], v: &IntVec) -> IntVec {
    m.iter().map(|row| dot(row, v)).collect()
}

fn factorization() -> impl Strategy<Value = ZetaFactorization> {
    prop::collection::vec((1u64..=6, -3i64..=3), 0..4).prop_map(|fs| {
        fs.into_iter().fold(ZetaFactorization::one(), |acc, (d, e)| {
            acc.multiply(&ZetaFactorization::cyclotomic_factor(d, BigInt::from(e)).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn incremental_facets_match_brute_force(gens in prop::collection::vec(vector(3, -3, 3), 3..9)) {
        let lat = Lattice::standard(3);
        prop_assume!(toric_zeta::lattice::rank(&gens) == 3);
        prop_assume!(gens.iter().all(|g| !g.iter().all(Zero::is_zero)));
        let cone = cone_from_generators(&gens, &lat).unwrap();
        prop_assume!(cone.coord_lattice == lat);
        let got: BTreeSet<IntVec> = cone.facet_normals.iter().map(|n| n.coords.clone()).collect();
        prop_assert_eq!(got, brute_force_facets(&gens, 3));
    }

    #[test]
    fn hermite_form_is_unimodular_transform(rows in prop::collection::vec(vector(3, -6, 6), 1..5)) {
        let m = IntegerMatrix::from_rows(3, &rows).unwrap();
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(h.is_hermite_normal_form());
        prop_assert_eq!(u.mul(&m).unwrap(), h);
        prop_assert_eq!(determinant(&u.row_vectors()).abs(), BigInt::from(1));
    }

    #[test]
    fn volumes_are_unimodular_and_translation_invariant(
        pts in prop::collection::vec(vector(3, 0, 4), 1..7),
        m in unimodular3(),
        shift in vector(3, -5, 5),
    ) {
        let lat = Lattice::standard(3);
        let moved: Vec<IntVec> = pts.iter().map(|p| toric_zeta::lattice::add(&apply(&m, p), &shift)).collect();
        prop_assert_eq!(normalized_volume(&pts, &lat).unwrap(), normalized_volume(&moved, &lat).unwrap());
    }

    #[test]
    fn mixed_volume_is_symmetric(
        a in prop::collection::vec(vector(2, 0, 3), 1..4),
        b in prop::collection::vec(vector(2, 0, 3), 1..4),
    ) {
        let lat = Lattice::standard(2);
        let ab = mixed_volume(&[a.clone(), b.clone()], &lat).unwrap();
        prop_assert_eq!(&ab, &mixed_volume(&[b, a], &lat).unwrap());
        prop_assert!(!ab.is_negative());
    }

    #[test]
    fn zeta_algebra_laws(a in factorization(), b in factorization(), c in factorization()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&ZetaFactorization::one()), a.clone());
        prop_assert_eq!(a.multiply(&b).degree(), a.degree() + b.degree());
        let ra = a.to_rational().unwrap();
        let rb = b.to_rational().unwrap();
        prop_assert_eq!(a.multiply(&b).to_rational().unwrap(), ra.mul(&rb).unwrap());
    }

    #[test]
    fn sums_of_generators_are_members(counts in prop::collection::vec(0i64..4, 3)) {
        let gens: Vec<IntVec> = [[2, 0], [1, 1], [0, 2]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = build_presentation(&gens).unwrap();
        let v: IntVec = (0..2).map(|i| gens.iter().zip(&counts).map(|(g, &c)| &g[i] * c).sum()).collect();
        prop_assert!(semigroup_membership(&v, &s));
        let parity = (&v[0] + &v[1]) % 2;
        let odd: IntVec = vec![&v[0] + 1, v[1].clone()];
        prop_assert_eq!(parity, BigInt::zero());
        prop_assert!(!semigroup_membership(&odd, &s));
    }

    #[test]
    fn coefficients_do_not_matter(
        exps in prop::collection::vec(vector(2, 0, 4), 1..6),
        coeffs in prop::collection::vec((1i64..9, 1i64..5, any::<bool>()), 6),
    ) {
        prop_assume!(exps.iter().all(|v| !v.iter().all(Zero::is_zero)));
        let s = build_presentation(&[vec![BigInt::from(1), BigInt::zero()], vec![BigInt::zero(), BigInt::from(1)]]).unwrap();
        let ones = ToricPolynomial::new(exps.iter().map(|v| (v.clone(), BigRational::from(BigInt::from(1)))));
        let other = ToricPolynomial::new(exps.iter().zip(&coeffs).map(|(v, &(p, q, neg))| {
            let c = BigRational::new(BigInt::from(if neg { -p } else { p }), BigInt::from(q));
            (v.clone(), c)
        }));
        prop_assume!(ones.support() == other.support());
        let a = zeta_fixed_point(&s, &ones, Options::default()).unwrap();
        let b = zeta_fixed_point(&s, &other, Options::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
