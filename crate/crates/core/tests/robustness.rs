//! Arbitrary small problems must evaluate to a result or an error, never a
//! panic. Mirrors the fuzz targets for environments without libFuzzer.

use proptest::prelude::*;

use toric_zeta::cli::{evaluate, parse_problem, parse_rational, Mode, PolynomialSpec, ProblemFile, RationalText, TermSpec};
use toric_zeta::engine::Options;

fn problem() -> impl Strategy<Value = ProblemFile> {
    (1usize..=3).prop_flat_map(|n| {
        let vec_n = move |lo: i64, hi: i64| prop::collection::vec(lo..=hi, n);
        let term = (vec_n(0, 4), -3i64..=3).prop_filter("constant term", |(e, _)| e.iter().any(|&x| x != 0)).prop_map(|(exponent, c)| TermSpec {
            exponent,
            coefficient: RationalText::Text(c.to_string()),
        });
        let poly = prop::collection::vec(term, 0..5).prop_map(|terms| PolynomialSpec { name: String::new(), terms });
        let standard: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let gens = prop_oneof![
            Just(standard.clone()),
            prop::collection::vec(vec_n(0, 2), 0..3).prop_map(move |extra| {
                let mut g = standard.clone();
                g.extend(extra);
                g
            }),
            prop::collection::vec(vec_n(-2, 3), 1..5),
        ];
        (
            gens,
            prop::collection::vec(poly, 1..3),
        )
            .prop_map(move |(generators, polynomials)| ProblemFile {
                ambient_dim: n,
                generators,
                mode: if polynomials.len() == 1 { Mode::Single } else { Mode::Ci },
                polynomials,
                local_systems: Vec::new(),
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(256) })]

    #[test]
    fn evaluate_never_panics(p in problem(), parallel in any::<bool>()) {
        let _ = evaluate(&p, None, Options { parallel, check: false });
    }

    #[test]
    fn trivial_sheaf_matches_single(p in problem()) {
        let single = evaluate(&p, Some(Mode::Single), Options::default());
        if let Ok(single) = single {
            let mut q = p.clone();
            let gens = q.generators.iter().map(|g| g.iter().map(|&x| x.into()).collect()).collect::<Vec<_>>();
            let s = toric_zeta::newton::build_presentation(&gens).unwrap();
            q.local_systems = s
                .faces
                .iter()
                .map(|c| toric_zeta::cli::LocalSystemSpec {
                    face: c.key().to_vec(),
                    matrices: vec![vec![vec![RationalText::Int(1)]]; c.span_dim],
                })
                .collect();
            let sheaf = evaluate(&q, Some(Mode::Sheaf), Options::default()).unwrap();
            prop_assert_eq!(single.zeta, sheaf.zeta);
        }
    }

    #[test]
    fn parsers_never_panic(s in ".{0,64}") {
        let _ = parse_rational(&s);
        let _ = parse_problem(&s);
    }

    #[test]
    fn rationals_round_trip(p in any::<i64>(), q in 1i64..) {
        let text = format!("{p}/{q}");
        let r = parse_rational(&text).unwrap();
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn generated_problems_mostly_evaluate() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strategy = problem();
    let ok = (0..200)
        .filter(|_| {
            let p = strategy.new_tree(&mut runner).unwrap().current();
            evaluate(&p, None, Options::default()).is_ok()
        })
        .count();
    println!("{ok} of 200 evaluated");
    assert!(ok >= 40, "only {ok} of 200 generated problems were valid");
}
