#![no_main]
use libfuzzer_sys::fuzz_target;
use toric_zeta::cli::{evaluate, parse_problem, ProblemFile};
use toric_zeta::engine::Options;

// Exact hull and volume computations grow quickly; keep inputs small.
fn small(p: &ProblemFile) -> bool {
    let coord_ok = |v: &[i64]| v.iter().all(|x| x.abs() <= 8);
    p.ambient_dim <= 3
        && p.generators.len() <= 6
        && p.generators.iter().all(|g| coord_ok(g))
        && p.polynomials.len() <= 3
        && p.polynomials.iter().all(|f| f.terms.len() <= 6 && f.terms.iter().all(|t| coord_ok(&t.exponent)))
        && p.local_systems.iter().all(|ls| ls.matrices.len() <= 3 && ls.matrices.iter().all(|m| m.len() <= 3))
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_problem(s) else { return };
    if !small(&p) {
        return;
    }
    let _ = evaluate(&p, None, Options::default());
});
