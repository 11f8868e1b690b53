#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = toric_zeta::cli::parse_rational(s) {
            assert_eq!(toric_zeta::cli::parse_rational(&q.to_string()).unwrap(), q);
        }
    }
});
