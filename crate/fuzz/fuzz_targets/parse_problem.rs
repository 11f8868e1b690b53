#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = toric_zeta::cli::parse_problem(s) {
            // whatever parses must serialize and parse back to the same value
            let again = serde_json::to_string(&p).unwrap();
            assert_eq!(toric_zeta::cli::parse_problem(&again).unwrap(), p);
        }
    }
});
