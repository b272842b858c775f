#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(spec) = diagroot_cli::parse_input(data) {
        let text = spec.to_canonical_json();
        let again = diagroot_cli::parse_input(&text).expect("canonical output parses");
        assert_eq!(again, spec);
        let _ = spec.braiding();
    }
});
