#![no_main]
use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;

#[derive(Debug, Arbitrary)]
struct Input {
    entry: String,
    names: Vec<String>,
    torsion_order: u8,
}

fuzz_target!(|input: Input| {
    let n = u64::from(input.torsion_order);
    if let Ok(e) = diagroot_cli::parse_entry(&input.entry, &input.names, n) {
        assert!(e.tors < n);
        assert_eq!(e.free.len(), input.names.len());
    }
});
