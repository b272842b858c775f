//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so the seeds stay meaningful without a fuzzing toolchain.

use std::fs;
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_input_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_input") {
        if let Ok(spec) = diagroot_cli::parse_input(&text) {
            let again = diagroot_cli::parse_input(&spec.to_canonical_json()).unwrap();
            assert_eq!(again, spec, "{name}");
            spec.braiding().unwrap();
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn parse_entry_seeds() {
    let names = vec!["q".to_string()];
    for (name, text) in seeds("parse_entry") {
        let e = diagroot_cli::parse_entry(&text, &names, 12)
            .unwrap_or_else(|err| panic!("{name}: {err}"));
        assert!(e.tors < 12);
    }
}

#[test]
fn classify_input_seeds() {
    for (name, text) in seeds("classify_input") {
        let spec = diagroot_cli::parse_input(&text).unwrap();
        let q = spec.braiding().unwrap();
        let (report, code) = diagroot_cli::report::classify(&q, &spec.free, 200).unwrap();
        assert_eq!(code == 0, report.outcome == "finite", "{name}");
    }
}
