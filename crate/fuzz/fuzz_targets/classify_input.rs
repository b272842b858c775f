#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(spec) = diagroot_cli::parse_input(data) else {
        return;
    };
    if spec.rank > 4 {
        return;
    }
    let Ok(q) = spec.braiding() else {
        return;
    };
    if let Ok((report, code)) = diagroot_cli::report::classify(&q, &spec.free, 200) {
        assert_eq!(code == 0, report.outcome == "finite");
    }
});
