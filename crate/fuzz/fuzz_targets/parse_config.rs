#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    // errors are fine, panics are not
    if let Ok(cfg) = ncym_cli::RunConfig::parse(data) {
        let _ = cfg.validate();
    }
});
