#![no_main]

use libfuzzer_sys::fuzz_target;

// The experiment config parser must never panic on arbitrary text, and any
// config it accepts must re-validate cleanly.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = fadesim::experiments::ExperimentConfig::parse_str(text) {
            config.validate().expect("accepted config must validate");
        }
    }
});
