#![no_main]

use libfuzzer_sys::fuzz_target;

// The MIN:MAX:STEPS sweep parser must never panic, and an accepted sweep
// must expand to exactly `steps` finite, ordered values.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(sweep) = fadesim::experiments::parse_sweep(text) {
            let values = sweep.values();
            assert_eq!(values.len(), sweep.steps);
            assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
});
