#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|name: &str| {
    if let Some(s) = diamond_jcm::cli::preset(name) {
        assert_eq!(s.name, name);
        s.validate().unwrap();
    }
    let _ = diamond_jcm::cli::presets_for(name);
});
