#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;

use diamond_jcm::cli::{manifest_from_args, Args};

// Arguments are NUL-separated; --config is skipped so no files are read.
fuzz_target!(|data: &[u8]| {
    let mut argv = vec![std::ffi::OsString::from("diamond-jcm")];
    argv.extend(data.split(|&b| b == 0).map(|a| String::from_utf8_lossy(a).into_owned().into()));
    if let Ok(args) = Args::try_parse_from(argv) {
        if args.config.is_none() {
            let _ = manifest_from_args(&args);
        }
    }
});
