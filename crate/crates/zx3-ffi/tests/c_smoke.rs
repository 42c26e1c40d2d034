//! Compile and run examples/smoke.c against the staticlib, when a C
//! compiler is available.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_example_compiles_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler found; skipping the C smoke test");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let source = manifest.join("examples/smoke.c");

    // build the staticlib in this profile's target dir
    let status = Command::new(env!("CARGO"))
        .args(["build", "-p", "zx3-ffi"])
        .status()
        .expect("cargo build");
    assert!(status.success());
    let target_dir = manifest
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("target/debug");
    let lib = target_dir.join("libzx3_ffi.a");
    assert!(lib.exists(), "staticlib missing at {}", lib.display());

    let out = std::env::temp_dir().join(format!("zx3_c_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&source)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("compile smoke.c");
    assert!(status.success(), "C compilation failed");

    let run = Command::new(&out).output().expect("run smoke");
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "smoke binary failed: {stdout}");
    assert!(stdout.contains("c-abi smoke ok"));
    let _ = std::fs::remove_file(&out);
}
