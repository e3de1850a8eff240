//! Compiles `smoke.c` against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include").join("lorentz3.h");
    assert!(header.exists(), "header missing");
    let lib = target_dir().join("liblorentz3_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(crate_dir.join("tests").join("smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success(), "compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("C smoke test passed"));
}
