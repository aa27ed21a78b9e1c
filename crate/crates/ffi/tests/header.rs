//! The generated header compiles as C and C++, and a C program linked
//! against the static library behaves like the Rust API.

use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compiler(name: &str) -> Option<String> {
    Command::new(name).arg("--version").output().ok().map(|_| name.to_string())
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/opposition.h")).unwrap();
    for name in [
        "opp_last_error",
        "opp_displacement",
        "opp_is_admissible",
        "opp_count_admissible",
        "opp_geometry_build",
        "opp_geometry_free",
        "opp_automorphism_random",
        "opp_analyze",
        "typedef struct OppGeometry OppGeometry",
    ] {
        assert!(header.contains(name), "{name} missing");
    }
}

#[test]
fn header_compiles() {
    let include = crate_dir().join("include");
    let source = crate_dir().join("tests/c/smoke.c");
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Some(cc) = compiler(cc) else { continue };
        let status = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(&include)
            .arg(&source)
            .status()
            .unwrap();
        assert!(status.success(), "{lang} syntax check failed");
    }
}

/// The static library next to this test binary, when cargo produced one.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libopposition_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (compiler("cc"), static_lib()) else {
        eprintln!("skipped: no C compiler or static library");
        return;
    };
    let out = std::env::temp_dir().join(format!("opposition-smoke-{}", std::process::id()));
    let status = Command::new(cc)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let run = Command::new(Path::new(&out)).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
