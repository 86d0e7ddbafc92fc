use std::path::{Path, PathBuf};
use std::process::Command;

fn ffi_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn header() -> String {
    std::fs::read_to_string(ffi_dir().join("include/twomode.h")).unwrap()
}

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .map(String::from)
}

#[test]
fn header_declares_public_api() {
    let h = header();
    for name in [
        "tm_simulator_new",
        "tm_simulator_free",
        "tm_simulator_set_initial",
        "tm_simulator_eigenfrequencies",
        "tm_simulator_covariance",
        "tm_simulator_entanglement",
        "tm_simulator_time_series",
        "tm_simulator_critical_occupation",
        "tm_series_len",
        "tm_series_copy",
        "tm_series_free",
        "tm_last_error_message",
        "tm_status_name",
        "typedef struct TmSimulator TmSimulator;",
        "typedef struct TmSeries TmSeries;",
        "TM_STATUS_UNSTABLE_REGIME = 3",
        "TM_COLUMN_DET_V = 9",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
    // Handles stay opaque.
    assert!(!h.contains("struct TmSimulator {"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = ffi_dir().join("include");
    for lang in ["c", "c++"] {
        let out = Command::new(&cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(include.join("twomode.h"))
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{lang}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.join("libtwomode_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (compiler(), static_lib()) else {
        eprintln!("no C compiler or static library; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("demo");
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(ffi_dir().join("include"))
        .arg(ffi_dir().join("tests/c/demo.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(Path::new(&exe)).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(
        run.status.success(),
        "{stdout}{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(stdout.contains("omega 2.135779 0.662153"), "{stdout}");
    assert!(stdout.contains("samples 5001"), "{stdout}");
    assert!(stdout.contains("sup_E 1.1937"), "{stdout}");
    assert!(
        stdout.contains("unstable TM_STATUS_UNSTABLE_REGIME 1"),
        "{stdout}"
    );
}
