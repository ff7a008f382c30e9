use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn header() -> String {
    std::fs::read_to_string(crate_dir().join("include/toeplab.h")).expect("header is generated by build.rs")
}

#[test]
fn header_declares_every_exported_function() {
    let h = header();
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let exported: Vec<&str> =
        src.lines().filter_map(|l| l.split("extern \"C\" fn ").nth(1)).map(|rest| rest.split('(').next().unwrap()).collect();
    assert!(exported.len() >= 20, "{exported:?}");
    for name in exported {
        assert!(h.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in [
        "typedef struct TlCoeffs TlCoeffs;",
        "typedef struct TlMatrix TlMatrix;",
        "typedef struct TlSpectrum TlSpectrum;",
        "TL_STATUS_OK = 0",
    ] {
        assert!(h.contains(ty), "{ty}");
    }
}

fn target_dir() -> Option<PathBuf> {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().ok()?;
    Some(exe.parent()?.parent()?.to_path_buf())
}

fn find_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
}

#[test]
fn c_program_links_against_the_static_library() {
    let Some(dir) = target_dir() else { return };
    let lib = dir.join("libtoeplab_ffi.a");
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let tmp = tempdir();
    let src = tmp.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "toeplab.h"

int main(void) {
    TlCoeffs *z = NULL, *zb = NULL, *zz = NULL;
    TlMatrix *m = NULL;
    TlSpectrum *s = NULL;
    size_t count = 0;
    if (tl_coeffs_from_label("monomial:1", 2, &z) != TL_STATUS_OK) return 1;
    if (tl_coeffs_conjugate(z, &zb) != TL_STATUS_OK) return 2;
    if (tl_coeffs_product(z, zb, &zz) != TL_STATUS_OK) return 3;
    if (tl_semicommutator(z, zb, zz, 8, &m) != TL_STATUS_OK) return 4;
    if (tl_singular_values(m, &s) != TL_STATUS_OK) return 5;
    if (tl_spectrum_outlier_count(s, 0.5, &count) != TL_STATUS_OK || count != 1) return 6;
    if (tl_coeffs_from_label("nope", 2, &z) != TL_STATUS_PARSE_ERROR) return 7;
    if (strlen(tl_last_error()) == 0) return 8;
    tl_spectrum_free(s);
    tl_matrix_free(m);
    tl_coeffs_free(zz);
    tl_coeffs_free(zb);
    tl_coeffs_free(z);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.join("smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn tempdir() -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c-smoke");
    std::fs::create_dir_all(&p).unwrap();
    p
}
